#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uclab/io.hpp"
#include "uclab/nodal_geometry.hpp"

using namespace uclab;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("csv escaping rules") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("with,comma") == "\"with,comma\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("csv writer emits CRLF rows") {
  CsvWriter w({"a", "b"});
  w.add_row(std::vector<std::string>{"1", "x,y"});
  w.add_row(std::vector<double>{0.5, 2.0});
  const std::string s = w.str();
  CHECK(s == "a,b\r\n1,\"x,y\"\r\n0.5,2\r\n");
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-8, 1234567.875}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("binary field round trip") {
  const auto g = GridSpec::square(-1.0, 1.0, 33);
  const auto f = ScalarField::sample(g, [](double x, double y) {
    return std::sin(3 * x) * y + 0.25;
  });
  const auto path = temp_path("uclab_io_test.bin");
  save_field(f, path);
  const auto back = load_field(path);
  CHECK(back.spec().nx == g.nx);
  CHECK(back.spec().h == g.h);
  CHECK(back.spec().x0 == g.x0);
  CHECK(back.values() == f.values());
  std::remove(path.c_str());
}

TEST_CASE("load rejects corrupt containers") {
  const auto path = temp_path("uclab_io_bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOTAGRID garbage";
  }
  CHECK_THROWS(load_field(path));
  std::remove(path.c_str());
  CHECK_THROWS(load_field(temp_path("uclab_io_missing.bin")));
}

TEST_CASE("matrix market export") {
  Eigen::SparseMatrix<double> m(2, 2);
  m.insert(0, 0) = 4.0;
  m.insert(1, 0) = -1.0;
  m.makeCompressed();
  const auto path = temp_path("uclab_io_test.mtx");
  save_matrix_market(m, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "%%MatrixMarket matrix coordinate real general");
  std::getline(in, line);
  CHECK(line == "2 2 2");
  std::getline(in, line);
  CHECK(line.substr(0, 4) == "1 1 ");
  std::remove(path.c_str());
}

TEST_CASE("nodal svg contains the segments") {
  NodalSet set;
  set.segments.push_back({{0.0, 0.0}, {1.0, 1.0}});
  set.total_length = std::sqrt(2.0);
  const std::string svg = nodal_svg(set, 0.0, 0.0, 1.0, 1.0, 100);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("line") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_SUITE_END();

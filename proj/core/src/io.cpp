#include "uclab/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uclab {

CsvWriter::CsvWriter(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("CsvWriter: column count mismatch");
  rows_.push_back(cells);
}

void CsvWriter::add_row(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells) text.push_back(format_double(v));
  add_row(text);
}

std::string CsvWriter::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += "\r\n";
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("CsvWriter: cannot open " + path);
  f << str();
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

namespace {
constexpr char kMagic[8] = {'U', 'C', 'G', 'R', 'I', 'D', '0', '1'};
}

void save_field(const ScalarField& field, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_field: cannot open " + path);
  const GridSpec& g = field.spec();
  f.write(kMagic, sizeof(kMagic));
  const std::int32_t dims[2] = {g.nx, g.ny};
  f.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  const double geom[3] = {g.x0, g.y0, g.h};
  f.write(reinterpret_cast<const char*>(geom), sizeof(geom));
  f.write(reinterpret_cast<const char*>(field.values().data()),
          std::streamsize(field.values().size() * sizeof(double)));
}

ScalarField load_field(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_field: cannot open " + path);
  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("load_field: bad magic");
  std::int32_t dims[2];
  double geom[3];
  f.read(reinterpret_cast<char*>(dims), sizeof(dims));
  f.read(reinterpret_cast<char*>(geom), sizeof(geom));
  if (!f || dims[0] < 1 || dims[1] < 1)
    throw std::runtime_error("load_field: bad header");
  GridSpec g{dims[0], dims[1], geom[0], geom[1], geom[2]};
  std::vector<double> values(g.size());
  f.read(reinterpret_cast<char*>(values.data()),
         std::streamsize(values.size() * sizeof(double)));
  if (!f) throw std::runtime_error("load_field: truncated payload");
  return ScalarField(g, std::move(values));
}

void save_matrix_market(const Eigen::SparseMatrix<double>& m,
                        const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_matrix_market: cannot open " + path);
  f << "%%MatrixMarket matrix coordinate real general\n";
  f << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      f << it.row() + 1 << ' ' << it.col() + 1 << ' '
        << format_double(it.value()) << '\n';
}

std::string nodal_svg(const NodalSet& set, double x0, double y0, double x1,
                      double y1, int width) {
  const double sx = width / std::max(x1 - x0, 1e-12);
  const int height = int((y1 - y0) * sx) + 1;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  for (const auto& s : set.segments) {
    svg << "<line x1=\"" << (s.a.x - x0) * sx << "\" y1=\""
        << (y1 - s.a.y) * sx << "\" x2=\"" << (s.b.x - x0) * sx << "\" y2=\""
        << (y1 - s.b.y) * sx
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void save_nodal_svg(const NodalSet& set, double x0, double y0, double x1,
                    double y1, const std::string& path, int width) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_nodal_svg: cannot open " + path);
  f << nodal_svg(set, x0, y0, x1, y1, width);
}

}  // namespace uclab

#pragma once

#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "uclab/field.hpp"
#include "uclab/nodal_geometry.hpp"

namespace uclab {

/// RFC-4180 CSV: CRLF line endings, quoting only where needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& cells);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& cell);
/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Self-describing binary grid container (magic, dims, origin/step, doubles).
void save_field(const ScalarField& field, const std::string& path);
ScalarField load_field(const std::string& path);

/// Matrix Market coordinate format, general symmetric written as-is.
void save_matrix_market(const Eigen::SparseMatrix<double>& m,
                        const std::string& path);

/// Minimal SVG with one polyline per nodal segment chain.
std::string nodal_svg(const NodalSet& set, double x0, double y0, double x1,
                      double y1, int width = 640);
void save_nodal_svg(const NodalSet& set, double x0, double y0, double x1,
                    double y1, const std::string& path, int width = 640);

}  // namespace uclab

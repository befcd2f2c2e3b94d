#include "grasspenta/scalar.hpp"

#include <cstdlib>
#include <vector>

#include "grasspenta/error.hpp"

namespace grasspenta {

std::string_view to_string(Field field) { return field == Field::complex ? "complex" : "rational"; }

Field field_from_string(std::string_view name) {
  if (name == "complex") return Field::complex;
  if (name == "rational") return Field::rational;
  fail(ErrorKind::FormatError, "unknown field '" + std::string(name) + "'");
}

Tolerances default_tolerances() {
  Tolerances tol;
  if (const char* env = std::getenv("GRASSPENTA_TOL")) {
    char* end = nullptr;
    double value = std::strtod(env, &end);
    if (end != env && value > 0.0) tol.eps = value;
  }
  return tol;
}

Complex to_complex(const Complex& z) { return z; }
Complex to_complex(const Rational& q) { return {q.convert_to<double>(), 0.0}; }

CMat to_complex(const CMat& a) { return a; }

CMat to_complex(const QMat& a) {
  CMat out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = to_complex(a(i, j));
  return out;
}

double magnitude(const Complex& z) { return std::abs(z); }
double magnitude(const Rational& q) { return std::abs(q.convert_to<double>()); }

double relative_deviation(const std::vector<Complex>& lhs, const std::vector<Complex>& rhs) {
  if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    scale = std::max({scale, std::abs(lhs[i]), std::abs(rhs[i])});
    diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
  }
  return scale == 0.0 ? diff : diff / scale;
}

double relative_deviation(const CMat& lhs, const CMat& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    return std::numeric_limits<double>::infinity();
  double scale = std::max(max_abs(lhs), max_abs(rhs));
  double diff = max_abs<Complex>(lhs - rhs);
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace grasspenta

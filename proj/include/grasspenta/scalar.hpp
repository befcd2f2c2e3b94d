#pragma once

// Scalar backends. Complex double precision is the working field; exact
// rationals (GMP) back determinants, solves and ranks in tests and oracles.

#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>
#include <algorithm>
#include <limits>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace grasspenta {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::mpq_rational;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using CMat = Mat<Complex>;
using QMat = Mat<Rational>;

enum class Field { complex, rational };

std::string_view to_string(Field field);
Field field_from_string(std::string_view name);

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
inline constexpr Field field_of_v = is_exact_v<S> ? Field::rational : Field::complex;

struct Tolerances {
  double eps = 1e-9;   // regularity and residual checks
  double sep = 1e-6;   // eigenvalue separation, relative to the matrix norm
  double rank = 1e-9;  // singular-value cutoff, relative to the largest
};

// Defaults, with eps overridden by the GRASSPENTA_TOL environment variable.
Tolerances default_tolerances();

Complex to_complex(const Complex& z);
Complex to_complex(const Rational& q);
CMat to_complex(const CMat& a);
CMat to_complex(const QMat& a);

double magnitude(const Complex& z);
double magnitude(const Rational& q);

// Largest entry modulus.
template <class S>
double max_abs(const Mat<S>& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) best = std::max(best, magnitude(a(i, j)));
  return best;
}

// Relative deviation of two coefficient vectors, measured against the larger
// of the two max-norms.
double relative_deviation(const std::vector<Complex>& lhs, const std::vector<Complex>& rhs);
double relative_deviation(const CMat& lhs, const CMat& rhs);

inline long floor_mod(long k, long N) {
  long r = k % N;
  return r < 0 ? r + N : r;
}

inline long floor_div(long k, long N) { return (k - floor_mod(k, N)) / N; }

}  // namespace grasspenta

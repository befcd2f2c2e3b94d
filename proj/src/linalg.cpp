#include "grasspenta/linalg.hpp"

#include <cmath>

namespace grasspenta {

template <>
Complex determinant(const CMat& a) {
  if (a.rows() == 0) return {1.0, 0.0};
  return a.partialPivLu().determinant();
}

template <>
Rational determinant(const QMat& a) {
  if (a.rows() == 0) return Rational(1);
  Eigen::FullPivLU<QMat> lu(a);
  lu.setThreshold(Rational(0));
  return lu.determinant();
}

template <>
bool try_solve(const CMat& a, const CMat& b, CMat& x) {
  Eigen::FullPivLU<CMat> lu(a);
  if (!lu.isInvertible()) return false;
  x = lu.solve(b);
  return x.allFinite();
}

template <>
bool try_solve(const QMat& a, const QMat& b, QMat& x) {
  Eigen::FullPivLU<QMat> lu(a);
  lu.setThreshold(Rational(0));
  if (!lu.isInvertible()) return false;
  x = lu.solve(b);
  return true;
}

template <class S>
Mat<S> inverse(const Mat<S>& a) {
  Mat<S> x;
  Mat<S> id = Mat<S>::Identity(a.rows(), a.cols());
  if (!try_solve<S>(a, id, x)) throw std::domain_error("inverse of singular matrix");
  return x;
}

template <>
Kernel<Complex> kernel(const CMat& a, double rel_tol) {
  Kernel<Complex> out;
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) {
    out.basis = CMat::Identity(cols, cols);
    return out;
  }
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? rel_tol * sigma(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

template <>
Kernel<Rational> kernel(const QMat& a, double) {
  Kernel<Rational> out;
  Eigen::FullPivLU<QMat> lu(a);
  lu.setThreshold(Rational(0));
  out.rank = static_cast<int>(lu.rank());
  if (out.rank == a.cols())
    out.basis = QMat(a.cols(), 0);
  else
    out.basis = lu.kernel();
  return out;
}

template <class S>
double hadamard_ratio(const Mat<S>& a) {
  const double det = magnitude(determinant<S>(a));
  if (det == 0.0) return 0.0;
  const CMat c = to_complex(a);
  double denom = 1.0;
  for (Eigen::Index j = 0; j < c.cols(); ++j) denom *= c.col(j).norm();
  return denom == 0.0 ? 0.0 : det / denom;
}

double condition_number(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smallest = s(s.size() - 1);
  return smallest == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smallest;
}

template CMat inverse<Complex>(const CMat&);
template QMat inverse<Rational>(const QMat&);
template double hadamard_ratio<Complex>(const CMat&);
template double hadamard_ratio<Rational>(const QMat&);

}  // namespace grasspenta

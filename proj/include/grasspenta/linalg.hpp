#pragma once

// Dense kernels shared by the modules, dispatched on the scalar backend:
// floating LU/SVD for complex, zero-threshold full-pivot LU for rationals.

#include "grasspenta/scalar.hpp"

namespace grasspenta {

template <class S>
S determinant(const Mat<S>& a);

// Solves a x = b. Returns false when a is singular (exactly, or below the
// floating pivot threshold).
template <class S>
bool try_solve(const Mat<S>& a, const Mat<S>& b, Mat<S>& x);

template <class S>
Mat<S> inverse(const Mat<S>& a);

template <class S>
struct Kernel {
  Mat<S> basis;  // cols x (cols - rank)
  int rank = 0;
};

// Null space of a. Complex: SVD with singular values <= rel_tol * sigma_max
// treated as zero. Rational: exact.
template <class S>
Kernel<S> kernel(const Mat<S>& a, double rel_tol);

// |det a| / prod_j ||a_j||, in [0, 1]; 0 iff a is singular.
template <class S>
double hadamard_ratio(const Mat<S>& a);

double condition_number(const CMat& a);

// Block column j (width n) of a.
template <class S>
Mat<S> block_col(const Mat<S>& a, int j, int n) {
  return a.middleCols(static_cast<Eigen::Index>(j) * n, n);
}

// Block i (height n) of a block column.
template <class S>
Mat<S> block_row(const Mat<S>& a, int i, int n) {
  return a.middleRows(static_cast<Eigen::Index>(i) * n, n);
}

}  // namespace grasspenta

#pragma once

#include "grasspenta/normalize.hpp"
#include "grasspenta/polygon.hpp"

namespace grasspenta {

// The two spans whose intersection is the image vertex. Even m = 2s:
// P = (X_k, X_{k+2}, ..., X_{k+2s}), O = (X_{k+1}, ..., X_{k+2s-1}).
// Odd m = 2s+1: P = Pi_k, O = Pi_{k+1}.
template <class S>
struct SubspacePair {
  Mat<S> P;
  Mat<S> O;
};

template <class S>
SubspacePair<S> subspace_pair(const BasicLift<S>& lift, long k);

template <class S>
struct Intersection {
  Mat<S> basis;         // mn x n, equal to P * coefficients.topRows(P.cols())
  Mat<S> coefficients;  // kernel of [P | -O]
  int rank = 0;         // rank of [P | -O]
  int kernel_dim = 0;
};

// Throws NonGenericIntersection unless the intersection has dimension n.
template <class S>
Intersection<S> intersect_detail(const BasicLift<S>& lift, long k,
                                 const Tolerances& tol = default_tolerances());

template <class S>
Mat<S> intersect(const BasicLift<S>& lift, long k, const Tolerances& tol = default_tolerances());

// Image polygon; keeps the monodromy matrix of the input.
template <class S>
BasicLift<S> map_geometric(const BasicLift<S>& lift, const Tolerances& tol = default_tolerances(),
                           Exec exec = Exec::parallel);

// Relative residual of the vanishing relations satisfied by the coordinates
// of an image vertex in the frame of lift (chain = invariants of lift).
template <class S>
double structural_residual(const BasicLift<S>& lift, const BasicChain<S>& chain, long k,
                           const Intersection<S>& image);

// r_k: a_k^i at odd i (even m) or even i (odd m), zero elsewhere.
template <class S>
Mat<S> build_rbar(const BasicChain<S>& chain, long k);

// p_k: the complementary blocks, so that rbar + pbar is the last column of Q_k.
template <class S>
Mat<S> build_pbar(const BasicChain<S>& chain, long k);

// F_{k+l} = Q_k ... Q_{k+l-1} rbar_{k+l}, for l = 0..count-1.
template <class S>
std::vector<Mat<S>> build_F(const BasicChain<S>& chain, long k, int count);

// N_k = (F_k, ..., F_{k+m-1}).
template <class S>
Mat<S> build_N(const BasicChain<S>& chain, long k);

// Solves N_k c_k = F_{k+m} for each k; c[k][i] is block i of the solution.
template <class S>
BasicChain<S> map_algebraic_unnormalized(const BasicChain<S>& chain,
                                         const Tolerances& tol = default_tolerances(),
                                         Exec exec = Exec::parallel);

struct ModuliImage {
  Chain chain;         // normalized image coordinates
  GaugeData gauge;
  Chain unnormalized;  // the linear-solve output before gauge fixing
};

// Algebraic map followed by normalization of the image lift rho_k N_k (rho_0 = I).
ModuliImage map_moduli(const Chain& chain, const Tolerances& tol = default_tolerances(),
                       Exec exec = Exec::parallel);

}  // namespace grasspenta

#pragma once

#include <cstdint>
#include <vector>

#include "grasspenta/exec.hpp"
#include "grasspenta/linalg.hpp"
#include "grasspenta/scalar.hpp"

namespace grasspenta {

// Twisted N-gon in Gr(n, mn), given by a lift X_0..X_{N-1} (mn x n each) and
// the monodromy M. Vertices outside one period are X_{k+qN} = M^q X_k.
template <class S>
struct BasicLift {
  int n = 1;
  int m = 3;
  int N = 3;
  std::vector<Mat<S>> X;
  Mat<S> M;

  int dim() const { return n * m; }
  Mat<S> vertex(long k) const;
  // rho_k = (X_k, ..., X_{k+m-1})
  Mat<S> frame(long k) const;
};

// Moduli coordinates a[k][i] = a_k^i (n x n), periodic in k.
template <class S>
struct BasicChain {
  int n = 1;
  int m = 3;
  int N = 3;
  std::vector<std::vector<Mat<S>>> a;

  int dim() const { return n * m; }
  const Mat<S>& block(long k, int i) const { return a[floor_mod(k, N)][i]; }
  Mat<S>& block(long k, int i) { return a[floor_mod(k, N)][i]; }
};

using Lift = BasicLift<Complex>;
using RationalLift = BasicLift<Rational>;
using Chain = BasicChain<Complex>;
using RationalChain = BasicChain<Rational>;

// Throws InvalidDims unless n >= 1, m >= 3, N >= m and gcd(N, m) = 1.
void validate_dims(int n, int m, int N);

// Random regular lift with det M = 1 and max_k cond(rho_k) <= max_cond.
template <class S>
BasicLift<S> random_regular_lift(int n, int m, int N, std::uint64_t seed, double max_cond = 1e3);

// Chain with independent random blocks (no lift behind it).
template <class S>
BasicChain<S> random_chain(int n, int m, int N, std::uint64_t seed);

struct Regularity {
  bool regular = false;
  double min_abs_det = 0.0;  // min_k |det rho_k|
  double min_ratio = 0.0;    // min_k Hadamard ratio of rho_k
};

template <class S>
Regularity is_regular(const BasicLift<S>& lift, double eps = default_tolerances().eps);

template <class S>
std::vector<S> frame_determinants(const BasicLift<S>& lift, Exec exec = Exec::parallel);

template <class S>
BasicChain<S> extract_invariants(const BasicLift<S>& lift, double eps = default_tolerances().eps,
                                 Exec exec = Exec::parallel);

// Companion-block matrix: I_n below the diagonal, (a_k^0; ...; a_k^{m-1}) last.
template <class S>
Mat<S> build_Q(const BasicChain<S>& chain, long k);

// Q_0 Q_1 ... Q_{N-1}. Only its conjugacy class is intrinsic.
template <class S>
Mat<S> monodromy(const BasicChain<S>& chain);

template <class S>
BasicLift<S> reconstruct_lift(const BasicChain<S>& chain, const Mat<S>& rho0,
                              double eps = default_tolerances().eps);

// g . lift: X_k -> g X_k, M -> g M g^{-1}.
template <class S>
BasicLift<S> act(const Mat<S>& g, const BasicLift<S>& lift);

// X_k -> X_k g_k for a closed polygon g in GL(n).
template <class S>
BasicLift<S> regauge_lift(const BasicLift<S>& lift, const std::vector<Mat<S>>& g);

// a_k^i -> g_{k+i}^{-1} a_k^i g_{k+m}, the chain of the regauged lift.
template <class S>
BasicChain<S> regauge_chain(const BasicChain<S>& chain, const std::vector<Mat<S>>& g,
                            Exec exec = Exec::parallel);

Lift to_complex(const RationalLift& lift);
Chain to_complex(const RationalChain& chain);

}  // namespace grasspenta

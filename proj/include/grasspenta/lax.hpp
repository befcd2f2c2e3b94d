#pragma once

#include <vector>

#include "grasspenta/pentamap.hpp"

namespace grasspenta {

// One-parameter scaling of the coordinates. Even m = 2s: a^{2r+1} -> mu a^{2r+1}.
// Odd m = 2s+1: a^{2r+1} -> mu^{-1+r/s} a^{2r+1}, a^{2r} -> mu^{r/s} a^{2r}.
struct ScalingSpec {
  int m = 3;
  int s = 1;

  explicit ScalingSpec(int m_);
  Rational exponent(int i) const;
  // Integer exponent of nu, where nu = mu (even m) or mu^{1/s} (odd m).
  int nu_exponent(int i) const;
  int min_nu_exponent() const;
  int max_nu_exponent() const;
};

// nu = mu for even m, principal mu^{1/s} for odd m.
Complex nu_of_mu(const Complex& mu, int m);

// Multiplier of block i at spectral parameter nu.
Complex block_factor(const ScalingSpec& spec, int i, const Complex& nu);

Chain apply_scaling(const Chain& chain, const Complex& mu);

CMat build_Q_mu(const Chain& chain, long k, const Complex& mu);
CMat build_Q_nu(const Chain& chain, long k, const Complex& nu);

// (rbar_k(mu), Q_k(mu) rbar_{k+1}(mu), ...). For even m the common factor mu
// carried by rbar(mu) is divided out.
CMat build_N_mu(const Chain& chain, long k, const Complex& mu);

// Q_0(nu) ... Q_{N-1}(nu).
CMat monodromy_nu(const Chain& chain, const Complex& nu);

template <class S>
struct ColumnDecomposition {
  long k = 0;
  std::vector<Mat<S>> F;  // F_0 .. F_m relative to base k
  std::vector<Mat<S>> G;  // G_j for even j, hatted G_j for odd j
  // alpha[j][i] multiplies F_i in the expansion of F_j; empty when absent.
  std::vector<std::vector<Mat<S>>> alpha;
  Mat<S> pbar;
  Mat<S> Gamma;
};

template <class S>
ColumnDecomposition<S> decompose_columns(const BasicChain<S>& chain, long k);

// max_j |F_j - sum_i F_i alpha_i^j - G_j| / max|F_j|.
template <class S>
double decomposition_residual(const ColumnDecomposition<S>& dec);

// Largest entry in the blocks that the recursion forces to vanish.
template <class S>
double decomposition_zero_blocks(const ColumnDecomposition<S>& dec, int n, int m);

template <class S>
std::vector<ColumnDecomposition<S>> decompose_all(const BasicChain<S>& chain,
                                                  Exec exec = Exec::parallel);

// Max relative deviation of c(scaled) from mu^{e_i} c blockwise.
double degree_check_unnormalized(const Chain& chain, const Complex& mu,
                                 const Tolerances& tol = default_tolerances(),
                                 Exec exec = Exec::parallel);

struct LambdaDegree {
  std::vector<Complex> ratios;  // det lambda_k(scaled) / det lambda_k
  Complex expected;
  double deviation = 0;
};

LambdaDegree lambda_degree_check(const Chain& chain, const Complex& mu,
                                 const Tolerances& tol = default_tolerances(),
                                 Exec exec = Exec::parallel);

// Default probe points for comparing monodromy classes of two chains.
std::vector<Complex> probe_nus();

// Max relative deviation of char polys of the two monodromies over the probes.
double monodromy_class_deviation(const Chain& lhs, const Chain& rhs,
                                 const std::vector<Complex>& nus = probe_nus());

// map_moduli(scale(chain)) against scale(map_moduli(chain)).
double scaling_commutation_check(const Chain& chain, const Complex& mu,
                                 const Tolerances& tol = default_tolerances(),
                                 Exec exec = Exec::parallel);

// char(prod Q_k(mu0)) against char(prod Q_k(1)) of the scaled chain.
double scaling_anchor_deviation(const Chain& chain, const Complex& mu0);

// Coefficients of det(P - eta I), ascending in eta.
std::vector<Complex> charpoly(const CMat& P);

std::vector<std::vector<Complex>> spectral_samples(const Chain& chain,
                                                   const std::vector<Complex>& mus,
                                                   Exec exec = Exec::parallel);

struct SpectralCurve {
  int nu_offset = 0;
  // coeffs[p][j] multiplies nu^{nu_offset + p} eta^j.
  std::vector<std::vector<Complex>> coeffs;
  std::vector<Complex> nus;
  std::vector<std::vector<Complex>> samples;
  double heldout_residual = 0;

  std::vector<Complex> evaluate(const Complex& nu) const;
};

inline constexpr long kMaxSpectralSamples = 4096;

SpectralCurve spectral_curve(const Chain& chain, Exec exec = Exec::parallel);

}  // namespace grasspenta

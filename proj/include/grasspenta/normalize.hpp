#pragma once

#include <vector>

#include "grasspenta/polygon.hpp"

namespace grasspenta {

// Solves prod_{i=k}^{k+m-1} delta_i = Z_k (indices mod N) through the
// circulant system on principal logarithms.
std::vector<Complex> solve_delta(const std::vector<Complex>& Z, int m);

// Index trace r, r+m, r+2m, ... (mod N), N entries.
std::vector<int> m_product_order(int N, int m, int r);

// Ordered product of seq along m_product_order.
template <class S>
Mat<S> m_product(const std::vector<Mat<S>>& seq, int m, int r);

struct JordanGauge {
  std::vector<CMat> B;       // B_r = m-product of a_r^0
  std::vector<Complex> J;    // eigenvalues of B_0, lexicographic (Re, Im)
  std::vector<CMat> d;       // d_r^{-1} B_r d_r = diag(J)
  double eigen_mismatch = 0; // max_r distance of spec(B_r) from J, relative to |B_r|
};

JordanGauge jordan_gauge(const Chain& chain, const Tolerances& tol = default_tolerances(),
                         Exec exec = Exec::parallel);

struct GaugeData {
  std::vector<Complex> Z;
  std::vector<Complex> delta;
  std::vector<CMat> d;
  std::vector<CMat> q;
  std::vector<CMat> lambda;
};

// Cumulative product b^k = b_{k-m+1} ... b_{N+k-m} of the given blocks.
CMat cumulative_product(const std::vector<CMat>& b, int m, long k);

GaugeData syzygy_gauge(const Chain& chain, const JordanGauge& jordan,
                       const std::vector<Complex>& delta, const Tolerances& tol = default_tolerances(),
                       Exec exec = Exec::parallel);

struct NormalizedChain {
  Chain chain;
  GaugeData gauge;
};

// Gauge-fixes a chain whose lift has frame determinants frame_dets.
NormalizedChain normalize_chain(const Chain& hat, const std::vector<Complex>& frame_dets,
                                const Tolerances& tol = default_tolerances(),
                                Exec exec = Exec::parallel);

struct NormalizedLift {
  Lift lift;
  Chain chain;
  GaugeData gauge;
};

NormalizedLift normalize_lift(const Lift& lift, const Tolerances& tol = default_tolerances(),
                              Exec exec = Exec::parallel);

// det a_k^0 forced by unit frame determinants: det Q_k = (-1)^{n(m-1)} det a_k^0.
double normalized_det_a0(int n, int m);

struct NormalizationResiduals {
  double frame_det = 0;   // max_k |det rho_k - 1|
  double a0_offdiag = 0;  // max off-diagonal modulus of a_k^0
  double det_a0_one = 0;  // max_k |det a_k^0 - 1|
  double det_a0_law = 0;  // max_k |det a_k^0 - (-1)^{n(m-1)}|
  double syzygy = 0;      // relative residual of the cumulative-product relations
};

NormalizationResiduals normalization_residuals(const Lift& lift, const Chain& chain);

// Relative residual of the relations b_{2,1} = b_{1,2} and b_{i,i+1} = b_{1,2}
// on the cumulative a^{m-1} products of a normalized chain.
double syzygy_residual(const Chain& chain);

}  // namespace grasspenta

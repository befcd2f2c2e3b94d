#include "grasspenta/lax.hpp"

#include <cmath>
#include <numbers>

#include "grasspenta/error.hpp"

namespace grasspenta {

namespace {

Complex ipow(const Complex& z, int e) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < std::abs(e); ++i) out *= z;
  return e < 0 ? 1.0 / out : out;
}

void require_nonzero(const Complex& mu) {
  if (mu == Complex(0.0, 0.0)) fail(ErrorKind::ZeroMu, "spectral parameter is 0");
}

Chain scale_by_nu(const Chain& chain, const Complex& nu) {
  Chain out = chain;
  if (nu == Complex(1.0, 0.0)) return out;
  const ScalingSpec spec(chain.m);
  for (int i = 0; i < chain.m; ++i) {
    if (spec.nu_exponent(i) == 0) continue;
    const Complex f = block_factor(spec, i, nu);
    for (int k = 0; k < chain.N; ++k) out.a[k][i] *= f;
  }
  return out;
}

bool odd_tagged(int m, int i) { return m % 2 == 0 ? i % 2 == 1 : i % 2 == 0; }

template <class S>
struct Level {
  Mat<S> G;
  std::vector<Mat<S>> alpha;
};

template <class S>
Level<S> level(const BasicChain<S>& chain, const Mat<S>& Gamma, int j, long base) {
  const int n = chain.n, m = chain.m;
  Level<S> out;
  out.alpha.resize(j);
  if (j == 0) {
    out.G = build_rbar(chain, base);
    return out;
  }
  const Level<S> prev = level(chain, Gamma, j - 1, base + 1);
  if (j % 2 == 1) {
    const Mat<S> last = block_row<S>(prev.G, m - 1, n);
    out.G = build_pbar(chain, base) * last + Gamma * prev.G;
    out.alpha[0] = last;
    for (int i = 2; i < j; i += 2) out.alpha[i] = prev.alpha[i - 1];
  } else {
    out.G = Gamma * prev.G;
    for (int i = 1; i < j; i += 2) out.alpha[i] = prev.alpha[i - 1];
  }
  return out;
}

}  // namespace

ScalingSpec::ScalingSpec(int m_) : m(m_), s(m_ / 2) {}

Rational ScalingSpec::exponent(int i) const {
  if (m % 2 == 0) return Rational(i % 2 == 1 ? 1 : 0);
  if (i % 2 == 1) return Rational((i - 1) / 2 - s, s);
  return Rational(i / 2, s);
}

int ScalingSpec::nu_exponent(int i) const {
  if (m % 2 == 0) return i % 2 == 1 ? 1 : 0;
  return i % 2 == 1 ? (i - 1) / 2 - s : i / 2;
}

int ScalingSpec::min_nu_exponent() const {
  int e = 0;
  for (int i = 0; i < m; ++i) e = std::min(e, nu_exponent(i));
  return e;
}

int ScalingSpec::max_nu_exponent() const {
  int e = 0;
  for (int i = 0; i < m; ++i) e = std::max(e, nu_exponent(i));
  return e;
}

Complex nu_of_mu(const Complex& mu, int m) {
  require_nonzero(mu);
  if (m % 2 == 0 || m == 3) return mu;
  return std::pow(mu, 1.0 / (m / 2));
}

Complex block_factor(const ScalingSpec& spec, int i, const Complex& nu) {
  return ipow(nu, spec.nu_exponent(i));
}

Chain apply_scaling(const Chain& chain, const Complex& mu) {
  return scale_by_nu(chain, nu_of_mu(mu, chain.m));
}

CMat build_Q_nu(const Chain& chain, long k, const Complex& nu) {
  require_nonzero(nu);
  CMat Q = build_Q(chain, k);
  if (nu == Complex(1.0, 0.0)) return Q;
  const ScalingSpec spec(chain.m);
  const int n = chain.n;
  for (int i = 0; i < chain.m; ++i)
    if (spec.nu_exponent(i) != 0)
      Q.block(i * n, (chain.m - 1) * n, n, n) = chain.block(k, i) * block_factor(spec, i, nu);
  return Q;
}

CMat build_Q_mu(const Chain& chain, long k, const Complex& mu) {
  return build_Q_nu(chain, k, nu_of_mu(mu, chain.m));
}

CMat build_N_mu(const Chain& chain, long k, const Complex& mu) {
  CMat Nk = build_N(apply_scaling(chain, mu), k);
  if (chain.m % 2 == 0 && mu != Complex(1.0, 0.0)) Nk /= mu;
  return Nk;
}

CMat monodromy_nu(const Chain& chain, const Complex& nu) {
  CMat P = build_Q_nu(chain, 0, nu);
  for (int k = 1; k < chain.N; ++k) P = P * build_Q_nu(chain, k, nu);
  return P;
}

template <class S>
ColumnDecomposition<S> decompose_columns(const BasicChain<S>& chain, long k) {
  const int n = chain.n, m = chain.m, d = chain.dim();
  ColumnDecomposition<S> dec;
  dec.k = k;
  dec.Gamma = Mat<S>::Zero(d, d);
  for (int i = 1; i < m; ++i) dec.Gamma.block(i * n, (i - 1) * n, n, n) = Mat<S>::Identity(n, n);
  dec.pbar = build_pbar(chain, k);
  dec.F = build_F(chain, k, m + 1);
  for (int j = 0; j <= m; ++j) {
    Level<S> lv = level(chain, dec.Gamma, j, k);
    dec.G.push_back(std::move(lv.G));
    dec.alpha.push_back(std::move(lv.alpha));
  }
  return dec;
}

template <class S>
double decomposition_residual(const ColumnDecomposition<S>& dec) {
  double worst = 0.0;
  for (std::size_t j = 1; j < dec.F.size(); ++j) {
    Mat<S> r = dec.F[j] - dec.G[j];
    for (std::size_t i = 0; i < j; ++i)
      if (dec.alpha[j][i].size() > 0) r -= dec.F[i] * dec.alpha[j][i];
    const double scale = max_abs(dec.F[j]);
    const double res = max_abs(r);
    worst = std::max(worst, scale > 0.0 ? res / scale : res);
  }
  return worst;
}

template <class S>
double decomposition_zero_blocks(const ColumnDecomposition<S>& dec, int n, int m) {
  double worst = 0.0;
  for (std::size_t j = 0; j < dec.G.size(); ++j) {
    const bool hatted = j % 2 == 1;
    for (int i = 0; i < m; ++i)
      if (odd_tagged(m, i) == hatted) worst = std::max(worst, max_abs<S>(block_row<S>(dec.G[j], i, n)));
  }
  return worst;
}

template <class S>
std::vector<ColumnDecomposition<S>> decompose_all(const BasicChain<S>& chain, Exec exec) {
  std::vector<ColumnDecomposition<S>> out(chain.N);
  for_each_index(exec, chain.N, [&](long k) { out[k] = decompose_columns(chain, k); });
  return out;
}

template ColumnDecomposition<Complex> decompose_columns<Complex>(const Chain&, long);
template ColumnDecomposition<Rational> decompose_columns<Rational>(const RationalChain&, long);
template double decomposition_residual<Complex>(const ColumnDecomposition<Complex>&);
template double decomposition_residual<Rational>(const ColumnDecomposition<Rational>&);
template double decomposition_zero_blocks<Complex>(const ColumnDecomposition<Complex>&, int, int);
template double decomposition_zero_blocks<Rational>(const ColumnDecomposition<Rational>&, int, int);
template std::vector<ColumnDecomposition<Complex>> decompose_all<Complex>(const Chain&, Exec);
template std::vector<ColumnDecomposition<Rational>> decompose_all<Rational>(const RationalChain&,
                                                                           Exec);

double degree_check_unnormalized(const Chain& chain, const Complex& mu, const Tolerances& tol,
                                 Exec exec) {
  const Complex nu = nu_of_mu(mu, chain.m);
  const Chain c1 = map_algebraic_unnormalized(chain, tol, exec);
  const Chain c2 = map_algebraic_unnormalized(scale_by_nu(chain, nu), tol, exec);
  const ScalingSpec spec(chain.m);
  double worst = 0.0;
  for (int k = 0; k < chain.N; ++k) {
    std::vector<CMat> expect(chain.m);
    double scale = 0.0;
    for (int i = 0; i < chain.m; ++i) {
      expect[i] = spec.nu_exponent(i) == 0 ? c1.a[k][i] : CMat(c1.a[k][i] * block_factor(spec, i, nu));
      scale = std::max(scale, max_abs(expect[i]));
    }
    for (int i = 0; i < chain.m; ++i) {
      const double diff = max_abs<Complex>(c2.a[k][i] - expect[i]);
      worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
    }
  }
  return worst;
}

LambdaDegree lambda_degree_check(const Chain& chain, const Complex& mu, const Tolerances& tol,
                                 Exec exec) {
  const ModuliImage base = map_moduli(chain, tol, exec);
  const ModuliImage scaled = map_moduli(apply_scaling(chain, mu), tol, exec);
  LambdaDegree out;
  out.expected = chain.m % 2 == 0 ? ipow(mu, -chain.n) : Complex(1.0, 0.0);
  for (int k = 0; k < chain.N; ++k) {
    const Complex num = scaled.gauge.lambda[k].determinant();
    const Complex den = base.gauge.lambda[k].determinant();
    // Complex division does not return exactly 1 for z / z.
    const Complex r = num == den ? Complex(1.0, 0.0) : num / den;
    out.ratios.push_back(r);
    out.deviation = std::max(out.deviation, std::abs(r - out.expected) / std::abs(out.expected));
  }
  return out;
}

std::vector<Complex> probe_nus() { return {Complex(1.0, 0.0), Complex(0.7, 0.0), std::polar(1.0, 0.4)}; }

double monodromy_class_deviation(const Chain& lhs, const Chain& rhs, const std::vector<Complex>& nus) {
  double worst = 0.0;
  for (const auto& nu : nus)
    worst = std::max(worst, relative_deviation(charpoly(monodromy_nu(lhs, nu)),
                                               charpoly(monodromy_nu(rhs, nu))));
  return worst;
}

double scaling_commutation_check(const Chain& chain, const Complex& mu, const Tolerances& tol,
                                 Exec exec) {
  const Chain lhs = map_moduli(apply_scaling(chain, mu), tol, exec).chain;
  const Chain rhs = apply_scaling(map_moduli(chain, tol, exec).chain, mu);
  return monodromy_class_deviation(lhs, rhs);
}

double scaling_anchor_deviation(const Chain& chain, const Complex& mu0) {
  CMat direct = build_Q_mu(chain, 0, mu0);
  for (int k = 1; k < chain.N; ++k) direct = direct * build_Q_mu(chain, k, mu0);
  return relative_deviation(charpoly(direct), charpoly(monodromy(apply_scaling(chain, mu0))));
}

std::vector<Complex> charpoly(const CMat& P) {
  const Eigen::ComplexEigenSolver<CMat> solver(P, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::SingularMatrix, "eigensolver failed");
  std::vector<Complex> coeffs{Complex(1.0, 0.0)};
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex root = solver.eigenvalues()(i);
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      next[j] += root * coeffs[j];
      next[j + 1] -= coeffs[j];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

std::vector<std::vector<Complex>> spectral_samples(const Chain& chain,
                                                   const std::vector<Complex>& mus, Exec exec) {
  for (const auto& mu : mus) require_nonzero(mu);
  std::vector<std::vector<Complex>> out(mus.size());
  for_each_index(exec, static_cast<long>(mus.size()), [&](long t) {
    out[t] = charpoly(monodromy_nu(chain, nu_of_mu(mus[t], chain.m)));
  });
  return out;
}

std::vector<Complex> SpectralCurve::evaluate(const Complex& nu) const {
  std::vector<Complex> out(coeffs.empty() ? 0 : coeffs.front().size(), Complex(0.0, 0.0));
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    const Complex w = ipow(nu, nu_offset + static_cast<int>(p));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeffs[p][j] * w;
  }
  return out;
}

SpectralCurve spectral_curve(const Chain& chain, Exec exec) {
  const ScalingSpec spec(chain.m);
  const long span = static_cast<long>(chain.dim()) * chain.N;
  const long lo = span * spec.min_nu_exponent();
  const long hi = span * spec.max_nu_exponent();
  const long K = hi - lo + 1;
  if (K > kMaxSpectralSamples)
    fail(ErrorKind::InterpolationIllConditioned,
         "nu window needs " + std::to_string(K) + " samples");

  SpectralCurve curve;
  curve.nu_offset = static_cast<int>(lo);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(K);
  for (long t = 0; t < K; ++t) curve.nus.push_back(std::polar(1.0, step * static_cast<double>(t)));
  curve.samples.resize(K);
  for_each_index(exec, K, [&](long t) { curve.samples[t] = charpoly(monodromy_nu(chain, curve.nus[t])); });

  // Inverse DFT; the sample nodes are the K-th roots of unity.
  const std::size_t degree = curve.samples.front().size();
  curve.coeffs.assign(K, std::vector<Complex>(degree, Complex(0.0, 0.0)));
  for_each_index(exec, K, [&](long p) {
    for (long t = 0; t < K; ++t) {
      const long e = floor_mod(-t * (lo + p), K);
      const Complex w = std::polar(1.0, step * static_cast<double>(e)) / static_cast<double>(K);
      for (std::size_t j = 0; j < degree; ++j) curve.coeffs[p][j] += curve.samples[t][j] * w;
    }
  });

  for (int t = 0; t < 5; ++t) {
    const Complex nu = std::polar(1.0, 0.1234 + 1.3 * t + 0.5 * step);
    curve.heldout_residual =
        std::max(curve.heldout_residual,
                 relative_deviation(charpoly(monodromy_nu(chain, nu)), curve.evaluate(nu)));
  }
  return curve;
}

}  // namespace grasspenta

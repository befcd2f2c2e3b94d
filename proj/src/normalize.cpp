#include "grasspenta/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "grasspenta/error.hpp"

namespace grasspenta {

namespace {

void require_coprime(int N, int m) {
  if (std::gcd(N, m) != 1)
    fail(ErrorKind::NotCoprime, "gcd(" + std::to_string(N) + ", " + std::to_string(m) + ") != 1");
}

struct Spectrum {
  std::vector<Complex> values;
  CMat vectors;
};

Spectrum eigen_decompose(const CMat& B) {
  Eigen::ComplexEigenSolver<CMat> solver(B, true);
  if (solver.info() != Eigen::Success) fail(ErrorKind::NonGenericGauge, "eigensolver failed");
  Spectrum out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  return out;
}

double min_separation(const std::vector<Complex>& w) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) sep = std::min(sep, std::abs(w[i] - w[j]));
  return sep;
}

// Unit column with its largest-modulus entry real and positive.
void fix_column_phase(CMat& v, Eigen::Index c) {
  Eigen::Index p = 0;
  v.col(c).cwiseAbs().maxCoeff(&p);
  const Complex pivot = v(p, c);
  v.col(c) *= (std::abs(pivot) / pivot) / v.col(c).norm();
}

}  // namespace

std::vector<Complex> solve_delta(const std::vector<Complex>& Z, int m) {
  const int N = static_cast<int>(Z.size());
  require_coprime(N, m);
  for (const auto& z : Z)
    if (z == Complex(0.0, 0.0)) fail(ErrorKind::ZeroInput, "Z_k = 0");
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < m; ++i) C(k, (k + i) % N) += 1.0;
  Eigen::VectorXcd logs(N);
  for (int k = 0; k < N; ++k) logs(k) = std::log(Z[k]);
  const Eigen::VectorXcd x = C.cast<Complex>().fullPivLu().solve(logs);
  std::vector<Complex> delta(N);
  for (int k = 0; k < N; ++k) delta[k] = std::exp(x(k));
  return delta;
}

std::vector<int> m_product_order(int N, int m, int r) {
  require_coprime(N, m);
  std::vector<int> order(N);
  for (int j = 0; j < N; ++j) order[j] = static_cast<int>(floor_mod(r + static_cast<long>(j) * m, N));
  return order;
}

template <class S>
Mat<S> m_product(const std::vector<Mat<S>>& seq, int m, int r) {
  const std::vector<int> order = m_product_order(static_cast<int>(seq.size()), m, r);
  Mat<S> P = seq[order[0]];
  for (std::size_t j = 1; j < order.size(); ++j) P = P * seq[order[j]];
  return P;
}

template CMat m_product<Complex>(const std::vector<CMat>&, int, int);
template QMat m_product<Rational>(const std::vector<QMat>&, int, int);

JordanGauge jordan_gauge(const Chain& chain, const Tolerances& tol, Exec exec) {
  const int N = chain.N, n = chain.n;
  require_coprime(N, chain.m);
  std::vector<CMat> a0(N);
  for (int k = 0; k < N; ++k) a0[k] = chain.a[k][0];

  JordanGauge out;
  out.B.resize(N);
  out.d.resize(N);
  for_each_index(exec, N, [&](long r) { out.B[r] = m_product(a0, chain.m, static_cast<int>(r)); });

  const double scale0 = out.B[0].norm();
  const Spectrum base = eigen_decompose(out.B[0]);
  if (n > 1 && min_separation(base.values) < tol.sep * scale0)
    fail(ErrorKind::NonGenericGauge, "repeated eigenvalue in the m-product of a^0");
  out.J = base.values;
  const double tie = tol.sep * scale0;
  std::sort(out.J.begin(), out.J.end(), [tie](const Complex& x, const Complex& y) {
    if (std::abs(x.real() - y.real()) > tie) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  std::vector<double> mismatch(N, 0.0);
  for_each_index(exec, N, [&](long r) {
    if (n == 1) {
      out.d[r] = CMat::Identity(1, 1);
      mismatch[r] = std::abs(out.B[r](0, 0) - out.J[0]) / std::max(std::abs(out.J[0]), 1e-300);
      return;
    }
    const double scale = out.B[r].norm();
    const Spectrum sp = eigen_decompose(out.B[r]);
    if (min_separation(sp.values) < tol.sep * scale)
      fail(ErrorKind::NonGenericGauge, "repeated eigenvalue in B_" + std::to_string(r));
    std::vector<bool> used(n, false);
    CMat d(n, n);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      int best = -1;
      for (int i = 0; i < n; ++i)
        if (!used[i] && (best < 0 || std::abs(sp.values[i] - out.J[j]) <
                                         std::abs(sp.values[best] - out.J[j])))
          best = i;
      used[best] = true;
      worst = std::max(worst, std::abs(sp.values[best] - out.J[j]) / scale);
      d.col(j) = sp.vectors.col(best);
      fix_column_phase(d, j);
    }
    out.d[r] = d;
    mismatch[r] = worst;
  });
  out.eigen_mismatch = *std::max_element(mismatch.begin(), mismatch.end());
  return out;
}

CMat cumulative_product(const std::vector<CMat>& b, int m, long k) {
  const long N = static_cast<long>(b.size());
  CMat P = b[floor_mod(k - m + 1, N)];
  for (long j = 1; j < N; ++j) P = P * b[floor_mod(k - m + 1 + j, N)];
  return P;
}

GaugeData syzygy_gauge(const Chain& chain, const JordanGauge& jordan,
                       const std::vector<Complex>& delta, const Tolerances& tol, Exec exec) {
  const int N = chain.N, n = chain.n, m = chain.m;
  GaugeData out;
  out.delta = delta;
  out.d = jordan.d;
  out.q.resize(N);
  out.lambda.resize(N);

  std::vector<CMat> b(N);
  for_each_index(exec, N, [&](long k) {
    b[k] = jordan.d[floor_mod(k + m - 1, N)].partialPivLu().solve(chain.a[k][m - 1] *
                                                                  jordan.d[floor_mod(k + m, N)]);
  });

  for_each_index(exec, N, [&](long k) {
    std::vector<Complex> ratio(n, Complex(1.0, 0.0));
    if (n >= 2) {
      const CMat bk = cumulative_product(b, m, k);
      const double floor = tol.eps * std::max(max_abs(bk), 1e-300);
      auto require = [&](int i, int j) {
        if (std::abs(bk(i, j)) <= floor)
          fail(ErrorKind::DegenerateSyzygy, "cumulative product entry (" + std::to_string(i + 1) +
                                                "," + std::to_string(j + 1) + ") vanishes at k=" +
                                                std::to_string(k));
      };
      require(0, 1);
      require(1, 0);
      const Complex t = std::sqrt(bk(1, 0) / bk(0, 1));
      ratio[1] = t;
      for (int i = 2; i < n; ++i) {
        require(i - 1, i);
        ratio[i] = ratio[i - 1] * t * bk(0, 1) / bk(i - 1, i);
      }
    }
    Complex prod(1.0, 0.0);
    for (const auto& r : ratio) prod *= r;
    const Complex det_q = delta[k] / jordan.d[k].determinant();
    const Complex q1 = std::pow(det_q / prod, 1.0 / n);
    CMat q = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) q(i, i) = q1 * ratio[i];
    out.q[k] = q;
    out.lambda[k] = jordan.d[k] * q;
  });
  return out;
}

NormalizedChain normalize_chain(const Chain& hat, const std::vector<Complex>& frame_dets,
                                const Tolerances& tol, Exec exec) {
  std::vector<Complex> Z(frame_dets.size());
  for (std::size_t k = 0; k < Z.size(); ++k) {
    if (frame_dets[k] == Complex(0.0, 0.0)) fail(ErrorKind::ZeroInput, "frame determinant is 0");
    Z[k] = 1.0 / frame_dets[k];
  }
  const std::vector<Complex> delta = solve_delta(Z, hat.m);
  const JordanGauge jordan = jordan_gauge(hat, tol, exec);
  NormalizedChain out;
  out.gauge = syzygy_gauge(hat, jordan, delta, tol, exec);
  out.gauge.Z = Z;
  out.chain = regauge_chain(hat, out.gauge.lambda, exec);
  return out;
}

NormalizedLift normalize_lift(const Lift& lift, const Tolerances& tol, Exec exec) {
  const Chain hat = extract_invariants(lift, tol.eps, exec);
  NormalizedChain nc = normalize_chain(hat, frame_determinants(lift, exec), tol, exec);
  NormalizedLift out;
  out.lift = regauge_lift(lift, nc.gauge.lambda);
  out.chain = std::move(nc.chain);
  out.gauge = std::move(nc.gauge);
  return out;
}

double normalized_det_a0(int n, int m) { return (n * (m - 1)) % 2 == 0 ? 1.0 : -1.0; }

double syzygy_residual(const Chain& chain) {
  const int n = chain.n, m = chain.m, N = chain.N;
  if (n < 2) return 0.0;
  std::vector<CMat> b(N);
  for (int k = 0; k < N; ++k) b[k] = chain.a[k][m - 1];
  double worst = 0.0;
  for (int k = 0; k < N; ++k) {
    const CMat bk = cumulative_product(b, m, k);
    const double scale = std::max(max_abs(bk), 1e-300);
    worst = std::max(worst, std::abs(bk(1, 0) - bk(0, 1)) / scale);
    for (int i = 2; i < n; ++i) worst = std::max(worst, std::abs(bk(i - 1, i) - bk(0, 1)) / scale);
  }
  return worst;
}

NormalizationResiduals normalization_residuals(const Lift& lift, const Chain& chain) {
  NormalizationResiduals out;
  for (const auto& det : frame_determinants(lift, Exec::serial))
    out.frame_det = std::max(out.frame_det, std::abs(det - 1.0));
  const double law = normalized_det_a0(chain.n, chain.m);
  for (int k = 0; k < chain.N; ++k) {
    const CMat& a0 = chain.a[k][0];
    for (int j = 0; j < chain.n; ++j)
      for (int i = 0; i < chain.n; ++i)
        if (i != j) out.a0_offdiag = std::max(out.a0_offdiag, std::abs(a0(i, j)));
    const Complex det = determinant<Complex>(a0);
    out.det_a0_one = std::max(out.det_a0_one, std::abs(det - 1.0));
    out.det_a0_law = std::max(out.det_a0_law, std::abs(det - law));
  }
  out.syzygy = syzygy_residual(chain);
  return out;
}

}  // namespace grasspenta

#include "grasspenta/polygon.hpp"

#include <numeric>
#include <random>
#include <string>

#include "grasspenta/error.hpp"

namespace grasspenta {

namespace {

// Uniform in [-1, 1] from raw engine output, so draws do not depend on the
// standard library's distribution implementation.
double unit_draw(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

template <class S>
S draw(std::mt19937_64& rng);

template <>
Complex draw<Complex>(std::mt19937_64& rng) {
  const double re = unit_draw(rng);
  const double im = unit_draw(rng);
  return {re, im};
}

template <>
Rational draw<Rational>(std::mt19937_64& rng) {
  const long k = static_cast<long>(rng() % 33) - 16;
  return Rational(k, 16);
}

template <class S>
Mat<S> draw_matrix(std::mt19937_64& rng, long rows, long cols) {
  Mat<S> out(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) out(i, j) = draw<S>(rng);
  return out;
}

template <class S>
Mat<S> matrix_power(const Mat<S>& a, long q) {
  Mat<S> out = Mat<S>::Identity(a.rows(), a.cols());
  for (long i = 0; i < q; ++i) out = a * out;
  return out;
}

}  // namespace

template <class S>
Mat<S> BasicLift<S>::vertex(long k) const {
  const long r = floor_mod(k, N);
  const long q = floor_div(k, N);
  if (q == 0) return X[r];
  if (q > 0) return matrix_power<S>(M, q) * X[r];
  Mat<S> out;
  if (!try_solve<S>(matrix_power<S>(M, -q), X[r], out))
    fail(ErrorKind::SingularFrame, "monodromy is singular");
  return out;
}

template <class S>
Mat<S> BasicLift<S>::frame(long k) const {
  Mat<S> rho(dim(), dim());
  for (int i = 0; i < m; ++i) rho.middleCols(static_cast<Eigen::Index>(i) * n, n) = vertex(k + i);
  return rho;
}

void validate_dims(int n, int m, int N) {
  if (n < 1) fail(ErrorKind::InvalidDims, "n must be >= 1");
  if (m < 3) fail(ErrorKind::InvalidDims, "m must be >= 3");
  if (N < m) fail(ErrorKind::InvalidDims, "N must be >= m");
  if (std::gcd(N, m) != 1)
    fail(ErrorKind::InvalidDims,
         "gcd(N, m) = " + std::to_string(std::gcd(N, m)) + ", must be 1");
}

template <class S>
BasicLift<S> random_regular_lift(int n, int m, int N, std::uint64_t seed, double max_cond) {
  validate_dims(n, m, N);
  std::mt19937_64 rng(seed);
  const int d = n * m;
  for (int attempt = 0; attempt < 100; ++attempt) {
    BasicLift<S> lift;
    lift.n = n;
    lift.m = m;
    lift.N = N;
    for (int k = 0; k < N; ++k) lift.X.push_back(draw_matrix<S>(rng, d, n));
    Mat<S> rho0(d, d);
    for (int i = 0; i < m; ++i) rho0.middleCols(i * n, n) = lift.X[i];
    Mat<S> rhoN = draw_matrix<S>(rng, d, d);
    const S det0 = determinant<S>(rho0);
    const S detN = determinant<S>(rhoN);
    if (magnitude(det0) == 0.0 || magnitude(detN) == 0.0) continue;
    if constexpr (is_exact_v<S>) {
      if (det0 == 0 || detN == 0) continue;
    }
    const S ratio = det0 / detN;
    rhoN.col(0) *= ratio;
    Mat<S> rho0_inv;
    if (!try_solve<S>(rho0, Mat<S>::Identity(d, d), rho0_inv)) continue;
    lift.M = rhoN * rho0_inv;

    bool ok = true;
    for (int k = 0; k < N && ok; ++k) ok = condition_number(to_complex(lift.frame(k))) <= max_cond;
    if (ok) return lift;
  }
  fail(ErrorKind::GenerationFailed, "no well-conditioned lift after 100 attempts");
}

template <class S>
BasicChain<S> random_chain(int n, int m, int N, std::uint64_t seed) {
  if (n < 1 || m < 3 || N < 1) fail(ErrorKind::InvalidDims, "need n >= 1, m >= 3, N >= 1");
  std::mt19937_64 rng(seed);
  BasicChain<S> chain;
  chain.n = n;
  chain.m = m;
  chain.N = N;
  chain.a.assign(N, std::vector<Mat<S>>(m));
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < m; ++i) chain.a[k][i] = draw_matrix<S>(rng, n, n);
  return chain;
}

template <class S>
Regularity is_regular(const BasicLift<S>& lift, double eps) {
  Regularity out;
  out.min_abs_det = std::numeric_limits<double>::infinity();
  out.min_ratio = std::numeric_limits<double>::infinity();
  bool exact_singular = false;
  for (int k = 0; k < lift.N; ++k) {
    const Mat<S> rho = lift.frame(k);
    const S det = determinant<S>(rho);
    if constexpr (is_exact_v<S>) exact_singular = exact_singular || det == 0;
    out.min_abs_det = std::min(out.min_abs_det, magnitude(det));
    out.min_ratio = std::min(out.min_ratio, hadamard_ratio<S>(rho));
  }
  if constexpr (is_exact_v<S>)
    out.regular = !exact_singular;
  else
    out.regular = out.min_ratio > eps;
  return out;
}

template <class S>
std::vector<S> frame_determinants(const BasicLift<S>& lift, Exec exec) {
  std::vector<S> dets(lift.N);
  for_each_index(exec, lift.N, [&](long k) { dets[k] = determinant<S>(lift.frame(k)); });
  return dets;
}

template <class S>
BasicChain<S> extract_invariants(const BasicLift<S>& lift, double eps, Exec exec) {
  const Regularity reg = is_regular(lift, eps);
  if (!reg.regular)
    fail(ErrorKind::NotRegular, "frame determinant ratio " + std::to_string(reg.min_ratio) +
                                    " not above tolerance");
  BasicChain<S> chain;
  chain.n = lift.n;
  chain.m = lift.m;
  chain.N = lift.N;
  chain.a.assign(lift.N, std::vector<Mat<S>>(lift.m));
  for_each_index(exec, lift.N, [&](long k) {
    Mat<S> sol;
    if (!try_solve<S>(lift.frame(k), lift.vertex(k + lift.m), sol))
      fail(ErrorKind::NotRegular, "frame " + std::to_string(k) + " is singular");
    for (int i = 0; i < lift.m; ++i) chain.a[k][i] = block_row<S>(sol, i, lift.n);
  });
  return chain;
}

template <class S>
Mat<S> build_Q(const BasicChain<S>& chain, long k) {
  const int n = chain.n, m = chain.m, d = chain.dim();
  Mat<S> Q = Mat<S>::Zero(d, d);
  for (int i = 1; i < m; ++i) Q.block(i * n, (i - 1) * n, n, n) = Mat<S>::Identity(n, n);
  for (int i = 0; i < m; ++i) Q.block(i * n, (m - 1) * n, n, n) = chain.block(k, i);
  return Q;
}

template <class S>
Mat<S> monodromy(const BasicChain<S>& chain) {
  Mat<S> P = build_Q(chain, 0);
  for (int k = 1; k < chain.N; ++k) P = P * build_Q(chain, k);
  return P;
}

template <class S>
BasicLift<S> reconstruct_lift(const BasicChain<S>& chain, const Mat<S>& rho0, double eps) {
  const bool singular = is_exact_v<S> ? magnitude(determinant<S>(rho0)) == 0.0
                                      : hadamard_ratio<S>(rho0) <= eps;
  Mat<S> rho0_inv;
  if (singular || !try_solve<S>(rho0, Mat<S>::Identity(rho0.rows(), rho0.cols()), rho0_inv))
    fail(ErrorKind::SingularFrame, "initial frame is singular");
  BasicLift<S> lift;
  lift.n = chain.n;
  lift.m = chain.m;
  lift.N = chain.N;
  Mat<S> rho = rho0;
  for (int k = 0; k < chain.N; ++k) {
    lift.X.push_back(rho.leftCols(chain.n));
    rho = rho * build_Q(chain, k);
  }
  lift.M = rho * rho0_inv;
  return lift;
}

template <class S>
BasicLift<S> act(const Mat<S>& g, const BasicLift<S>& lift) {
  BasicLift<S> out = lift;
  for (auto& x : out.X) x = g * x;
  out.M = g * lift.M * inverse<S>(g);
  return out;
}

template <class S>
BasicLift<S> regauge_lift(const BasicLift<S>& lift, const std::vector<Mat<S>>& g) {
  BasicLift<S> out = lift;
  for (int k = 0; k < lift.N; ++k) out.X[k] = lift.X[k] * g[k];
  return out;
}

template <class S>
BasicChain<S> regauge_chain(const BasicChain<S>& chain, const std::vector<Mat<S>>& g, Exec exec) {
  BasicChain<S> out = chain;
  const long N = chain.N;
  for_each_index(exec, N, [&](long k) {
    const Mat<S>& right = g[floor_mod(k + chain.m, N)];
    for (int i = 0; i < chain.m; ++i) {
      Mat<S> sol;
      if (!try_solve<S>(g[floor_mod(k + i, N)], chain.a[k][i] * right, sol))
        fail(ErrorKind::SingularMatrix, "gauge matrix is singular");
      out.a[k][i] = sol;
    }
  });
  return out;
}

Lift to_complex(const RationalLift& lift) {
  Lift out;
  out.n = lift.n;
  out.m = lift.m;
  out.N = lift.N;
  for (const auto& x : lift.X) out.X.push_back(to_complex(x));
  out.M = to_complex(lift.M);
  return out;
}

Chain to_complex(const RationalChain& chain) {
  Chain out;
  out.n = chain.n;
  out.m = chain.m;
  out.N = chain.N;
  out.a.assign(chain.N, std::vector<CMat>(chain.m));
  for (int k = 0; k < chain.N; ++k)
    for (int i = 0; i < chain.m; ++i) out.a[k][i] = to_complex(chain.a[k][i]);
  return out;
}

#define GRASSPENTA_INSTANTIATE(S)                                                              \
  template struct BasicLift<S>;                                                                \
  template BasicLift<S> random_regular_lift<S>(int, int, int, std::uint64_t, double);          \
  template BasicChain<S> random_chain<S>(int, int, int, std::uint64_t);                        \
  template Regularity is_regular<S>(const BasicLift<S>&, double);                              \
  template std::vector<S> frame_determinants<S>(const BasicLift<S>&, Exec);                    \
  template BasicChain<S> extract_invariants<S>(const BasicLift<S>&, double, Exec);             \
  template Mat<S> build_Q<S>(const BasicChain<S>&, long);                                      \
  template Mat<S> monodromy<S>(const BasicChain<S>&);                                          \
  template BasicLift<S> reconstruct_lift<S>(const BasicChain<S>&, const Mat<S>&, double);      \
  template BasicLift<S> act<S>(const Mat<S>&, const BasicLift<S>&);                            \
  template BasicLift<S> regauge_lift<S>(const BasicLift<S>&, const std::vector<Mat<S>>&);      \
  template BasicChain<S> regauge_chain<S>(const BasicChain<S>&, const std::vector<Mat<S>>&, Exec);

GRASSPENTA_INSTANTIATE(Complex)
GRASSPENTA_INSTANTIATE(Rational)

#undef GRASSPENTA_INSTANTIATE

}  // namespace grasspenta

#include "grasspenta/pentamap.hpp"

#include <string>

#include "grasspenta/error.hpp"

namespace grasspenta {

namespace {

bool odd_tagged(int m, int i) { return m % 2 == 0 ? i % 2 == 1 : i % 2 == 0; }

template <class S>
Mat<S> hstack(const std::vector<Mat<S>>& cols) {
  Eigen::Index width = 0;
  for (const auto& c : cols) width += c.cols();
  Mat<S> out(cols.front().rows(), width);
  Eigen::Index at = 0;
  for (const auto& c : cols) {
    out.middleCols(at, c.cols()) = c;
    at += c.cols();
  }
  return out;
}

}  // namespace

template <class S>
SubspacePair<S> subspace_pair(const BasicLift<S>& lift, long k) {
  const int m = lift.m;
  const int s = m / 2;
  std::vector<Mat<S>> p, o;
  for (int r = 0; r <= s; ++r) p.push_back(lift.vertex(k + 2 * r));
  if (m % 2 == 0) {
    for (int r = 0; r < s; ++r) o.push_back(lift.vertex(k + 2 * r + 1));
  } else {
    for (int r = 0; r <= s; ++r) o.push_back(lift.vertex(k + 2 * r + 1));
  }
  return {hstack(p), hstack(o)};
}

template <class S>
Intersection<S> intersect_detail(const BasicLift<S>& lift, long k, const Tolerances& tol) {
  const SubspacePair<S> pair = subspace_pair(lift, k);
  Mat<S> system(pair.P.rows(), pair.P.cols() + pair.O.cols());
  system << pair.P, -pair.O;
  Kernel<S> ker = kernel<S>(system, tol.rank);
  Intersection<S> out;
  out.rank = ker.rank;
  out.kernel_dim = static_cast<int>(ker.basis.cols());
  if (out.kernel_dim != lift.n)
    fail(ErrorKind::NonGenericIntersection,
         "intersection at k=" + std::to_string(k) + " has dimension " +
             std::to_string(out.kernel_dim) + ", expected " + std::to_string(lift.n));
  out.coefficients = std::move(ker.basis);
  out.basis = pair.P * out.coefficients.topRows(pair.P.cols());
  return out;
}

template <class S>
Mat<S> intersect(const BasicLift<S>& lift, long k, const Tolerances& tol) {
  return intersect_detail(lift, k, tol).basis;
}

template <class S>
BasicLift<S> map_geometric(const BasicLift<S>& lift, const Tolerances& tol, Exec exec) {
  BasicLift<S> out;
  out.n = lift.n;
  out.m = lift.m;
  out.N = lift.N;
  out.M = lift.M;
  out.X.resize(lift.N);
  for_each_index(exec, lift.N, [&](long k) { out.X[k] = intersect(lift, k, tol); });
  return out;
}

template <class S>
double structural_residual(const BasicLift<S>& lift, const BasicChain<S>& chain, long k,
                           const Intersection<S>& image) {
  const int n = lift.n, m = lift.m, s = m / 2;
  const CMat x = to_complex(image.coefficients);
  auto coeff = [&](int j) -> CMat { return x.middleRows(static_cast<Eigen::Index>(j) * n, n); };
  auto a = [&](int i) -> CMat { return to_complex(chain.block(k, i)); };
  const double scale = std::max(max_abs(x), 1e-300);
  double worst = 0.0;
  auto track = [&](const CMat& r) { worst = std::max(worst, max_abs(r) / scale); };
  if (m % 2 == 0) {
    // P coefficients are c^0, c^2, ..., c^{2s}; O coefficients follow.
    const CMat last = coeff(s);
    for (int r = 0; r < s; ++r) {
      track(coeff(r) + a(2 * r) * last);
      track(coeff(s + 1 + r) - a(2 * r + 1) * last);
    }
  } else {
    // P coefficients are c^0, ..., c^{2s}; O coefficients are c^1, ..., c^{2s+1}.
    const CMat last = coeff(2 * s + 1);
    for (int l = 0; l < s; ++l) track(coeff(s + 1 + l) + a(2 * l + 1) * last);
    for (int l = 0; l <= s; ++l) track(coeff(l) - a(2 * l) * last);
  }
  return worst;
}

template <class S>
Mat<S> build_rbar(const BasicChain<S>& chain, long k) {
  const int n = chain.n;
  Mat<S> r = Mat<S>::Zero(chain.dim(), n);
  for (int i = 0; i < chain.m; ++i)
    if (odd_tagged(chain.m, i)) r.middleRows(i * n, n) = chain.block(k, i);
  return r;
}

template <class S>
Mat<S> build_pbar(const BasicChain<S>& chain, long k) {
  const int n = chain.n;
  Mat<S> p = Mat<S>::Zero(chain.dim(), n);
  for (int i = 0; i < chain.m; ++i)
    if (!odd_tagged(chain.m, i)) p.middleRows(i * n, n) = chain.block(k, i);
  return p;
}

template <class S>
std::vector<Mat<S>> build_F(const BasicChain<S>& chain, long k, int count) {
  std::vector<Mat<S>> F;
  F.reserve(count);
  Mat<S> R = Mat<S>::Identity(chain.dim(), chain.dim());
  for (int l = 0; l < count; ++l) {
    if (l > 0) R = R * build_Q(chain, k + l - 1);
    F.push_back(R * build_rbar(chain, k + l));
  }
  return F;
}

template <class S>
Mat<S> build_N(const BasicChain<S>& chain, long k) {
  std::vector<Mat<S>> F = build_F(chain, k, chain.m);
  return hstack(F);
}

template <class S>
BasicChain<S> map_algebraic_unnormalized(const BasicChain<S>& chain, const Tolerances& tol,
                                         Exec exec) {
  BasicChain<S> c;
  c.n = chain.n;
  c.m = chain.m;
  c.N = chain.N;
  c.a.assign(chain.N, std::vector<Mat<S>>(chain.m));
  for_each_index(exec, chain.N, [&](long k) {
    std::vector<Mat<S>> F = build_F(chain, k, chain.m + 1);
    const Mat<S> rhs = F.back();
    F.pop_back();
    const Mat<S> Nk = hstack(F);
    bool singular;
    if constexpr (is_exact_v<S>)
      singular = determinant<S>(Nk) == 0;
    else
      singular = magnitude(determinant<S>(Nk)) <= tol.eps || 1.0 / condition_number(Nk) <= tol.eps;
    Mat<S> sol;
    if (singular || !try_solve<S>(Nk, rhs, sol))
      fail(ErrorKind::SingularN, "N_" + std::to_string(k) + " is singular");
    for (int i = 0; i < chain.m; ++i) c.a[k][i] = block_row<S>(sol, i, chain.n);
  });
  return c;
}

ModuliImage map_moduli(const Chain& chain, const Tolerances& tol, Exec exec) {
  ModuliImage out;
  out.unnormalized = map_algebraic_unnormalized(chain, tol, exec);
  const int N = chain.N;
  std::vector<Complex> det_N(N), det_Q(N);
  for_each_index(exec, N, [&](long k) {
    det_N[k] = determinant<Complex>(build_N(chain, k));
    det_Q[k] = determinant<Complex>(build_Q(chain, k));
  });
  // Image frame rho_k N_k with rho_0 = I and rho_{k+1} = rho_k Q_k.
  std::vector<Complex> dets(N);
  Complex det_rho(1.0, 0.0);
  for (int k = 0; k < N; ++k) {
    dets[k] = det_rho * det_N[k];
    det_rho *= det_Q[k];
  }
  NormalizedChain nc = normalize_chain(out.unnormalized, dets, tol, exec);
  out.chain = std::move(nc.chain);
  out.gauge = std::move(nc.gauge);
  return out;
}

#define GRASSPENTA_INSTANTIATE(S)                                                               \
  template SubspacePair<S> subspace_pair<S>(const BasicLift<S>&, long);                         \
  template Intersection<S> intersect_detail<S>(const BasicLift<S>&, long, const Tolerances&);   \
  template Mat<S> intersect<S>(const BasicLift<S>&, long, const Tolerances&);                   \
  template BasicLift<S> map_geometric<S>(const BasicLift<S>&, const Tolerances&, Exec);         \
  template double structural_residual<S>(const BasicLift<S>&, const BasicChain<S>&, long,       \
                                         const Intersection<S>&);                               \
  template Mat<S> build_rbar<S>(const BasicChain<S>&, long);                                    \
  template Mat<S> build_pbar<S>(const BasicChain<S>&, long);                                    \
  template std::vector<Mat<S>> build_F<S>(const BasicChain<S>&, long, int);                     \
  template Mat<S> build_N<S>(const BasicChain<S>&, long);                                       \
  template BasicChain<S> map_algebraic_unnormalized<S>(const BasicChain<S>&, const Tolerances&, \
                                                       Exec);

GRASSPENTA_INSTANTIATE(Complex)
GRASSPENTA_INSTANTIATE(Rational)

#undef GRASSPENTA_INSTANTIATE

}  // namespace grasspenta

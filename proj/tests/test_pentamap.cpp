#include <doctest.h>

#include "grasspenta/error.hpp"
#include "grasspenta/lax.hpp"
#include "grasspenta/normalize.hpp"
#include "grasspenta/oracle.hpp"
#include "grasspenta/pentamap.hpp"
#include "support.hpp"

using namespace grasspenta;
using namespace grasspenta::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::FormatError;
}

// Relative distance of v from the line spanned by u.
double proportional(const CMat& u, const CMat& v) {
  const Complex t = (u.adjoint() * v)(0, 0) / u.squaredNorm();
  return (v - t * u).norm() / v.norm();
}

Lift basis_lift_m3() { return column_lift(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, CMat::Identity(3, 3)); }

Lift basis_lift_m4() {
  return column_lift(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}},
                     CMat::Identity(4, 4));
}

}  // namespace

TEST_CASE("intersect on the standard basis, odd m") {
  const CMat v = intersect(basis_lift_m3(), 0);
  CHECK(v.cols() == 1);
  CHECK(proportional(v, cmat({{1}, {0}, {1}})) < 1e-12);
}

TEST_CASE("intersect on the standard basis, even m") {
  const CMat v = intersect(basis_lift_m4(), 0);
  CHECK(proportional(v, cmat({{0}, {1}, {0}, {1}})) < 1e-12);
}

TEST_CASE("intersect rejects overlapping spans") {
  const Lift bad = column_lift(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}},
                               CMat::Identity(4, 4));
  CHECK(kind_of([&] { intersect(bad, 0); }) == ErrorKind::NonGenericIntersection);
  CHECK(kind_of([&] { map_geometric(bad); }) == ErrorKind::NonGenericIntersection);
}

TEST_CASE("subspace_pair dimensions") {
  const Lift even = random_regular_lift<Complex>(2, 6, 7, 1);
  const auto pe = subspace_pair(even, 0);
  CHECK(pe.P.cols() == 8);
  CHECK(pe.O.cols() == 6);
  const Lift odd = random_regular_lift<Complex>(2, 5, 7, 1);
  const auto po = subspace_pair(odd, 0);
  CHECK(po.P.cols() == 6);
  CHECK(po.O.cols() == 6);
}

TEST_CASE("map_geometric keeps the monodromy and uses intersect") {
  const Lift lift = random_regular_lift<Complex>(2, 4, 7, 3);
  const Lift image = map_geometric(lift);
  CHECK(image.M == lift.M);
  for (int k = 0; k < 7; ++k) CHECK(image.X[k] == intersect(lift, k));
}

TEST_CASE("map_geometric matches the classical construction on a pentagon") {
  std::vector<std::vector<double>> cols;
  std::vector<ProjectivePoint2D> pts;
  for (int k = 0; k < 5; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 5.0;
    cols.push_back({std::cos(t), std::sin(t), 1.0});
    pts.push_back({{Complex(std::cos(t)), Complex(std::sin(t)), Complex(1.0)}});
  }
  const Lift lift = column_lift(3, cols, CMat::Identity(3, 3));
  const Lift image = map_geometric(lift);
  const auto classical = classical_pentagram_rp2(pts);
  // Vertex k of the Grassmannian map is vertex k+1 of the classical labelling.
  for (int k = 0; k < 5; ++k) {
    ProjectivePoint2D p{{image.X[k](0, 0), image.X[k](1, 0), image.X[k](2, 0)}};
    const double d0 = projective_distance(p, classical[k]);
    const double d1 = projective_distance(p, classical[(k + 1) % 5]);
    CHECK(std::min(d0, d1) < 1e-9);
  }
}

TEST_CASE("structural residual of the image coordinates") {
  for (const auto& d : random_dims(10, 41)) {
    const Lift lift = random_regular_lift<Complex>(d.n, d.m, d.N, d.seed);
    const Chain chain = extract_invariants(lift);
    for (int k = 0; k < d.N; ++k) CHECK(structural_residual(lift, chain, k, intersect_detail(lift, k)) < 1e-9);
  }
}

TEST_CASE("rbar and pbar split the last column of Q") {
  for (int m : {3, 4, 5, 6}) {
    const RationalChain c = random_chain<Rational>(2, m, m + 1, 50 + m);
    const QMat r = build_rbar(c, 0), p = build_pbar(c, 0);
    CHECK(r + p == build_Q(c, 0).rightCols(2));
    for (int i = 0; i < m; ++i) {
      const bool in_r = (m % 2 == 0) ? (i % 2 == 1) : (i % 2 == 0);
      const QMat rb = r.middleRows(2 * i, 2), pb = p.middleRows(2 * i, 2);
      CHECK((in_r ? pb : rb) == QMat::Zero(2, 2));
      CHECK((in_r ? rb : pb) == c.a[0][i]);
    }
  }
}

TEST_CASE("build_N stacks the F columns") {
  const Chain c = random_chain<Complex>(2, 4, 5, 9);
  const auto F = build_F(c, 2, 4);
  const CMat Nk = build_N(c, 2);
  CHECK(F[0] == build_rbar(c, 2));
  for (int l = 0; l < 4; ++l) CHECK(Nk.middleCols(2 * l, 2) == F[l]);
  CHECK(rel_err(F[1], build_Q(c, 2) * build_rbar(c, 3)) < 1e-15);
}

TEST_CASE("map_algebraic_unnormalized solves the linear system") {
  const Chain c = random_chain<Complex>(2, 5, 7, 12);
  const Chain out = map_algebraic_unnormalized(c);
  for (int k = 0; k < 7; ++k) {
    const auto F = build_F(c, k, 6);
    CMat lhs = CMat::Zero(10, 2);
    for (int i = 0; i < 5; ++i) lhs += F[i] * out.a[k][i];
    CHECK(rel_err(lhs, F[5]) < 1e-10);
  }
}

TEST_CASE("map_algebraic_unnormalized matches Cramer exactly on rational chains") {
  const RationalLift lift = random_regular_lift<Rational>(1, 3, 4, 77);
  const RationalChain chain = extract_invariants(lift);
  const RationalChain exact = map_algebraic_unnormalized(chain);
  const RationalChain oracle = cramer_map_unnormalized(chain);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i) CHECK(exact.a[k][i] == oracle.a[k][i]);
}

TEST_CASE("singular N_k is reported") {
  Chain c = random_chain<Complex>(1, 4, 5, 3);
  for (int k = 0; k < 5; ++k) c.a[k][1] = c.a[k][3] = CMat::Zero(1, 1);
  CHECK(kind_of([&] { map_algebraic_unnormalized(c); }) == ErrorKind::SingularN);
  RationalChain q = random_chain<Rational>(1, 4, 5, 3);
  for (int k = 0; k < 5; ++k) q.a[k][1] = q.a[k][3] = QMat::Zero(1, 1);
  CHECK(kind_of([&] { map_algebraic_unnormalized(q); }) == ErrorKind::SingularN);
}

TEST_CASE("a quadrilateral collapses under the map") {
  // Both diagonals of a 4-gon meet in one point, so every image vertex coincides.
  const Lift lift = basis_lift_m3();
  CHECK(kind_of([&] { map_moduli(normalize_lift(lift).chain); }) == ErrorKind::SingularN);
  CHECK_FALSE(is_regular(map_geometric(lift)).regular);
}

TEST_CASE("property: algebraic and geometric paths agree for n = 1") {
  for (const auto& d : random_dims(15, 42, {1}, {3, 4, 5, 6}, 11)) {
    const Lift lift = random_regular_lift<Complex>(d.n, d.m, d.N, d.seed);
    const Chain algebraic = map_moduli(normalize_lift(lift).chain).chain;
    const Chain geometric = normalize_lift(map_geometric(lift)).chain;
    double worst = 0.0;
    for (int k = 0; k < d.N; ++k)
      for (int i = 0; i < d.m; ++i) worst = std::max(worst, rel_err(algebraic.a[k][i], geometric.a[k][i]));
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("property: monodromy class is conserved by both paths") {
  for (const auto& d : random_dims(15, 43)) {
    const Lift lift = random_regular_lift<Complex>(d.n, d.m, d.N, d.seed);
    const Chain chain = normalize_lift(lift).chain;
    CHECK(monodromy_class_deviation(chain, map_moduli(chain).chain) < 1e-7);
    CHECK(monodromy_class_deviation(chain, extract_invariants(map_geometric(lift))) < 1e-7);
  }
}

TEST_CASE("property: map_geometric commutes with SL(mn)") {
  for (const auto& d : random_dims(8, 44)) {
    const Lift lift = random_regular_lift<Complex>(d.n, d.m, d.N, d.seed);
    const int D = d.n * d.m;
    CMat g = random_chain<Complex>(D, 3, 1, d.seed + 7).a[0][0] + 3.0 * CMat::Identity(D, D);
    const Lift a = act(g, map_geometric(lift));
    const Lift b = map_geometric(act(g, lift));
    for (int k = 0; k < d.N; ++k) {
      // Same subspace: b's columns lie in the span of a's.
      const CMat both = (CMat(D, 2 * d.n) << a.X[k], b.X[k]).finished();
      Eigen::JacobiSVD<CMat> svd(both);
      const auto& s = svd.singularValues();
      CHECK(s(d.n) / s(0) < 1e-9);
    }
  }
}

TEST_CASE("serial and parallel maps agree bitwise") {
  const Lift lift = random_regular_lift<Complex>(2, 5, 13, 8);
  const Lift gs = map_geometric(lift, default_tolerances(), Exec::serial);
  const Lift gp = map_geometric(lift, default_tolerances(), Exec::parallel);
  for (int k = 0; k < 13; ++k) CHECK(gs.X[k] == gp.X[k]);
  const Chain chain = normalize_lift(lift).chain;
  const Chain as = map_algebraic_unnormalized(chain, default_tolerances(), Exec::serial);
  const Chain ap = map_algebraic_unnormalized(chain, default_tolerances(), Exec::parallel);
  for (int k = 0; k < 13; ++k)
    for (int i = 0; i < 5; ++i) CHECK(as.a[k][i] == ap.a[k][i]);
}

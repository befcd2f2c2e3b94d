#include <doctest.h>

#include "grasspenta/error.hpp"
#include "grasspenta/lax.hpp"
#include "grasspenta/normalize.hpp"
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

Chain normalized(int n, int m, int N, std::uint64_t seed) {
  return normalize_lift(random_regular_lift<Complex>(n, m, N, seed)).chain;
}

}  // namespace

TEST_CASE("scaling exponents") {
  const ScalingSpec even(4);
  CHECK(even.exponent(0) == Rational(0));
  CHECK(even.exponent(1) == Rational(1));
  CHECK(even.exponent(3) == Rational(1));
  const ScalingSpec odd(5);
  CHECK(odd.exponent(0) == Rational(0));
  CHECK(odd.exponent(1) == Rational(-1));
  CHECK(odd.exponent(2) == Rational(1, 2));
  CHECK(odd.exponent(3) == Rational(-1, 2));
  CHECK(odd.exponent(4) == Rational(1));
  for (int i = 0; i < 5; ++i) CHECK(Rational(odd.nu_exponent(i), odd.s) == odd.exponent(i));
  CHECK(odd.min_nu_exponent() == -2);
  CHECK(odd.max_nu_exponent() == 2);
}

TEST_CASE("apply_scaling") {
  const Chain c = random_chain<Complex>(2, 4, 5, 1);
  const Chain same = apply_scaling(c, 1.0);
  const Chain twice = apply_scaling(c, 2.0);
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 4; ++i) {
      CHECK(same.a[k][i] == c.a[k][i]);
      CHECK(twice.a[k][i] == (i % 2 == 1 ? CMat(2.0 * c.a[k][i]) : c.a[k][i]));
    }
  CHECK(kind_of([&] { apply_scaling(c, 0.0); }) == ErrorKind::ZeroMu);
}

TEST_CASE("property: scaling composes for positive real mu") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int m : {3, 4, 5, 6, 7}) {
    const Chain c = random_chain<Complex>(2, m, m + 1, rng());
    const double a = u(rng), b = u(rng);
    const Chain lhs = apply_scaling(apply_scaling(c, a), b);
    const Chain rhs = apply_scaling(c, a * b);
    for (int k = 0; k < c.N; ++k)
      for (int i = 0; i < m; ++i) CHECK(rel_err(lhs.a[k][i], rhs.a[k][i]) < 1e-13);
  }
}

TEST_CASE("Q(mu) pattern") {
  const Chain even = scalar_chain(4, {{1, 2, 3, 4}});
  CHECK(build_Q_mu(even, 0, 5.0).col(3) == cmat({{1}, {10}, {3}, {20}}));
  CHECK(build_Q_mu(even, 0, 1.0) == build_Q(even, 0));

  const Chain odd = scalar_chain(5, {{1, 1, 1, 1, 1}});
  const CMat Q = build_Q_mu(odd, 0, 4.0);
  CHECK(std::abs(Q(0, 4) - 1.0) < 1e-15);
  CHECK(std::abs(Q(1, 4) - 0.25) < 1e-15);
  CHECK(std::abs(Q(2, 4) - 2.0) < 1e-15);
  CHECK(std::abs(Q(3, 4) - 0.5) < 1e-15);
  CHECK(std::abs(Q(4, 4) - 4.0) < 1e-15);
  CHECK(kind_of([&] { build_Q_mu(odd, 0, 0.0); }) == ErrorKind::ZeroMu);
}

TEST_CASE("N(mu) at mu = 1 is the solve matrix") {
  for (int m : {3, 4}) {
    const Chain c = random_chain<Complex>(2, m, m + 2, 3);
    for (int k = 0; k < c.N; ++k) CHECK(build_N_mu(c, k, 1.0) == build_N(c, k));
  }
}

TEST_CASE("N(mu) solves the same system as the scaled chain") {
  const Chain c = random_chain<Complex>(1, 4, 5, 4);
  const Complex mu(0.6, 0.8);
  const CMat lhs = build_N_mu(c, 0, mu);
  CHECK(rel_err(lhs * mu, build_N(apply_scaling(c, mu), 0)) < 1e-14);
}

TEST_CASE("decompose_columns base step") {
  const Chain c = random_chain<Complex>(2, 4, 5, 5);
  const auto dec = decompose_columns(c, 0);
  CHECK(dec.G[0] == build_rbar(c, 0));
  const CMat expected = build_pbar(c, 0) * c.a[1][3] + dec.Gamma * build_rbar(c, 1);
  CHECK(rel_err(dec.G[1], expected) < 1e-15);
  CHECK(dec.alpha[1][0] == c.a[1][3]);
}

TEST_CASE("decompose_columns on a chain with vanishing odd blocks") {
  Chain c = random_chain<Complex>(1, 4, 5, 6);
  for (int k = 0; k < 5; ++k) c.a[k][1] = c.a[k][3] = CMat::Zero(1, 1);
  const auto dec = decompose_columns(c, 2);
  for (const CMat& F : dec.F) CHECK(F.isZero(0.0));
  for (const CMat& G : dec.G) CHECK(G.isZero(0.0));
}

TEST_CASE("decompose_columns reconstruction") {
  const Chain c = random_chain<Complex>(2, 4, 5, 7);
  for (const auto& dec : decompose_all(c)) {
    CHECK(decomposition_residual(dec) < 1e-10);
    CHECK(decomposition_zero_blocks(dec, 2, 4) == 0.0);
  }
}

TEST_CASE("property: exact decomposition on rational chains") {
  for (const auto& d : random_dims(20, 62, {1, 2}, {3, 4, 5, 6})) {
    const RationalChain c = random_chain<Rational>(d.n, d.m, d.N, d.seed);
    for (long k = 0; k < d.N; ++k) {
      const auto dec = decompose_columns(c, k);
      CHECK(decomposition_residual(dec) == 0.0);
      CHECK(decomposition_zero_blocks(dec, d.n, d.m) == 0.0);
      CHECK(dec.G.size() == static_cast<std::size_t>(d.m + 1));
    }
  }
}

TEST_CASE("degree law of the unnormalized map") {
  CHECK(degree_check_unnormalized(random_chain<Complex>(1, 4, 5, 8), 2.0) < 1e-8);
  CHECK(degree_check_unnormalized(random_chain<Complex>(1, 3, 5, 8), 4.0) < 1e-8);
  CHECK(degree_check_unnormalized(random_chain<Complex>(2, 5, 7, 8), Complex(0.3, 0.9)) < 1e-8);
  CHECK(degree_check_unnormalized(random_chain<Complex>(2, 4, 5, 8), 1.0) == 0.0);
}

TEST_CASE("lambda degree law") {
  const LambdaDegree even = lambda_degree_check(normalized(2, 4, 7, 9), 2.0);
  CHECK(std::abs(even.expected - 0.25) < 1e-15);
  CHECK(even.deviation < 1e-7);
  const LambdaDegree odd = lambda_degree_check(normalized(2, 3, 7, 9), 2.0);
  CHECK(odd.expected == Complex(1.0));
  CHECK(odd.deviation < 1e-7);
  const LambdaDegree one = lambda_degree_check(normalized(1, 4, 5, 9), 1.0);
  for (Complex r : one.ratios) CHECK(r == Complex(1.0));
}

TEST_CASE("scaling commutes with the map") {
  const Chain c = normalized(1, 4, 5, 10);
  CHECK(scaling_commutation_check(c, 1.0) == 0.0);
  CHECK(scaling_commutation_check(c, 2.0) < 1e-6);
  CHECK(scaling_commutation_check(normalized(2, 5, 7, 10), 1.5) < 1e-6);
  CHECK(scaling_anchor_deviation(c, 1.7) < 1e-12);
}

TEST_CASE("charpoly of the cyclic monodromy") {
  const Chain cyc = scalar_chain(3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  const auto p = charpoly(monodromy(cyc));
  REQUIRE(p.size() == 4);
  CHECK(std::abs(p[0] - 1.0) < 1e-14);
  CHECK(std::abs(p[1]) < 1e-14);
  CHECK(std::abs(p[2]) < 1e-14);
  CHECK(std::abs(p[3] + 1.0) < 1e-14);
  for (const auto& s : spectral_samples(cyc, {Complex(0.5), Complex(2.0), std::polar(1.0, 0.7)})) {
    CHECK(relative_deviation(s, p) < 1e-14);
  }
}

TEST_CASE("charpoly matches determinants") {
  const CMat P = random_chain<Complex>(6, 3, 1, 11).a[0][0];
  const auto p = charpoly(P);
  CHECK(p.size() == 7);
  for (Complex eta : {Complex(0.3, 0.1), Complex(-1.2, 0.4)}) {
    Complex value = 0.0, power = 1.0;
    for (Complex c : p) {
      value += c * power;
      power *= eta;
    }
    const Complex det = (P - eta * CMat::Identity(6, 6)).determinant();
    CHECK(std::abs(value - det) < 1e-10 * std::abs(det));
  }
}

TEST_CASE("spectral samples are conserved by the map") {
  std::vector<Complex> mus;
  for (int t = 0; t < 10; ++t) mus.push_back(std::polar(1.0, 0.4 + 0.6 * t));
  for (const auto& d : random_dims(8, 63)) {
    const Chain c = normalized(d.n, d.m, d.N, d.seed);
    const auto before = spectral_samples(c, mus);
    const auto after = spectral_samples(map_moduli(c).chain, mus);
    for (std::size_t t = 0; t < mus.size(); ++t) {
      CHECK(before[t].size() == static_cast<std::size_t>(d.n * d.m + 1));
      CHECK(relative_deviation(before[t], after[t]) < 1e-6);
    }
  }
}

TEST_CASE("spectral curve interpolation") {
  const Chain c = normalized(1, 5, 7, 13);
  const SpectralCurve curve = spectral_curve(c);
  CHECK(curve.heldout_residual < 1e-8);
  CHECK(curve.nu_offset == -2 * 5 * 7);
  for (std::size_t t = 0; t < curve.nus.size(); t += 17)
    CHECK(relative_deviation(curve.evaluate(curve.nus[t]), curve.samples[t]) < 1e-10);
  const Complex mu(0.8, 0.3);
  CHECK(relative_deviation(curve.evaluate(nu_of_mu(mu, 5)), spectral_samples(c, {mu})[0]) < 1e-8);
}

TEST_CASE("spectral curve is constant when the odd blocks vanish") {
  Chain c = random_chain<Complex>(1, 4, 5, 14);
  for (int k = 0; k < 5; ++k) c.a[k][1] = c.a[k][3] = CMat::Zero(1, 1);
  const SpectralCurve curve = spectral_curve(c);
  for (std::size_t p = 0; p < curve.coeffs.size(); ++p) {
    if (curve.nu_offset + static_cast<int>(p) == 0) continue;
    for (Complex z : curve.coeffs[p]) CHECK(std::abs(z) < 1e-12);
  }
}

TEST_CASE("spectral curve is conserved by the map") {
  const Chain c = normalized(2, 4, 5, 15);
  const SpectralCurve a = spectral_curve(c);
  const SpectralCurve b = spectral_curve(map_moduli(c).chain);
  double scale = 0.0, diff = 0.0;
  for (std::size_t p = 0; p < a.coeffs.size(); ++p)
    for (std::size_t j = 0; j < a.coeffs[p].size(); ++j) {
      scale = std::max(scale, std::abs(a.coeffs[p][j]));
      diff = std::max(diff, std::abs(a.coeffs[p][j] - b.coeffs[p][j]));
    }
  CHECK(diff < 1e-6 * scale);
}

TEST_CASE("spectral curve refuses oversized windows") {
  const Chain c = random_chain<Complex>(2, 4, 513, 16);
  CHECK(kind_of([&] { spectral_curve(c); }) == ErrorKind::InterpolationIllConditioned);
}

TEST_CASE("serial and parallel spectral samples agree bitwise") {
  const Chain c = normalized(2, 5, 9, 17);
  std::vector<Complex> mus;
  for (int t = 0; t < 16; ++t) mus.push_back(std::polar(1.0 + 0.1 * t, 0.3 * t));
  CHECK(spectral_samples(c, mus, Exec::serial) == spectral_samples(c, mus, Exec::parallel));
}

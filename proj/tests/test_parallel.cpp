#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "grasspenta/exec.hpp"
#include "grasspenta/lax.hpp"
#include "grasspenta/normalize.hpp"
#include "grasspenta/pentamap.hpp"
#include "grasspenta/verify.hpp"
#include "support.hpp"

using namespace grasspenta;
using namespace grasspenta::testing;

TEST_CASE("for_each_index visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  for_each_index(Exec::parallel, 1000, [&](long i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("for_each_index rethrows the lowest failing index") {
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    try {
      for_each_index(exec, 200, [](long i) {
        if (i % 37 == 5) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "5");
    }
  }
}

TEST_CASE("property: kernels agree bitwise between serial and parallel paths") {
  for (const auto& d : random_dims(6, 81, {1, 2, 3}, {3, 4, 5, 6}, 13)) {
    const Lift lift = random_regular_lift<Complex>(d.n, d.m, d.N, d.seed);
    const Chain s = extract_invariants(lift, 1e-9, Exec::serial);
    const Chain p = extract_invariants(lift, 1e-9, Exec::parallel);
    for (int k = 0; k < d.N; ++k)
      for (int i = 0; i < d.m; ++i) CHECK(s.a[k][i] == p.a[k][i]);

    CHECK(frame_determinants(lift, Exec::serial) == frame_determinants(lift, Exec::parallel));

    const Chain normal = normalize_lift(lift).chain;
    const ModuliImage ms = map_moduli(normal, default_tolerances(), Exec::serial);
    const ModuliImage mp = map_moduli(normal, default_tolerances(), Exec::parallel);
    for (int k = 0; k < d.N; ++k) {
      CHECK(ms.gauge.lambda[k] == mp.gauge.lambda[k]);
      for (int i = 0; i < d.m; ++i) CHECK(ms.chain.a[k][i] == mp.chain.a[k][i]);
    }

    const auto ds = decompose_all(normal, Exec::serial);
    const auto dp = decompose_all(normal, Exec::parallel);
    for (int k = 0; k < d.N; ++k)
      for (std::size_t j = 0; j < ds[k].G.size(); ++j) CHECK(ds[k].G[j] == dp[k].G[j]);
  }
}

TEST_CASE("spectral curve agrees bitwise between paths") {
  const Chain c = normalize_lift(random_regular_lift<Complex>(1, 4, 7, 3)).chain;
  const SpectralCurve s = spectral_curve(c, Exec::serial);
  const SpectralCurve p = spectral_curve(c, Exec::parallel);
  CHECK(s.coeffs == p.coeffs);
  CHECK(s.heldout_residual == p.heldout_residual);
}

TEST_CASE("acceptance criteria agree between paths") {
  for (int id : {2, 4, 9}) {
    const CriterionResult s = run_criterion(id, 7, Exec::serial);
    const CriterionResult p = run_criterion(id, 7, Exec::parallel);
    CHECK(s.passed == p.passed);
    CHECK(s.worst == p.worst);
  }
}

#include <doctest.h>

#include <algorithm>

#include "grasspenta/error.hpp"
#include "grasspenta/io.hpp"
#include "grasspenta/normalize.hpp"
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

}  // namespace

TEST_CASE("dump prints full precision and inline scalar arrays") {
  Json j;
  j["x"] = 0.1;
  j["v"] = Json::array({1.5, 2});
  const std::string text = dump(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("[1.5, 2]") != std::string::npos);
}

TEST_CASE("scalar encodings") {
  CHECK(encode(Complex(1.5, -2.0)) == Json::array({1.5, -2.0}));
  CHECK(encode(Rational(-3, 4)) == Json("-3/4"));
  CHECK(encode(Rational(2)) == Json("2/1"));
}

TEST_CASE("complex lift round trip is exact") {
  const Lift lift = random_regular_lift<Complex>(2, 3, 5, 42);
  const Json doc = lift_to_json(lift);
  CHECK(field_of(doc) == Field::complex);
  const Lift back = lift_from_json<Complex>(Json::parse(dump(doc)));
  CHECK(back.n == 2);
  CHECK(back.m == 3);
  CHECK(back.N == 5);
  for (int k = 0; k < 5; ++k) CHECK(back.X[k] == lift.X[k]);
  CHECK(back.M == lift.M);
}

TEST_CASE("rational lift and chain round trips are exact") {
  const RationalLift lift = random_regular_lift<Rational>(1, 4, 5, 3);
  const Json doc = lift_to_json(lift);
  CHECK(field_of(doc) == Field::rational);
  const RationalLift back = lift_from_json<Rational>(Json::parse(dump(doc)));
  for (int k = 0; k < 5; ++k) CHECK(back.X[k] == lift.X[k]);
  CHECK(back.M == lift.M);

  const RationalChain chain = extract_invariants(lift);
  const RationalChain cback = chain_from_json<Rational>(Json::parse(dump(chain_to_json(chain))));
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 4; ++i) CHECK(cback.a[k][i] == chain.a[k][i]);
}

TEST_CASE("malformed documents are rejected") {
  CHECK(kind_of([] { lift_from_json<Complex>(Json::parse(R"({"field":"complex"})")); }) == ErrorKind::FormatError);
  Json doc = lift_to_json(random_regular_lift<Complex>(1, 3, 4, 1));
  Json short_doc = doc;
  short_doc["X"].erase(0);
  CHECK(kind_of([&] { lift_from_json<Complex>(short_doc); }) == ErrorKind::FormatError);
  Json bad_dims = short_doc;
  bad_dims["N"] = 3;
  CHECK(kind_of([&] { lift_from_json<Complex>(bad_dims); }) == ErrorKind::InvalidDims);
  Json bad_scalar = doc;
  bad_scalar["M"][0][0] = "x";
  CHECK(kind_of([&] { lift_from_json<Complex>(bad_scalar); }) == ErrorKind::FormatError);
}

TEST_CASE("serialization is byte identical across runs") {
  const std::string a = dump(lift_to_json(random_regular_lift<Complex>(2, 5, 7, 99)));
  const std::string b = dump(lift_to_json(random_regular_lift<Complex>(2, 5, 7, 99)));
  CHECK(a == b);
}

TEST_CASE("default spectral parameters") {
  const auto mus = default_mus();
  REQUIRE(mus.size() == 10);
  CHECK(std::abs(mus[0] - std::polar(1.0, 0.3)) < 1e-15);
  for (Complex mu : mus) CHECK(std::abs(std::abs(mu) - 1.0) < 1e-15);
}

TEST_CASE("iterate_map bookkeeping and CSV") {
  const Chain chain = normalize_lift(random_regular_lift<Complex>(1, 3, 5, 42)).chain;
  const MapRun run = iterate_map(chain, 3, default_mus());
  CHECK(run.chains.size() == 4);
  CHECK(run.gauges.size() == 3);
  CHECK(run.samples.size() == 4);
  const std::string csv = drift_csv(run);
  CHECK(csv.rfind("iter,mu0_c0_re,mu0_c0_im,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv_column_drift(csv) < 1e-6);
}

TEST_CASE("csv_column_drift on a synthetic table") {
  const std::string csv =
      "iter,mu0_c0_re,mu0_c0_im,mu0_c1_re,mu0_c1_im\n"
      "0,4,0,1,0\n"
      "1,4,0,2,0\n";
  CHECK(csv_column_drift(csv) == doctest::Approx(0.25));
}

TEST_CASE("parallel and serial runs write identical files") {
  const Chain chain = normalize_lift(random_regular_lift<Complex>(2, 4, 7, 5)).chain;
  const MapRun s = iterate_map(chain, 2, default_mus(), default_tolerances(), Exec::serial);
  const MapRun p = iterate_map(chain, 2, default_mus(), default_tolerances(), Exec::parallel);
  CHECK(drift_csv(s) == drift_csv(p));
  CHECK(dump(chain_to_json(s.chains.back())) == dump(chain_to_json(p.chains.back())));
  CHECK(dump(gauge_to_json(s.gauges.back())) == dump(gauge_to_json(p.gauges.back())));
}

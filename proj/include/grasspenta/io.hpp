#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "grasspenta/lax.hpp"
#include "grasspenta/normalize.hpp"
#include "grasspenta/polygon.hpp"

namespace grasspenta {

using Json = nlohmann::ordered_json;

// Serializes with every floating value printed as %.17g, so identical inputs
// give byte-identical files.
std::string dump(const Json& j, int indent = 2);

Json encode(const Complex& z);
Json encode(const Rational& q);
template <class S>
Json encode_matrix(const Mat<S>& a);

template <class S>
Json lift_to_json(const BasicLift<S>& lift);
template <class S>
Json chain_to_json(const BasicChain<S>& chain);
Json gauge_to_json(const GaugeData& gauge);
Json spectral_to_json(const std::vector<Complex>& mus,
                      const std::vector<std::vector<Complex>>& eta_polys, const SpectralCurve* curve);

// Field named in a lift or chain document.
Field field_of(const Json& doc);

template <class S>
BasicLift<S> lift_from_json(const Json& doc);
template <class S>
BasicChain<S> chain_from_json(const Json& doc);

// Ten points on the unit circle, exp(i(0.3 + 2 pi t / 10)).
std::vector<Complex> default_mus();

// Repeated application of map_moduli with spectral samples after each step.
struct MapRun {
  std::vector<Chain> chains;  // chains[0] is the input
  std::vector<GaugeData> gauges;  // gauges[i] produced chains[i + 1]
  std::vector<std::vector<std::vector<Complex>>> samples;  // [iteration][mu][eta power]
};

MapRun iterate_map(const Chain& chain, int iters, const std::vector<Complex>& mus,
                   const Tolerances& tol = default_tolerances(), Exec exec = Exec::parallel);

// One row per iteration; columns mu<t>_c<j>_re / _im.
std::string drift_csv(const MapRun& run);

// Largest change of any CSV column from its first row, relative to the largest
// first-row modulus among the columns of the same mu sample.
double csv_column_drift(const std::string& csv);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace grasspenta

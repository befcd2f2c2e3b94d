#include "grasspenta/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "grasspenta/error.hpp"

namespace grasspenta {

namespace {

void dump_string(std::ostringstream& out, const std::string& s) {
  out << Json(s).dump();
}

void dump_value(std::ostringstream& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf;
      break;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (j.empty() || flat || indent == 0) {
        out << '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out << (indent > 0 ? ", " : ",");
          dump_value(out, e, indent, depth + 1);
          first = false;
        }
        out << ']';
        break;
      }
      out << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << pad;
        dump_value(out, j[i], indent, depth + 1);
        out << (i + 1 < j.size() ? "," : "") << nl;
      }
      out << close << ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << '{' << nl;
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out << pad;
        dump_string(out, it.key());
        out << (indent > 0 ? ": " : ":");
        dump_value(out, it.value(), indent, depth + 1);
        out << (i + 1 < j.size() ? "," : "") << nl;
      }
      out << close << '}';
      break;
    }
    default:
      out << j.dump();
  }
}

Rational decode_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::FormatError, "bad rational entry " + v.dump());
}

Complex decode_complex(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_string()) return to_complex(decode_rational(v));
  fail(ErrorKind::FormatError, "bad complex entry " + v.dump());
}

template <class S>
S decode(const Json& v) {
  if constexpr (is_exact_v<S>)
    return decode_rational(v);
  else
    return decode_complex(v);
}

template <class S>
Mat<S> decode_matrix(const Json& v, long rows, long cols) {
  if (!v.is_array() || static_cast<long>(v.size()) != rows)
    fail(ErrorKind::FormatError, "expected " + std::to_string(rows) + " rows");
  Mat<S> out(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!v[i].is_array() || static_cast<long>(v[i].size()) != cols)
      fail(ErrorKind::FormatError, "expected " + std::to_string(cols) + " columns");
    for (long j = 0; j < cols; ++j) out(i, j) = decode<S>(v[i][j]);
  }
  return out;
}

int get_int(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    fail(ErrorKind::FormatError, std::string("missing integer field '") + key + "'");
  return doc[key].get<int>();
}

template <class S>
Json header(int n, int m, int N) {
  Json j;
  j["n"] = n;
  j["m"] = m;
  j["N"] = N;
  j["field"] = std::string(to_string(field_of_v<S>));
  return j;
}

Json encode_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(encode(z));
  return out;
}

Json encode_matrices(const std::vector<CMat>& v) {
  Json out = Json::array();
  for (const auto& a : v) out.push_back(encode_matrix(a));
  return out;
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream out;
  dump_value(out, j, indent, 0);
  return out.str();
}

Json encode(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json encode(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

template <class S>
Json encode_matrix(const Mat<S>& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(encode(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Json lift_to_json(const BasicLift<S>& lift) {
  Json j = header<S>(lift.n, lift.m, lift.N);
  Json xs = Json::array();
  for (const auto& x : lift.X) xs.push_back(encode_matrix(x));
  j["X"] = std::move(xs);
  j["M"] = encode_matrix(lift.M);
  return j;
}

template <class S>
Json chain_to_json(const BasicChain<S>& chain) {
  Json j = header<S>(chain.n, chain.m, chain.N);
  Json a = Json::array();
  for (const auto& row : chain.a) {
    Json blocks = Json::array();
    for (const auto& b : row) blocks.push_back(encode_matrix(b));
    a.push_back(std::move(blocks));
  }
  j["a"] = std::move(a);
  return j;
}

Json gauge_to_json(const GaugeData& gauge) {
  Json j;
  j["delta"] = encode_list(gauge.delta);
  j["d"] = encode_matrices(gauge.d);
  j["q"] = encode_matrices(gauge.q);
  j["lambda"] = encode_matrices(gauge.lambda);
  return j;
}

Json spectral_to_json(const std::vector<Complex>& mus,
                      const std::vector<std::vector<Complex>>& eta_polys, const SpectralCurve* curve) {
  Json j;
  j["mus"] = encode_list(mus);
  Json polys = Json::array();
  for (const auto& p : eta_polys) polys.push_back(encode_list(p));
  j["eta_polys"] = std::move(polys);
  if (curve) {
    Json c;
    c["nu_offset"] = curve->nu_offset;
    Json coeffs = Json::array();
    for (const auto& row : curve->coeffs) coeffs.push_back(encode_list(row));
    c["coeffs"] = std::move(coeffs);
    c["heldout_residual"] = curve->heldout_residual;
    j["curve"] = std::move(c);
  }
  return j;
}

Field field_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("field") || !doc["field"].is_string())
    fail(ErrorKind::FormatError, "missing 'field'");
  return field_from_string(doc["field"].get<std::string>());
}

template <class S>
BasicLift<S> lift_from_json(const Json& doc) {
  BasicLift<S> lift;
  lift.n = get_int(doc, "n");
  lift.m = get_int(doc, "m");
  lift.N = get_int(doc, "N");
  validate_dims(lift.n, lift.m, lift.N);
  const long d = static_cast<long>(lift.n) * lift.m;
  if (!doc.contains("X") || !doc["X"].is_array() || static_cast<int>(doc["X"].size()) != lift.N)
    fail(ErrorKind::FormatError, "'X' must hold N matrices");
  for (const auto& x : doc["X"]) lift.X.push_back(decode_matrix<S>(x, d, lift.n));
  if (!doc.contains("M")) fail(ErrorKind::FormatError, "missing 'M'");
  lift.M = decode_matrix<S>(doc["M"], d, d);
  return lift;
}

template <class S>
BasicChain<S> chain_from_json(const Json& doc) {
  BasicChain<S> chain;
  chain.n = get_int(doc, "n");
  chain.m = get_int(doc, "m");
  chain.N = get_int(doc, "N");
  validate_dims(chain.n, chain.m, chain.N);
  if (!doc.contains("a") || !doc["a"].is_array() || static_cast<int>(doc["a"].size()) != chain.N)
    fail(ErrorKind::FormatError, "'a' must hold N rows of blocks");
  for (const auto& row : doc["a"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != chain.m)
      fail(ErrorKind::FormatError, "each row of 'a' must hold m blocks");
    std::vector<Mat<S>> blocks;
    for (const auto& b : row) blocks.push_back(decode_matrix<S>(b, chain.n, chain.n));
    chain.a.push_back(std::move(blocks));
  }
  return chain;
}

std::vector<Complex> default_mus() {
  std::vector<Complex> mus;
  for (int t = 0; t < 10; ++t) mus.push_back(std::polar(1.0, 0.3 + 2.0 * std::numbers::pi * t / 10.0));
  return mus;
}

MapRun iterate_map(const Chain& chain, int iters, const std::vector<Complex>& mus,
                   const Tolerances& tol, Exec exec) {
  MapRun run;
  run.chains.push_back(chain);
  run.samples.push_back(spectral_samples(chain, mus, exec));
  for (int i = 0; i < iters; ++i) {
    ModuliImage image = map_moduli(run.chains.back(), tol, exec);
    run.samples.push_back(spectral_samples(image.chain, mus, exec));
    run.chains.push_back(std::move(image.chain));
    run.gauges.push_back(std::move(image.gauge));
  }
  return run;
}

std::string drift_csv(const MapRun& run) {
  std::ostringstream out;
  out << "iter";
  const auto& first = run.samples.front();
  for (std::size_t t = 0; t < first.size(); ++t)
    for (std::size_t j = 0; j < first[t].size(); ++j)
      out << ",mu" << t << "_c" << j << "_re,mu" << t << "_c" << j << "_im";
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    out << i;
    for (const auto& poly : run.samples[i])
      for (const auto& c : poly) {
        std::snprintf(buf, sizeof buf, ",%.17g", c.real());
        out << buf;
        std::snprintf(buf, sizeof buf, ",%.17g", c.imag());
        out << buf;
      }
    out << '\n';
  }
  return out.str();
}

double csv_column_drift(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::FormatError, "empty CSV");
  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) names.push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != names.size()) fail(ErrorKind::FormatError, "ragged CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::FormatError, "CSV has no data rows");
  auto group = [&](std::size_t c) { return names[c].substr(0, names[c].find('_')); };
  double worst = 0.0;
  for (std::size_t c = 1; c < names.size(); ++c) {
    double scale = 0.0;
    for (std::size_t o = 1; o < names.size(); ++o)
      if (group(o) == group(c)) scale = std::max(scale, std::abs(rows[0][o]));
    for (const auto& row : rows) {
      const double diff = std::abs(row[c] - rows[0][c]);
      worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
    }
  }
  return worst;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FormatError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::FormatError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::FormatError, "cannot write " + path);
  out << text << '\n';
}

template Json encode_matrix<Complex>(const CMat&);
template Json encode_matrix<Rational>(const QMat&);
template Json lift_to_json<Complex>(const Lift&);
template Json lift_to_json<Rational>(const RationalLift&);
template Json chain_to_json<Complex>(const Chain&);
template Json chain_to_json<Rational>(const RationalChain&);
template Lift lift_from_json<Complex>(const Json&);
template RationalLift lift_from_json<Rational>(const Json&);
template Chain chain_from_json<Complex>(const Json&);
template RationalChain chain_from_json<Rational>(const Json&);

}  // namespace grasspenta

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include <CLI11.hpp>

#include "grasspenta/error.hpp"
#include "grasspenta/io.hpp"
#include "grasspenta/lax.hpp"
#include "grasspenta/normalize.hpp"
#include "grasspenta/oracle.hpp"
#include "grasspenta/pentamap.hpp"
#include "grasspenta/verify.hpp"

namespace grasspenta::cli {

namespace {

struct RunConfig {
  int n = 1;
  int m = 3;
  int N = 5;
  std::uint64_t seed = 42;
  std::string field = "complex";
  double tol = 0.0;
  std::string mus;
  int iters = 1;
  std::string input;
  std::string output;
  std::vector<int> criteria;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances tol = default_tolerances();
  if (cfg.tol > 0.0) tol.eps = cfg.tol;
  return tol;
}

void check_dims(const RunConfig& cfg) {
  if (cfg.n < 1) throw UsageError("-n must be >= 1");
  if (cfg.m < 3) throw UsageError("-m must be >= 3");
  if (cfg.N < cfg.m) throw UsageError("-N must be >= m");
  if (std::gcd(cfg.N, cfg.m) != 1)
    throw UsageError("gcd(N, m) = " + std::to_string(std::gcd(cfg.N, cfg.m)) + "; N and m must be coprime");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty())
    out << text << '\n';
  else
    write_text_file(cfg.output, text);
}

// Input chain: from -i (chain file, or lift file normalized first) or from a
// generated lift when -i is absent.
Chain load_chain(const RunConfig& cfg, bool normalize_lifts = true) {
  if (cfg.input.empty()) {
    check_dims(cfg);
    const Lift lift = cfg.field == "rational"
                          ? to_complex(random_regular_lift<Rational>(cfg.n, cfg.m, cfg.N, cfg.seed))
                          : random_regular_lift<Complex>(cfg.n, cfg.m, cfg.N, cfg.seed);
    return normalize_lifts ? normalize_lift(lift, tolerances(cfg)).chain
                           : extract_invariants(lift, tolerances(cfg).eps);
  }
  const Json doc = read_json_file(cfg.input);
  const Field field = field_of(doc);
  if (doc.contains("a"))
    return field == Field::rational ? to_complex(chain_from_json<Rational>(doc)) : chain_from_json<Complex>(doc);
  const Lift lift = field == Field::rational ? to_complex(lift_from_json<Rational>(doc)) : lift_from_json<Complex>(doc);
  return normalize_lifts ? normalize_lift(lift, tolerances(cfg)).chain
                         : extract_invariants(lift, tolerances(cfg).eps);
}

Lift load_lift(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("-i <lift.json> is required");
  const Json doc = read_json_file(cfg.input);
  if (field_of(doc) == Field::rational) return to_complex(lift_from_json<Rational>(doc));
  return lift_from_json<Complex>(doc);
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  check_dims(cfg);
  const Field field = field_from_string(cfg.field);
  const Json doc = field == Field::rational
                       ? lift_to_json(random_regular_lift<Rational>(cfg.n, cfg.m, cfg.N, cfg.seed))
                       : lift_to_json(random_regular_lift<Complex>(cfg.n, cfg.m, cfg.N, cfg.seed));
  emit(cfg, dump(doc), out);
  return 0;
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw UsageError("-i <lift.json> is required");
  const Json doc = read_json_file(cfg.input);
  Json result;
  if (field_of(doc) == Field::rational)
    result = chain_to_json(extract_invariants(lift_from_json<Rational>(doc), tolerances(cfg).eps));
  else
    result = chain_to_json(extract_invariants(lift_from_json<Complex>(doc), tolerances(cfg).eps));
  emit(cfg, dump(result), out);
  return 0;
}

int cmd_normalize(const RunConfig& cfg, std::ostream& out) {
  const NormalizedLift nl = normalize_lift(load_lift(cfg), tolerances(cfg));
  const NormalizationResiduals res = normalization_residuals(nl.lift, nl.chain);
  Json doc;
  doc["lift"] = lift_to_json(nl.lift);
  doc["chain"] = chain_to_json(nl.chain);
  doc["gauge"] = gauge_to_json(nl.gauge);
  doc["residuals"] = {{"frame_det", res.frame_det},
                      {"a0_offdiag", res.a0_offdiag},
                      {"det_a0_one", res.det_a0_one},
                      {"det_a0_law", res.det_a0_law},
                      {"syzygy", res.syzygy}};
  emit(cfg, dump(doc), out);
  return 0;
}

int cmd_map(const RunConfig& cfg, std::ostream& out) {
  if (cfg.iters < 1) throw UsageError("--iters must be >= 1");
  const std::vector<Complex> mus = cfg.mus.empty() ? default_mus() : parse_mu_list(cfg.mus);
  const MapRun run = iterate_map(load_chain(cfg), cfg.iters, mus, tolerances(cfg));
  if (cfg.output.empty()) {
    out << dump(chain_to_json(run.chains.back())) << '\n';
    return 0;
  }
  std::filesystem::create_directories(cfg.output);
  const std::filesystem::path dir(cfg.output);
  for (int i = 1; i <= cfg.iters; ++i) {
    write_text_file((dir / ("chain_" + std::to_string(i) + ".json")).string(), dump(chain_to_json(run.chains[i])));
    write_text_file((dir / ("gauge_" + std::to_string(i) + ".json")).string(), dump(gauge_to_json(run.gauges[i - 1])));
  }
  std::string csv = drift_csv(run);
  csv.pop_back();
  write_text_file((dir / "spectral_drift.csv").string(), csv);
  return 0;
}

int cmd_spectral(const RunConfig& cfg, std::ostream& out) {
  const Chain chain = load_chain(cfg);
  const std::vector<Complex> mus = cfg.mus.empty() ? default_mus() : parse_mu_list(cfg.mus);
  const SpectralCurve curve = spectral_curve(chain);
  emit(cfg, dump(spectral_to_json(mus, spectral_samples(chain, mus), &curve)), out);
  return 0;
}

int cmd_scaling_check(const RunConfig& cfg, std::ostream& out) {
  const Chain chain = load_chain(cfg);
  const std::vector<Complex> mus = cfg.mus.empty() ? std::vector<Complex>{0.5, 2.0} : parse_mu_list(cfg.mus);
  const Tolerances tol = tolerances(cfg);
  Json reports = Json::array();
  for (const auto& mu : mus) {
    Json r;
    r["mu"] = encode(mu);
    r["degree_deviation"] = degree_check_unnormalized(chain, mu, tol);
    const LambdaDegree ld = lambda_degree_check(chain, mu, tol);
    r["lambda_expected"] = encode(ld.expected);
    r["lambda_deviation"] = ld.deviation;
    r["commutation_deviation"] = scaling_commutation_check(chain, mu, tol);
    r["anchor_deviation"] = scaling_anchor_deviation(chain, mu);
    reports.push_back(std::move(r));
  }
  emit(cfg, dump(reports), out);
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  bool all = true;
  for (const auto& r : run_acceptance(cfg.seed, cfg.criteria)) {
    out << format_result(r) << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
  RationalChain chain;
  if (cfg.input.empty()) {
    check_dims(cfg);
    chain = extract_invariants(random_regular_lift<Rational>(cfg.n, cfg.m, cfg.N, cfg.seed), tolerances(cfg).eps);
  } else {
    const Json doc = read_json_file(cfg.input);
    if (field_of(doc) != Field::rational) throw UsageError("oracle-compare needs a rational input");
    chain = doc.contains("a") ? chain_from_json<Rational>(doc)
                              : extract_invariants(lift_from_json<Rational>(doc), tolerances(cfg).eps);
  }
  const RationalChain oracle = cramer_map_unnormalized(chain);
  const RationalChain exact = map_algebraic_unnormalized(chain, tolerances(cfg));
  const Chain floating = map_algebraic_unnormalized(to_complex(chain), tolerances(cfg));
  double worst = 0.0;
  bool exact_match = true;
  for (int k = 0; k < chain.N; ++k)
    for (int i = 0; i < chain.m; ++i) {
      worst = std::max(worst, relative_deviation(floating.a[k][i], to_complex(oracle.a[k][i])));
      exact_match = exact_match && exact.a[k][i] == oracle.a[k][i];
    }
  Json doc;
  doc["max_relative_deviation"] = worst;
  doc["exact_backend_matches_cramer"] = exact_match;
  doc["cramer"] = chain_to_json(oracle);
  emit(cfg, dump(doc), out);
  return 0;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty complex number");
  auto number = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + text + "'");
    }
    if (used != part.size()) throw UsageError("bad number '" + text + "'");
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
  if (split == std::string::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

std::vector<Complex> parse_mu_list(const std::string& csv) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', start), csv.size());
    out.push_back(parse_complex(csv.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Pentagram map on twisted polygons in Gr(n, mn)", "grasspenta"};
  app.require_subcommand(1);

  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("-n", cfg.n, "block size n");
    sub->add_option("-m", cfg.m, "number of blocks m (>= 3)");
    sub->add_option("-N", cfg.N, "period N, coprime to m");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--field", cfg.field, "complex or rational")->check(CLI::IsMember({"complex", "rational"}));
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "regularity / residual tolerance");
    sub->add_option("-i", cfg.input, "input lift or chain JSON");
    sub->add_option("-o", cfg.output, "output file (directory for map)");
  };

  auto* gen = app.add_subcommand("gen", "generate a random regular lift");
  add_dims(gen);
  add_common(gen);
  auto* inv = app.add_subcommand("invariants", "extract the chain of a lift");
  add_common(inv);
  auto* norm = app.add_subcommand("normalize", "normalized lift, chain and gauge");
  add_common(norm);
  auto* map = app.add_subcommand("map", "iterate the map on moduli coordinates");
  add_dims(map);
  add_common(map);
  map->add_option("--iters", cfg.iters, "number of iterations");
  map->add_option("--mus", cfg.mus, "comma-separated spectral parameters");
  auto* spec = app.add_subcommand("spectral", "spectral samples and curve");
  add_dims(spec);
  add_common(spec);
  spec->add_option("--mus", cfg.mus, "comma-separated spectral parameters");
  auto* scal = app.add_subcommand("scaling-check", "degree, lambda and commutation checks");
  add_dims(scal);
  add_common(scal);
  scal->add_option("--mus", cfg.mus, "comma-separated scaling parameters");
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--seed", cfg.seed, "random seed");
  ver->add_option("--criterion", cfg.criteria, "criterion ids (default: all)")->check(CLI::Range(1, kCriterionCount));
  auto* orc = app.add_subcommand("oracle-compare", "floating solve against exact Cramer");
  add_dims(orc);
  add_common(orc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    bool dims_given = false;
    for (const char* flag : {"-n", "-m", "-N"})
      if (const CLI::Option* opt = sub->get_option_no_throw(flag)) dims_given = dims_given || opt->count() > 0;
    if (dims_given || name == "gen") check_dims(cfg);
    if (name == "gen") return cmd_gen(cfg, out);
    if (name == "invariants") return cmd_invariants(cfg, out);
    if (name == "normalize") return cmd_normalize(cfg, out);
    if (name == "map") return cmd_map(cfg, out);
    if (name == "spectral") return cmd_spectral(cfg, out);
    if (name == "scaling-check") return cmd_scaling_check(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    return cmd_oracle_compare(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    Json doc;
    doc["error"] = std::string(to_string(e.kind()));
    doc["message"] = e.what();
    err << dump(doc, 0) << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    Json doc;
    doc["error"] = "FormatError";
    doc["message"] = e.what();
    err << dump(doc, 0) << '\n';
    return 1;
  }
}

}  // namespace grasspenta::cli

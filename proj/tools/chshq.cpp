// chshq: bounds, constructions and exact oracles for CHSH_q(p) games.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chshq/chshq.hpp"

namespace {

using namespace chshq;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUnavailable = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_q(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed q '" + text + "'");
  }
  if (used != text.size()) throw ParseError("malformed q '" + text + "'");
  return v;
}

/// "13", "2,3,5" or "2..10".
std::vector<std::uint64_t> parse_q_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_q(part));
      continue;
    }
    const auto lo = parse_q(part.substr(0, dots));
    const auto hi = parse_q(part.substr(dots + 2));
    for (auto q = lo; q <= hi; ++q) out.push_back(q);
  }
  return out;
}

std::vector<Rational> parse_p_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

Rational parse_p(const std::string& text) {
  const auto p = parse_rational(text);
  if (p <= 0 || p > 1) throw ParseError("p must lie in (0, 1], got " + text);
  return p;
}

std::string opt_text(const std::optional<Rational>& v, const std::string& missing) {
  return v ? to_string(*v) : missing;
}

void print_row(const std::string& key, const std::string& value) {
  std::cout << key << std::string(key.size() < 14 ? 14 - key.size() : 1, ' ') << value << "\n";
}

int cmd_bounds(const std::string& q_text, const std::string& p_text, bool with_construction,
               bool with_oracle, const std::string& mode, unsigned jobs) {
  const auto q = parse_q(q_text);
  const auto p = parse_p(p_text);
  ReportOptions options;
  options.construction = with_construction;
  options.oracle = with_oracle;
  if (!mode.empty()) options.mode = parse_search_mode(mode);
  options.jobs = jobs;
  const auto r = full_report(q, p, options);

  print_row("q", std::to_string(r.q));
  print_row("p", to_string(r.p));
  print_row("n", std::to_string(r.n));
  print_row("chakraborty", r.chakraborty.decimal(12) + (is_vacuous(r.chakraborty) ? " (vacuous)" : ""));
  print_row("thm1", opt_text(r.thm1, "OUT_OF_REGIME"));
  print_row("corollary", opt_text(r.corollary, "OUT_OF_REGIME"));
  print_row("construction",
            with_construction ? opt_text(r.lower_construction, "FAILED: " + r.construction_note) : "NA");
  print_row("oracle", with_oracle ? opt_text(r.oracle_value, "NA: " + r.oracle_note) : "NA");
  print_row("tight", r.tight ? (*r.tight ? "true" : "false") : "unknown");
  return (r.thm1 && r.corollary) ? kExitOk : kExitUnavailable;
}

std::string default_config_path(const std::string& out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + ".config.json";
  }
  return out + ".config.json";
}

int cmd_construct(const std::string& q_text, const std::string& p_text, const std::string& out,
                  std::string config_out) {
  const auto& field = make_field(parse_q(q_text));
  const auto params = make_params(field, parse_p(p_text));
  const bool in_regime = regime_check(params);
  ConstructionResult result = [&] {
    try {
      return construct(params);
    } catch (const CandidatesExhausted& e) {
      std::cout << "regime_check  " << (in_regime ? "true" : "false") << "\n";
      throw;
    }
  }();

  auto j = io::strategy_to_json(result.strategy);
  j["p"] = to_string(params.p);
  std::vector<Code> support;
  for (const auto& x : result.support) support.push_back(x.code());
  j["support"] = support;
  j["value"] = to_string(result.achieved_value);
  io::write_file(out, io::dump(j));
  if (config_out.empty()) config_out = default_config_path(out);
  io::write_file(config_out, io::dump(io::configuration_to_json(result.cfg)));

  print_row("achieved_value", to_string(result.achieved_value));
  print_row("regime_check", in_regime ? "true" : "false");
  print_row("incidences", std::to_string(count_incidences(result.cfg)));
  print_row("strategy", out);
  print_row("configuration", config_out);
  if (!in_regime) std::cerr << "warning: outside the guaranteed construction regime; construction succeeded anyway\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& strategy_path, const std::string& p_text,
                 const std::string& distribution_path) {
  const auto strategy = io::strategy_from_json(io::parse_text(io::read_file(strategy_path)));
  if (!distribution_path.empty()) {
    const auto dist = io::distribution_from_json(io::parse_text(io::read_file(distribution_path)));
    if (&dist.spec() != &strategy.spec()) throw ParseError("strategy and distribution fields differ");
    print_row("win_probability", to_string(win_probability(strategy, dist)));
    return kExitOk;
  }
  if (p_text.empty()) throw ParseError("evaluate needs --p or --distribution");
  const auto params = make_params(strategy.spec(), parse_p(p_text));
  print_row("max_game_value", to_string(max_game_value(strategy, params)));
  return kExitOk;
}

int cmd_oracle(const std::string& q_text, const std::string& p_text, const std::string& mode,
               unsigned jobs, bool fix_bob_zero, const std::string& out) {
  const auto& field = make_field(parse_q(q_text));
  const auto params = make_params(field, parse_p(p_text));
  OracleOptions options;
  options.mode = mode.empty() ? default_search_mode(field.q()) : parse_search_mode(mode);
  options.jobs = jobs;
  options.fix_bob_zero = fix_bob_zero;

  const auto start = std::chrono::steady_clock::now();
  const auto result = brute_force_value(params, options);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  print_row("value", to_string(result.value));
  print_row("mode", to_string(result.reduction_used));
  print_row("examined", std::to_string(result.strategies_examined));
  print_row("witness", io::strategy_to_json(result.witness_strategy).dump());
  std::vector<std::string> r;
  for (const auto& v : result.witness_distribution.r()) r.push_back(to_string(v));
  print_row("distribution", io::Json(r).dump());
  if (thm1_regime(params.q(), params.p)) {
    print_row("thm1", to_string(thm1_bound(params.q(), params.p)));
  }
  std::cout << "elapsed_s     " << elapsed.count() << "\n";
  if (!out.empty()) {
    auto j = io::strategy_to_json(result.witness_strategy);
    j["p"] = to_string(params.p);
    j["value"] = to_string(result.value);
    io::write_file(out, io::dump(j));
  }
  return kExitOk;
}

int cmd_sweep(const std::string& q_text, const std::string& p_text, const std::string& compute,
              const std::string& mode, unsigned jobs, const std::string& csv_path) {
  ReportOptions options;
  if (compute == "construction") {
    options.construction = true;
  } else if (compute == "oracle") {
    options.construction = true;
    options.oracle = true;
  } else if (compute != "bounds") {
    throw ParseError("--compute must be bounds, construction or oracle");
  }
  if (!mode.empty()) options.mode = parse_search_mode(mode);
  options.jobs = jobs;

  const auto qs = parse_q_list(q_text);
  const auto ps = parse_p_list(p_text);
  for (const auto& p : ps) {
    if (p <= 0 || p > 1) throw ParseError("p must lie in (0, 1], got " + to_string(p));
  }
  std::ostringstream csv;
  csv << io::kCsvHeader << "\n";
  for (auto q : qs) {
    if (q < 2) throw ParseError("q must be at least 2");
    if (!is_prime_power(q)) {
      std::cerr << "skipping q = " << q << ": not a prime power\n";
      continue;
    }
    for (const auto& p : ps) csv << io::csv_row(full_report(q, p, options)) << "\n";
  }
  if (csv_path.empty() || csv_path == "-") {
    std::cout << csv.str();
  } else {
    io::write_file(csv_path, csv.str());
  }
  return kExitOk;
}

int cmd_incidence_verify(const std::string& path) {
  const auto cfg = io::configuration_from_json(io::parse_text(io::read_file(path)));
  print_row("points", std::to_string(cfg.n()));
  print_row("lines", std::to_string(cfg.k()));
  print_row("incidences", std::to_string(count_incidences(cfg)));
  const auto problem = game_configuration_problem(cfg);
  print_row("game_config", problem ? "no (" + *problem + ")" : "yes");
  try {
    const int cls = classify(cfg);
    print_row("class", std::to_string(cls));
    const auto n = static_cast<std::int64_t>(cfg.n());
    print_row("optimum", std::to_string(
                             incidence_optimum(n, static_cast<std::int64_t>(cfg.k()), cfg.spec().q())));
  } catch (const OutOfRegime& e) {
    print_row("class", std::string("OUT_OF_REGIME (") + e.what() + ")");
    return kExitUnavailable;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, constructions and exact oracles for CHSH_q(p) games"};
  app.require_subcommand(1);

  std::string q_text, p_text, out, config_out, strategy_path, distribution_path, mode, csv_path,
      config_path;
  std::string compute = "bounds";
  unsigned jobs = 1;
  bool with_construction = false, with_oracle = false, fix_bob_zero = false;

  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound for one (q, p)");
  bounds->add_option("--q", q_text, "Field order (prime power)")->required();
  bounds->add_option("--p", p_text, "Cap on Alice's input probability, num/den")->required();
  bounds->add_flag("--construction", with_construction, "Also run the greedy construction");
  bounds->add_flag("--oracle", with_oracle, "Also run the exhaustive oracle");
  bounds->add_option("--mode", mode, "Oracle mode: full | best-response");
  bounds->add_option("--jobs", jobs, "Oracle worker threads")->check(CLI::PositiveNumber);

  auto* construct_cmd = app.add_subcommand("construct", "Build the greedy optimal strategy");
  construct_cmd->add_option("--q", q_text, "Field order (prime power)")->required();
  construct_cmd->add_option("--p", p_text, "Cap on Alice's input probability, num/den")->required();
  construct_cmd->add_option("--out", out, "Strategy file to write")->required();
  construct_cmd->add_option("--config-out", config_out,
                            "Configuration file (default: <out>.config.json)");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a strategy file");
  evaluate->add_option("--strategy", strategy_path, "Strategy file")->required();
  evaluate->add_option("--p", p_text, "Cap p: prints the value in the maximizing game");
  evaluate->add_option("--distribution", distribution_path, "Distribution file: prints win probability");

  auto* oracle = app.add_subcommand("oracle", "Exact classical value by exhaustive search");
  oracle->add_option("--q", q_text, "Field order (prime power)")->required();
  oracle->add_option("--p", p_text, "Cap on Alice's input probability, num/den")->required();
  oracle->add_option("--mode", mode, "full | best-response (default: full for q <= 3)");
  oracle->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  oracle->add_flag("--fix-bob-zero", fix_bob_zero, "Only search Bob functions with b(0) = 0");
  oracle->add_option("--out", out, "Write the witness strategy here");

  auto* sweep = app.add_subcommand("sweep", "Tabulate bounds over a grid as CSV");
  sweep->add_option("--q", q_text, "List or range, e.g. 2,3,5 or 2..101")->required();
  sweep->add_option("--p", p_text, "Comma-separated rationals, e.g. 1/2,1/3")->required();
  sweep->add_option("--compute", compute, "bounds | construction | oracle");
  sweep->add_option("--mode", mode, "Oracle mode");
  sweep->add_option("--jobs", jobs, "Oracle worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--csv", csv_path, "Output path (default: stdout)");

  auto* incidence = app.add_subcommand("incidence", "Point-line configuration tools");
  incidence->require_subcommand(1);
  auto* verify_cmd = incidence->add_subcommand("verify", "Classify a configuration file");
  verify_cmd->add_option("config", config_path, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*bounds) return cmd_bounds(q_text, p_text, with_construction, with_oracle, mode, jobs);
    if (*construct_cmd) return cmd_construct(q_text, p_text, out, config_out);
    if (*evaluate) return cmd_evaluate(strategy_path, p_text, distribution_path);
    if (*oracle) return cmd_oracle(q_text, p_text, mode, jobs, fix_bob_zero, out);
    if (*sweep) return cmd_sweep(q_text, p_text, compute, mode, jobs, csv_path);
    if (*verify_cmd) return cmd_incidence_verify(config_path);
  } catch (const TooLarge& e) {
    std::cerr << "error: TooLarge: " << e.what() << "\n";
    return kExitUnavailable;
  } catch (const CandidatesExhausted& e) {
    std::cerr << "error: CandidatesExhausted: " << e.what() << "\n";
    return kExitUnavailable;
  } catch (const OutOfRegime& e) {
    std::cerr << "error: OutOfRegime: " << e.what() << "\n";
    return kExitUnavailable;
  } catch (const InfeasibleParams& e) {
    std::cerr << "error: InfeasibleParams: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InfeasibleDistribution& e) {
    std::cerr << "error: InfeasibleParams: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NotAPrimePower& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chshq/bounds.hpp"
#include "chshq/construction.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/game.hpp"
#include "chshq/oracle.hpp"

namespace chshq {

struct ReportOptions {
  bool construction = false;
  bool oracle = false;
  /// Unset: default_search_mode(q).
  std::optional<SearchMode> mode;
  unsigned jobs = 1;
  int precision_bits = chshq::precision_bits();
};

/// Every estimate of the classical value for one (q, p). Absent optionals
/// mean out of regime, not requested, or not computable.
struct BoundReport {
  std::int64_t q;
  Rational p;
  std::int64_t n;
  RealEnclosure chakraborty;
  std::optional<Rational> thm1;
  std::optional<Rational> corollary;
  std::optional<Rational> lower_construction;
  std::optional<Rational> oracle_value;
  std::optional<bool> tight;
  bool construction_regime = false;
  std::string construction_note;
  std::string oracle_note;
};

inline BoundReport full_report(std::uint64_t q, const Rational& p, const ReportOptions& options = {}) {
  const auto& field = make_field(q);
  const auto params = make_params(field, p);
  const auto qi = static_cast<std::int64_t>(q);

  BoundReport report;
  report.q = qi;
  report.p = p;
  report.n = params.n;
  report.chakraborty = chakraborty_bound(qi, p, options.precision_bits);
  if (thm1_regime(qi, p)) report.thm1 = thm1_bound(qi, p);
  if (corollary_regime(qi, p)) report.corollary = corollary_bound(qi, p);
  report.construction_regime = regime_check(params);

  if (options.construction) {
    try {
      report.lower_construction = construct(params).achieved_value;
    } catch (const InfeasibleParams& e) {
      report.construction_note = e.what();
    } catch (const CandidatesExhausted& e) {
      report.construction_note = e.what();
    }
  }
  if (options.oracle) {
    try {
      OracleOptions oo;
      oo.mode = options.mode.value_or(default_search_mode(field.q()));
      oo.jobs = options.jobs;
      report.oracle_value = brute_force_value(params, oo).value;
    } catch (const TooLarge& e) {
      report.oracle_note = e.what();
    } catch (const InfeasibleDistribution& e) {
      report.oracle_note = e.what();
    }
  }

  const auto& lower = report.lower_construction;
  const auto& exact = report.oracle_value;
  if (report.thm1 && lower && *lower > *report.thm1) throw Error("construction exceeds the upper bound");
  if (exact && lower && *lower > *exact) throw Error("construction exceeds the exact value");
  if (exact && report.thm1 && *exact > *report.thm1) throw Error("exact value exceeds the upper bound");

  if (report.thm1) {
    if (exact) {
      report.tight = *exact == *report.thm1;
    } else if (lower && *lower == *report.thm1) {
      report.tight = true;
    }
  }
  return report;
}

}  // namespace chshq

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "chshq/errors.hpp"
#include "chshq/game.hpp"
#include "chshq/incidence.hpp"

namespace chshq {

/// q > (n-1) * ((n-2)^2 / 2 + 1), compared in integers as
/// 2q > (n-1) * ((n-2)^2 + 2).
inline bool regime_check(const GameParams& params) {
  const Integer n = params.n;
  return Integer(2) * params.q() > (n - 1) * ((n - 2) * (n - 2) + 2);
}

/// Upper bound on candidate deletions over the first n-1 rounds:
/// [(n-1) + (n-1)(n-2)^2 / 2] * q. (n-1)(n-2)^2 is always even.
inline std::int64_t removal_budget(std::int64_t n, std::int64_t q) {
  if (n < 1) throw Error("removal_budget needs n >= 1");
  return ((n - 1) + (n - 1) * (n - 2) * (n - 2) / 2) * q;
}

struct ConstructionResult {
  Configuration cfg;
  Strategy strategy;
  /// x-coordinates in the order the points were chosen; support[0] is p1's.
  std::vector<FieldElement> support;
  Rational achieved_value;
  std::int64_t rounds_used;
  std::int64_t deletions;
};

/// Greedy candidate elimination. Each round takes the smallest remaining
/// candidate (x major, y minor) and then deletes from the candidate pool
///   1. its column,
///   2. every line joining two chosen points,
///   3. every line through a chosen point with a slope already used by a
///      pair of chosen points.
/// Pairwise lines become Bob's lines; slopes left over go through the
/// first chosen point, which therefore carries the most incidences.
inline ConstructionResult construct(const GameParams& params) {
  const auto& f = params.field();
  const Code q = f.q();
  if (params.n > static_cast<std::int64_t>(q)) {
    throw InfeasibleParams("n = " + std::to_string(params.n) + " exceeds q = " + std::to_string(q));
  }
  const auto n = static_cast<std::size_t>(params.n);

  std::vector<bool> candidate(std::size_t{q} * q, true);
  auto index = [q](detail::PointCode pt) { return std::size_t{pt.x} * q + pt.y; };
  std::vector<detail::PointCode> chosen;
  std::int64_t deletions = 0;
  std::int64_t rounds = 0;

  auto erase = [&](detail::PointCode pt) {
    if (candidate[index(pt)]) {
      candidate[index(pt)] = false;
      ++deletions;
    }
  };
  auto erase_line = [&](detail::LineCode ln) {
    for (Code x = 0; x < q; ++x) erase({x, f.add(f.mul(ln.slope, x), ln.offset)});
  };

  std::size_t cursor = 0;
  while (chosen.size() < n) {
    while (cursor < candidate.size() && !candidate[cursor]) ++cursor;
    if (cursor == candidate.size()) {
      throw CandidatesExhausted("candidate pool empty after choosing " +
                                std::to_string(chosen.size()) + " of " + std::to_string(n) +
                                " points");
    }
    const detail::PointCode pi{static_cast<Code>(cursor / q), static_cast<Code>(cursor % q)};
    candidate[cursor] = false;
    chosen.push_back(pi);
    ++rounds;
    if (chosen.size() == n) break;

    for (Code y = 0; y < q; ++y) erase({pi.x, y});
    std::set<Code> slopes;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (std::size_t j = i + 1; j < chosen.size(); ++j) {
        const auto ln = detail::joining_line(f, chosen[i], chosen[j]);
        erase_line(ln);
        slopes.insert(ln.slope);
      }
    }
    for (Code s : slopes)
      for (const auto& pt : chosen) erase_line(detail::line_with_slope(f, pt, s));
  }

  const auto budget = removal_budget(params.n, q);
  if (deletions > budget) {
    throw Error("construction deleted " + std::to_string(deletions) + " candidates, budget " +
                std::to_string(budget));
  }

  std::vector<detail::LineCode> lines;
  std::vector<bool> slope_used(q, false);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const auto ln = detail::joining_line(f, chosen[i], chosen[j]);
      lines.push_back(ln);
      slope_used[ln.slope] = true;
    }
  }
  for (Code s = 0; s < q; ++s)
    if (!slope_used[s]) lines.push_back(detail::line_with_slope(f, chosen.front(), s));

  auto cfg = detail::to_configuration(f, chosen, lines);
  auto [strategy, sorted_support] = configuration_to_strategy(cfg, f.zero());
  std::vector<FieldElement> support;
  for (const auto& pt : chosen) support.push_back(f.element(pt.x));
  Rational value = max_game_value(strategy, params);
  return {std::move(cfg), std::move(strategy), std::move(support), std::move(value), rounds,
          deletions};
}

}  // namespace chshq

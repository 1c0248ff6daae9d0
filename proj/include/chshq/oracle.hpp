#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "chshq/errors.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/game.hpp"
#include "chshq/incidence.hpp"

namespace chshq {

enum class SearchMode { full, best_response };

inline std::string to_string(SearchMode mode) {
  return mode == SearchMode::full ? "full" : "best-response";
}

inline SearchMode parse_search_mode(const std::string& text) {
  if (text == "full") return SearchMode::full;
  if (text == "best-response") return SearchMode::best_response;
  throw ParseError("unknown search mode '" + text + "' (expected full or best-response)");
}

/// Default: full enumeration where it is cheap, the best-response
/// reduction above q = 3.
inline SearchMode default_search_mode(Code q) {
  return q <= 3 ? SearchMode::full : SearchMode::best_response;
}

struct OracleOptions {
  SearchMode mode = SearchMode::best_response;
  unsigned jobs = 1;
  /// Only enumerate Bob functions with b(0) = 0. Shifting a by +c and b by
  /// -c preserves every row score, so this loses nothing.
  bool fix_bob_zero = false;
};

struct OracleResult {
  Rational value;
  Strategy witness_strategy;
  InputDistribution witness_distribution;
  std::uint64_t strategies_examined;
  SearchMode reduction_used;
};

inline constexpr double kFullModeLimit = 1e8;          // q^(2q)
inline constexpr double kBestResponseLimit = 2e9;      // q^q * q^2

namespace detail {

inline double power(double base, double exponent) {
  double r = 1;
  for (int i = 0; i < static_cast<int>(exponent); ++i) r *= base;
  return r;
}

/// Add / multiply tables over codes for the search loops.
struct FieldTables {
  Code q;
  std::vector<Code> add, sub, mul;

  explicit FieldTables(const FieldSpec& f) : q(f.q()) {
    add.resize(std::size_t{q} * q);
    sub.resize(add.size());
    mul.resize(add.size());
    for (Code a = 0; a < q; ++a) {
      for (Code b = 0; b < q; ++b) {
        add[a * q + b] = f.add(a, b);
        sub[a * q + b] = f.sub(a, b);
        mul[a * q + b] = f.mul(a, b);
      }
    }
  }
};

/// Scaled game value q * den(p) * value, an integer, from row scores.
/// The n-1 largest scores get weight num(p), the next one den - num(n-1).
struct ValueScale {
  std::int64_t weight_full;
  std::int64_t weight_rest;
  std::size_t n;

  std::int64_t operator()(std::vector<int>& scores) const {
    std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(n), scores.end(),
                      std::greater<>());
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) total += weight_full * scores[i];
    return total + weight_rest * scores[n - 1];
  }
};

inline ValueScale make_scale(const GameParams& params) {
  const Integer num = numer(params.p), den = denom(params.p);
  if (den > Integer(1) << 30) throw TooLarge("denominator of p too large for the search");
  const auto pn = static_cast<std::int64_t>(num), pd = static_cast<std::int64_t>(den);
  return {pn, pd - pn * (params.n - 1), static_cast<std::size_t>(params.n)};
}

inline void decode(std::uint64_t index, Code q, std::vector<Code>& out) {
  for (Code i = 0; i < q; ++i) {
    out[i] = static_cast<Code>(index % q);
    index /= q;
  }
}

struct ChunkBest {
  std::int64_t objective = -1;
  std::uint64_t bob = 0;
  std::uint64_t alice = 0;
  std::uint64_t examined = 0;
};

inline ChunkBest search_full(const FieldTables& t, const ValueScale& scale, std::uint64_t begin,
                             std::uint64_t end, std::uint64_t stride, std::uint64_t alice_count) {
  const Code q = t.q;
  ChunkBest best;
  std::vector<Code> a(q), b(q);
  std::vector<int> scores(q);
  for (std::uint64_t u = begin; u < end; ++u) {
    const std::uint64_t bob = u * stride;
    decode(bob, q, b);
    for (std::uint64_t alice = 0; alice < alice_count; ++alice) {
      decode(alice, q, a);
      for (Code x = 0; x < q; ++x) {
        int count = 0;
        for (Code y = 0; y < q; ++y) count += t.add[a[x] * q + b[y]] == t.mul[x * q + y] ? 1 : 0;
        scores[x] = count;
      }
      const auto obj = scale(scores);
      ++best.examined;
      if (obj > best.objective) best = {obj, bob, alice, best.examined};
    }
  }
  return best;
}

// Given b, Alice's rows decouple: the best a(x) is the most frequent value
// of x*y - b(y) over y. So only Bob's q^q functions need enumerating, at
// q^2 table operations each (q = 7: ~8e5 functions, ~4e7 operations),
// instead of q^(2q) full strategies.
inline ChunkBest search_best_response(const FieldTables& t, const ValueScale& scale,
                                      std::uint64_t begin, std::uint64_t end,
                                      std::uint64_t stride) {
  const Code q = t.q;
  ChunkBest best;
  std::vector<Code> b(q);
  std::vector<int> scores(q), counts(q);
  for (std::uint64_t u = begin; u < end; ++u) {
    const std::uint64_t bob = u * stride;
    decode(bob, q, b);
    for (Code x = 0; x < q; ++x) {
      std::fill(counts.begin(), counts.end(), 0);
      for (Code y = 0; y < q; ++y) ++counts[t.sub[t.mul[x * q + y] * q + b[y]]];
      scores[x] = *std::max_element(counts.begin(), counts.end());
    }
    const auto obj = scale(scores);
    ++best.examined;
    if (obj > best.objective) best = {obj, bob, 0, best.examined};
  }
  return best;
}

inline std::vector<Code> best_response_alice(const FieldTables& t, const std::vector<Code>& b) {
  const Code q = t.q;
  std::vector<Code> a(q);
  std::vector<int> counts(q);
  for (Code x = 0; x < q; ++x) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Code y = 0; y < q; ++y) ++counts[t.sub[t.mul[x * q + y] * q + b[y]]];
    a[x] = static_cast<Code>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  }
  return a;
}

}  // namespace detail

/// Exact classical value by exhaustive search over deterministic
/// strategies, scoring each with its maximizing input distribution.
///
/// Work is split into `jobs` contiguous chunks of Bob-function indices.
/// The reduction keeps the largest value, ties going to the smallest Bob
/// index (then Alice index), so the witness is independent of `jobs`.
inline OracleResult brute_force_value(const GameParams& params, const OracleOptions& options = {}) {
  const auto& f = params.field();
  const Code q = f.q();
  if (params.n > static_cast<std::int64_t>(q)) {
    throw InfeasibleDistribution("n = " + std::to_string(params.n) + " exceeds q = " +
                                 std::to_string(q));
  }
  if (options.jobs < 1) throw Error("jobs must be at least 1");
  const double qd = q;
  if (options.mode == SearchMode::full && detail::power(qd, 2 * qd) > kFullModeLimit) {
    throw TooLarge("full enumeration for q = " + std::to_string(q) + " exceeds 1e8 strategies");
  }
  if (options.mode == SearchMode::best_response &&
      detail::power(qd, qd) * qd * qd > kBestResponseLimit) {
    throw TooLarge("best-response search for q = " + std::to_string(q) +
                   " exceeds 2e9 table operations");
  }

  const detail::FieldTables tables(f);
  const auto scale = detail::make_scale(params);
  std::uint64_t functions = 1;
  for (Code i = 0; i < q; ++i) functions *= q;
  const std::uint64_t stride = options.fix_bob_zero ? q : 1;
  const std::uint64_t bob_count = functions / stride;

  const unsigned jobs = static_cast<unsigned>(
      std::min<std::uint64_t>(options.jobs, std::max<std::uint64_t>(bob_count, 1)));
  std::vector<detail::ChunkBest> chunks(jobs);
  auto run = [&](unsigned j) {
    const std::uint64_t begin = bob_count * j / jobs;
    const std::uint64_t end = bob_count * (j + 1) / jobs;
    chunks[j] = options.mode == SearchMode::full
                    ? detail::search_full(tables, scale, begin, end, stride, functions)
                    : detail::search_best_response(tables, scale, begin, end, stride);
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(run, j);
    for (auto& w : workers) w.join();
  }

  detail::ChunkBest best;
  std::uint64_t examined = 0;
  for (const auto& c : chunks) {
    examined += c.examined;
    if (c.objective > best.objective) best = c;  // chunks are in index order
  }

  std::vector<Code> bob(q), alice(q);
  detail::decode(best.bob, q, bob);
  if (options.mode == SearchMode::full) {
    detail::decode(best.alice, q, alice);
  } else {
    alice = detail::best_response_alice(tables, bob);
  }
  Strategy witness(f, std::move(alice), std::move(bob));
  auto dist = best_distribution(witness, params);
  Rational value = win_probability(witness, dist);
  if (value * q * denom(params.p) != Rational(best.objective)) {
    throw Error("oracle witness does not reproduce the search objective");
  }
  return {std::move(value), std::move(witness), std::move(dist), examined, options.mode};
}

/// a' = a + c, b' = b - c leaves every row score and the game value as is.
inline bool shift_symmetry_check(const Strategy& s, const FieldElement& c, const GameParams& params) {
  const auto& f = s.spec();
  if (&c.spec() != &f) throw MixedFields();
  std::vector<Code> a(f.q()), b(f.q());
  for (Code i = 0; i < f.q(); ++i) {
    a[i] = f.add(s.alice()[i], c.code());
    b[i] = f.sub(s.bob()[i], c.code());
  }
  const Strategy shifted(f, std::move(a), std::move(b));
  return row_scores(shifted) == row_scores(s) &&
         max_game_value(shifted, params) == max_game_value(s, params);
}

struct IncidenceSearchResult {
  std::int64_t maximum;
  Configuration witness;
  std::uint64_t configurations_examined;
};

inline double binomial(double n, double k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 0; i < static_cast<int>(k); ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline constexpr double kIncidenceSearchLimit = 1e8;

/// Maximum incidences over every n-point set and k-line set of GF(q)^2
/// (non-vertical lines). Translations preserve incidence counts and map
/// non-vertical lines to non-vertical lines, so P is taken to contain
/// (0, 0); the line sets are enumerated in full.
inline IncidenceSearchResult brute_force_incidences(std::int64_t n, std::int64_t k, std::uint64_t q) {
  const auto& f = make_field(q);
  const auto cells = static_cast<std::int64_t>(std::uint64_t{f.q()} * f.q());
  if (n < 1 || n > cells || k < 0 || k > cells) throw Error("need 1 <= n <= q^2 and 0 <= k <= q^2");
  if (binomial(static_cast<double>(cells - 1), static_cast<double>(n - 1)) *
          binomial(static_cast<double>(cells), static_cast<double>(k)) >
      kIncidenceSearchLimit) {
    throw TooLarge("incidence search space exceeds 1e8 configurations");
  }

  std::vector<detail::PointCode> all_points;
  std::vector<detail::LineCode> all_lines;
  for (Code a = 0; a < f.q(); ++a) {
    for (Code b = 0; b < f.q(); ++b) {
      all_points.push_back({a, b});
      all_lines.push_back({a, b});
    }
  }

  std::int64_t best = -1;
  std::vector<std::size_t> best_points, best_lines;
  std::uint64_t examined = 0;

  std::vector<std::size_t> point_idx{0};
  std::vector<std::size_t> line_idx;
  std::vector<int> on_line(all_lines.size());

  // Enumerate k-subsets of lines, accumulating the per-line counts.
  auto search_lines = [&](auto&& self, std::size_t start, std::int64_t partial) -> void {
    if (static_cast<std::int64_t>(line_idx.size()) == k) {
      ++examined;
      if (partial > best) {
        best = partial;
        best_points = point_idx;
        best_lines = line_idx;
      }
      return;
    }
    const std::size_t remaining = static_cast<std::size_t>(k) - line_idx.size();
    for (std::size_t i = start; i + remaining <= all_lines.size(); ++i) {
      line_idx.push_back(i);
      self(self, i + 1, partial + on_line[i]);
      line_idx.pop_back();
    }
  };

  auto search_points = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<std::int64_t>(point_idx.size()) == n) {
      for (std::size_t l = 0; l < all_lines.size(); ++l) {
        int c = 0;
        for (std::size_t p : point_idx) c += detail::incident(f, all_points[p], all_lines[l]) ? 1 : 0;
        on_line[l] = c;
      }
      search_lines(search_lines, 0, 0);
      return;
    }
    const std::size_t remaining = static_cast<std::size_t>(n) - point_idx.size();
    for (std::size_t i = start; i + remaining <= all_points.size(); ++i) {
      point_idx.push_back(i);
      self(self, i + 1);
      point_idx.pop_back();
    }
  };
  search_points(search_points, 1);

  std::vector<detail::PointCode> pts;
  std::vector<detail::LineCode> lines;
  for (std::size_t p : best_points) pts.push_back(all_points[p]);
  for (std::size_t l : best_lines) lines.push_back(all_lines[l]);
  return {best, detail::to_configuration(f, pts, lines), examined};
}

}  // namespace chshq

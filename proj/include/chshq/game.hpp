#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "chshq/errors.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/rational.hpp"

namespace chshq {

/// Cap p on Alice's most likely input, plus n = ceil(1/p).
struct GameParams {
  const FieldSpec* spec;
  Rational p;
  std::int64_t n;

  const FieldSpec& field() const { return *spec; }
  Code q() const { return spec->q(); }
};

inline GameParams make_params(const FieldSpec& spec, const Rational& p) {
  if (p <= 0 || p > 1) throw Error("p must lie in (0, 1], got " + to_string(p));
  return {&spec, p, static_cast<std::int64_t>(ceil(Rational(1) / p))};
}

/// Deterministic strategy: Alice answers a(x), Bob answers b(y). Both are
/// stored as element codes indexed by the input's code.
class Strategy {
 public:
  Strategy(const FieldSpec& spec, std::vector<Code> alice, std::vector<Code> bob)
      : spec_(&spec), alice_(std::move(alice)), bob_(std::move(bob)) {
    if (alice_.size() != spec.q() || bob_.size() != spec.q()) {
      throw Error("strategy tables must have exactly q entries");
    }
    for (Code c : alice_)
      if (c >= spec.q()) throw Error("strategy entry out of field range");
    for (Code c : bob_)
      if (c >= spec.q()) throw Error("strategy entry out of field range");
  }

  static Strategy constant_zero(const FieldSpec& spec) {
    return {spec, std::vector<Code>(spec.q(), 0), std::vector<Code>(spec.q(), 0)};
  }

  const FieldSpec& spec() const { return *spec_; }
  std::span<const Code> alice() const { return alice_; }
  std::span<const Code> bob() const { return bob_; }

  FieldElement a(const FieldElement& x) const {
    if (&x.spec() != spec_) throw MixedFields();
    return {*spec_, alice_[x.code()]};
  }
  FieldElement b(const FieldElement& y) const {
    if (&y.spec() != spec_) throw MixedFields();
    return {*spec_, bob_[y.code()]};
  }

  friend bool operator==(const Strategy& lhs, const Strategy& rhs) {
    return lhs.spec_ == rhs.spec_ && lhs.alice_ == rhs.alice_ && lhs.bob_ == rhs.bob_;
  }

 private:
  const FieldSpec* spec_;
  std::vector<Code> alice_;
  std::vector<Code> bob_;
};

/// Alice's input distribution r(x), every entry at most p_cap.
class InputDistribution {
 public:
  InputDistribution(const FieldSpec& spec, std::vector<Rational> r, Rational p_cap)
      : spec_(&spec), r_(std::move(r)), p_cap_(std::move(p_cap)) {
    if (r_.size() != spec.q()) throw Error("distribution must have exactly q entries");
    if (p_cap_ <= 0 || p_cap_ > 1) throw Error("p_cap must lie in (0, 1]");
    Rational total = 0;
    for (const auto& v : r_) {
      if (v < 0) throw Error("negative probability");
      if (v > p_cap_) throw Error("probability " + to_string(v) + " exceeds cap " + to_string(p_cap_));
      total += v;
    }
    if (total != 1) throw Error("probabilities sum to " + to_string(total) + ", not 1");
  }

  static InputDistribution uniform(const FieldSpec& spec) {
    const Rational w(1, spec.q());
    return {spec, std::vector<Rational>(spec.q(), w), w};
  }

  const FieldSpec& spec() const { return *spec_; }
  std::span<const Rational> r() const { return r_; }
  const Rational& p_cap() const { return p_cap_; }

  friend bool operator==(const InputDistribution&, const InputDistribution&) = default;

 private:
  const FieldSpec* spec_;
  std::vector<Rational> r_;
  Rational p_cap_;
};

/// a(x) + b(y) == x*y.
inline bool verify(const Strategy& s, const FieldElement& x, const FieldElement& y) {
  if (&x.spec() != &s.spec() || &y.spec() != &s.spec()) throw MixedFields();
  const auto& f = s.spec();
  return f.add(s.alice()[x.code()], s.bob()[y.code()]) == f.mul(x.code(), y.code());
}

/// Number of winning y for every x.
inline std::vector<int> row_scores(const Strategy& s) {
  const auto& f = s.spec();
  const Code q = f.q();
  std::vector<int> scores(q, 0);
  for (Code x = 0; x < q; ++x) {
    int count = 0;
    for (Code y = 0; y < q; ++y) {
      if (f.add(s.alice()[x], s.bob()[y]) == f.mul(x, y)) ++count;
    }
    scores[x] = count;
  }
  return scores;
}

/// (1/q) * sum_x r(x) * |{y : win}|.
inline Rational win_probability(const Strategy& s, const InputDistribution& dist) {
  if (&s.spec() != &dist.spec()) throw MixedFields();
  const auto scores = row_scores(s);
  Rational total = 0;
  for (Code x = 0; x < s.spec().q(); ++x) total += dist.r()[x] * scores[x];
  return total / s.spec().q();
}

/// Inputs ordered by score descending, code ascending on ties.
inline std::vector<Code> rank_inputs(std::span<const int> scores) {
  std::vector<Code> order(scores.size());
  std::iota(order.begin(), order.end(), Code{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Code lhs, Code rhs) { return scores[lhs] > scores[rhs]; });
  return order;
}

/// The maximizing distribution for given row scores: p on the n-1
/// best-scoring inputs, the remainder 1 - p(n-1) on the next one.
inline InputDistribution distribution_for_scores(std::span<const int> scores,
                                                 const GameParams& params) {
  const auto q = static_cast<std::int64_t>(params.q());
  if (static_cast<std::int64_t>(scores.size()) != q) throw Error("expected q row scores");
  if (params.n > q) {
    throw InfeasibleDistribution("n = " + std::to_string(params.n) + " inputs needed but q = " +
                                 std::to_string(q));
  }
  const auto order = rank_inputs(scores);
  std::vector<Rational> r(q, Rational(0));
  for (std::int64_t i = 0; i + 1 < params.n; ++i) r[order[i]] = params.p;
  r[order[params.n - 1]] = 1 - params.p * (params.n - 1);
  return {params.field(), std::move(r), params.p};
}

inline InputDistribution best_distribution(const Strategy& s, const GameParams& params) {
  if (params.spec != &s.spec()) throw MixedFields();
  return distribution_for_scores(row_scores(s), params);
}

/// The strategy's value under its maximizing input distribution.
inline Rational max_game_value(const Strategy& s, const GameParams& params) {
  return win_probability(s, best_distribution(s, params));
}

}  // namespace chshq

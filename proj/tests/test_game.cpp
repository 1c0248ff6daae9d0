#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "chshq/game.hpp"

using namespace chshq;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

std::vector<Strategy> all_strategies(const FieldSpec& f) {
  const Code q = f.q();
  std::uint64_t count = 1;
  for (Code i = 0; i < q; ++i) count *= q;
  std::vector<std::vector<Code>> tables;
  for (std::uint64_t t = 0; t < count; ++t) {
    std::vector<Code> v(q);
    auto u = t;
    for (Code i = 0; i < q; ++i) {
      v[i] = static_cast<Code>(u % q);
      u /= q;
    }
    tables.push_back(v);
  }
  std::vector<Strategy> out;
  for (const auto& a : tables)
    for (const auto& b : tables) out.emplace_back(f, a, b);
  return out;
}

Strategy random_strategy(const FieldSpec& f, std::mt19937& rng) {
  std::uniform_int_distribution<Code> pick(0, f.q() - 1);
  std::vector<Code> a(f.q()), b(f.q());
  for (auto& v : a) v = pick(rng);
  for (auto& v : b) v = pick(rng);
  return {f, a, b};
}

// Every distribution whose entries are multiples of 1/den.
void for_each_grid_distribution(Code q, int den, const std::function<void(std::vector<Rational>)>& fn) {
  std::vector<int> parts(q, 0);
  std::function<void(Code, int)> rec = [&](Code i, int left) {
    if (i + 1 == q) {
      parts[i] = left;
      std::vector<Rational> r;
      for (int v : parts) r.push_back(R(v, den));
      fn(r);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, den);
}

}  // namespace

TEST(Verify, Examples) {
  const auto& f3 = make_field(3);
  const auto zero3 = Strategy::constant_zero(f3);
  EXPECT_TRUE(verify(zero3, f3.element(0), f3.element(2)));
  EXPECT_FALSE(verify(zero3, f3.element(1), f3.element(2)));

  const auto& f5 = make_field(5);
  const Strategy identity(f5, {0, 1, 2, 3, 4}, {0, 0, 0, 0, 0});
  EXPECT_FALSE(verify(identity, f5.element(2), f5.element(3)));
  EXPECT_TRUE(verify(identity, f5.element(1), f5.element(1)));

  EXPECT_THROW(verify(identity, f3.element(1), f5.element(1)), MixedFields);
}

TEST(Strategy, RejectsBadTables) {
  const auto& f3 = make_field(3);
  EXPECT_THROW(Strategy(f3, {0, 0}, {0, 0, 0}), Error);
  EXPECT_THROW(Strategy(f3, {0, 0, 3}, {0, 0, 0}), Error);
}

TEST(InputDistribution, Invariants) {
  const auto& f3 = make_field(3);
  EXPECT_THROW(InputDistribution(f3, {R(1, 2), R(1, 2), R(1, 2)}, R(1)), Error);
  EXPECT_THROW(InputDistribution(f3, {R(1), R(0), R(0)}, R(1, 2)), Error);
  EXPECT_THROW(InputDistribution(f3, {R(3, 2), R(-1, 2), R(0)}, R(1)), Error);
  EXPECT_NO_THROW(InputDistribution(f3, {R(1, 2), R(1, 2), R(0)}, R(1, 2)));
}

TEST(WinProbability, Examples) {
  const auto& f2 = make_field(2);
  EXPECT_EQ(win_probability(Strategy::constant_zero(f2), InputDistribution::uniform(f2)), R(3, 4));
  const auto& f3 = make_field(3);
  EXPECT_EQ(win_probability(Strategy::constant_zero(f3), InputDistribution::uniform(f3)), R(5, 9));

  // Perfect on x0: a(x0) = 0, b(y) = x0 y.
  for (std::uint64_t q : {3, 4, 5, 7, 8}) {
    const auto& f = make_field(q);
    for (Code x0 = 0; x0 < f.q(); ++x0) {
      std::vector<Code> a(f.q(), 1), b(f.q());
      a[x0] = 0;
      for (Code y = 0; y < f.q(); ++y) b[y] = f.mul(x0, y);
      std::vector<Rational> r(f.q(), R(0));
      r[x0] = 1;
      EXPECT_EQ(win_probability(Strategy(f, a, b), InputDistribution(f, r, R(1))), 1);
    }
  }
}

TEST(RowScores, Examples) {
  EXPECT_EQ(row_scores(Strategy::constant_zero(make_field(3))), (std::vector<int>{3, 1, 1}));
  EXPECT_EQ(row_scores(Strategy::constant_zero(make_field(2))), (std::vector<int>{2, 1}));
  const auto& f7 = make_field(7);
  std::vector<Code> a(7, 0), b(7);
  a[3] = 2;
  for (Code y = 0; y < 7; ++y) b[y] = f7.sub(f7.mul(3, y), 2);
  EXPECT_EQ(row_scores(Strategy(f7, a, b))[3], 7);
}

TEST(BestDistribution, FromScores) {
  const auto& f5 = make_field(5);
  const auto params = make_params(f5, R(2, 5));
  EXPECT_EQ(params.n, 3);
  const std::vector<int> scores{5, 2, 2, 1, 0};
  const auto d = distribution_for_scores(scores, params);
  EXPECT_EQ(std::vector<Rational>(d.r().begin(), d.r().end()),
            (std::vector<Rational>{R(2, 5), R(2, 5), R(1, 5), R(0), R(0)}));
}

TEST(BestDistribution, FromStrategy) {
  const auto& f5 = make_field(5);
  const Strategy s(f5, {0, 0, 0, 0, 1}, {0, 0, 0, 3, 3});
  ASSERT_EQ(row_scores(s), (std::vector<int>{3, 2, 2, 1, 0}));
  const auto d = best_distribution(s, make_params(f5, R(2, 5)));
  EXPECT_EQ(std::vector<Rational>(d.r().begin(), d.r().end()),
            (std::vector<Rational>{R(2, 5), R(2, 5), R(1, 5), R(0), R(0)}));
}

TEST(BestDistribution, DegenerateAndTies) {
  const auto& f3 = make_field(3);
  const auto d1 = best_distribution(Strategy::constant_zero(f3), make_params(f3, R(1)));
  EXPECT_EQ(std::vector<Rational>(d1.r().begin(), d1.r().end()),
            (std::vector<Rational>{R(1), R(0), R(0)}));

  const Strategy flat(f3, {0, 0, 1}, {0, 1, 0});
  ASSERT_EQ(row_scores(flat), (std::vector<int>{2, 2, 2}));
  const auto d2 = best_distribution(flat, make_params(f3, R(1, 3)));
  EXPECT_EQ(std::vector<Rational>(d2.r().begin(), d2.r().end()),
            (std::vector<Rational>{R(1, 3), R(1, 3), R(1, 3)}));

  // Ties go to the smallest code: scores [1, 2, 2] put p on x = 1 first.
  const auto& f3b = make_field(3);
  const auto d3 = distribution_for_scores(std::vector<int>{1, 2, 2}, make_params(f3b, R(2, 3)));
  EXPECT_EQ(std::vector<Rational>(d3.r().begin(), d3.r().end()),
            (std::vector<Rational>{R(0), R(2, 3), R(1, 3)}));
}

TEST(BestDistribution, Infeasible) {
  const auto& f3 = make_field(3);
  EXPECT_THROW(best_distribution(Strategy::constant_zero(f3), make_params(f3, R(1, 4))),
               InfeasibleDistribution);
}

TEST(MaxGameValue, Examples) {
  const auto& f2 = make_field(2);
  const auto& f3 = make_field(3);
  EXPECT_EQ(max_game_value(Strategy::constant_zero(f2), make_params(f2, R(1, 2))), R(3, 4));
  EXPECT_EQ(max_game_value(Strategy::constant_zero(f3), make_params(f3, R(1, 2))), R(2, 3));
  EXPECT_EQ(max_game_value(Strategy::constant_zero(f3), make_params(f3, R(1))), R(1));
}

TEST(GameParams, CeilingIsExact) {
  const auto& f7 = make_field(7);
  EXPECT_EQ(make_params(f7, R(1, 3)).n, 3);
  EXPECT_EQ(make_params(f7, R(2, 5)).n, 3);
  EXPECT_EQ(make_params(f7, R(1, 2)).n, 2);
  EXPECT_EQ(make_params(f7, R(3, 10)).n, 4);
  EXPECT_EQ(make_params(f7, R(1)).n, 1);
  EXPECT_THROW(make_params(f7, R(0)), Error);
  EXPECT_THROW(make_params(f7, R(3, 2)), Error);
}

// No distribution with max entry <= p beats the maximizing one. The grid
// covers multiples of 1/12; the vertex check covers every vertex of the
// capped simplex (all entries 0 or p except one), which together with
// linearity in r makes this exhaustive.
TEST(CappedDistributionDominance, ExhaustiveSmallFields) {
  for (std::uint64_t q : {2, 3}) {
    const auto& f = make_field(q);
    const auto strategies = all_strategies(f);
    for (const auto& p : {R(1), R(2, 3), R(1, 2), R(2, 5), R(1, 3)}) {
      const auto params = make_params(f, p);
      if (params.n > static_cast<std::int64_t>(q)) continue;
      std::vector<std::vector<Rational>> dists;
      for_each_grid_distribution(f.q(), 12, [&](std::vector<Rational> r) {
        if (*std::max_element(r.begin(), r.end()) <= p) dists.push_back(std::move(r));
      });
      for (std::uint64_t mask = 0; mask < (1u << q); ++mask) {
        for (Code free = 0; free < q; ++free) {
          std::vector<Rational> r(q, R(0));
          Rational used = 0;
          for (Code x = 0; x < q; ++x) {
            if (x != free && (mask >> x & 1)) {
              r[x] = p;
              used += p;
            }
          }
          r[free] = 1 - used;
          if (r[free] >= 0 && r[free] <= p) dists.push_back(r);
        }
      }
      ASSERT_FALSE(dists.empty());
      for (const auto& s : strategies) {
        const auto best = max_game_value(s, params);
        for (const auto& r : dists) {
          ASSERT_LE(win_probability(s, InputDistribution(f, r, p)), best);
        }
      }
    }
  }
}

TEST(CappedDistributionDominance, RandomizedLargerFields) {
  std::mt19937 rng(7);
  for (std::uint64_t q : {5, 7}) {
    const auto& f = make_field(q);
    for (int t = 0; t < 200; ++t) {
      const auto s = random_strategy(f, rng);
      const Rational p = R(std::uniform_int_distribution<int>(1, 4)(rng),
                           std::uniform_int_distribution<int>(4, 8)(rng));
      const auto params = make_params(f, p);
      if (params.n > static_cast<std::int64_t>(q)) continue;
      const auto best = max_game_value(s, params);
      // Random feasible distribution: shuffle a vertex-like base, then mix
      // with the uniform distribution (max entry stays <= p since 1/q <= p).
      std::vector<Rational> base(q, R(0));
      Rational left = 1;
      std::vector<Code> order(q);
      std::iota(order.begin(), order.end(), Code{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (Code x : order) {
        base[x] = std::min(p, left);
        left -= base[x];
      }
      const Rational lambda = R(std::uniform_int_distribution<int>(0, 10)(rng), 10);
      std::vector<Rational> r(q);
      for (Code x = 0; x < q; ++x) r[x] = lambda * base[x] + (1 - lambda) * R(1, q);
      EXPECT_LE(win_probability(s, InputDistribution(f, r, p)), best);
    }
  }
}

TEST(WinProbability, LinearInDistribution) {
  std::mt19937 rng(11);
  const auto& f = make_field(5);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_strategy(f, rng);
    std::vector<Rational> r1(5, R(0)), r2(5, R(0));
    r1[std::uniform_int_distribution<int>(0, 4)(rng)] = 1;
    r2 = std::vector<Rational>(5, R(1, 5));
    const Rational lambda = R(std::uniform_int_distribution<int>(0, 7)(rng), 7);
    std::vector<Rational> mix(5);
    for (int x = 0; x < 5; ++x) mix[x] = lambda * r1[x] + (1 - lambda) * r2[x];
    const InputDistribution d1(f, r1, R(1)), d2(f, r2, R(1)), dm(f, mix, R(1));
    EXPECT_EQ(win_probability(s, dm),
              lambda * win_probability(s, d1) + (1 - lambda) * win_probability(s, d2));
  }
}

TEST(RowScores, SumMatchesUniformValue) {
  std::mt19937 rng(13);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const auto& f = make_field(q);
    for (int t = 0; t < 50; ++t) {
      const auto s = random_strategy(f, rng);
      const auto scores = row_scores(s);
      const int total = std::accumulate(scores.begin(), scores.end(), 0);
      EXPECT_EQ(Rational(total), Rational(q * q) * win_probability(s, InputDistribution::uniform(f)));
      for (int v : scores) {
        EXPECT_GE(v, 0);
        EXPECT_LE(v, static_cast<int>(q));
      }
    }
  }
}

TEST(BestDistribution, AlwaysValid) {
  std::mt19937 rng(17);
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const auto& f = make_field(q);
    for (int t = 0; t < 100; ++t) {
      const auto s = random_strategy(f, rng);
      const Rational p = R(std::uniform_int_distribution<int>(1, 9)(rng), 9);
      const auto params = make_params(f, p);
      if (params.n > static_cast<std::int64_t>(q)) continue;
      const auto d = best_distribution(s, params);
      Rational total = 0;
      for (const auto& v : d.r()) {
        total += v;
        EXPECT_LE(v, p);
        EXPECT_GE(v, 0);
      }
      EXPECT_EQ(total, 1);
    }
  }
}

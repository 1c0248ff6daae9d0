#include <gtest/gtest.h>

#include <random>
#include <tuple>
#include <vector>

#include "chshq/bounds.hpp"
#include "chshq/construction.hpp"
#include "chshq/oracle.hpp"

using namespace chshq;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

GameParams params(std::uint64_t q, const Rational& p) { return make_params(make_field(q), p); }

// Plain enumeration through the public game API, sharing no code with the
// oracle's search loops.
Rational naive_value(const GameParams& gp) {
  const Code q = gp.q();
  std::uint64_t functions = 1;
  for (Code i = 0; i < q; ++i) functions *= q;
  Rational best = -1;
  std::vector<Code> a(q), b(q);
  for (std::uint64_t ia = 0; ia < functions; ++ia) {
    for (std::uint64_t v = ia, i = 0; i < q; ++i, v /= q) a[i] = static_cast<Code>(v % q);
    for (std::uint64_t ib = 0; ib < functions; ++ib) {
      for (std::uint64_t v = ib, i = 0; i < q; ++i, v /= q) b[i] = static_cast<Code>(v % q);
      const Rational v = max_game_value(Strategy(gp.field(), a, b), gp);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace

TEST(Oracle, FrozenValues) {
  // Values computed by an independent exhaustive search and frozen here.
  const std::vector<std::tuple<std::uint64_t, Rational, Rational>> cases = {
      {2, R(1, 2), R(3, 4)},  {3, R(1, 3), R(2, 3)},  {3, R(1, 2), R(2, 3)},
      {5, R(1, 2), R(3, 5)},  {5, R(1, 3), R(8, 15)}, {7, R(1, 2), R(4, 7)},
      {7, R(1, 3), R(10, 21)},
  };
  for (const auto& [q, p, expected] : cases) {
    const auto gp = params(q, p);
    const auto r = brute_force_value(gp, {SearchMode::best_response, 1, false});
    EXPECT_EQ(r.value, expected) << "q=" << q << " p=" << to_string(p);
    EXPECT_EQ(r.value, thm1_bound(static_cast<std::int64_t>(q), p));
    EXPECT_EQ(win_probability(r.witness_strategy, r.witness_distribution), r.value);
    EXPECT_EQ(r.reduction_used, SearchMode::best_response);
  }
}

TEST(Oracle, ModesAgreeWithNaiveEnumeration) {
  for (std::uint64_t q : {2, 3, 4}) {
    for (const auto& p : {R(1), R(1, 2), R(1, 3), R(2, 5), R(1, 4)}) {
      const auto gp = params(q, p);
      if (gp.n > static_cast<std::int64_t>(q)) continue;
      const auto full = brute_force_value(gp, {SearchMode::full, 1, false});
      const auto br = brute_force_value(gp, {SearchMode::best_response, 1, false});
      EXPECT_EQ(full.value, br.value) << "q=" << q << " p=" << to_string(p);
      if (q <= 3) {
        EXPECT_EQ(full.value, naive_value(gp));
      }
    }
  }
}

TEST(Oracle, ExaminedCounts) {
  const auto gp = params(3, R(1, 3));
  EXPECT_EQ(brute_force_value(gp, {SearchMode::full, 1, false}).strategies_examined, 729u);
  EXPECT_EQ(brute_force_value(gp, {SearchMode::best_response, 1, false}).strategies_examined, 27u);
}

TEST(Oracle, JobsDoNotChangeResult) {
  for (auto [q, mode] : std::vector<std::pair<std::uint64_t, SearchMode>>{
           {3, SearchMode::full}, {4, SearchMode::full}, {5, SearchMode::best_response},
           {7, SearchMode::best_response}}) {
    const auto gp = params(q, R(1, 2));
    const auto one = brute_force_value(gp, {mode, 1, false});
    for (unsigned jobs : {2u, 3u, 4u, 7u}) {
      const auto many = brute_force_value(gp, {mode, jobs, false});
      EXPECT_EQ(many.value, one.value);
      EXPECT_EQ(many.witness_strategy, one.witness_strategy) << "q=" << q << " jobs=" << jobs;
      EXPECT_EQ(many.witness_distribution, one.witness_distribution);
      EXPECT_EQ(many.strategies_examined, one.strategies_examined);
    }
  }
}

TEST(Oracle, FixBobZeroDividesWorkByQ) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    for (auto mode : {SearchMode::full, SearchMode::best_response}) {
      if (mode == SearchMode::full && q > 4) continue;
      const auto gp = params(q, R(1, 2));
      const auto all = brute_force_value(gp, {mode, 1, false});
      const auto fixed = brute_force_value(gp, {mode, 2, true});
      EXPECT_EQ(fixed.value, all.value);
      EXPECT_EQ(all.strategies_examined, fixed.strategies_examined * q);
      EXPECT_EQ(fixed.witness_strategy.bob()[0], 0u);
    }
  }
}

TEST(Oracle, Guards) {
  EXPECT_THROW(brute_force_value(params(7, R(1, 2)), {SearchMode::full, 1, false}), TooLarge);
  EXPECT_THROW(brute_force_value(params(9, R(1, 2)), {SearchMode::full, 1, false}), TooLarge);
  EXPECT_THROW(brute_force_value(params(9, R(1, 2)), {SearchMode::best_response, 1, false}),
               TooLarge);
  EXPECT_THROW(brute_force_value(params(3, R(1, 4))), InfeasibleDistribution);
  EXPECT_THROW(brute_force_value(params(3, R(1, 2)), {SearchMode::full, 0, false}), Error);
}

TEST(Oracle, SearchModeNames) {
  EXPECT_EQ(to_string(SearchMode::full), "full");
  EXPECT_EQ(parse_search_mode("best-response"), SearchMode::best_response);
  EXPECT_THROW(parse_search_mode("fast"), ParseError);
  EXPECT_EQ(default_search_mode(3), SearchMode::full);
  EXPECT_EQ(default_search_mode(4), SearchMode::best_response);
}

TEST(Oracle, SandwichedByConstructionAndThm1) {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    for (const auto& p : {R(1), R(1, 2), R(1, 3), R(2, 5), R(1, 4)}) {
      const auto gp = params(q, p);
      if (gp.n > static_cast<std::int64_t>(q)) continue;
      const auto oracle = brute_force_value(gp, {default_search_mode(q), 2, true}).value;
      const auto iq = static_cast<std::int64_t>(q);
      if (thm1_regime(iq, p)) {
        EXPECT_LE(oracle, thm1_bound(iq, p)) << "q=" << q << " p=" << to_string(p);
      }
      try {
        EXPECT_LE(construct(gp).achieved_value, oracle);
      } catch (const CandidatesExhausted&) {
      }
    }
  }
}

TEST(ShiftSymmetry, ExhaustiveQ2AndSampled) {
  const auto& f2 = make_field(2);
  const auto gp2 = make_params(f2, R(1, 2));
  for (Code a0 = 0; a0 < 2; ++a0)
    for (Code a1 = 0; a1 < 2; ++a1)
      for (Code b0 = 0; b0 < 2; ++b0)
        for (Code b1 = 0; b1 < 2; ++b1)
          for (Code c = 0; c < 2; ++c)
            EXPECT_TRUE(shift_symmetry_check(Strategy(f2, {a0, a1}, {b0, b1}), f2.element(c), gp2));

  std::mt19937 rng(7);
  for (std::uint64_t q : {3, 4, 5, 8, 9}) {
    const auto& f = make_field(q);
    const auto gp = make_params(f, R(1, 2));
    std::uniform_int_distribution<Code> pick(0, f.q() - 1);
    for (int t = 0; t < 50; ++t) {
      std::vector<Code> a(q), b(q);
      for (auto& v : a) v = pick(rng);
      for (auto& v : b) v = pick(rng);
      EXPECT_TRUE(shift_symmetry_check(Strategy(f, a, b), f.element(pick(rng)), gp));
    }
  }
}

TEST(IncidenceSearch, Examples) {
  EXPECT_EQ(brute_force_incidences(3, 2, 3).maximum, 4);
  EXPECT_EQ(brute_force_incidences(3, 1, 3).maximum, 3);
  EXPECT_EQ(brute_force_incidences(3, 3, 3).maximum, 6);
  const auto r = brute_force_incidences(2, 3, 3);
  EXPECT_EQ(r.maximum, count_incidences(r.witness));
  EXPECT_THROW(brute_force_incidences(4, 6, 5), TooLarge);
}

TEST(IncidenceSearch, MatchesOptimumInRegime) {
  for (std::uint64_t q : {2, 3, 4}) {
    for (std::int64_t n = 1; n <= 3; ++n) {
      for (std::int64_t k = n * (n - 1) / 2; k <= static_cast<std::int64_t>(q); ++k) {
        if (k == 0) continue;
        EXPECT_EQ(brute_force_incidences(n, k, q).maximum, incidence_optimum(n, k, q))
            << "n=" << n << " k=" << k << " q=" << q;
      }
    }
  }
  for (std::int64_t n = 1; n <= 2; ++n)
    for (std::int64_t k = 1; k <= 3; ++k)
      EXPECT_EQ(brute_force_incidences(n, k, 5).maximum, incidence_optimum(n, k, 5));
}

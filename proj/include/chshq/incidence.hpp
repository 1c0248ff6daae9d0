#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chshq/errors.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/game.hpp"

namespace chshq {

struct Point {
  FieldElement x;
  FieldElement y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    return std::pair(a.x.code(), a.y.code()) < std::pair(b.x.code(), b.y.code());
  }
};

/// y = slope * x + offset. Vertical lines have no representation.
struct Line {
  FieldElement slope;
  FieldElement offset;

  friend bool operator==(const Line& a, const Line& b) {
    return a.slope == b.slope && a.offset == b.offset;
  }
  friend bool operator<(const Line& a, const Line& b) {
    return std::pair(a.slope.code(), a.offset.code()) < std::pair(b.slope.code(), b.offset.code());
  }
};

inline bool on_line(const Point& pt, const Line& ln) {
  return pt.y == ln.slope * pt.x + ln.offset;
}

/// Points and lines of one field, each kept sorted by code order with
/// duplicates rejected.
class Configuration {
 public:
  Configuration(const FieldSpec& spec, std::vector<Point> points, std::vector<Line> lines)
      : spec_(&spec), points_(std::move(points)), lines_(std::move(lines)) {
    for (const auto& pt : points_)
      if (&pt.x.spec() != spec_ || &pt.y.spec() != spec_) throw MixedFields();
    for (const auto& ln : lines_)
      if (&ln.slope.spec() != spec_ || &ln.offset.spec() != spec_) throw MixedFields();
    std::sort(points_.begin(), points_.end());
    std::sort(lines_.begin(), lines_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
      throw Error("configuration contains a duplicate point");
    }
    if (std::adjacent_find(lines_.begin(), lines_.end()) != lines_.end()) {
      throw Error("configuration contains a duplicate line");
    }
  }

  const FieldSpec& spec() const { return *spec_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Line>& lines() const { return lines_; }
  std::size_t n() const { return points_.size(); }
  std::size_t k() const { return lines_.size(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  const FieldSpec* spec_;
  std::vector<Point> points_;
  std::vector<Line> lines_;
};

namespace detail {

struct PointCode {
  Code x, y;
  friend auto operator<=>(const PointCode&, const PointCode&) = default;
};
struct LineCode {
  Code slope, offset;
  friend auto operator<=>(const LineCode&, const LineCode&) = default;
};

inline bool incident(const FieldSpec& f, PointCode pt, LineCode ln) {
  return f.add(f.mul(ln.slope, pt.x), ln.offset) == pt.y;
}

/// Requires a.x != b.x.
inline LineCode joining_line(const FieldSpec& f, PointCode a, PointCode b) {
  const Code slope = f.mul(f.sub(b.y, a.y), f.inv(f.sub(b.x, a.x)));
  return {slope, f.sub(a.y, f.mul(slope, a.x))};
}

inline LineCode line_with_slope(const FieldSpec& f, PointCode through, Code slope) {
  return {slope, f.sub(through.y, f.mul(slope, through.x))};
}

inline std::vector<PointCode> point_codes(const Configuration& cfg) {
  std::vector<PointCode> out;
  for (const auto& pt : cfg.points()) out.push_back({pt.x.code(), pt.y.code()});
  return out;
}

inline std::vector<LineCode> line_codes(const Configuration& cfg) {
  std::vector<LineCode> out;
  for (const auto& ln : cfg.lines()) out.push_back({ln.slope.code(), ln.offset.code()});
  return out;
}

inline int points_on(const FieldSpec& f, LineCode ln, const std::vector<PointCode>& pts) {
  int c = 0;
  for (const auto& pt : pts) c += incident(f, pt, ln) ? 1 : 0;
  return c;
}

inline std::int64_t count_codes(const FieldSpec& f, const std::vector<PointCode>& pts,
                                const std::vector<LineCode>& lines) {
  std::int64_t total = 0;
  for (const auto& ln : lines) total += points_on(f, ln, pts);
  return total;
}

inline Configuration to_configuration(const FieldSpec& f, const std::vector<PointCode>& pts,
                                      const std::vector<LineCode>& lines) {
  std::vector<Point> points;
  std::vector<Line> ls;
  for (const auto& pt : pts) points.push_back({f.element(pt.x), f.element(pt.y)});
  for (const auto& ln : lines) ls.push_back({f.element(ln.slope), f.element(ln.offset)});
  return {f, std::move(points), std::move(ls)};
}

inline bool distinct_columns(const std::vector<PointCode>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i].x == pts[j].x) return false;
  return true;
}

}  // namespace detail

inline std::int64_t count_incidences(const Configuration& cfg) {
  return detail::count_codes(cfg.spec(), detail::point_codes(cfg), detail::line_codes(cfg));
}

/// Maximum incidences between n points and k lines, valid for
/// q >= k >= n(n-1)/2 and n >= 1.
inline std::int64_t incidence_optimum(std::int64_t n, std::int64_t k, std::int64_t q) {
  const std::int64_t pairs = n * (n - 1) / 2;
  if (n < 1 || k < pairs || k > q) {
    throw OutOfRegime("incidence optimum needs q >= k >= n(n-1)/2 (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ", q=" + std::to_string(q) + ")");
  }
  return k + pairs;
}

namespace detail {

inline void check_incidence_regime(const Configuration& cfg) {
  const auto n = static_cast<std::int64_t>(cfg.n());
  const auto k = static_cast<std::int64_t>(cfg.k());
  if (k < n * (n - 1) / 2 || k > static_cast<std::int64_t>(cfg.spec().q())) {
    throw OutOfRegime("configuration outside q >= |L| >= n(n-1)/2 (n=" + std::to_string(n) +
                      ", |L|=" + std::to_string(k) + ")");
  }
}

inline bool connected(const FieldSpec& f, PointCode a, PointCode b,
                      const std::vector<LineCode>& lines) {
  for (const auto& ln : lines)
    if (incident(f, a, ln) && incident(f, b, ln)) return true;
  return false;
}

}  // namespace detail

/// Class of a configuration in the four-way split of the incidence
/// optimality argument, checked in order:
///   1: some line meets no point;
///   2: some pair of points shares no line;
///   3: some line carries three or more points;
///   4: none of the above (the optimal shape).
inline int classify(const Configuration& cfg) {
  detail::check_incidence_regime(cfg);
  const auto& f = cfg.spec();
  const auto pts = detail::point_codes(cfg);
  const auto lines = detail::line_codes(cfg);
  for (const auto& ln : lines)
    if (detail::points_on(f, ln, pts) == 0) return 1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!detail::connected(f, pts[i], pts[j], lines)) return 2;
  for (const auto& ln : lines)
    if (detail::points_on(f, ln, pts) > 2) return 3;
  return 4;
}

namespace detail {

inline Configuration improve_empty_line(const FieldSpec& f, const std::vector<PointCode>& pts,
                                        std::vector<LineCode> lines) {
  const auto empty = std::find_if(lines.begin(), lines.end(),
                                  [&](LineCode ln) { return points_on(f, ln, pts) == 0; });
  for (Code s = 0; s < f.q(); ++s) {
    for (Code o = 0; o < f.q(); ++o) {
      const LineCode cand{s, o};
      if (std::find(lines.begin(), lines.end(), cand) != lines.end()) continue;
      if (points_on(f, cand, pts) == 0) continue;
      *empty = cand;
      return to_configuration(f, pts, lines);
    }
  }
  // With |L| <= q some point has a non-member line through it.
  throw NotImprovable("no replacement line for an empty line");
}

inline Configuration improve_unconnected_pair(const FieldSpec& f, const std::vector<PointCode>& pts,
                                              std::vector<LineCode> lines) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (connected(f, pts[i], pts[j], lines)) continue;
      const auto single = std::find_if(lines.begin(), lines.end(),
                                       [&](LineCode ln) { return points_on(f, ln, pts) == 1; });
      if (single == lines.end()) {
        throw NotImprovable("class 2 configuration without a single-point line");
      }
      *single = joining_line(f, pts[i], pts[j]);
      return to_configuration(f, pts, lines);
    }
  }
  throw NotImprovable("no unconnected pair");
}

/// Point move: drop p, add p' lying on no line of L, then trade lines that
/// carry at most one remaining point for lines joining p' to every other
/// point. The count of tradeable lines is checked rather than assumed.
inline Configuration improve_collinear(const FieldSpec& f, const std::vector<PointCode>& pts,
                                       const std::vector<LineCode>& lines) {
  const std::size_t n = pts.size();
  const std::int64_t before = count_codes(f, pts, lines);

  std::vector<std::pair<int, std::size_t>> by_degree;
  for (std::size_t i = 0; i < n; ++i) {
    int d = 0;
    for (const auto& ln : lines) d += incident(f, pts[i], ln) ? 1 : 0;
    by_degree.emplace_back(d, i);
  }
  std::sort(by_degree.begin(), by_degree.end());

  std::string diagnostic;
  for (const auto& [degree, idx] : by_degree) {
    std::vector<PointCode> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (i != idx) rest.push_back(pts[i]);

    for (Code x = 0; x < f.q(); ++x) {
      if (std::any_of(rest.begin(), rest.end(), [&](PointCode r) { return r.x == x; })) continue;
      for (Code y = 0; y < f.q(); ++y) {
        const PointCode fresh{x, y};
        if (std::any_of(lines.begin(), lines.end(),
                        [&](LineCode ln) { return incident(f, fresh, ln); })) {
          continue;
        }
        std::vector<LineCode> added;
        for (const auto& r : rest) {
          const auto ln = joining_line(f, fresh, r);
          if (std::find(added.begin(), added.end(), ln) == added.end()) added.push_back(ln);
        }
        std::vector<std::pair<int, LineCode>> tradeable;
        for (const auto& ln : lines) {
          const int c = points_on(f, ln, rest);
          if (c <= 1) tradeable.emplace_back(c, ln);
        }
        if (tradeable.size() < added.size()) {
          diagnostic = "class 3 move: " + std::to_string(tradeable.size()) +
                       " tradeable lines for " + std::to_string(added.size()) + " new lines";
          continue;
        }
        std::sort(tradeable.begin(), tradeable.end());
        std::vector<LineCode> next = lines;
        for (std::size_t t = 0; t < added.size(); ++t) {
          *std::find(next.begin(), next.end(), tradeable[t].second) = added[t];
        }
        std::vector<PointCode> moved = rest;
        moved.push_back(fresh);
        if (count_codes(f, moved, next) > before) return to_configuration(f, moved, next);
        diagnostic = "class 3 move did not increase incidences";
      }
    }
  }
  throw NotImprovable(diagnostic.empty() ? "class 3 move found no free point" : diagnostic);
}

}  // namespace detail

/// One improving step for a class 1-3 configuration: the result has the
/// same |P| and |L| and strictly more incidences. Points must occupy
/// distinct columns, since pairs in one column have no joining line here.
inline Configuration improve(const Configuration& cfg) {
  const int cls = classify(cfg);
  const auto& f = cfg.spec();
  const auto pts = detail::point_codes(cfg);
  const auto lines = detail::line_codes(cfg);
  if (!detail::distinct_columns(pts)) {
    throw OutOfRegime("improve needs points in pairwise distinct columns");
  }
  switch (cls) {
    case 1:
      return detail::improve_empty_line(f, pts, lines);
    case 2:
      return detail::improve_unconnected_pair(f, pts, lines);
    case 3:
      return detail::improve_collinear(f, pts, lines);
    default:
      throw NotImprovable("configuration is already class 4");
  }
}

/// Distinct point columns, distinct line slopes, one line per slope.
inline std::optional<std::string> game_configuration_problem(const Configuration& cfg) {
  const auto pts = detail::point_codes(cfg);
  if (!detail::distinct_columns(pts)) return "two points share a column";
  const auto lines = detail::line_codes(cfg);
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (lines[i].slope == lines[i - 1].slope) return "two lines share a slope";
  if (lines.size() != cfg.spec().q()) return "expected exactly q lines";
  return std::nullopt;
}

inline bool is_game_configuration(const Configuration& cfg) {
  return !game_configuration_problem(cfg).has_value();
}

/// Alice's points (x, a(x)) for x in the support, Bob's lines
/// y -> (slope y, offset -b(y)).
inline Configuration strategy_to_configuration(const Strategy& s,
                                               const std::vector<FieldElement>& support) {
  const auto& f = s.spec();
  if (support.empty()) throw Error("support must be nonempty");
  std::vector<Code> xs;
  for (const auto& x : support) {
    if (&x.spec() != &f) throw MixedFields();
    xs.push_back(x.code());
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Point> points;
  for (Code x : xs) points.push_back({f.element(x), f.element(s.alice()[x])});
  std::vector<Line> lines;
  for (Code y = 0; y < f.q(); ++y) lines.push_back({f.element(y), f.element(f.neg(s.bob()[y]))});
  return {f, std::move(points), std::move(lines)};
}

struct StrategyWithSupport {
  Strategy strategy;
  std::vector<FieldElement> support;
};

/// Inverse of strategy_to_configuration; inputs outside the support answer
/// `fill`.
inline StrategyWithSupport configuration_to_strategy(const Configuration& cfg,
                                                     const FieldElement& fill) {
  const auto& f = cfg.spec();
  if (&fill.spec() != &f) throw MixedFields();
  if (auto problem = game_configuration_problem(cfg)) throw InvalidGameConfiguration(*problem);
  std::vector<Code> alice(f.q(), fill.code());
  std::vector<Code> bob(f.q(), 0);
  std::vector<FieldElement> support;
  for (const auto& pt : cfg.points()) {
    alice[pt.x.code()] = pt.y.code();
    support.push_back(pt.x);
  }
  for (const auto& ln : cfg.lines()) bob[ln.slope.code()] = f.neg(ln.offset.code());
  return {Strategy(f, std::move(alice), std::move(bob)), std::move(support)};
}

}  // namespace chshq

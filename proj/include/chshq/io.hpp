#pragma once

// File formats. All files are JSON with integer element codes and rationals
// as "num/den" strings; every file carries its field so it can be read back
// without extra context.
//
//   field:         {"p": int, "k": int, "modulus": [int, ...]}
//   strategy:      {"q", "field", "a": [...], "b": [...]} plus optional
//                  metadata ("p", "support", "value") that readers ignore
//   distribution:  {"q", "field", "p_cap": "n/d", "r": ["n/d", ...]}
//   configuration: {"q", "field", "points": [[x, y], ...],
//                   "lines": [[slope, offset], ...]}
//
// Sweep CSV columns:
//   q,p_num,p_den,n,chakraborty,thm1,corollary,construction,oracle,tight

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chshq/errors.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/game.hpp"
#include "chshq/incidence.hpp"
#include "chshq/rational.hpp"
#include "chshq/report.hpp"

namespace chshq::io {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const FieldSpec& f) {
  return Json{{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}};
}

namespace detail {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("bad value for '") + key + "'");
  }
}

inline Code code_in(const Json& v, const FieldSpec& f) {
  if (!v.is_number_integer()) throw ParseError("element codes must be integers");
  const auto c = v.get<long long>();
  if (c < 0 || c >= static_cast<long long>(f.q())) {
    throw ParseError("element code " + std::to_string(c) + " outside [0, q)");
  }
  return static_cast<Code>(c);
}

inline std::vector<Code> codes_in(const Json& j, const char* key, const FieldSpec& f) {
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  std::vector<Code> out;
  for (const auto& v : arr) out.push_back(code_in(v, f));
  return out;
}

inline std::pair<Code, Code> pair_in(const Json& v, const FieldSpec& f) {
  if (!v.is_array() || v.size() != 2) throw ParseError("expected a pair [u, v]");
  return {code_in(v[0], f), code_in(v[1], f)};
}

}  // namespace detail

/// Reads the "field" object and checks it against the top-level "q".
inline const FieldSpec& field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("field")) throw ParseError("missing key 'field'");
  const auto& fj = j.at("field");
  const int p = detail::get<int>(fj, "p");
  const int k = detail::get<int>(fj, "k");
  const auto modulus = detail::get<std::vector<int>>(fj, "modulus");
  const FieldSpec* f = nullptr;
  try {
    f = &field_with_modulus(p, k, modulus);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid field: ") + e.what());
  }
  if (j.contains("q") && detail::get<long long>(j, "q") != static_cast<long long>(f->q())) {
    throw ParseError("'q' does not match the field description");
  }
  return *f;
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json strategy_to_json(const Strategy& s) {
  std::vector<Code> a(s.alice().begin(), s.alice().end());
  std::vector<Code> b(s.bob().begin(), s.bob().end());
  return Json{{"q", s.spec().q()}, {"field", field_to_json(s.spec())}, {"a", a}, {"b", b}};
}

inline Strategy strategy_from_json(const Json& j) {
  const auto& f = field_from_json(j);
  if (!j.contains("a") || !j.contains("b")) throw ParseError("strategy needs 'a' and 'b'");
  auto a = detail::codes_in(j, "a", f);
  auto b = detail::codes_in(j, "b", f);
  if (a.size() != f.q() || b.size() != f.q()) throw ParseError("'a' and 'b' must have q entries");
  return {f, std::move(a), std::move(b)};
}

inline Json distribution_to_json(const InputDistribution& d) {
  Json r = Json::array();
  for (const auto& v : d.r()) r.push_back(to_string(v));
  return Json{{"q", d.spec().q()}, {"field", field_to_json(d.spec())}, {"p_cap", to_string(d.p_cap())},
              {"r", r}};
}

inline InputDistribution distribution_from_json(const Json& j) {
  const auto& f = field_from_json(j);
  const auto cap = parse_rational(detail::get<std::string>(j, "p_cap"));
  std::vector<Rational> r;
  for (const auto& s : detail::get<std::vector<std::string>>(j, "r")) r.push_back(parse_rational(s));
  try {
    return {f, std::move(r), cap};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid distribution: ") + e.what());
  }
}

inline Json configuration_to_json(const Configuration& cfg) {
  Json points = Json::array(), lines = Json::array();
  for (const auto& pt : cfg.points()) points.push_back({pt.x.code(), pt.y.code()});
  for (const auto& ln : cfg.lines()) lines.push_back({ln.slope.code(), ln.offset.code()});
  return Json{{"q", cfg.spec().q()}, {"field", field_to_json(cfg.spec())}, {"points", points},
              {"lines", lines}};
}

inline Configuration configuration_from_json(const Json& j) {
  const auto& f = field_from_json(j);
  if (!j.contains("points") || !j.contains("lines")) throw ParseError("needs 'points' and 'lines'");
  if (!j.at("points").is_array() || !j.at("lines").is_array()) {
    throw ParseError("'points' and 'lines' must be arrays");
  }
  std::vector<Point> points;
  std::vector<Line> lines;
  for (const auto& v : j.at("points")) {
    const auto [x, y] = detail::pair_in(v, f);
    points.push_back({f.element(x), f.element(y)});
  }
  for (const auto& v : j.at("lines")) {
    const auto [s, o] = detail::pair_in(v, f);
    lines.push_back({f.element(s), f.element(o)});
  }
  try {
    return {f, std::move(points), std::move(lines)};
  } catch (const Error& e) {
    throw ParseError(std::string("invalid configuration: ") + e.what());
  }
}

inline constexpr const char* kCsvHeader = "q,p_num,p_den,n,chakraborty,thm1,corollary,construction,oracle,tight";

inline std::string csv_row(const BoundReport& r) {
  auto opt = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string("NA"); };
  std::ostringstream out;
  out << r.q << ',' << numer(r.p) << ',' << denom(r.p) << ',' << r.n << ','
      << r.chakraborty.decimal(12) << ',' << opt(r.thm1) << ',' << opt(r.corollary) << ','
      << opt(r.lower_construction) << ',' << opt(r.oracle_value) << ','
      << (r.tight ? (*r.tight ? "true" : "false") : "NA");
  return out.str();
}

}  // namespace chshq::io

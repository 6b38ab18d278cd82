#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "ineq.hpp"
#include "instance.hpp"
#include "rat.hpp"

namespace ccms2 {

// Machine output is line-oriented and opens with this version tag.
inline constexpr const char* machine_header = "ccms2/1";

// ---------------------------------------------------------------------------
// Rational vectors and points: whitespace-separated "p/q" literals in
// variable order d0 d1 d2 d3 z1..zn. One point per line in streams.

inline std::vector<Rat> rat_vector_from_text(const std::string& text, const std::string& field) {
  std::vector<Rat> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    try {
      out.push_back(rat_parse(tok));
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, field + ": entry " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

inline std::string rat_vector_to_line(const std::vector<Rat>& v) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) out += " ";
    out += rat_to_string(v[j]);
  }
  return out;
}

inline Point point_from_text(const std::string& text, int n) {
  auto v = rat_vector_from_text(text, "point");
  if (int(v.size()) != 4 + n)
    throw Error(ErrorKind::parse, "point: expected " + std::to_string(4 + n) + " coordinates, got " + std::to_string(v.size()));
  return point_from_vector(n, v);
}

inline std::string point_to_line(const Point& p) { return rat_vector_to_line(p.to_vector()); }

// ---------------------------------------------------------------------------
// Cut lines: the machine row format with the violation appended as a seventh
// ';'-separated field.

inline std::string cut_to_line(const LinIneq& row, const Rat& violation) {
  return row_to_line(row) + ";" + rat_to_string(violation);
}

inline std::pair<LinIneq, Rat> cut_from_line(const std::string& line) {
  auto cut = line.rfind(';');
  if (cut == std::string::npos) throw Error(ErrorKind::parse, "cut line: expected ';'-separated fields");
  LinIneq row = row_from_line(line.substr(0, cut));
  Rat violation = rat_parse(line.substr(cut + 1));
  return {std::move(row), std::move(violation)};
}

// Report lines are "key value..." words; values never contain spaces.
inline std::pair<std::string, std::vector<std::string>> kv_from_line(const std::string& line) {
  std::istringstream is(line);
  std::string key;
  if (!(is >> key)) throw Error(ErrorKind::parse, "report line: empty");
  std::vector<std::string> values;
  std::string tok;
  while (is >> tok) values.push_back(tok);
  return {std::move(key), std::move(values)};
}

// ---------------------------------------------------------------------------
// Instance files: one JSON object per file. z-space fields n, S1, S2, l, u;
// x-space (space = "x") fields n, T1, T2, L, U, gamma, beta, c, sense, which
// run through the complement transform on load. Rationals are integers or
// "p/q" strings; floats are rejected to keep the arithmetic exact.

struct LoadedInstance {
  Instance inst;
  std::optional<XPolyProblem> xprob;
  std::optional<XTransform> xform;

  bool x_space() const { return xprob.has_value(); }
};

namespace iodetail {

using Json = nlohmann::json;

inline long long int_field(const Json& j, const std::string& field) {
  if (!j.contains(field)) throw Error(ErrorKind::parse, field + ": missing");
  const Json& v = j.at(field);
  if (!v.is_number_integer()) throw Error(ErrorKind::parse, field + ": expected an integer");
  return v.get<long long>();
}

inline std::vector<int> index_field(const Json& j, const std::string& field) {
  if (!j.contains(field)) throw Error(ErrorKind::parse, field + ": missing");
  const Json& v = j.at(field);
  if (!v.is_array()) throw Error(ErrorKind::parse, field + ": expected an array of 1-based indices");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw Error(ErrorKind::parse, field + ": expected integer indices");
    out.push_back(e.get<int>());
  }
  return out;
}

inline Rat rat_field_value(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_string()) {
    try {
      return rat_parse(v.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, field + ": " + e.what());
    }
  }
  if (v.is_number_float())
    throw Error(ErrorKind::parse, field + ": floats are not exact, write the value as a \"p/q\" string");
  throw Error(ErrorKind::parse, field + ": expected an integer or a \"p/q\" string");
}

inline Rat rat_field(const Json& j, const std::string& field, const Rat& fallback) {
  if (!j.contains(field)) return fallback;
  return rat_field_value(j.at(field), field);
}

inline Sense sense_from_string(const std::string& s, const std::string& field) {
  if (s == "min" || s == "minimize") return Sense::minimize;
  if (s == "max" || s == "maximize") return Sense::maximize;
  throw Error(ErrorKind::parse, field + ": expected \"min\" or \"max\", got \"" + s + "\"");
}

inline void reject_unknown_keys(const Json& j, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok) throw Error(ErrorKind::parse, key + ": unknown instance field");
  }
}

} // namespace iodetail

inline LoadedInstance instance_from_text(const std::string& text) {
  using iodetail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::parse, std::string("instance: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::parse, "instance: expected a JSON object");

  std::string space = "z";
  if (j.contains("space")) {
    if (!j.at("space").is_string()) throw Error(ErrorKind::parse, "space: expected \"z\" or \"x\"");
    space = j.at("space").get<std::string>();
  }

  LoadedInstance out;
  if (space == "z") {
    iodetail::reject_unknown_keys(j, {"space", "n", "S1", "S2", "l", "u"});
    int n = int(iodetail::int_field(j, "n"));
    auto s1 = iodetail::index_field(j, "S1");
    auto s2 = iodetail::index_field(j, "S2");
    int l = int(iodetail::int_field(j, "l"));
    int u = int(iodetail::int_field(j, "u"));
    out.inst = new_instance(n, s1, s2, l, u);
  } else if (space == "x") {
    iodetail::reject_unknown_keys(j, {"space", "n", "T1", "T2", "L", "U", "gamma", "beta", "c", "sense"});
    XPolyProblem p;
    p.n = int(iodetail::int_field(j, "n"));
    p.t1 = iodetail::index_field(j, "T1");
    p.t2 = iodetail::index_field(j, "T2");
    p.L = int(iodetail::int_field(j, "L"));
    p.U = int(iodetail::int_field(j, "U"));
    if (!j.contains("gamma")) throw Error(ErrorKind::parse, "gamma: missing");
    if (!j.at("gamma").is_array() || j.at("gamma").size() != 2)
      throw Error(ErrorKind::parse, "gamma: expected an array of 2 rationals");
    p.gamma[0] = iodetail::rat_field_value(j.at("gamma")[0], "gamma");
    p.gamma[1] = iodetail::rat_field_value(j.at("gamma")[1], "gamma");
    p.beta = iodetail::rat_field(j, "beta", Rat(0));
    if (j.contains("c")) {
      if (!j.at("c").is_array()) throw Error(ErrorKind::parse, "c: expected an array of rationals");
      for (const auto& e : j.at("c")) p.c.push_back(iodetail::rat_field_value(e, "c"));
    } else {
      p.c.assign(std::size_t(p.n), Rat(0));
    }
    if (j.contains("sense")) {
      if (!j.at("sense").is_string()) throw Error(ErrorKind::parse, "sense: expected \"min\" or \"max\"");
      p.sense = iodetail::sense_from_string(j.at("sense").get<std::string>(), "sense");
    }
    out.xform = from_x_space(p);
    out.inst = out.xform->inst;
    out.xprob = std::move(p);
  } else {
    throw Error(ErrorKind::parse, "space: expected \"z\" or \"x\", got \"" + space + "\"");
  }
  return out;
}

inline std::string instance_to_text(const Instance& inst) {
  iodetail::Json j;
  j["n"] = inst.n;
  j["S1"] = inst.s1_indices();
  j["S2"] = inst.s2_indices();
  j["l"] = inst.l;
  j["u"] = inst.u;
  return j.dump();
}

} // namespace ccms2

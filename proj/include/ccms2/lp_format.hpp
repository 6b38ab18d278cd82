#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "ineq.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "rat.hpp"

namespace ccms2 {

// CPLEX-style LP text. Writer and reader agree on a strict subset:
//   \ vars: <names in index order>      (comment; pins variable indices)
//   Maximize | Minimize
//    obj: <terms>
//   Subject To
//    c1: <terms> <= | = | >= <rhs>      (one constraint per line)
//   Bounds
//    lo <= name <= hi | name >= lo | name free | name = v | -inf <= name <= hi
//   End
// Coefficients are exact rationals; integral systems stay plain integers, so
// third-party solvers can read everything the row generator exports. A file
// without the vars comment assigns indices by first appearance, and variables
// absent from Bounds default to 0 <= name (the conventional LP default).

struct LPFile {
  LPModel model;
  std::vector<std::string> names;
};

// Variable names for the (delta, z) space: d0..d3, z1..zn.
inline std::vector<std::string> lp_var_names(int n) {
  std::vector<std::string> names;
  names.reserve(std::size_t(4 + n));
  for (int i = 0; i < 4; ++i) names.push_back("d" + std::to_string(i));
  for (int j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  return names;
}

namespace lpdetail {

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline void append_terms(std::string& out, const std::vector<Rat>& a, const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Rat& c = a[j];
    if (c == 0) continue;
    if (first) {
      if (c == -1) out += "- ";
      else if (c != 1) out += rat_to_string(c) + " ";
    } else {
      out += (c > 0) ? " + " : " - ";
      Rat m = c > 0 ? c : Rat(-c);
      if (m != 1) out += rat_to_string(m) + " ";
    }
    out += names[j];
    first = false;
  }
  if (first) out += "0 " + names[0];
}

} // namespace lpdetail

inline std::string lp_to_text(const LPModel& m, std::vector<std::string> names = {}) {
  validate(m);
  if (m.num_vars < 1) throw Error(ErrorKind::bad_params, "lp: cannot serialize a model without variables");
  if (names.empty())
    for (int j = 1; j <= m.num_vars; ++j) names.push_back("x" + std::to_string(j));
  if (int(names.size()) != m.num_vars) throw Error(ErrorKind::bad_params, "lp names: width mismatch");
  for (const auto& s : names)
    if (!lpdetail::valid_name(s)) throw Error(ErrorKind::bad_params, "lp names: invalid identifier '" + s + "'");

  std::string out = "\\ vars:";
  for (const auto& s : names) out += " " + s;
  out += "\n";
  out += (m.sense == Sense::maximize) ? "Maximize\n" : "Minimize\n";
  out += " obj: ";
  lpdetail::append_terms(out, m.objective, names);
  out += "\nSubject To\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out += " c" + std::to_string(r + 1) + ": ";
    lpdetail::append_terms(out, m.rows[r].a, names);
    switch (m.rows[r].rel) {
      case Rel::le: out += " <= "; break;
      case Rel::eq: out += " = "; break;
      case Rel::ge: out += " >= "; break;
    }
    out += rat_to_string(m.rows[r].rhs) + "\n";
  }
  out += "Bounds\n";
  for (int j = 0; j < m.num_vars; ++j) {
    const auto& lo = m.lo[std::size_t(j)];
    const auto& hi = m.hi[std::size_t(j)];
    out += " ";
    if (!lo && !hi) out += names[std::size_t(j)] + " free";
    else if (lo && hi && *lo == *hi) out += names[std::size_t(j)] + " = " + rat_to_string(*lo);
    else if (lo && hi) out += rat_to_string(*lo) + " <= " + names[std::size_t(j)] + " <= " + rat_to_string(*hi);
    else if (lo) out += names[std::size_t(j)] + " >= " + rat_to_string(*lo);
    else out += "-inf <= " + names[std::size_t(j)] + " <= " + rat_to_string(*hi);
    out += "\n";
  }
  out += "End\n";
  return out;
}

// System export: the polytope rows with a zero objective, in (delta, z) names.
inline std::string system_to_lp_text(const std::vector<LinIneq>& rows, int n, Sense sense = Sense::maximize) {
  LPModel m = lp_model(4 + n, sense);
  for (const auto& r : rows) {
    std::vector<Rat> a(r.a.begin(), r.a.end());
    m.add_row(std::move(a), Rel::le, Rat(r.rhs));
  }
  return lp_to_text(m, lp_var_names(n));
}

namespace lpdetail {

inline std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline bool is_number(const std::string& t) {
  std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i >= t.size()) return false;
  bool digits = false, slash = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) { digits = true; continue; }
    if (t[i] == '/' && digits && !slash) { slash = true; digits = false; continue; }
    return false;
  }
  return digits;
}

inline bool is_relation(const std::string& t) {
  return t == "<=" || t == "=<" || t == ">=" || t == "=>" || t == "=" || t == "<" || t == ">";
}

inline Rel relation_of(const std::string& t) {
  if (t == "<=" || t == "=<" || t == "<") return Rel::le;
  if (t == ">=" || t == "=>" || t == ">") return Rel::ge;
  return Rel::eq;
}

enum class BoundKind { finite, pos_inf, neg_inf };

inline BoundKind bound_kind(const std::string& t) {
  std::string s = lower(t);
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return BoundKind::pos_inf;
  if (s == "-inf" || s == "-infinity") return BoundKind::neg_inf;
  return BoundKind::finite;
}

// An infinity only makes sense on its own side; +inf below or -inf above
// would silently flip feasibility, so both are rejected.
inline std::optional<Rat> lower_bound_value(const std::string& t) {
  switch (bound_kind(t)) {
    case BoundKind::neg_inf: return std::nullopt;
    case BoundKind::pos_inf: throw Error(ErrorKind::parse, "lp bound: '+inf' cannot be a lower bound");
    case BoundKind::finite: break;
  }
  return rat_parse(t);
}

inline std::optional<Rat> upper_bound_value(const std::string& t) {
  switch (bound_kind(t)) {
    case BoundKind::pos_inf: return std::nullopt;
    case BoundKind::neg_inf: throw Error(ErrorKind::parse, "lp bound: '-inf' cannot be an upper bound");
    case BoundKind::finite: break;
  }
  return rat_parse(t);
}

struct Registry {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  bool pinned = false; // a vars comment freezes the set

  int lookup(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (pinned) throw Error(ErrorKind::parse, "lp: unknown variable '" + name + "'");
    int id = int(names.size());
    names.push_back(name);
    index[name] = id;
    return id;
  }
};

// Linear expression as (coefficient, variable) pairs; tokens are already
// whitespace-split, signs may stand alone or be glued to the number.
inline std::vector<std::pair<Rat, int>> parse_terms(const std::vector<std::string>& toks, std::size_t from,
                                                    std::size_t to, Registry& reg) {
  std::vector<std::pair<Rat, int>> out;
  Rat sign(1);
  std::optional<Rat> coef;
  for (std::size_t i = from; i < to; ++i) {
    const std::string& t = toks[i];
    if (t == "+") continue;
    if (t == "-") { sign = -sign; continue; }
    if (is_number(t)) {
      if (coef) throw Error(ErrorKind::parse, "lp: two coefficients in a row near '" + t + "'");
      coef = rat_parse(t);
      continue;
    }
    if (!valid_name(t)) throw Error(ErrorKind::parse, "lp: malformed term near '" + t + "'");
    Rat c = sign * (coef ? *coef : Rat(1));
    out.push_back({c, reg.lookup(t)});
    sign = 1;
    coef.reset();
  }
  if (coef) throw Error(ErrorKind::parse, "lp: dangling coefficient without a variable");
  return out;
}

} // namespace lpdetail

inline LPFile lp_from_text(const std::string& text) {
  using namespace lpdetail;

  Registry reg;
  enum class Section { preamble, objective, rows, bounds, done };
  Section section = Section::preamble;
  Sense sense = Sense::maximize;
  bool saw_objective = false;

  struct RawRow {
    std::vector<std::pair<Rat, int>> terms;
    Rel rel;
    Rat rhs;
  };
  std::vector<std::pair<Rat, int>> obj_terms;
  std::vector<RawRow> raw_rows;
  // Bounds state starts at the conventional LP default 0 <= x; each line
  // changes only the sides it names, so "x <= 3" keeps the zero floor.
  struct RawBound {
    std::optional<Rat> lo = Rat(0);
    std::optional<Rat> hi;
  };
  std::map<int, RawBound> raw_bounds;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    // The vars comment pins names; every other comment is noise.
    std::string t = trim(line);
    if (!t.empty() && t[0] == '\\') {
      auto toks = tokens_of(t.substr(1));
      if (!toks.empty() && lower(toks[0]) == "vars:" && section == Section::preamble) {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (!valid_name(toks[i])) throw Error(ErrorKind::parse, "lp vars: invalid identifier '" + toks[i] + "'");
          reg.lookup(toks[i]);
        }
        reg.pinned = true;
      }
      continue;
    }
    if (t.empty()) continue;

    std::string low = lower(t);
    if (low == "maximize" || low == "max") { sense = Sense::maximize; section = Section::objective; saw_objective = true; continue; }
    if (low == "minimize" || low == "min") { sense = Sense::minimize; section = Section::objective; saw_objective = true; continue; }
    if (low == "subject to" || low == "such that" || low == "st" || low == "s.t.") { section = Section::rows; continue; }
    if (low == "bounds") { section = Section::bounds; continue; }
    if (low == "end") { section = Section::done; break; }

    auto toks = tokens_of(t);
    // Optional "name:" label, either its own token or glued to the first.
    if (!toks.empty() && section != Section::bounds) {
      if (toks[0].back() == ':') toks.erase(toks.begin());
      else if (toks.size() >= 2 && toks[1] == ":") toks.erase(toks.begin(), toks.begin() + 2);
    }
    if (toks.empty()) continue;

    switch (section) {
      case Section::preamble:
        throw Error(ErrorKind::parse, "lp: expected Maximize or Minimize before '" + t + "'");
      case Section::objective: {
        auto terms = parse_terms(toks, 0, toks.size(), reg);
        obj_terms.insert(obj_terms.end(), terms.begin(), terms.end());
        break;
      }
      case Section::rows: {
        std::size_t rel_at = toks.size();
        for (std::size_t i = 0; i < toks.size(); ++i)
          if (is_relation(toks[i])) { rel_at = i; break; }
        if (rel_at + 2 != toks.size())
          throw Error(ErrorKind::parse, "lp row: expected '<terms> rel rhs' in '" + t + "'");
        if (!is_number(toks[rel_at + 1]))
          throw Error(ErrorKind::parse, "lp row: right-hand side must be a rational, got '" + toks[rel_at + 1] + "'");
        RawRow r;
        r.terms = parse_terms(toks, 0, rel_at, reg);
        r.rel = relation_of(toks[rel_at]);
        r.rhs = rat_parse(toks[rel_at + 1]);
        raw_rows.push_back(std::move(r));
        break;
      }
      case Section::bounds: {
        // Forms: "name free", "name = v", "name >= lo", "name <= hi",
        // "lo <= name", "lo <= name <= hi" (and the mirrored >= chain).
        if (toks.size() == 2 && lower(toks[1]) == "free" && valid_name(toks[0])) {
          RawBound& b = raw_bounds[reg.lookup(toks[0])];
          b.lo.reset();
          b.hi.reset();
        } else if (toks.size() == 3 && valid_name(toks[0]) && is_relation(toks[1])) {
          RawBound& b = raw_bounds[reg.lookup(toks[0])];
          Rel rel = relation_of(toks[1]);
          if (rel == Rel::eq) b.lo = b.hi = Rat(rat_parse(toks[2]));
          else if (rel == Rel::ge) b.lo = lower_bound_value(toks[2]);
          else b.hi = upper_bound_value(toks[2]);
        } else if (toks.size() == 3 && valid_name(toks[2]) && is_relation(toks[1])) {
          RawBound& b = raw_bounds[reg.lookup(toks[2])];
          Rel rel = relation_of(toks[1]);
          if (rel == Rel::eq) b.lo = b.hi = Rat(rat_parse(toks[0]));
          else if (rel == Rel::le) b.lo = lower_bound_value(toks[0]);
          else b.hi = upper_bound_value(toks[0]);
        } else if (toks.size() == 5 && valid_name(toks[2]) && is_relation(toks[1]) && is_relation(toks[3]) &&
                   relation_of(toks[1]) == relation_of(toks[3]) && relation_of(toks[1]) != Rel::eq) {
          RawBound& b = raw_bounds[reg.lookup(toks[2])];
          if (relation_of(toks[1]) == Rel::le) {
            b.lo = lower_bound_value(toks[0]);
            b.hi = upper_bound_value(toks[4]);
          } else {
            b.lo = lower_bound_value(toks[4]);
            b.hi = upper_bound_value(toks[0]);
          }
        } else {
          throw Error(ErrorKind::parse, "lp bound: unrecognized form '" + t + "'");
        }
        break;
      }
      case Section::done:
        break;
    }
  }

  if (!saw_objective)
    throw Error(ErrorKind::parse, "lp: missing objective section, expected Maximize or Minimize");

  LPFile out;
  out.names = reg.names;
  out.model = lp_model(int(reg.names.size()), sense);
  if (out.model.num_vars == 0) throw Error(ErrorKind::parse, "lp: no variables");
  for (const auto& [c, j] : obj_terms) out.model.objective[std::size_t(j)] += c;
  for (const auto& rr : raw_rows) {
    std::vector<Rat> a(std::size_t(out.model.num_vars), Rat(0));
    for (const auto& [c, j] : rr.terms) a[std::size_t(j)] += c;
    out.model.add_row(std::move(a), rr.rel, rr.rhs);
  }
  for (int j = 0; j < out.model.num_vars; ++j) {
    RawBound b = raw_bounds.count(j) ? raw_bounds[j] : RawBound{};
    out.model.lo[std::size_t(j)] = b.lo;
    out.model.hi[std::size_t(j)] = b.hi;
  }
  validate(out.model);
  return out;
}

} // namespace ccms2

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "instance.hpp"
#include "rat.hpp"

namespace ccms2 {

enum class Family {
  T1a, T1b, T1c, T1d, T1e,
  SL1, SL2, SL3, SL4, SL5, SL6, SL7,
  U1, U2, U3, U4, U5,
  L1, L2, L3, L4, L5,
  R1u, R2u, R3u, R4u, R5u, R6u,
  R1l, R2l, R3l, R4l, R5l, R6l,
  TY2,
};

inline constexpr int family_count() { return int(Family::TY2) + 1; }

inline const char* family_name(Family f) {
  switch (f) {
    case Family::T1a: return "T1a"; case Family::T1b: return "T1b"; case Family::T1c: return "T1c";
    case Family::T1d: return "T1d"; case Family::T1e: return "T1e";
    case Family::SL1: return "SL1"; case Family::SL2: return "SL2"; case Family::SL3: return "SL3";
    case Family::SL4: return "SL4"; case Family::SL5: return "SL5"; case Family::SL6: return "SL6";
    case Family::SL7: return "SL7";
    case Family::U1: return "U1"; case Family::U2: return "U2"; case Family::U3: return "U3";
    case Family::U4: return "U4"; case Family::U5: return "U5";
    case Family::L1: return "L1"; case Family::L2: return "L2"; case Family::L3: return "L3";
    case Family::L4: return "L4"; case Family::L5: return "L5";
    case Family::R1u: return "R1u"; case Family::R2u: return "R2u"; case Family::R3u: return "R3u";
    case Family::R4u: return "R4u"; case Family::R5u: return "R5u"; case Family::R6u: return "R6u";
    case Family::R1l: return "R1l"; case Family::R2l: return "R2l"; case Family::R3l: return "R3l";
    case Family::R4l: return "R4l"; case Family::R5l: return "R5l"; case Family::R6l: return "R6l";
    case Family::TY2: return "TY2";
  }
  return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
  static const std::map<std::string, Family> table = {
      {"T1a", Family::T1a}, {"T1b", Family::T1b}, {"T1c", Family::T1c}, {"T1d", Family::T1d}, {"T1e", Family::T1e},
      {"SL1", Family::SL1}, {"SL2", Family::SL2}, {"SL3", Family::SL3}, {"SL4", Family::SL4}, {"SL5", Family::SL5},
      {"SL6", Family::SL6}, {"SL7", Family::SL7},
      {"U1", Family::U1}, {"U2", Family::U2}, {"U3", Family::U3}, {"U4", Family::U4}, {"U5", Family::U5},
      {"L1", Family::L1}, {"L2", Family::L2}, {"L3", Family::L3}, {"L4", Family::L4}, {"L5", Family::L5},
      {"R1u", Family::R1u}, {"R2u", Family::R2u}, {"R3u", Family::R3u}, {"R4u", Family::R4u}, {"R5u", Family::R5u},
      {"R6u", Family::R6u},
      {"R1l", Family::R1l}, {"R2l", Family::R2l}, {"R3l", Family::R3l}, {"R4l", Family::R4l}, {"R5l", Family::R5l},
      {"R6l", Family::R6l},
      {"TY2", Family::TY2}};
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

// i: zone owner for SL2/SL5/R3/U4/L4; (i,k): ordered pair for U3/L3; sign: +1/-1 for TY2;
// j: member index for SL2/SL3/SL6. Unused fields stay 0.
struct FamilyParams {
  int i = 0;
  int k = 0;
  int sign = 0;
  int j = 0;

  bool operator==(const FamilyParams& o) const { return i == o.i && k == o.k && sign == o.sign && j == o.j; }
};

// One inequality a.(delta,z) <= rhs with integer data. Coefficients are exact;
// index 0..3 addresses delta0..delta3 and 4+j addresses z_{j+1}.
struct LinIneq {
  Family family = Family::T1a;
  FamilyParams params;
  Mask qmask = 0;
  std::vector<long long> a; // size 4+n
  long long rhs = 0;

  int n() const { return int(a.size()) - 4; }
  std::vector<int> q_indices() const { return mask_indices(qmask); }

  Rat evaluate(const Point& p) const {
    Rat acc = 0;
    for (int i = 0; i < 4; ++i)
      if (a[std::size_t(i)] != 0) acc += Rat(a[std::size_t(i)]) * p.delta[std::size_t(i)];
    for (int j = 0; j < n(); ++j)
      if (a[std::size_t(4 + j)] != 0) acc += Rat(a[std::size_t(4 + j)]) * p.z[std::size_t(j)];
    return acc;
  }

  Rat violation(const Point& p) const { return evaluate(p) - Rat(rhs); }

  // Exact satisfaction for compact binary points.
  bool satisfied_by(const BinaryPoint& bp) const {
    long long acc = 0;
    for (int i = 0; i < 4; ++i)
      if (bp.delta_bit(i)) acc += a[std::size_t(i)];
    Mask zm = bp.zmask;
    for (int j = 0; zm != 0; ++j, zm >>= 1)
      if (zm & 1u) acc += a[std::size_t(4 + j)];
    return acc <= rhs;
  }
};

inline LinIneq make_row(Family f, FamilyParams p, Mask q, int n, long long d0, long long d1, long long d2, long long d3,
                        Mask zplus, Mask zminus, long long rhs) {
  LinIneq r;
  r.family = f;
  r.params = p;
  r.qmask = q;
  r.a.assign(std::size_t(4 + n), 0);
  r.a[0] = d0; r.a[1] = d1; r.a[2] = d2; r.a[3] = d3;
  for (int j = 0; j < n; ++j) {
    if ((zplus >> j) & 1) r.a[std::size_t(4 + j)] += 1;
    if ((zminus >> j) & 1) r.a[std::size_t(4 + j)] -= 1;
  }
  r.rhs = rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Base system: the simplex rows on delta plus the strengthened linearization.

inline std::vector<LinIneq> base_system(const Instance& inst) {
  std::vector<LinIneq> rows;
  int n = inst.n;
  auto P = [](int i, int j = 0) { FamilyParams p; p.i = i; p.j = j; return p; };

  rows.push_back(make_row(Family::T1a, {}, 0, n, 1, 0, 0, 0, 0, 0, 1));   // delta0 <= 1
  rows.push_back(make_row(Family::T1b, {}, 0, n, 0, 0, 0, -1, 0, 0, 0));  // delta3 >= 0
  rows.push_back(make_row(Family::T1c, {}, 0, n, 0, -1, 0, 1, 0, 0, 0));  // delta3 <= delta1
  rows.push_back(make_row(Family::T1d, {}, 0, n, 0, 0, -1, 1, 0, 0, 0));  // delta3 <= delta2
  rows.push_back(make_row(Family::T1e, {}, 0, n, -1, 1, 1, -1, 0, 0, 0)); // delta1+delta2 <= delta0+delta3

  rows.push_back(make_row(Family::SL1, {}, 0, n, 0, 0, 0, 0, inst.full_mask(), 0, inst.u));
  for (int i = 0; i <= 2; ++i) {
    Mask s = (i == 0) ? inst.s0 : (i == 1 ? inst.s1 : inst.s2);
    long long d[3] = {0, 0, 0};
    d[i] = 1;
    for (int j : mask_indices(s))
      rows.push_back(make_row(Family::SL2, P(i, j), 0, n, d[0], d[1], d[2], 0, Mask(1) << (j - 1), 0, 1));
  }
  for (int j = 1; j <= n; ++j)
    rows.push_back(make_row(Family::SL3, P(0, j), 0, n, 0, 0, 0, 0, Mask(1) << (j - 1), 0, 1));
  // 1 - delta0 - sum_{S0} z <= 0; with empty S0 this pins delta0 = 1.
  rows.push_back(make_row(Family::SL4, {}, 0, n, -1, 0, 0, 0, 0, inst.s0, -1));
  for (int i = 1; i <= 2; ++i) {
    Mask s = (i == 1 ? inst.s1 : inst.s2) & ~inst.s0;
    rows.push_back(make_row(Family::SL5, P(i), 0, n, 1, i == 1 ? -1 : 0, i == 2 ? -1 : 0, 0, 0, s, 0));
  }
  for (int j = 1; j <= n; ++j)
    rows.push_back(make_row(Family::SL6, P(0, j), 0, n, 0, 0, 0, 0, 0, Mask(1) << (j - 1), 0));
  rows.push_back(make_row(Family::SL7, {}, 0, n, 0, 0, 0, 0, 0, inst.full_mask(), -inst.l));
  return rows;
}

// ---------------------------------------------------------------------------
// The ten exponential families over a generating set Q. Side conditions gate
// applicability; an unsatisfied condition yields nullopt, bad params throw.

inline void check_family_params(Family f, const FamilyParams& p) {
  switch (f) {
    case Family::U3: case Family::L3:
      if (!((p.i == 1 && p.k == 2) || (p.i == 2 && p.k == 1)))
        throw Error(ErrorKind::bad_params, "params: (i,k) must be (1,2) or (2,1)");
      break;
    case Family::U4: case Family::L4: case Family::R3u: case Family::R3l:
      if (p.i != 1 && p.i != 2) throw Error(ErrorKind::bad_params, "params: i must be 1 or 2");
      break;
    default:
      break;
  }
}

inline std::optional<LinIneq> family_ineq(const Instance& inst, Family f, FamilyParams p, Mask q) {
  check_family_params(f, p);
  if ((q & ~inst.full_mask()) != 0) throw Error(ErrorKind::bad_params, "Q: index outside 1..n");
  int n = inst.n, l = inst.l, u = inst.u;
  Mask s0 = inst.s0, s3 = inst.s3;
  Mask si = (p.i == 2) ? inst.s2 : inst.s1;
  Mask sk = (p.k == 2) ? inst.s2 : inst.s1;
  auto cnt = [](Mask m) { return (long long)mask_count(m); };
  long long q_minus_s0 = cnt(q & ~s0);
  long long q_union_s0 = cnt(q | s0);

  switch (f) {
    case Family::U1: {
      if (q_minus_s0 > u) return std::nullopt;
      return make_row(f, p, q, n, u - q_minus_s0, cnt(q & inst.s1 & ~s0), cnt(q & inst.s2 & ~s0), 0, q, 0, u);
    }
    case Family::U2:
      return make_row(f, p, q, n, 0, u - cnt(q & ~inst.s1), u - cnt(q & ~inst.s2), q_minus_s0 - u, q, 0, u);
    case Family::U3: {
      // Needs Q disjoint from S_i \ S_0: at the pattern delta = (1,0,0,0) the
      // lhs is sum_Q z + 1, and a z hitting S_i \ S_0 outside Q caps the sum
      // at u - 1. Without this the row cuts off feasible points.
      if ((q & si & ~s0) != 0) return std::nullopt;
      long long dk = u - 1 - cnt(q & ~sk);
      return make_row(f, p, q, n, 1, p.i == 1 ? -1 : (p.k == 1 ? dk : 0), p.i == 2 ? -1 : (p.k == 2 ? dk : 0), 1, q, 0, u);
    }
    case Family::U4: {
      long long qi = cnt(q & ~si);
      if (qi > u) return std::nullopt;
      long long di = u - qi, d3 = cnt(q & s3 & ~si);
      return make_row(f, p, q, n, 0, p.i == 1 ? di : 0, p.i == 2 ? di : 0, d3, q, 0, u);
    }
    case Family::U5: {
      long long q3 = cnt(q & ~s3);
      if (q3 > u) return std::nullopt;
      return make_row(f, p, q, n, 0, 0, 0, u - q3, q, 0, u);
    }
    case Family::L1: {
      if (q_union_s0 < n - l) return std::nullopt;
      return make_row(f, p, q, n, l + q_union_s0 - n, cnt(inst.s1 & ~s0 & ~q), cnt(inst.s2 & ~s0 & ~q), 0, 0, q, 0);
    }
    case Family::L2:
      return make_row(f, p, q, n, 0, l + cnt(q | inst.s1) - n, l + cnt(q | inst.s2) - n, n - q_union_s0 - l, 0, q, 0);
    case Family::L3: {
      // Mirror condition: Q must contain S_i \ S_0 so that at delta =
      // (1,0,0,0) some z_j with j in Q is forced on, giving -sum_Q z <= -1.
      if ((si & ~s0 & ~q) != 0) return std::nullopt;
      long long dk = l + cnt(q | sk) - 1 - n;
      return make_row(f, p, q, n, 1, p.i == 1 ? -1 : (p.k == 1 ? dk : 0), p.i == 2 ? -1 : (p.k == 2 ? dk : 0), 1, 0, q, 0);
    }
    case Family::L4: {
      long long qi = cnt(q | si);
      if (qi < n - l) return std::nullopt;
      long long di = l + qi - n, d3 = cnt(s3 & ~si & ~q);
      return make_row(f, p, q, n, 0, p.i == 1 ? di : 0, p.i == 2 ? di : 0, d3, 0, q, 0);
    }
    case Family::L5: {
      long long q3 = cnt(q | s3);
      if (q3 < n - l) return std::nullopt;
      return make_row(f, p, q, n, 0, 0, 0, l + q3 - n, 0, q, 0);
    }
    default:
      throw Error(ErrorKind::bad_params, "family: not one of the ten Q-generated families");
  }
}

struct FamilyColumn {
  Family family;
  FamilyParams params;
};

// The 14 parameterized columns in canonical order.
inline const std::vector<FamilyColumn>& family_columns() {
  static const std::vector<FamilyColumn> cols = [] {
    std::vector<FamilyColumn> c;
    auto ik = [](int i, int k) { FamilyParams p; p.i = i; p.k = k; return p; };
    auto just_i = [](int i) { FamilyParams p; p.i = i; return p; };
    c.push_back({Family::U1, {}});
    c.push_back({Family::U2, {}});
    c.push_back({Family::U3, ik(1, 2)});
    c.push_back({Family::U3, ik(2, 1)});
    c.push_back({Family::U4, just_i(1)});
    c.push_back({Family::U4, just_i(2)});
    c.push_back({Family::U5, {}});
    c.push_back({Family::L1, {}});
    c.push_back({Family::L2, {}});
    c.push_back({Family::L3, ik(1, 2)});
    c.push_back({Family::L3, ik(2, 1)});
    c.push_back({Family::L4, just_i(1)});
    c.push_back({Family::L4, just_i(2)});
    c.push_back({Family::L5, {}});
    return c;
  }();
  return cols;
}

// Base system plus every applicable (family, params, Q) row, deduplicated on
// the full coefficient vector; the first generator in canonical order wins.
inline std::vector<LinIneq> all_family_ineqs(const Instance& inst, int cap = 12) {
  if (inst.n > cap) throw Error(ErrorKind::cap_exceeded, "n: generation cap " + std::to_string(cap) + " exceeded");
  std::vector<LinIneq> rows = base_system(inst);
  std::set<std::pair<std::vector<long long>, long long>> seen;
  for (const auto& r : rows) seen.insert({r.a, r.rhs});
  Mask end = Mask(1) << inst.n;
  for (const auto& col : family_columns()) {
    for (Mask q = 0; q < end; ++q) {
      auto row = family_ineq(inst, col.family, col.params, q);
      if (!row) continue;
      if (seen.insert({row->a, row->rhs}).second) rows.push_back(*row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Redundant companions: valid rows implied by small generator sets; kept as
// implication-test subjects, never shipped in the hull description.

inline std::optional<LinIneq> redundant_family(const Instance& inst, Family f, FamilyParams p, Mask q) {
  check_family_params(f, p);
  if ((q & ~inst.full_mask()) != 0) throw Error(ErrorKind::bad_params, "Q: index outside 1..n");
  int n = inst.n, l = inst.l, u = inst.u;
  Mask s0 = inst.s0, s3 = inst.s3;
  Mask si = (p.i == 2) ? inst.s2 : inst.s1;
  auto cnt = [](Mask m) { return (long long)mask_count(m); };

  switch (f) {
    case Family::R1u:
      return make_row(f, p, q, n, cnt(q & s0), cnt(q & inst.s1 & ~s0), cnt(q & inst.s2 & ~s0), 0, q, 0, cnt(q));
    case Family::R2u:
      return make_row(f, p, q, n, 0, 0, 0, 0, q, 0, u);
    case Family::R3u:
      return make_row(f, p, q, n, 1, p.i == 1 ? -1 : 0, p.i == 2 ? -1 : 0, 0, q & ~(si & ~s0), 0, u);
    case Family::R4u: {
      long long q3 = cnt(q & ~s3);
      if (q3 > u) return std::nullopt;
      return make_row(f, p, q, n, 2, -1, -1, u - q3, q & ~(s3 & ~s0), 0, u);
    }
    case Family::R5u:
      return make_row(f, p, q, n, 2, -1, -1, 0, q & ~(s3 & ~s0), 0, u);
    case Family::R6u: {
      long long q3 = cnt(q & ~s3);
      if (q3 > u) return std::nullopt;
      return make_row(f, p, q, n, 1, -1, -1, u - q3, q & ~s3, 0, u - 1);
    }
    case Family::R1l:
      return make_row(f, p, q, n, cnt(s0 & ~q), cnt(inst.s1 & ~s0 & ~q), cnt(inst.s2 & ~s0 & ~q), 0, 0, q, n - cnt(q) - l);
    case Family::R2l:
      return make_row(f, p, q, n, 0, 0, 0, 0, 0, q, 0);
    case Family::R3l:
      return make_row(f, p, q, n, 1, p.i == 1 ? -1 : 0, p.i == 2 ? -1 : 0, 0, 0, q | (si & ~s0), 0);
    case Family::R4l: {
      long long q3 = cnt(q | s3);
      if (q3 < n - l) return std::nullopt;
      return make_row(f, p, q, n, 2, -1, -1, l + q3 - n, 0, q | (s3 & ~s0), 0);
    }
    case Family::R5l:
      return make_row(f, p, q, n, 2, -1, -1, 0, 0, q | (s3 & ~s0), 0);
    case Family::R6l: {
      long long q3 = cnt(q | s3);
      if (q3 < n - l) return std::nullopt;
      return make_row(f, p, q, n, 1, -1, -1, l + q3 - n, 0, q | s3, -1);
    }
    default:
      throw Error(ErrorKind::bad_params, "family: not one of the twelve redundant families");
  }
}

// ---------------------------------------------------------------------------
// Type-2 rows: alpha = sign * indicator(T); (gamma, beta) chosen so the row is
// tight on every fiber over the delta-projection. Closed forms exist when the
// projection has all five patterns; otherwise undetermined components are
// pinned to zero and flagged.

struct TypeTwoRow {
  LinIneq row;
  bool underdetermined = false;
  std::vector<int> pinned; // delta indices whose beta was pinned to 0
};

namespace detail {
inline long long pos(long long v) { return v > 0 ? v : 0; }

// max of sign * sum_{T} z over the fiber of one binary delta pattern, by
// enumeration; nullopt when the fiber is empty.
inline std::optional<long long> fiber_optimum(const Instance& inst, Mask t, int sign, std::uint8_t dmask, int cap) {
  std::optional<long long> best;
  for (const auto& bp : enumerate_points(inst, cap)) {
    if (bp.dmask != dmask) continue;
    long long v = sign * (long long)mask_count(bp.zmask & t);
    if (!best || v > *best) best = v;
  }
  return best;
}
} // namespace detail

// Enumeration path: fiber optima by brute force; empty fibers drop their
// equation and the corresponding beta is pinned to zero.
inline TypeTwoRow type2_enumerated(const Instance& inst, Mask t, int sign, int cap = -1) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::bad_params, "sign: must be +1 or -1");
  auto m0000 = detail::fiber_optimum(inst, t, sign, 0x0, cap);
  auto m1000 = detail::fiber_optimum(inst, t, sign, 0x1, cap);
  auto m1100 = detail::fiber_optimum(inst, t, sign, 0x3, cap);
  auto m1010 = detail::fiber_optimum(inst, t, sign, 0x5, cap);
  auto m1111 = detail::fiber_optimum(inst, t, sign, 0xF, cap);

  TypeTwoRow out;
  long long g, beta0 = 0, beta1 = 0, beta2 = 0, beta3 = 0;
  // gamma anchored at the lowest available pattern in the chain.
  if (m0000) {
    g = *m0000;
    if (m1000) beta0 = g - *m1000; else { out.pinned.push_back(0); out.underdetermined = true; }
  } else {
    out.pinned.push_back(0);
    out.underdetermined = true;
    if (!m1000) throw Error(ErrorKind::infeasible_point, "T: no feasible point with delta0 = 1");
    g = *m1000; // beta0 pinned to 0, so gamma - beta0 = gamma
  }
  long long base1 = g - beta0;
  if (m1100) beta1 = base1 - *m1100; else { out.pinned.push_back(1); out.underdetermined = true; }
  if (m1010) beta2 = base1 - *m1010; else { out.pinned.push_back(2); out.underdetermined = true; }
  if (m1111) beta3 = base1 - beta1 - beta2 - *m1111; else { out.pinned.push_back(3); out.underdetermined = true; }
  FamilyParams p;
  p.sign = sign;
  out.row = make_row(Family::TY2, p, t, inst.n, beta0, beta1, beta2, beta3, sign > 0 ? t : 0, sign > 0 ? 0 : t, g);
  return out;
}

inline TypeTwoRow type2_from_T(const Instance& inst, Mask t, int sign, int cap = -1) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::bad_params, "sign: must be +1 or -1");
  if ((t & ~inst.full_mask()) != 0) throw Error(ErrorKind::bad_params, "T: index out of range");
  long long n = inst.n, l = inst.l, u = inst.u;
  auto cnt = [](Mask m) { return (long long)mask_count(m); };

  // Values of max alpha.z on the fibers of the five patterns, in the order
  // (1,1,1,1), (1,1,0,0), (1,0,1,0), (1,0,0,0), (0,0,0,0) -> rhs chain.
  // All five delta patterns occur exactly when the instance is proper,
  // non-nested and u >= 2; only then do the closed forms apply.
  bool closed_form = inst.proper && !inst.nested && inst.u >= 2;
  if (!closed_form) return type2_enumerated(inst, t, sign, cap);

  long long g, gb0, gb01, gb02, gb0123;
  if (sign == 1) {
    long long t0 = (t & inst.s0) == 0 ? 1 : 0;
    long long t1 = (t & inst.s1 & ~inst.s0) == 0 ? 1 : 0;
    long long t2 = (t & inst.s2 & ~inst.s0) == 0 ? 1 : 0;
    g = std::min(u - t0, cnt(t));
    gb0 = std::min(u - t1 - t2, cnt(t & ~inst.s0));
    gb01 = std::min(u - t2, cnt(t & ~inst.s1));
    gb02 = std::min(u - t1, cnt(t & ~inst.s2));
    gb0123 = std::min(u, cnt(t & ~inst.s3));
  } else {
    long long t0 = (inst.s0 & ~t) == 0 ? 1 : 0;
    long long t1 = ((inst.s1 & ~inst.s0) & ~t) == 0 ? 1 : 0;
    long long t2 = ((inst.s2 & ~inst.s0) & ~t) == 0 ? 1 : 0;
    g = -t0 - detail::pos(l + cnt(t) - n - t0);
    gb0 = -t1 - t2 - detail::pos(l + cnt(t | inst.s0) - n - t1 - t2);
    gb01 = -t2 - detail::pos(l + cnt(t | inst.s1) - n - t2);
    gb02 = -t1 - detail::pos(l + cnt(t | inst.s2) - n - t1);
    gb0123 = -detail::pos(l + cnt(t | inst.s3) - n);
  }
  TypeTwoRow out;
  FamilyParams p;
  p.sign = sign;
  out.row = make_row(Family::TY2, p, t, inst.n, g - gb0, gb0 - gb01, gb0 - gb02, gb01 + gb02 - gb0 - gb0123,
                     sign > 0 ? t : 0, sign > 0 ? 0 : t, g);
  return out;
}

inline TypeTwoRow type2_from_T(const Instance& inst, const std::vector<int>& t_idx, int sign, int cap = -1) {
  return type2_from_T(inst, mask_from_indices(t_idx, inst.n, "T"), sign, cap);
}

// ---------------------------------------------------------------------------
// Machine row format: family;params;Q;d0,d1,d2,d3;z1,..,zn;rhs

inline std::string params_to_string(Family f, const FamilyParams& p) {
  switch (f) {
    case Family::U3: case Family::L3: return std::to_string(p.i) + "," + std::to_string(p.k);
    case Family::U4: case Family::L4: case Family::R3u: case Family::R3l: case Family::SL5:
      return std::to_string(p.i);
    case Family::SL2: return std::to_string(p.i) + ";j=" + std::to_string(p.j); // see row_to_line
    case Family::TY2: return p.sign > 0 ? "+" : "-";
    default: return "";
  }
}

inline std::string row_to_line(const LinIneq& r) {
  std::string params;
  switch (r.family) {
    case Family::U3: case Family::L3: params = std::to_string(r.params.i) + "," + std::to_string(r.params.k); break;
    case Family::U4: case Family::L4: case Family::R3u: case Family::R3l: case Family::SL5:
      params = std::to_string(r.params.i); break;
    case Family::SL2: params = std::to_string(r.params.i) + "." + std::to_string(r.params.j); break;
    case Family::SL3: case Family::SL6: params = std::to_string(r.params.j); break;
    case Family::TY2: params = r.params.sign > 0 ? "+" : "-"; break;
    default: break;
  }
  std::string out = std::string(family_name(r.family)) + ";" + params + ";" + mask_to_string(r.qmask) + ";";
  for (int i = 0; i < 4; ++i) out += (i ? "," : "") + std::to_string(r.a[std::size_t(i)]);
  out += ";";
  for (int j = 0; j < r.n(); ++j) out += (j ? "," : "") + std::to_string(r.a[std::size_t(4 + j)]);
  out += ";" + std::to_string(r.rhs);
  return out;
}

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}
} // namespace detail

inline LinIneq row_from_line(const std::string& line) {
  auto fields = detail::split(line, ';');
  if (fields.size() != 6) throw Error(ErrorKind::parse, "row line: expected 6 ';'-separated fields");
  auto fam = family_from_name(fields[0]);
  if (!fam) throw Error(ErrorKind::parse, "row line: unknown family '" + fields[0] + "'");
  LinIneq r;
  r.family = *fam;
  const std::string& ps = fields[1];
  if (!ps.empty()) {
    if (ps == "+") r.params.sign = 1;
    else if (ps == "-") r.params.sign = -1;
    else if (ps.find(',') != std::string::npos) {
      auto parts = detail::split(ps, ',');
      r.params.i = std::atoi(parts[0].c_str());
      r.params.k = std::atoi(parts[1].c_str());
    } else if (ps.find('.') != std::string::npos) {
      auto parts = detail::split(ps, '.');
      r.params.i = std::atoi(parts[0].c_str());
      r.params.j = std::atoi(parts[1].c_str());
    } else if (r.family == Family::SL3 || r.family == Family::SL6) {
      r.params.j = std::atoi(ps.c_str());
    } else {
      r.params.i = std::atoi(ps.c_str());
    }
  }
  std::string q = fields[2];
  if (q.size() < 2 || q.front() != '{' || q.back() != '}') throw Error(ErrorKind::parse, "row line: Q must be {..}");
  q = q.substr(1, q.size() - 2);
  std::vector<int> qi;
  if (!q.empty())
    for (const auto& tok : detail::split(q, ',')) qi.push_back(std::atoi(tok.c_str()));
  auto dparts = detail::split(fields[3], ',');
  auto zparts = detail::split(fields[4], ',');
  if (dparts.size() != 4) throw Error(ErrorKind::parse, "row line: expected 4 delta coefficients");
  int n = int(zparts.size());
  r.qmask = mask_from_indices(qi, n, "Q");
  r.a.assign(std::size_t(4 + n), 0);
  for (int i = 0; i < 4; ++i) r.a[std::size_t(i)] = std::atoll(dparts[std::size_t(i)].c_str());
  for (int j = 0; j < n; ++j) r.a[std::size_t(4 + j)] = std::atoll(zparts[std::size_t(j)].c_str());
  r.rhs = std::atoll(fields[5].c_str());
  return r;
}

// Human-readable algebraic rendering, e.g. "z1 + z4 + 2 d3 <= 3".
inline std::string row_to_text(const LinIneq& r) {
  std::string lhs;
  auto term = [&lhs](long long c, const std::string& v) {
    if (c == 0) return;
    if (lhs.empty()) {
      if (c == -1) lhs += "-";
      else if (c != 1) lhs += std::to_string(c) + " ";
    } else {
      lhs += (c > 0) ? " + " : " - ";
      long long m = c > 0 ? c : -c;
      if (m != 1) lhs += std::to_string(m) + " ";
    }
    lhs += v;
  };
  for (int i = 0; i < 4; ++i) term(r.a[std::size_t(i)], "d" + std::to_string(i));
  for (int j = 0; j < r.n(); ++j) term(r.a[std::size_t(4 + j)], "z" + std::to_string(j + 1));
  if (lhs.empty()) lhs = "0";
  return lhs + " <= " + std::to_string(r.rhs);
}

} // namespace ccms2

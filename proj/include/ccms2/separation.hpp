#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ineq.hpp"

namespace ccms2 {

// Per-index gain profile of one family column at a fractional point. For any
// Q admitted by the rule fields, const_term + sum_{j in Q} pi[j-1] equals the
// lhs of the generated row at the point; the rule fields mirror the side
// conditions of family_ineq exactly.
struct FamilyScores {
  Family family = Family::U1;
  FamilyParams params;
  long long rhs = 0;
  Rat const_term;
  std::vector<Rat> pi;   // score of index j at pi[j-1]
  Mask free_zone = 0;    // indices exempt from the outside cap / fill quota
  Mask excluded = 0;     // indices no admissible Q may contain
  Mask mandatory = 0;    // indices every admissible Q must contain
  int max_outside = -1;  // cap on |Q \ free_zone|, -1 when uncapped
  int min_outside = 0;   // floor on |Q \ free_zone|

  bool admits(Mask q) const {
    if ((q & excluded) != 0) return false;
    if ((mandatory & ~q) != 0) return false;
    int outside = mask_count(q & ~free_zone);
    if (max_outside >= 0 && outside > max_outside) return false;
    return outside >= min_outside;
  }

  Rat lhs(Mask q) const {
    Rat acc = const_term;
    for (int j = 0; q != 0; ++j, q >>= 1)
      if (q & 1u) acc += pi[std::size_t(j)];
    return acc;
  }
};

struct SeparationCut {
  LinIneq ineq;
  Rat violation; // recomputed from the row, always > 0
};

namespace detail {

inline void require_point_dim(const Instance& inst, const Point& pt) {
  if (int(pt.z.size()) != inst.n)
    throw Error(ErrorKind::bad_params, "point: z has " + std::to_string(pt.z.size()) + " coordinates, instance needs " + std::to_string(inst.n));
}

} // namespace detail

inline FamilyScores scores(const Instance& inst, Family f, FamilyParams p, const Point& pt) {
  check_family_params(f, p);
  detail::require_point_dim(inst, pt);
  int n = inst.n, l = inst.l, u = inst.u;
  Mask s0 = inst.s0, s3 = inst.s3;
  Mask si = (p.i == 2) ? inst.s2 : inst.s1;
  Mask sk = (p.k == 2) ? inst.s2 : inst.s1;
  const Rat& d0 = pt.delta[0];
  const Rat& d1 = pt.delta[1];
  const Rat& d2 = pt.delta[2];
  const Rat& d3 = pt.delta[3];
  Rat di = (p.i == 2) ? d2 : d1;
  Rat dk = (p.k == 2) ? d2 : d1;
  auto cnt = [](Mask m) { return (long long)mask_count(m); };

  FamilyScores fs;
  fs.family = f;
  fs.params = p;
  fs.pi.resize(std::size_t(n));

  // Gain of adding index j: its own z plus the drift of every count-dependent
  // delta coefficient. The four zones S0, S1\S0, S2\S0, J\S3 settle the drift.
  auto zone_scores = [&](Rat in_s0, Rat in_s1only, Rat in_s2only, Rat outside) {
    for (int j = 0; j < n; ++j) {
      Mask bit = Mask(1) << j;
      Rat shift = (bit & s0) ? in_s0
                : (bit & inst.s1) ? in_s1only
                : (bit & inst.s2) ? in_s2only
                : outside;
      fs.pi[std::size_t(j)] = pt.z[std::size_t(j)] + shift;
    }
  };
  auto zone_scores_neg = [&](Rat in_s0, Rat in_s1only, Rat in_s2only, Rat outside) {
    for (int j = 0; j < n; ++j) {
      Mask bit = Mask(1) << j;
      Rat shift = (bit & s0) ? in_s0
                : (bit & inst.s1) ? in_s1only
                : (bit & inst.s2) ? in_s2only
                : outside;
      fs.pi[std::size_t(j)] = shift - pt.z[std::size_t(j)];
    }
  };

  switch (f) {
    case Family::U1:
      fs.rhs = u;
      fs.const_term = Rat(u) * d0;
      zone_scores(Rat(0), d1 - d0, d2 - d0, -d0);
      fs.free_zone = s0;
      fs.max_outside = u;
      break;
    case Family::U2:
      fs.rhs = u;
      fs.const_term = Rat(u) * (d1 + d2 - d3);
      zone_scores(Rat(0), d3 - d2, d3 - d1, d3 - d1 - d2);
      break;
    case Family::U3:
      fs.rhs = u;
      fs.const_term = d0 - di + Rat(u - 1) * dk + d3;
      if (p.i == 1) zone_scores(Rat(0), -dk, Rat(0), -dk);
      else          zone_scores(Rat(0), Rat(0), -dk, -dk);
      fs.excluded = si & ~s0;
      break;
    case Family::U4:
      fs.rhs = u;
      fs.const_term = Rat(u) * di;
      if (p.i == 1) zone_scores(Rat(0), Rat(0), d3 - di, -di);
      else          zone_scores(Rat(0), d3 - di, Rat(0), -di);
      fs.free_zone = si;
      fs.max_outside = u;
      break;
    case Family::U5:
      fs.rhs = u;
      fs.const_term = Rat(u) * d3;
      zone_scores(Rat(0), Rat(0), Rat(0), -d3);
      fs.free_zone = s3;
      fs.max_outside = u;
      break;
    case Family::L1:
      fs.const_term = Rat(l + cnt(s0) - n) * d0 + Rat(cnt(inst.s1 & ~s0)) * d1 + Rat(cnt(inst.s2 & ~s0)) * d2;
      zone_scores_neg(Rat(0), d0 - d1, d0 - d2, d0);
      fs.free_zone = s0;
      fs.min_outside = std::max(0, n - l - mask_count(s0));
      break;
    case Family::L2:
      fs.const_term = Rat(l + cnt(inst.s1) - n) * d1 + Rat(l + cnt(inst.s2) - n) * d2 + Rat(n - cnt(s0) - l) * d3;
      zone_scores_neg(Rat(0), d2 - d3, d1 - d3, d1 + d2 - d3);
      break;
    case Family::L3:
      fs.const_term = d0 - di + Rat(l + cnt(sk) - 1 - n) * dk + d3;
      if (p.i == 1) zone_scores_neg(Rat(0), dk, Rat(0), dk);
      else          zone_scores_neg(Rat(0), Rat(0), dk, dk);
      fs.mandatory = si & ~s0;
      break;
    case Family::L4:
      fs.const_term = Rat(l + cnt(si) - n) * di + Rat(cnt(s3 & ~si)) * d3;
      if (p.i == 1) zone_scores_neg(Rat(0), Rat(0), di - d3, di);
      else          zone_scores_neg(Rat(0), di - d3, Rat(0), di);
      fs.free_zone = si;
      fs.min_outside = std::max(0, n - l - mask_count(si));
      break;
    case Family::L5:
      fs.const_term = Rat(l + cnt(s3) - n) * d3;
      zone_scores_neg(Rat(0), Rat(0), Rat(0), d3);
      fs.free_zone = s3;
      fs.min_outside = std::max(0, n - l - mask_count(s3));
      break;
    default:
      throw Error(ErrorKind::bad_params, "family: not one of the ten Q-generated families");
  }
  return fs;
}

// Greedy maximizer of const_term + sum_Q pi over admissible Q. Optimal because
// the objective is additive and each rule is a plain count bound on the indices
// outside the free zone: take every positive score where inclusion is free, the
// best positive scores under a cap, and pad a fill quota with the least
// damaging indices. Ties go to the lowest index.
inline Mask greedy_q(const FamilyScores& fs) {
  int n = int(fs.pi.size());
  Mask q = fs.mandatory;
  std::vector<int> outside; // 0-based candidates subject to the cap / quota
  for (int j = 0; j < n; ++j) {
    Mask bit = Mask(1) << j;
    if ((bit & fs.excluded) || (bit & fs.mandatory)) continue;
    if (bit & fs.free_zone) {
      if (fs.pi[std::size_t(j)] > Rat(0)) q |= bit;
    } else {
      outside.push_back(j);
    }
  }
  std::stable_sort(outside.begin(), outside.end(),
                   [&](int a, int b) { return fs.pi[std::size_t(a)] > fs.pi[std::size_t(b)]; });
  int taken = 0;
  for (int j : outside) {
    bool want = fs.pi[std::size_t(j)] > Rat(0) && (fs.max_outside < 0 || taken < fs.max_outside);
    if (!want && taken >= fs.min_outside) break; // scores only fall from here
    q |= Mask(1) << j;
    ++taken;
  }
  return q;
}

inline std::optional<SeparationCut> separate_family(const Instance& inst, Family f, FamilyParams p, const Point& pt) {
  FamilyScores fs = scores(inst, f, p, pt);
  Mask q = greedy_q(fs);
  auto row = family_ineq(inst, f, p, q);
  if (!row) throw Error(ErrorKind::bad_params, "separation: greedy Q rejected by its own family rule");
  Rat viol = row->violation(pt);
  if (!(viol > Rat(0))) return std::nullopt;
  return SeparationCut{*row, viol};
}

// Exhaustive oracle over all admissible Q; the greedy must match its violation.
inline std::optional<SeparationCut> brute_force_separate(const Instance& inst, Family f, FamilyParams p, const Point& pt) {
  if (inst.n > 16) throw Error(ErrorKind::cap_exceeded, "n: brute force separation capped at 16");
  detail::require_point_dim(inst, pt);
  std::optional<SeparationCut> best;
  Mask best_lex = 0;
  Mask end = Mask(1) << inst.n;
  for (Mask q = 0; q < end; ++q) {
    auto row = family_ineq(inst, f, p, q);
    if (!row) continue;
    Rat viol = row->violation(pt);
    if (!(viol > Rat(0))) continue;
    Mask lex = lex_mask(q, inst.n);
    if (!best || viol > best->violation || (viol == best->violation && lex < best_lex)) {
      best = SeparationCut{*row, viol};
      best_lex = lex;
    }
  }
  return best;
}

// Violated base rows plus the most violated member of each family column,
// sorted by violation descending; an empty result certifies the point against
// the whole description. Order is made deterministic by the full row identity.
inline std::vector<SeparationCut> separate_all(const Instance& inst, const Point& pt) {
  detail::require_point_dim(inst, pt);
  std::vector<SeparationCut> cuts;
  for (const auto& r : base_system(inst)) {
    Rat v = r.violation(pt);
    if (v > Rat(0)) cuts.push_back(SeparationCut{r, v});
  }
  for (const auto& col : family_columns()) {
    auto c = separate_family(inst, col.family, col.params, pt);
    if (c) cuts.push_back(*c);
  }
  std::stable_sort(cuts.begin(), cuts.end(), [&](const SeparationCut& a, const SeparationCut& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.ineq.family != b.ineq.family) return a.ineq.family < b.ineq.family;
    const FamilyParams &pa = a.ineq.params, &pb = b.ineq.params;
    if (pa.i != pb.i) return pa.i < pb.i;
    if (pa.k != pb.k) return pa.k < pb.k;
    if (pa.j != pb.j) return pa.j < pb.j;
    return lex_mask(a.ineq.qmask, inst.n) < lex_mask(b.ineq.qmask, inst.n);
  });
  return cuts;
}

} // namespace ccms2

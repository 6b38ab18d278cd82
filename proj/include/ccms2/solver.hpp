#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lp.hpp"
#include "separation.hpp"

namespace ccms2 {

enum class SolveStatus { optimal, infeasible, round_cap };

inline const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::round_cap: return "round_cap";
  }
  return "?";
}

struct RoundLog {
  int round = 0;
  Rat lp_value;
  long long cuts = 0;
};

// Outcome of a cutting-plane run. On optimal status the point is binary,
// feasible for the instance, and value = objective . point + offset.
struct SolveReport {
  SolveStatus status = SolveStatus::optimal;
  Rat value;
  Rat offset; // nonzero only for objective transforms that carry a constant
  Point point;
  int rounds = 0;
  std::map<std::string, long long> cuts_by_family;
  long long cuts_total = 0;
  long long lp_calls = 0;
  long long lp_pivots = 0;
  std::vector<RoundLog> trail;
  std::vector<LinIneq> active_rows; // base system plus every pooled cut
};

struct SolveOptions {
  int max_rounds = 10000;
  LPOptions lp;
};

// Row pool with exact dedupe on the full coefficient identity. Rows carry
// their family bookkeeping; the pool only guards against re-adding.
class CutPool {
public:
  explicit CutPool(std::vector<LinIneq> rows = {}) {
    for (auto& r : rows) add(std::move(r));
  }

  bool add(LinIneq r) {
    if (!seen_.insert({r.a, r.rhs}).second) return false;
    rows_.push_back(std::move(r));
    return true;
  }

  const std::vector<LinIneq>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

private:
  std::vector<LinIneq> rows_;
  std::set<std::pair<std::vector<long long>, long long>> seen_;
};

namespace solvedetail {

inline LPRow to_lp_row(const LinIneq& r) {
  LPRow row;
  row.a.reserve(r.a.size());
  for (long long v : r.a) row.a.push_back(Rat(v));
  row.rel = Rel::le;
  row.rhs = Rat(r.rhs);
  return row;
}

inline bool binary_vector(const std::vector<Rat>& v) {
  for (const Rat& x : v)
    if (x != 0 && x != 1) return false;
  return true;
}

inline void count_cut(std::map<std::string, long long>& by_family, long long& total, const LinIneq& r) {
  ++by_family[family_name(r.family)];
  ++total;
}

} // namespace solvedetail

// Binary point recovery by sequential coordinate fixing with the objective
// pinned at `value` as an equality. Coordinates are fixed in ascending index:
// a binary coordinate of the current certified point keeps its value, a
// fractional one tries 0 and falls back to 1. Every trial re-solves with
// separation active, so a kept fixing is witnessed by a point of the hull
// slice. Pinned at the optimal value the slice is a face of an integral
// polytope, which makes each certified point a binary vertex already; the
// 0/1 trials are the safety net for non-vertex inputs. Appended cuts are
// globally valid and stay in the pool.
inline Point purify(const Instance& inst, CutPool& pool, const std::vector<Rat>& c, const Rat& value,
                    SolveReport* stats = nullptr, const LPOptions& lp_opt = {}) {
  int dim = inst.dim();
  if (int(c.size()) != dim) throw Error(ErrorKind::bad_params, "objective: expected 4+n coefficients");

  LPModel m = lp_model(dim, Sense::maximize);
  m.box_all(Rat(0), Rat(1));
  for (const auto& r : pool.rows()) m.rows.push_back(solvedetail::to_lp_row(r));
  m.add_row(c, Rel::eq, value);

  // Feasibility fixpoint of the current bound state: nullopt when the pinned
  // slice is empty, otherwise a point certified against every family.
  auto certify = [&]() -> std::optional<Point> {
    LPResult res = solve(m, lp_opt);
    for (int round = 0;; ++round) {
      if (round > 100000) throw Error(ErrorKind::cap_exceeded, "purify: separation did not converge");
      if (stats) {
        ++stats->lp_calls;
        stats->lp_pivots += res.pivots;
      }
      if (res.status == LPStatus::infeasible) return std::nullopt;
      if (res.status == LPStatus::unbounded)
        throw Error(ErrorKind::unsupported, "purify: internal error, pinned slice unbounded");
      Point p = point_from_vector(inst.n, res.point);
      std::vector<LPRow> fresh;
      for (auto& cut : separate_all(inst, p)) {
        if (!pool.add(cut.ineq)) continue;
        fresh.push_back(solvedetail::to_lp_row(cut.ineq));
        if (stats) solvedetail::count_cut(stats->cuts_by_family, stats->cuts_total, cut.ineq);
      }
      if (fresh.empty()) return p;
      res = resolve_with_rows(m, res, fresh, lp_opt);
    }
  };

  auto fix = [&](int j, const Rat& v) {
    m.lo[std::size_t(j)] = v;
    m.hi[std::size_t(j)] = v;
  };

  auto start = certify();
  if (!start) throw Error(ErrorKind::unsupported, "purify: pinned value is not attained over the pool");
  Point p = *start;
  for (int j = 0; j < dim; ++j) {
    Rat cur = p.coord(j);
    if (cur == 0 || cur == 1) {
      fix(j, cur); // p itself witnesses the tightened slice
      continue;
    }
    fix(j, Rat(0));
    if (auto q = certify()) {
      p = *q;
      continue;
    }
    fix(j, Rat(1));
    auto q = certify();
    if (!q) throw Error(ErrorKind::unsupported, "purify: both fixings infeasible, value was not optimal");
    p = *q;
  }

  if (!is_feasible(inst, p)) throw Error(ErrorKind::unsupported, "purify: internal error, fixed point infeasible");
  Rat got(0);
  for (int j = 0; j < dim; ++j)
    if (c[std::size_t(j)] != 0) got += c[std::size_t(j)] * p.coord(j);
  if (got != value) throw Error(ErrorKind::unsupported, "purify: internal error, value drifted");
  return p;
}

// Cutting-plane optimization of a linear objective over the feasible binary
// set: solve the LP over the active rows, separate at the optimum, append the
// violated rows, repeat. The active pool starts at the base system and only
// ever receives valid rows, so the terminal LP value is the exact optimum and
// the terminal vertex lies in the integral hull; a fractional terminal point
// (impossible for a vertex, defensive) is handed to purify.
inline SolveReport optimize(const Instance& inst, const std::vector<Rat>& c, Sense sense,
                            const SolveOptions& opt = {}) {
  if (int(c.size()) != inst.dim()) throw Error(ErrorKind::bad_params, "objective: expected 4+n coefficients");
  if (opt.max_rounds < 1) throw Error(ErrorKind::bad_params, "max_rounds: must be >= 1");

  SolveReport rep;
  CutPool pool(base_system(inst));

  LPModel m = lp_model(inst.dim(), sense);
  m.objective = c;
  // The base rows confine every coordinate to [0,1]; the lower bounds keep
  // the standard-form build free of artificial-heavy shifted columns.
  for (int j = 0; j < m.num_vars; ++j) m.lo[std::size_t(j)] = Rat(0);
  for (const auto& r : pool.rows()) m.rows.push_back(solvedetail::to_lp_row(r));

  LPResult res = solve(m, opt.lp);
  std::vector<LPRow> fresh;
  for (;;) {
    ++rep.lp_calls;
    rep.lp_pivots += res.pivots;
    ++rep.rounds;
    if (res.status == LPStatus::infeasible) {
      rep.status = SolveStatus::infeasible;
      rep.active_rows = pool.rows();
      return rep;
    }
    if (res.status == LPStatus::unbounded)
      throw Error(ErrorKind::unsupported, "optimize: internal error, base polytope unbounded");

    Point p = point_from_vector(inst.n, res.point);
    fresh.clear();
    long long added = 0;
    auto cuts = separate_all(inst, p);
    for (auto& cut : cuts) {
      // Distinct columns may return identical rows within one batch; a row
      // pooled in an earlier round cannot come back (the point satisfies it).
      if (!pool.add(cut.ineq)) continue;
      fresh.push_back(solvedetail::to_lp_row(cut.ineq));
      solvedetail::count_cut(rep.cuts_by_family, rep.cuts_total, cut.ineq);
      ++added;
    }
    if (!cuts.empty() && added == 0)
      throw Error(ErrorKind::unsupported, "optimize: internal error, violated row already active");
    rep.trail.push_back(RoundLog{rep.rounds, res.value, added});

    if (added == 0) {
      rep.status = SolveStatus::optimal;
      rep.value = res.value;
      rep.point = std::move(p);
      break;
    }
    if (rep.rounds >= opt.max_rounds) {
      rep.status = SolveStatus::round_cap;
      rep.value = res.value; // valid relaxation bound
      rep.point = std::move(p);
      rep.active_rows = pool.rows();
      return rep;
    }
    res = resolve_with_rows(m, res, fresh, opt.lp);
  }

  if (!solvedetail::binary_vector(rep.point.to_vector()) || !is_feasible(inst, rep.point))
    rep.point = purify(inst, pool, c, rep.value, &rep, opt.lp);
  rep.active_rows = pool.rows();

  Rat got(0);
  for (int j = 0; j < inst.dim(); ++j)
    if (c[std::size_t(j)] != 0) got += c[std::size_t(j)] * rep.point.coord(j);
  if (got != rep.value || !is_feasible(inst, rep.point))
    throw Error(ErrorKind::unsupported, "optimize: internal error, terminal point fails the report invariant");
  return rep;
}

// x-space driver: complement to z, optimize, map the point back. The report
// keeps the transformed instance's point and folds the affine offset into the
// value, so value equals the x-space objective at x.
struct XSolveReport {
  SolveReport report;
  XSolution x;
};

inline XSolveReport solve_x_problem(const XPolyProblem& xp, const SolveOptions& opt = {}) {
  XTransform t = from_x_space(xp);
  XSolveReport out;
  out.report = optimize(t.inst, t.objective, t.z_sense, opt);
  out.report.offset = t.offset;
  out.report.value += t.offset;
  if (out.report.status == SolveStatus::optimal) {
    out.x = to_x_solution(xp, t, out.report.point);
    if (out.x.value != out.report.value)
      throw Error(ErrorKind::unsupported, "solve_x: internal error, x-space value mismatch");
  }
  return out;
}

// ---------------------------------------------------------------------------
// General cardinality-constrained instances: m >= 2 monomials delta_i over
// distinct supports. Points live in (delta_1..delta_m, z_1..z_n).

struct GeneralInstance {
  int n = 0;
  std::vector<Mask> sets;
  int l = 0, u = 0;

  int m() const { return int(sets.size()); }
  int dim() const { return m() + n; }
  Mask full_mask() const { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }
};

inline GeneralInstance new_general_instance(int n, const std::vector<std::vector<int>>& sets, int l, int u) {
  if (n < 1 || n > 31) throw Error(ErrorKind::bounds, "n: must be in 1..31, got " + std::to_string(n));
  if (l < 0) throw Error(ErrorKind::bounds, "l: must be >= 0, got " + std::to_string(l));
  if (u < l) throw Error(ErrorKind::bounds, "u: must be >= l, got u=" + std::to_string(u) + ", l=" + std::to_string(l));
  if (u > n) throw Error(ErrorKind::bounds, "u: must be <= n, got u=" + std::to_string(u) + ", n=" + std::to_string(n));
  if (sets.size() < 2) throw Error(ErrorKind::bad_params, "sets: need m >= 2 monomial supports");
  GeneralInstance g;
  g.n = n;
  g.l = l;
  g.u = u;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string field = "S" + std::to_string(i + 1);
    Mask s = mask_from_indices(sets[i], n, field.c_str());
    if (s == 0) throw Error(ErrorKind::degenerate_set, field + ": must be nonempty");
    if (mask_count(s) > n - l)
      throw Error(ErrorKind::forced_zero, "delta" + std::to_string(i + 1) + " is forced to zero: |" + field +
                                              "| > n-l; fix it to 0 and drop the set before modeling");
    for (std::size_t k = 0; k < i; ++k)
      if (g.sets[k] == s)
        throw Error(ErrorKind::degenerate_set, field + ": duplicates S" + std::to_string(k + 1));
    g.sets.push_back(s);
  }
  return g;
}

struct GeneralBinaryPoint {
  Mask zmask = 0;
  Mask dmask = 0; // bit i-1 carries delta_i

  bool delta_bit(int i1) const { return (dmask >> (i1 - 1)) & 1; }
  bool z_bit(int j1) const { return (zmask >> (j1 - 1)) & 1; }
};

inline Mask general_delta_mask(const GeneralInstance& g, Mask zmask) {
  Mask d = 0;
  for (int i = 0; i < g.m(); ++i)
    if ((zmask & g.sets[std::size_t(i)]) == 0) d |= Mask(1) << i;
  return d;
}

inline std::vector<GeneralBinaryPoint> enumerate_general_points(const GeneralInstance& g, int cap = -1) {
  if (cap < 0) cap = enum_cap_default();
  if (g.n > cap) throw Error(ErrorKind::cap_exceeded, "n: enumeration cap " + std::to_string(cap) + " exceeded (n=" + std::to_string(g.n) + ")");
  std::vector<GeneralBinaryPoint> out;
  Mask end = Mask(1) << g.n;
  for (Mask raw = 0; raw < end; ++raw) {
    Mask zm = lex_mask(raw, g.n);
    int card = mask_count(zm);
    if (card < g.l || card > g.u) continue;
    out.push_back(GeneralBinaryPoint{zm, general_delta_mask(g, zm)});
  }
  return out;
}

inline std::vector<Rat> general_point_vector(const GeneralInstance& g, const GeneralBinaryPoint& bp) {
  std::vector<Rat> v(std::size_t(g.dim()), Rat(0));
  for (int i = 1; i <= g.m(); ++i)
    if (bp.delta_bit(i)) v[std::size_t(i - 1)] = 1;
  for (int j = 1; j <= g.n; ++j)
    if (bp.z_bit(j)) v[std::size_t(g.m() + j - 1)] = 1;
  return v;
}

inline Rat general_objective_value(const GeneralInstance& g, const std::vector<Rat>& c, const GeneralBinaryPoint& bp) {
  if (int(c.size()) != g.dim()) throw Error(ErrorKind::bad_params, "objective: expected m+n coefficients");
  Rat acc(0);
  for (int i = 1; i <= g.m(); ++i)
    if (bp.delta_bit(i)) acc += c[std::size_t(i - 1)];
  for (int j = 1; j <= g.n; ++j)
    if (bp.z_bit(j)) acc += c[std::size_t(g.m() + j - 1)];
  return acc;
}

// Exact best general IP values, one enumeration pass for both senses.
inline std::pair<Rat, Rat> general_ip_range(const GeneralInstance& g, const std::vector<Rat>& c, int cap = -1) {
  bool first = true;
  Rat best_max, best_min;
  for (const auto& bp : enumerate_general_points(g, cap)) {
    Rat v = general_objective_value(g, c, bp);
    if (first || v > best_max) best_max = v;
    if (first || v < best_min) best_min = v;
    first = false;
  }
  if (first) throw Error(ErrorKind::infeasible_point, "instance: no feasible point");
  return {best_max, best_min};
}

// The two-monomial instance induced by the supports of a pair.
inline Instance pair_instance(const GeneralInstance& g, int i, int k) {
  if (i < 1 || k < 1 || i > g.m() || k > g.m() || i == k)
    throw Error(ErrorKind::bad_params, "pair: need distinct indices in 1..m");
  return new_instance(g.n, mask_indices(g.sets[std::size_t(i - 1)]), mask_indices(g.sets[std::size_t(k - 1)]), g.l, g.u);
}

// Pair-space view (delta0, delta_i, delta_k, delta3, z) of a general point.
// Without auxiliary values the intersection and union monomials are proxied
// from the tightest base rows: delta0 = min(1, delta_i + sum z over S_i\S_k,
// delta_k + sum z over S_k\S_i, 1 - max z over S_i cap S_k), delta3 =
// delta_i + delta_k - delta0 clamped into [0, min(delta_i, delta_k)]. On
// binary points both proxies equal the true products (the last bound zeroes
// delta0 whenever z hits the intersection), so no valid row is violated.
inline Point lift_pair_point(const GeneralInstance& g, int i, int k, const std::vector<Rat>& pt,
                             const std::optional<std::pair<Rat, Rat>>& aux = std::nullopt) {
  if (int(pt.size()) != g.dim()) throw Error(ErrorKind::bad_params, "point: expected m+n coordinates");
  Mask si = g.sets[std::size_t(i - 1)], sk = g.sets[std::size_t(k - 1)];
  Point p;
  p.z.assign(pt.begin() + g.m(), pt.end());
  const Rat& di = pt[std::size_t(i - 1)];
  const Rat& dk = pt[std::size_t(k - 1)];
  p.delta[1] = di;
  p.delta[2] = dk;
  if (aux) {
    p.delta[0] = aux->first;
    p.delta[3] = aux->second;
    return p;
  }
  Rat bound_i = di, bound_k = dk;
  for (int j : mask_indices(si & ~sk)) bound_i += p.z[std::size_t(j - 1)];
  for (int j : mask_indices(sk & ~si)) bound_k += p.z[std::size_t(j - 1)];
  Rat bound_cap(1);
  for (int j : mask_indices(si & sk)) bound_cap = std::min(bound_cap, Rat(1) - p.z[std::size_t(j - 1)]);
  Rat d0 = std::min({Rat(1), bound_i, bound_k, bound_cap});
  Rat d3 = di + dk - d0;
  if (d3 < 0) d3 = 0;
  if (d3 > di) d3 = di;
  if (d3 > dk) d3 = dk;
  p.delta[0] = d0;
  p.delta[3] = d3;
  return p;
}

// One separation cut for a pair, expressed over that pair's extended space.
struct GeneralCut {
  int i = 0, k = 0;
  LinIneq row; // coefficients address (delta0, delta_i, delta_k, delta3, z)
  Rat violation;
};

// Violated rows across all pairs at a fractional point. Auxiliary LP values,
// when maintained by an optimizer, arrive through `aux` keyed by (i, k); other
// pairs fall back to the proxies.
inline std::vector<GeneralCut> pairwise_cuts(const GeneralInstance& g, const std::vector<Rat>& pt,
                                             const std::map<std::pair<int, int>, std::pair<Rat, Rat>>* aux = nullptr) {
  if (int(pt.size()) != g.dim()) throw Error(ErrorKind::bad_params, "point: expected m+n coordinates");
  for (const Rat& v : pt)
    if (v < 0 || v > 1) throw Error(ErrorKind::bad_params, "point: coordinates must lie in [0,1]");
  std::vector<GeneralCut> out;
  for (int i = 1; i <= g.m(); ++i) {
    for (int k = i + 1; k <= g.m(); ++k) {
      std::optional<std::pair<Rat, Rat>> pa;
      if (aux) {
        auto it = aux->find({i, k});
        if (it != aux->end()) pa = it->second;
      }
      Instance inst = pair_instance(g, i, k);
      Point lifted = lift_pair_point(g, i, k, pt, pa);
      for (auto& cut : separate_all(inst, lifted))
        out.push_back(GeneralCut{i, k, std::move(cut.ineq), std::move(cut.violation)});
    }
  }
  return out;
}

// Outcome of the general-m cutting-plane loop. The bound is always exact for
// the relaxation; it is the IP optimum only when `exact` is set (terminal LP
// point binary and product-consistent). Otherwise best_point/best_value hold
// the strongest rounded feasible point, and bound - best_value is the gap.
struct GeneralReport {
  SolveStatus status = SolveStatus::optimal;
  Rat bound;
  bool exact = false;
  std::vector<Rat> lp_point;
  std::vector<Rat> best_point;
  Rat best_value;
  int rounds = 0;
  std::map<std::string, long long> cuts_by_family;
  long long cuts_total = 0;
  long long lp_calls = 0;
  long long lp_pivots = 0;
};

namespace solvedetail {

// Mutable general-m LP: columns are (delta_1..delta_m, z, aux pairs in
// activation order), all boxed to [0,1]. Rows are kept width-independent as
// sparse maps so dedupe survives later column growth.
struct GeneralLP {
  const GeneralInstance& g;
  Sense sense;
  std::vector<Rat> obj; // over the first m+n columns
  int cols;
  std::map<std::pair<int, int>, std::pair<int, int>> aux; // pair -> (delta0 col, delta3 col)
  std::vector<std::map<int, Rat>> rows;
  std::vector<Rat> rhs;
  std::set<std::pair<std::vector<std::pair<int, Rat>>, Rat>> seen;

  GeneralLP(const GeneralInstance& gi, std::vector<Rat> c, Sense s) : g(gi), sense(s), obj(std::move(c)), cols(gi.dim()) {}

  bool add(std::map<int, Rat> a, Rat b) {
    std::vector<std::pair<int, Rat>> key(a.begin(), a.end());
    if (!seen.insert({key, b}).second) return false;
    rows.push_back(std::move(a));
    rhs.push_back(std::move(b));
    return true;
  }

  int zcol(int j1) const { return g.m() + j1 - 1; }

  // General-layout image of a pair-space row.
  std::map<int, Rat> map_row(int i, int k, const LinIneq& r) const {
    auto cols_ik = aux.at({i, k});
    std::map<int, Rat> a;
    auto put = [&](int col, long long v) {
      if (v != 0) a[col] = Rat(v);
    };
    put(cols_ik.first, r.a[0]);
    put(i - 1, r.a[1]);
    put(k - 1, r.a[2]);
    put(cols_ik.second, r.a[3]);
    for (int j = 1; j <= g.n; ++j) put(zcol(j), r.a[std::size_t(3 + j)]);
    return a;
  }

  void activate(int i, int k, const Instance& inst) {
    aux[{i, k}] = {cols, cols + 1};
    cols += 2;
    for (const auto& r : base_system(inst)) add(map_row(i, k, r), Rat(r.rhs));
  }

  LPModel build() const {
    LPModel m = lp_model(cols, sense);
    m.box_all(Rat(0), Rat(1));
    for (int j = 0; j < g.dim(); ++j) m.objective[std::size_t(j)] = obj[std::size_t(j)];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<Rat> a(std::size_t(cols), Rat(0));
      for (const auto& [col, v] : rows[r]) a[std::size_t(col)] = v;
      m.add_row(std::move(a), Rel::le, rhs[r]);
    }
    return m;
  }
};

} // namespace solvedetail

// Cutting-plane bound for m >= 2 monomials from the two-monomial hulls: the
// standard linearization LP plus, per pair, the full pair description through
// lazy auxiliary delta0/delta3 columns activated on the first violated cut.
// For m = 2 this is the exact optimum; beyond that the pair cuts are not a
// complete description, so a fractional terminal point yields a bound plus a
// rounded feasible point.
inline GeneralReport optimize_general(const GeneralInstance& g, const std::vector<Rat>& c, Sense sense,
                                      const SolveOptions& opt = {}) {
  if (g.m() > 8 || g.n > 24) throw Error(ErrorKind::bounds, "instance: general solver accepts m <= 8, n <= 24");
  if (int(c.size()) != g.dim()) throw Error(ErrorKind::bad_params, "objective: expected m+n coefficients");
  if (opt.max_rounds < 1) throw Error(ErrorKind::bad_params, "max_rounds: must be >= 1");

  GeneralReport rep;
  solvedetail::GeneralLP lp(g, c, sense);

  // Standard linearization of every monomial plus the cardinality window.
  for (int i = 1; i <= g.m(); ++i) {
    std::map<int, Rat> low{{i - 1, Rat(-1)}};
    for (int j : mask_indices(g.sets[std::size_t(i - 1)])) {
      lp.add({{i - 1, Rat(1)}, {lp.zcol(j), Rat(1)}}, Rat(1));
      low[lp.zcol(j)] = Rat(-1);
    }
    lp.add(std::move(low), Rat(-1));
  }
  {
    std::map<int, Rat> all_up, all_low;
    for (int j = 1; j <= g.n; ++j) {
      all_up[lp.zcol(j)] = Rat(1);
      all_low[lp.zcol(j)] = Rat(-1);
    }
    lp.add(std::move(all_up), Rat(g.u));
    lp.add(std::move(all_low), Rat(-g.l));
  }

  std::map<std::pair<int, int>, Instance> pair_cache;
  auto pair_of = [&](int i, int k) -> const Instance& {
    auto it = pair_cache.find({i, k});
    if (it == pair_cache.end()) it = pair_cache.emplace(std::make_pair(i, k), pair_instance(g, i, k)).first;
    return it->second;
  };

  LPModel model = lp.build();
  LPResult res = solve(model, opt.lp);
  std::vector<LPRow> fresh;
  for (;;) {
    ++rep.lp_calls;
    rep.lp_pivots += res.pivots;
    ++rep.rounds;
    if (res.status == LPStatus::infeasible) {
      rep.status = SolveStatus::infeasible;
      return rep;
    }
    if (res.status == LPStatus::unbounded)
      throw Error(ErrorKind::unsupported, "optimize_general: internal error, boxed LP unbounded");

    std::vector<Rat> pt(res.point.begin(), res.point.begin() + g.dim());
    std::map<std::pair<int, int>, std::pair<Rat, Rat>> auxvals;
    for (const auto& [pr, cols_ik] : lp.aux)
      auxvals[pr] = {res.point[std::size_t(cols_ik.first)], res.point[std::size_t(cols_ik.second)]};

    bool grew = false;
    long long added = 0;
    for (auto& cut : pairwise_cuts(g, pt, &auxvals)) {
      if (!lp.aux.count({cut.i, cut.k})) {
        // First violated cut of the pair: bring in its delta0/delta3 columns
        // and base rows, which forces a model rebuild below.
        lp.activate(cut.i, cut.k, pair_of(cut.i, cut.k));
        grew = true;
      }
      if (!lp.add(lp.map_row(cut.i, cut.k, cut.row), Rat(cut.row.rhs))) continue;
      solvedetail::count_cut(rep.cuts_by_family, rep.cuts_total, cut.row);
      ++added;
      if (!grew) {
        LPRow row;
        row.a.assign(std::size_t(lp.cols), Rat(0));
        for (const auto& [col, v] : lp.rows.back()) row.a[std::size_t(col)] = v;
        row.rel = Rel::le;
        row.rhs = lp.rhs.back();
        fresh.push_back(std::move(row));
      }
    }
    if (added == 0 && !grew) {
      rep.status = SolveStatus::optimal;
      rep.bound = res.value;
      rep.lp_point = std::move(pt);
      break;
    }
    if (rep.rounds >= opt.max_rounds) {
      rep.status = SolveStatus::round_cap;
      rep.bound = res.value;
      rep.lp_point = std::move(pt);
      break;
    }
    if (grew) {
      // Column count changed: rebuild from the width-independent rows.
      fresh.clear();
      model = lp.build();
      res = solve(model, opt.lp);
    } else {
      res = resolve_with_rows(model, res, fresh, opt.lp);
      fresh.clear();
    }
  }

  // Exactness: a binary, product-consistent projection certifies the bound.
  Mask zm = 0;
  bool binary = solvedetail::binary_vector(rep.lp_point);
  if (binary) {
    for (int j = 1; j <= g.n; ++j)
      if (rep.lp_point[std::size_t(lp.zcol(j))] == 1) zm |= Mask(1) << (j - 1);
    Mask want = general_delta_mask(g, zm);
    for (int i = 1; i <= g.m(); ++i)
      if ((rep.lp_point[std::size_t(i - 1)] == 1) != bool((want >> (i - 1)) & 1)) binary = false;
  }
  if (rep.status == SolveStatus::optimal && binary) {
    rep.exact = true;
    rep.best_point = rep.lp_point;
    rep.best_value = rep.bound;
    return rep;
  }

  // Rounding fallback: keep the strongest cardinality-respecting threshold
  // point over k in [l, u], taking the k largest z values (ties by index).
  std::vector<int> order(std::size_t(g.n));
  for (int j = 0; j < g.n; ++j) order[std::size_t(j)] = j + 1;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rep.lp_point[std::size_t(lp.zcol(a))] > rep.lp_point[std::size_t(lp.zcol(b))];
  });
  bool have = false;
  GeneralBinaryPoint best;
  for (int k = g.l; k <= g.u; ++k) {
    Mask cand = 0;
    for (int t = 0; t < k; ++t) cand |= Mask(1) << (order[std::size_t(t)] - 1);
    GeneralBinaryPoint bp{cand, general_delta_mask(g, cand)};
    Rat v = general_objective_value(g, c, bp);
    bool better = !have || (sense == Sense::maximize ? v > rep.best_value : v < rep.best_value);
    if (better) {
      rep.best_value = v;
      best = bp;
      have = true;
    }
  }
  rep.best_point = general_point_vector(g, best);
  return rep;
}

} // namespace ccms2

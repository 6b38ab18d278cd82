#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "instance.hpp"
#include "rat.hpp"

namespace ccms2 {

enum class Rel { le, eq, ge };
enum class LPStatus { optimal, infeasible, unbounded };

struct LPRow {
  std::vector<Rat> a;
  Rel rel = Rel::le;
  Rat rhs;
};

// min/max objective over linear rows plus per-variable bounds; nullopt bound
// means unbounded on that side. Freshly constructed variables are free.
struct LPModel {
  int num_vars = 0;
  Sense sense = Sense::maximize;
  std::vector<Rat> objective;
  std::vector<LPRow> rows;
  std::vector<std::optional<Rat>> lo, hi;

  void add_row(std::vector<Rat> a, Rel rel, Rat rhs) {
    LPRow r;
    r.a = std::move(a);
    r.rel = rel;
    r.rhs = std::move(rhs);
    rows.push_back(std::move(r));
  }

  void box_all(const Rat& l, const Rat& h) {
    lo.assign(std::size_t(num_vars), l);
    hi.assign(std::size_t(num_vars), h);
  }
};

inline LPModel lp_model(int num_vars, Sense sense) {
  LPModel m;
  m.num_vars = num_vars;
  m.sense = sense;
  m.objective.assign(std::size_t(num_vars), Rat(0));
  m.lo.assign(std::size_t(num_vars), std::nullopt);
  m.hi.assign(std::size_t(num_vars), std::nullopt);
  return m;
}

inline void validate(const LPModel& m) {
  if (m.num_vars < 0) throw Error(ErrorKind::bad_params, "lp: negative variable count");
  if (int(m.objective.size()) != m.num_vars) throw Error(ErrorKind::bad_params, "lp: objective width mismatch");
  if (int(m.lo.size()) != m.num_vars || int(m.hi.size()) != m.num_vars)
    throw Error(ErrorKind::bad_params, "lp: bounds width mismatch");
  for (int j = 0; j < m.num_vars; ++j)
    if (m.lo[std::size_t(j)] && m.hi[std::size_t(j)] && *m.lo[std::size_t(j)] > *m.hi[std::size_t(j)])
      throw Error(ErrorKind::bad_params, "lp: lo > hi on variable " + std::to_string(j));
  for (const auto& r : m.rows)
    if (int(r.a.size()) != m.num_vars) throw Error(ErrorKind::bad_params, "lp: row width mismatch");
}

// Nonnegative combination of rows and bounds proving 0 <= negative. Signs:
// row_mult >= 0 on le rows, <= 0 on ge rows, free on eq; lo/hi_mult >= 0 and
// only on finite bounds.
struct FarkasCertificate {
  std::vector<Rat> row_mult;
  std::vector<Rat> lo_mult, hi_mult;
};

inline bool is_valid_farkas(const LPModel& m, const FarkasCertificate& c) {
  if (int(c.row_mult.size()) != int(m.rows.size())) return false;
  if (int(c.lo_mult.size()) != m.num_vars || int(c.hi_mult.size()) != m.num_vars) return false;
  std::vector<Rat> coef(std::size_t(m.num_vars), Rat(0));
  Rat rhs(0);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const Rat& w = c.row_mult[r];
    if (w == 0) continue;
    if (m.rows[r].rel == Rel::le && w < 0) return false;
    if (m.rows[r].rel == Rel::ge && w > 0) return false;
    for (int j = 0; j < m.num_vars; ++j) coef[std::size_t(j)] += w * m.rows[r].a[std::size_t(j)];
    rhs += w * m.rows[r].rhs;
  }
  for (int j = 0; j < m.num_vars; ++j) {
    const Rat& wl = c.lo_mult[std::size_t(j)];
    const Rat& wh = c.hi_mult[std::size_t(j)];
    if (wl < 0 || wh < 0) return false;
    if (wl != 0) {
      if (!m.lo[std::size_t(j)]) return false;
      coef[std::size_t(j)] -= wl;
      rhs -= wl * *m.lo[std::size_t(j)];
    }
    if (wh != 0) {
      if (!m.hi[std::size_t(j)]) return false;
      coef[std::size_t(j)] += wh;
      rhs += wh * *m.hi[std::size_t(j)];
    }
  }
  for (const auto& v : coef)
    if (v != 0) return false;
  return rhs < 0;
}

// Improving feasible direction: point + t*ray stays feasible for all t >= 0
// and the objective is unbounded along it.
inline bool is_valid_ray(const LPModel& m, const std::vector<Rat>& ray) {
  if (int(ray.size()) != m.num_vars) return false;
  Rat gain = dot(m.objective, ray);
  if (m.sense == Sense::maximize ? !(gain > 0) : !(gain < 0)) return false;
  for (const auto& r : m.rows) {
    Rat d = dot(r.a, ray);
    if (r.rel == Rel::le && d > 0) return false;
    if (r.rel == Rel::ge && d < 0) return false;
    if (r.rel == Rel::eq && d != 0) return false;
  }
  for (int j = 0; j < m.num_vars; ++j) {
    if (m.lo[std::size_t(j)] && ray[std::size_t(j)] < 0) return false;
    if (m.hi[std::size_t(j)] && ray[std::size_t(j)] > 0) return false;
  }
  return true;
}

// duals/dual_lo/dual_hi are reported in the normalized-max convention: with
// c_eff = objective (max) or -objective (min),
//   sum_r duals[r]*row_r.a + dual_hi - dual_lo = c_eff               (gradient)
//   sum_r duals[r]*row_r.rhs + dual_hi.hi - dual_lo.lo = c_eff.point (value)
// with duals >= 0 on le rows, <= 0 on ge rows, free on eq, dual_lo/hi >= 0.
struct LPResult {
  LPStatus status = LPStatus::optimal;
  Rat value;
  std::vector<Rat> point;
  std::vector<int> basis;
  std::vector<Rat> duals;
  std::vector<Rat> dual_lo, dual_hi;
  std::optional<FarkasCertificate> farkas;
  std::optional<std::vector<Rat>> ray;
  long long pivots = 0;
};

// Dual-side objective under the convention above; equals the primal value on
// every optimal result (exact strong duality).
inline Rat dual_objective(const LPModel& m, const LPResult& res) {
  Rat acc(0);
  for (std::size_t r = 0; r < m.rows.size(); ++r) acc += res.duals[r] * m.rows[r].rhs;
  for (int j = 0; j < m.num_vars; ++j) {
    if (res.dual_hi[std::size_t(j)] != 0) acc += res.dual_hi[std::size_t(j)] * *m.hi[std::size_t(j)];
    if (res.dual_lo[std::size_t(j)] != 0) acc -= res.dual_lo[std::size_t(j)] * *m.lo[std::size_t(j)];
  }
  return acc;
}

inline bool dual_certificate_ok(const LPModel& m, const LPResult& res) {
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (m.rows[r].rel == Rel::le && res.duals[r] < 0) return false;
    if (m.rows[r].rel == Rel::ge && res.duals[r] > 0) return false;
  }
  for (int j = 0; j < m.num_vars; ++j) {
    const Rat& wl = res.dual_lo[std::size_t(j)];
    const Rat& wh = res.dual_hi[std::size_t(j)];
    if (wl < 0 || wh < 0) return false;
    if (wl != 0 && !m.lo[std::size_t(j)]) return false;
    if (wh != 0 && !m.hi[std::size_t(j)]) return false;
  }
  for (int j = 0; j < m.num_vars; ++j) {
    Rat g(0);
    for (std::size_t r = 0; r < m.rows.size(); ++r)
      if (res.duals[r] != 0) g += res.duals[r] * m.rows[r].a[std::size_t(j)];
    g += res.dual_hi[std::size_t(j)] - res.dual_lo[std::size_t(j)];
    Rat ce = m.objective[std::size_t(j)];
    if (m.sense == Sense::minimize) ce = -ce;
    if (g != ce) return false;
  }
  Rat veff = dot(m.objective, res.point);
  if (m.sense == Sense::minimize) veff = -veff;
  return dual_objective(m, res) == veff;
}

struct LPOptions {
  long long pivot_cap = 2000000;
  int stall_threshold = 64; // consecutive non-improving pivots before Bland
};

namespace lpdetail {

// Standard-form working state: min cost.w with tab*w = rhs, w >= 0, where the
// basic columns always form an identity (full-tableau simplex).
struct Tableau {
  int m = 0;
  int ncols = 0;
  int art_begin = 0; // columns >= art_begin are artificials, one per row
  std::vector<std::vector<Rat>> tab;
  std::vector<Rat> rhs;
  std::vector<int> basis;
  std::vector<Rat> cost;  // current phase costs
  std::vector<Rat> zrow;  // reduced costs for the current phase
  long long pivots = 0;

  void recompute_zrow() {
    zrow = cost;
    for (int i = 0; i < m; ++i) {
      const Rat& cb = cost[std::size_t(basis[std::size_t(i)])];
      if (cb == 0) continue;
      const auto& row = tab[std::size_t(i)];
      for (int j = 0; j < ncols; ++j)
        if (row[std::size_t(j)] != 0) zrow[std::size_t(j)] -= cb * row[std::size_t(j)];
    }
  }

  Rat objective_value() const {
    Rat acc(0);
    for (int i = 0; i < m; ++i) {
      const Rat& cb = cost[std::size_t(basis[std::size_t(i)])];
      if (cb != 0) acc += cb * rhs[std::size_t(i)];
    }
    return acc;
  }

  void pivot(int r, int e) {
    auto& prow = tab[std::size_t(r)];
    Rat p = prow[std::size_t(e)];
    if (p != 1) {
      for (auto& v : prow)
        if (v != 0) v /= p;
      rhs[std::size_t(r)] /= p;
    }
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      Rat f = tab[std::size_t(i)][std::size_t(e)];
      if (f == 0) continue;
      auto& row = tab[std::size_t(i)];
      for (int j = 0; j < ncols; ++j)
        if (prow[std::size_t(j)] != 0) row[std::size_t(j)] -= f * prow[std::size_t(j)];
      rhs[std::size_t(i)] -= f * rhs[std::size_t(r)];
    }
    Rat g = zrow[std::size_t(e)];
    if (g != 0)
      for (int j = 0; j < ncols; ++j)
        if (prow[std::size_t(j)] != 0) zrow[std::size_t(j)] -= g * prow[std::size_t(j)];
    basis[std::size_t(r)] = e;
    ++pivots;
  }

  // Entering column: Dantzig until the stall counter trips, then Bland.
  int pick_entering(bool bland) const {
    int best = -1;
    for (int j = 0; j < art_begin; ++j) {
      if (!(zrow[std::size_t(j)] < 0)) continue;
      if (bland) return j;
      if (best < 0 || zrow[std::size_t(j)] < zrow[std::size_t(best)]) best = j;
    }
    return best;
  }

  // Leaving row: min ratio, ties to the smallest basic column index.
  int pick_leaving(int e) const {
    int best = -1;
    Rat best_ratio;
    for (int i = 0; i < m; ++i) {
      const Rat& a = tab[std::size_t(i)][std::size_t(e)];
      if (!(a > 0)) continue;
      Rat ratio = rhs[std::size_t(i)] / a;
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[std::size_t(i)] < basis[std::size_t(best)])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  // Returns false when the entering column proves unboundedness.
  bool run(const LPOptions& opt, int& unbounded_col) {
    bool bland = false;
    int stall = 0;
    Rat last = objective_value();
    for (;;) {
      int e = pick_entering(bland);
      if (e < 0) return true;
      int r = pick_leaving(e);
      if (r < 0) {
        unbounded_col = e;
        return false;
      }
      pivot(r, e);
      if (pivots > opt.pivot_cap) throw Error(ErrorKind::cap_exceeded, "lp: pivot cap exceeded");
      if (!bland) {
        Rat now = objective_value();
        if (now < last) {
          stall = 0;
          last = now;
        } else if (++stall > opt.stall_threshold) {
          bland = true;
        }
      }
    }
  }
};

enum class ColKind { var_plus, var_minus, slack, artificial };
struct ColInfo {
  ColKind kind;
  int ref; // variable index or internal row index
};
enum class RowSource { model, bound_hi };
struct RowInfo {
  RowSource src;
  int ref;  // model row index or variable index
  Rat sign; // +1/-1: internal equation = sign * (<=-form row), slack included
};

struct Build {
  int nvars = 0;
  std::vector<int> col_of;       // first structural column of each variable
  std::vector<int> col_neg;      // second column for free variables, else -1
  std::vector<Rat> var_sign;     // x = sign*w + offset (non-free)
  std::vector<Rat> var_offset;
  std::vector<ColInfo> cols;
  std::vector<RowInfo> rows;
  Tableau t;
};

inline Build build_standard(const LPModel& m) {
  Build b;
  b.nvars = m.num_vars;
  b.col_of.assign(std::size_t(m.num_vars), -1);
  b.col_neg.assign(std::size_t(m.num_vars), -1);
  b.var_sign.assign(std::size_t(m.num_vars), Rat(1));
  b.var_offset.assign(std::size_t(m.num_vars), Rat(0));

  for (int j = 0; j < m.num_vars; ++j) {
    const auto& lo = m.lo[std::size_t(j)];
    const auto& hi = m.hi[std::size_t(j)];
    b.col_of[std::size_t(j)] = int(b.cols.size());
    b.cols.push_back({ColKind::var_plus, j});
    if (lo) {
      b.var_offset[std::size_t(j)] = *lo;
    } else if (hi) {
      b.var_sign[std::size_t(j)] = Rat(-1);
      b.var_offset[std::size_t(j)] = *hi;
    } else {
      b.col_neg[std::size_t(j)] = int(b.cols.size());
      b.cols.push_back({ColKind::var_minus, j});
    }
  }

  // internal rows: model rows first, then w_j <= hi-lo for doubly bounded vars
  struct Raw {
    std::vector<Rat> a; // over structural columns
    Rel rel;
    Rat rhs;
    RowInfo info;
  };
  std::vector<Raw> raws;
  int nstruct = int(b.cols.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    Raw raw;
    raw.a.assign(std::size_t(nstruct), Rat(0));
    raw.rhs = m.rows[r].rhs;
    raw.rel = m.rows[r].rel;
    raw.info = {RowSource::model, int(r), Rat(1)};
    for (int j = 0; j < m.num_vars; ++j) {
      const Rat& c = m.rows[r].a[std::size_t(j)];
      if (c == 0) continue;
      raw.rhs -= c * b.var_offset[std::size_t(j)];
      raw.a[std::size_t(b.col_of[std::size_t(j)])] += c * b.var_sign[std::size_t(j)];
      if (b.col_neg[std::size_t(j)] >= 0) raw.a[std::size_t(b.col_neg[std::size_t(j)])] -= c;
    }
    raws.push_back(std::move(raw));
  }
  for (int j = 0; j < m.num_vars; ++j) {
    if (!m.lo[std::size_t(j)] || !m.hi[std::size_t(j)]) continue;
    Raw raw;
    raw.a.assign(std::size_t(nstruct), Rat(0));
    raw.a[std::size_t(b.col_of[std::size_t(j)])] = Rat(1);
    raw.rel = Rel::le;
    raw.rhs = *m.hi[std::size_t(j)] - *m.lo[std::size_t(j)];
    raw.info = {RowSource::bound_hi, j, Rat(1)};
    raws.push_back(std::move(raw));
  }

  // normalize: ge -> le by negation, then slack, then flip negative rhs rows
  Tableau& t = b.t;
  t.m = int(raws.size());
  int nslack = 0;
  for (const auto& raw : raws)
    if (raw.rel != Rel::eq) ++nslack;
  t.art_begin = nstruct + nslack;
  t.ncols = t.art_begin + t.m;
  t.tab.assign(std::size_t(t.m), std::vector<Rat>(std::size_t(t.ncols), Rat(0)));
  t.rhs.assign(std::size_t(t.m), Rat(0));
  t.basis.assign(std::size_t(t.m), -1);

  int slack_at = nstruct;
  for (int i = 0; i < t.m; ++i) {
    Raw& raw = raws[std::size_t(i)];
    Rat sign(1);
    if (raw.rel == Rel::ge) sign = -sign;
    Rat srhs = sign * raw.rhs;
    int my_slack = -1;
    if (raw.rel != Rel::eq) my_slack = slack_at++;
    Rat slack_coef(1);
    if (srhs < 0) {
      sign = -sign;
      srhs = -srhs;
      slack_coef = Rat(-1);
    }
    auto& row = t.tab[std::size_t(i)];
    for (int j = 0; j < nstruct; ++j)
      if (raw.a[std::size_t(j)] != 0) row[std::size_t(j)] = sign * raw.a[std::size_t(j)];
    if (my_slack >= 0) {
      row[std::size_t(my_slack)] = slack_coef;
      b.cols.push_back({ColKind::slack, i});
    }
    row[std::size_t(t.art_begin + i)] = Rat(1);
    t.rhs[std::size_t(i)] = srhs;
    raw.info.sign = sign * (raw.rel == Rel::ge ? Rat(-1) : Rat(1)); // net vs the row as written
    b.rows.push_back(raw.info);
    t.basis[std::size_t(i)] = (my_slack >= 0 && slack_coef > 0) ? my_slack : (t.art_begin + i);
  }
  for (int i = 0; i < t.m; ++i) b.cols.push_back({ColKind::artificial, i});
  return b;
}

} // namespace lpdetail

inline LPResult solve(const LPModel& m, const LPOptions& opt = {}) {
  validate(m);
  using namespace lpdetail;
  Build b = build_standard(m);
  Tableau& t = b.t;
  LPResult res;

  // phase 1: drive artificials to zero
  t.cost.assign(std::size_t(t.ncols), Rat(0));
  for (int j = t.art_begin; j < t.ncols; ++j) t.cost[std::size_t(j)] = Rat(1);
  t.recompute_zrow();
  int ub_col = -1;
  if (!t.run(opt, ub_col))
    throw Error(ErrorKind::unsupported, "lp: phase 1 unbounded"); // cost >= 0, unreachable
  res.pivots = t.pivots;

  if (t.objective_value() > 0) {
    // infeasible: simplex multipliers of phase 1 give the Farkas combination
    res.status = LPStatus::infeasible;
    FarkasCertificate cert;
    cert.row_mult.assign(m.rows.size(), Rat(0));
    cert.lo_mult.assign(std::size_t(m.num_vars), Rat(0));
    cert.hi_mult.assign(std::size_t(m.num_vars), Rat(0));
    for (int i = 0; i < t.m; ++i) {
      Rat y = Rat(1) - t.zrow[std::size_t(t.art_begin + i)];
      if (y == 0) continue;
      const auto& info = b.rows[std::size_t(i)];
      Rat w = -info.sign * y; // multiplier on the <=-form of the source row
      if (info.src == RowSource::model) {
        // w is for the row rewritten as <=; flip back for ge rows
        cert.row_mult[std::size_t(info.ref)] = (m.rows[std::size_t(info.ref)].rel == Rel::ge) ? -w : w;
      } else {
        cert.hi_mult[std::size_t(info.ref)] = w;
      }
    }
    // bound multipliers for shifted variables come from the column conditions;
    // the signed row multipliers already encode the <=-form combination
    for (int j = 0; j < m.num_vars; ++j) {
      Rat g(0);
      for (std::size_t r = 0; r < m.rows.size(); ++r) {
        const Rat& wr = cert.row_mult[r];
        if (wr != 0) g += wr * m.rows[r].a[std::size_t(j)];
      }
      g += cert.hi_mult[std::size_t(j)];
      // residual gradient must be absorbed by a bound multiplier
      if (g > 0 && m.lo[std::size_t(j)]) {
        cert.lo_mult[std::size_t(j)] = g;
      } else if (g < 0 && m.hi[std::size_t(j)]) {
        cert.hi_mult[std::size_t(j)] += -g;
      }
    }
    if (!is_valid_farkas(m, cert))
      throw Error(ErrorKind::unsupported, "lp: internal error, invalid infeasibility certificate");
    res.farkas = std::move(cert);
    return res;
  }

  // expel artificials still basic at level zero so phase 2 never touches them
  for (int i = 0; i < t.m; ++i) {
    if (t.basis[std::size_t(i)] < t.art_begin) continue;
    int piv = -1;
    for (int j = 0; j < t.art_begin; ++j)
      if (t.tab[std::size_t(i)][std::size_t(j)] != 0) { piv = j; break; }
    if (piv >= 0) t.pivot(i, piv); // degenerate pivot, rhs stays zero
    // else: the row is identically zero over real columns; it stays inert
  }

  // phase 2 on the normalized-max objective
  t.cost.assign(std::size_t(t.ncols), Rat(0));
  for (int j = 0; j < m.num_vars; ++j) {
    Rat ce = m.objective[std::size_t(j)];
    if (m.sense == Sense::maximize) ce = -ce; // internal form minimizes
    if (ce == 0) continue;
    t.cost[std::size_t(b.col_of[std::size_t(j)])] += ce * b.var_sign[std::size_t(j)];
    if (b.col_neg[std::size_t(j)] >= 0) t.cost[std::size_t(b.col_neg[std::size_t(j)])] -= ce;
  }
  t.recompute_zrow();
  bool bounded = t.run(opt, ub_col);
  res.pivots = t.pivots;

  if (!bounded) {
    res.status = LPStatus::unbounded;
    std::vector<Rat> dw(std::size_t(t.ncols), Rat(0));
    dw[std::size_t(ub_col)] = Rat(1);
    for (int i = 0; i < t.m; ++i)
      if (t.tab[std::size_t(i)][std::size_t(ub_col)] != 0)
        dw[std::size_t(t.basis[std::size_t(i)])] = -t.tab[std::size_t(i)][std::size_t(ub_col)];
    std::vector<Rat> ray(std::size_t(m.num_vars), Rat(0));
    for (int j = 0; j < m.num_vars; ++j) {
      ray[std::size_t(j)] = b.var_sign[std::size_t(j)] * dw[std::size_t(b.col_of[std::size_t(j)])];
      if (b.col_neg[std::size_t(j)] >= 0) ray[std::size_t(j)] -= dw[std::size_t(b.col_neg[std::size_t(j)])];
    }
    if (!is_valid_ray(m, ray))
      throw Error(ErrorKind::unsupported, "lp: internal error, invalid unboundedness ray");
    res.ray = std::move(ray);
    return res;
  }

  // optimal: primal point, duals, certificates
  std::vector<Rat> w(std::size_t(t.ncols), Rat(0));
  for (int i = 0; i < t.m; ++i) w[std::size_t(t.basis[std::size_t(i)])] = t.rhs[std::size_t(i)];
  res.point.assign(std::size_t(m.num_vars), Rat(0));
  for (int j = 0; j < m.num_vars; ++j) {
    res.point[std::size_t(j)] = b.var_offset[std::size_t(j)] + b.var_sign[std::size_t(j)] * w[std::size_t(b.col_of[std::size_t(j)])];
    if (b.col_neg[std::size_t(j)] >= 0) res.point[std::size_t(j)] -= w[std::size_t(b.col_neg[std::size_t(j)])];
  }
  res.value = dot(m.objective, res.point);
  res.basis = t.basis;

  res.duals.assign(m.rows.size(), Rat(0));
  res.dual_lo.assign(std::size_t(m.num_vars), Rat(0));
  res.dual_hi.assign(std::size_t(m.num_vars), Rat(0));
  for (int i = 0; i < t.m; ++i) {
    Rat y = -t.zrow[std::size_t(t.art_begin + i)]; // simplex multiplier, internal min
    if (y == 0) continue;
    const auto& info = b.rows[std::size_t(i)];
    Rat w_le = -info.sign * y; // multiplier on the <=-form of the source row
    if (info.src == RowSource::model)
      res.duals[std::size_t(info.ref)] = (m.rows[std::size_t(info.ref)].rel == Rel::ge) ? -w_le : w_le;
    else
      res.dual_hi[std::size_t(info.ref)] = w_le;
  }
  for (int j = 0; j < m.num_vars; ++j) {
    const Rat& cbar = t.zrow[std::size_t(b.col_of[std::size_t(j)])];
    if (cbar == 0) continue;
    if (b.col_neg[std::size_t(j)] >= 0) continue; // free: both reduced costs vanish
    if (b.var_sign[std::size_t(j)] > 0)
      res.dual_lo[std::size_t(j)] = cbar;
    else
      res.dual_hi[std::size_t(j)] += cbar;
  }

  if (!dual_certificate_ok(m, res))
    throw Error(ErrorKind::unsupported, "lp: internal error, dual certificate mismatch");
  return res;
}

// Re-optimize after appending rows. A prior point that survives the new rows
// is returned as-is (region only shrank); otherwise solve from scratch. The
// result is contractually identical to a fresh solve of the augmented model.
inline LPResult resolve_with_rows(LPModel& m, const LPResult& prior, const std::vector<LPRow>& new_rows,
                                  const LPOptions& opt = {}) {
  for (const auto& r : new_rows) m.rows.push_back(r);
  if (prior.status == LPStatus::optimal) {
    bool ok = true;
    for (const auto& r : new_rows) {
      Rat v = dot(r.a, prior.point);
      if ((r.rel == Rel::le && v > r.rhs) || (r.rel == Rel::ge && v < r.rhs) || (r.rel == Rel::eq && v != r.rhs)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      LPResult out = prior;
      out.duals.resize(m.rows.size(), Rat(0)); // slack rows carry zero price
      return out;
    }
  }
  return solve(m, opt);
}

} // namespace ccms2

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ineq.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "rng.hpp"
#include "separation.hpp"

namespace ccms2 {

inline std::string instance_summary(const Instance& inst) {
  std::ostringstream os;
  os << "(n=" << inst.n << ", S1=" << mask_to_string(inst.s1) << ", S2=" << mask_to_string(inst.s2)
     << ", l=" << inst.l << ", u=" << inst.u << ")";
  return os.str();
}

struct PolyOptimum {
  Rat value;
  std::vector<Rat> point;
  long long pivots = 0;
};

// Exact max of c.x over an explicit row list (a.x <= rhs for every row).
// Solved through the dual (min y.rhs, A^T y = c, y >= 0) because the row count
// dwarfs the coordinate count; the primal optimum falls out of the equality
// duals and is re-verified against the rows before being returned.
inline PolyOptimum polytope_max(const std::vector<LinIneq>& rows, const std::vector<Rat>& c) {
  if (rows.empty()) throw Error(ErrorKind::bad_params, "polytope: no rows");
  std::size_t dim = rows[0].a.size();
  if (c.size() != dim) throw Error(ErrorKind::bad_params, "objective: width mismatch");
  LPModel d = lp_model(int(rows.size()), Sense::minimize);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.lo[i] = Rat(0);
    d.objective[i] = Rat(rows[i].rhs);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Rat> a(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) a[i] = Rat(rows[i].a[j]);
    d.add_row(std::move(a), Rel::eq, c[j]);
  }
  auto res = solve(d);
  if (res.status == LPStatus::infeasible)
    throw Error(ErrorKind::unsupported, "polytope: objective unbounded over the given rows");
  if (res.status == LPStatus::unbounded)
    throw Error(ErrorKind::infeasible_point, "polytope: row system has no feasible point");

  PolyOptimum out;
  out.value = res.value;
  out.pivots = res.pivots;
  out.point.assign(dim, Rat(0));
  Rat cx(0);
  for (std::size_t j = 0; j < dim; ++j) {
    out.point[j] = -res.duals[j];
    if (c[j] != 0) cx += c[j] * out.point[j];
  }
  if (cx != out.value)
    throw Error(ErrorKind::unsupported, "polytope: internal error, dual point misses the optimal value");
  Point p = point_from_vector(int(dim) - 4, out.point);
  for (const auto& r : rows)
    if (r.violation(p) > 0)
      throw Error(ErrorKind::unsupported, "polytope: internal error, dual point violates a row");
  return out;
}

// Lazily activated optimizer over the full hull description of an instance:
// base rows up front, family rows appended as exact separation finds them.
// The fixpoint value equals the LP optimum over base plus every (family, Q)
// row, because each of the fourteen columns is separated to optimality.
// Families in the skip set are never activated (ablation studies).
class HullOracle {
public:
  explicit HullOracle(const Instance& inst, std::vector<LinIneq> extra = {}) : inst_(inst) {
    for (auto& r : base_system(inst_)) add_row(std::move(r));
    for (auto& r : extra) add_row(std::move(r));
  }

  void skip(Family f) { skipped_.insert(f); }

  const std::vector<LinIneq>& pool() const { return pool_; }
  long long lp_calls() const { return lp_calls_; }
  long long rows_added() const { return rows_added_; }

  Rat maximize(const std::vector<Rat>& c, std::vector<Rat>* arg = nullptr) {
    for (int round = 0;; ++round) {
      if (round > 100000) throw Error(ErrorKind::cap_exceeded, "hull oracle: separation did not converge");
      PolyOptimum opt = polytope_max(pool_, c);
      ++lp_calls_;
      Point p = point_from_vector(inst_.n, opt.point);
      bool added = false;
      for (auto& cut : separate_all(inst_, p)) {
        if (skipped_.count(cut.ineq.family)) continue;
        if (add_row(std::move(cut.ineq))) added = true;
      }
      if (!added) {
        if (arg) *arg = std::move(opt.point);
        return opt.value;
      }
    }
  }

private:
  bool add_row(LinIneq r) {
    if (!seen_.insert({r.a, r.rhs}).second) return false;
    pool_.push_back(std::move(r));
    ++rows_added_;
    return true;
  }

  Instance inst_;
  std::vector<LinIneq> pool_;
  std::set<std::pair<std::vector<long long>, long long>> seen_;
  std::set<Family> skipped_;
  long long lp_calls_ = 0;
  long long rows_added_ = 0;
};

// Exact best integer-program values over the feasible set, one enumeration
// pass for both senses. Objective entries are integers, so the arithmetic
// stays in long long.
inline std::pair<long long, long long> ip_range(const Instance& inst, const std::vector<long long>& c, int cap = -1) {
  if (int(c.size()) != inst.dim()) throw Error(ErrorKind::bad_params, "objective: width mismatch");
  bool first = true;
  long long best_max = 0, best_min = 0;
  for (const auto& bp : enumerate_points(inst, cap)) {
    long long v = 0;
    for (int i = 0; i < 4; ++i)
      if (bp.delta_bit(i)) v += c[std::size_t(i)];
    Mask zm = bp.zmask;
    for (int j = 0; zm != 0; ++j, zm >>= 1)
      if (zm & 1u) v += c[std::size_t(4 + j)];
    if (first || v > best_max) best_max = v;
    if (first || v < best_min) best_min = v;
    first = false;
  }
  if (first) throw Error(ErrorKind::infeasible_point, "instance: no feasible point");
  return {best_max, best_min};
}

// ---------------------------------------------------------------------------
// Check reports

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::string subject;
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void merge(const VerifyReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }

  std::string to_text() const {
    std::ostringstream os;
    os << subject << "\n";
    for (const auto& c : checks) {
      os << "  [" << (c.pass ? " ok " : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << "\n";
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Validity: every row must hold at every feasible point.

inline VerifyReport check_validity(const Instance& inst, const std::vector<LinIneq>& rows, int cap = -1) {
  VerifyReport rep;
  rep.subject = "validity " + instance_summary(inst);
  auto pts = enumerate_points(inst, cap);
  bool pass = true;
  std::string detail;
  for (const auto& r : rows) {
    for (const auto& bp : pts) {
      if (r.satisfied_by(bp)) continue;
      pass = false;
      std::ostringstream os;
      os << "row " << row_to_line(r) << " violated at z=" << mask_to_string(bp.zmask);
      detail = os.str();
      break;
    }
    if (!pass) break;
  }
  std::ostringstream name;
  name << rows.size() << " rows x " << pts.size() << " points";
  rep.add(name.str(), pass, detail);
  return rep;
}

// ---------------------------------------------------------------------------
// Hull equality: LP over the full description matches integer enumeration for
// random integer objectives, both senses, exact comparison.

inline VerifyReport hull_equality_check(const Instance& inst, int trials, std::uint64_t seed, int cap = -1) {
  VerifyReport rep;
  rep.subject = "hull equality " + instance_summary(inst);
  HullOracle oracle(inst);
  Rng rng(seed);
  bool pass = true;
  std::string detail;
  for (int t = 0; t < trials && pass; ++t) {
    auto c = rng.next_int_vector(std::size_t(inst.dim()), -9, 9);
    auto [ip_max, ip_min] = ip_range(inst, c, cap);
    std::vector<Rat> cp(c.begin(), c.end()), cn(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) cn[j] = Rat(-c[j]);
    Rat lp_max = oracle.maximize(cp);
    Rat lp_min = -oracle.maximize(cn);
    if (lp_max != Rat(ip_max) || lp_min != Rat(ip_min)) {
      pass = false;
      std::ostringstream os;
      os << "objective {";
      for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
      os << "}: lp [" << rat_to_string(lp_min) << ", " << rat_to_string(lp_max) << "] vs ip ["
         << ip_min << ", " << ip_max << "]";
      detail = os.str();
    }
  }
  std::ostringstream name;
  name << trials << " objectives, both senses (seed " << seed << ")";
  rep.add(name.str(), pass, detail);
  return rep;
}

// ---------------------------------------------------------------------------
// LP implication: does a row system force a target inequality? Variables are
// free; any boxing must come from the generator rows themselves.

enum class Implication { implied, not_implied, unbounded };

inline Implication implication_status(const std::vector<LinIneq>& generators, const std::vector<Rat>& a,
                                      const Rat& rhs, Rat* slack = nullptr) {
  if (generators.empty()) throw Error(ErrorKind::bad_params, "generators: empty system");
  std::size_t dim = generators[0].a.size();
  if (a.size() != dim) throw Error(ErrorKind::bad_params, "target: width mismatch");
  LPModel m = lp_model(int(dim), Sense::maximize);
  m.objective = a;
  for (const auto& g : generators) {
    std::vector<Rat> row(g.a.begin(), g.a.end());
    m.add_row(std::move(row), Rel::le, Rat(g.rhs));
  }
  auto res = solve(m);
  if (res.status == LPStatus::unbounded) return Implication::unbounded;
  if (res.status == LPStatus::infeasible) return Implication::implied; // empty system satisfies anything
  if (slack) *slack = Rat(rhs) - res.value;
  return res.value <= rhs ? Implication::implied : Implication::not_implied;
}

inline bool implication_check(const std::vector<LinIneq>& generators, const LinIneq& target) {
  std::vector<Rat> a(target.a.begin(), target.a.end());
  Implication st = implication_status(generators, a, Rat(target.rhs));
  if (st == Implication::unbounded)
    throw Error(ErrorKind::bad_params, "implication: generators do not bound the target objective");
  return st == Implication::implied;
}

// Generator systems for the twelve redundant families. Base rows contribute
// whole families; the two cardinality families contribute the single shifted
// row the subsumption argument names.
inline std::vector<LinIneq> redundancy_generators(const Instance& inst, Family f, FamilyParams p, Mask q) {
  auto base = base_system(inst);
  auto want = [&](std::initializer_list<Family> fams) {
    std::vector<LinIneq> out;
    for (const auto& r : base)
      if (std::find(fams.begin(), fams.end(), r.family) != fams.end()) out.push_back(r);
    return out;
  };
  auto push_family = [&](std::vector<LinIneq>& out, Family ff, Mask qq) {
    auto row = family_ineq(inst, ff, FamilyParams{}, qq);
    if (!row) throw Error(ErrorKind::bad_params, std::string("generator ") + family_name(ff) + ": side condition rejected");
    out.push_back(*row);
  };
  Mask s3e = inst.s3 & ~inst.s0; // S3 \ S0
  switch (f) {
    case Family::R1u: return want({Family::SL2, Family::SL3});
    case Family::R2u: return want({Family::SL1, Family::SL6});
    case Family::R3u: return want({Family::SL1, Family::SL5, Family::SL6});
    case Family::R4u: {
      auto out = want({Family::SL5});
      push_family(out, Family::U5, q | s3e);
      return out;
    }
    case Family::R5u: return want({Family::SL1, Family::SL5, Family::SL6});
    case Family::R6u: {
      auto out = want({Family::SL4, Family::SL5});
      push_family(out, Family::U5, q | inst.s3);
      return out;
    }
    case Family::R1l: return want({Family::SL2, Family::SL3, Family::SL7});
    case Family::R2l: return want({Family::SL6});
    case Family::R3l: return want({Family::SL5, Family::SL6});
    case Family::R4l: {
      auto out = want({Family::SL5});
      push_family(out, Family::L5, q & ~s3e);
      return out;
    }
    case Family::R5l: return want({Family::SL5, Family::SL6});
    case Family::R6l: {
      auto out = want({Family::SL4, Family::SL5});
      push_family(out, Family::L5, q & ~inst.s3);
      return out;
    }
    default:
      throw Error(ErrorKind::bad_params, "family: not one of the twelve redundant families");
  }
}

// ---------------------------------------------------------------------------
// Affine hull. The closed form applies to proper, non-nested instances with
// u >= 2 and u > l: full-dimensional when |S0| >= 2, one equality
// z_{j0} + delta0 = 1 when S0 = {j0}. Everything else is computed from the
// enumerated points. Nested instances carry delta0 = delta1 (or delta2), and
// l = u adds sum z = u, so both fall outside the closed form.

inline bool affine_closed_form_applies(const Instance& inst) {
  return inst.proper && !inst.nested && inst.u >= 2 && inst.u > inst.l;
}

inline std::vector<AffineEquality> affine_hull(const Instance& inst, int cap = -1) {
  if (affine_closed_form_applies(inst)) {
    if (mask_count(inst.s0) >= 2) return {};
    int j0 = mask_indices(inst.s0)[0];
    AffineEquality e;
    e.a.assign(std::size_t(inst.dim()), Rat(0));
    e.a[0] = 1;
    e.a[std::size_t(4 + j0 - 1)] = 1;
    e.b = 1;
    return {e};
  }
  std::vector<std::vector<Rat>> pts;
  for (const auto& bp : enumerate_points(inst, cap)) pts.push_back(bp.to_point(inst.n).to_vector());
  return affine_hull_equalities(pts, std::size_t(inst.dim()));
}

inline int hull_dimension(const Instance& inst, int cap = -1) {
  std::vector<std::vector<Rat>> pts;
  for (const auto& bp : enumerate_points(inst, cap)) pts.push_back(bp.to_point(inst.n).to_vector());
  return affine_rank(pts);
}

// Cross-check: the closed form (or enumerated fallback) must describe exactly
// the affine hull of the enumerated points: same rank, every equality implied.
inline VerifyReport affine_hull_report(const Instance& inst, int cap = -1) {
  VerifyReport rep;
  rep.subject = "affine hull " + instance_summary(inst);
  std::vector<std::vector<Rat>> pts;
  for (const auto& bp : enumerate_points(inst, cap)) pts.push_back(bp.to_point(inst.n).to_vector());
  auto enumerated = affine_hull_equalities(pts, std::size_t(inst.dim()));
  auto claimed = affine_hull(inst, cap);
  int rank = affine_rank(pts);
  bool count_ok = (rank == inst.dim() - int(claimed.size()));
  bool implied_ok = true;
  for (const auto& e : claimed)
    if (!equality_implied(enumerated, e)) implied_ok = false;
  std::ostringstream detail;
  detail << "dim " << rank << " of " << inst.dim() << ", " << claimed.size() << " equalities"
         << (affine_closed_form_applies(inst) ? " (closed form)" : " (enumerated)");
  rep.add("rank accounts for the equality count", count_ok, detail.str());
  rep.add("every claimed equality holds on the point set", implied_ok);
  return rep;
}

// ---------------------------------------------------------------------------
// Tight-set dimension of a row: affine rank of the feasible points where the
// row holds with equality. Facet iff this equals hull dimension minus one.

inline int facet_check(const Instance& inst, const LinIneq& row, int cap = -1) {
  std::vector<std::vector<Rat>> tight;
  for (const auto& bp : enumerate_points(inst, cap)) {
    long long acc = 0;
    for (int i = 0; i < 4; ++i)
      if (bp.delta_bit(i)) acc += row.a[std::size_t(i)];
    Mask zm = bp.zmask;
    for (int j = 0; zm != 0; ++j, zm >>= 1)
      if (zm & 1u) acc += row.a[std::size_t(4 + j)];
    if (acc == row.rhs) tight.push_back(bp.to_point(inst.n).to_vector());
  }
  return affine_rank(tight);
}

// ---------------------------------------------------------------------------
// Augmentation face check: the instance embeds in a proper one whose hull,
// sliced at {new z = 0}, reproduces the original integer optima.

inline VerifyReport face_check_augmented(const Instance& inst, int trials = 20, std::uint64_t seed = 1, int cap = -1) {
  VerifyReport rep;
  rep.subject = "augmented face " + instance_summary(inst);
  Augmented aug = augment(inst);
  if (aug.new_indices.empty()) {
    rep.add("augmentation is the identity on a proper instance", aug.inst.n == inst.n && aug.inst.s1 == inst.s1 &&
                                                                     aug.inst.s2 == inst.s2 && aug.inst.l == inst.l &&
                                                                     aug.inst.u == inst.u);
    return rep;
  }

  // zero-padding correspondence between the feasible sets
  Mask new_mask = 0;
  for (int j : aug.new_indices) new_mask |= Mask(1) << (j - 1);
  std::set<std::pair<Mask, std::uint8_t>> orig, sliced;
  for (const auto& bp : enumerate_points(inst, cap)) orig.insert({bp.zmask, bp.dmask});
  for (const auto& bp : enumerate_points(aug.inst, cap))
    if ((bp.zmask & new_mask) == 0) sliced.insert({bp.zmask, bp.dmask});
  rep.add("zero-padded points match the augmented slice", orig == sliced);

  // |S3| > n - l pins delta3 to zero inside the original description
  if (inst.s3_large) {
    auto l5 = family_ineq(inst, Family::L5, FamilyParams{}, 0);
    bool pinned = false;
    if (l5) {
      std::vector<LinIneq> gens{*l5};
      auto t1b = base_system(inst);
      for (const auto& r : t1b)
        if (r.family == Family::T1b) gens.push_back(r);
      std::vector<Rat> up(std::size_t(inst.dim()), Rat(0));
      up[3] = 1; // delta3 <= 0
      pinned = implication_status(gens, up, Rat(0)) == Implication::implied;
    }
    rep.add("delta3 pinned to zero by the empty-Q lower row", pinned);
  }

  // LP over the augmented hull with new z fixed to zero matches the original
  // integer optima. The fixing rows are ad hoc, so they borrow a base tag.
  std::vector<LinIneq> fixing;
  for (int j : aug.new_indices) {
    FamilyParams p;
    p.j = j;
    fixing.push_back(make_row(Family::SL3, p, 0, aug.inst.n, 0, 0, 0, 0, Mask(1) << (j - 1), 0, 0));
  }
  HullOracle oracle(aug.inst, fixing);
  Rng rng(seed);
  bool pass = true;
  std::string detail;
  for (int t = 0; t < trials && pass; ++t) {
    auto c = rng.next_int_vector(std::size_t(inst.dim()), -9, 9);
    auto [ip_max, ip_min] = ip_range(inst, c, cap);
    std::vector<Rat> cp(std::size_t(aug.inst.dim()), Rat(0)), cn(std::size_t(aug.inst.dim()), Rat(0));
    // original coordinates keep their positions; new z entries stay zero
    for (std::size_t j = 0; j < c.size(); ++j) {
      cp[j] = Rat(c[j]);
      cn[j] = Rat(-c[j]);
    }
    Rat lp_max = oracle.maximize(cp);
    Rat lp_min = -oracle.maximize(cn);
    if (lp_max != Rat(ip_max) || lp_min != Rat(ip_min)) {
      pass = false;
      std::ostringstream os;
      os << "objective trial " << t << ": lp [" << rat_to_string(lp_min) << ", " << rat_to_string(lp_max)
         << "] vs ip [" << ip_min << ", " << ip_max << "]";
      detail = os.str();
    }
  }
  std::ostringstream name;
  name << "sliced augmented lp matches original ip (" << trials << " objectives)";
  rep.add(name.str(), pass, detail);
  return rep;
}

// ---------------------------------------------------------------------------
// Nested instances: the delta of the smaller set collapses onto delta0 and the
// larger onto delta3. Verified pointwise and as LP implications from
// {T1c, T1d, T1e, SL5}.

inline VerifyReport nested_consistency(const Instance& inst, int trials = 20, std::uint64_t seed = 1, int cap = -1) {
  if (!inst.nested) throw Error(ErrorKind::bad_params, "instance: S1 and S2 are not nested");
  VerifyReport rep;
  rep.subject = "nested " + instance_summary(inst);
  int small = ((inst.s1 & ~inst.s2) == 0) ? 1 : 2;
  int large = 3 - small;

  bool pointwise = true;
  for (const auto& bp : enumerate_points(inst, cap)) {
    if (bp.delta_bit(0) != bp.delta_bit(small) || bp.delta_bit(3) != bp.delta_bit(large)) pointwise = false;
  }
  rep.add("delta0 = delta_small and delta3 = delta_large on every point", pointwise);

  std::vector<LinIneq> gens;
  for (const auto& r : base_system(inst))
    if (r.family == Family::T1c || r.family == Family::T1d || r.family == Family::T1e || r.family == Family::SL5)
      gens.push_back(r);
  auto direction = [&](int i, int k) {
    std::vector<Rat> a(std::size_t(inst.dim()), Rat(0));
    a[std::size_t(i)] = 1;
    a[std::size_t(k)] = -1;
    return implication_status(gens, a, Rat(0)) == Implication::implied;
  };
  bool implied = direction(0, small) && direction(small, 0) && direction(3, large) && direction(large, 3);
  rep.add("both equalities are lp consequences of {T1c,T1d,T1e,SL5}", implied);

  rep.merge(hull_equality_check(inst, trials, seed, cap));
  return rep;
}

// ---------------------------------------------------------------------------
// Ablation: drop one or more families from the activated description and look
// for an objective whose LP value escapes the integer optimum. Informational:
// a missing witness is reported, never asserted.

struct AblationResult {
  bool witnessed = false;
  std::string witness;
};

inline AblationResult hull_ablation_check(const Instance& inst, const std::vector<Family>& dropped, int trials,
                                          std::uint64_t seed, int cap = -1) {
  HullOracle oracle(inst);
  for (Family f : dropped) oracle.skip(f);
  Rng rng(seed);
  AblationResult out;
  for (int t = 0; t < trials && !out.witnessed; ++t) {
    auto c = rng.next_int_vector(std::size_t(inst.dim()), -9, 9);
    auto [ip_max, ip_min] = ip_range(inst, c, cap);
    std::vector<Rat> cp(c.begin(), c.end()), cn(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) cn[j] = Rat(-c[j]);
    Rat lp_max = oracle.maximize(cp);
    Rat lp_min = -oracle.maximize(cn);
    if (lp_max != Rat(ip_max) || lp_min != Rat(ip_min)) {
      out.witnessed = true;
      std::ostringstream os;
      os << "objective {";
      for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
      os << "} on " << instance_summary(inst) << ": lp [" << rat_to_string(lp_min) << ", "
         << rat_to_string(lp_max) << "] vs ip [" << ip_min << ", " << ip_max << "]";
      out.witness = os.str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The instance matrix: eight structural classes crossed with a size range.

struct MatrixEntry {
  std::string cls;
  Instance inst;
};

inline std::vector<MatrixEntry> matrix_instances(int n_lo = 4, int n_hi = 8) {
  std::vector<MatrixEntry> out;
  auto range = [&](int from, int to) {
    std::vector<int> v;
    for (int j = from; j <= to; ++j) v.push_back(j);
    return v;
  };
  for (int n = n_lo; n <= n_hi; ++n) {
    out.push_back({"proper", new_instance(n, {1, 2}, {2, 3}, 1, n - 2)});
    out.push_back({"s0_empty", new_instance(n, {1, 2}, {3, 4}, 0, n - 2)});
    out.push_back({"s3_large", new_instance(n, {1, 2}, range(2, n), 1, n - 1)});
    out.push_back({"both_degenerate", new_instance(n, {1, 2}, range(3, n), 1, n - 1)});
    out.push_back({"nested", new_instance(n, {1, 2}, {1, 2, 3}, 1, n - 2)});
    out.push_back({"l_zero", new_instance(n, {1, 2}, {2, 3}, 0, n - 2)});
    out.push_back({"u_full", new_instance(n, {1, 2}, {2, 3}, 1, n)});
    out.push_back({"l_equals_u", new_instance(n, {1, 2}, {2, 3}, 2, 2)});
  }
  return out;
}

} // namespace ccms2

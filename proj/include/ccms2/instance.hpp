#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "rat.hpp"

namespace ccms2 {

// Index sets over J = {1..n} are bitmasks; bit j-1 represents index j.
using Mask = std::uint32_t;

inline int mask_count(Mask m) { return __builtin_popcount(m); }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> v;
  for (int j = 0; m != 0; ++j, m >>= 1)
    if (m & 1u) v.push_back(j + 1);
  return v;
}

inline Mask mask_from_indices(const std::vector<int>& idx, int n, const char* field = "index set") {
  Mask m = 0;
  for (int j : idx) {
    if (j < 1 || j > n) throw Error(ErrorKind::bounds, std::string(field) + ": index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    Mask bit = Mask(1) << (j - 1);
    if (m & bit) throw Error(ErrorKind::bad_params, std::string(field) + ": duplicate index " + std::to_string(j));
    m |= bit;
  }
  return m;
}

inline std::string mask_to_string(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int j : mask_indices(m)) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

// Ground set with two distinct monomial supports and a cardinality window on z.
// delta0 tracks the intersection monomial, delta3 the union monomial.
struct Instance {
  int n = 0;
  Mask s1 = 0, s2 = 0;
  Mask s0 = 0, s3 = 0; // s0 = s1 & s2, s3 = s1 | s2
  int l = 0, u = 0;

  bool s0_empty = false;
  bool s3_large = false; // |S3| > n - l: the union monomial is forced to zero
  bool proper = false;   // S0 nonempty and |S3| <= n - l
  bool nested = false;   // S1 subset of S2 or vice versa

  int dim() const { return 4 + n; }
  Mask full_mask() const { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }

  std::vector<int> s1_indices() const { return mask_indices(s1); }
  std::vector<int> s2_indices() const { return mask_indices(s2); }
  std::vector<int> s0_indices() const { return mask_indices(s0); }
  std::vector<int> s3_indices() const { return mask_indices(s3); }
};

// Monomials whose support exceeds n-l can never be 1 on a feasible point; the
// instance is rejected so the caller decides how to restructure the model.
inline std::vector<int> forced_zero_deltas(int n, Mask s1, Mask s2, int l) {
  std::vector<int> out;
  if (mask_count(s1) > n - l) out.push_back(1);
  if (mask_count(s2) > n - l) out.push_back(2);
  return out;
}

inline Instance new_instance(int n, const std::vector<int>& s1_idx, const std::vector<int>& s2_idx, int l, int u) {
  if (n < 1 || n > 31) throw Error(ErrorKind::bounds, "n: must be in 1..31, got " + std::to_string(n));
  if (l < 0) throw Error(ErrorKind::bounds, "l: must be >= 0, got " + std::to_string(l));
  if (u < l) throw Error(ErrorKind::bounds, "u: must be >= l, got u=" + std::to_string(u) + ", l=" + std::to_string(l));
  if (u > n) throw Error(ErrorKind::bounds, "u: must be <= n, got u=" + std::to_string(u) + ", n=" + std::to_string(n));
  Instance inst;
  inst.n = n;
  inst.s1 = mask_from_indices(s1_idx, n, "S1");
  inst.s2 = mask_from_indices(s2_idx, n, "S2");
  if (inst.s1 == 0) throw Error(ErrorKind::degenerate_set, "S1: must be nonempty");
  if (inst.s2 == 0) throw Error(ErrorKind::degenerate_set, "S2: must be nonempty");
  if (inst.s1 == inst.s2) throw Error(ErrorKind::degenerate_set, "S1/S2: sets must be distinct");
  inst.l = l;
  inst.u = u;
  for (int i : forced_zero_deltas(n, inst.s1, inst.s2, l)) {
    const char* name = (i == 1) ? "S1" : "S2";
    throw Error(ErrorKind::forced_zero, std::string("delta") + std::to_string(i) + " is forced to zero: |" + name +
                                            "| > n-l; fix delta" + std::to_string(i) + " = 0 and drop the set before modeling");
  }
  inst.s0 = inst.s1 & inst.s2;
  inst.s3 = inst.s1 | inst.s2;
  inst.s0_empty = (inst.s0 == 0);
  inst.s3_large = (mask_count(inst.s3) > n - l);
  inst.proper = !inst.s0_empty && !inst.s3_large;
  inst.nested = ((inst.s1 & ~inst.s2) == 0) || ((inst.s2 & ~inst.s1) == 0);
  return inst;
}

// Rational point in the (delta0..delta3, z_1..z_n) space.
struct Point {
  std::array<Rat, 4> delta{};
  std::vector<Rat> z;

  Rat coord(int i) const { return i < 4 ? delta[std::size_t(i)] : z[std::size_t(i - 4)]; }
  int dim() const { return 4 + int(z.size()); }

  std::vector<Rat> to_vector() const {
    std::vector<Rat> v(delta.begin(), delta.end());
    v.insert(v.end(), z.begin(), z.end());
    return v;
  }
};

// Binary point stored compactly: dmask bits 0..3 are delta0..delta3.
struct BinaryPoint {
  Mask zmask = 0;
  std::uint8_t dmask = 0;

  bool delta_bit(int i) const { return (dmask >> i) & 1; }
  bool z_bit(int j1) const { return (zmask >> (j1 - 1)) & 1; } // 1-based j

  Point to_point(int n) const {
    Point p;
    for (int i = 0; i < 4; ++i) p.delta[std::size_t(i)] = delta_bit(i) ? 1 : 0;
    p.z.assign(std::size_t(n), Rat(0));
    for (int j = 0; j < n; ++j)
      if ((zmask >> j) & 1) p.z[std::size_t(j)] = 1;
    return p;
  }
};

// Deltas induced by a binary z-assignment; delta0 = 1 when S0 is empty.
inline std::uint8_t delta_mask_of(const Instance& inst, Mask zmask) {
  std::uint8_t d = 0;
  if ((zmask & inst.s0) == 0) d |= 1u << 0; // empty S0 intersects nothing
  if ((zmask & inst.s1) == 0) d |= 1u << 1;
  if ((zmask & inst.s2) == 0) d |= 1u << 2;
  if ((zmask & inst.s3) == 0) d |= 1u << 3;
  return d;
}

inline std::array<Rat, 4> delta_of(const Instance& inst, const std::vector<Rat>& z) {
  if (int(z.size()) != inst.n) throw Error(ErrorKind::bad_params, "z: expected " + std::to_string(inst.n) + " coordinates");
  Mask zm = 0;
  for (int j = 0; j < inst.n; ++j) {
    if (z[std::size_t(j)] == 1)
      zm |= Mask(1) << j;
    else if (z[std::size_t(j)] != 0)
      throw Error(ErrorKind::non_binary, "z: coordinate " + std::to_string(j + 1) + " is not 0/1");
  }
  std::uint8_t d = delta_mask_of(inst, zm);
  std::array<Rat, 4> out{};
  for (int i = 0; i < 4; ++i) out[std::size_t(i)] = ((d >> i) & 1) ? 1 : 0;
  return out;
}

inline Point point_from_vector(int n, const std::vector<Rat>& v) {
  if (int(v.size()) != 4 + n) throw Error(ErrorKind::bad_params, "point: expected 4+n coordinates");
  Point p;
  for (int i = 0; i < 4; ++i) p.delta[std::size_t(i)] = v[std::size_t(i)];
  p.z.assign(v.begin() + 4, v.end());
  return p;
}

inline bool is_feasible(const Instance& inst, const Point& p) {
  if (int(p.z.size()) != inst.n) return false;
  Mask zm = 0;
  for (int j = 0; j < inst.n; ++j) {
    if (p.z[std::size_t(j)] == 1)
      zm |= Mask(1) << j;
    else if (p.z[std::size_t(j)] != 0)
      return false;
  }
  int card = mask_count(zm);
  if (card < inst.l || card > inst.u) return false;
  std::uint8_t want = delta_mask_of(inst, zm);
  for (int i = 0; i < 4; ++i) {
    Rat expect = ((want >> i) & 1) ? 1 : 0;
    if (p.delta[std::size_t(i)] != expect) return false;
  }
  return true;
}

inline bool is_feasible(const Instance& inst, const BinaryPoint& bp) {
  if ((bp.zmask & ~inst.full_mask()) != 0) return false;
  int card = mask_count(bp.zmask);
  if (card < inst.l || card > inst.u) return false;
  return bp.dmask == delta_mask_of(inst, bp.zmask);
}

inline int enum_cap_default() {
  if (const char* env = std::getenv("CCMS2_ENUM_CAP")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= 31) return v;
  }
  return 20;
}

// Bit-reverse so ascending output order is lexicographic in (z_1,...,z_n).
inline Mask lex_mask(Mask m, int n) {
  Mask out = 0;
  for (int j = 0; j < n; ++j)
    if ((m >> j) & 1) out |= Mask(1) << (n - 1 - j);
  return out;
}

inline std::vector<BinaryPoint> enumerate_points(const Instance& inst, int cap = -1) {
  if (cap < 0) cap = enum_cap_default();
  if (inst.n > cap) throw Error(ErrorKind::cap_exceeded, "n: enumeration cap " + std::to_string(cap) + " exceeded (n=" + std::to_string(inst.n) + ")");
  std::vector<BinaryPoint> out;
  Mask end = Mask(1) << inst.n;
  for (Mask m = 0; m < end; ++m) {
    Mask zm = lex_mask(m, inst.n);
    int card = mask_count(zm);
    if (card < inst.l || card > inst.u) continue;
    out.push_back(BinaryPoint{zm, delta_mask_of(inst, zm)});
  }
  return out;
}

// Distinct delta patterns over the feasible set, in enumeration order.
inline std::vector<std::uint8_t> delta_projection(const Instance& inst, int cap = -1) {
  std::vector<std::uint8_t> seen;
  for (const auto& bp : enumerate_points(inst, cap))
    if (std::find(seen.begin(), seen.end(), bp.dmask) == seen.end()) seen.push_back(bp.dmask);
  std::sort(seen.begin(), seen.end());
  return seen;
}

// ---------------------------------------------------------------------------
// x-space problem: minimize/maximize beta + gamma1*prod_{T1} x + gamma2*prod_{T2} x + c.x
// subject to L <= sum x <= U, x binary.

enum class Sense { minimize, maximize };

struct XPolyProblem {
  int n = 0;
  std::vector<int> t1, t2;
  int L = 0, U = 0;
  std::array<Rat, 2> gamma{};
  Rat beta;
  std::vector<Rat> c;
  Sense sense = Sense::minimize;
};

struct XTransform {
  Instance inst;
  std::vector<Rat> objective; // over (delta0..delta3, z)
  Rat offset;                 // value(x) = offset + objective . (delta,z)
  Sense z_sense = Sense::minimize;
};

// Complementing x = 1 - z turns monomials in x into intersection products of
// (1-z) and swaps the cardinality window to [n-U, n-L].
inline XTransform from_x_space(const XPolyProblem& xp) {
  if (xp.n < 1) throw Error(ErrorKind::bounds, "n: must be >= 1");
  if (xp.L < 0 || xp.L > xp.U || xp.U > xp.n)
    throw Error(ErrorKind::bounds, "L/U: need 0 <= L <= U <= n");
  if (int(xp.c.size()) != xp.n) throw Error(ErrorKind::bad_params, "c: expected n entries");
  XTransform t;
  t.inst = new_instance(xp.n, xp.t1, xp.t2, xp.n - xp.U, xp.n - xp.L);
  t.objective.assign(std::size_t(4 + xp.n), Rat(0));
  t.objective[1] = xp.gamma[0];
  t.objective[2] = xp.gamma[1];
  t.offset = xp.beta;
  for (int j = 0; j < xp.n; ++j) {
    t.objective[std::size_t(4 + j)] = -xp.c[std::size_t(j)];
    t.offset += xp.c[std::size_t(j)];
  }
  t.z_sense = xp.sense;
  return t;
}

struct XSolution {
  std::vector<Rat> x;
  Rat value;
  std::array<Rat, 2> monomials{};
};

inline XSolution to_x_solution(const XPolyProblem& xp, const XTransform& t, const Point& p) {
  if (!is_feasible(t.inst, p)) throw Error(ErrorKind::infeasible_point, "point: not feasible for the transformed instance");
  XSolution s;
  s.x.resize(std::size_t(xp.n));
  for (int j = 0; j < xp.n; ++j) s.x[std::size_t(j)] = 1 - p.z[std::size_t(j)];
  s.monomials[0] = p.delta[1];
  s.monomials[1] = p.delta[2];
  s.value = xp.beta + xp.gamma[0] * p.delta[1] + xp.gamma[1] * p.delta[2];
  for (int j = 0; j < xp.n; ++j) s.value += xp.c[std::size_t(j)] * s.x[std::size_t(j)];
  return s;
}

// ---------------------------------------------------------------------------
// Augmentation: embed a possibly degenerate instance into a proper one whose
// hull, intersected with {new z = 0}, recovers the original set.

struct Augmented {
  Instance inst;
  int orig_n = 0;
  std::vector<int> new_indices; // indices in the augmented ground set beyond orig_n
};

inline Augmented augment(const Instance& in) {
  int k0 = in.s0_empty ? 1 : 0;
  int n_plus = std::max(in.n, mask_count(in.s3) + in.l) + k0;
  std::vector<int> s1 = in.s1_indices();
  std::vector<int> s2 = in.s2_indices();
  if (k0 == 1) {
    s1.push_back(in.n + 1);
    s2.push_back(in.n + 1);
  }
  Augmented a;
  a.inst = new_instance(n_plus, s1, s2, in.l, in.u);
  a.orig_n = in.n;
  for (int j = in.n + 1; j <= n_plus; ++j) a.new_indices.push_back(j);
  return a;
}

// ---------------------------------------------------------------------------
// For a fixed-cardinality window (l = u), one index outside S3 can be projected
// out via z_drop = u - sum of the others, leaving an (n-1, u-1, u) instance.

struct Reduced {
  Instance inst;
  int dropped = 0; // original 1-based index
  int rhs_u = 0;   // z_drop = rhs_u - sum of remaining z
};

inline int reduced_index(int orig, int dropped) { return orig < dropped ? orig : orig - 1; }

inline Reduced reduce_l_eq_u(const Instance& in, int drop);

// Canonical choice: drop the largest index outside both supports.
inline Reduced reduce_l_eq_u(const Instance& in) {
  if (in.l != in.u) throw Error(ErrorKind::unsupported, "l/u: reduction needs l == u");
  for (int j = in.n; j >= 1; --j)
    if (((in.s3 >> (j - 1)) & 1) == 0) return reduce_l_eq_u(in, j);
  throw Error(ErrorKind::unsupported, "drop: every index lies in S1 or S2");
}

inline Reduced reduce_l_eq_u(const Instance& in, int drop) {
  if (in.l != in.u) throw Error(ErrorKind::unsupported, "l/u: reduction needs l == u");
  if (in.u < 2) throw Error(ErrorKind::unsupported, "u: reduction needs l = u >= 2");
  if (drop < 1 || drop > in.n) throw Error(ErrorKind::bounds, "drop: outside 1..n");
  if ((in.s3 >> (drop - 1)) & 1) throw Error(ErrorKind::bad_params, "drop: must lie outside S1 and S2");
  std::vector<int> s1, s2;
  for (int j : in.s1_indices()) s1.push_back(reduced_index(j, drop));
  for (int j : in.s2_indices()) s2.push_back(reduced_index(j, drop));
  Reduced r;
  r.inst = new_instance(in.n - 1, s1, s2, in.u - 1, in.u);
  r.dropped = drop;
  r.rhs_u = in.u;
  return r;
}

} // namespace ccms2

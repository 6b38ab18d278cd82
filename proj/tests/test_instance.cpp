#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ccms2/instance.hpp"
#include "ccms2/error.hpp"

using namespace ccms2;

static Instance mk(int n, std::vector<int> s1, std::vector<int> s2, int l, int u) {
    return new_instance(n, s1, s2, l, u);
}

TEST_CASE("mask helpers") {
    Mask m = mask_from_indices({1, 4, 6}, 6);
    CHECK(mask_count(m) == 3);
    CHECK(mask_to_string(m) == "{1,4,6}");
    CHECK(mask_indices(m) == std::vector<int>{1, 4, 6});
    CHECK(mask_to_string(0) == "{}");
    CHECK_THROWS_AS(mask_from_indices({0}, 6), Error);
    CHECK_THROWS_AS(mask_from_indices({7}, 6), Error);
    CHECK_THROWS_AS(mask_from_indices({2, 2}, 6), Error);
}

TEST_CASE("instance classification flags") {
    Instance p = mk(6, {1, 2}, {2, 3}, 1, 4);
    CHECK(p.proper);
    CHECK(!p.s0_empty);
    CHECK(!p.s3_large);
    CHECK(!p.nested);
    CHECK(mask_indices(p.s0) == std::vector<int>{2});
    CHECK(mask_indices(p.s3) == std::vector<int>{1, 2, 3});

    Instance e = mk(6, {1, 2}, {3, 4}, 0, 4);
    CHECK(e.s0_empty);
    CHECK(!e.proper);
    CHECK(e.s0 == 0u);
}

TEST_CASE("large union flag and nestedness") {
    // n=6, l=2: |S3| = 6 > n - l = 4 while |S1|, |S2| <= 4
    Instance g = mk(6, {1, 2, 3}, {3, 4, 5, 6}, 2, 4);
    CHECK(g.s3_large);
    CHECK(!g.proper);

    // nestedness is orthogonal to the proper flag: S0 = S1 is nonempty here
    Instance nst = mk(6, {1, 2}, {1, 2, 3}, 1, 4);
    CHECK(nst.nested);
    CHECK(nst.proper);
    CHECK(nst.s0 == nst.s1);
    CHECK(nst.s3 == nst.s2);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(mk(6, {}, {1}, 0, 3), Error);            // empty set
    CHECK_THROWS_AS(mk(6, {1, 2}, {1, 2}, 0, 3), Error);     // identical sets
    CHECK_THROWS_AS(mk(6, {1}, {2}, 2, 1), Error);           // u < l
    CHECK_THROWS_AS(mk(6, {1}, {2}, 0, 7), Error);           // u > n
    CHECK_THROWS_AS(mk(6, {1}, {2}, -1, 3), Error);          // l < 0
    // forced zero: |S1| > n - l
    CHECK_THROWS_AS(mk(4, {1, 2, 3}, {2, 4}, 2, 3), Error);
    try {
        mk(4, {1, 2, 3}, {2, 4}, 2, 3);
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::forced_zero);
    }
}

TEST_CASE("delta semantics from z support") {
    Instance p = mk(6, {1, 2}, {2, 3}, 1, 4);
    // z = {2}: hits S0, S1, S2, S3 -> all deltas 0
    CHECK(delta_mask_of(p, mask_from_indices({2}, 6)) == 0x0);
    // z = {4}: misses everything -> all deltas 1
    CHECK(delta_mask_of(p, mask_from_indices({4}, 6)) == 0xF);
    // z = {1}: hits S1 and S3 only -> delta0=1, delta2=1
    CHECK(delta_mask_of(p, mask_from_indices({1}, 6)) == 0x5);
    // z = {3}: hits S2 and S3 -> delta0=1, delta1=1
    CHECK(delta_mask_of(p, mask_from_indices({3}, 6)) == 0x3);
    // z = {1,3}: hits S1, S2, S3, misses S0 -> delta0=1 only
    CHECK(delta_mask_of(p, mask_from_indices({1, 3}, 6)) == 0x1);

    // empty S0 pins delta0 = 1 regardless
    Instance e = mk(6, {1, 2}, {3, 4}, 1, 4);
    CHECK((delta_mask_of(e, mask_from_indices({1, 3}, 6)) & 1u) == 1u);
}

TEST_CASE("enumeration count matches closed-form binomial sum") {
    // n=6, window [1,3]: C(6,1)+C(6,2)+C(6,3) = 6+15+20 = 41
    Instance p = mk(6, {1, 2, 3}, {3, 4, 5}, 1, 3);
    auto pts = enumerate_points(p);
    CHECK(pts.size() == 41);
    // every point feasible, delta mask consistent
    std::set<std::pair<Mask, uint8_t>> seen;
    for (const auto& bp : pts) {
        int c = mask_count(bp.zmask);
        CHECK(c >= 1);
        CHECK(c <= 3);
        CHECK(bp.dmask == delta_mask_of(p, bp.zmask));
        seen.insert({bp.zmask, bp.dmask});
    }
    CHECK(seen.size() == 41);
    // lexicographic ordering of z vectors
    for (size_t i = 1; i < pts.size(); ++i) {
        CHECK(lex_mask(pts[i - 1].zmask, p.n) < lex_mask(pts[i].zmask, p.n));
    }
}

TEST_CASE("delta projection of the proper instance has exactly five patterns") {
    Instance p = mk(6, {1, 2}, {2, 3}, 1, 4);
    auto proj = delta_projection(p);
    CHECK(proj == std::vector<uint8_t>{0x0, 0x1, 0x3, 0x5, 0xF});
}

TEST_CASE("enumeration cap throws beyond limit") {
    Instance p = mk(8, {1, 2}, {2, 3}, 0, 8);
    CHECK_NOTHROW(enumerate_points(p, 8));
    CHECK_THROWS_AS(enumerate_points(p, 7), Error);
}

TEST_CASE("binary point feasibility and rejection") {
    Instance p = mk(6, {1, 2}, {2, 3}, 1, 4);
    BinaryPoint good{mask_from_indices({4}, 6), 0xF};
    CHECK(is_feasible(p, good));
    BinaryPoint bad_delta{mask_from_indices({4}, 6), 0x0};
    CHECK(!is_feasible(p, bad_delta));
    BinaryPoint below{0, 0xF};  // cardinality 0 < l = 1
    CHECK(!is_feasible(p, below));

    Point fr = good.to_point(6);
    fr.z[3] = Rat(1, 2);
    CHECK(!is_feasible(p, fr));
    CHECK_THROWS_AS(delta_of(p, fr.z), Error);
}

TEST_CASE("x space transform round-trips objective values") {
    // max 3 x1 + 2 x2 - x3 with monomial terms gamma1 (1-x over S1), etc.
    XPolyProblem xp;
    xp.n = 4;
    xp.t1 = {1, 2};
    xp.t2 = {2, 3};
    xp.L = 1;
    xp.U = 3;
    xp.gamma[0] = Rat(5);
    xp.gamma[1] = Rat(-2);
    xp.beta = Rat(7);
    xp.c = {Rat(3), Rat(2), Rat(-1), Rat(0)};
    xp.sense = Sense::maximize;
    XTransform tr = from_x_space(xp);
    const Instance& inst = tr.inst;
    CHECK(inst.n == 4);
    CHECK(inst.l == 1);
    CHECK(inst.u == 3);

    // brute force over all x with cardinality in window, via z = 1 - x
    Mask t1m = mask_from_indices(xp.t1, 4);
    Mask t2m = mask_from_indices(xp.t2, 4);
    Rat best(-1000000);
    for (Mask xm = 0; xm < 16u; ++xm) {
        int ones = mask_count(xm);
        if (ones < xp.L || ones > xp.U) continue;
        Rat val = xp.beta;
        for (int j = 1; j <= 4; ++j)
            if (xm & (1u << (j - 1))) val += xp.c[j - 1];
        if ((xm & t1m) == t1m) val += xp.gamma[0];
        if ((xm & t2m) == t2m) val += xp.gamma[1];
        if (val > best) best = val;
    }

    Rat best_z(-1000000);
    for (const auto& bp : enumerate_points(inst)) {
        Point pt = bp.to_point(inst.n);
        Rat val = tr.offset;
        for (int i = 0; i < inst.dim(); ++i) val += tr.objective[i] * pt.coord(i);
        if (val > best_z) best_z = val;
    }
    CHECK(best == best_z);

    // solution mapping: value recomputed from x matches offset + objective.z
    for (const auto& bp : enumerate_points(inst)) {
        Point pt = bp.to_point(inst.n);
        XSolution xs = to_x_solution(xp, tr, pt);
        Rat via_z = tr.offset;
        for (int i = 0; i < inst.dim(); ++i) via_z += tr.objective[i] * pt.coord(i);
        CHECK(xs.value == via_z);
        for (int j = 0; j < 4; ++j) CHECK(xs.x[j] == Rat(1) - pt.z[j]);
    }
}

TEST_CASE("augmentation produces a proper instance embedding the original") {
    // empty intersection: one shared index appended
    Instance e = mk(6, {1, 2}, {3, 4}, 1, 4);
    Augmented au = augment(e);
    CHECK(au.inst.proper);
    CHECK(!au.inst.s0_empty);
    CHECK(!au.inst.s3_large);
    CHECK(au.orig_n == 6);
    // new index lands in both sets
    CHECK(mask_count(au.inst.s0) == 1);

    // large union: padding variables only
    Instance g = mk(6, {1, 2, 3}, {3, 4, 5, 6}, 2, 4);
    Augmented ag = augment(g);
    CHECK(!ag.inst.s3_large);
    CHECK(ag.inst.proper);
    CHECK(ag.inst.n >= mask_count(ag.inst.s3) + ag.inst.l);

    // proper instance: unchanged
    Instance p = mk(6, {1, 2}, {2, 3}, 1, 4);
    Augmented ap = augment(p);
    CHECK(ap.inst.n == 6);
    CHECK(ap.new_indices.empty());
}

TEST_CASE("fixed cardinality reduction drops one variable") {
    Instance p = mk(6, {1, 2}, {2, 3}, 3, 3);
    Reduced rd = reduce_l_eq_u(p);
    CHECK(rd.inst.n == 5);
    CHECK(rd.inst.l == 2);
    CHECK(rd.inst.u == 3);
    CHECK(rd.dropped == 6);
    CHECK((p.s3 & (1u << (rd.dropped - 1))) == 0u);

    Instance q = mk(6, {1, 2}, {2, 3}, 1, 3);
    CHECK_THROWS_AS(reduce_l_eq_u(q), Error);
}

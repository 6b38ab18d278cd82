#include <catch2/catch_amalgamated.hpp>

#include "ccms2/rng.hpp"
#include "ccms2/solver.hpp"
#include "ccms2/verify.hpp"

using namespace ccms2;

static Instance reference() { return new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3); }

static Rat objective_at(const std::vector<Rat>& c, const Point& p) {
  Rat acc(0);
  for (int j = 0; j < p.dim(); ++j)
    if (c[std::size_t(j)] != 0) acc += c[std::size_t(j)] * p.coord(j);
  return acc;
}

static bool binary_point(const Point& p) {
  for (int j = 0; j < p.dim(); ++j) {
    Rat v = p.coord(j);
    if (v != 0 && v != 1) return false;
  }
  return true;
}

TEST_CASE("documented optimization runs on the reference instance") {
  Instance inst = reference();

  SECTION("maximize the two monomials") {
    std::vector<Rat> c(10, Rat(0));
    c[1] = 1;
    c[2] = 1;
    auto rep = optimize(inst, c, Sense::maximize);
    REQUIRE(rep.status == SolveStatus::optimal);
    CHECK(rep.value == Rat(2));
    // the only optimum keeps z off S3 entirely
    CHECK(rep.point.delta == std::array<Rat, 4>{Rat(1), Rat(1), Rat(1), Rat(1)});
    CHECK(rep.point.z == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});
  }

  SECTION("cardinality reward against a union penalty") {
    std::vector<Rat> c(10, Rat(0));
    c[3] = -10;
    for (int j = 4; j < 10; ++j) c[std::size_t(j)] = 1;
    auto rep = optimize(inst, c, Sense::maximize);
    REQUIRE(rep.status == SolveStatus::optimal);
    CHECK(rep.value == Rat(3));
    CHECK(rep.point.delta[3] == Rat(0));
    Rat card(0);
    for (const Rat& zj : rep.point.z) card += zj;
    CHECK(card == Rat(3));
  }

  SECTION("zero objective is pure feasibility") {
    std::vector<Rat> c(10, Rat(0));
    auto rep = optimize(inst, c, Sense::minimize);
    REQUIRE(rep.status == SolveStatus::optimal);
    CHECK(rep.value == Rat(0));
    CHECK(is_feasible(inst, rep.point));
  }

  SECTION("report invariants and determinism") {
    std::vector<Rat> c = {Rat(0), Rat(-3), Rat(2), Rat(1), Rat(-4), Rat(1), Rat(2), Rat(-4), Rat(1), Rat(4)};
    auto a = optimize(inst, c, Sense::maximize);
    auto b = optimize(inst, c, Sense::maximize);
    REQUIRE(a.status == SolveStatus::optimal);
    CHECK(a.value == objective_at(c, a.point));
    CHECK(is_feasible(inst, a.point));
    CHECK(binary_point(a.point));
    CHECK(int(a.trail.size()) == a.rounds);
    long long tagged = 0;
    for (const auto& [fam, cnt] : a.cuts_by_family) tagged += cnt;
    CHECK(tagged == a.cuts_total);
    CHECK(a.value == b.value);
    CHECK(a.rounds == b.rounds);
    CHECK(a.cuts_total == b.cuts_total);
    CHECK(a.point.z == b.point.z);
  }
}

TEST_CASE("cutting planes close a strict relaxation gap and respect the round cap") {
  Instance inst = reference();
  // base LP relaxation peaks at 15/2 on this objective, the binary optimum is 7
  std::vector<Rat> c = {Rat(0), Rat(-3), Rat(2), Rat(1), Rat(-4), Rat(1), Rat(2), Rat(-4), Rat(1), Rat(4)};
  auto [ip_max, ip_min] = ip_range(inst, {0, -3, 2, 1, -4, 1, 2, -4, 1, 4});
  REQUIRE(ip_max == 7);

  auto full = optimize(inst, c, Sense::maximize);
  REQUIRE(full.status == SolveStatus::optimal);
  CHECK(full.value == Rat(7));
  CHECK(full.rounds >= 2);
  CHECK(full.cuts_total >= 1);
  CHECK(full.trail.back().cuts == 0);

  SolveOptions one;
  one.max_rounds = 1;
  auto capped = optimize(inst, c, Sense::maximize, one);
  CHECK(capped.status == SolveStatus::round_cap);
  CHECK(capped.value == Rat(15, 2)); // the untightened relaxation value is still a bound
  CHECK(capped.rounds == 1);
}

TEST_CASE("optimization matches enumeration across instance shapes and random objectives") {
  const Instance instances[] = {
      reference(),
      new_instance(5, {1, 2}, {3, 4}, 0, 2),    // empty intersection
      new_instance(4, {1, 2}, {1, 2, 3}, 1, 2), // nested supports
      new_instance(6, {1, 2}, {2, 3}, 2, 2),    // fixed cardinality
      new_instance(6, {1, 2}, {2, 3, 4, 5}, 1, 4),
  };
  int stream = 0;
  for (const Instance& inst : instances) {
    Rng rng(mix_seed(31, std::uint64_t(++stream)));
    for (int t = 0; t < 8; ++t) {
      auto ci = rng.next_int_vector(inst.dim(), -5, 5);
      std::vector<Rat> c(ci.begin(), ci.end());
      auto [mx, mn] = ip_range(inst, ci);
      auto ra = optimize(inst, c, Sense::maximize);
      auto rb = optimize(inst, c, Sense::minimize);
      INFO(instance_summary(inst) << " trial " << t);
      REQUIRE(ra.status == SolveStatus::optimal);
      REQUIRE(rb.status == SolveStatus::optimal);
      CHECK(ra.value == Rat(mx));
      CHECK(rb.value == Rat(mn));
      CHECK(is_feasible(inst, ra.point));
      CHECK(is_feasible(inst, rb.point));
      CHECK(binary_point(ra.point));
      CHECK(objective_at(c, rb.point) == rb.value);
    }
  }
}

TEST_CASE("purification lands on a binary point of the pinned value") {
  Instance inst = reference();

  SECTION("optimal face with many vertices") {
    std::vector<Rat> c(10, Rat(0));
    c[0] = 2;
    for (int j = 4; j < 10; ++j) c[std::size_t(j)] = 1;
    auto [mx, mn] = ip_range(inst, {2, 0, 0, 0, 1, 1, 1, 1, 1, 1});
    REQUIRE(mx == 5);
    CutPool pool(base_system(inst));
    SolveReport stats;
    Point p = purify(inst, pool, c, Rat(mx), &stats);
    CHECK(is_feasible(inst, p));
    CHECK(objective_at(c, p) == Rat(5));
    CHECK(stats.lp_calls >= 1);
  }

  SECTION("zero objective pins the whole hull") {
    std::vector<Rat> c(10, Rat(0));
    CutPool pool(base_system(inst));
    Point p = purify(inst, pool, c, Rat(0));
    CHECK(is_feasible(inst, p));
  }

  SECTION("unattainable value is rejected") {
    std::vector<Rat> c(10, Rat(0));
    c[1] = 1;
    CutPool pool(base_system(inst));
    CHECK_THROWS_AS(purify(inst, pool, c, Rat(100)), Error);
  }
}

TEST_CASE("x-space solves fold the complement transform and the offset") {
  XPolyProblem xp;
  xp.n = 4;
  xp.t1 = {1, 2};
  xp.t2 = {2, 3};
  xp.L = 1;
  xp.U = 3;
  xp.gamma = {Rat(1), Rat(1)};
  xp.c.assign(4, Rat(0));
  xp.sense = Sense::maximize;

  auto r = solve_x_problem(xp);
  REQUIRE(r.report.status == SolveStatus::optimal);
  CHECK(r.report.value == Rat(2));
  CHECK(r.x.x == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(0)});
  CHECK(r.x.value == r.report.value);
  CHECK(r.x.monomials[0] == Rat(1));
  CHECK(r.x.monomials[1] == Rat(1));

  xp.sense = Sense::minimize;
  auto r2 = solve_x_problem(xp);
  CHECK(r2.report.value == Rat(0));

  xp.sense = Sense::maximize;
  xp.c[3] = Rat(-1);
  auto r3 = solve_x_problem(xp);
  CHECK(r3.report.value == Rat(2)); // the penalized x4 simply stays off
  CHECK(r3.report.offset == Rat(-1));
  CHECK(r3.x.x[3] == Rat(0));
}

TEST_CASE("general instance validation") {
  CHECK_THROWS_AS(new_general_instance(6, {{1, 2}}, 1, 3), Error);
  CHECK_THROWS_AS(new_general_instance(6, {{1, 2}, {1, 2}}, 1, 3), Error);
  CHECK_THROWS_AS(new_general_instance(6, {{1, 2}, {1, 2, 3, 4, 5, 6}}, 1, 3), Error);
  CHECK_THROWS_AS(new_general_instance(6, {{1, 2}, {2, 3}}, 4, 3), Error);

  GeneralInstance g = new_general_instance(6, {{1, 2}, {2, 3}, {3, 4}}, 1, 3);
  CHECK(g.m() == 3);
  CHECK(g.dim() == 9);
  CHECK(enumerate_general_points(g).size() == 41);
}

TEST_CASE("pairwise cuts: quiet on feasible binary points, pair-space for m = 2") {
  SECTION("no cut at any feasible binary point") {
    GeneralInstance g = new_general_instance(6, {{1, 2}, {2, 3, 4}, {4, 5}}, 1, 3);
    for (const auto& bp : enumerate_general_points(g)) {
      auto cuts = pairwise_cuts(g, general_point_vector(g, bp));
      INFO("zmask " << bp.zmask);
      CHECK(cuts.empty());
    }
  }

  SECTION("m = 2 reduces to separation on the lifted pair point") {
    GeneralInstance g = new_general_instance(6, {{1, 2, 3}, {3, 4, 5}}, 1, 3);
    Instance pair = pair_instance(g, 1, 2);
    Rng rng(mix_seed(37, 1));
    int nonempty = 0;
    for (int t = 0; t < 25; ++t) {
      std::vector<Rat> pt(std::size_t(g.dim()));
      for (auto& v : pt) v = rng.next_unit_rat();
      auto general = pairwise_cuts(g, pt);
      auto direct = separate_all(pair, lift_pair_point(g, 1, 2, pt));
      REQUIRE(general.size() == direct.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(general[i].i == 1);
        CHECK(general[i].k == 2);
        CHECK(general[i].row.a == direct[i].ineq.a);
        CHECK(general[i].row.rhs == direct[i].ineq.rhs);
        CHECK(general[i].violation == direct[i].violation);
      }
      if (!general.empty()) ++nonempty;
    }
    CHECK(nonempty > 5); // random interior points do get separated
  }

  SECTION("binary lift recovers the true intersection and union monomials") {
    GeneralInstance g = new_general_instance(6, {{1, 2, 3}, {3, 4, 5}}, 1, 3);
    Instance pair = pair_instance(g, 1, 2);
    for (const auto& bp : enumerate_general_points(g)) {
      Point lifted = lift_pair_point(g, 1, 2, general_point_vector(g, bp));
      CHECK(is_feasible(pair, lifted));
    }
  }

  SECTION("input validation") {
    GeneralInstance g = new_general_instance(4, {{1}, {2}}, 1, 2);
    std::vector<Rat> bad(std::size_t(g.dim()), Rat(0));
    bad[0] = Rat(2);
    CHECK_THROWS_AS(pairwise_cuts(g, bad), Error);
    CHECK_THROWS_AS(pairwise_cuts(g, std::vector<Rat>(3, Rat(0))), Error);
  }
}

TEST_CASE("general optimizer is exact at m = 2 and a certified bound beyond") {
  SECTION("m = 2 matches the two-monomial solver") {
    GeneralInstance g = new_general_instance(6, {{1, 2, 3}, {3, 4, 5}}, 1, 3);
    Instance inst = pair_instance(g, 1, 2);
    Rng rng(mix_seed(41, 1));
    for (int t = 0; t < 6; ++t) {
      auto ci = rng.next_int_vector(g.dim(), -5, 5);
      std::vector<Rat> cg(ci.begin(), ci.end());
      std::vector<Rat> c2(10, Rat(0));
      c2[1] = cg[0];
      c2[2] = cg[1];
      for (int j = 0; j < 6; ++j) c2[std::size_t(4 + j)] = cg[std::size_t(2 + j)];
      for (Sense sense : {Sense::maximize, Sense::minimize}) {
        auto rg = optimize_general(g, cg, sense);
        auto r2 = optimize(inst, c2, sense);
        INFO("trial " << t);
        REQUIRE(rg.status == SolveStatus::optimal);
        CHECK(rg.exact);
        CHECK(rg.bound == r2.value);
        CHECK(rg.best_value == r2.value);
      }
    }
  }

  SECTION("nested triple closes to the enumeration optimum") {
    GeneralInstance g = new_general_instance(6, {{1}, {1, 2}, {1, 2, 3}}, 1, 3);
    Rng rng(mix_seed(42, 1));
    for (int t = 0; t < 8; ++t) {
      auto ci = rng.next_int_vector(g.dim(), -5, 5);
      std::vector<Rat> c(ci.begin(), ci.end());
      auto [mx, mn] = general_ip_range(g, c);
      auto ra = optimize_general(g, c, Sense::maximize);
      auto rb = optimize_general(g, c, Sense::minimize);
      INFO("trial " << t);
      CHECK(ra.bound == mx);
      CHECK(rb.bound == mn);
    }
  }

  SECTION("overlapping m = 3: valid bound, feasible incumbent, reported gap") {
    GeneralInstance g = new_general_instance(7, {{1, 2}, {2, 3, 4}, {4, 5, 6}}, 1, 4);
    Rng rng(mix_seed(43, 1));
    for (int t = 0; t < 8; ++t) {
      auto ci = rng.next_int_vector(g.dim(), -5, 5);
      std::vector<Rat> c(ci.begin(), ci.end());
      auto [mx, mn] = general_ip_range(g, c);
      auto ra = optimize_general(g, c, Sense::maximize);
      REQUIRE(ra.status == SolveStatus::optimal);
      CHECK(ra.bound >= mx);
      CHECK(ra.best_value <= mx);
      if (ra.exact) CHECK(ra.bound == mx);
      Mask zm = 0;
      for (int j = 1; j <= g.n; ++j)
        if (ra.best_point[std::size_t(g.m() + j - 1)] == 1) zm |= Mask(1) << (j - 1);
      CHECK(general_delta_mask(g, zm) == [&] {
        Mask dm = 0;
        for (int i = 1; i <= g.m(); ++i)
          if (ra.best_point[std::size_t(i - 1)] == 1) dm |= Mask(1) << (i - 1);
        return dm;
      }());
      int card = mask_count(zm);
      CHECK(card >= g.l);
      CHECK(card <= g.u);
    }
  }

  SECTION("pairwise bound dominates the standard linearization bound") {
    GeneralInstance g = new_general_instance(6, {{1, 2}, {2, 3, 4}, {4, 5}}, 1, 3);
    Rng rng(mix_seed(44, 1));
    SolveOptions first_lp_only;
    first_lp_only.max_rounds = 1;
    for (int t = 0; t < 30; ++t) {
      auto ci = rng.next_int_vector(g.dim(), -5, 5);
      std::vector<Rat> c(ci.begin(), ci.end());
      auto lin = optimize_general(g, c, Sense::minimize, first_lp_only);
      auto full = optimize_general(g, c, Sense::minimize);
      INFO("trial " << t);
      CHECK(full.bound >= lin.bound);
    }
  }

  SECTION("scale guard") {
    GeneralInstance g = new_general_instance(25, {{1}, {2}}, 0, 25);
    std::vector<Rat> c(std::size_t(g.dim()), Rat(0));
    CHECK_THROWS_AS(optimize_general(g, c, Sense::maximize), Error);
  }
}

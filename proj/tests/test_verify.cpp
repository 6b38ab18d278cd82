#include <catch2/catch_amalgamated.hpp>

#include "ccms2/verify.hpp"

using namespace ccms2;

static Instance reference() { return new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3); }

TEST_CASE("polytope_max agrees with direct enumeration on the base system") {
  Instance inst = reference();
  auto rows = base_system(inst);
  std::vector<Rat> c(std::size_t(inst.dim()), Rat(0));
  c[0] = -1;
  c[1] = 1;
  c[2] = 1;
  c[3] = -1;
  auto opt = polytope_max(rows, c);
  CHECK(opt.value == Rat(0)); // the objective is the lhs of a base row with rhs 0
}

TEST_CASE("hull oracle reproduces integer optima on the documented instances") {
  SECTION("proper instance") {
    auto rep = hull_equality_check(reference(), 100, 7);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
  }
  SECTION("empty intersection instance") {
    auto rep = hull_equality_check(new_instance(5, {1, 2}, {3, 4}, 0, 2), 100, 7);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
  }
}

TEST_CASE("validity scan passes on generated rows and catches a corrupted one") {
  Instance inst = reference();
  auto rows = all_family_ineqs(inst);
  REQUIRE(rows.size() > 27);
  auto rep = check_validity(inst, rows);
  INFO(rep.to_text());
  CHECK(rep.all_pass());

  auto bad = rows;
  bad[5].rhs -= 1;
  auto rep2 = check_validity(inst, bad);
  CHECK(!rep2.all_pass());
  CHECK(rep2.checks[0].detail.find("violated at z=") != std::string::npos);
}

TEST_CASE("implication: a generator implies itself and redundant rows certify") {
  Instance inst = reference();
  auto base = base_system(inst);
  CHECK(implication_check({base[0]}, base[0]));

  // every redundant-family row follows from its documented generators
  int certified = 0, skipped = 0;
  const Family fams[] = {Family::R1u, Family::R2u, Family::R3u, Family::R4u, Family::R5u, Family::R6u,
                         Family::R1l, Family::R2l, Family::R3l, Family::R4l, Family::R5l, Family::R6l};
  Instance small = new_instance(5, {1, 2}, {2, 3}, 1, 3);
  for (Family f : fams) {
    std::vector<FamilyParams> variants;
    if (f == Family::R3u || f == Family::R3l) {
      FamilyParams p1, p2;
      p1.i = 1;
      p2.i = 2;
      variants = {p1, p2};
    } else {
      variants = {FamilyParams{}};
    }
    for (const auto& p : variants) {
      for (Mask q = 0; q < (Mask(1) << small.n); ++q) {
        auto row = redundant_family(small, f, p, q);
        if (!row) {
          ++skipped;
          continue;
        }
        auto gens = redundancy_generators(small, f, p, q);
        INFO(family_name(f) << " q=" << mask_to_string(q));
        CHECK(implication_check(gens, *row));
        ++certified;
      }
    }
  }
  CHECK(certified > 300);
  CHECK(skipped > 0); // R4/R6 side conditions reject some Q
}

TEST_CASE("implication reports an unbounded generator system distinctly") {
  Instance inst = reference();
  auto base = base_system(inst);
  std::vector<LinIneq> only_t1a{base[0]}; // delta0 <= 1 alone cannot bound z
  std::vector<Rat> a(std::size_t(inst.dim()), Rat(0));
  a[4] = 1;
  CHECK(implication_status(only_t1a, a, Rat(5)) == Implication::unbounded);
}

TEST_CASE("affine hull closed form and enumerated cross-check") {
  SECTION("single-element intersection gives one equality") {
    Instance inst = reference();
    auto eqs = affine_hull(inst);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].a[0] == Rat(1));            // delta0
    CHECK(eqs[0].a[std::size_t(4 + 2)] == Rat(1)); // z_3
    CHECK(eqs[0].b == Rat(1));
    auto rep = affine_hull_report(inst);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(hull_dimension(inst) == inst.dim() - 1);
  }
  SECTION("larger intersection is full-dimensional") {
    Instance inst = new_instance(7, {1, 2, 3}, {2, 3, 4, 5}, 1, 3);
    CHECK(affine_hull(inst).empty());
    auto rep = affine_hull_report(inst);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(hull_dimension(inst) == inst.dim());
  }
  SECTION("empty intersection carries the convention equality") {
    Instance inst = new_instance(5, {1, 2}, {3, 4}, 0, 2);
    auto eqs = affine_hull(inst);
    AffineEquality conv;
    conv.a.assign(std::size_t(inst.dim()), Rat(0));
    conv.a[0] = 1;
    conv.b = 1;
    CHECK(equality_implied(eqs, conv));
    auto rep = affine_hull_report(inst);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
  }
  SECTION("fixed cardinality adds the window equality") {
    Instance inst = new_instance(6, {1, 2}, {2, 3}, 2, 2);
    CHECK(!affine_closed_form_applies(inst));
    auto eqs = affine_hull(inst);
    AffineEquality window;
    window.a.assign(std::size_t(inst.dim()), Rat(0));
    for (int j = 0; j < inst.n; ++j) window.a[std::size_t(4 + j)] = 1;
    window.b = 2;
    CHECK(equality_implied(eqs, window));
  }
}

TEST_CASE("tight-set dimension distinguishes facets") {
  Instance inst = reference();
  auto base = base_system(inst);
  int hull_dim = hull_dimension(inst);
  REQUIRE(base[0].family == Family::T1a);
  CHECK(facet_check(inst, base[0]) == hull_dim - 1);

  LinIneq slack = make_row(Family::T1a, FamilyParams{}, 0, inst.n, 0, 0, 0, 0, 0, 0, 1); // 0 <= 1
  CHECK(facet_check(inst, slack) == -1);
}

TEST_CASE("augmented face checks") {
  SECTION("proper instance is its own augmentation") {
    auto rep = face_check_augmented(reference());
    INFO(rep.to_text());
    CHECK(rep.all_pass());
  }
  SECTION("empty intersection") {
    auto rep = face_check_augmented(new_instance(5, {1, 2}, {3, 4}, 0, 2), 15, 3);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
  }
  SECTION("oversized union pins delta3") {
    auto rep = face_check_augmented(new_instance(5, {1, 2, 3}, {3, 4, 5}, 1, 3), 15, 3);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
    bool saw_pin = false;
    for (const auto& c : rep.checks)
      if (c.name.find("delta3 pinned") != std::string::npos) saw_pin = c.pass;
    CHECK(saw_pin);
  }
}

TEST_CASE("nested instances collapse deltas") {
  auto rep = nested_consistency(new_instance(4, {1, 2}, {1, 2, 3}, 1, 3), 25, 11);
  INFO(rep.to_text());
  CHECK(rep.all_pass());

  // reversed orientation
  auto rep2 = nested_consistency(new_instance(5, {1, 2, 3}, {2, 3}, 1, 2), 25, 11);
  INFO(rep2.to_text());
  CHECK(rep2.all_pass());

  CHECK_THROWS_AS(nested_consistency(reference()), Error);
}

TEST_CASE("ablation without drops never witnesses a gap") {
  auto res = hull_ablation_check(reference(), {}, 10, 23);
  CHECK(!res.witnessed);
}

TEST_CASE("matrix instances construct with the advertised flags") {
  auto entries = matrix_instances();
  CHECK(entries.size() == 40);
  for (const auto& e : entries) {
    INFO(e.cls << " " << instance_summary(e.inst));
    if (e.cls == "proper" || e.cls == "l_zero" || e.cls == "u_full") CHECK(e.inst.proper);
    if (e.cls == "s0_empty" || e.cls == "both_degenerate") CHECK(e.inst.s0_empty);
    if (e.cls == "s3_large" || e.cls == "both_degenerate") CHECK(e.inst.s3_large);
    if (e.cls == "nested") CHECK(e.inst.nested);
    if (e.cls == "l_equals_u") CHECK(e.inst.l == e.inst.u);
  }
}

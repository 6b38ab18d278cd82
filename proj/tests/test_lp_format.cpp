#include <catch2/catch_amalgamated.hpp>

#include "ccms2/ineq.hpp"
#include "ccms2/lp.hpp"
#include "ccms2/lp_format.hpp"

using namespace ccms2;

static bool same_model(const LPModel& a, const LPModel& b) {
  if (a.num_vars != b.num_vars || a.sense != b.sense) return false;
  if (a.objective != b.objective) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].a != b.rows[r].a) return false;
    if (a.rows[r].rel != b.rows[r].rel) return false;
    if (a.rows[r].rhs != b.rows[r].rhs) return false;
  }
  return a.lo == b.lo && a.hi == b.hi;
}

TEST_CASE("writer emits the documented text verbatim") {
  LPModel m = lp_model(3, Sense::minimize);
  m.objective = {Rat(3, 2), Rat(0), Rat(-1)};
  m.add_row({Rat(1), Rat(2), Rat(0)}, Rel::le, Rat(5));
  m.add_row({Rat(0), Rat(-1), Rat(1)}, Rel::eq, Rat(1, 3));
  m.lo = {Rat(0), std::nullopt, std::nullopt};
  m.hi = {Rat(1), std::nullopt, Rat(4)};

  std::string want = "\\ vars: a b c\n"
                     "Minimize\n"
                     " obj: 3/2 a - c\n"
                     "Subject To\n"
                     " c1: a + 2 b <= 5\n"
                     " c2: - b + c = 1/3\n"
                     "Bounds\n"
                     " 0 <= a <= 1\n"
                     " b free\n"
                     " -inf <= c <= 4\n"
                     "End\n";
  CHECK(lp_to_text(m, {"a", "b", "c"}) == want);
}

TEST_CASE("parse of writer output recovers the model exactly") {
  LPModel m = lp_model(4, Sense::maximize);
  m.objective = {Rat(1), Rat(-7, 3), Rat(0), Rat(2)};
  m.add_row({Rat(2), Rat(1), Rat(0), Rat(0)}, Rel::le, Rat(3));
  m.add_row({Rat(0), Rat(0), Rat(1), Rat(-1)}, Rel::ge, Rat(-2, 5));
  m.add_row({Rat(1), Rat(1), Rat(1), Rat(1)}, Rel::eq, Rat(1));
  m.lo = {Rat(0), std::nullopt, Rat(-3), Rat(1, 2)};
  m.hi = {std::nullopt, std::nullopt, Rat(3), Rat(1, 2)};

  std::string text = lp_to_text(m);
  LPFile f = lp_from_text(text);
  CHECK(same_model(f.model, m));
  CHECK(f.names == std::vector<std::string>{"x1", "x2", "x3", "x4"});
  CHECK(lp_to_text(f.model, f.names) == text);
}

TEST_CASE("system export round-trips and optimizes identically") {
  Instance inst = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3);
  auto rows = base_system(inst);
  std::string text = system_to_lp_text(rows, inst.n);
  LPFile f = lp_from_text(text);

  REQUIRE(f.model.num_vars == 10);
  REQUIRE(f.names == lp_var_names(6));
  REQUIRE(f.model.rows.size() == rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CHECK(f.model.rows[r].rel == Rel::le);
    CHECK(f.model.rows[r].rhs == Rat(rows[r].rhs));
    for (int j = 0; j < 10; ++j)
      CHECK(f.model.rows[r].a[std::size_t(j)] == Rat(rows[r].a[std::size_t(j)]));
  }
  CHECK(lp_to_text(f.model, f.names) == text);

  // Exactness survives the text boundary: same optimum before and after.
  LPModel direct = lp_model(10, Sense::maximize);
  direct.objective = std::vector<Rat>{Rat(0), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  for (const auto& r : rows) {
    std::vector<Rat> a(r.a.begin(), r.a.end());
    direct.add_row(std::move(a), Rel::le, Rat(r.rhs));
  }
  f.model.objective = direct.objective;
  auto res_a = solve(direct);
  auto res_b = solve(f.model);
  REQUIRE(res_a.status == LPStatus::optimal);
  REQUIRE(res_b.status == LPStatus::optimal);
  CHECK(res_a.value == res_b.value);
  CHECK(res_a.value == Rat(2));
}

TEST_CASE("hand-written files in the accepted subset parse") {
  std::string text = "\\ a comment line\n"
                     "max\n"
                     " profit: 2 y + 3/2 w\n"
                     "   + z\n"
                     "s.t.\n"
                     " lim: y + w <= 10\n"
                     " z - y >= -2\n"
                     "Bounds\n"
                     " 1/2 <= y <= 8\n"
                     " w <= 3\n"
                     " z = 2\n"
                     "End\n";
  LPFile f = lp_from_text(text);
  REQUIRE(f.names == std::vector<std::string>{"y", "w", "z"});
  CHECK(f.model.sense == Sense::maximize);
  CHECK(f.model.objective == std::vector<Rat>{Rat(2), Rat(3, 2), Rat(1)});
  REQUIRE(f.model.rows.size() == 2);
  CHECK(f.model.rows[0].a == std::vector<Rat>{Rat(1), Rat(1), Rat(0)});
  CHECK(f.model.rows[0].rel == Rel::le);
  CHECK(f.model.rows[0].rhs == Rat(10));
  CHECK(f.model.rows[1].a == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  CHECK(f.model.rows[1].rel == Rel::ge);
  CHECK(f.model.rows[1].rhs == Rat(-2));
  CHECK(*f.model.lo[0] == Rat(1, 2));
  CHECK(*f.model.hi[0] == Rat(8));
  CHECK(*f.model.lo[1] == Rat(0)); // bounds line sets only the upper side
  CHECK(*f.model.hi[1] == Rat(3));
  CHECK(*f.model.lo[2] == Rat(2));
  CHECK(*f.model.hi[2] == Rat(2));
}

TEST_CASE("variables without a bounds line get the conventional default") {
  std::string text = "Minimize\n obj: p + q\nSubject To\n r1: p + q >= 1\nEnd\n";
  LPFile f = lp_from_text(text);
  CHECK(*f.model.lo[0] == Rat(0));
  CHECK(!f.model.hi[0]);
  CHECK(*f.model.lo[1] == Rat(0));
  CHECK(!f.model.hi[1]);
  auto res = solve(f.model);
  REQUIRE(res.status == LPStatus::optimal);
  CHECK(res.value == Rat(1));
}

TEST_CASE("repeated variables in one expression accumulate") {
  std::string text = "Maximize\n obj: x + x + 1/2 x\nSubject To\n c1: x <= 2\nEnd\n";
  LPFile f = lp_from_text(text);
  CHECK(f.model.objective == std::vector<Rat>{Rat(5, 2)});
  auto res = solve(f.model);
  CHECK(res.value == Rat(5));
}

TEST_CASE("malformed input names the offense") {
  auto kind = [](const std::string& text) {
    try {
      lp_from_text(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(kind("Subject To\n c1: x <= 1\nEnd\n").find("Maximize or Minimize") != std::string::npos);
  CHECK(kind("Maximize\n obj: 2 3 x\nSubject To\nEnd\n").find("two coefficients") != std::string::npos);
  CHECK(kind("Maximize\n obj: x + 2\nSubject To\nEnd\n").find("dangling coefficient") != std::string::npos);
  CHECK(kind("Maximize\n obj: x\nSubject To\n c1: x 1\nEnd\n").find("rel rhs") != std::string::npos);
  CHECK(kind("Maximize\n obj: x\nSubject To\n c1: x <= y\nEnd\n").find("right-hand side") != std::string::npos);
  CHECK(kind("Maximize\n obj: x\nBounds\n x >= inf\nEnd\n").find("lower bound") != std::string::npos);
  CHECK(kind("Maximize\n obj: x\nBounds\n x <= -inf\nEnd\n").find("upper bound") != std::string::npos);
  CHECK(kind("Maximize\n obj: x\nBounds\n 3 <= <= x\nEnd\n").find("unrecognized form") != std::string::npos);
  CHECK(kind("\\ vars: x\nMaximize\n obj: x + y\nSubject To\nEnd\n").find("unknown variable 'y'") != std::string::npos);
  CHECK(kind("Maximize\n obj: 1/0 x\nSubject To\nEnd\n").find("zero denominator") != std::string::npos);
}

TEST_CASE("all-zero expressions print a pinned zero term") {
  LPModel m = lp_model(2, Sense::maximize);
  m.add_row({Rat(0), Rat(0)}, Rel::le, Rat(1));
  m.lo = {Rat(0), Rat(0)};
  m.hi = {Rat(1), Rat(1)};
  std::string text = lp_to_text(m, {"u", "v"});
  CHECK(text.find(" obj: 0 u\n") != std::string::npos);
  CHECK(text.find(" c1: 0 u <= 1\n") != std::string::npos);
  LPFile f = lp_from_text(text);
  CHECK(same_model(f.model, m));
  CHECK(lp_to_text(f.model, f.names) == text);
}

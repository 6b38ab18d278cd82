#include <catch2/catch_amalgamated.hpp>

#include "ccms2/rat.hpp"
#include "ccms2/rng.hpp"
#include "ccms2/error.hpp"

using namespace ccms2;

TEST_CASE("rational formatting is canonical") {
    CHECK(rat_to_string(Rat(0)) == "0");
    CHECK(rat_to_string(Rat(-3)) == "-3");
    CHECK(rat_to_string(Rat(1, 2)) == "1/2");
    CHECK(rat_to_string(Rat(-7, 3)) == "-7/3");
    // normalization happens on construction
    CHECK(rat_to_string(Rat(4, 8)) == "1/2");
    CHECK(rat_to_string(Rat(3) / Rat(-9)) == "-1/3");
    CHECK(rat_to_string(Rat(6, 3)) == "2");
}

TEST_CASE("rational parsing round-trips and rejects junk") {
    for (const char* s : {"0", "5", "-12", "1/2", "-7/3", "22/7"}) {
        Rat v = rat_parse(s);
        CHECK(rat_to_string(v) == s);
    }
    CHECK(rat_parse("4/8") == Rat(1, 2));
    CHECK_THROWS_AS(rat_parse(""), Error);
    CHECK_THROWS_AS(rat_parse("1/0"), Error);
    CHECK_THROWS_AS(rat_parse("abc"), Error);
    CHECK_THROWS_AS(rat_parse("1.5"), Error);
    CHECK_THROWS_AS(rat_parse("1/2/3"), Error);
}

TEST_CASE("exactness survives arithmetic that breaks doubles") {
    // (1/3)*3 == 1 exactly, and tiny differences are preserved
    Rat third(1, 3);
    CHECK(third * 3 == Rat(1));
    Rat a = Rat(1, 1000000007);
    Rat b = Rat(1, 1000000009);
    CHECK(a != b);
    CHECK(a - b > Rat(0));
    CHECK(rat_is_integer(third * 3));
    CHECK(!rat_is_integer(third));
}

TEST_CASE("dot product is exact") {
    std::vector<Rat> x = {Rat(1, 2), Rat(-1, 3), Rat(5)};
    std::vector<Rat> y = {Rat(2), Rat(3), Rat(1, 5)};
    CHECK(dot(x, y) == Rat(1));  // 1 - 1 + 1
}

TEST_CASE("rng is deterministic across instantiations") {
    Rng r1(42), r2(42);
    for (int i = 0; i < 100; ++i) CHECK(r1.next_u64() == r2.next_u64());
    Rng r3(42), r4(43);
    bool differ = false;
    for (int i = 0; i < 10; ++i) differ |= (r3.next_u64() != r4.next_u64());
    CHECK(differ);
}

TEST_CASE("rng bounded draws stay in range") {
    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        long long v = r.next_int(-9, 9);
        CHECK(v >= -9);
        CHECK(v <= 9);
        Rat u = r.next_unit_rat();
        CHECK(u >= Rat(0));
        CHECK(u <= Rat(1));
    }
}

TEST_CASE("seed mixing separates streams") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(5, 3) == mix_seed(5, 3));
}

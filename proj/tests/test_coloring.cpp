#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "rforge/coloring.hpp"

using namespace rforge;

namespace {
GoodPoly P(const char* s) { return GoodPoly::parse(s); }

std::string write_temp_json(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/rforge_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}
}  // namespace

TEST_CASE("mod colorings") {
    NatColoring m2 = mod_coloring(2);
    CHECK(m2(6) == ColorId{0});
    CHECK(m2(1) == ColorId{1});
    NatColoring m3 = mod_coloring(3);
    CHECK(m3(7) == ColorId{1});
    CHECK_THROWS_AS(mod_coloring(1), std::invalid_argument);
    CHECK_THROWS_AS(m2(0), ColorDomainError);
}

TEST_CASE("table colorings fail loudly outside their domain") {
    NatColoring t = table_coloring({0, 1, 1, 0}, 2);
    CHECK(t(1) == ColorId{0});
    CHECK(t(3) == ColorId{1});
    CHECK_THROWS_AS(t(5), ColorDomainError);
    CHECK_THROWS_AS(table_coloring({0, 2}, 2), std::invalid_argument);
}

TEST_CASE("table colorings load from JSON, both shapes") {
    auto arr = write_temp_json("arr.json", "[0, 1, 2, 0]");
    NatColoring a = load_table_coloring(arr);
    CHECK(a.color_count() == 3);
    CHECK(a(3) == ColorId{2});

    auto obj = write_temp_json("obj.json", R"({"colors": 3, "table": [0, 1, 1]})");
    NatColoring b = load_table_coloring(obj);
    CHECK(b.color_count() == 3);
    CHECK(b(2) == ColorId{1});

    CHECK_THROWS(load_table_coloring("/nonexistent/table.json"));
}

TEST_CASE("lift colors a polynomial by its value at the base") {
    PolyColoring parity = lift_from_nat(mod_coloring(2), 2);
    CHECK(parity(P("t^2+t")) == ColorId{0});  // 6
    PolyColoring m3 = lift_from_nat(mod_coloring(3), 2);
    CHECK(m3(P("t^3")) == ColorId{2});  // 8
    NatColoring inner = mod_coloring(5);
    CHECK(lift_from_nat(inner, 2)(P("t")) == inner(2));
    CHECK_THROWS_AS(lift_from_nat(inner, 1), std::invalid_argument);
    CHECK_THROWS_AS(parity(GoodPoly::zero()), ColorDomainError);
}

TEST_CASE("lift naturality on random polynomials") {
    std::mt19937_64 rng(oracle::seed_from_env() + 10);
    for (unsigned m : {2u, 3u, 5u}) {
        NatColoring inner = mod_coloring(m);
        for (unsigned base : {2u, 3u}) {
            PolyColoring lifted = lift_from_nat(inner, base);
            for (int i = 0; i < 100; ++i) {
                GoodPoly p = oracle::random_good(rng, 1, 4, 4, 6);
                // independent dense evaluation
                BigInt value = oracle::Dense::from(p).eval(base);
                CHECK(lifted(p) == inner(value));
            }
        }
    }
}

TEST_CASE("collapse substitutes t for every variable") {
    PolyColoring m3 = lift_from_nat(mod_coloring(3), 2);
    PolyColoring c = collapse_to_univariate(m3);
    CHECK(c(P("x1*x2")) == m3(P("t^2")));
    CHECK(c(P("t")) == m3(P("t")));
    CHECK(c(P("x1+x2")) == m3(P("2t")));
}

TEST_CASE("reducibility coloring") {
    PolyColoring r = reducibility_coloring();
    CHECK(r.color_count() == 2);
    CHECK(r(P("x1*x2")) == ColorId{0});
    CHECK(r(P("x1")) == ColorId{1});
    CHECK(r(P("x1^2")) == ColorId{0});
    CHECK_THROWS_AS(r(GoodPoly::zero()), ColorDomainError);
    // memoized path answers identically
    CHECK(r(P("x1*x2")) == ColorId{0});
}

TEST_CASE("coloring DSL") {
    CHECK(is_nat(parse_coloring("mod:3")));
    CHECK(as_nat(parse_coloring("mod:3"))(7) == ColorId{1});

    Coloring lift = parse_coloring("lift:2:mod:2");
    REQUIRE(!is_nat(lift));
    CHECK(as_poly(lift)(P("t^2+t")) == ColorId{0});
    CHECK(as_poly(lift).description() == "lift:2:mod:2");

    CHECK(!is_nat(parse_coloring("reducibility")));
    CHECK(as_poly(parse_coloring("collapse:reducibility"))(P("x1*x2")) ==
          reducibility_coloring()(P("t^2")));

    auto path = write_temp_json("dsl.json", "[0, 1, 0, 1]");
    CHECK(as_nat(parse_coloring("table:" + path))(2) == ColorId{1});

    CHECK_THROWS_AS(parse_coloring("mod:"), ParseError);
    CHECK_THROWS_AS(parse_coloring("mod:x"), ParseError);
    CHECK_THROWS_AS(parse_coloring("bogus"), ParseError);
    CHECK_THROWS_AS(parse_coloring("lift:2:reducibility"), ParseError);
    CHECK_THROWS_AS(parse_coloring("collapse:mod:2"), ParseError);
    CHECK_THROWS_AS(parse_coloring("lift:1:mod:2"), ParseError);
    try {
        parse_coloring("mod:");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
        CHECK(e.expected() == "an integer");
    }
}

TEST_CASE("rules are deterministic and stay in range") {
    std::mt19937_64 rng(oracle::seed_from_env() + 11);
    PolyColoring lifted = lift_from_nat(mod_coloring(3), 2);
    for (int i = 0; i < 100; ++i) {
        GoodPoly p = oracle::random_good(rng, 2, 3, 3, 4);
        ColorId once = lifted(p);
        CHECK(once == lifted(p));
        CHECK(once.value < lifted.color_count());
    }
}

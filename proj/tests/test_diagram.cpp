#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "gcx/crossings.hpp"
#include "gcx/evaluator.hpp"
#include "gcx/fusion.hpp"

#include <random>

using namespace gcx;

static const char* const kCats[] = {"trivial.cat",         "z3.cat",        "bichar_z2.cat",
                                    "z4_graded.cat",       "s3_crossed.cat", "z3_gauged.cat",
                                    "s3_crossed_gauged.cat", "bichar_z2_gauged.cat", "z4_graded_gauged.cat",
                                    "z3_s3_crossed.cat"};

TEST_CASE("elementary pieces have the expected boundaries") {
    CategoryData c = load_data("z3.cat");
    ColoredDiagram id = elementary(c, id_piece(1, 1));
    CHECK(id.source == BoundaryObject{{1, 1}});
    CHECK(id.target() == BoundaryObject{{1, 1}});
    CHECK(evaluate(id, c).value == c.one());
    ColoredDiagram x = elementary(c, cross_p(c, 1, 2, c.one()));
    CHECK(x.source == BoundaryObject{{1, 1}, {2, 1}});
    CHECK(x.target() == BoundaryObject{{2, 1}, {1, 1}});
    ColoredDiagram cap = elementary(c, cap_r(2));
    CHECK(cap.source == BoundaryObject{{2, -1}, {2, 1}});
    CHECK(cap.target().empty());
    CHECK_THROWS(elementary(c, cross_p(c, 1, 2, c.zero())));
}

TEST_CASE("crossing on a graded category moves the label") {
    CategoryData c = load_data("s3_crossed.cat");
    int r = c.labels.index("r"), s = c.labels.index("s");
    ColoredDiagram x = elementary(c, cross_p(c, r, s, c.one()));
    CHECK(x.target() == BoundaryObject{{s, 1}, {c.act[c.grade[s]][r], 1}});
    Piece bad = cross_p(c, r, s, c.one());
    bad.z = r;
    CHECK_FALSE(validate_coloring(ColoredDiagram{bad.source(), {{bad}}}, c).ok());
}

TEST_CASE("compose and tensor") {
    CategoryData c = load_data("z3.cat");
    ColoredDiagram cup = elementary(c, cup_r(1));
    ColoredDiagram cap = elementary(c, cap_l(1));
    ColoredDiagram loop = compose(cap, cup);
    CHECK(loop.target().empty());
    CHECK(evaluate(loop, c).value == c.dim[1]);
    CHECK_THROWS_AS(compose(elementary(c, cap_r(1)), cup), std::invalid_argument);
    ColoredDiagram t = tensor(elementary(c, cross_p(c, 0, 1, c.one())), elementary(c, cross_n(c, 1, 2, c.one())));
    CHECK(t.source.size() == 4);
    CHECK(t.slices.size() == 1);
    CHECK(tensor(identity_diagram({}), cup) == cup);
    // zig-zag evaluates to the identity
    ColoredDiagram zig = compose(tensor(identity_diagram({{1, 1}}), elementary(c, cap_r(1))),
                                 tensor(elementary(c, cup_r(1)), identity_diagram({{1, 1}})));
    CHECK(zig.source == BoundaryObject{{1, 1}});
    CHECK(zig.target() == BoundaryObject{{1, 1}});
    CHECK(evaluate(zig, c).value == c.one());
}

TEST_CASE("coupon validation") {
    CategoryData c = load_data("z3.cat");
    Piece good = coupon({{1, 1}, {1, 1}}, {{2, 1}}, c.one());
    CHECK(validate_coloring(ColoredDiagram{good.source(), {{good}}}, c).ok());
    Piece bad = coupon({{1, 1}}, {{2, 1}}, c.one());
    auto r = validate_coloring(ColoredDiagram{bad.source(), {{bad}}}, c);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures[0].axiom == "diagram.coupon-hom");
    CategoryData s3 = load_data("s3_crossed.cat");
    Piece g = coupon({{s3.labels.index("r"), 1}}, {{s3.labels.index("s"), 1}}, s3.one());
    auto rg = validate_coloring(ColoredDiagram{g.source(), {{g}}}, s3);
    REQUIRE_FALSE(rg.ok());
    CHECK(rg.failures[0].axiom == "diagram.coupon-grade");
}

TEST_CASE("document round trip") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        std::mt19937 rng(3);
        for (int t = 0; t < 20; ++t) {
            int x = rng() % c.nL(), y = rng() % c.nL();
            CycNumber psi = CycNumber::zeta(c.N, rng() % c.N) * CycNumber(c.N, mpq_class(1 + rng() % 4, 1 + rng() % 3));
            CrossKind k = all_cross_kinds()[rng() % 8];
            CrossShape sh = cross_shape(k);
            LevelDiagram ld{{{x, sh.sa}, {y, sh.sb}}, expand_cross(c, k, x, y, psi, 0)};
            ColoredDiagram d = to_slices(ld);
            std::string text = print_diagram(d, c);
            ColoredDiagram back = parse_diagram(text, c);
            CHECK(back == d);
            CHECK(print_diagram(back, c) == text);
        }
    }
}

TEST_CASE("parser diagnostics") {
    CategoryData c = load_data("z3.cat");
    CHECK_THROWS(parse_diagram("slice id(1,+)\n", c));
    CHECK_THROWS(parse_diagram("source (1,+)\nslice capR(1)\n", c));
    CHECK_THROWS(parse_diagram("source (1,+)\nslice id(1,+)\ntarget (2,+)\n", c));
    CHECK_THROWS(parse_diagram("source (1,+)\nslice frob(1)\n", c));
    ColoredDiagram d = parse_diagram("source (1,+) (2,+)\nslice crossP(1,2;psi=1/2)\n", c);
    CHECK(d.slices[0][0].z == 1);
    CHECK(d.slices[0][0].s.v == CycNumber(12, mpq_class(1, 2)));
}

TEST_CASE("kinks and generalized crossings match their closed forms") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        AxiomReport r = evaluate_special_forms(c);
        INFO(r.str());
        CHECK(r.ok());
        CHECK(r.checked > 0);
    }
}

TEST_CASE("corrupted braiding is caught by the closed forms") {
    CategoryData c = load_data("z3.cat");
    c.braid_ref(1, 1) = c.braid(1, 1) * CycNumber::zeta(c.N, 1);
    AxiomReport r = evaluate_special_forms(c);
    CHECK_FALSE(r.ok());
}

TEST_CASE("closed Hopf diagram gives the S-matrix") {
    CategoryData c = load_data("z3.cat");
    ModularReport m = modular_report(c);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            LevelDiagram d{{}, {}};
            d.levels.push_back({cup_r(j), 0});
            d.levels.push_back({cup_r(k), 1});
            d.levels.push_back({cross_p(c, j, k, c.one()), 0});
            d.levels.push_back({cross_p(c, k, j, c.one()), 0});
            d.levels.push_back({cap_l(k), 1});
            d.levels.push_back({cap_l(j), 0});
            boundaries(d);
            CycNumber v = evaluate(to_slices(d), c).value;
            CHECK(v == CycNumber::zeta(12, (4 * 2 * j * k) % 12));
            CHECK(v == m.s_matrix[j][k]);
        }
}

TEST_CASE("conjugation of closed and open diagrams") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        Evaluator ev(c);
        std::mt19937 rng(11);
        for (int t = 0; t < 30; ++t) {
            int x = rng() % c.nL(), y = rng() % c.nL();
            CrossKind k = all_cross_kinds()[rng() % 8];
            CrossShape sh = cross_shape(k);
            CycNumber psi = CycNumber::zeta(c.N, rng() % c.N) * CycNumber(c.N, mpq_class(1 + rng() % 4, 1 + rng() % 3));
            LevelDiagram ld{{{x, sh.sa}, {y, sh.sb}}, expand_cross(c, k, x, y, psi, 0)};
            ColoredDiagram d = to_slices(ld);
            Morphism m = ev.evaluate(d);
            for (int eta = 0; eta < c.nG(); ++eta) {
                ColoredDiagram e = conjugate_diagram(d, eta, c);
                REQUIRE(validate_coloring(e, c).ok());
                Morphism me = ev.evaluate(e);
                CHECK(me.value * conjugation_factor(c, eta, m.target) ==
                      m.value * conjugation_factor(c, eta, m.source));
            }
        }
    }
}

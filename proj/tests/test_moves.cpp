#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "gcx/evaluator.hpp"
#include "gcx/moves.hpp"

using namespace gcx;

static const char* const kCats[] = {"trivial.cat",         "z3.cat",        "bichar_z2.cat",
                                    "z4_graded.cat",       "s3_crossed.cat", "z3_gauged.cat",
                                    "s3_crossed_gauged.cat", "bichar_z2_gauged.cat", "z4_graded_gauged.cat",
                                    "z3_s3_crossed.cat"};

TEST_CASE("random diagrams are valid") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (std::uint64_t s = 0; s < 10; ++s) {
            LevelDiagram d = random_diagram(c, s, 3, 25);
            auto r = validate_coloring(to_slices(d), c);
            INFO(r.str());
            CHECK(r.ok());
        }
    }
}

TEST_CASE("every move keeps the value") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        Evaluator ev(c);
        FuzzStats stats;
        for (std::uint64_t s = 0; s < 6; ++s) {
            LevelDiagram d = random_diagram(c, 100 + s, 3, 20);
            CycNumber v0 = ev.value(d);
            MoveFuzzer fz(c, s);
            for (int k = 0; k < 150; ++k) {
                MoveSpec m;
                if (!fz.step(d, m)) break;
                ++stats.counts[move_name(m)];
                CAPTURE(move_name(m));
                CAPTURE(m.variant);
                REQUIRE(ev.value(d) == v0);
            }
            auto r = validate_coloring(to_slices(d), c);
            INFO(r.str());
            CHECK(r.ok());
        }
        for (const char* n : {"T1", "T1-inverse", "T2", "T2-inverse", "T3", "T4", "T4-inverse", "stabilization",
                              "stabilization-inverse", "exchange"}) {
            CAPTURE(n);
            CHECK(stats.counts[n] > 0);
        }
    }
}

TEST_CASE("type 3 needs equal third colors and the side condition") {
    CategoryData c = load_data("s3_crossed.cat");
    int x = c.labels.index("r"), y = c.labels.index("s"), z = c.labels.index("sr");
    LevelDiagram d{{{x, 1}, {y, 1}, {z, 1}}, {}};
    CycNumber A(c.N, 2), B(c.N, 3), C(c.N, 5);
    int x1 = c.act[c.grade[y]][x];
    d.levels = {{cross_p(c, x, y, A), 0}, {cross_p(c, x1, z, B), 1}, {cross_p(c, y, z, C), 0}};
    CycNumber ratio = t3_ratio(c, x, y, z);
    CycNumber a2(c.N, 7);
    MoveSpec m{MoveType::T3, false, 0, 0, 0, {a2, A * B / (ratio * a2)}};
    LevelDiagram e = apply_move(d, c, m);
    CHECK(Evaluator(c).value(e) == Evaluator(c).value(d));
    MoveSpec back{MoveType::T3, true, 0, 0, 0, {A, B}};
    CHECK(apply_move(e, c, back) == d);
    m.data.push_back(C + c.one());
    CHECK_THROWS_AS(apply_move(d, c, m), MoveError);
    MoveSpec bad{MoveType::T3, false, 0, 0, 0, {a2, A * B / a2 * CycNumber(c.N, 2)}};
    CHECK_THROWS_AS(apply_move(d, c, bad), MoveError);
}

TEST_CASE("type 4 rejects a broken side condition") {
    for (const char* f : kCats) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        int n = 0;
        for (std::uint64_t s = 0; s < 40 && n < 5; ++s) {
            LevelDiagram d = random_diagram(c, 500 + s, 3, 12);
            for (int l = 0; l < (int)d.levels.size(); ++l) {
                const Level& lv = d.levels[l];
                if (lv.piece.kind != PieceKind::Coupon || lv.pos < 1 || !lv.piece.out.empty()) continue;
                int sZ = boundaries(d)[l][lv.pos - 1].sign;
                MoveSpec m{MoveType::T4, false, sZ > 0 ? 1 : 2, l, lv.pos, {}};
                for (size_t i = 0; i < lv.piece.in.size(); ++i) m.data.push_back(CycNumber(c.N, 3));
                m = t4_solve(d, c, m);
                LevelDiagram e = apply_move(d, c, m);
                CHECK(Evaluator(c).value(e) == Evaluator(c).value(d));
                m.data.back() *= CycNumber(c.N, 2);
                CHECK_THROWS_AS(apply_move(d, c, m), MoveError);
                ++n;
                break;
            }
        }
        CHECK(n > 0);
    }
}

TEST_CASE("exchange of overlapping levels fails") {
    CategoryData c = load_data("z3.cat");
    LevelDiagram d{{{1, 1}, {2, 1}}, {{cross_p(c, 1, 2, c.one()), 0}, {cross_p(c, 2, 1, c.one()), 0}}};
    CHECK_THROWS_AS(apply_move(d, c, MoveSpec{MoveType::Exchange, false, 0, 0, 0, {}}), MoveError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "gcx/axioms.hpp"
#include "gcx/fusion.hpp"

#include <random>

using namespace gcx;

static AxiomReport all_checks(const CategoryData& c) {
    AxiomReport r;
    r.merge(check_pivotal(c));
    r.merge(check_crossing(c));
    r.merge(check_braiding(c));
    r.merge(check_ribbon(c));
    r.merge(check_derived(c));
    r.merge(check_graded_dims(c));
    return r;
}

static const char* const kValid[] = {"trivial.cat", "z3.cat", "bichar_z2.cat", "z4_graded.cat", "s3_crossed.cat",
                                     "z3_s3_crossed.cat"};

static CategoryData random_gauge(const CategoryData& c, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<CycNumber> eta(c.nG() * c.nL());
    for (auto& e : eta)
        e = CycNumber::zeta(c.N, rng() % c.N) * CycNumber(c.N, mpq_class((long)(rng() % 5) + 1, (long)(rng() % 3) + 1));
    return gauge_transform(c, [&](int a, int x) { return eta[a * c.nL() + x]; });
}

TEST_CASE("shipped categories satisfy every axiom") {
    for (const char* f : kValid) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        AxiomReport r = all_checks(c);
        INFO(r.str());
        CHECK(r.ok());
        CHECK(r.checked > 0);
    }
}

TEST_CASE("gauge transforms preserve every axiom") {
    for (const char* f : kValid) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (unsigned seed = 1; seed <= 3; ++seed) {
            CategoryData g = random_gauge(c, seed);
            AxiomReport r = all_checks(g);
            INFO(r.str());
            CHECK(r.ok());
        }
    }
}

TEST_CASE("written categories reload identically") {
    for (const char* f : kValid) {
        CategoryData c = random_gauge(load_data(f), 5);
        std::string text = write_category(c);
        CategoryData d = load_category_text(text);
        CHECK(write_category(d) == text);
        CHECK(d.braid_ == c.braid_);
        CHECK(d.phi2_ == c.phi2_);
    }
}

TEST_CASE("corrupting a scalar is detected") {
    CategoryData c = load_data("z3.cat");
    c.braid_ref(1, 2) = c.braid(1, 2) * CycNumber(c.N, 2);
    AxiomReport r = check_braiding(c);
    CHECK_FALSE(r.ok());
    CategoryData s = load_data("s3_crossed.cat");
    s.phi2_ref(1, 2, 3) = s.phi2(1, 2, 3) * CycNumber::zeta(s.N, 1);
    CHECK_FALSE(check_crossing(s).ok());
}

TEST_CASE("structural errors are rejected") {
    std::string good =
        "[scalars]\nroot_order = 1\n[group]\nelements = e\nrow e = e\n[labels]\nelements = 0 1\nrow 0 = 0 1\nrow 1 = 1 0\n"
        "[grade]\n0 = e\n1 = e\n[dim]\n0 = 1\n1 = 1\n";
    LoadOptions lax;
    lax.verify_rank = false;
    CHECK_NOTHROW(load_category_text(good, lax));
    std::string bad_row = good;
    bad_row.replace(bad_row.find("row 1 = 1 0"), 11, "row 1 = 1 1");
    CHECK_THROWS(load_category_text(bad_row, lax));
    CHECK_THROWS(load_category_text(good + "[braiding]\n1 1 = 0\n", lax));
    CHECK_THROWS(load_category_text(good + "[bogus]\n", lax));
}

TEST_CASE("fusion ring") {
    CategoryData c = load_data("s3_crossed.cat");
    for (int a = 0; a < c.nG(); ++a) {
        FusionElement w = omega(c, a);
        for (int b = 0; b < c.nG(); ++b) {
            FusionElement wb = omega(c, b);
            FusionElement p = fusion_mul(c, w, wb);
            CHECK(p.grade == c.gmul(a, b));
            CHECK(fusion_conj(c, b, w).grade == c.gmul(c.gmul(c.ginv(b), a), b));
        }
        CHECK(fusion_star(c, w) == omega(c, c.ginv(a)));
    }
}

TEST_CASE("modular data of z3") {
    CategoryData c = load_data("z3.cat");
    ModularReport m = modular_report(c);
    CHECK(m.invertible);
    CycNumber w = CycNumber::zeta(12, 4);
    CHECK(m.delta_plus == CycNumber(12, 1) + w * CycNumber(12, 2));
    CHECK(m.delta_plus * m.delta_minus == m.global_dim);
    CHECK(m.global_dim == CycNumber(12, 3));
    CycNumber d = m.s_matrix[0][0] * m.s_matrix[1][1] * m.s_matrix[2][2];
    CHECK_FALSE(m.det.is_zero());
    (void)d;
    CHECK_FALSE(modular_report(load_data("z4_graded.cat")).invertible);
    CHECK(modular_report(load_data("bichar_z2.cat")).invertible);
}

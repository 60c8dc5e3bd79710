#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcx/cyc.hpp"

#include <cmath>
#include <complex>
#include <random>

using gcx::CycNumber;

static std::complex<double> as_complex(const CycNumber& a) { return {a.re(), a.im()}; }

static CycNumber random_number(std::mt19937& rng, int n) {
    CycNumber r(n);
    for (int k = 0; k < n; ++k)
        if (rng() % 3 == 0) r += CycNumber::zeta(n, k) * CycNumber(n, mpq_class((long)(rng() % 7) - 3, 1 + rng() % 4));
    return r;
}

TEST_CASE("root of unity has the right order") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12, 15}) {
        CycNumber z = CycNumber::zeta(n, 1);
        CHECK(z.pow(n).is_one());
        for (int k = 1; k < n; ++k) CHECK_FALSE(z.pow(k).is_one());
    }
}

TEST_CASE("field operations agree with complex arithmetic") {
    std::mt19937 rng(7);
    for (int n : {3, 4, 8, 12}) {
        for (int it = 0; it < 40; ++it) {
            CycNumber a = random_number(rng, n), b = random_number(rng, n);
            CHECK(std::abs(as_complex(a + b) - (as_complex(a) + as_complex(b))) < 1e-9);
            CHECK(std::abs(as_complex(a * b) - as_complex(a) * as_complex(b)) < 1e-9);
            CHECK(std::abs(as_complex(a.conj()) - std::conj(as_complex(a))) < 1e-9);
            if (!b.is_zero()) {
                CHECK((a / b) * b == a);
                CHECK(b * b.inv() == CycNumber(n, 1));
            }
        }
    }
}

TEST_CASE("parse and print round trip") {
    std::mt19937 rng(11);
    for (int n : {1, 2, 6, 12}) {
        for (int it = 0; it < 30; ++it) {
            CycNumber a = random_number(rng, n);
            CHECK(CycNumber::parse(a.str(), n) == a);
        }
    }
    CHECK(CycNumber::parse("z + z^11", 12).str() == CycNumber::parse("z^1 + z^11", 12).str());
    CHECK(CycNumber::parse("-z^2", 12) == -CycNumber::zeta(12, 2));
    CHECK(CycNumber::parse("1/2", 1) == CycNumber(1, mpq_class(1, 2)));
    CHECK_THROWS(CycNumber::parse("z^12", 12));
    CHECK_THROWS(CycNumber::parse("1 +", 12));
}

TEST_CASE("known identities") {
    CycNumber s = CycNumber::parse("z + z^11", 12);
    CHECK(s * s == CycNumber(12, 3));
    CycNumber w = CycNumber::zeta(12, 4);
    CHECK(CycNumber(12, 1) + w + w * w == CycNumber(12));
}

TEST_CASE("monomial products") {
    std::mt19937 rng(3);
    for (int it = 0; it < 100; ++it) {
        gcx::Prod p(12);
        CycNumber ref(12, 1);
        for (int j = 0; j < 6; ++j) {
            CycNumber f = rng() % 2 ? CycNumber::zeta(12, rng() % 12) * CycNumber(12, mpq_class(1 + rng() % 3, 1 + rng() % 3))
                                    : random_number(rng, 12);
            if (f.is_zero()) continue;
            if (rng() % 2) {
                p.mul(gcx::Factor(f));
                ref *= f;
            } else {
                p.div(gcx::Factor(f));
                ref = ref / f;
            }
        }
        CHECK(p.value() == ref);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "gcx/evaluator.hpp"
#include "gcx/fusion.hpp"
#include "gcx/moves.hpp"
#include "gcx/surgery.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace gcx;

static const char* const kModular[] = {"trivial.cat",         "z3.cat",           "bichar_z2.cat",
                                       "s3_crossed.cat",      "z3_gauged.cat",    "s3_crossed_gauged.cat",
                                       "bichar_z2_gauged.cat", "z3_s3_crossed.cat"};

static std::string read_text(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

static GLink load_link(const std::string& name, const CategoryData& c) {
    return parse_link(read_text(data_path("links/" + name)), c);
}

static std::vector<GLevel> framed_unknot(int p) {
    std::vector<GLevel> v;
    v.push_back({GLevelKind::Cup, 0, 1});
    for (int i = 0; i < std::abs(p); ++i) {
        v.push_back({GLevelKind::Cup, 0, -1});
        GLevel x{GLevelKind::Cross, 1};
        x.a_over = p < 0;
        v.push_back(x);
        v.push_back({GLevelKind::Cap, 0});
    }
    v.push_back({GLevelKind::Cap, 0});
    return v;
}

static GLink uniform_link(const std::vector<GLevel>& levels, int g) {
    int n = link_graph(GLink{levels, {}}).narc;
    return make_link(levels, std::vector<int>(n, g));
}

static CycNumber power(CycNumber x, int e) {
    CycNumber r(x.order(), 1);
    if (e < 0) x = x.inv();
    for (int i = 0; i < std::abs(e); ++i) r *= x;
    return r;
}

TEST_CASE("shipped links parse and print back") {
    CategoryData c = load_data("z3.cat");
    for (const char* f : {"empty.link", "hopf.link", "lens_p2.link", "unknot_0.link", "unknot_p1.link",
                          "unknot_m1.link", "unknot_m2.link"}) {
        CAPTURE(f);
        GLink l = load_link(f, c);
        CHECK(parse_link(print_link(l, c), c) == l);
        CHECK(is_special(l, c));
    }
    GLink h = load_link("hopf.link", c);
    LinkGraph g = link_graph(h);
    CHECK(g.ncomp == 2);
    CHECK(g.narc == 2);
}

TEST_CASE("link parser diagnostics") {
    CategoryData c = load_data("z3.cat");
    const char* bad[] = {
        "cap 0\n",
        "cup 0 + comp=0 arc=0 g=q\ncap 0\n",
        "cup 0 + comp=0 arc=0 g=e\n",
        "cup 0 + comp=0 arc=0 g=e\ncup 0 + comp=1 arc=1 g=e\ncap 1\ncap 0\n",
        "cup 0 + comp=0 arc=0\ncap 0\n",
        "cup 0 + comp=0 arc=0 g=e\ncup 2 + comp=0 arc=1 g=e\ncap 0\ncap 0\n",
        "cup 0 + comp=0 arc=0 g=e\ncup 0 - comp=0 arc=0 g=e\ncross 1 over=C arc=1 g=e\ncap 0\ncap 0\n",
        "twist 0\n",
    };
    for (std::string t : bad) {
        CAPTURE(t);
        CHECK_THROWS_AS(parse_link(t, c), LinkError);
    }
    try {
        parse_link("cup 0 + comp=0 arc=0 g=e\ncap 3\n", c);
        FAIL("no error");
    } catch (const LinkError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("flat structures") {
    CategoryData b = load_data("bichar_z2.cat");
    for (int p = -4; p <= 4; ++p) {
        CAPTURE(p);
        CHECK(is_special(uniform_link(framed_unknot(p), 0), b));
        CHECK(is_special(uniform_link(framed_unknot(p), 1), b) == (p % 2 == 0));
    }
    CategoryData s = load_data("s3_crossed.cat");
    int r = s.group.index("r"), t = s.group.index("s"), e = s.gunit();
    std::vector<GLevel> hopf = load_link("hopf.link", load_data("z3.cat")).levels;
    auto ids = [](const AxiomReport& rep) {
        std::set<std::string> a;
        for (const auto& f : rep.failures) a.insert(f.axiom);
        return a;
    };
    CHECK(check_flat_structure(make_link(hopf, {e, e}), s).ok());
    CHECK(ids(check_flat_structure(make_link(hopf, {r, t}), s)).count("link.wirtinger"));
    CHECK(ids(check_flat_structure(make_link(hopf, {r, e}), s)).count("link.special"));
    for (int a = 0; a < s.nG(); ++a) CHECK(is_special(uniform_link(framed_unknot(0), a), s));
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            GLink l = random_special_link(c, seed);
            CHECK(is_special(l, c));
            auto w = with_flat_structure(l.levels, c, {});
            REQUIRE(w);
            CHECK(is_special(*w, c));
        }
    }
    CHECK_THROWS_AS(link_form(make_link(hopf, {r, t}), s), LinkError);
}

TEST_CASE("canonical colorings are valid") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            GLink l = random_special_link(c, seed);
            LinkGraph g = link_graph(l);
            std::mt19937 rng(seed);
            for (int t = 0; t < 4; ++t) {
                std::vector<int> base;
                for (int k = 0; k < g.ncomp; ++k) {
                    auto ch = c.labels_of_grade(l.arc_g.at(g.nodes[coupon_sites(g, k)[0]].arc));
                    base.push_back(ch[rng() % ch.size()]);
                }
                auto rep = validate_coloring(to_slices(canonical_coloring(l, base, c)), c);
                INFO(rep.str());
                CHECK(rep.ok());
            }
        }
    }
}

TEST_CASE("framed unknots and the Hopf link") {
    CategoryData c = load_data("z3.cat");
    Evaluator ev(c);
    for (int p = -3; p <= 3; ++p)
        for (int j = 0; j < c.nL(); ++j) {
            GLink l = uniform_link(framed_unknot(p), c.gunit());
            CHECK(ev.value(canonical_coloring(l, {j}, c)) == power(c.neutral_twist(j), p) * c.dim[j]);
        }
    for (const char* f : {"z3.cat", "bichar_z2.cat", "z3_gauged.cat", "z3_s3_crossed.cat"}) {
        CAPTURE(f);
        CategoryData d = load_data(f);
        Evaluator e2(d);
        ModularReport m = modular_report(d);
        GLink h = uniform_link(load_link("hopf.link", c).levels, d.gunit());
        for (size_t j = 0; j < m.neutral.size(); ++j)
            for (size_t k = 0; k < m.neutral.size(); ++k)
                CHECK(e2.value(canonical_coloring(h, {m.neutral[j], m.neutral[k]}, d)) == m.s_matrix[j][k]);
    }
}

TEST_CASE("link form golden values") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        ModularReport m = modular_report(c);
        CHECK(link_form(GLink{}, c) == c.one());
        CHECK(link_form(uniform_link(framed_unknot(1), c.gunit()), c) == m.delta_plus);
        CHECK(link_form(uniform_link(framed_unknot(-1), c.gunit()), c) == m.delta_minus);
        CHECK(link_form(uniform_link(framed_unknot(0), c.gunit()), c) == m.global_dim);
    }
    CategoryData z = load_data("z3.cat");
    CycNumber s3 = CycNumber::zeta(12, 4);
    CHECK(link_form(load_link("unknot_p1.link", z), z) == z.one() + s3 * CycNumber(12, 2));
    CHECK(link_form(load_link("unknot_m1.link", z), z) == z.one() + s3 * s3 * CycNumber(12, 2));
    CHECK(link_form(load_link("lens_p2.link", z), z) == z.one() + s3 * s3 * CycNumber(12, 2));
}

TEST_CASE("linking matrix and signature") {
    using Q = std::vector<std::vector<mpq_class>>;
    CHECK(signature(Q{}) == 0);
    CHECK(signature(Q{{0}}) == 0);
    CHECK(signature(Q{{2}}) == 1);
    CHECK(signature(Q{{-3}}) == -1);
    int p = 0, n = 0;
    CHECK(signature(Q{{0, 1}, {1, 0}}, &p, &n) == 0);
    CHECK(p == 1);
    CHECK(n == 1);
    CHECK(signature(Q{{1, 2, 0}, {2, 1, 0}, {0, 0, 0}}, &p, &n) == 0);
    CHECK(p + n == 2);
    CHECK(signature(Q{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}) == -3);
    CHECK(signature(Q{{0, 0}, {0, 0}}, &p, &n) == 0);
    CHECK(p + n == 0);

    CategoryData c = load_data("z3.cat");
    LinkingData h = linking_data(load_link("hopf.link", c));
    CHECK(h.count == 2);
    CHECK(h.matrix == Q{{0, 1}, {1, 0}});
    CHECK(h.sigma == 0);
    LinkingData l2 = linking_data(load_link("lens_p2.link", c));
    CHECK(l2.matrix == Q{{2}});
    CHECK(l2.sigma == 1);
    CHECK(linking_data(load_link("unknot_m2.link", c)).sigma == -1);
    CHECK(linking_data(GLink{}).count == 0);
}

TEST_CASE("surgery golden values") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        CycNumber dinv = c.rankD.inv();
        CHECK(tau(GLink{}, c).tau == dinv);
        for (int a = 0; a < c.nG(); ++a) {
            CAPTURE(a);
            GLink u = uniform_link(framed_unknot(0), a);
            CHECK(tau(u, c).tau == c.one());
        }
        CHECK(tau(uniform_link(load_link("hopf.link", load_data("z3.cat")).levels, c.gunit()), c).tau == dinv);
    }
    CategoryData z = load_data("z3.cat");
    CHECK(tau(load_link("lens_p2.link", z), z).tau == -z.rankD.inv());
    CHECK(tau(load_link("unknot_p1.link", z), z).tau == z.rankD.inv());
    CHECK(tau(load_link("unknot_m1.link", z), z).tau == z.rankD.inv());
    CategoryData nr = load_data("z3.cat");
    nr.has_rank = false;
    CHECK_THROWS_AS(tau(GLink{}, nr), std::invalid_argument);
}

TEST_CASE("link form against tau and the first Betti number") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        ModularReport m = modular_report(c);
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            GLink l = random_special_link(c, seed);
            SurgeryReport r = tau(l, c);
            LinkingData ld = linking_data(l);
            int b1 = ld.count - ld.sigma_plus - ld.sigma_minus;
            CycNumber lhs = power(m.delta_minus, -ld.sigma_minus) * power(m.delta_plus, -ld.sigma_plus) * r.F;
            CHECK(lhs == power(c.rankD, b1 + 1) * r.tau);
        }
    }
}

TEST_CASE("single Kirby moves") {
    CategoryData c = load_data("z3_s3_crossed.cat");
    GLink l = random_special_link(c, 5);
    CycNumber t0 = tau(l, c).tau;
    LinkGraph g = link_graph(l);
    std::vector<KirbySpec> ks;
    for (int s : {1, -1}) {
        KirbySpec k;
        k.type = KirbyType::First;
        k.sign = s;
        k.gap = (int)l.levels.size() / 2;
        ks.push_back(k);
        k.type = KirbyType::NegativeFR;
        k.count = 1;
        k.pos = 0;
        ks.push_back(k);
    }
    for (int comp = 0; comp < g.ncomp; ++comp) {
        KirbySpec k;
        k.type = KirbyType::Reverse;
        k.comp = comp;
        ks.push_back(k);
    }
    for (const auto& k : ks) {
        CAPTURE(kirby_name(k));
        if (k.type == KirbyType::NegativeFR && g.at[k.gap].empty()) continue;
        GLink m = kirby_move(l, c, k);
        CHECK(is_special(m, c));
        CHECK(tau(m, c).tau == t0);
    }
    GLink u = uniform_link(framed_unknot(0), c.gunit());
    KirbySpec first;
    first.type = KirbyType::First;
    first.sign = -1;
    GLink v = kirby_move(GLink{}, c, first);
    CHECK(linking_data(v).matrix == std::vector<std::vector<mpq_class>>{{-1}});
    CHECK(tau(v, c).tau == tau(GLink{}, c).tau);
    KirbySpec bad;
    bad.type = KirbyType::R2;
    bad.gap = 0;
    CHECK_THROWS_AS(kirby_move(u, c, bad), KirbyError);
}

TEST_CASE("Kirby fuzz") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        KirbyFuzzResult r = kirby_fuzz(c, 7, 40, 3);
        INFO(r.first_failure);
        CHECK(r.failures == 0);
        CHECK(r.moves > 80);
    }
}

TEST_CASE("conjugating the flat structure") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        Evaluator ev(c);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            GLink l = random_special_link(c, 30 + seed);
            CycNumber t0 = tau(l, c).tau;
            LinkGraph g = link_graph(l);
            std::vector<int> base;
            for (int k = 0; k < g.ncomp; ++k)
                base.push_back(c.labels_of_grade(l.arc_g.at(g.nodes[coupon_sites(g, k)[0]].arc))[0]);
            ColoredDiagram d = to_slices(canonical_coloring(l, base, c));
            CycNumber v0 = ev.evaluate(d).value;
            for (int eta = 0; eta < c.nG(); ++eta) {
                CAPTURE(eta);
                KirbySpec k;
                k.type = KirbyType::Conjugate;
                k.eta = eta;
                CHECK(tau(kirby_move(l, c, k), c).tau == t0);
                ColoredDiagram e = conjugate_diagram(d, eta, c);
                REQUIRE(validate_coloring(e, c).ok());
                CHECK(ev.evaluate(e).value == v0);
            }
        }
    }
}

TEST_CASE("coupon placement does not matter") {
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            GLink l = random_special_link(c, 60 + seed);
            CycNumber F = link_form(l, c);
            LinkGraph g = link_graph(l);
            for (int k = 0; k < g.ncomp; ++k)
                for (int s : coupon_sites(g, k)) {
                    LinkFormOptions o;
                    o.site[k] = s;
                    CHECK(link_form(l, c, o) == F);
                }
            if (g.ncomp > 1) {
                LinkFormOptions o;
                o.site[0] = coupon_sites(g, 1)[0];
                CHECK_THROWS_AS(link_form(l, c, o), LinkError);
            }
        }
    }
}

TEST_CASE("commutator coupons contribute nothing") {
    CategoryData c = load_data("z3_s3_crossed.cat");
    Evaluator ev(c);
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        GLink l = random_special_link(c, 90 + seed);
        LinkGraph g = link_graph(l);
        if (g.ncomp == 0) continue;
        std::vector<int> base;
        for (int k = 0; k < g.ncomp; ++k)
            base.push_back(c.labels_of_grade(l.arc_g.at(g.nodes[coupon_sites(g, k)[0]].arc))[0]);
        LevelDiagram d = canonical_coloring(l, base, c);
        for (auto& lv : d.levels)
            if (lv.piece.kind == PieceKind::Coupon) {
                CycNumber f = random_scalar(c, rng), h = random_scalar(c, rng);
                lv.piece = coupon(lv.piece.in, lv.piece.out, f * h - h * f);
                break;
            }
        CHECK(ev.value(d).is_zero());
    }
}

static long count_tuples(const CategoryData& c, const std::vector<int>& alphas, const std::vector<int>& betas) {
    size_t n = alphas.size();
    long total = 1, hits = 0;
    for (size_t i = 0; i < n; ++i) total *= c.nL();
    for (long code = 0; code < total; ++code) {
        long k = code;
        int acc = c.lunit();
        bool graded = true;
        for (size_t i = 0; i < n; ++i) {
            int J = (int)(k % c.nL());
            k /= c.nL();
            if (c.grade[J] != betas[i]) graded = false;
            acc = c.lmul(acc, c.lmul(c.act[alphas[i]][c.linv(J)], J));
        }
        if (graded && acc == c.lunit()) ++hits;
    }
    return hits;
}

TEST_CASE("Verlinde ranks") {
    CategoryData z = load_data("z3.cat");
    CHECK(verlinde_rank(z, {}, {}) == 1);
    CHECK(verlinde_rank(z, {z.gunit()}, {z.gunit()}) == 3);
    CategoryData b = load_data("bichar_z2.cat");
    CHECK(verlinde_rank(b, {0}, {1}) == 1);
    CHECK(verlinde_rank(b, {1}, {1}) == 1);
    for (const char* f : kModular) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (int a = 0; a < c.nG(); ++a)
            for (int bb = 0; bb < c.nG(); ++bb) {
                if (c.gmul(a, bb) != c.gmul(bb, a)) {
                    CHECK_THROWS_AS(verlinde_rank(c, {a}, {bb}), std::invalid_argument);
                    continue;
                }
                CHECK(verlinde_rank(c, {a}, {bb}) == count_tuples(c, {a}, {bb}));
            }
        if (c.nL() <= 6)
            for (int a = 0; a < c.nG(); ++a)
                for (int bb = 0; bb < c.nG(); ++bb) {
                    std::vector<int> al{a, c.ginv(a)}, be{bb, bb};
                    int rel = c.gunit();
                    for (int i = 0; i < 2; ++i)
                        rel = c.gmul(rel, c.gmul(c.gmul(c.ginv(al[i]), c.ginv(be[i])), c.gmul(al[i], be[i])));
                    if (rel != c.gunit()) continue;
                    CHECK(verlinde_rank(c, al, be) == count_tuples(c, al, be));
                }
    }
    CHECK_THROWS_AS(verlinde_rank(z, {0}, {}), std::invalid_argument);
}

TEST_CASE("threaded link form is deterministic") {
    for (const char* f : {"z3.cat", "z3_s3_crossed.cat"}) {
        CAPTURE(f);
        CategoryData c = load_data(f);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            GLink l = random_special_link(c, 200 + seed);
            std::vector<LinkFormTerm> t1, t3;
            LinkFormOptions o1, o3;
            o3.threads = 3;
            CycNumber a = link_form(l, c, o1, &t1), b = link_form(l, c, o3, &t3);
            CHECK(a == b);
            REQUIRE(t1.size() == t3.size());
            for (size_t i = 0; i < t1.size(); ++i) {
                CHECK(t1[i].labels == t3[i].labels);
                CHECK(t1[i].value == t3[i].value);
            }
        }
        KirbyFuzzResult r1 = kirby_fuzz(c, 3, 6, 2, 1), r2 = kirby_fuzz(c, 3, 6, 2, 3);
        CHECK(r1.moves == r2.moves);
        CHECK(r1.counts == r2.counts);
    }
}

#include "CLI11.hpp"

#include "gcx/axioms.hpp"
#include "gcx/evaluator.hpp"
#include "gcx/fusion.hpp"
#include "gcx/moves.hpp"
#include "gcx/surgery.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace gcx;

namespace {

std::string data_dir;

const std::vector<std::string> kAll = {"trivial.cat",           "z3.cat",         "bichar_z2.cat",
                                       "z4_graded.cat",         "s3_crossed.cat", "z3_gauged.cat",
                                       "s3_crossed_gauged.cat", "bichar_z2_gauged.cat", "z4_graded_gauged.cat",
                                       "z3_s3_crossed.cat"};

std::string read_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CategoryData cat(const std::string& f) { return load_category(data_dir + "/" + f); }

GLink link(const std::string& f, const CategoryData& c) { return parse_link(read_text(data_dir + "/links/" + f), c); }

bool modular(const CategoryData& c) {
    if (!c.has_rank) return false;
    ModularReport m = modular_report(c);
    return m.invertible && m.delta_plus * m.delta_minus == c.rankD * c.rankD;
}

AxiomReport five_checks(const CategoryData& c) {
    AxiomReport r;
    r.merge(check_pivotal(c));
    r.merge(check_crossing(c));
    r.merge(check_braiding(c));
    r.merge(check_ribbon(c));
    r.merge(check_graded_dims(c));
    return r;
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome crit1() {
    Outcome o;
    std::ostringstream d;
    for (const char* f : {"trivial.cat", "z3.cat", "bichar_z2.cat"}) {
        AxiomReport r = five_checks(cat(f));
        d << f << " " << r.checked << " checks " << (r.ok() ? "pass" : "FAIL") << "; ";
        o.ok &= r.ok() && r.checked > 0;
    }
    CategoryData z = cat("z3.cat");
    CycNumber two(z.N, 2);
    int total = 0, caught = 0;
    auto probe = [&](std::vector<CycNumber> CategoryData::*field) {
        for (size_t i = 0; i < (z.*field).size(); ++i) {
            CategoryData b = z;
            (b.*field)[i] = (b.*field)[i] * two;
            AxiomReport r = five_checks(b);
            ++total;
            bool local = !r.ok();
            for (const auto& f : r.failures) local &= !f.instance.empty() || !f.detail.empty();
            caught += local;
        }
    };
    probe(&CategoryData::braid_);
    probe(&CategoryData::dim);
    probe(&CategoryData::phi2_);
    probe(&CategoryData::phiA2_);
    probe(&CategoryData::phiA0_);
    probe(&CategoryData::phi0_);
    CategoryData b = z;
    b.rankD = b.rankD * two;
    ++total;
    try {
        verify_structure(b);
    } catch (const std::runtime_error&) {
        ++caught;
    }
    AxiomReport shipped = five_checks(cat("corrupted.cat"));
    d << "corruptions of z3 caught " << caught << "/" << total << "; corrupted.cat "
      << (shipped.ok() ? "passes" : "fails with " + std::to_string(shipped.failures.size()) + " instances");
    o.ok &= caught == total && !shipped.ok();
    o.detail = d.str();
    return o;
}

Outcome crit2() {
    Outcome o;
    long n = 0;
    for (const auto& f : kAll) {
        AxiomReport r = check_derived(cat(f));
        n += r.checked;
        if (!r.ok()) {
            o.ok = false;
            o.detail += f + " fails " + r.failures[0].axiom + "; ";
        }
    }
    o.detail += std::to_string(n) + " derived identity instances over " + std::to_string(kAll.size()) + " categories";
    return o;
}

Outcome crit3() {
    Outcome o;
    std::ostringstream d;
    const std::vector<std::string> names{"T1", "T1-inverse", "T2", "T2-inverse", "T3", "T4",
                                         "T4-inverse", "stabilization", "stabilization-inverse", "exchange"};
    long min_moves = -1;
    for (const auto& f : kAll) {
        CategoryData c = cat(f);
        Evaluator ev(c);
        FuzzStats st;
        long moves = 0, bad = 0;
        for (std::uint64_t s = 0; moves < 1000 && s < 100; ++s) {
            LevelDiagram dg = random_diagram(c, 500 + s, 3, 20);
            CycNumber v0 = ev.value(dg);
            MoveFuzzer fz(c, 9000 + s);
            for (int k = 0; k < 150; ++k) {
                MoveSpec m;
                if (!fz.step(dg, m)) break;
                ++moves;
                ++st.counts[move_name(m)];
                if (ev.value(dg) != v0) ++bad;
            }
            if (!validate_coloring(to_slices(dg), c).ok()) ++bad;
        }
        bool covered = true;
        for (const auto& n : names) covered &= st.counts[n] > 0;
        if (bad || !covered || moves < 1000) {
            o.ok = false;
            d << f << " moves=" << moves << " mismatches=" << bad << (covered ? "" : " missing move types") << "; ";
        }
        if (min_moves < 0 || moves < min_moves) min_moves = moves;
    }
    d << "at least " << min_moves << " moves per category, all move types, exact";
    o.detail = d.str();
    return o;
}

Outcome crit4() {
    Outcome o;
    std::set<std::string> ids;
    long n = 0;
    for (const auto& f : kAll) {
        CategoryData c = cat(f);
        AxiomReport r = evaluate_special_forms(c);
        n += r.checked;
        if (!r.ok()) {
            o.ok = false;
            o.detail += f + " fails " + r.failures[0].axiom + "; ";
        }
    }
    for (KinkKind k : all_kink_kinds()) ids.insert(kink_name(k));
    for (CrossKind k : all_cross_kinds())
        if (k != CrossKind::P && k != CrossKind::N) ids.insert(cross_name(k));
    o.ok &= ids.size() == 10;
    o.detail += std::to_string(ids.size()) + " identities, " + std::to_string(n) + " instances, exact";
    return o;
}

CycNumber pair_value(const std::string& s) {
    auto c = s.find(',');
    return CycNumber(12, std::stoi(s.substr(0, c))) + CycNumber(12, std::stoi(s.substr(c + 1))) * CycNumber::zeta(12, 4);
}

Outcome crit5() {
    Outcome o;
    CategoryData c = cat("z3.cat");
    ModularReport m = modular_report(c);
    std::map<std::string, std::string> fr;
    std::istringstream is(read_text(data_dir + "/oracle/z3_modular.txt"));
    std::string line;
    while (std::getline(is, line)) {
        auto e = line.find('=');
        if (e != std::string::npos) fr[line.substr(0, e)] = line.substr(e + 1);
    }
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) o.ok &= m.s_matrix[j][k] == CycNumber::zeta(12, (8 * j * k) % 12);
    for (int j = 0; j < 3; ++j) {
        std::istringstream rs(fr["S[" + std::to_string(j) + "]"]);
        std::string item;
        for (int k = 0; std::getline(rs, item, ';'); ++k) o.ok &= m.s_matrix[j][k] == pair_value(item);
    }
    CycNumber w = CycNumber::zeta(12, 4), three(12, 3);
    o.ok &= !m.det.is_zero() && m.invertible;
    o.ok &= m.delta_plus == c.one() + w * CycNumber(12, 2) && m.delta_plus == pair_value(fr["delta_plus"]);
    o.ok &= m.delta_minus == c.one() + w * w * CycNumber(12, 2) && m.delta_minus == pair_value(fr["delta_minus"]);
    o.ok &= m.delta_plus * m.delta_minus == three && c.rankD * c.rankD == three;
    o.detail = "delta_plus=" + m.delta_plus.str() + " delta_minus=" + m.delta_minus.str() + " det=" + m.det.str() +
               " D^2=" + (c.rankD * c.rankD).str();
    return o;
}

GLink framed_unknot(int p, int g) {
    std::vector<GLevel> v{{GLevelKind::Cup, 0, 1}};
    for (int i = 0; i < std::abs(p); ++i) {
        v.push_back({GLevelKind::Cup, 0, -1});
        GLevel x{GLevelKind::Cross, 1};
        x.a_over = p < 0;
        v.push_back(x);
        v.push_back({GLevelKind::Cap, 0});
    }
    v.push_back({GLevelKind::Cap, 0});
    int n = link_graph(GLink{v, {}}).narc;
    return make_link(v, std::vector<int>(n, g));
}

Outcome crit6() {
    Outcome o;
    int n = 0;
    for (const auto& f : kAll) {
        CategoryData c = cat(f);
        if (!modular(c)) continue;
        ModularReport m = modular_report(c);
        o.ok &= tau(GLink{}, c).tau == c.rankD.inv();
        for (int a = 0; a < c.nG(); ++a) o.ok &= tau(framed_unknot(0, a), c).tau == c.one();
        o.ok &= link_form(framed_unknot(1, c.gunit()), c) == m.delta_plus;
        o.ok &= link_form(framed_unknot(-1, c.gunit()), c) == m.delta_minus;
        ++n;
    }
    CategoryData z = cat("z3.cat");
    CycNumber t = tau(link("lens_p2.link", z), z).tau;
    o.ok &= t == -z.rankD.inv();
    o.ok &= link_form(link("unknot_p1.link", z), z) == modular_report(z).delta_plus;
    o.ok &= link_form(link("unknot_m1.link", z), z) == modular_report(z).delta_minus;
    o.detail = "lens_p2 tau=" + t.str() + " on z3, empty/unknot/Delta values on " + std::to_string(n) + " categories";
    return o;
}

Outcome crit7(int threads) {
    Outcome o;
    std::ostringstream d;
    long total = 0;
    std::vector<std::string> skipped;
    for (const auto& f : kAll) {
        CategoryData c = cat(f);
        if (!modular(c)) {
            skipped.push_back(f);
            continue;
        }
        KirbyFuzzResult r = kirby_fuzz(c, 2024, 500, 4, threads);
        total += r.moves;
        bool all = r.counts["first"] && r.counts["negative-FR"] && r.counts["reverse"] && r.counts["regauge"];
        if (r.failures || r.pairs < 500 || !all) {
            o.ok = false;
            d << f << " failures=" << r.failures << "; ";
        }
    }
    d << total << " moves over 500 pairs per modular category, exact";
    if (!skipped.empty()) {
        d << "; not modular, no invariant:";
        for (const auto& s : skipped) d << " " << s;
    }
    o.detail = d.str();
    return o;
}

Outcome crit8() {
    Outcome o;
    long n = 0;
    for (const auto& f : kAll) {
        CategoryData c = cat(f);
        bool mod = modular(c);
        Evaluator ev(c);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            GLink l = random_special_link(c, 700 + seed);
            CycNumber t0 = mod ? tau(l, c).tau : c.zero();
            LinkGraph g = link_graph(l);
            std::vector<int> base;
            for (int k = 0; k < g.ncomp; ++k)
                base.push_back(c.labels_of_grade(l.arc_g.at(g.nodes[coupon_sites(g, k)[0]].arc))[0]);
            ColoredDiagram d = to_slices(canonical_coloring(l, base, c));
            CycNumber v0 = ev.evaluate(d).value;
            for (int eta = 0; eta < c.nG(); ++eta) {
                KirbySpec k;
                k.type = KirbyType::Conjugate;
                k.eta = eta;
                if (mod) o.ok &= tau(kirby_move(l, c, k), c).tau == t0;
                o.ok &= ev.evaluate(conjugate_diagram(d, eta, c)).value == v0;
                ++n;
            }
        }
    }
    o.detail = std::to_string(n) + " (link, eta) pairs, exact";
    return o;
}

long count_tuples(const CategoryData& c, int a, int b) {
    long hits = 0;
    for (int J = 0; J < c.nL(); ++J)
        if (c.grade[J] == b && c.lmul(c.act[a][c.linv(J)], J) == c.lunit()) ++hits;
    return hits;
}

Outcome crit9() {
    Outcome o;
    CategoryData z = cat("z3.cat"), b = cat("bichar_z2.cat");
    o.ok &= verlinde_rank(z, {}, {}) == 1;
    o.ok &= verlinde_rank(z, {z.gunit()}, {z.gunit()}) == 3;
    o.ok &= verlinde_rank(b, {b.gunit()}, {1}) == 1;
    int n = 0;
    for (const auto& f : {"bichar_z2.cat", "bichar_z2_gauged.cat"}) {
        CategoryData c = cat(f);
        for (int a = 0; a < c.nG(); ++a)
            for (int g = 0; g < c.nG(); ++g, ++n) o.ok &= verlinde_rank(c, {a}, {g}) == count_tuples(c, a, g);
    }
    o.detail = "genus 0 and 1 values plus " + std::to_string(n) + " counted cases";
    return o;
}

std::string run(const std::string& cmd, int& code) {
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) throw std::runtime_error("cannot run " + cmd);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

Outcome crit10(const std::string& cli) {
    Outcome o;
    std::string D = data_dir;
    std::vector<std::pair<std::string, int>> cmds{
        {"check " + D + "/trivial.cat", 0},
        {"check " + D + "/corrupted.cat", 2},
        {"smatrix " + D + "/z3.cat", 0},
        {"omega " + D + "/s3_crossed.cat r", 0},
        {"gauss " + D + "/z3.cat", 0},
        {"--json gauss " + D + "/z3_s3_crossed.cat", 0},
        {"tau " + D + "/z3.cat " + D + "/links/lens_p2.link", 0},
        {"tau " + D + "/z3.cat " + D + "/links/hopf.link --terms", 0},
        {"verlinde " + D + "/z3.cat --alpha e --beta e", 0},
        {"eval-diagram " + D + "/z3.cat " + D + "/diagrams/hopf_z3.diag", 0},
        {"--json check " + D + "/corrupted.cat", 2},
    };
    std::vector<std::string> threaded{"tau " + D + "/z3_s3_crossed.cat " + D + "/links/product_pair.link --terms",
                                      "--json kirby-fuzz " + D + "/z3.cat --seed 5 --steps 3 --pairs 30"};
    int runs = 0;
    for (const auto& [cmd, want] : cmds) {
        int c1, c2;
        std::string a = run(cli + " " + cmd, c1), b = run(cli + " " + cmd, c2);
        runs += 2;
        if (a != b || c1 != want || c2 != want) {
            o.ok = false;
            o.detail += "'" + cmd + "' differs or exit " + std::to_string(c1) + "; ";
        }
    }
    for (const auto& cmd : threaded) {
        int c1, c2, c3;
        std::string a = run(cli + " " + cmd + " --threads 1", c1), b = run(cli + " " + cmd + " --threads 1", c2),
                    t = run(cli + " " + cmd + " --threads 4", c3);
        runs += 3;
        if (a != b || a != t || c1 || c2 || c3) {
            o.ok = false;
            o.detail += "'" + cmd + "' differs across runs or threads; ";
        }
    }
    o.detail += std::to_string(runs) + " invocations byte identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string cli;
    int threads = 2;
    app.add_option("--data", data_dir)->required();
    app.add_option("--cli", cli)->required();
    app.add_option("--threads", threads);
    CLI11_PARSE(app, argc, argv);

    std::vector<std::pair<std::string, std::function<Outcome()>>> crits{
        {"axiom certification", crit1},
        {"derived identities", crit2},
        {"move invariance", crit3},
        {"generalized crossing forms", crit4},
        {"modular data", crit5},
        {"surgery golden values", crit6},
        {"Kirby invariance", [&] { return crit7(threads); }},
        {"conjugation invariance", crit8},
        {"Verlinde ranks", crit9},
        {"CLI determinism", [&] { return crit10(cli); }},
    };
    int failed = 0;
    for (size_t i = 0; i < crits.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = crits[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream sec;
        sec.precision(1);
        sec << std::fixed << s;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << crits[i].first << ": " << o.detail
                  << " (tolerance exact, " << sec.str() << "s)" << std::endl;
        failed += !o.ok;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) + " of 10" : std::string("ALL 10 PASS")) << std::endl;
    return failed ? 1 : 0;
}

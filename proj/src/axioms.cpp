#include "gcx/axioms.hpp"

#include <algorithm>
#include <sstream>

namespace gcx {

void AxiomReport::expect(const std::string& axiom, std::vector<std::string> instance, const CycNumber& lhs,
                         const CycNumber& rhs) {
    ++checked;
    if (lhs != rhs) failures.push_back({axiom, std::move(instance), lhs, rhs});
}

void AxiomReport::fail(const std::string& axiom, std::vector<std::string> instance, const CycNumber& lhs,
                       const CycNumber& rhs) {
    ++checked;
    failures.push_back({axiom, std::move(instance), lhs, rhs});
}

void AxiomReport::fail_detail(const std::string& axiom, std::vector<std::string> instance,
                              const std::string& detail) {
    ++checked;
    failures.push_back({axiom, std::move(instance), CycNumber(), CycNumber(), detail});
}

void AxiomReport::merge(const AxiomReport& o) {
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

void AxiomReport::sort() {
    std::stable_sort(failures.begin(), failures.end(), [](const AxiomEntry& a, const AxiomEntry& b) {
        if (a.axiom != b.axiom) return a.axiom < b.axiom;
        return a.instance < b.instance;
    });
}

std::string AxiomReport::str() const {
    std::ostringstream os;
    for (const auto& f : failures) {
        os << f.axiom << " (";
        for (size_t i = 0; i < f.instance.size(); ++i) os << (i ? "," : "") << f.instance[i];
        if (f.detail.empty())
            os << "): lhs = " << f.lhs.str() << " ; rhs = " << f.rhs.str() << "\n";
        else
            os << "): " << f.detail << "\n";
    }
    return os.str();
}

namespace {

struct Names {
    const CategoryData& c;
    std::string g(int a) const { return c.group.names[a]; }
    std::string l(int x) const { return c.labels.names[x]; }
};

}  // namespace

AxiomReport check_pivotal(const CategoryData& c) {
    AxiomReport r;
    Names n{c};
    CycNumber one = c.one();
    r.expect("pivotal.dim-unit", {n.l(c.lunit())}, c.dim[c.lunit()], one);
    for (int x = 0; x < c.nL(); ++x) {
        r.expect("pivotal.dim-square", {n.l(x)}, c.dim[x] * c.dim[x], one);
        // zig-zag for (ev, coev) and for (evtilde, coevtilde)
        r.expect("pivotal.zigzag-left", {n.l(x)}, one * one, one);
        r.expect("pivotal.zigzag-right", {n.l(x)}, c.dim[x] * c.dim[x], one);
        r.expect("pivotal.dual-dim", {n.l(x)}, c.dim[c.linv(x)], c.dim[x]);
        for (int y = 0; y < c.nL(); ++y)
            r.expect("pivotal.dim-mult", {n.l(x), n.l(y)}, c.dim[c.lmul(x, y)], c.dim[x] * c.dim[y]);
        for (int a = 0; a < c.nG(); ++a)
            r.expect("pivotal.dim-crossing", {n.g(a), n.l(x)}, c.dim[c.act[a][x]], c.dim[x]);
    }
    r.sort();
    return r;
}

AxiomReport check_crossing(const CategoryData& c) {
    AxiomReport r;
    Names n{c};
    CycNumber one = c.one();
    int G = c.nG(), L = c.nL();
    for (int a = 0; a < G; ++a) {
        for (int x = 0; x < L; ++x) {
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z)
                    r.expect("crossing.monoidal-assoc", {n.g(a), n.l(x), n.l(y), n.l(z)},
                             c.phiA2(a, c.lmul(x, y), z) * c.phiA2(a, x, y),
                             c.phiA2(a, x, c.lmul(y, z)) * c.phiA2(a, y, z));
            r.expect("crossing.monoidal-unit-right", {n.g(a), n.l(x)}, c.phiA2(a, x, c.lunit()) * c.phiA0(a), one);
            r.expect("crossing.monoidal-unit-left", {n.g(a), n.l(x)}, c.phiA2(a, c.lunit(), x) * c.phiA0(a), one);
        }
        for (int b = 0; b < G; ++b) {
            int ba = c.gmul(b, a);
            for (int x = 0; x < L; ++x)
                for (int y = 0; y < L; ++y)
                    r.expect("crossing.composite-monoidal", {n.g(a), n.g(b), n.l(x), n.l(y)},
                             c.phi2(a, b, c.lmul(x, y)) * c.phiA2(b, x, y) *
                                 c.phiA2(a, c.act[b][x], c.act[b][y]),
                             c.phiA2(ba, x, y) * c.phi2(a, b, x) * c.phi2(a, b, y));
            r.expect("crossing.composite-unit", {n.g(a), n.g(b)}, c.phi2(a, b, c.lunit()) * c.phiA0(b) * c.phiA0(a), c.phiA0(ba));
            for (int g = 0; g < G; ++g)
                for (int x = 0; x < L; ++x)
                    r.expect("crossing.composite-assoc", {n.g(a), n.g(b), n.g(g), n.l(x)},
                             c.phi2(a, c.gmul(g, b), x) * c.phi2(b, g, x),
                             c.phi2(ba, g, x) * c.phi2(a, b, c.act[g][x]));
        }
        for (int x = 0; x < L; ++x) {
            r.expect("crossing.identity-right", {n.g(a), n.l(x)}, c.phi2(a, c.gunit(), x) * c.phi0(x), one);
            r.expect("crossing.identity-left", {n.g(a), n.l(x)}, c.phi2(c.gunit(), a, x) * c.phi0(c.act[a][x]), one);
            r.expect("crossing.pivotal", {n.g(a), n.l(x)}, c.phiL(a, x), c.phiR(a, x));
        }
    }
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            r.expect("crossing.identity-monoidal", {n.l(x), n.l(y)}, c.phi0(c.lmul(x, y)),
                     c.phiA2(c.gunit(), x, y) * c.phi0(x) * c.phi0(y));
    r.expect("crossing.unit", {c.labels.names[c.lunit()], c.group.names[c.gunit()]}, c.phi0(c.lunit()), c.phiA0(c.gunit()));
    r.sort();
    return r;
}

AxiomReport check_braiding(const CategoryData& c) {
    AxiomReport r;
    Names n{c};
    int G = c.nG(), L = c.nL();
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y) {
            int gy = c.grade[y];
            for (int z = 0; z < L; ++z) {
                int gz = c.grade[z];
                r.expect("braiding.hexagon-second", {n.l(x), n.l(y), n.l(z)}, c.braid(x, c.lmul(y, z)),
                         c.phi2(gz, gy, x) * c.braid(c.act[gy][x], z) * c.braid(x, y));
                r.expect("braiding.hexagon-first", {n.l(x), n.l(y), n.l(z)}, c.braid(c.lmul(x, y), z),
                         c.phiA2(gz, x, y) * c.braid(x, z) * c.braid(y, z));
                // Yang-Baxter with the crossing corrections on the last factor
                r.expect("braiding.yang-baxter", {n.l(x), n.l(y), n.l(z)},
                         c.phi2(gz, gy, x) * c.braid(x, y) * c.braid(c.act[gy][x], z) * c.braid(y, z),
                         c.phi2(c.gmul(c.gmul(c.ginv(gz), gy), gz), gz, x) * c.braid(y, z) * c.braid(x, z) *
                             c.braid(c.act[gz][x], c.act[gz][y]));
            }
            for (int a = 0; a < G; ++a) {
                int ax = c.act[a][x], ay = c.act[a][y];
                r.expect("braiding.crossing-natural", {n.g(a), n.l(x), n.l(y)}, c.braid(x, y) * c.phiA2(a, x, y),
                         c.phiA2(a, y, c.act[gy][x]) * c.phi2(c.grade[ay], a, x) * c.braid(ax, ay) /
                             c.phi2(a, gy, x));
            }
        }
    for (int x = 0; x < L; ++x) {
        r.expect("braiding.unit-right", {n.l(x)}, c.braid(x, c.lunit()), c.phi0(x));
        r.expect("braiding.unit-left", {n.l(x)}, c.braid(c.lunit(), x), c.phiA0(c.grade[x]));
    }
    r.sort();
    return r;
}

AxiomReport check_ribbon(const CategoryData& c) {
    AxiomReport r;
    Names n{c};
    int L = c.nL(), G = c.nG();
    for (int x = 0; x < L; ++x) {
        int a = c.grade[x];
        int w = c.act[a][x];
        r.expect("ribbon.self-dual", {n.l(x)}, c.twist(x),
                 c.phi0(x) * c.phiL(c.ginv(a), w) * c.twist(c.linv(w)) / c.phi2(c.ginv(a), a, x));
        for (int y = 0; y < L; ++y) {
            int b = c.grade[y];
            int xy = c.lmul(x, y);
            r.expect("ribbon.twist-mult", {n.l(x), n.l(y)}, c.twist(xy),
                     c.twist(x) * c.twist(y) * c.braid(x, y) * c.braid(y, c.act[b][x]) * c.phi2(b, a, x) *
                         c.phi2(c.gmul(c.gmul(c.ginv(b), a), b), b, y) * c.phiA2(c.gmul(a, b), x, y));
        }
        for (int b = 0; b < G; ++b)
            r.expect("ribbon.twist-conj", {n.g(b), n.l(x)}, c.twist(x),
                     c.phi2(c.gmul(c.gmul(c.ginv(b), a), b), b, x) * c.twist(c.act[b][x]) / c.phi2(b, a, x));
    }
    r.sort();
    return r;
}

AxiomReport check_derived(const CategoryData& c) {
    AxiomReport r;
    Names n{c};
    CycNumber one = c.one();
    int L = c.nL(), G = c.nG();
    for (int x = 0; x < L; ++x) {
        int a = c.grade[x];
        int w = c.act[a][x];
        for (int y = 0; y < L; ++y) {
            CycNumber inv = c.braid(x, y).inv();
            r.expect("lemma.braid-inverse-first", {n.l(x), n.l(y)}, c.braid_inv(x, y), inv);
            r.expect("lemma.braid-inverse-second", {n.l(x), n.l(y)}, c.braid_inv_second(x, y), inv);
        }
        r.expect("lemma.twist-inverse", {n.l(x)}, c.twist(x) * c.twist_inverse(x), one);
        // closures of the braiding on the other side
        r.expect("lemma.twist-right-closure", {n.l(x)}, one * c.braid(x, w) * c.dim[w], c.twist(x));
        r.expect("lemma.twist-inverse-left-closure", {n.l(x)}, c.dim[x] * c.braid_inv_second(x, x) * one,
                 c.twist(x).inv());
        for (int b = 0; b < G; ++b) {
            int y = x;
            CycNumber s = CycNumber::zeta(c.N, 1) + CycNumber(c.N, 2);
            int src = c.act[b][y];
            // psi: X -> phi_b(Y), X = act(b, y)
            CycNumber bar = c.psi_bar(s, b, y);
            r.expect("lemma.psi-bar-bar", {n.g(b), n.l(y)}, c.psi_bar(bar, c.ginv(b), src), s);
            CycNumber lhs = c.psi_bar(c.psi_minus(s, b, y), b, c.linv(y));
            CycNumber rhs = c.psi_minus(bar, c.ginv(b), src);
            r.expect("lemma.psi-bar-minus", {n.g(b), n.l(y)}, lhs, rhs);
        }
    }
    for (int x : c.kernel_labels())
        for (int y : c.kernel_labels())
            r.expect("lemma.neutral-balancing", {n.l(x), n.l(y)}, c.neutral_twist(c.lmul(x, y)),
                     c.neutral_twist(x) * c.neutral_twist(y) * c.neutral_braid(x, y) * c.neutral_braid(y, x));
    r.sort();
    return r;
}

}  // namespace gcx

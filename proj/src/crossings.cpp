#include "gcx/crossings.hpp"

#include <stdexcept>

namespace gcx {

const std::vector<CrossKind>& all_cross_kinds() {
    static const std::vector<CrossKind> v{CrossKind::P,  CrossKind::N,  CrossKind::P1, CrossKind::N1,
                                          CrossKind::P2, CrossKind::N2, CrossKind::P3, CrossKind::N3};
    return v;
}

CrossShape cross_shape(CrossKind k) {
    switch (k) {
        case CrossKind::P: return {1, 1, false};
        case CrossKind::N: return {1, 1, true};
        case CrossKind::P1: return {-1, 1, true};
        case CrossKind::N1: return {1, -1, false};
        case CrossKind::P2: return {1, -1, true};
        case CrossKind::N2: return {-1, 1, false};
        case CrossKind::P3: return {-1, -1, false};
        case CrossKind::N3: return {-1, -1, true};
    }
    return {};
}

CrossKind cross_kind(int sa, int sb, bool a_over) {
    for (CrossKind k : all_cross_kinds()) {
        CrossShape s = cross_shape(k);
        if (s.sa == sa && s.sb == sb && s.a_over == a_over) return k;
    }
    throw std::invalid_argument("cross_kind: bad signs");
}

int cross_sign(CrossKind k) {
    CrossShape s = cross_shape(k);
    return s.sa * s.sb * (s.a_over ? -1 : 1);
}

CrossKind cross_inverse(CrossKind k) {
    CrossShape s = cross_shape(k);
    return cross_kind(s.sb, s.sa, !s.a_over);
}

std::string cross_name(CrossKind k) {
    switch (k) {
        case CrossKind::P: return "s+";
        case CrossKind::N: return "s-";
        case CrossKind::P1: return "s'+";
        case CrossKind::N1: return "s'-";
        case CrossKind::P2: return "s''+";
        case CrossKind::N2: return "s''-";
        case CrossKind::P3: return "s'''+";
        case CrossKind::N3: return "s'''-";
    }
    return "";
}

std::pair<int, int> cross_outputs(const CategoryData& c, CrossKind k, int a, int b) {
    int ga = c.grade[a], gb = c.grade[b];
    switch (k) {
        case CrossKind::P:
        case CrossKind::N2: return {b, c.act[gb][a]};
        case CrossKind::N1:
        case CrossKind::P3: return {b, c.act[c.ginv(gb)][a]};
        case CrossKind::N:
        case CrossKind::P2: return {c.act[c.ginv(ga)][b], a};
        case CrossKind::P1:
        case CrossKind::N3: return {c.act[ga][b], a};
    }
    return {};
}

PsiType cross_psi_type(const CategoryData& c, CrossKind k, int a, int b) {
    auto [b2, a2] = cross_outputs(c, k, a, b);
    switch (k) {
        case CrossKind::P:
        case CrossKind::N2: return {a2, c.grade[b], a};
        case CrossKind::N1:
        case CrossKind::P3: return {a, c.grade[b], a2};
        case CrossKind::N:
        case CrossKind::P2: return {b, c.grade[a], b2};
        case CrossKind::P1:
        case CrossKind::N3: return {b2, c.grade[a], b};
    }
    return {};
}

std::vector<Level> expand_cross(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi, int pos) {
    auto [b2, a2] = cross_outputs(c, k, a, b);
    switch (k) {
        case CrossKind::P: return {{cross_p(c, a, b, psi), pos}};
        case CrossKind::N: return {{cross_n(c, a, b, psi), pos}};
        case CrossKind::P1: return {{cup_r(a), pos + 2}, {cross_p(c, b, a, psi), pos + 1}, {cap_r(a), pos}};
        case CrossKind::N1: return {{cup_l(b), pos}, {cross_n(c, b, a, psi), pos + 1}, {cap_l(b), pos + 2}};
        case CrossKind::P2: return {{cup_l(b2), pos}, {cross_p(c, b2, a, psi), pos + 1}, {cap_l(b), pos + 2}};
        case CrossKind::N2: return {{cup_r(a2), pos + 2}, {cross_n(c, b, a2, psi), pos + 1}, {cap_r(a), pos}};
        case CrossKind::P3:
            return {{cup_r(a2), pos + 2},
                    {cup_r(b), pos + 3},
                    {cross_p(c, a2, b, psi), pos + 2},
                    {cap_r(b), pos + 1},
                    {cap_r(a), pos}};
        case CrossKind::N3:
            return {{cup_r(a), pos + 2},
                    {cup_r(b2), pos + 3},
                    {cross_n(c, a, b2, psi), pos + 2},
                    {cap_r(b), pos + 1},
                    {cap_r(a), pos}};
    }
    return {};
}

std::vector<Level> expand_cross_rotated(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi,
                                        int pos) {
    auto [b2, a2] = cross_outputs(c, k, a, b);
    switch (k) {
        case CrossKind::P3:
            return {{cup_l(b), pos},
                    {cup_l(a2), pos + 1},
                    {cross_p(c, a2, b, psi), pos + 2},
                    {cap_l(a), pos + 3},
                    {cap_l(b), pos + 2}};
        case CrossKind::N3:
            return {{cup_l(b2), pos},
                    {cup_l(a), pos + 1},
                    {cross_n(c, a, b2, psi), pos + 2},
                    {cap_l(a), pos + 3},
                    {cap_l(b), pos + 2}};
        default: return expand_cross(c, k, a, b, psi, pos);
    }
}

int cross_inner_index(CrossKind k) {
    switch (k) {
        case CrossKind::P:
        case CrossKind::N: return 0;
        case CrossKind::P3:
        case CrossKind::N3: return 2;
        default: return 1;
    }
}

CycNumber cross_closed_form(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi) {
    auto [b2, a2] = cross_outputs(c, k, a, b);
    int ga = c.grade[a], gb = c.grade[b];
    switch (k) {
        case CrossKind::P: return c.braid(a, b) / psi;
        case CrossKind::N: return psi * c.braid_inv(b2, a);
        case CrossKind::P1: return c.braid_inv(b2, c.linv(a)) * c.psi_bar(psi, ga, b);
        case CrossKind::N1: return c.braid(a, c.linv(b)) / c.psi_bar(psi, gb, a2);
        case CrossKind::P2: return c.braid_inv(c.linv(b2), a) * c.psi_minus(psi, ga, b2);
        case CrossKind::N2: return c.braid(c.linv(a), b) / c.psi_minus(psi, gb, a);
        case CrossKind::P3:
            return c.braid(c.linv(a), c.linv(b)) / c.psi_bar(c.psi_minus(psi, gb, a2), gb, c.linv(a2));
        case CrossKind::N3:
            return c.braid_inv(c.linv(b2), c.linv(a)) * c.psi_bar(c.psi_minus(psi, ga, b), ga, c.linv(b));
    }
    return psi;
}

const std::vector<KinkKind>& all_kink_kinds() {
    static const std::vector<KinkKind> v{KinkKind::Tp, KinkKind::Tm, KinkKind::TpR, KinkKind::TmR};
    return v;
}

std::string kink_name(KinkKind k) {
    switch (k) {
        case KinkKind::Tp: return "T+";
        case KinkKind::Tm: return "T-";
        case KinkKind::TpR: return "T'+";
        case KinkKind::TmR: return "T'-";
    }
    return "";
}

int kink_output(const CategoryData& c, KinkKind k, int x) {
    int g = c.grade[x];
    return (k == KinkKind::Tp || k == KinkKind::TpR) ? c.act[g][x] : c.act[c.ginv(g)][x];
}

std::vector<Level> expand_kink(const CategoryData& c, KinkKind k, int x, const CycNumber& psi, int pos) {
    int x2 = kink_output(c, k, x);
    switch (k) {
        case KinkKind::Tp: return {{cup_l(x), pos}, {cross_p(c, x, x, psi), pos + 1}, {cap_r(x), pos}};
        case KinkKind::Tm: return {{cup_l(x2), pos}, {cross_n(c, x2, x, psi), pos + 1}, {cap_r(x2), pos}};
        case KinkKind::TpR: return {{cup_r(x2), pos + 1}, {cross_p(c, x, x2, psi), pos}, {cap_l(x2), pos + 1}};
        case KinkKind::TmR: return {{cup_r(x), pos + 1}, {cross_n(c, x, x, psi), pos}, {cap_l(x), pos + 1}};
    }
    return {};
}

CycNumber kink_closed_form(const CategoryData& c, KinkKind k, int x, const CycNumber& psi) {
    int x2 = kink_output(c, k, x);
    if (k == KinkKind::Tp || k == KinkKind::TpR) return c.twist(x) / psi;
    return psi / c.twist(x2);
}

}  // namespace gcx

#include "gcx/evaluator.hpp"

#include "gcx/crossings.hpp"

#include <stdexcept>

namespace gcx {

PointedAlgebra::PointedAlgebra(const CategoryData& c) : c_(c) {
    int L = c.nL();
    for (int x = 0; x < L; ++x) dim_.emplace_back(c.dim[x]);
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y) {
            braid_.emplace_back(c.braid(x, y));
            braid_inv_.emplace_back(c.braid_inv(x, y));
        }
}

CycNumber PointedAlgebra::identity() const { return c_.one(); }

CycNumber PointedAlgebra::elementary(const Piece& p) const {
    Prod acc(c_.N);
    accumulate(acc, p);
    return acc.value();
}

CycNumber PointedAlgebra::compose(const CycNumber& top, const CycNumber& bottom) const { return top * bottom; }
CycNumber PointedAlgebra::tensor(const CycNumber& left, const CycNumber& right) const { return left * right; }

void PointedAlgebra::accumulate(Prod& acc, const Piece& p) const {
    int L = c_.nL();
    switch (p.kind) {
        case PieceKind::Id:
        case PieceKind::CapR:
        case PieceKind::CupR: break;
        case PieceKind::CapL:
        case PieceKind::CupL: acc.mul(dim_[p.x]); break;
        case PieceKind::CrossP:
            acc.mul(braid_[p.x * L + p.y]);
            acc.div(p.s);
            break;
        case PieceKind::CrossN:
            acc.mul(p.s);
            acc.mul(braid_inv_[p.z * L + p.x]);
            break;
        case PieceKind::Coupon: acc.mul(p.s); break;
    }
}

int object_label(const CategoryData& c, const BoundaryObject& b) {
    int r = c.lunit();
    for (const auto& s : b) r = c.lmul(r, s.sign > 0 ? s.label : c.linv(s.label));
    return r;
}

int object_grade(const CategoryData& c, const BoundaryObject& b) {
    int r = c.gunit();
    for (const auto& s : b) r = c.gmul(r, s.sign > 0 ? c.grade[s.label] : c.ginv(c.grade[s.label]));
    return r;
}

Morphism Evaluator::evaluate(const ColoredDiagram& d) const {
    const CategoryData& c = alg_.data();
    AxiomReport r = validate_coloring(d, c);
    if (!r.ok()) throw std::invalid_argument("invalid coloring: " + r.str());
    Prod acc(c.N);
    for (const auto& s : d.slices)
        for (const auto& p : s) alg_.accumulate(acc, p);
    Morphism m{d.source, d.target(), acc.value()};
    if (!m.value.is_zero() && object_label(c, m.source) != object_label(c, m.target))
        throw std::logic_error("nonzero value in a zero Hom space");
    return m;
}

CycNumber Evaluator::value(const LevelDiagram& d) const {
    Prod acc(alg_.data().N);
    for (const auto& l : d.levels) alg_.accumulate(acc, l.piece);
    return acc.value();
}

Morphism evaluate(const ColoredDiagram& d, const CategoryData& c) { return Evaluator(c).evaluate(d); }

AxiomReport evaluate_special_forms(const CategoryData& c) {
    AxiomReport r;
    Evaluator ev(c);
    std::vector<CycNumber> psis{c.one(), CycNumber::zeta(c.N, 1) + CycNumber(c.N, 2)};
    auto check = [&](const std::string& name, std::vector<std::string> inst, const BoundaryObject& src,
                     const std::vector<Level>& levels, const CycNumber& closed) {
        LevelDiagram d{src, levels};
        boundaries(d);
        r.expect(name, std::move(inst), ev.value(d), closed);
    };
    for (size_t pi = 0; pi < psis.size(); ++pi) {
        const CycNumber& psi = psis[pi];
        std::string ps = "psi" + std::to_string(pi);
        for (int x = 0; x < c.nL(); ++x) {
            for (KinkKind k : all_kink_kinds())
                check("special." + kink_name(k), {c.labels.names[x], ps}, {{x, 1}}, expand_kink(c, k, x, psi, 0),
                      kink_closed_form(c, k, x, psi));
            for (int y = 0; y < c.nL(); ++y)
                for (CrossKind k : all_cross_kinds()) {
                    CrossShape s = cross_shape(k);
                    BoundaryObject src{{x, s.sa}, {y, s.sb}};
                    std::vector<std::string> inst{c.labels.names[x], c.labels.names[y], ps};
                    CycNumber closed = cross_closed_form(c, k, x, y, psi);
                    check("special." + cross_name(k), inst, src, expand_cross(c, k, x, y, psi, 0), closed);
                    if (k == CrossKind::P3 || k == CrossKind::N3)
                        check("special.rotated." + cross_name(k), inst, src, expand_cross_rotated(c, k, x, y, psi, 0),
                              closed);
                }
        }
    }
    r.sort();
    return r;
}

static CycNumber phi_multi(const CategoryData& c, int eta, const std::vector<int>& a) {
    if (a.empty()) return c.phiA0(eta);
    CycNumber r = c.one();
    int tail = a.back();
    for (int k = (int)a.size() - 2; k >= 0; --k) {
        r *= c.phiA2(eta, a[k], tail);
        tail = c.lmul(a[k], tail);
    }
    return r;
}

CycNumber conjugation_factor(const CategoryData& c, int eta, const BoundaryObject& b) {
    std::vector<int> labs;
    CycNumber r = c.one();
    for (const auto& s : b) {
        if (s.sign < 0) r = r / c.phiL(eta, s.label);
        labs.push_back(s.sign > 0 ? s.label : c.linv(s.label));
    }
    return r * phi_multi(c, eta, labs);
}

ColoredDiagram conjugate_diagram(const ColoredDiagram& d, int eta, const CategoryData& c) {
    int ie = c.ginv(eta);
    auto mapl = [&](int x) { return c.act[eta][x]; };
    auto mapo = [&](BoundaryObject b) {
        for (auto& s : b) s.label = mapl(s.label);
        return b;
    };
    // psi : P -> phi_h(Q)
    auto mappsi = [&](const CycNumber& s, int h, int q) {
        return s * c.phi2(eta, h, q) / c.phi2(c.gmul(c.gmul(ie, h), eta), eta, q);
    };
    ColoredDiagram r{mapo(d.source), {}};
    for (const auto& sl : d.slices) {
        Slice out;
        for (const auto& p : sl) {
            Piece q = p;
            q.x = mapl(p.x);
            q.y = mapl(p.y);
            q.z = mapl(p.z);
            switch (p.kind) {
                case PieceKind::CrossP: q.s = Factor(mappsi(p.s.v, c.grade[p.y], p.x)); break;
                case PieceKind::CrossN: q.s = Factor(mappsi(p.s.v, c.grade[p.x], p.z)); break;
                case PieceKind::Coupon:
                    q.in = mapo(p.in);
                    q.out = mapo(p.out);
                    q.s = Factor(p.s.v * conjugation_factor(c, eta, p.in) / conjugation_factor(c, eta, p.out));
                    break;
                default: break;
            }
            out.push_back(std::move(q));
        }
        r.slices.push_back(std::move(out));
    }
    return r;
}

}  // namespace gcx

#include "gcx/moves.hpp"

#include "gcx/evaluator.hpp"

#include <algorithm>

namespace gcx {

std::string move_name(const MoveSpec& m) {
    std::string base;
    switch (m.type) {
        case MoveType::T1: base = "T1"; break;
        case MoveType::T2: base = "T2"; break;
        case MoveType::T3: base = "T3"; break;
        case MoveType::T4: base = "T4"; break;
        case MoveType::Stab: base = "stabilization"; break;
        case MoveType::Exchange: return "exchange";
    }
    return m.inverse ? base + "-inverse" : base;
}

long FuzzStats::total() const {
    long t = 0;
    for (const auto& [k, v] : counts) t += v;
    return t;
}

namespace {

using Levels = std::vector<Level>;

Levels join(Levels a, const Levels& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool matches(const LevelDiagram& d, int at, const Levels& pat) {
    if (at < 0 || at + pat.size() > d.levels.size()) return false;
    for (size_t i = 0; i < pat.size(); ++i)
        if (!(d.levels[at + i] == pat[i])) return false;
    return true;
}

LevelDiagram splice(const LevelDiagram& d, int from, int to, const Levels& repl) {
    LevelDiagram r{d.source, {}};
    r.levels.reserve(d.levels.size() - (to - from) + repl.size());
    r.levels.insert(r.levels.end(), d.levels.begin(), d.levels.begin() + from);
    r.levels.insert(r.levels.end(), repl.begin(), repl.end());
    r.levels.insert(r.levels.end(), d.levels.begin() + to, d.levels.end());
    return r;
}

BoundaryObject boundary_at(const LevelDiagram& d, int gap) {
    if (gap < 0 || gap > (int)d.levels.size()) throw MoveError("gap out of range");
    BoundaryObject b = d.source;
    for (int i = 0; i < gap; ++i) b = apply_level(b, d.levels[i]);
    return b;
}

const CycNumber& need(const MoveSpec& m, size_t i) {
    if (i >= m.data.size()) throw MoveError(move_name(m) + ": missing data");
    if (m.data[i].is_zero()) throw MoveError(move_name(m) + ": zero scalar");
    return m.data[i];
}

bool is_cross(const Level& l) { return l.piece.kind == PieceKind::CrossP || l.piece.kind == PieceKind::CrossN; }

const CycNumber& inner_psi(const LevelDiagram& d, int at) {
    if (at < 0 || at >= (int)d.levels.size() || !is_cross(d.levels[at])) throw MoveError("pattern mismatch");
    return d.levels[at].piece.s.v;
}

const std::pair<KinkKind, KinkKind> kT1[4] = {{KinkKind::Tp, KinkKind::Tm},
                                              {KinkKind::Tm, KinkKind::Tp},
                                              {KinkKind::TmR, KinkKind::TpR},
                                              {KinkKind::TpR, KinkKind::TmR}};

Levels t1_pattern(const CategoryData& c, int variant, int x, const CycNumber& psi, int pos) {
    auto [k1, k2] = kT1[variant];
    int x2 = kink_output(c, k1, x);
    return join(expand_kink(c, k1, x, psi, pos), expand_kink(c, k2, x2, psi, pos));
}

LevelDiagram move_t1(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    if (m.variant < 0 || m.variant > 3) throw MoveError("T1: bad variant");
    BoundaryObject b = boundary_at(d, m.level);
    if (m.pos < 0 || m.pos >= (int)b.size() || b[m.pos].sign != 1) throw MoveError("T1: needs a + strand");
    int x = b[m.pos].label;
    if (!m.inverse) return splice(d, m.level, m.level, t1_pattern(c, m.variant, x, need(m, 0), m.pos));
    // the kink crossing is the second level of the pattern
    Levels pat = t1_pattern(c, m.variant, x, inner_psi(d, m.level + 1), m.pos);
    if (!matches(d, m.level, pat)) throw MoveError("T1-inverse: pattern mismatch");
    return splice(d, m.level, m.level + (int)pat.size(), {});
}

Levels t2_pattern(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi, int pos) {
    auto [b2, a2] = cross_outputs(c, k, a, b);
    return join(expand_cross(c, k, a, b, psi, pos), expand_cross(c, cross_inverse(k), b2, a2, psi, pos));
}

LevelDiagram move_t2(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    if (m.variant < 0 || m.variant > 7) throw MoveError("T2: bad variant");
    CrossKind k = all_cross_kinds()[m.variant];
    CrossShape sh = cross_shape(k);
    BoundaryObject b = boundary_at(d, m.level);
    if (m.pos < 0 || m.pos + 1 >= (int)b.size() || b[m.pos].sign != sh.sa || b[m.pos + 1].sign != sh.sb)
        throw MoveError("T2: strand signs do not fit the crossing");
    int x = b[m.pos].label, y = b[m.pos + 1].label;
    if (!m.inverse) return splice(d, m.level, m.level, t2_pattern(c, k, x, y, need(m, 0), m.pos));
    Levels pat = t2_pattern(c, k, x, y, inner_psi(d, m.level + cross_inner_index(k)), m.pos);
    if (!matches(d, m.level, pat)) throw MoveError("T2-inverse: pattern mismatch");
    return splice(d, m.level, m.level + (int)pat.size(), {});
}

LevelDiagram move_t3(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    int l = m.level, p = m.pos;
    if (l < 0 || l + 3 > (int)d.levels.size()) throw MoveError("T3: site out of range");
    BoundaryObject b = boundary_at(d, l);
    if (p < 0 || p + 2 >= (int)b.size() || b[p].sign != 1 || b[p + 1].sign != 1 || b[p + 2].sign != 1)
        throw MoveError("T3: needs three + strands");
    for (int i = 0; i < 3; ++i)
        if (d.levels[l + i].piece.kind != PieceKind::CrossP) throw MoveError("T3: pattern mismatch");
    int x = b[p].label, y = b[p + 1].label, z = b[p + 2].label;
    int x1 = c.act[c.grade[y]][x];
    int y1 = c.act[c.grade[z]][y];
    int xt = c.act[c.grade[z]][x];
    auto lhs = [&](const CycNumber& A, const CycNumber& B, const CycNumber& C) {
        return Levels{{cross_p(c, x, y, A), p}, {cross_p(c, x1, z, B), p + 1}, {cross_p(c, y, z, C), p}};
    };
    auto rhs = [&](const CycNumber& A2, const CycNumber& B2, const CycNumber& C) {
        return Levels{{cross_p(c, y, z, C), p + 1}, {cross_p(c, x, z, A2), p}, {cross_p(c, xt, y1, B2), p + 1}};
    };
    CycNumber ratio = t3_ratio(c, x, y, z);
    if (!m.inverse) {
        const CycNumber &A = d.levels[l].piece.s.v, &B = d.levels[l + 1].piece.s.v, &C = d.levels[l + 2].piece.s.v;
        if (!matches(d, l, lhs(A, B, C))) throw MoveError("T3: pattern mismatch");
        const CycNumber &A2 = need(m, 0), &B2 = need(m, 1);
        if (m.data.size() > 2 && m.data[2] != C) throw MoveError("T3: the third crossing must keep its color");
        if (A * B != ratio * A2 * B2)
            throw MoveError("T3: side condition A*B = " + (A * B).str() + " but ratio*A'*B' = " + (ratio * A2 * B2).str());
        return splice(d, l, l + 3, rhs(A2, B2, C));
    }
    const CycNumber &C = d.levels[l].piece.s.v, &A2 = d.levels[l + 1].piece.s.v, &B2 = d.levels[l + 2].piece.s.v;
    if (!matches(d, l, rhs(A2, B2, C))) throw MoveError("T3-inverse: pattern mismatch");
    const CycNumber &A = need(m, 0), &B = need(m, 1);
    if (m.data.size() > 2 && m.data[2] != C) throw MoveError("T3: the third crossing must keep its color");
    if (A * B != ratio * A2 * B2)
        throw MoveError("T3-inverse: side condition A*B = " + (A * B).str() + " but ratio*A'*B' = " +
                        (ratio * A2 * B2).str());
    return splice(d, l, l + 3, lhs(A, B, C));
}

struct CrossRec {
    int a, b, a2, b2, s;
    CycNumber psi;
};

struct T4Result {
    LevelDiagram out;
    CycNumber lhs, rhs;
    int needed = 0;
    int last_sign = 0;
};

CycNumber phi_multi(const CategoryData& c, int mu, const std::vector<int>& a) {
    if (a.empty()) return c.phiA0(mu);
    CycNumber r = c.one();
    int tail = a.back();
    for (int k = (int)a.size() - 2; k >= 0; --k) {
        r *= c.phiA2(mu, a[k], tail);
        tail = c.lmul(a[k], tail);
    }
    return r;
}

// side quantity of a type 4 move; x0 is the bottom label of the moving strand
CycNumber t4_quantity(const CategoryData& c, int variant, int x0, const CycNumber& v, const std::vector<CrossRec>& cr) {
    if (variant <= 2) {
        int mu = c.grade[x0];
        int m = variant == 1 ? mu : c.ginv(mu);
        CycNumber q = v;
        std::vector<int> labs;
        for (const auto& r : cr) {
            CycNumber s = variant == 1 ? r.psi : c.psi_bar(r.psi, mu, r.b);
            if (r.s < 0) s = c.psi_minus(s, m, r.b2);
            q *= s;
            labs.push_back(r.s > 0 ? r.b2 : c.linv(r.b2));
        }
        return q * phi_multi(c, m, labs);
    }
    CycNumber q = c.one();
    std::vector<int> ys;
    for (const auto& r : cr) {
        int gb = c.grade[r.b];
        q *= r.s > 0 ? r.psi : c.psi_bar(r.psi, gb, r.a2);
        ys.push_back(r.s > 0 ? gb : c.ginv(gb));
    }
    if (ys.empty()) return q * c.phi0(x0);
    int acc = ys[0];
    for (size_t k = 1; k < ys.size(); ++k) {
        q *= c.phi2(ys[k], acc, x0);
        acc = c.gmul(acc, ys[k]);
    }
    return q;
}

T4Result t4_build(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m, bool pad) {
    int v = m.variant;
    if (v < 1 || v > 4) throw MoveError("T4: bad variant");
    bool over = v <= 2;
    int sZ = (v == 1 || v == 3) ? 1 : -1;
    int L = (int)d.levels.size();
    if (m.level < 0 || m.level >= L) throw MoveError("T4: site out of range");
    const Level& cl = d.levels[m.level];
    if (cl.piece.kind != PieceKind::Coupon || cl.pos != m.pos) throw MoveError("T4: no coupon at the site");
    const Piece& Q = cl.piece;
    int p = m.pos;
    int nin = (int)Q.in.size(), nout = (int)Q.out.size();
    auto bnds = boundaries(d);
    auto data_at = [&](size_t i) -> CycNumber {
        if (i < m.data.size()) {
            if (m.data[i].is_zero()) throw MoveError("T4: zero scalar");
            return m.data[i];
        }
        if (pad) return c.one();
        throw MoveError("T4: missing data");
    };
    auto len_of = [&](CrossKind k) { return (int)expand_cross(c, k, 0, 0, c.one(), 0).size(); };
    T4Result r;
    if (!m.inverse) {
        if (p < 1 || bnds[m.level][p - 1].sign != sZ) throw MoveError("T4: moving strand has the wrong sign");
        int x0 = bnds[m.level][p - 1].label;
        std::vector<CrossRec> exits, entries;
        int cur = m.level + 1;
        for (int j = 0; j < nout; ++j) {
            int s = Q.out[j].sign;
            CrossKind k = cross_kind(sZ, s, over);
            int len = len_of(k);
            if (cur + len > L) throw MoveError("T4: exit crossings do not match");
            int a = bnds[cur][p - 1 + j].label, b = bnds[cur][p + j].label;
            if (bnds[cur][p - 1 + j].sign != sZ || bnds[cur][p + j].sign != s)
                throw MoveError("T4: exit crossings do not match");
            CycNumber psi = inner_psi(d, cur + cross_inner_index(k));
            if (!matches(d, cur, expand_cross(c, k, a, b, psi, p - 1 + j)))
                throw MoveError("T4: exit crossings do not match");
            auto [b2, a2] = cross_outputs(c, k, a, b);
            exits.push_back({a, b, a2, b2, s, psi});
            cur += len;
        }
        Levels repl;
        int zl = x0;
        BoundaryObject in2, out2;
        for (int i = 0; i < nin; ++i) {
            int s = Q.in[i].sign, b = Q.in[i].label;
            CrossKind k = cross_kind(sZ, s, over);
            CycNumber psi = data_at(i);
            auto [b2, a2] = cross_outputs(c, k, zl, b);
            Levels e = expand_cross(c, k, zl, b, psi, p - 1 + i);
            repl.insert(repl.end(), e.begin(), e.end());
            entries.push_back({zl, b, a2, b2, s, psi});
            in2.push_back({b2, s});
            zl = a2;
        }
        int zend = exits.empty() ? x0 : exits.back().a2;
        if (zl != zend) throw MoveError("T4: moving strand labels disagree");
        for (int j = 0; j < nout; ++j) out2.push_back({exits[j].b2, Q.out[j].sign});
        CycNumber v1 = Q.s.v;
        if (over) {
            v1 = data_at(nin);
        } else {
            in2 = Q.in;
            out2 = Q.out;
        }
        repl.push_back({coupon(in2, out2, v1), p - 1});
        r.needed = nin + (over ? 1 : 0);
        r.last_sign = over || nin == 0 ? 0 : Q.in[nin - 1].sign;
        r.lhs = t4_quantity(c, v, x0, Q.s.v, exits);
        r.rhs = t4_quantity(c, v, x0, v1, entries);
        r.out = splice(d, m.level, cur, repl);
        return r;
    }
    if (p + nin >= (int)bnds[m.level].size() || bnds[m.level][p + nin].sign != sZ)
        throw MoveError("T4-inverse: moving strand has the wrong sign");
    std::vector<CrossRec> entries(nin), exits;
    int cur = m.level;
    for (int i = nin - 1; i >= 0; --i) {
        int s = Q.in[i].sign;
        CrossKind k = cross_kind(sZ, s, over);
        int g0 = cur - len_of(k);
        if (g0 < 0) throw MoveError("T4-inverse: entry crossings do not match");
        if (bnds[g0][p + i].sign != sZ || bnds[g0][p + i + 1].sign != s)
            throw MoveError("T4-inverse: entry crossings do not match");
        int a = bnds[g0][p + i].label, b = bnds[g0][p + i + 1].label;
        CycNumber psi = inner_psi(d, g0 + cross_inner_index(k));
        if (!matches(d, g0, expand_cross(c, k, a, b, psi, p + i)))
            throw MoveError("T4-inverse: entry crossings do not match");
        auto [b2, a2] = cross_outputs(c, k, a, b);
        entries[i] = {a, b, a2, b2, s, psi};
        cur = g0;
    }
    int start = cur;
    int x0 = bnds[start][p].label;
    int mu = c.grade[x0];
    BoundaryObject in0, out0;
    for (int i = 0; i < nin; ++i) in0.push_back({entries[i].b, Q.in[i].sign});
    for (int j = 0; j < nout; ++j) {
        int lab = Q.out[j].label;
        if (v == 1) lab = c.act[mu][lab];
        if (v == 2) lab = c.act[c.ginv(mu)][lab];
        out0.push_back({lab, Q.out[j].sign});
    }
    CycNumber v0 = over ? data_at(nout) : Q.s.v;
    Levels repl{{coupon(in0, out0, v0), p + 1}};
    int zl = x0;
    for (int j = 0; j < nout; ++j) {
        int s = out0[j].sign, b = out0[j].label;
        CrossKind k = cross_kind(sZ, s, over);
        CycNumber psi = data_at(j);
        auto [b2, a2] = cross_outputs(c, k, zl, b);
        Levels e = expand_cross(c, k, zl, b, psi, p + j);
        repl.insert(repl.end(), e.begin(), e.end());
        exits.push_back({zl, b, a2, b2, s, psi});
        if (b2 != Q.out[j].label) throw MoveError("T4-inverse: coupon labels disagree");
        zl = a2;
    }
    int zend = entries.empty() ? x0 : entries.back().a2;
    if (zl != zend) throw MoveError("T4-inverse: moving strand labels disagree");
    r.needed = nout + (over ? 1 : 0);
    r.last_sign = over || nout == 0 ? 0 : Q.out[nout - 1].sign;
    r.lhs = t4_quantity(c, v, x0, v0, exits);
    r.rhs = t4_quantity(c, v, x0, Q.s.v, entries);
    r.out = splice(d, start, m.level + 1, repl);
    return r;
}

LevelDiagram move_t4(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    T4Result r = t4_build(d, c, m, false);
    if ((int)m.data.size() != r.needed) throw MoveError("T4: expected " + std::to_string(r.needed) + " data entries");
    if (r.lhs != r.rhs)
        throw MoveError("T4: side condition fails, coupon side " + r.lhs.str() + " vs crossing side " + r.rhs.str());
    return r.out;
}

LevelDiagram move_stab(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    if (!m.inverse) {
        BoundaryObject b = boundary_at(d, m.level);
        if (m.pos < 0 || m.pos >= (int)b.size() || b[m.pos].sign != 1)
            throw MoveError("stabilization: needs a + strand");
        Strand s = b[m.pos];
        return splice(d, m.level, m.level, {{coupon({s}, {s}, c.one()), m.pos}});
    }
    if (m.level < 0 || m.level >= (int)d.levels.size()) throw MoveError("stabilization-inverse: out of range");
    const Level& l = d.levels[m.level];
    if (l.piece.kind != PieceKind::Coupon || l.pos != m.pos || l.piece.in.size() != 1 || l.piece.in != l.piece.out ||
        l.piece.in[0].sign != 1 || !l.piece.s.v.is_one())
        throw MoveError("stabilization-inverse: no identity coupon");
    return splice(d, m.level, m.level + 1, {});
}

LevelDiagram move_exchange(const LevelDiagram& d, const MoveSpec& m) {
    int l = m.level;
    if (l < 0 || l + 1 >= (int)d.levels.size()) throw MoveError("exchange: out of range");
    const Level &a = d.levels[l], &b = d.levels[l + 1];
    int n1 = a.piece.n_in(), o1 = a.piece.n_out(), n2 = b.piece.n_in(), o2 = b.piece.n_out();
    Level lo, hi;
    if (b.pos + n2 <= a.pos) {
        lo = {b.piece, b.pos};
        hi = {a.piece, a.pos - n2 + o2};
    } else if (b.pos >= a.pos + o1) {
        lo = {b.piece, b.pos - o1 + n1};
        hi = {a.piece, a.pos};
    } else {
        throw MoveError("exchange: levels overlap");
    }
    return splice(d, l, l + 2, {lo, hi});
}

}  // namespace

LevelDiagram apply_move(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m) {
    switch (m.type) {
        case MoveType::T1: return move_t1(d, c, m);
        case MoveType::T2: return move_t2(d, c, m);
        case MoveType::T3: return move_t3(d, c, m);
        case MoveType::T4: return move_t4(d, c, m);
        case MoveType::Stab: return move_stab(d, c, m);
        case MoveType::Exchange: return move_exchange(d, m);
    }
    throw MoveError("unknown move");
}

ColoredDiagram apply_move(const ColoredDiagram& d, const CategoryData& c, const MoveSpec& m) {
    return to_slices(apply_move(to_levels(d), c, m));
}

CycNumber t3_ratio(const CategoryData& c, int x, int y, int z) {
    int gy = c.grade[y], gz = c.grade[z];
    int gy1 = c.gmul(c.gmul(c.ginv(gz), gy), gz);
    return c.phi2(gy1, gz, x) / c.phi2(gz, gy, x);
}

MoveSpec t4_solve(const LevelDiagram& d, const CategoryData& c, MoveSpec m) {
    T4Result r = t4_build(d, c, m, true);
    m.data.resize(r.needed, c.one());
    if (r.needed == 0) return m;
    m.data.back() = c.one();
    r = t4_build(d, c, m, false);
    CycNumber f = m.inverse ? r.rhs / r.lhs : r.lhs / r.rhs;
    bool over = m.variant <= 2;
    m.data.back() = over || r.last_sign > 0 ? f : f.inv();
    return m;
}

CycNumber random_scalar(const CategoryData& c, std::mt19937_64& rng) {
    static const long num[] = {1, 2, -1, 1, 3, -2};
    static const long den[] = {1, 1, 2, 3, 1, 5};
    int i = rng() % 6;
    return CycNumber::zeta(c.N, rng() % c.N) * CycNumber(c.N, mpq_class(num[i], den[i]));
}

LevelDiagram random_diagram(const CategoryData& c, std::uint64_t seed, int width, int depth) {
    std::mt19937_64 rng(seed);
    auto rs = [&]() { return rng() % 2 ? 1 : -1; };
    LevelDiagram d;
    for (int i = 0; i < width; ++i) d.source.push_back({(int)(rng() % c.nL()), rs()});
    BoundaryObject b = d.source;
    auto push = [&](const Levels& ls) {
        for (const auto& l : ls) {
            b = apply_level(b, l);
            d.levels.push_back(l);
        }
    };
    for (int step = 0; step < depth; ++step) {
        int r = rng() % 100;
        int w = (int)b.size();
        if (r < 20) {
            if (w >= 7) continue;
            int x = rng() % c.nL();
            push({{rng() % 2 ? cup_r(x) : cup_l(x), (int)(rng() % (w + 1))}});
        } else if (r < 45) {
            std::vector<int> caps;
            for (int i = 0; i + 1 < w; ++i)
                if (b[i].label == b[i + 1].label && b[i].sign == -b[i + 1].sign) caps.push_back(i);
            if (caps.empty()) continue;
            int i = caps[rng() % caps.size()];
            push({{b[i].sign < 0 ? cap_r(b[i].label) : cap_l(b[i].label), i}});
        } else if (r < 80) {
            if (w < 2) continue;
            int i = rng() % (w - 1);
            CrossKind k = cross_kind(b[i].sign, b[i + 1].sign, rng() % 2);
            push(expand_cross(c, k, b[i].label, b[i + 1].label, random_scalar(c, rng), i));
        } else if (r < 92) {
            int kin = std::min<int>(rng() % 3, w);
            int i = rng() % (w - kin + 1);
            BoundaryObject in(b.begin() + i, b.begin() + i + kin);
            int want = object_label(c, in);
            int kout = rng() % 3;
            if (kout == 0 && want != c.lunit()) kout = 1;
            if (w - kin + kout > 8) kout = std::min(kout, 1);
            BoundaryObject out;
            for (int j = 0; j + 1 < kout; ++j) out.push_back({(int)(rng() % c.nL()), rs()});
            if (kout > 0) {
                int rest = c.lmul(c.linv(object_label(c, out)), want);
                int s = rs();
                out.push_back({s > 0 ? rest : c.linv(rest), s});
            }
            push({{coupon(in, out, random_scalar(c, rng)), i}});
        } else {
            std::vector<int> plus;
            for (int i = 0; i < w; ++i)
                if (b[i].sign > 0) plus.push_back(i);
            if (plus.empty()) continue;
            int i = plus[rng() % plus.size()];
            push(expand_kink(c, all_kink_kinds()[rng() % 4], b[i].label, random_scalar(c, rng), i));
        }
    }
    return d;
}

bool MoveFuzzer::step(LevelDiagram& d, MoveSpec& applied) {
    for (int attempt = 0; attempt < 80; ++attempt) {
        MoveSpec m;
        LevelDiagram out;
        bool ok = false;
        try {
            if (!plan_.empty()) {
                Planned f = plan_.front();
                plan_.erase(plan_.begin());
                ok = f(d, m, out);
                if (!ok) plan_.clear();
            } else {
                ok = try_random(d, m, out);
            }
        } catch (const MoveError&) {
            plan_.clear();
            ok = false;
        }
        if (ok) {
            d = std::move(out);
            applied = m;
            return true;
        }
    }
    return false;
}

bool MoveFuzzer::try_random(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out) {
    int size = (int)d.levels.size();
    bool big = size > 160;
    int r = rng_() % 100;
    auto gap_object = [&](int& gap) {
        gap = rng_() % (size + 1);
        return boundary_at(d, gap);
    };
    if (r < 10) {
        if (big) return false;
        int gap;
        BoundaryObject b = gap_object(gap);
        std::vector<int> plus;
        for (int i = 0; i < (int)b.size(); ++i)
            if (b[i].sign > 0) plus.push_back(i);
        if (plus.empty()) return false;
        m = {MoveType::T1, false, (int)(rng_() % 4), gap, plus[rng_() % plus.size()], {random_scalar(c_, rng_)}};
        out = apply_move(d, c_, m);
        return true;
    }
    if (r < 20) return find_removal(d, MoveType::T1, m, out);
    if (r < 32) {
        if (big) return false;
        int gap;
        BoundaryObject b = gap_object(gap);
        if (b.size() < 2) return false;
        int i = rng_() % (b.size() - 1);
        CrossKind k = cross_kind(b[i].sign, b[i + 1].sign, rng_() % 2);
        int variant = (int)(std::find(all_cross_kinds().begin(), all_cross_kinds().end(), k) - all_cross_kinds().begin());
        m = {MoveType::T2, false, variant, gap, i, {random_scalar(c_, rng_)}};
        out = apply_move(d, c_, m);
        return true;
    }
    if (r < 44) return find_removal(d, MoveType::T2, m, out);
    if (r < 52) {
        if (!big) plan_t3(d);
        return false;
    }
    if (r < 58) return find_t3(d, m, out);
    if (r < 70) {
        if (!big) plan_t4(d);
        return false;
    }
    if (r < 78) return find_t4_inverse(d, m, out);
    if (r < 84) {
        if (big) return false;
        int gap;
        BoundaryObject b = gap_object(gap);
        std::vector<int> plus;
        for (int i = 0; i < (int)b.size(); ++i)
            if (b[i].sign > 0) plus.push_back(i);
        if (plus.empty()) return false;
        m = {MoveType::Stab, false, 0, gap, plus[rng_() % plus.size()], {}};
        out = apply_move(d, c_, m);
        return true;
    }
    if (r < 90) return find_removal(d, MoveType::Stab, m, out);
    if (size < 2) return false;
    m = {MoveType::Exchange, false, 0, (int)(rng_() % (size - 1)), 0, {}};
    out = apply_move(d, c_, m);
    return true;
}

bool MoveFuzzer::find_removal(const LevelDiagram& d, MoveType t, MoveSpec& m, LevelDiagram& out) {
    int n = (int)d.levels.size();
    if (n == 0) return false;
    int start = rng_() % n;
    for (int s = 0; s < n; ++s) {
        int l = (start + s) % n;
        const Level& lv = d.levels[l];
        std::vector<std::pair<int, int>> cand;  // (variant, pos)
        if (t == MoveType::T1) {
            if (lv.piece.kind == PieceKind::CupL) cand = {{0, lv.pos}, {1, lv.pos}};
            if (lv.piece.kind == PieceKind::CupR) cand = {{2, lv.pos - 1}, {3, lv.pos - 1}};
        } else if (t == MoveType::T2) {
            for (int v = 0; v < 8; ++v) {
                CrossKind k = all_cross_kinds()[v];
                PieceKind first = expand_cross(c_, k, 0, 0, c_.one(), 0)[0].piece.kind;
                if (first != lv.piece.kind) continue;
                int off = expand_cross(c_, k, 0, 0, c_.one(), 0)[0].pos;
                cand.push_back({v, lv.pos - off});
            }
        } else if (lv.piece.kind == PieceKind::Coupon) {
            cand = {{0, lv.pos}};
        }
        for (auto [v, pos] : cand) {
            MoveSpec trial{t, true, v, l, pos, {}};
            try {
                out = apply_move(d, c_, trial);
                m = trial;
                return true;
            } catch (const MoveError&) {
            } catch (const std::invalid_argument&) {
            }
        }
    }
    return false;
}

bool MoveFuzzer::find_t3(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out) {
    int n = (int)d.levels.size();
    if (n < 3) return false;
    auto bnds = boundaries(d);
    int start = rng_() % n;
    for (int s = 0; s < n; ++s) {
        int l = (start + s) % n;
        if (l + 3 > n) continue;
        const Level &a = d.levels[l], &b = d.levels[l + 1], &e = d.levels[l + 2];
        if (a.piece.kind != PieceKind::CrossP || b.piece.kind != PieceKind::CrossP || e.piece.kind != PieceKind::CrossP)
            continue;
        bool fwd = b.pos == a.pos + 1 && e.pos == a.pos;
        bool inv = b.pos == a.pos - 1 && e.pos == a.pos;
        if (!fwd && !inv) continue;
        int p = fwd ? a.pos : b.pos;
        const BoundaryObject& bo = bnds[l];
        if (p + 2 >= (int)bo.size()) continue;
        CycNumber ratio = t3_ratio(c_, bo[p].label, bo[p + 1].label, bo[p + 2].label);
        CycNumber first = random_scalar(c_, rng_);
        MoveSpec trial{MoveType::T3, inv, 0, l, p, {}};
        if (fwd) {
            // A*B = ratio*A'*B'
            trial.data = {first, a.piece.s.v * b.piece.s.v / (ratio * first)};
        } else {
            trial.data = {first, ratio * b.piece.s.v * e.piece.s.v / first};
        }
        try {
            out = apply_move(d, c_, trial);
            m = trial;
            return true;
        } catch (const MoveError&) {
        }
    }
    return false;
}

bool MoveFuzzer::find_t4_inverse(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out) {
    int n = (int)d.levels.size();
    if (n == 0) return false;
    int start = rng_() % n;
    for (int s = 0; s < n; ++s) {
        int l = (start + s) % n;
        const Level& lv = d.levels[l];
        if (lv.piece.kind != PieceKind::Coupon) continue;
        int nin = (int)lv.piece.in.size(), nout = (int)lv.piece.out.size();
        if (nin == 0) continue;
        for (int v = 1; v <= 4; ++v) {
            if (v > 2 && nout == 0) continue;
            MoveSpec trial{MoveType::T4, true, v, l, lv.pos, {}};
            for (int j = 0; j + 1 < nout + (v <= 2 ? 1 : 0); ++j) trial.data.push_back(random_scalar(c_, rng_));
            try {
                trial = t4_solve(d, c_, trial);
                out = apply_move(d, c_, trial);
                m = trial;
                return true;
            } catch (const MoveError&) {
            }
        }
    }
    return false;
}

bool MoveFuzzer::plan_t3(const LevelDiagram& d) {
    int size = (int)d.levels.size();
    int gap = rng_() % (size + 1);
    BoundaryObject b = boundary_at(d, gap);
    std::vector<int> sites;
    for (int i = 0; i + 2 < (int)b.size(); ++i)
        if (b[i].sign > 0 && b[i + 1].sign > 0 && b[i + 2].sign > 0) sites.push_back(i);
    if (sites.empty()) return false;
    int p = sites[rng_() % sites.size()];
    auto t2 = [this](int g, int pos) {
        return [this, g, pos](const LevelDiagram& dd, MoveSpec& mm, LevelDiagram& oo) {
            mm = {MoveType::T2, false, 0, g, pos, {random_scalar(c_, rng_)}};
            oo = apply_move(dd, c_, mm);
            return true;
        };
    };
    plan_.push_back(t2(gap, p));
    plan_.push_back(t2(gap + 1, p + 1));
    plan_.push_back(t2(gap + 2, p));
    plan_.push_back([this, gap, p](const LevelDiagram& dd, MoveSpec& mm, LevelDiagram& oo) {
        BoundaryObject bo = boundary_at(dd, gap);
        CycNumber ratio = t3_ratio(c_, bo[p].label, bo[p + 1].label, bo[p + 2].label);
        CycNumber a2 = random_scalar(c_, rng_);
        const CycNumber &A = dd.levels[gap].piece.s.v, &B = dd.levels[gap + 1].piece.s.v;
        mm = {MoveType::T3, false, 0, gap, p, {a2, A * B / (ratio * a2)}};
        oo = apply_move(dd, c_, mm);
        return true;
    });
    return true;
}

bool MoveFuzzer::plan_t4(const LevelDiagram& d) {
    std::vector<int> coupons;
    for (int l = 0; l < (int)d.levels.size(); ++l)
        if (d.levels[l].piece.kind == PieceKind::Coupon && d.levels[l].pos >= 1) coupons.push_back(l);
    if (coupons.empty()) return false;
    int l = coupons[rng_() % coupons.size()];
    const Level lv = d.levels[l];
    BoundaryObject b = boundary_at(d, l);
    int sZ = b[lv.pos - 1].sign;
    bool over = rng_() % 2;
    if (lv.piece.in.empty()) over = true;
    int variant = over ? (sZ > 0 ? 1 : 2) : (sZ > 0 ? 3 : 4);
    int gap = l + 1;
    for (int j = 0; j < (int)lv.piece.out.size(); ++j) {
        CrossKind k = cross_kind(sZ, lv.piece.out[j].sign, over);
        int v = (int)(std::find(all_cross_kinds().begin(), all_cross_kinds().end(), k) - all_cross_kinds().begin());
        int g = gap, pos = lv.pos - 1 + j;
        plan_.push_back([this, v, g, pos](const LevelDiagram& dd, MoveSpec& mm, LevelDiagram& oo) {
            mm = {MoveType::T2, false, v, g, pos, {random_scalar(c_, rng_)}};
            oo = apply_move(dd, c_, mm);
            return true;
        });
        gap += (int)expand_cross(c_, k, 0, 0, c_.one(), 0).size();
    }
    int nin = (int)lv.piece.in.size();
    plan_.push_back([this, l, lv, variant, nin, over](const LevelDiagram& dd, MoveSpec& mm, LevelDiagram& oo) {
        MoveSpec t{MoveType::T4, false, variant, l, lv.pos, {}};
        for (int i = 0; i + 1 < nin + (over ? 1 : 0); ++i) t.data.push_back(random_scalar(c_, rng_));
        t = t4_solve(dd, c_, t);
        oo = apply_move(dd, c_, t);
        mm = t;
        return true;
    });
    return true;
}

ColoredDiagram random_move_fuzz(const ColoredDiagram& d, const CategoryData& c, std::uint64_t seed, int steps,
                                FuzzStats* stats) {
    LevelDiagram ld = to_levels(d);
    MoveFuzzer f(c, seed);
    for (int k = 0; k < steps; ++k) {
        MoveSpec m;
        if (!f.step(ld, m)) break;
        if (stats) ++stats->counts[move_name(m)];
    }
    return to_slices(ld);
}

}  // namespace gcx

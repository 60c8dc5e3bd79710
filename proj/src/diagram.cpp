#include "gcx/diagram.hpp"

#include <sstream>
#include <stdexcept>

namespace gcx {

BoundaryObject dual_object(const BoundaryObject& b) {
    BoundaryObject r(b.rbegin(), b.rend());
    for (auto& s : r) s.sign = -s.sign;
    return r;
}

BoundaryObject concat(const BoundaryObject& a, const BoundaryObject& b) {
    BoundaryObject r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

int Piece::n_in() const { return (int)source().size(); }
int Piece::n_out() const { return (int)target().size(); }

BoundaryObject Piece::source() const {
    switch (kind) {
        case PieceKind::Id: return {{x, sign}};
        case PieceKind::CapR: return {{x, -1}, {x, 1}};
        case PieceKind::CapL: return {{x, 1}, {x, -1}};
        case PieceKind::CupR:
        case PieceKind::CupL: return {};
        case PieceKind::CrossP:
        case PieceKind::CrossN: return {{x, 1}, {y, 1}};
        case PieceKind::Coupon: return in;
    }
    return {};
}

BoundaryObject Piece::target() const {
    switch (kind) {
        case PieceKind::Id: return {{x, sign}};
        case PieceKind::CapR:
        case PieceKind::CapL: return {};
        case PieceKind::CupR: return {{x, 1}, {x, -1}};
        case PieceKind::CupL: return {{x, -1}, {x, 1}};
        case PieceKind::CrossP: return {{y, 1}, {z, 1}};
        case PieceKind::CrossN: return {{z, 1}, {x, 1}};
        case PieceKind::Coupon: return out;
    }
    return {};
}

bool Piece::operator==(const Piece& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case PieceKind::Id: return x == o.x && sign == o.sign;
        case PieceKind::CapR:
        case PieceKind::CapL:
        case PieceKind::CupR:
        case PieceKind::CupL: return x == o.x;
        case PieceKind::CrossP:
        case PieceKind::CrossN: return x == o.x && y == o.y && z == o.z && s.v == o.s.v;
        case PieceKind::Coupon: return in == o.in && out == o.out && s.v == o.s.v;
    }
    return false;
}

Piece id_piece(int x, int sign) {
    Piece p;
    p.kind = PieceKind::Id;
    p.x = x;
    p.sign = sign;
    return p;
}

static Piece arc_piece(PieceKind k, int x) {
    Piece p;
    p.kind = k;
    p.x = x;
    return p;
}

Piece cap_r(int x) { return arc_piece(PieceKind::CapR, x); }
Piece cup_r(int x) { return arc_piece(PieceKind::CupR, x); }
Piece cap_l(int x) { return arc_piece(PieceKind::CapL, x); }
Piece cup_l(int x) { return arc_piece(PieceKind::CupL, x); }

Piece cross_p(const CategoryData& c, int x, int y, const CycNumber& psi) {
    Piece p;
    p.kind = PieceKind::CrossP;
    p.x = x;
    p.y = y;
    p.z = c.act[c.grade[y]][x];
    p.s = Factor(psi);
    return p;
}

Piece cross_n(const CategoryData& c, int x, int y, const CycNumber& psi) {
    Piece p;
    p.kind = PieceKind::CrossN;
    p.x = x;
    p.y = y;
    p.z = c.act[c.ginv(c.grade[x])][y];
    p.s = Factor(psi);
    return p;
}

Piece coupon(const BoundaryObject& in, const BoundaryObject& out, const CycNumber& v) {
    Piece p;
    p.kind = PieceKind::Coupon;
    p.in = in;
    p.out = out;
    p.s = Factor(v);
    return p;
}

static BoundaryObject slice_source(const Slice& s) {
    BoundaryObject r;
    for (const auto& p : s) {
        auto b = p.source();
        r.insert(r.end(), b.begin(), b.end());
    }
    return r;
}

static BoundaryObject slice_target(const Slice& s) {
    BoundaryObject r;
    for (const auto& p : s) {
        auto b = p.target();
        r.insert(r.end(), b.begin(), b.end());
    }
    return r;
}

static int first_difference(const BoundaryObject& a, const BoundaryObject& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return (int)i;
    return (int)n;
}

BoundaryObject ColoredDiagram::target() const {
    BoundaryObject cur = source;
    for (size_t k = 0; k < slices.size(); ++k) {
        BoundaryObject src = slice_source(slices[k]);
        if (src != cur)
            throw std::invalid_argument("slice " + std::to_string(k) + " does not chain at position " +
                                        std::to_string(first_difference(src, cur)));
        cur = slice_target(slices[k]);
    }
    return cur;
}

ColoredDiagram identity_diagram(const BoundaryObject& b) { return ColoredDiagram{b, {}}; }

ColoredDiagram elementary(const CategoryData& c, const Piece& p) {
    if ((p.kind == PieceKind::CrossP || p.kind == PieceKind::CrossN || p.kind == PieceKind::Coupon) &&
        p.s.v.is_zero())
        throw std::invalid_argument("elementary: zero scalar");
    ColoredDiagram d{p.source(), {{p}}};
    AxiomReport r = validate_coloring(d, c);
    if (!r.ok()) throw std::invalid_argument("elementary: " + r.failures[0].axiom);
    return d;
}

ColoredDiagram compose(const ColoredDiagram& top, const ColoredDiagram& bottom) {
    BoundaryObject t = bottom.target();
    if (t != top.source) {
        int k = first_difference(t, top.source);
        throw std::invalid_argument("compose: boundary mismatch at position " + std::to_string(k));
    }
    ColoredDiagram r = bottom;
    r.slices.insert(r.slices.end(), top.slices.begin(), top.slices.end());
    return r;
}

static Slice id_slice(const BoundaryObject& b) {
    Slice s;
    for (const auto& st : b) s.push_back(id_piece(st.label, st.sign));
    return s;
}

ColoredDiagram tensor(const ColoredDiagram& left, const ColoredDiagram& right) {
    ColoredDiagram r;
    r.source = concat(left.source, right.source);
    size_t n = std::max(left.slices.size(), right.slices.size());
    BoundaryObject lb = left.source, rb = right.source;
    for (size_t k = 0; k < n; ++k) {
        Slice a = k < left.slices.size() ? left.slices[k] : id_slice(lb);
        Slice b = k < right.slices.size() ? right.slices[k] : id_slice(rb);
        lb = slice_target(a);
        rb = slice_target(b);
        a.insert(a.end(), b.begin(), b.end());
        r.slices.push_back(std::move(a));
    }
    return r;
}

static void validate_piece(const Piece& p, const CategoryData& c, int k, AxiomReport& r) {
    auto where = [&]() { return std::vector<std::string>{"slice " + std::to_string(k), piece_str(c, p)}; };
    auto bad = [&](int x) { return x < 0 || x >= c.nL(); };
    CycNumber zero = c.zero();
    for (const auto& s : concat(p.source(), p.target()))
        if (bad(s.label) || (s.sign != 1 && s.sign != -1)) {
            r.fail("diagram.strand", where(), zero, zero);
            return;
        }
    ++r.checked;
    switch (p.kind) {
        case PieceKind::CrossP:
            if (p.z != c.act[c.grade[p.y]][p.x]) r.fail("diagram.crossing-label", where(), zero, zero);
            if (p.s.v.is_zero()) r.fail("diagram.zero-scalar", where(), zero, zero);
            break;
        case PieceKind::CrossN:
            if (p.z != c.act[c.ginv(c.grade[p.x])][p.y]) r.fail("diagram.crossing-label", where(), zero, zero);
            if (p.s.v.is_zero()) r.fail("diagram.zero-scalar", where(), zero, zero);
            break;
        case PieceKind::Coupon: {
            int gi = c.gunit(), go = c.gunit(), li = c.lunit(), lo = c.lunit();
            for (const auto& s : p.in) {
                gi = c.gmul(gi, s.sign > 0 ? c.grade[s.label] : c.ginv(c.grade[s.label]));
                li = c.lmul(li, s.sign > 0 ? s.label : c.linv(s.label));
            }
            for (const auto& s : p.out) {
                go = c.gmul(go, s.sign > 0 ? c.grade[s.label] : c.ginv(c.grade[s.label]));
                lo = c.lmul(lo, s.sign > 0 ? s.label : c.linv(s.label));
            }
            if (gi != go)
                r.fail("diagram.coupon-grade", where(), zero, zero);
            else if (li != lo)
                r.fail("diagram.coupon-hom", where(), zero, zero);
            if (p.s.v.is_zero()) r.fail("diagram.zero-scalar", where(), zero, zero);
            break;
        }
        default: break;
    }
}

AxiomReport validate_coloring(const ColoredDiagram& d, const CategoryData& c) {
    AxiomReport r;
    BoundaryObject cur = d.source;
    for (size_t k = 0; k < d.slices.size(); ++k) {
        BoundaryObject src = slice_source(d.slices[k]);
        ++r.checked;
        if (src != cur) {
            r.fail("diagram.chain", {"slice " + std::to_string(k), "position " + std::to_string(first_difference(src, cur))},
                   c.zero(), c.zero());
            return r;
        }
        for (const auto& p : d.slices[k]) validate_piece(p, c, (int)k, r);
        cur = slice_target(d.slices[k]);
    }
    return r;
}

BoundaryObject apply_level(const BoundaryObject& b, const Level& l) {
    BoundaryObject src = l.piece.source();
    if (l.pos < 0 || l.pos + src.size() > b.size())
        throw std::invalid_argument("level out of range at position " + std::to_string(l.pos));
    for (size_t i = 0; i < src.size(); ++i)
        if (b[l.pos + i] != src[i])
            throw std::invalid_argument("level does not chain at position " + std::to_string(l.pos + i));
    BoundaryObject r(b.begin(), b.begin() + l.pos);
    BoundaryObject t = l.piece.target();
    r.insert(r.end(), t.begin(), t.end());
    r.insert(r.end(), b.begin() + l.pos + src.size(), b.end());
    return r;
}

std::vector<BoundaryObject> boundaries(const LevelDiagram& d) {
    std::vector<BoundaryObject> r{d.source};
    for (const auto& l : d.levels) r.push_back(apply_level(r.back(), l));
    return r;
}

LevelDiagram to_levels(const ColoredDiagram& d) {
    LevelDiagram r{d.source, {}};
    BoundaryObject cur = d.source;
    for (const auto& s : d.slices) {
        // pieces of a slice act on disjoint ranges; apply left to right
        int pos = 0;
        for (const auto& p : s) {
            if (p.kind == PieceKind::Id) {
                ++pos;
                continue;
            }
            Level l{p, pos};
            cur = apply_level(cur, l);
            r.levels.push_back(l);
            pos += p.n_out();
        }
    }
    return r;
}

ColoredDiagram to_slices(const LevelDiagram& d) {
    ColoredDiagram r{d.source, {}};
    BoundaryObject cur = d.source;
    for (const auto& l : d.levels) {
        BoundaryObject next = apply_level(cur, l);
        Slice s;
        for (int i = 0; i < l.pos; ++i) s.push_back(id_piece(cur[i].label, cur[i].sign));
        s.push_back(l.piece);
        for (size_t i = l.pos + l.piece.n_in(); i < cur.size(); ++i) s.push_back(id_piece(cur[i].label, cur[i].sign));
        r.slices.push_back(std::move(s));
        cur = std::move(next);
    }
    return r;
}

std::string strand_str(const CategoryData& c, const Strand& s) {
    return "(" + c.labels.names[s.label] + "," + (s.sign > 0 ? "+" : "-") + ")";
}

std::string object_str(const CategoryData& c, const BoundaryObject& b) {
    if (b.empty()) return "empty";
    std::string r;
    for (size_t i = 0; i < b.size(); ++i) r += (i ? " " : "") + strand_str(c, b[i]);
    return r;
}

static std::string tight_object(const CategoryData& c, const BoundaryObject& b) {
    std::string r;
    for (const auto& s : b) r += strand_str(c, s);
    return r;
}

std::string piece_str(const CategoryData& c, const Piece& p) {
    auto l = [&](int x) { return x >= 0 && x < c.nL() ? c.labels.names[x] : "?" + std::to_string(x); };
    switch (p.kind) {
        case PieceKind::Id: return "id(" + l(p.x) + "," + (p.sign > 0 ? "+" : "-") + ")";
        case PieceKind::CapR: return "capR(" + l(p.x) + ")";
        case PieceKind::CupR: return "cupR(" + l(p.x) + ")";
        case PieceKind::CapL: return "capL(" + l(p.x) + ")";
        case PieceKind::CupL: return "cupL(" + l(p.x) + ")";
        case PieceKind::CrossP:
        case PieceKind::CrossN:
            return std::string(p.kind == PieceKind::CrossP ? "crossP(" : "crossN(") + l(p.x) + "," + l(p.y) + "," +
                   l(p.z) + ";psi=" + p.s.v.str() + ")";
        case PieceKind::Coupon:
            return "coupon(in=" + tight_object(c, p.in) + ";out=" + tight_object(c, p.out) + ";v=" + p.s.v.str() + ")";
    }
    return "";
}

std::string print_diagram(const ColoredDiagram& d, const CategoryData& c) {
    std::ostringstream os;
    os << "source " << object_str(c, d.source) << "\n";
    for (const auto& s : d.slices) {
        os << "slice";
        for (const auto& p : s) os << " " << piece_str(c, p);
        os << "\n";
    }
    os << "target " << object_str(c, d.target()) << "\n";
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// splits on whitespace outside parentheses
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> r;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
        if ((ch == ' ' || ch == '\t') && depth == 0) {
            if (!cur.empty()) r.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
    if (!cur.empty()) r.push_back(cur);
    return r;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> r;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            r.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    r.push_back(trim(cur));
    return r;
}

Strand parse_strand(const std::string& tok, const CategoryData& c) {
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
        throw std::invalid_argument("bad strand '" + tok + "'");
    auto parts = split_on(tok.substr(1, tok.size() - 2), ',');
    if (parts.size() != 2 || (parts[1] != "+" && parts[1] != "-"))
        throw std::invalid_argument("bad strand '" + tok + "'");
    return Strand{c.labels.index(parts[0]), parts[1] == "+" ? 1 : -1};
}

BoundaryObject parse_object(const std::string& text, const CategoryData& c) {
    std::string t = trim(text);
    if (t == "empty" || t.empty()) return {};
    BoundaryObject r;
    size_t i = 0;
    while (i < t.size()) {
        if (t[i] == ' ') {
            ++i;
            continue;
        }
        size_t j = t.find(')', i);
        if (t[i] != '(' || j == std::string::npos) throw std::invalid_argument("bad object '" + t + "'");
        r.push_back(parse_strand(t.substr(i, j - i + 1), c));
        i = j + 1;
    }
    return r;
}

std::string keyed(const std::string& part, const std::string& key) {
    if (part.compare(0, key.size() + 1, key + "=") != 0)
        throw std::invalid_argument("expected '" + key + "=' in '" + part + "'");
    return part.substr(key.size() + 1);
}

Piece parse_piece(const std::string& tok, const CategoryData& c) {
    size_t lp = tok.find('(');
    if (lp == std::string::npos || tok.back() != ')') throw std::invalid_argument("bad piece '" + tok + "'");
    std::string name = tok.substr(0, lp);
    std::string body = tok.substr(lp + 1, tok.size() - lp - 2);
    auto label = [&](const std::string& s) { return c.labels.index(trim(s)); };
    if (name == "id") {
        Strand s = parse_strand("(" + body + ")", c);
        return id_piece(s.label, s.sign);
    }
    if (name == "capR") return cap_r(label(body));
    if (name == "cupR") return cup_r(label(body));
    if (name == "capL") return cap_l(label(body));
    if (name == "cupL") return cup_l(label(body));
    if (name == "crossP" || name == "crossN") {
        auto parts = split_on(body, ';');
        if (parts.size() != 2) throw std::invalid_argument("bad crossing '" + tok + "'");
        auto labs = split_on(parts[0], ',');
        if (labs.size() != 2 && labs.size() != 3) throw std::invalid_argument("bad crossing '" + tok + "'");
        CycNumber psi = CycNumber::parse(keyed(parts[1], "psi"), c.N);
        Piece p = name == "crossP" ? cross_p(c, label(labs[0]), label(labs[1]), psi)
                                   : cross_n(c, label(labs[0]), label(labs[1]), psi);
        if (labs.size() == 3) p.z = label(labs[2]);
        return p;
    }
    if (name == "coupon") {
        auto parts = split_on(body, ';');
        if (parts.size() != 3) throw std::invalid_argument("bad coupon '" + tok + "'");
        return coupon(parse_object(keyed(parts[0], "in"), c), parse_object(keyed(parts[1], "out"), c),
                      CycNumber::parse(keyed(parts[2], "v"), c.N));
    }
    throw std::invalid_argument("unknown piece '" + name + "'");
}

}  // namespace

ColoredDiagram parse_diagram(const std::string& text, const CategoryData& c) {
    ColoredDiagram d;
    bool have_source = false, have_target = false;
    BoundaryObject target;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            auto sp = line.find(' ');
            std::string head = line.substr(0, sp);
            std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
            if (head == "source") {
                if (have_source || !d.slices.empty()) throw std::invalid_argument("duplicate source");
                d.source = parse_object(rest, c);
                have_source = true;
            } else if (head == "slice") {
                if (!have_source || have_target) throw std::invalid_argument("slice outside source/target");
                Slice s;
                for (const auto& tok : split_top(rest)) s.push_back(parse_piece(tok, c));
                d.slices.push_back(std::move(s));
            } else if (head == "target") {
                if (!have_source || have_target) throw std::invalid_argument("misplaced target");
                target = parse_object(rest, c);
                have_target = true;
            } else {
                throw std::invalid_argument("unknown directive '" + head + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_source) throw std::invalid_argument("missing source line");
    BoundaryObject t = d.target();
    if (have_target && t != target)
        throw std::invalid_argument("declared target differs at position " + std::to_string(first_difference(t, target)));
    return d;
}

}  // namespace gcx

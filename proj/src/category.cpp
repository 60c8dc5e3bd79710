#include "gcx/category.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcx {

int GroupTable::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    throw std::runtime_error("unknown element '" + name + "'");
}

bool GroupTable::abelian() const {
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

void GroupTable::finish(const std::string& what) {
    int n = size();
    if (n == 0) throw std::runtime_error(what + ": empty group");
    if ((int)table.size() != n) throw std::runtime_error(what + ": table has wrong number of rows");
    for (const auto& r : table)
        if ((int)r.size() != n) throw std::runtime_error(what + ": table row has wrong length");
    unit = -1;
    for (int e = 0; e < n && unit < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) unit = e;
    }
    if (unit < 0) throw std::runtime_error(what + ": no unit element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::runtime_error(what + ": not associative at (" + names[a] + "," + names[b] + "," +
                                             names[c] + ")");
    inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == unit && mul(b, a) == unit) inverse[a] = b;
    for (int a = 0; a < n; ++a)
        if (inverse[a] < 0) throw std::runtime_error(what + ": element '" + names[a] + "' has no inverse");
}

void CategoryData::allocate() {
    int g = nG(), l = nL();
    grade.assign(l, group.unit);
    dim.assign(l, one());
    act.assign(g, std::vector<int>(l));
    for (int a = 0; a < g; ++a)
        for (int x = 0; x < l; ++x) act[a][x] = x;
    phiA2_.assign((size_t)g * l * l, one());
    phiA0_.assign(g, one());
    phi2_.assign((size_t)g * g * l, one());
    phi0_.assign(l, one());
    braid_.assign((size_t)l * l, one());
    rankD = one();
}

CycNumber CategoryData::phiL(int a, int x) const { return phiA2(a, linv(x), x) / phiA0(a); }

CycNumber CategoryData::phiR(int a, int x) const {
    return dim[x] * phiA2(a, x, linv(x)) * dim[act[a][x]] / phiA0(a);
}

CycNumber CategoryData::twist(int x) const { return dim[x] * braid(x, x); }

CycNumber CategoryData::braid_inv(int x, int y) const {
    int b = grade[y];
    return phi2(ginv(b), b, x) * braid(act[b][x], linv(y)) / phi0(x);
}

CycNumber CategoryData::braid_inv_second(int x, int y) const { return braid(linv(x), y) * phiL(grade[y], x); }

CycNumber CategoryData::twist_inverse(int x) const {
    int a = grade[x];
    int w = act[a][x];
    return dim[w] * braid_inv(x, w);
}

CycNumber CategoryData::neutral_twist(int x) const { return twist(x) / phi0(x); }

CycNumber CategoryData::neutral_braid(int x, int y) const { return braid(x, y) / phi0(x); }

CycNumber CategoryData::psi_bar(const CycNumber& s, int a, int y) const {
    return phi0(y) / (s * phi2(ginv(a), a, y));
}

CycNumber CategoryData::psi_minus(const CycNumber& s, int a, int y) const { return (s * phiL(a, y)).inv(); }

std::vector<int> CategoryData::kernel_labels() const { return labels_of_grade(gunit()); }

std::vector<int> CategoryData::labels_of_grade(int g) const {
    std::vector<int> r;
    for (int x = 0; x < nL(); ++x)
        if (grade[x] == g) r.push_back(x);
    return r;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> r;
    std::string w;
    while (is >> w) r.push_back(w);
    return r;
}

struct Line {
    int no;
    std::string text;
};

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(l.no) + ": " + msg);
}

// "lhs = rhs" split
std::pair<std::string, std::string> split_eq(const Line& l) {
    size_t p = l.text.find('=');
    if (p == std::string::npos) fail(l, "expected '='");
    return {trim(l.text.substr(0, p)), trim(l.text.substr(p + 1))};
}

void parse_group(const std::vector<Line>& lines, GroupTable& g, const std::string& what) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (const auto& l : lines) {
        auto [k, v] = split_eq(l);
        auto kw = words(k);
        if (kw.size() == 1 && kw[0] == "elements") {
            g.names = words(v);
            std::set<std::string> seen(g.names.begin(), g.names.end());
            if (seen.size() != g.names.size()) fail(l, what + ": duplicate element name");
        } else if (kw.size() == 2 && kw[0] == "row") {
            rows.push_back({kw[1], words(v)});
        } else {
            fail(l, what + ": expected 'elements = ...' or 'row <x> = ...'");
        }
    }
    if (g.names.empty()) throw std::runtime_error(what + ": missing 'elements'");
    int n = g.size();
    g.table.assign(n, std::vector<int>(n, -1));
    std::vector<bool> have(n, false);
    for (const auto& [a, r] : rows) {
        int ai = g.index(a);
        if ((int)r.size() != n) throw std::runtime_error(what + ": row '" + a + "' has wrong length");
        for (int b = 0; b < n; ++b) g.table[ai][b] = g.index(r[b]);
        have[ai] = true;
    }
    for (int a = 0; a < n; ++a)
        if (!have[a]) throw std::runtime_error(what + ": missing row for '" + g.names[a] + "'");
    g.finish(what);
}

}  // namespace

CategoryData load_category_text(const std::string& text, const LoadOptions& opt) {
    std::map<std::string, std::vector<Line>> sec;
    std::map<std::string, std::string> header;
    std::string cur;
    std::istringstream is(text);
    std::string raw;
    int no = 0;
    const std::set<std::string> known = {"group", "labels", "grade", "dim", "crossing", "braiding", "rank", "scalars"};
    while (std::getline(is, raw)) {
        ++no;
        size_t hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            size_t close = s.find(']');
            if (close == std::string::npos) throw std::runtime_error("line " + std::to_string(no) + ": bad section header");
            cur = trim(s.substr(1, close - 1));
            if (!known.count(cur)) throw std::runtime_error("line " + std::to_string(no) + ": unknown section [" + cur + "]");
            if (header.count(cur)) throw std::runtime_error("line " + std::to_string(no) + ": duplicate section [" + cur + "]");
            header[cur] = trim(s.substr(close + 1));
            sec[cur];
            continue;
        }
        if (cur.empty()) throw std::runtime_error("line " + std::to_string(no) + ": text outside a section");
        sec[cur].push_back({no, s});
    }
    for (const char* req : {"group", "labels", "scalars"})
        if (!header.count(req)) throw std::runtime_error(std::string("missing section [") + req + "]");

    CategoryData c;
    {
        std::string h = header["scalars"];
        std::vector<Line> ls = sec["scalars"];
        if (!h.empty()) ls.insert(ls.begin(), Line{0, h});
        bool found = false;
        for (const auto& l : ls) {
            auto [k, v] = split_eq(l);
            if (k == "root_order") {
                try {
                    c.N = std::stoi(v);
                } catch (...) {
                    fail(l, "bad root_order");
                }
                if (c.N < 1) fail(l, "root_order must be positive");
                found = true;
            } else if (k == "name") {
                c.name = v;
            } else {
                fail(l, "unknown key '" + k + "' in [scalars]");
            }
        }
        if (!found) throw std::runtime_error("[scalars]: missing root_order");
    }
    parse_group(sec["group"], c.group, "[group]");
    parse_group(sec["labels"], c.labels, "[labels]");
    c.allocate();

    auto scalar = [&](const Line& l, const std::string& v) {
        try {
            return CycNumber::parse(v, c.N);
        } catch (const std::exception& e) {
            fail(l, e.what());
        }
    };
    auto G = [&](const Line& l, const std::string& s) {
        try {
            return c.group.index(s);
        } catch (const std::exception& e) {
            fail(l, e.what());
        }
    };
    auto L = [&](const Line& l, const std::string& s) {
        try {
            return c.labels.index(s);
        } catch (const std::exception& e) {
            fail(l, e.what());
        }
    };

    std::vector<bool> graded(c.nL(), false);
    for (const auto& l : sec["grade"]) {
        auto [k, v] = split_eq(l);
        int x = L(l, k);
        c.grade[x] = G(l, v);
        graded[x] = true;
    }
    if (c.nG() > 1)
        for (int x = 0; x < c.nL(); ++x)
            if (!graded[x]) throw std::runtime_error("[grade]: missing grade for label '" + c.labels.names[x] + "'");
    for (const auto& l : sec["dim"]) {
        auto [k, v] = split_eq(l);
        c.dim[L(l, k)] = scalar(l, v);
    }
    for (const auto& l : sec["crossing"]) {
        auto [k, v] = split_eq(l);
        auto kw = words(k);
        if (kw.empty()) fail(l, "empty key");
        const std::string& t = kw[0];
        if (t == "act" && kw.size() == 3) {
            c.act[G(l, kw[1])][L(l, kw[2])] = L(l, v);
        } else if (t == "phiA2" && kw.size() == 4) {
            c.phiA2_ref(G(l, kw[1]), L(l, kw[2]), L(l, kw[3])) = scalar(l, v);
        } else if (t == "phiA0" && kw.size() == 2) {
            c.phiA0_[G(l, kw[1])] = scalar(l, v);
        } else if (t == "phi2" && kw.size() == 4) {
            c.phi2_ref(G(l, kw[1]), G(l, kw[2]), L(l, kw[3])) = scalar(l, v);
        } else if (t == "phi0" && kw.size() == 2) {
            c.phi0_[L(l, kw[1])] = scalar(l, v);
        } else {
            fail(l, "unknown [crossing] entry '" + k + "'");
        }
    }
    for (const auto& l : sec["braiding"]) {
        auto [k, v] = split_eq(l);
        auto kw = words(k);
        if (kw.size() != 2) fail(l, "expected '<x> <y> = scalar'");
        c.braid_ref(L(l, kw[0]), L(l, kw[1])) = scalar(l, v);
    }
    for (const auto& l : sec["rank"]) {
        auto [k, v] = split_eq(l);
        if (k != "D") fail(l, "expected 'D = scalar'");
        c.rankD = scalar(l, v);
        c.has_rank = true;
    }
    verify_structure(c, opt);
    return c;
}

CategoryData load_category(const std::string& path, const LoadOptions& opt) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_category_text(ss.str(), opt);
}

void verify_structure(const CategoryData& c, const LoadOptions& opt) {
    const auto& gn = c.group.names;
    const auto& ln = c.labels.names;
    for (int x = 0; x < c.nL(); ++x)
        for (int y = 0; y < c.nL(); ++y)
            if (c.grade[c.lmul(x, y)] != c.gmul(c.grade[x], c.grade[y]))
                throw std::runtime_error("grade is not a homomorphism at (" + ln[x] + "," + ln[y] + ")");
    std::vector<bool> hit(c.nG(), false);
    for (int x = 0; x < c.nL(); ++x) hit[c.grade[x]] = true;
    for (int a = 0; a < c.nG(); ++a)
        if (!hit[a]) throw std::runtime_error("grade is not surjective: no label of grade '" + gn[a] + "'");
    for (int a = 0; a < c.nG(); ++a) {
        std::vector<bool> img(c.nL(), false);
        for (int x = 0; x < c.nL(); ++x) {
            int y = c.act[a][x];
            img[y] = true;
            int want = c.gmul(c.gmul(c.ginv(a), c.grade[x]), a);
            if (c.grade[y] != want)
                throw std::runtime_error("crossing action breaks grading at (" + gn[a] + "," + ln[x] + ")");
            for (int z = 0; z < c.nL(); ++z)
                if (c.act[a][c.lmul(x, z)] != c.lmul(y, c.act[a][z]))
                    throw std::runtime_error("crossing action is not a homomorphism at (" + gn[a] + "," + ln[x] + "," +
                                             ln[z] + ")");
        }
        for (int y = 0; y < c.nL(); ++y)
            if (!img[y]) throw std::runtime_error("crossing action is not bijective for '" + gn[a] + "'");
    }
    for (int x = 0; x < c.nL(); ++x)
        if (c.act[c.gunit()][x] != x) throw std::runtime_error("unit of G acts nontrivially on '" + ln[x] + "'");
    for (int a = 0; a < c.nG(); ++a)
        for (int b = 0; b < c.nG(); ++b)
            for (int x = 0; x < c.nL(); ++x)
                if (c.act[a][c.act[b][x]] != c.act[c.gmul(b, a)][x])
                    throw std::runtime_error("crossing action is not compatible with composition at (" + gn[a] + "," +
                                             gn[b] + "," + ln[x] + ")");
    for (int x = 0; x < c.nL(); ++x)
        for (int y = 0; y < c.nL(); ++y)
            if (c.lmul(x, y) != c.lmul(y, c.act[c.grade[y]][x]))
                throw std::runtime_error("braiding label constraint fails at (" + ln[x] + "," + ln[y] + ")");
    auto nz = [&](const CycNumber& v, const std::string& what) {
        if (v.is_zero()) throw std::runtime_error("zero structure scalar " + what);
    };
    for (int x = 0; x < c.nL(); ++x) {
        nz(c.dim[x], "dim " + ln[x]);
        nz(c.phi0(x), "phi0 " + ln[x]);
        for (int y = 0; y < c.nL(); ++y) nz(c.braid(x, y), "braid " + ln[x] + " " + ln[y]);
    }
    for (int a = 0; a < c.nG(); ++a) {
        nz(c.phiA0(a), "phiA0 " + gn[a]);
        for (int x = 0; x < c.nL(); ++x) {
            for (int y = 0; y < c.nL(); ++y) nz(c.phiA2(a, x, y), "phiA2 " + gn[a] + " " + ln[x] + " " + ln[y]);
            for (int b = 0; b < c.nG(); ++b) nz(c.phi2(a, b, x), "phi2 " + gn[a] + " " + gn[b] + " " + ln[x]);
        }
    }
    if (opt.verify_rank) {
        if (!c.has_rank) throw std::runtime_error("missing [rank] section");
        CycNumber d = c.zero();
        for (int x : c.kernel_labels()) d += c.dim[x] * c.dim[x];
        if (c.rankD * c.rankD != d)
            throw std::runtime_error("rank mismatch: D^2 = " + (c.rankD * c.rankD).str() + " but dim(C_1) = " + d.str());
    }
}

std::string write_category(const CategoryData& c) {
    std::ostringstream os;
    const auto& gn = c.group.names;
    const auto& ln = c.labels.names;
    os << "[scalars]\nroot_order = " << c.N << "\n";
    if (!c.name.empty()) os << "name = " << c.name << "\n";
    auto table = [&](const GroupTable& g, const char* title) {
        os << "\n[" << title << "]\nelements =";
        for (const auto& n : g.names) os << " " << n;
        os << "\n";
        for (int a = 0; a < g.size(); ++a) {
            os << "row " << g.names[a] << " =";
            for (int b = 0; b < g.size(); ++b) os << " " << g.names[g.mul(a, b)];
            os << "\n";
        }
    };
    table(c.group, "group");
    table(c.labels, "labels");
    os << "\n[grade]\n";
    for (int x = 0; x < c.nL(); ++x) os << ln[x] << " = " << gn[c.grade[x]] << "\n";
    os << "\n[dim]\n";
    for (int x = 0; x < c.nL(); ++x) os << ln[x] << " = " << c.dim[x].str() << "\n";
    os << "\n[crossing]\n";
    for (int a = 0; a < c.nG(); ++a)
        for (int x = 0; x < c.nL(); ++x)
            if (c.act[a][x] != x) os << "act " << gn[a] << " " << ln[x] << " = " << ln[c.act[a][x]] << "\n";
    for (int a = 0; a < c.nG(); ++a)
        if (!c.phiA0(a).is_one()) os << "phiA0 " << gn[a] << " = " << c.phiA0(a).str() << "\n";
    for (int a = 0; a < c.nG(); ++a)
        for (int x = 0; x < c.nL(); ++x)
            for (int y = 0; y < c.nL(); ++y)
                if (!c.phiA2(a, x, y).is_one())
                    os << "phiA2 " << gn[a] << " " << ln[x] << " " << ln[y] << " = " << c.phiA2(a, x, y).str() << "\n";
    for (int a = 0; a < c.nG(); ++a)
        for (int b = 0; b < c.nG(); ++b)
            for (int x = 0; x < c.nL(); ++x)
                if (!c.phi2(a, b, x).is_one())
                    os << "phi2 " << gn[a] << " " << gn[b] << " " << ln[x] << " = " << c.phi2(a, b, x).str() << "\n";
    for (int x = 0; x < c.nL(); ++x)
        if (!c.phi0(x).is_one()) os << "phi0 " << ln[x] << " = " << c.phi0(x).str() << "\n";
    os << "\n[braiding]\n";
    for (int x = 0; x < c.nL(); ++x)
        for (int y = 0; y < c.nL(); ++y)
            if (!c.braid(x, y).is_one()) os << ln[x] << " " << ln[y] << " = " << c.braid(x, y).str() << "\n";
    if (c.has_rank) os << "\n[rank]\nD = " << c.rankD.str() << "\n";
    return os.str();
}

CategoryData gauge_transform(const CategoryData& c, const std::function<CycNumber(int, int)>& eta) {
    CategoryData r = c;
    int g = c.nG(), l = c.nL();
    std::vector<CycNumber> e((size_t)g * l);
    for (int a = 0; a < g; ++a)
        for (int x = 0; x < l; ++x) {
            e[a * l + x] = eta(a, x);
            if (e[a * l + x].is_zero()) throw std::invalid_argument("gauge value must be nonzero");
        }
    auto E = [&](int a, int x) -> const CycNumber& { return e[a * l + x]; };
    for (int a = 0; a < g; ++a) {
        r.phiA0_[a] = c.phiA0(a) / E(a, c.lunit());
        for (int x = 0; x < l; ++x)
            for (int y = 0; y < l; ++y)
                r.phiA2_ref(a, x, y) = c.phiA2(a, x, y) * E(a, x) * E(a, y) / E(a, c.lmul(x, y));
        for (int b = 0; b < g; ++b)
            for (int x = 0; x < l; ++x)
                r.phi2_ref(a, b, x) = c.phi2(a, b, x) * E(b, x) * E(a, c.act[b][x]) / E(c.gmul(b, a), x);
    }
    for (int x = 0; x < l; ++x) {
        r.phi0_[x] = c.phi0(x) / E(c.gunit(), x);
        for (int y = 0; y < l; ++y) r.braid_ref(x, y) = c.braid(x, y) / E(c.grade[y], x);
    }
    return r;
}

}  // namespace gcx

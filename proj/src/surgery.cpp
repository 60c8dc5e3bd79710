#include "gcx/surgery.hpp"

#include "gcx/crossings.hpp"
#include "gcx/evaluator.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace gcx {

bool GLevel::operator==(const GLevel& o) const {
    if (kind != o.kind || pos != o.pos) return false;
    switch (kind) {
        case GLevelKind::Cup: return sign == o.sign && comp == o.comp && arc == o.arc;
        case GLevelKind::Cap: return true;
        case GLevelKind::Cross: return a_over == o.a_over && arc == o.arc;
    }
    return true;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

int gpow(const CategoryData& c, int h, int e) { return e > 0 ? h : c.ginv(h); }

std::string lvl(int l) { return "level " + std::to_string(l); }

}  // namespace

LinkGraph link_graph(const GLink& l) {
    LinkGraph G;
    int L = (int)l.levels.size();
    G.at.resize(L + 1);
    G.eps.assign(L, 0);
    G.over_arc.assign(L, -1);
    G.cross_comps.assign(L, {-1, -1});
    std::vector<int> up, down, up_under, down_under;
    auto add = [&](int gap, int pos, int sign) {
        G.nodes.push_back({gap, pos, sign});
        up.push_back(-1);
        down.push_back(-1);
        up_under.push_back(-1);
        down_under.push_back(-1);
        return (int)G.nodes.size() - 1;
    };
    std::vector<std::pair<int, int>> over_nodes(L, {-1, -1});
    for (int li = 0; li < L; ++li) {
        const GLevel& lv = l.levels[li];
        const std::vector<int> cur = G.at[li];
        int w = (int)cur.size(), p = lv.pos;
        auto sg = [&](int q) { return G.nodes[cur[q]].sign; };
        std::vector<int> from, signs;
        switch (lv.kind) {
            case GLevelKind::Cup:
                if (p < 0 || p > w) throw LinkError(lvl(li) + ": cup position out of range");
                if (lv.sign != 1 && lv.sign != -1) throw LinkError(lvl(li) + ": bad cup sign");
                for (int q = 0; q < p; ++q) from.push_back(q);
                from.push_back(-1);
                from.push_back(-1);
                for (int q = p; q < w; ++q) from.push_back(q);
                break;
            case GLevelKind::Cap:
                if (p < 0 || p + 1 >= w) throw LinkError(lvl(li) + ": cap position out of range");
                if (sg(p) != -sg(p + 1)) throw LinkError(lvl(li) + ": cap joins strands of equal sign");
                for (int q = 0; q < w; ++q)
                    if (q != p && q != p + 1) from.push_back(q);
                break;
            case GLevelKind::Cross:
                if (p < 0 || p + 1 >= w) throw LinkError(lvl(li) + ": crossing position out of range");
                for (int q = 0; q < w; ++q) from.push_back(q == p ? p + 1 : q == p + 1 ? p : q);
                G.eps[li] = cross_sign(cross_kind(sg(p), sg(p + 1), lv.a_over));
                over_nodes[li] = {cur[lv.a_over ? p : p + 1], cur[lv.a_over ? p + 1 : p]};
                break;
        }
        std::vector<int> nxt;
        for (size_t j = 0; j < from.size(); ++j) {
            int s = from[j] >= 0 ? sg(from[j]) : ((int)j == p ? lv.sign : -lv.sign);
            nxt.push_back(add(li + 1, (int)j, s));
        }
        for (size_t j = 0; j < from.size(); ++j) {
            if (from[j] < 0) continue;
            int lo = cur[from[j]], hi = nxt[j];
            int und = -1;
            if (lv.kind == GLevelKind::Cross && ((from[j] == p && !lv.a_over) || (from[j] == p + 1 && lv.a_over)))
                und = li;
            up[lo] = hi;
            up_under[lo] = und;
            down[hi] = lo;
            down_under[hi] = und;
        }
        if (lv.kind == GLevelKind::Cup) {
            down[nxt[p]] = nxt[p + 1];
            down[nxt[p + 1]] = nxt[p];
        }
        if (lv.kind == GLevelKind::Cap) {
            up[cur[p]] = cur[p + 1];
            up[cur[p + 1]] = cur[p];
        }
        G.at[li + 1] = nxt;
    }
    if (!G.at[L].empty()) throw LinkError("dangling strand at the top of the link");
    int n = (int)G.nodes.size();
    UnionFind arcs(n), comps(n);
    for (int i = 0; i < n; ++i) {
        LinkNode& nd = G.nodes[i];
        nd.next = nd.sign > 0 ? down[i] : up[i];
        nd.under = nd.sign > 0 ? down_under[i] : up_under[i];
        if (nd.next < 0) throw LinkError("open strand");
        comps.unite(i, nd.next);
        if (nd.under < 0) arcs.unite(i, nd.next);
    }
    std::map<int, int> arc_id, comp_id;
    for (int i = 0; i < n; ++i) {
        int a = arcs.find(i), c = comps.find(i);
        if (!arc_id.count(a)) arc_id[a] = (int)arc_id.size();
        if (!comp_id.count(c)) comp_id[c] = (int)comp_id.size();
        G.nodes[i].arc = arc_id[a];
        G.nodes[i].comp = comp_id[c];
    }
    G.narc = (int)arc_id.size();
    G.ncomp = (int)comp_id.size();
    for (int li = 0; li < L; ++li) {
        if (l.levels[li].kind != GLevelKind::Cross) continue;
        G.over_arc[li] = G.nodes[over_nodes[li].first].arc;
        int p = l.levels[li].pos;
        G.cross_comps[li] = {G.nodes[G.at[li][p]].comp, G.nodes[G.at[li][p + 1]].comp};
    }
    return G;
}

namespace {

// writes the canonical component and arc numbers into the levels
GLink relabel(GLink l, const LinkGraph& G, const std::vector<int>& arc_value) {
    for (size_t li = 0; li < l.levels.size(); ++li) {
        GLevel& lv = l.levels[li];
        lv.comp = lv.arc = 0;
        if (lv.kind == GLevelKind::Cup) {
            const LinkNode& nd = G.nodes[G.at[li + 1][lv.pos]];
            lv.comp = nd.comp;
            lv.arc = nd.arc;
        } else if (lv.kind == GLevelKind::Cross) {
            const LinkNode& nd = G.nodes[G.at[li + 1][lv.a_over ? lv.pos : lv.pos + 1]];
            lv.comp = nd.comp;
            lv.arc = nd.arc;
        }
    }
    l.arc_g.clear();
    for (int a = 0; a < G.narc; ++a) l.arc_g[a] = arc_value[a];
    return l;
}

struct Passage {
    int from, to, over, eps;
};

std::vector<Passage> passages(const LinkGraph& G) {
    std::vector<Passage> r;
    for (const auto& nd : G.nodes)
        if (nd.under >= 0) r.push_back({nd.arc, G.nodes[nd.next].arc, G.over_arc[nd.under], G.eps[nd.under]});
    return r;
}

int first_node(const LinkGraph& G, int comp) {
    for (size_t i = 0; i < G.nodes.size(); ++i)
        if (G.nodes[i].comp == comp) return (int)i;
    return -1;
}

int longitude(const CategoryData& c, const LinkGraph& G, const std::vector<int>& v, int comp) {
    int s = first_node(G, comp), cur = s, W = c.gunit();
    do {
        const LinkNode& nd = G.nodes[cur];
        if (nd.under >= 0) W = c.gmul(W, gpow(c, v[G.over_arc[nd.under]], -G.eps[nd.under]));
        cur = nd.next;
    } while (cur != s);
    return W;
}

bool propagate(const CategoryData& c, const std::vector<Passage>& ps, std::vector<int>& v) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : ps) {
            int h = v[p.over];
            if (h < 0) continue;
            int he = gpow(c, h, p.eps), hi = c.ginv(he);
            if (v[p.from] >= 0) {
                int want = c.gmul(c.gmul(he, v[p.from]), hi);
                if (v[p.to] < 0) {
                    v[p.to] = want;
                    changed = true;
                } else if (v[p.to] != want) {
                    return false;
                }
            } else if (v[p.to] >= 0) {
                v[p.from] = c.gmul(c.gmul(hi, v[p.to]), he);
                changed = true;
            }
        }
    }
    return true;
}

std::optional<std::vector<int>> solve_flat(const CategoryData& c, const LinkGraph& G, const std::vector<Passage>& ps,
                                           std::vector<int> v, std::mt19937_64* rng, long& budget) {
    if (--budget < 0) return std::nullopt;
    if (!propagate(c, ps, v)) return std::nullopt;
    auto it = std::find(v.begin(), v.end(), -1);
    if (it == v.end()) {
        for (int r = 0; r < G.ncomp; ++r)
            if (longitude(c, G, v, r) != c.gunit()) return std::nullopt;
        return v;
    }
    int u = (int)(it - v.begin());
    std::vector<int> cand(c.nG());
    std::iota(cand.begin(), cand.end(), 0);
    if (rng) std::shuffle(cand.begin(), cand.end(), *rng);
    for (int h : cand) {
        v[u] = h;
        auto r = solve_flat(c, G, ps, v, rng, budget);
        if (r) return r;
    }
    return std::nullopt;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> r;
    std::string t;
    while (is >> t) r.push_back(t);
    return r;
}

}  // namespace

GLink make_link(std::vector<GLevel> levels, const std::vector<int>& arc_g) {
    GLink l{std::move(levels), {}};
    LinkGraph G = link_graph(l);
    if ((int)arc_g.size() != G.narc)
        throw LinkError("link has " + std::to_string(G.narc) + " arcs, " + std::to_string(arc_g.size()) + " given");
    return relabel(l, G, arc_g);
}

std::optional<GLink> with_flat_structure(std::vector<GLevel> levels, const CategoryData& c,
                                         const std::map<int, int>& fixed) {
    GLink l{std::move(levels), {}};
    LinkGraph G = link_graph(l);
    std::vector<int> v(G.narc, -1);
    for (const auto& [a, g] : fixed) {
        if (a < 0 || a >= G.narc || g < 0 || g >= c.nG()) throw LinkError("bad fixed arc value");
        v[a] = g;
    }
    long budget = 200000;
    auto sol = solve_flat(c, G, passages(G), v, nullptr, budget);
    if (!sol) return std::nullopt;
    return relabel(l, G, *sol);
}

GLink parse_link(const std::string& text, const CategoryData& c) {
    struct Tag {
        int sign, comp, arc;
    };
    GLink l;
    std::vector<Tag> st;
    std::vector<std::vector<Tag>> tags{st};
    std::map<int, int> doc_g;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    auto err = [&](const std::string& m) { return LinkError("line " + std::to_string(ln) + ": " + m); };
    while (std::getline(is, line)) {
        ++ln;
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok.size() < 2) throw err("missing position");
        GLevel lv;
        try {
            size_t used = 0;
            lv.pos = std::stoi(tok[1], &used);
            if (used != tok[1].size()) throw err("bad position '" + tok[1] + "'");
        } catch (const std::logic_error&) {
            throw err("bad position '" + tok[1] + "'");
        }
        std::map<std::string, std::string> kv;
        size_t first_kv = 2;
        if (tok[0] == "cup") {
            if (tok.size() < 3 || (tok[2] != "+" && tok[2] != "-")) throw err("cup needs a sign");
            lv.kind = GLevelKind::Cup;
            lv.sign = tok[2] == "+" ? 1 : -1;
            first_kv = 3;
        } else if (tok[0] == "cap") {
            lv.kind = GLevelKind::Cap;
        } else if (tok[0] == "cross") {
            lv.kind = GLevelKind::Cross;
        } else {
            throw err("unknown level '" + tok[0] + "'");
        }
        for (size_t i = first_kv; i < tok.size(); ++i) {
            auto e = tok[i].find('=');
            if (e == std::string::npos) throw err("expected key=value, got '" + tok[i] + "'");
            kv[tok[i].substr(0, e)] = tok[i].substr(e + 1);
        }
        auto int_key = [&](const std::string& k) {
            if (!kv.count(k)) throw err("missing " + k + "=");
            try {
                return std::stoi(kv[k]);
            } catch (const std::logic_error&) {
                throw err("bad " + k + "= value");
            }
        };
        auto take_g = [&](int arc) {
            if (!kv.count("g")) return;
            int g;
            try {
                g = c.group.index(kv["g"]);
            } catch (const std::runtime_error&) {
                throw err("unknown group element '" + kv["g"] + "'");
            }
            if (doc_g.count(arc) && doc_g[arc] != g) throw err("arc " + std::to_string(arc) + " has two g values");
            doc_g[arc] = g;
        };
        int w = (int)st.size(), p = lv.pos;
        switch (lv.kind) {
            case GLevelKind::Cup: {
                if (p < 0 || p > w) throw err("cup position out of range");
                lv.comp = int_key("comp");
                lv.arc = int_key("arc");
                take_g(lv.arc);
                st.insert(st.begin() + p, {{lv.sign, lv.comp, lv.arc}, {-lv.sign, lv.comp, lv.arc}});
                break;
            }
            case GLevelKind::Cap:
                if (p < 0 || p + 1 >= w) throw err("cap position out of range");
                if (st[p].sign != -st[p + 1].sign) throw err("cap joins strands of equal sign");
                if (st[p].arc != st[p + 1].arc) throw err("cap joins different arcs");
                st.erase(st.begin() + p, st.begin() + p + 2);
                break;
            case GLevelKind::Cross: {
                if (p < 0 || p + 1 >= w) throw err("crossing position out of range");
                if (!kv.count("over") || (kv["over"] != "A" && kv["over"] != "B")) throw err("cross needs over=A|B");
                lv.a_over = kv["over"] == "A";
                lv.arc = int_key("arc");
                take_g(lv.arc);
                std::swap(st[p], st[p + 1]);
                Tag& under = lv.a_over ? st[p] : st[p + 1];
                under.arc = lv.arc;
                lv.comp = under.comp;
                break;
            }
        }
        l.levels.push_back(lv);
        tags.push_back(st);
    }
    if (!st.empty()) throw LinkError("dangling strand: " + std::to_string(st.size()) + " strands left open");
    LinkGraph G = link_graph(l);
    std::map<int, int> arc_doc, comp_doc, doc_arc, doc_comp;
    for (const auto& nd : G.nodes) {
        const Tag& t = tags[nd.gap][nd.pos];
        auto bind = [](std::map<int, int>& m, int k, int v) { return m.emplace(k, v).first->second == v; };
        if (!bind(arc_doc, nd.arc, t.arc) || !bind(doc_arc, t.arc, nd.arc))
            throw LinkError("arc " + std::to_string(t.arc) + " does not match the diagram");
        if (!bind(comp_doc, nd.comp, t.comp) || !bind(doc_comp, t.comp, nd.comp))
            throw LinkError("component " + std::to_string(t.comp) + " does not match the diagram");
    }
    std::vector<int> v(G.narc);
    for (int a = 0; a < G.narc; ++a) {
        int d = arc_doc[a];
        if (!doc_g.count(d)) throw LinkError("arc " + std::to_string(d) + " has no g");
        v[a] = doc_g[d];
    }
    return relabel(l, G, v);
}

std::string print_link(const GLink& l, const CategoryData& c) {
    std::ostringstream os;
    auto g = [&](int arc) {
        auto it = l.arc_g.find(arc);
        return it == l.arc_g.end() ? std::string() : " g=" + c.group.names[it->second];
    };
    for (const auto& lv : l.levels) {
        switch (lv.kind) {
            case GLevelKind::Cup:
                os << "cup " << lv.pos << (lv.sign > 0 ? " +" : " -") << " comp=" << lv.comp << " arc=" << lv.arc
                   << g(lv.arc) << "\n";
                break;
            case GLevelKind::Cap: os << "cap " << lv.pos << "\n"; break;
            case GLevelKind::Cross:
                os << "cross " << lv.pos << " over=" << (lv.a_over ? "A" : "B") << " arc=" << lv.arc << g(lv.arc)
                   << "\n";
                break;
        }
    }
    return os.str();
}

AxiomReport check_flat_structure(const GLink& l, const CategoryData& c) {
    AxiomReport r;
    LinkGraph G = link_graph(l);
    std::vector<int> v(G.narc, -1);
    for (int a = 0; a < G.narc; ++a) {
        auto it = l.arc_g.find(a);
        if (it == l.arc_g.end() || it->second < 0 || it->second >= c.nG())
            r.fail_detail("link.arc-g", {"arc " + std::to_string(a)}, "no group element");
        else
            v[a] = it->second;
    }
    if (!r.ok()) return r;
    const auto& nm = c.group.names;
    for (const auto& nd : G.nodes) {
        if (nd.under < 0) continue;
        int from = nd.arc, to = G.nodes[nd.next].arc, h = v[G.over_arc[nd.under]];
        int he = gpow(c, h, G.eps[nd.under]);
        int want = c.gmul(c.gmul(he, v[from]), c.ginv(he));
        ++r.checked;
        if (v[to] != want)
            r.fail_detail("link.wirtinger", {lvl(nd.under), "arc " + std::to_string(to)},
                          "g = " + nm[v[to]] + " but the crossing forces " + nm[want]);
    }
    if (!r.ok()) return r;
    for (int comp = 0; comp < G.ncomp; ++comp) {
        int W = longitude(c, G, v, comp);
        ++r.checked;
        if (W != c.gunit())
            r.fail_detail("link.special", {"component " + std::to_string(comp)}, "longitude maps to " + nm[W]);
    }
    return r;
}

bool is_special(const GLink& l, const CategoryData& c) { return check_flat_structure(l, c).ok(); }

std::vector<int> coupon_sites(const LinkGraph& g, int comp) {
    std::vector<int> r;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        if (g.nodes[i].comp == comp && g.nodes[i].sign > 0) r.push_back((int)i);
    return r;
}

namespace {

std::vector<int> resolve_sites(const LinkGraph& G, const std::map<int, int>& site) {
    std::vector<int> s(G.ncomp);
    for (int r = 0; r < G.ncomp; ++r) {
        auto it = site.find(r);
        if (it == site.end()) {
            s[r] = coupon_sites(G, r).at(0);
        } else {
            int n = it->second;
            if (n < 0 || n >= (int)G.nodes.size() || G.nodes[n].comp != r || G.nodes[n].sign < 0)
                throw LinkError("coupon site " + std::to_string(n) + " is not a + node of component " +
                                std::to_string(r));
            s[r] = n;
        }
    }
    return s;
}

LevelDiagram coloring(const GLink& l, const LinkGraph& G, const std::vector<int>& sites, const std::vector<int>& base,
                      const CategoryData& c) {
    int n = (int)G.nodes.size();
    std::vector<int> label(n, -1), ex(n, -1);
    auto g_of = [&](int arc) { return l.arc_g.at(arc); };
    if ((int)base.size() != G.ncomp) throw LinkError("one base label per component is needed");
    for (int r = 0; r < G.ncomp; ++r) {
        int s = sites[r], u = base[r];
        if (u < 0 || u >= c.nL()) throw LinkError("bad base label");
        if (c.grade[u] != g_of(G.nodes[s].arc))
            throw LinkError("base label " + c.labels.names[u] + " of component " + std::to_string(r) +
                            " has the wrong grade");
        label[s] = u;
        ex[s] = c.gunit();
        int cur = s;
        while (true) {
            const LinkNode& nd = G.nodes[cur];
            int a = ex[cur];
            if (nd.under >= 0) a = c.gmul(a, gpow(c, g_of(G.over_arc[nd.under]), -G.eps[nd.under]));
            if (nd.next == s) {
                if (a != c.gunit()) throw LinkError("component " + std::to_string(r) + " is not special");
                break;
            }
            ex[nd.next] = a;
            label[nd.next] = c.act[a][u];
            cur = nd.next;
        }
    }
    std::vector<std::vector<int>> coupons(G.at.size());
    for (int r = 0; r < G.ncomp; ++r) coupons[G.nodes[sites[r]].gap].push_back(sites[r]);
    LevelDiagram d;
    int L = (int)l.levels.size();
    for (int gap = 0; gap <= L; ++gap) {
        for (int s : coupons[gap]) {
            Strand st{label[s], 1};
            d.levels.push_back({coupon({st}, {st}, c.one()), G.nodes[s].pos});
        }
        if (gap == L) break;
        const GLevel& lv = l.levels[gap];
        int p = lv.pos;
        switch (lv.kind) {
            case GLevelKind::Cup: {
                int x = label[G.at[gap + 1][p]];
                d.levels.push_back({lv.sign > 0 ? cup_r(x) : cup_l(x), p});
                break;
            }
            case GLevelKind::Cap: {
                const LinkNode& left = G.nodes[G.at[gap][p]];
                int x = label[G.at[gap][p]];
                d.levels.push_back({left.sign < 0 ? cap_r(x) : cap_l(x), p});
                break;
            }
            case GLevelKind::Cross: {
                int nA = G.at[gap][p], nB = G.at[gap][p + 1];
                CrossKind k = cross_kind(G.nodes[nA].sign, G.nodes[nB].sign, lv.a_over);
                int a = label[nA], b = label[nB];
                int lo = lv.a_over ? nB : nA;
                int hi = G.at[gap + 1][lv.a_over ? p : p + 1];
                bool down = G.nodes[lo].sign > 0;
                int in = down ? hi : lo, out = down ? lo : hi;
                int eps = G.eps[gap], h = g_of(G.over_arc[gap]);
                int from = eps > 0 ? in : out, to = eps > 0 ? out : in;
                PsiType pt = cross_psi_type(c, k, a, b);
                if (pt.from != label[from] || pt.to != label[to] || pt.h != h)
                    throw std::logic_error("crossing transport disagrees with the crossing labels");
                int u = base[G.nodes[lo].comp];
                CycNumber psi = c.phi2(h, ex[to], u).inv();
                auto e = expand_cross(c, k, a, b, psi, p);
                d.levels.insert(d.levels.end(), e.begin(), e.end());
                break;
            }
        }
    }
    return d;
}

CycNumber power(const CycNumber& x, int e) {
    CycNumber r(x.order(), 1);
    CycNumber b = e < 0 ? x.inv() : x;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return r;
}

}  // namespace

LevelDiagram canonical_coloring(const GLink& l, const std::vector<int>& base, const CategoryData& c,
                                const std::map<int, int>& site) {
    LinkGraph G = link_graph(l);
    return coloring(l, G, resolve_sites(G, site), base, c);
}

CycNumber link_form(const GLink& l, const CategoryData& c, const LinkFormOptions& opt,
                    std::vector<LinkFormTerm>* terms) {
    AxiomReport fr = check_flat_structure(l, c);
    if (!fr.ok()) throw LinkError("link is not special: " + fr.str());
    LinkGraph G = link_graph(l);
    std::vector<int> sites = resolve_sites(G, opt.site);
    std::vector<std::vector<int>> choice(G.ncomp);
    long total = 1;
    for (int r = 0; r < G.ncomp; ++r) {
        choice[r] = c.labels_of_grade(l.arc_g.at(G.nodes[sites[r]].arc));
        total *= (long)choice[r].size();
    }
    std::vector<CycNumber> vals(total);
    std::vector<std::vector<int>> tuples(total);
    auto work = [&](int t, int nt) {
        Evaluator ev(c);
        for (long i = t; i < total; i += nt) {
            std::vector<int> base(G.ncomp);
            long k = i;
            for (int r = G.ncomp - 1; r >= 0; --r) {
                base[r] = choice[r][k % choice[r].size()];
                k /= (long)choice[r].size();
            }
            CycNumber v = ev.value(coloring(l, G, sites, base, c));
            for (int u : base) v *= c.dim[u];
            vals[i] = v;
            tuples[i] = base;
        }
    };
    int nt = std::max(1, std::min<int>(opt.threads, (int)std::max<long>(1, total)));
    if (nt == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> th;
        for (int t = 0; t < nt; ++t) th.emplace_back(work, t, nt);
        for (auto& t : th) t.join();
    }
    CycNumber F = c.zero();
    for (long i = 0; i < total; ++i) {
        F += vals[i];
        if (terms) terms->push_back({tuples[i], vals[i]});
    }
    return F;
}

int signature(std::vector<std::vector<mpq_class>> m, int* plus, int* minus) {
    int pos = 0, neg = 0;
    while (!m.empty()) {
        int n = (int)m.size(), piv = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (m[i][i] != 0) piv = i;
        if (piv < 0) {
            int bi = -1, bj = -1;
            for (int i = 0; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (m[i][j] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;
            for (int k = 0; k < n; ++k) m[bi][k] += m[bj][k];
            for (int k = 0; k < n; ++k) m[k][bi] += m[k][bj];
            continue;
        }
        mpq_class d = m[piv][piv];
        (d > 0 ? pos : neg)++;
        std::vector<std::vector<mpq_class>> next;
        for (int i = 0; i < n; ++i) {
            if (i == piv) continue;
            std::vector<mpq_class> row;
            for (int j = 0; j < n; ++j) {
                if (j == piv) continue;
                row.push_back(m[i][j] - m[i][piv] * m[piv][j] / d);
            }
            next.push_back(row);
        }
        m = next;
    }
    if (plus) *plus = pos;
    if (minus) *minus = neg;
    return pos - neg;
}

LinkingData linking_data(const GLink& l) {
    LinkGraph G = link_graph(l);
    LinkingData r;
    r.count = G.ncomp;
    r.matrix.assign(G.ncomp, std::vector<mpq_class>(G.ncomp, 0));
    for (size_t li = 0; li < l.levels.size(); ++li) {
        if (l.levels[li].kind != GLevelKind::Cross) continue;
        auto [a, b] = G.cross_comps[li];
        int e = G.eps[li];
        if (a == b) {
            r.matrix[a][a] += e;
        } else {
            r.matrix[a][b] += mpq_class(e, 2);
            r.matrix[b][a] += mpq_class(e, 2);
        }
    }
    r.sigma = signature(r.matrix, &r.sigma_plus, &r.sigma_minus);
    return r;
}

SurgeryReport tau(const GLink& l, const CategoryData& c, const LinkFormOptions& opt) {
    if (!c.has_rank) throw std::invalid_argument("category has no rank D");
    SurgeryReport r;
    r.F = link_form(l, c, opt, opt.keep_terms ? &r.terms : nullptr);
    LinkingData ld = linking_data(l);
    r.sigma = ld.sigma;
    r.components = ld.count;
    CycNumber dm = c.zero();
    for (int x : c.kernel_labels()) dm += c.neutral_twist(x).inv() * c.dim[x] * c.dim[x];
    r.tau = power(dm, r.sigma) * power(c.rankD, -r.sigma - r.components - 1) * r.F;
    return r;
}

long verlinde_rank(const CategoryData& c, const std::vector<int>& alphas, const std::vector<int>& betas) {
    if (alphas.size() != betas.size()) throw std::invalid_argument("alphas and betas differ in length");
    int rel = c.gunit();
    for (size_t i = 0; i < alphas.size(); ++i) {
        int a = alphas[i], b = betas[i];
        if (a < 0 || a >= c.nG() || b < 0 || b >= c.nG()) throw std::invalid_argument("bad group element");
        rel = c.gmul(rel, c.gmul(c.gmul(c.ginv(a), c.ginv(b)), c.gmul(a, b)));
    }
    if (rel != c.gunit()) throw std::invalid_argument("product of commutators is not 1");
    std::function<long(size_t, int)> count = [&](size_t i, int acc) -> long {
        if (i == alphas.size()) return acc == c.lunit() ? 1 : 0;
        long s = 0;
        for (int J : c.labels_of_grade(betas[i]))
            s += count(i + 1, c.lmul(acc, c.lmul(c.act[alphas[i]][c.linv(J)], J)));
        return s;
    };
    return count(0, c.lunit());
}

std::string kirby_name(const KirbySpec& k) {
    switch (k.type) {
        case KirbyType::First: return "first";
        case KirbyType::NegativeFR: return "negative-FR";
        case KirbyType::Reverse: return "reverse";
        case KirbyType::Conjugate: return "conjugate";
        case KirbyType::R2: return "R2";
        case KirbyType::KinkPair: return "kink-pair";
    }
    return "?";
}

namespace {

GLevel cup(int pos, int sign) { return {GLevelKind::Cup, pos, sign}; }
GLevel cap(int pos) { return {GLevelKind::Cap, pos}; }
GLevel cross(int pos, bool a_over) { return {GLevelKind::Cross, pos, 1, a_over}; }

// kink on the strand at pos with sign s; over = true gives crossing sign -1
void kink(std::vector<GLevel>& b, int pos, int s, bool over) {
    b.push_back(cup(pos, -s));
    b.push_back(cross(pos + 1, over));
    b.push_back(cap(pos));
}

GLink insert_block(const GLink& l, const CategoryData& c, int gap, const std::vector<GLevel>& block) {
    LinkGraph G = link_graph(l);
    int bl = (int)block.size();
    GLink nl;
    nl.levels.assign(l.levels.begin(), l.levels.begin() + gap);
    nl.levels.insert(nl.levels.end(), block.begin(), block.end());
    nl.levels.insert(nl.levels.end(), l.levels.begin() + gap, l.levels.end());
    LinkGraph NG;
    try {
        NG = link_graph(nl);
    } catch (const LinkError& e) {
        throw KirbyError(std::string("illegal site: ") + e.what());
    }
    std::vector<int> v(NG.narc, -1);
    auto fix = [&](int node, int g) {
        int a = NG.nodes[node].arc;
        if (v[a] >= 0 && v[a] != g) throw KirbyError("flat structure does not extend");
        v[a] = g;
    };
    for (const auto& nd : G.nodes) {
        int g = l.arc_g.at(nd.arc);
        if (nd.gap <= gap) fix(NG.at[nd.gap][nd.pos], g);
        if (nd.gap >= gap) fix(NG.at[nd.gap + bl][nd.pos], g);
    }
    long budget = 200000;
    auto sol = solve_flat(c, NG, passages(NG), v, nullptr, budget);
    if (!sol) throw KirbyError("no special flat structure extends the move");
    return relabel(nl, NG, *sol);
}

}  // namespace

GLink kirby_move(const GLink& l, const CategoryData& c, const KirbySpec& k) {
    LinkGraph G = link_graph(l);
    int L = (int)l.levels.size();
    auto width = [&](int gap) {
        if (gap < 0 || gap > L) throw KirbyError("gap out of range");
        return (int)G.at[gap].size();
    };
    auto sign_at = [&](int gap, int pos) { return G.nodes[G.at[gap][pos]].sign; };
    GLink r;
    switch (k.type) {
        case KirbyType::First: {
            int w = width(k.gap);
            if (k.pos < 0 || k.pos > w) throw KirbyError("position out of range");
            int q = k.pos;
            std::vector<GLevel> b{cup(q, 1), cup(q + 2, -1), cross(q + 1, k.sign < 0), cap(q), cap(q)};
            r = insert_block(l, c, k.gap, b);
            break;
        }
        case KirbyType::NegativeFR: {
            int w = width(k.gap), p = k.pos, n = k.count;
            if (n < 1 || p < 0 || p + n > w) throw KirbyError("bundle out of range");
            std::vector<GLevel> b;
            for (int t = 0; t < n; ++t)
                for (int i = 0; i + 1 < n; ++i) b.push_back(cross(p + i, true));
            for (int q = p; q < p + n; ++q) kink(b, q, sign_at(k.gap, q), true);
            int st = k.sign > 0 ? 1 : -1;
            b.push_back(cup(p, st));
            kink(b, st > 0 ? p : p + 1, 1, true);
            for (int i = 0; i < n; ++i) b.push_back(cross(p + 1 + i, false));
            for (int i = 0; i < n; ++i) b.push_back(cross(p + i, true));
            b.push_back(cap(p + n));
            r = insert_block(l, c, k.gap, b);
            break;
        }
        case KirbyType::Reverse: {
            if (k.comp < 0 || k.comp >= G.ncomp) throw KirbyError("no such component");
            r = l;
            for (size_t li = 0; li < r.levels.size(); ++li)
                if (r.levels[li].kind == GLevelKind::Cup && G.nodes[G.at[li + 1][r.levels[li].pos]].comp == k.comp)
                    r.levels[li].sign = -r.levels[li].sign;
            std::vector<int> v(G.narc);
            for (int a = 0; a < G.narc; ++a) v[a] = l.arc_g.at(a);
            for (const auto& nd : G.nodes)
                if (nd.comp == k.comp) v[nd.arc] = c.ginv(l.arc_g.at(nd.arc));
            r = relabel(r, link_graph(r), v);
            break;
        }
        case KirbyType::Conjugate: {
            if (k.eta < 0 || k.eta >= c.nG()) throw KirbyError("bad group element");
            r = l;
            for (auto& [a, g] : r.arc_g) g = c.gmul(c.gmul(c.ginv(k.eta), g), k.eta);
            break;
        }
        case KirbyType::R2: {
            int w = width(k.gap);
            if (k.pos < 0 || k.pos + 1 >= w) throw KirbyError("position out of range");
            r = insert_block(l, c, k.gap, {cross(k.pos, k.a_over), cross(k.pos, !k.a_over)});
            break;
        }
        case KirbyType::KinkPair: {
            int w = width(k.gap);
            if (k.pos < 0 || k.pos >= w) throw KirbyError("position out of range");
            std::vector<GLevel> b;
            int s = sign_at(k.gap, k.pos);
            kink(b, k.pos, s, k.a_over);
            kink(b, k.pos, s, !k.a_over);
            r = insert_block(l, c, k.gap, b);
            break;
        }
    }
    AxiomReport fr = check_flat_structure(r, c);
    if (!fr.ok()) throw KirbyError(kirby_name(k) + " broke the flat structure: " + fr.str());
    return r;
}

GLink random_special_link(const CategoryData& c, std::uint64_t seed, int max_components, int depth) {
    std::mt19937_64 rng(seed);
    while (true) {
        GLink l;
        std::vector<int> st;
        auto close_one = [&]() {
            std::vector<int> cand;
            for (int i = 0; i + 1 < (int)st.size(); ++i)
                if (st[i] == -st[i + 1]) cand.push_back(i);
            if (cand.empty()) return false;
            int p = cand[rng() % cand.size()];
            l.levels.push_back(cap(p));
            st.erase(st.begin() + p, st.begin() + p + 2);
            return true;
        };
        for (int step = 0; step < depth; ++step) {
            int r = rng() % 100, w = (int)st.size();
            if ((r < 35 && w < 6) || w == 0) {
                int p = rng() % (w + 1), s = rng() % 2 ? 1 : -1;
                l.levels.push_back(cup(p, s));
                st.insert(st.begin() + p, {s, -s});
            } else if (r < 75 && w >= 2) {
                int p = rng() % (w - 1);
                l.levels.push_back(cross(p, rng() % 2));
                std::swap(st[p], st[p + 1]);
            } else {
                close_one();
            }
        }
        while (!st.empty()) close_one();
        LinkGraph G = link_graph(l);
        if (G.ncomp > max_components) continue;
        long budget = 20000;
        auto sol = solve_flat(c, G, passages(G), std::vector<int>(G.narc, -1), &rng, budget);
        std::vector<int> v = sol ? *sol : std::vector<int>(G.narc, c.gunit());
        return relabel(l, G, v);
    }
}

namespace {

struct PairResult {
    long moves = 0;
    std::map<std::string, long> counts;
    std::vector<std::string> failures;
};

PairResult kirby_pair(const CategoryData& c, std::uint64_t seed, int steps) {
    PairResult res;
    std::mt19937_64 rng(seed);
    GLink l = random_special_link(c, rng(), 3, 4 + rng() % 12);
    CycNumber t0 = tau(l, c).tau;
    for (int s = 0; s < steps; ++s) {
        LinkGraph G = link_graph(l);
        int L = (int)l.levels.size();
        bool grow = G.ncomp < 4 && L < 90;
        KirbySpec k;
        std::string name;
        std::map<int, int> site;
        int r = rng() % 7;
        auto pick_gap = [&](int min_w) {
            std::vector<int> gaps;
            for (int g = 0; g <= L; ++g)
                if ((int)G.at[g].size() >= min_w) gaps.push_back(g);
            return gaps.empty() ? -1 : gaps[rng() % gaps.size()];
        };
        if (r == 0 && grow) {
            k.type = KirbyType::First;
            k.sign = rng() % 2 ? 1 : -1;
            k.gap = rng() % (L + 1);
            k.pos = rng() % 2 ? 0 : (int)G.at[k.gap].size();
        } else if (r == 1 && grow) {
            k.type = KirbyType::NegativeFR;
            k.gap = pick_gap(1);
            if (k.gap < 0) continue;
            int w = (int)G.at[k.gap].size();
            k.count = 1 + rng() % std::min(3, w);
            k.pos = rng() % (w - k.count + 1);
            k.sign = rng() % 2 ? 1 : -1;
        } else if (r == 2 && G.ncomp > 0) {
            k.type = KirbyType::Reverse;
            k.comp = rng() % G.ncomp;
        } else if (r == 3) {
            k.type = KirbyType::Conjugate;
            k.eta = rng() % c.nG();
        } else if (r == 4 && L < 90) {
            k.type = KirbyType::R2;
            k.gap = pick_gap(2);
            if (k.gap < 0) continue;
            k.pos = rng() % ((int)G.at[k.gap].size() - 1);
            k.a_over = rng() % 2;
        } else if (r == 5 && L < 90) {
            k.type = KirbyType::KinkPair;
            k.gap = pick_gap(1);
            if (k.gap < 0) continue;
            k.pos = rng() % G.at[k.gap].size();
            k.a_over = rng() % 2;
        } else if (r == 6 && G.ncomp > 0) {
            for (int comp = 0; comp < G.ncomp; ++comp) {
                auto sites = coupon_sites(G, comp);
                site[comp] = sites[rng() % sites.size()];
            }
            name = "regauge";
        } else {
            continue;
        }
        if (name.empty()) name = kirby_name(k);
        try {
            GLink next = name == "regauge" ? l : kirby_move(l, c, k);
            LinkFormOptions opt;
            opt.site = site;
            CycNumber t1 = tau(next, c, opt).tau;
            ++res.moves;
            ++res.counts[name];
            if (t1 != t0)
                res.failures.push_back(name + " changed tau from " + t0.str() + " to " + t1.str() + " on\n" +
                                       print_link(l, c));
            l = next;
        } catch (const std::exception& e) {
            res.failures.push_back(name + " failed: " + e.what() + " on\n" + print_link(l, c));
        }
    }
    return res;
}

}  // namespace

KirbyFuzzResult kirby_fuzz(const CategoryData& c, std::uint64_t seed, int pairs, int steps, int threads) {
    std::vector<PairResult> out(pairs);
    auto work = [&](int t, int nt) {
        for (int i = t; i < pairs; i += nt) out[i] = kirby_pair(c, seed * 1000003ULL + (std::uint64_t)i, steps);
    };
    int nt = std::max(1, std::min(threads, pairs));
    if (nt == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> th;
        for (int t = 0; t < nt; ++t) th.emplace_back(work, t, nt);
        for (auto& t : th) t.join();
    }
    KirbyFuzzResult r;
    for (const auto& p : out) {
        ++r.pairs;
        r.moves += p.moves;
        for (const auto& [k, v] : p.counts) r.counts[k] += v;
        r.failures += (long)p.failures.size();
        if (r.first_failure.empty() && !p.failures.empty()) r.first_failure = p.failures[0];
    }
    return r;
}

}  // namespace gcx

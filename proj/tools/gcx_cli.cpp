#include "CLI11.hpp"
#include "json.hpp"

#include "gcx/axioms.hpp"
#include "gcx/evaluator.hpp"
#include "gcx/fusion.hpp"
#include "gcx/surgery.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gcx;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CategoryData load(const std::string& path) {
    try {
        return load_category(path);
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int group_element(const CategoryData& c, const std::string& name) {
    try {
        return c.group.index(name);
    } catch (const std::exception&) {
        throw UsageError("unknown group element '" + name + "'");
    }
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar_text(v[i]);
        return s;
    }
    return v.dump();
}

void render(const Json& out, const std::string& prefix, std::ostream& os) {
    for (auto it = out.begin(); it != out.end(); ++it) {
        std::string key = prefix + it.key();
        const Json& v = it.value();
        if (v.is_object()) {
            render(v, key + ".", os);
        } else if (v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object())) {
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_object())
                    render(v[i], key + "[" + std::to_string(i) + "].", os);
                else
                    os << key << "[" << i << "]=" << scalar_text(v[i]) << "\n";
            }
        } else if (v.is_array() && key.size() > 1 && key.back() == 's' && prefix.empty() && it.key() == "failures") {
            for (const auto& f : v) os << "failure=" << scalar_text(f) << "\n";
        } else {
            os << key << "=" << scalar_text(v) << "\n";
        }
    }
}

Json report_json(const AxiomReport& r) {
    Json j;
    j["result"] = r.ok() ? "pass" : "fail";
    j["checked"] = r.checked;
    j["failures"] = (long)r.failures.size();
    return j;
}

std::vector<std::string> failure_lines(const AxiomReport& r) {
    std::vector<std::string> v;
    std::istringstream is(r.str());
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) v.push_back(line);
    return v;
}

int cmd_check(const std::string& path, Json& out) {
    CategoryData c = load(path);
    out["category"] = c.name;
    AxiomReport all;
    std::vector<std::pair<std::string, AxiomReport>> parts{{"pivotal", check_pivotal(c)},
                                                           {"crossing", check_crossing(c)},
                                                           {"braiding", check_braiding(c)},
                                                           {"ribbon", check_ribbon(c)},
                                                           {"graded_dims", check_graded_dims(c)},
                                                           {"derived", check_derived(c)}};
    for (auto& [name, r] : parts) {
        r.sort();
        out[name] = report_json(r);
        all.merge(r);
    }
    out["result"] = all.ok() ? "pass" : "fail";
    if (!all.ok()) out["failures"] = failure_lines(all);
    return all.ok() ? 0 : 2;
}

int cmd_smatrix(const std::string& path, Json& out) {
    CategoryData c = load(path);
    ModularReport m = modular_report(c);
    out["category"] = c.name;
    Json neutral = Json::array();
    for (int x : m.neutral) neutral.push_back(c.labels.names[x]);
    out["neutral"] = neutral;
    Json s = Json::array();
    for (const auto& row : m.s_matrix) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v.str());
        s.push_back(r);
    }
    out["S"] = s;
    out["det"] = m.det.str();
    out["invertible"] = m.invertible;
    return 0;
}

int cmd_gauss(const std::string& path, Json& out) {
    CategoryData c = load(path);
    ModularReport m = modular_report(c);
    out["category"] = c.name;
    out["delta_plus"] = m.delta_plus.str();
    out["delta_minus"] = m.delta_minus.str();
    out["product"] = (m.delta_plus * m.delta_minus).str();
    out["global_dim"] = m.global_dim.str();
    if (c.has_rank) {
        out["rank"] = c.rankD.str();
        out["rank_squared"] = (c.rankD * c.rankD).str();
    }
    return 0;
}

int cmd_omega(const std::string& path, const std::string& g, Json& out) {
    CategoryData c = load(path);
    int a = group_element(c, g);
    FusionElement w = omega(c, a);
    out["category"] = c.name;
    out["grade"] = c.group.names[a];
    Json terms = Json::array();
    for (int x = 0; x < c.nL(); ++x)
        if (!w.coeffs[x].is_zero()) terms.push_back(Json::array({c.labels.names[x], w.coeffs[x].str()}));
    out["terms"] = terms;
    return 0;
}

int cmd_eval(const std::string& cpath, const std::string& dpath, Json& out) {
    CategoryData c = load(cpath);
    ColoredDiagram d;
    try {
        d = parse_diagram(read_file(dpath), c);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(dpath + ": " + e.what());
    }
    AxiomReport r = validate_coloring(d, c);
    out["category"] = c.name;
    if (!r.ok()) {
        out["result"] = "invalid";
        out["failures"] = failure_lines(r);
        return 2;
    }
    Morphism m = evaluate(d, c);
    out["source"] = object_str(c, m.source);
    out["target"] = object_str(c, m.target);
    out["value"] = m.value.str();
    out["result"] = "ok";
    return 0;
}

GLink load_link(const CategoryData& c, const std::string& path) {
    try {
        return parse_link(read_file(path), c);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int cmd_tau(const std::string& cpath, const std::string& lpath, bool terms, int threads, Json& out,
            std::string& csv) {
    CategoryData c = load(cpath);
    GLink l = load_link(c, lpath);
    out["category"] = c.name;
    AxiomReport fr = check_flat_structure(l, c);
    if (!fr.ok()) {
        out["result"] = "not special";
        out["failures"] = failure_lines(fr);
        return 2;
    }
    if (!c.has_rank) throw ValidationError("category has no rank D");
    LinkFormOptions opt;
    opt.threads = threads;
    opt.keep_terms = terms;
    SurgeryReport r = tau(l, c, opt);
    LinkingData ld = linking_data(l);
    out["components"] = r.components;
    Json b = Json::array();
    for (const auto& row : ld.matrix) {
        Json jr = Json::array();
        for (const auto& v : row) jr.push_back(v.get_str());
        b.push_back(jr);
    }
    out["linking"] = b;
    out["sigma"] = r.sigma;
    out["F"] = r.F.str();
    out["rank"] = c.rankD.str();
    out["tau"] = r.tau.str();
    out["modular"] = modular_report(c).invertible;
    if (terms) {
        Json jt = Json::array();
        std::ostringstream os;
        os << "labels,value\n";
        for (const auto& t : r.terms) {
            std::string lab;
            for (size_t i = 0; i < t.labels.size(); ++i) lab += (i ? " " : "") + c.labels.names[t.labels[i]];
            jt.push_back(Json::object({{"labels", lab}, {"value", t.value.str()}}));
            os << lab << "," << t.value.str() << "\n";
        }
        out["terms"] = jt;
        csv = os.str();
    }
    return 0;
}

int cmd_kirby(const std::string& cpath, std::uint64_t seed, int steps, int pairs, int threads, Json& out) {
    CategoryData c = load(cpath);
    if (!c.has_rank) throw ValidationError("category has no rank D");
    KirbyFuzzResult r = kirby_fuzz(c, seed, pairs, steps, threads);
    out["category"] = c.name;
    out["seed"] = seed;
    out["pairs"] = r.pairs;
    out["moves"] = r.moves;
    Json counts;
    for (const auto& [k, v] : r.counts) counts[k] = v;
    out["counts"] = counts;
    out["failures"] = r.failures;
    if (r.failures) out["first_failure"] = r.first_failure;
    out["result"] = r.failures ? "fail" : "pass";
    return r.failures ? 3 : 0;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> r;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            r.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) r.push_back(cur);
    return r;
}

int cmd_verlinde(const std::string& cpath, const std::string& alphas, const std::string& betas, Json& out) {
    CategoryData c = load(cpath);
    std::vector<int> a, b;
    for (const auto& s : split_list(alphas)) a.push_back(group_element(c, s));
    for (const auto& s : split_list(betas)) b.push_back(group_element(c, s));
    out["category"] = c.name;
    out["genus"] = (long)a.size();
    try {
        out["rank"] = verlinde_rank(c, a, b);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded category toolkit"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine readable output");
    std::string cat, file, grade, alphas, betas;
    bool terms = false;
    std::uint64_t seed = 1;
    int steps = 4, pairs = 50, threads = 1;

    auto* check = app.add_subcommand("check", "verify the category axioms");
    check->add_option("category", cat)->required();
    auto* smatrix = app.add_subcommand("smatrix", "S-matrix of the neutral component");
    smatrix->add_option("category", cat)->required();
    auto* om = app.add_subcommand("omega", "omega vector of a grade");
    om->add_option("category", cat)->required();
    om->add_option("grade", grade)->required();
    auto* gauss = app.add_subcommand("gauss", "Gauss sums and rank");
    gauss->add_option("category", cat)->required();
    auto* ev = app.add_subcommand("eval-diagram", "evaluate a colored diagram");
    ev->add_option("category", cat)->required();
    ev->add_option("diagram", file)->required();
    auto* ta = app.add_subcommand("tau", "surgery invariant of a link");
    ta->add_option("category", cat)->required();
    ta->add_option("link", file)->required();
    ta->add_flag("--terms", terms, "per coloring contributions as CSV");
    ta->add_option("--threads", threads)->check(CLI::Range(1, 64));
    auto* kf = app.add_subcommand("kirby-fuzz", "random Kirby moves against tau");
    kf->add_option("category", cat)->required();
    kf->add_option("--seed", seed);
    kf->add_option("--steps", steps)->check(CLI::Range(1, 100));
    kf->add_option("--pairs", pairs)->check(CLI::Range(1, 100000));
    kf->add_option("--threads", threads)->check(CLI::Range(1, 64));
    auto* vl = app.add_subcommand("verlinde", "rank of the state space of a surface");
    vl->add_option("category", cat)->required();
    vl->add_option("--alpha", alphas, "comma separated group elements");
    vl->add_option("--beta", betas, "comma separated group elements");
    for (auto* s : app.get_subcommands({})) s->add_flag("--json", json, "machine readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    Json out;
    std::string csv;
    int code = 0;
    try {
        if (check->parsed())
            code = cmd_check(cat, out);
        else if (smatrix->parsed())
            code = cmd_smatrix(cat, out);
        else if (om->parsed())
            code = cmd_omega(cat, grade, out);
        else if (gauss->parsed())
            code = cmd_gauss(cat, out);
        else if (ev->parsed())
            code = cmd_eval(cat, file, out);
        else if (ta->parsed())
            code = cmd_tau(cat, file, terms, threads, out, csv);
        else if (kf->parsed())
            code = cmd_kirby(cat, seed, steps, pairs, threads, out);
        else if (vl->parsed())
            code = cmd_verlinde(cat, alphas, betas, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (json) {
        out["exit"] = code;
        std::cout << out.dump(2) << "\n";
    } else {
        if (!csv.empty()) out.erase("terms");
        render(out, "", std::cout);
        if (!csv.empty()) std::cout << csv;
    }
    return code;
}

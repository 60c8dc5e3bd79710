#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "gcx/fusion.hpp"
#include "gcx/surgery.hpp"

#include <fstream>
#include <map>
#include <sstream>

using namespace gcx;

static std::map<std::string, std::string> frozen() {
    std::ifstream f(data_path("oracle/z3_modular.txt"));
    std::map<std::string, std::string> m;
    std::string line;
    while (std::getline(f, line)) {
        auto e = line.find('=');
        if (e != std::string::npos) m[line.substr(0, e)] = line.substr(e + 1);
    }
    return m;
}

static CycNumber from_pair(const std::string& s) {
    auto c = s.find(',');
    int a = std::stoi(s.substr(0, c)), b = std::stoi(s.substr(c + 1));
    return CycNumber(12, a) + CycNumber(12, b) * CycNumber::zeta(12, 4);
}

static std::vector<CycNumber> row(const std::string& s) {
    std::vector<CycNumber> r;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) r.push_back(from_pair(item));
    return r;
}

TEST_CASE("z3 modular data matches the frozen brute force values") {
    auto o = frozen();
    REQUIRE(o.size() == 8);
    CategoryData c = load_data("z3.cat");
    ModularReport m = modular_report(c);
    CHECK(m.delta_plus == from_pair(o["delta_plus"]));
    CHECK(m.delta_minus == from_pair(o["delta_minus"]));
    CHECK(m.delta_plus * m.delta_minus == from_pair(o["product"]));
    CHECK(c.rankD * c.rankD == from_pair(o["product"]));
    CHECK(m.global_dim == from_pair(o["product"]));
    REQUIRE(m.neutral == std::vector<int>{0, 1, 2});
    for (int j = 0; j < 3; ++j) CHECK(m.s_matrix[j] == row(o["S[" + std::to_string(j) + "]"]));
    CHECK(!m.det.is_zero());
    CHECK(m.invertible);
}

TEST_CASE("lens space value matches the frozen brute force values") {
    auto o = frozen();
    CategoryData c = load_data("z3.cat");
    std::ifstream f(data_path("links/lens_p2.link"));
    std::stringstream ss;
    ss << f.rdbuf();
    SurgeryReport r = tau(parse_link(ss.str(), c), c);
    CHECK(r.F == from_pair(o["lens2_F"]));
    CHECK(r.tau * c.rankD * CycNumber(12, 3) == from_pair(o["lens2_tau_times_3D"]));
}

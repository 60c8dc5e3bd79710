#include "gcx/category.hpp"

#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>

using namespace gcx;

static CycNumber embed(const CycNumber& x, int n) {
    CycNumber r(n);
    const auto& cs = x.coeffs();
    int step = n / x.order();
    for (size_t k = 0; k < cs.size(); ++k)
        if (cs[k] != 0) r += CycNumber::zeta(n, (long)k * step) * CycNumber(n, cs[k]);
    return r;
}

static GroupTable product_table(const GroupTable& a, const GroupTable& b, const char* what) {
    GroupTable t;
    int nb = b.size();
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < nb; ++j) t.names.push_back(a.names[i] + "." + b.names[j]);
    int n = (int)t.names.size();
    t.table.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    t.finish(what);
    return t;
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: gcx_product <category> <category> [name]\n");
        return 2;
    }
    try {
        CategoryData A = load_category(argv[1]), B = load_category(argv[2]);
        CategoryData c;
        c.N = std::lcm(A.N, B.N);
        c.group = product_table(A.group, B.group, "group");
        c.labels = product_table(A.labels, B.labels, "labels");
        c.allocate();
        int gb = B.nG(), lb = B.nL();
        auto e = [&](const CycNumber& x) { return embed(x, c.N); };
        for (int a = 0; a < c.nG(); ++a)
            c.phiA0_[a] = e(A.phiA0(a / gb)) * e(B.phiA0(a % gb));
        for (int x = 0; x < c.nL(); ++x) {
            int xa = x / lb, xb = x % lb;
            c.grade[x] = A.grade[xa] * gb + B.grade[xb];
            c.dim[x] = e(A.dim[xa]) * e(B.dim[xb]);
            c.phi0_[x] = e(A.phi0(xa)) * e(B.phi0(xb));
            for (int a = 0; a < c.nG(); ++a) c.act[a][x] = A.act[a / gb][xa] * lb + B.act[a % gb][xb];
            for (int y = 0; y < c.nL(); ++y) {
                int ya = y / lb, yb = y % lb;
                c.braid_ref(x, y) = e(A.braid(xa, ya)) * e(B.braid(xb, yb));
                for (int a = 0; a < c.nG(); ++a)
                    c.phiA2_ref(a, x, y) = e(A.phiA2(a / gb, xa, ya)) * e(B.phiA2(a % gb, xb, yb));
            }
            for (int a = 0; a < c.nG(); ++a)
                for (int b = 0; b < c.nG(); ++b)
                    c.phi2_ref(a, b, x) = e(A.phi2(a / gb, b / gb, xa)) * e(B.phi2(a % gb, b % gb, xb));
        }
        c.has_rank = A.has_rank && B.has_rank;
        if (c.has_rank) c.rankD = e(A.rankD) * e(B.rankD);
        c.name = argc > 3 ? argv[3] : A.name + "_x_" + B.name;
        verify_structure(c);
        std::cout << write_category(c);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}

#include "gcx/category.hpp"

#include <cstdio>
#include <iostream>
#include <random>
#include <string>

using namespace gcx;

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: gcx_gauge <category> <seed> [name]\n");
        return 2;
    }
    try {
        CategoryData c = load_category(argv[1]);
        std::mt19937_64 rng(std::stoull(argv[2]));
        static const long nums[] = {1, 2, -1, 3, 1, -2};
        static const long dens[] = {1, 1, 2, 1, 3, 5};
        std::vector<CycNumber> eta(c.nG() * c.nL());
        for (auto& e : eta) {
            mpq_class q(nums[rng() % 6], dens[rng() % 6]);
            q.canonicalize();
            e = CycNumber::zeta(c.N, (long)(rng() % c.N)) * CycNumber(c.N, q);
        }
        CategoryData g = gauge_transform(c, [&](int a, int x) { return eta[a * c.nL() + x]; });
        g.name = argc > 3 ? argv[3] : c.name + "_gauged";
        std::cout << write_category(g);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

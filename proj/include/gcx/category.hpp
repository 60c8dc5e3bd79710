#pragma once

#include "gcx/cyc.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gcx {

struct GroupTable {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;  // table[a][b] = a*b
    int unit = 0;
    std::vector<int> inverse;

    int size() const { return (int)names.size(); }
    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }
    int index(const std::string& name) const;
    bool abelian() const;
    // fills unit/inverse and verifies the group laws; throws on failure
    void finish(const std::string& what);
};

struct CategoryData {
    int N = 1;
    GroupTable group;
    GroupTable labels;
    std::vector<int> grade;
    std::vector<CycNumber> dim;
    std::vector<std::vector<int>> act;  // act[a][x]
    std::vector<CycNumber> phiA2_;      // [a][x][y]
    std::vector<CycNumber> phiA0_;      // [a]
    std::vector<CycNumber> phi2_;       // [a][b][x]
    std::vector<CycNumber> phi0_;       // [x]
    std::vector<CycNumber> braid_;      // [x][y]
    CycNumber rankD;
    bool has_rank = false;
    std::string name;

    int nG() const { return group.size(); }
    int nL() const { return labels.size(); }
    int lmul(int x, int y) const { return labels.mul(x, y); }
    int linv(int x) const { return labels.inv(x); }
    int gmul(int a, int b) const { return group.mul(a, b); }
    int ginv(int a) const { return group.inv(a); }
    int lunit() const { return labels.unit; }
    int gunit() const { return group.unit; }

    const CycNumber& phiA2(int a, int x, int y) const { return phiA2_[(a * nL() + x) * nL() + y]; }
    const CycNumber& phiA0(int a) const { return phiA0_[a]; }
    const CycNumber& phi2(int a, int b, int x) const { return phi2_[(a * nG() + b) * nL() + x]; }
    const CycNumber& phi0(int x) const { return phi0_[x]; }
    const CycNumber& braid(int x, int y) const { return braid_[x * nL() + y]; }

    CycNumber& phiA2_ref(int a, int x, int y) { return phiA2_[(a * nL() + x) * nL() + y]; }
    CycNumber& phi2_ref(int a, int b, int x) { return phi2_[(a * nG() + b) * nL() + x]; }
    CycNumber& braid_ref(int x, int y) { return braid_[x * nL() + y]; }

    CycNumber one() const { return CycNumber(N, 1); }
    CycNumber zero() const { return CycNumber(N); }

    // derived scalars of the pointed model
    CycNumber phiL(int a, int x) const;
    CycNumber phiR(int a, int x) const;
    CycNumber twist(int x) const;
    CycNumber twist_inverse(int x) const;
    CycNumber braid_inv(int x, int y) const;         // first closed form
    CycNumber braid_inv_second(int x, int y) const;  // second closed form
    CycNumber neutral_twist(int x) const;            // (phi0)^-1 theta on C_1
    CycNumber neutral_braid(int x, int y) const;     // c_{x,y}
    // psi: X -> phi_a(Y) with scalar s
    CycNumber psi_bar(const CycNumber& s, int a, int y) const;
    CycNumber psi_minus(const CycNumber& s, int a, int y) const;

    std::vector<int> kernel_labels() const;
    std::vector<int> labels_of_grade(int g) const;

    void allocate();
};

struct LoadOptions {
    bool verify_rank = true;
};

CategoryData load_category_text(const std::string& text, const LoadOptions& opt = {});
CategoryData load_category(const std::string& path, const LoadOptions& opt = {});
std::string write_category(const CategoryData& c);

// Verifies the structural invariants; throws std::runtime_error with a message.
void verify_structure(const CategoryData& c, const LoadOptions& opt = {});

// Transport of structure along eta(a, x): phi'_a => phi_a.
CategoryData gauge_transform(const CategoryData& c, const std::function<CycNumber(int, int)>& eta);

}  // namespace gcx

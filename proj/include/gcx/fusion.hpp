#pragma once

#include "gcx/axioms.hpp"
#include "gcx/category.hpp"

#include <optional>
#include <vector>

namespace gcx {

struct FusionElement {
    std::vector<CycNumber> coeffs;  // indexed by label
    std::optional<int> grade;

    static FusionElement basis(const CategoryData& c, int x);
    static FusionElement zero(const CategoryData& c);
    bool operator==(const FusionElement& o) const { return coeffs == o.coeffs; }
};

FusionElement fusion_add(const FusionElement& a, const FusionElement& b);
FusionElement fusion_mul(const CategoryData& c, const FusionElement& a, const FusionElement& b);
FusionElement fusion_star(const CategoryData& c, const FusionElement& a);
FusionElement fusion_conj(const CategoryData& c, int alpha, const FusionElement& a);
FusionElement omega(const CategoryData& c, int alpha);
// number of copies of label k in the product of the given labels (0 or 1 here)
int multiplicity(const CategoryData& c, const std::vector<int>& factors, int k);

using Matrix = std::vector<std::vector<CycNumber>>;

CycNumber determinant(Matrix m);

struct ModularReport {
    std::vector<int> neutral;
    Matrix s_matrix;
    CycNumber delta_plus, delta_minus, global_dim, det;
    bool invertible = false;
};

ModularReport modular_report(const CategoryData& c);
AxiomReport check_graded_dims(const CategoryData& c);

}  // namespace gcx

#pragma once

#include "gcx/axioms.hpp"
#include "gcx/diagram.hpp"

#include <vector>

namespace gcx {

struct Morphism {
    BoundaryObject source, target;
    CycNumber value;
};

// Morphism operations the evaluator relies on.
class MorphismAlgebra {
public:
    virtual ~MorphismAlgebra() = default;
    virtual CycNumber identity() const = 0;
    virtual CycNumber elementary(const Piece& p) const = 0;
    virtual CycNumber compose(const CycNumber& top, const CycNumber& bottom) const = 0;
    virtual CycNumber tensor(const CycNumber& left, const CycNumber& right) const = 0;
};

// Pointed skeletal backend: every Hom space is at most one-dimensional.
class PointedAlgebra : public MorphismAlgebra {
public:
    explicit PointedAlgebra(const CategoryData& c);

    CycNumber identity() const override;
    CycNumber elementary(const Piece& p) const override;
    CycNumber compose(const CycNumber& top, const CycNumber& bottom) const override;
    CycNumber tensor(const CycNumber& left, const CycNumber& right) const override;

    void accumulate(Prod& acc, const Piece& p) const;
    const CategoryData& data() const { return c_; }

private:
    const CategoryData& c_;
    std::vector<Factor> dim_, braid_, braid_inv_;
};

class Evaluator {
public:
    explicit Evaluator(const CategoryData& c) : alg_(c) {}
    // throws std::invalid_argument on a broken chain or an invalid coloring
    Morphism evaluate(const ColoredDiagram& d) const;
    CycNumber value(const LevelDiagram& d) const;
    const PointedAlgebra& algebra() const { return alg_; }

private:
    PointedAlgebra alg_;
};

Morphism evaluate(const ColoredDiagram& d, const CategoryData& c);

// Label product of an object, signs acting as inverses.
int object_label(const CategoryData& c, const BoundaryObject& b);
int object_grade(const CategoryData& c, const BoundaryObject& b);

// Evaluates the kink and generalized crossing diagrams for every label pair
// and compares with their closed forms.
AxiomReport evaluate_special_forms(const CategoryData& c);

// Scalar of the map (phi_eta(U))^ -> phi_eta(U^) assembled from the
// monoidal structure of phi_eta and the dual comparison maps.
CycNumber conjugation_factor(const CategoryData& c, int eta, const BoundaryObject& b);
ColoredDiagram conjugate_diagram(const ColoredDiagram& d, int eta, const CategoryData& c);

}  // namespace gcx

#pragma once

#include "gcx/axioms.hpp"
#include "gcx/category.hpp"

#include <string>
#include <vector>

namespace gcx {

struct Strand {
    int label = 0;
    int sign = 1;
    bool operator==(const Strand& o) const { return label == o.label && sign == o.sign; }
    bool operator!=(const Strand& o) const { return !(*this == o); }
};

using BoundaryObject = std::vector<Strand>;

// Reverses order and signs.
BoundaryObject dual_object(const BoundaryObject& b);
BoundaryObject concat(const BoundaryObject& a, const BoundaryObject& b);

enum class PieceKind { Id, CapR, CupR, CapL, CupL, CrossP, CrossN, Coupon };

// CapR = ev on ((x,-),(x,+)); CupR = coev to ((x,+),(x,-));
// CapL = evtilde on ((x,+),(x,-)); CupL = coevtilde to ((x,-),(x,+)).
// CrossP: ((x,+),(y,+)) -> ((y,+),(z,+)) with z = act(|y|, x), psi: z -> phi_|y|(x).
// CrossN: ((x,+),(y,+)) -> ((z,+),(x,+)) with z = act(|x|^-1, y), psi: y -> phi_|x|(z).
struct Piece {
    PieceKind kind = PieceKind::Id;
    int x = 0, y = 0, z = 0;
    int sign = 1;
    Factor s;
    BoundaryObject in, out;
    int tag = -1;

    int n_in() const;
    int n_out() const;
    BoundaryObject source() const;
    BoundaryObject target() const;
    bool operator==(const Piece& o) const;
    bool operator!=(const Piece& o) const { return !(*this == o); }
};

Piece id_piece(int x, int sign);
Piece cap_r(int x);
Piece cup_r(int x);
Piece cap_l(int x);
Piece cup_l(int x);
Piece cross_p(const CategoryData& c, int x, int y, const CycNumber& psi);
Piece cross_n(const CategoryData& c, int x, int y, const CycNumber& psi);
Piece coupon(const BoundaryObject& in, const BoundaryObject& out, const CycNumber& v);

using Slice = std::vector<Piece>;

struct ColoredDiagram {
    BoundaryObject source;
    std::vector<Slice> slices;

    // throws std::invalid_argument on a broken chain
    BoundaryObject target() const;
    bool operator==(const ColoredDiagram& o) const { return source == o.source && slices == o.slices; }
};

ColoredDiagram identity_diagram(const BoundaryObject& b);
ColoredDiagram elementary(const CategoryData& c, const Piece& p);
ColoredDiagram compose(const ColoredDiagram& top, const ColoredDiagram& bottom);
ColoredDiagram tensor(const ColoredDiagram& left, const ColoredDiagram& right);
AxiomReport validate_coloring(const ColoredDiagram& d, const CategoryData& c);

// One non-identity piece per level, placed at strand position pos.
struct Level {
    Piece piece;
    int pos = 0;
    bool operator==(const Level& o) const { return pos == o.pos && piece == o.piece; }
};

struct LevelDiagram {
    BoundaryObject source;
    std::vector<Level> levels;
    bool operator==(const LevelDiagram& o) const { return source == o.source && levels == o.levels; }
};

BoundaryObject apply_level(const BoundaryObject& b, const Level& l);
std::vector<BoundaryObject> boundaries(const LevelDiagram& d);
LevelDiagram to_levels(const ColoredDiagram& d);
ColoredDiagram to_slices(const LevelDiagram& d);

std::string strand_str(const CategoryData& c, const Strand& s);
std::string object_str(const CategoryData& c, const BoundaryObject& b);
std::string piece_str(const CategoryData& c, const Piece& p);
std::string print_diagram(const ColoredDiagram& d, const CategoryData& c);
ColoredDiagram parse_diagram(const std::string& text, const CategoryData& c);

}  // namespace gcx

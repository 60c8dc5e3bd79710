#pragma once

#include "gcx/crossings.hpp"
#include "gcx/diagram.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcx {

enum class MoveType { T1, T2, T3, T4, Stab, Exchange };

// Site and free data of a move.
//   T1   variant 0..3 = kink pairs (Tp,Tm) (Tm,Tp) (TmR,TpR) (TpR,TmR); level = gap; data = {psi}
//   T2   variant = CrossKind of the first crossing; level = gap; data = {psi}
//   T3   level = first crossing; forward data = {A', B'[, C']}, inverse data = {A, B[, C']}
//   T4   variant 1..4; level = coupon level; pos = coupon position;
//        data = new crossing scalars, then the new coupon value for variants 1 and 2
//   Stab level = gap (insert) or coupon level (remove)
//   Exchange level = lower of the two levels swapped
// inverse = remove the pattern (T1, T2, Stab) or rewrite right to left (T3, T4).
struct MoveSpec {
    MoveType type = MoveType::T1;
    bool inverse = false;
    int variant = 0;
    int level = 0;
    int pos = 0;
    std::vector<CycNumber> data;
};

std::string move_name(const MoveSpec& m);

struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LevelDiagram apply_move(const LevelDiagram& d, const CategoryData& c, const MoveSpec& m);
ColoredDiagram apply_move(const ColoredDiagram& d, const CategoryData& c, const MoveSpec& m);

// A*B = t3_ratio * A'*B' is the side condition of the type 3 move on labels x, y, z.
CycNumber t3_ratio(const CategoryData& c, int x, int y, int z);
// Replaces the last data entry of a type 4 move so that its side condition holds.
MoveSpec t4_solve(const LevelDiagram& d, const CategoryData& c, MoveSpec m);

struct FuzzStats {
    std::map<std::string, long> counts;
    long total() const;
};

CycNumber random_scalar(const CategoryData& c, std::mt19937_64& rng);
LevelDiagram random_diagram(const CategoryData& c, std::uint64_t seed, int width, int depth);

class MoveFuzzer {
public:
    MoveFuzzer(const CategoryData& c, std::uint64_t seed) : c_(c), rng_(seed) {}
    // applies one legal move; false if none was found
    bool step(LevelDiagram& d, MoveSpec& applied);

private:
    using Planned = std::function<bool(const LevelDiagram&, MoveSpec&, LevelDiagram&)>;
    const CategoryData& c_;
    std::mt19937_64 rng_;
    std::vector<Planned> plan_;

    bool try_random(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out);
    bool plan_t3(const LevelDiagram& d);
    bool plan_t4(const LevelDiagram& d);
    bool find_removal(const LevelDiagram& d, MoveType t, MoveSpec& m, LevelDiagram& out);
    bool find_t3(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out);
    bool find_t4_inverse(const LevelDiagram& d, MoveSpec& m, LevelDiagram& out);
};

ColoredDiagram random_move_fuzz(const ColoredDiagram& d, const CategoryData& c, std::uint64_t seed, int steps,
                                FuzzStats* stats = nullptr);

}  // namespace gcx

#pragma once

#include "gcx/axioms.hpp"
#include "gcx/diagram.hpp"

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcx {

// Closed link skeleton, one level per line, read bottom to top.
//   Cup   new strands (sign, -sign) at pos, pos+1
//   Cap   joins pos, pos+1
//   Cross strands pos (A) and pos+1 (B) swap; a_over tells which one is on top;
//         arc is the arc of the under strand after the crossing
// A + strand runs downward, a - strand upward.
enum class GLevelKind { Cup, Cap, Cross };

struct GLevel {
    GLevelKind kind = GLevelKind::Cup;
    int pos = 0;
    int sign = 1;
    bool a_over = false;
    int comp = 0;
    int arc = 0;
    bool operator==(const GLevel& o) const;
};

// levels plus the group element of every arc (meridian image)
struct GLink {
    std::vector<GLevel> levels;
    std::map<int, int> arc_g;
    bool operator==(const GLink& o) const { return levels == o.levels && arc_g == o.arc_g; }
};

struct LinkNode {
    int gap = 0, pos = 0, sign = 1;
    int comp = 0, arc = 0;
    int next = -1;   // along the orientation
    int under = -1;  // level passed under on the way to next, or -1
};

struct LinkGraph {
    std::vector<std::vector<int>> at;  // at[gap][pos]
    std::vector<LinkNode> nodes;
    std::vector<int> eps;       // crossing sign per level, 0 for cups and caps
    std::vector<int> over_arc;  // per level, -1 for cups and caps
    std::vector<std::pair<int, int>> cross_comps;
    int ncomp = 0, narc = 0;
};

struct LinkError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Builds the node graph; components and arcs are numbered in order of first appearance.
LinkGraph link_graph(const GLink& l);

// Levels plus g per arc in first-appearance order; component and arc fields are recomputed.
GLink make_link(std::vector<GLevel> levels, const std::vector<int>& arc_g);
// Special flat structure extending the given values on (first-appearance) arcs, if any.
std::optional<GLink> with_flat_structure(std::vector<GLevel> levels, const CategoryData& c,
                                         const std::map<int, int>& fixed = {});

GLink parse_link(const std::string& text, const CategoryData& c);
std::string print_link(const GLink& l, const CategoryData& c);

// Wirtinger relation at every crossing and trivial framed longitude on every component.
AxiomReport check_flat_structure(const GLink& l, const CategoryData& c);
bool is_special(const GLink& l, const CategoryData& c);

// + nodes of a component where a coupon may sit; the first one is the default site
std::vector<int> coupon_sites(const LinkGraph& g, int comp);

// Colored diagram with one identity coupon per component; base[r] is the label at
// the coupon of component r, site[r] optionally overrides its node.
LevelDiagram canonical_coloring(const GLink& l, const std::vector<int>& base, const CategoryData& c,
                                const std::map<int, int>& site = {});

struct LinkFormTerm {
    std::vector<int> labels;
    CycNumber value;
};

struct LinkFormOptions {
    int threads = 1;
    std::map<int, int> site;
    bool keep_terms = false;
};

CycNumber link_form(const GLink& l, const CategoryData& c, const LinkFormOptions& opt = {},
                    std::vector<LinkFormTerm>* terms = nullptr);

struct LinkingData {
    std::vector<std::vector<mpq_class>> matrix;
    int sigma = 0, sigma_plus = 0, sigma_minus = 0;
    int count = 0;
};

int signature(std::vector<std::vector<mpq_class>> m, int* plus = nullptr, int* minus = nullptr);
LinkingData linking_data(const GLink& l);

struct SurgeryReport {
    CycNumber F, tau;
    int sigma = 0;
    int components = 0;
    std::vector<LinkFormTerm> terms;
};

SurgeryReport tau(const GLink& l, const CategoryData& c, const LinkFormOptions& opt = {});

// number of label tuples J_i of grade beta_i with prod act(alpha_i, J_i^-1) J_i = 1
long verlinde_rank(const CategoryData& c, const std::vector<int>& alphas, const std::vector<int>& betas);

enum class KirbyType { First, NegativeFR, Reverse, Conjugate, R2, KinkPair };

// First: distant unknot with framing sign at position pos (0 or the width) of gap
// NegativeFR: count strands from pos at gap
// Reverse: component comp; Conjugate: eta
// R2: strands pos, pos+1 at gap, first crossing a_over; KinkPair: strand pos at gap
struct KirbySpec {
    KirbyType type = KirbyType::First;
    int sign = 1;
    int gap = 0;
    int pos = 0;
    int count = 1;
    int comp = 0;
    int eta = 0;
    bool a_over = false;
};

struct KirbyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string kirby_name(const KirbySpec& k);
GLink kirby_move(const GLink& l, const CategoryData& c, const KirbySpec& k);

GLink random_special_link(const CategoryData& c, std::uint64_t seed, int max_components = 3, int depth = 12);

struct KirbyFuzzResult {
    long pairs = 0, moves = 0, failures = 0;
    std::map<std::string, long> counts;
    std::string first_failure;
};

KirbyFuzzResult kirby_fuzz(const CategoryData& c, std::uint64_t seed, int pairs, int steps, int threads = 1);

}  // namespace gcx

#pragma once

#include "gcx/diagram.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gcx {

// Crossings of strands with arbitrary orientations, written through the
// two elementary crossings plus cups and caps. Inputs (A, B) at (pos, pos+1),
// outputs (B', A') at the same positions.
//   P  = s+    (+,+) A under     N  = s-    (+,+) A over
//   P1 = s'+   (-,+) A over      N1 = s'-   (+,-) A under
//   P2 = s''+  (+,-) A over      N2 = s''-  (-,+) A under
//   P3 = s'''+ (-,-) A under     N3 = s'''- (-,-) A over
enum class CrossKind { P, N, P1, N1, P2, N2, P3, N3 };

struct CrossShape {
    int sa = 1, sb = 1;
    bool a_over = false;
};

// psi : from -> phi_h(to)
struct PsiType {
    int from = 0, h = 0, to = 0;
};

const std::vector<CrossKind>& all_cross_kinds();
CrossShape cross_shape(CrossKind k);
CrossKind cross_kind(int sa, int sb, bool a_over);
int cross_sign(CrossKind k);
CrossKind cross_inverse(CrossKind k);
std::string cross_name(CrossKind k);
// (B', A')
std::pair<int, int> cross_outputs(const CategoryData& c, CrossKind k, int a, int b);
PsiType cross_psi_type(const CategoryData& c, CrossKind k, int a, int b);
std::vector<Level> expand_cross(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi, int pos);
// the same crossing with the extra arcs turned the other way (P3, N3 only)
std::vector<Level> expand_cross_rotated(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi,
                                        int pos);
// index of the elementary crossing inside the expansion
int cross_inner_index(CrossKind k);
CycNumber cross_closed_form(const CategoryData& c, CrossKind k, int a, int b, const CycNumber& psi);

// Kinks on a + strand.
//   Tp  : psi: x' -> phi_|x|(x), x' = act(|x|, x)      value theta_x / psi
//   Tm  : psi: x -> phi_|x|(x'), x' = act(|x|^-1, x)   value psi / theta_x'
//   TpR, TmR: the same with the loop on the right.
enum class KinkKind { Tp, Tm, TpR, TmR };

const std::vector<KinkKind>& all_kink_kinds();
std::string kink_name(KinkKind k);
int kink_output(const CategoryData& c, KinkKind k, int x);
std::vector<Level> expand_kink(const CategoryData& c, KinkKind k, int x, const CycNumber& psi, int pos);
CycNumber kink_closed_form(const CategoryData& c, KinkKind k, int x, const CycNumber& psi);

}  // namespace gcx

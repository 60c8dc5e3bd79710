#include "gcx/fusion.hpp"

#include <stdexcept>

namespace gcx {

FusionElement FusionElement::zero(const CategoryData& c) {
    FusionElement f;
    f.coeffs.assign(c.nL(), c.zero());
    return f;
}

FusionElement FusionElement::basis(const CategoryData& c, int x) {
    FusionElement f = zero(c);
    f.coeffs[x] = c.one();
    f.grade = c.grade[x];
    return f;
}

FusionElement fusion_add(const FusionElement& a, const FusionElement& b) {
    if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("fusion: basis mismatch");
    FusionElement r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    if (a.grade != b.grade) r.grade.reset();
    return r;
}

FusionElement fusion_mul(const CategoryData& c, const FusionElement& a, const FusionElement& b) {
    if ((int)a.coeffs.size() != c.nL() || (int)b.coeffs.size() != c.nL())
        throw std::invalid_argument("fusion: basis mismatch");
    FusionElement r = FusionElement::zero(c);
    for (int x = 0; x < c.nL(); ++x) {
        if (a.coeffs[x].is_zero()) continue;
        for (int y = 0; y < c.nL(); ++y)
            if (!b.coeffs[y].is_zero()) r.coeffs[c.lmul(x, y)] += a.coeffs[x] * b.coeffs[y];
    }
    if (a.grade && b.grade) r.grade = c.gmul(*a.grade, *b.grade);
    return r;
}

FusionElement fusion_star(const CategoryData& c, const FusionElement& a) {
    FusionElement r = FusionElement::zero(c);
    for (int x = 0; x < c.nL(); ++x) r.coeffs[c.linv(x)] = a.coeffs[x];
    if (a.grade) r.grade = c.ginv(*a.grade);
    return r;
}

FusionElement fusion_conj(const CategoryData& c, int alpha, const FusionElement& a) {
    FusionElement r = FusionElement::zero(c);
    for (int x = 0; x < c.nL(); ++x) r.coeffs[c.act[alpha][x]] += a.coeffs[x];
    if (a.grade) r.grade = c.gmul(c.gmul(c.ginv(alpha), *a.grade), alpha);
    return r;
}

FusionElement omega(const CategoryData& c, int alpha) {
    FusionElement r = FusionElement::zero(c);
    for (int x : c.labels_of_grade(alpha)) r.coeffs[x] = c.dim[x];
    r.grade = alpha;
    return r;
}

int multiplicity(const CategoryData& c, const std::vector<int>& factors, int k) {
    int p = c.lunit();
    for (int x : factors) p = c.lmul(p, x);
    return p == k ? 1 : 0;
}

CycNumber determinant(Matrix m) {
    int n = (int)m.size();
    if (n == 0) return CycNumber(1, 1);
    int N = m[0][0].order();
    CycNumber det(N, 1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return CycNumber(N);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        CycNumber inv = m[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            CycNumber f = m[r][c] * inv;
            for (int k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
        }
    }
    return det;
}

ModularReport modular_report(const CategoryData& c) {
    ModularReport r;
    r.neutral = c.kernel_labels();
    r.delta_plus = c.zero();
    r.delta_minus = c.zero();
    r.global_dim = c.zero();
    for (int i : r.neutral) {
        std::vector<CycNumber> row;
        for (int j : r.neutral)
            row.push_back(c.dim[i] * c.dim[j] * c.neutral_braid(j, i) * c.neutral_braid(i, j));
        r.s_matrix.push_back(row);
        CycNumber d2 = c.dim[i] * c.dim[i];
        CycNumber v = c.neutral_twist(i);
        r.delta_plus += v * d2;
        r.delta_minus += v.inv() * d2;
        r.global_dim += d2;
    }
    r.det = determinant(r.s_matrix);
    r.invertible = !r.det.is_zero();
    return r;
}

AxiomReport check_graded_dims(const CategoryData& c) {
    AxiomReport r;
    CycNumber d1 = c.zero();
    for (int x : c.kernel_labels()) d1 += c.dim[x] * c.dim[x];
    for (int g = 0; g < c.nG(); ++g) {
        CycNumber s = c.zero();
        for (int x : c.labels_of_grade(g)) s += c.dim[x] * c.dim[x];
        r.expect("graded-dims", {c.group.names[g]}, s, d1);
    }
    if (c.has_rank) r.expect("rank-square", {"D"}, c.rankD * c.rankD, d1);
    // multiplicity numbers and dimension additivity over simples
    for (int x = 0; x < c.nL(); ++x)
        for (int y = 0; y < c.nL(); ++y) {
            CycNumber total = c.zero();
            for (int k = 0; k < c.nL(); ++k)
                if (multiplicity(c, {x, y}, k)) total += c.dim[k];
            r.expect("dim-multiplicity", {c.labels.names[x], c.labels.names[y]}, total, c.dim[x] * c.dim[y]);
        }
    r.sort();
    return r;
}

}  // namespace gcx

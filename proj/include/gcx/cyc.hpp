#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace gcx {

// Q(z) with z a primitive N-th root of unity, power basis 1, z, ..., z^(phi-1).
struct CycField {
    int n = 1;
    int phi = 1;
    std::vector<mpz_class> poly;                  // monic cyclotomic polynomial, poly[i] = coeff of x^i
    std::vector<std::vector<mpq_class>> powers;   // reduced z^k for k in [0, n)

    static const CycField& get(int n);
};

class CycNumber {
public:
    CycNumber();
    explicit CycNumber(int n);
    CycNumber(int n, long v);
    CycNumber(int n, const mpq_class& v);

    static CycNumber zeta(int n, long k);
    static CycNumber reduce(const std::vector<mpq_class>& raw, int n);
    static CycNumber parse(const std::string& text, int n);

    int order() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // q with this == q * z^k, if such a pair exists
    std::optional<std::pair<mpq_class, int>> monomial() const;

    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator-() const;
    CycNumber operator*(const CycNumber& o) const;
    CycNumber operator/(const CycNumber& o) const;
    CycNumber& operator+=(const CycNumber& o);
    CycNumber& operator*=(const CycNumber& o);
    bool operator==(const CycNumber& o) const;
    bool operator!=(const CycNumber& o) const { return !(*this == o); }
    bool operator<(const CycNumber& o) const;

    CycNumber inv() const;
    CycNumber conj() const;
    CycNumber pow(long e) const;

    std::string str() const;
    double re() const;
    double im() const;

private:
    int n_;
    std::vector<mpq_class> c_;
    void check_same(const CycNumber& o) const;
};

CycNumber cyc_reduce(const std::vector<mpq_class>& raw, int n);
CycNumber cyc_mul(const CycNumber& a, const CycNumber& b);
CycNumber cyc_add(const CycNumber& a, const CycNumber& b);
CycNumber cyc_neg(const CycNumber& a);
CycNumber cyc_inv(const CycNumber& a);
CycNumber cyc_conj(const CycNumber& a);

// Field element with its monomial form cached.
struct Factor {
    CycNumber v;
    bool mono = false;
    mpq_class q;
    int k = 0;

    Factor() = default;
    Factor(const CycNumber& x);
};

// Running product of field elements; monomial factors stay cheap.
class Prod {
public:
    explicit Prod(int n);
    void mul(const CycNumber& x);
    void div(const CycNumber& x);
    void mul(const Factor& x);
    void div(const Factor& x);
    void mul_mono(const mpq_class& q, int k);
    CycNumber value() const;
    bool zero() const { return zero_; }

private:
    int n_;
    mpq_class q_;
    long k_ = 0;
    bool zero_ = false;
    bool general_ = false;
    CycNumber g_;
};

}  // namespace gcx

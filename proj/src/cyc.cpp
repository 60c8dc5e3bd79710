#include "gcx/cyc.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gcx {

namespace {

using Poly = std::vector<mpz_class>;

Poly poly_div_exact(const Poly& num, const Poly& den) {
    Poly r = num;
    int dn = (int)den.size() - 1;
    int nn = (int)num.size() - 1;
    Poly q(nn - dn + 1);
    for (int i = nn; i >= dn; --i) {
        mpz_class c = r[i] / den[dn];
        q[i - dn] = c;
        for (int j = 0; j <= dn; ++j) r[i - dn + j] -= c * den[j];
    }
    return q;
}

Poly cyclotomic(int n, std::map<int, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic(d, memo));
    memo[n] = p;
    return p;
}

CycField build_field(int n) {
    std::map<int, Poly> memo;
    CycField f;
    f.n = n;
    f.poly = cyclotomic(n, memo);
    f.phi = (int)f.poly.size() - 1;
    std::vector<mpq_class> cur(f.phi);
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
        f.powers.push_back(cur);
        // multiply by z
        std::vector<mpq_class> nxt(f.phi);
        mpq_class top = cur[f.phi - 1];
        for (int i = f.phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (int i = 0; i < f.phi; ++i) nxt[i] -= top * mpq_class(f.poly[i]);
        cur = nxt;
    }
    return f;
}

long mod(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

const CycField& CycField::get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycField>> cache;
    if (n < 1) throw std::invalid_argument("root order must be >= 1");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<CycField>(build_field(n))).first;
    return *it->second;
}

CycNumber::CycNumber() : CycNumber(1) {}

CycNumber::CycNumber(int n) : n_(n), c_(CycField::get(n).phi) {}

CycNumber::CycNumber(int n, long v) : CycNumber(n) { c_[0] = v; }

CycNumber::CycNumber(int n, const mpq_class& v) : CycNumber(n) {
    c_[0] = v;
    c_[0].canonicalize();
}

CycNumber CycNumber::zeta(int n, long k) {
    const CycField& f = CycField::get(n);
    CycNumber r(n);
    r.c_ = f.powers[mod(k, n)];
    return r;
}

CycNumber CycNumber::reduce(const std::vector<mpq_class>& raw, int n) {
    const CycField& f = CycField::get(n);
    CycNumber r(n);
    for (size_t k = 0; k < raw.size(); ++k) {
        if (raw[k] == 0) continue;
        const auto& p = f.powers[k % n];
        for (int i = 0; i < f.phi; ++i)
            if (p[i] != 0) r.c_[i] += raw[k] * p[i];
    }
    return r;
}

void CycNumber::check_same(const CycNumber& o) const {
    if (n_ != o.n_) throw std::invalid_argument("root order mismatch");
}

bool CycNumber::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycNumber::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool CycNumber::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::optional<std::pair<mpq_class, int>> CycNumber::monomial() const {
    if (is_zero()) return std::nullopt;
    const CycField& f = CycField::get(n_);
    for (int k = 0; k < n_; ++k) {
        const auto& p = f.powers[k];
        int lead = -1;
        for (int i = 0; i < f.phi; ++i)
            if (p[i] != 0) {
                lead = i;
                break;
            }
        mpq_class q = c_[lead] / p[lead];
        if (q == 0) continue;
        bool ok = true;
        for (int i = 0; i < f.phi && ok; ++i) ok = (c_[i] == q * p[i]);
        if (ok) return std::make_pair(q, k);
    }
    return std::nullopt;
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    CycNumber r = *this;
    r += o;
    return r;
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
    check_same(o);
    CycNumber r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    check_same(o);
    const CycField& f = CycField::get(n_);
    int phi = f.phi;
    if (phi == 1) {
        CycNumber r(n_);
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    std::vector<mpq_class> raw(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < phi; ++j)
            if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
    }
    CycNumber r(n_);
    for (int i = 0; i < phi; ++i) r.c_[i] = raw[i];
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (raw[k] == 0) continue;
        const auto& p = f.powers[k % n_];
        for (int i = 0; i < phi; ++i)
            if (p[i] != 0) r.c_[i] += raw[k] * p[i];
    }
    return r;
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
    *this = *this * o;
    return *this;
}

CycNumber CycNumber::operator/(const CycNumber& o) const { return *this * o.inv(); }

bool CycNumber::operator==(const CycNumber& o) const { return n_ == o.n_ && c_ == o.c_; }

bool CycNumber::operator<(const CycNumber& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

CycNumber CycNumber::inv() const {
    if (is_zero()) throw std::domain_error("division by zero");
    auto m = monomial();
    if (m) {
        CycNumber r = zeta(n_, -m->second);
        mpq_class qi = 1 / m->first;
        for (auto& x : r.c_) x *= qi;
        return r;
    }
    // solve M b = e0 where M is multiplication by *this
    const CycField& f = CycField::get(n_);
    int phi = f.phi;
    std::vector<std::vector<mpq_class>> a(phi, std::vector<mpq_class>(phi + 1));
    for (int j = 0; j < phi; ++j) {
        CycNumber col = *this * zeta(n_, j);
        for (int i = 0; i < phi; ++i) a[i][j] = col.c_[i];
    }
    a[0][phi] = 1;
    for (int c = 0; c < phi; ++c) {
        int piv = c;
        while (a[piv][c] == 0) ++piv;
        std::swap(a[piv], a[c]);
        mpq_class d = a[c][c];
        for (int k = c; k <= phi; ++k) a[c][k] /= d;
        for (int r = 0; r < phi; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class m2 = a[r][c];
            for (int k = c; k <= phi; ++k) a[r][k] -= m2 * a[c][k];
        }
    }
    CycNumber r(n_);
    for (int i = 0; i < phi; ++i) r.c_[i] = a[i][phi];
    return r;
}

CycNumber CycNumber::conj() const {
    std::vector<mpq_class> raw(n_);
    for (size_t i = 0; i < c_.size(); ++i) raw[mod(-(long)i, n_)] += c_[i];
    return reduce(raw, n_);
}

CycNumber CycNumber::pow(long e) const {
    CycNumber base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    CycNumber r(n_, 1);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::string CycNumber::str() const {
    mpz_class den = 1;
    for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        mpz_class a = c_[i].get_num() * (den / c_[i].get_den());
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        mpz_class aa = abs(a);
        os << aa.get_str();
        if (i > 0) os << "*z^" << i;
        first = false;
    }
    if (first) return "0";
    if (den != 1) os << " (den " << den.get_str() << ")";
    return os.str();
}

double CycNumber::re() const {
    double s = 0;
    for (size_t i = 0; i < c_.size(); ++i) s += c_[i].get_d() * std::cos(2 * M_PI * i / n_);
    return s;
}

double CycNumber::im() const {
    double s = 0;
    for (size_t i = 0; i < c_.size(); ++i) s += c_[i].get_d() * std::sin(2 * M_PI * i / n_);
    return s;
}

namespace {

struct Lexer {
    const std::string& s;
    size_t p = 0;
    void ws() {
        while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
    }
    bool eat(char c) {
        ws();
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        ws();
        return p < s.size() && std::isdigit((unsigned char)s[p]);
    }
    mpz_class integer() {
        ws();
        size_t b = p;
        while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
        if (b == p) throw std::invalid_argument("scalar: expected integer at '" + s.substr(b) + "'");
        return mpz_class(s.substr(b, p - b));
    }
    bool done() {
        ws();
        return p == s.size();
    }
};

}  // namespace

CycNumber CycNumber::parse(const std::string& text, int n) {
    Lexer lx{text};
    std::vector<mpq_class> raw(n);
    bool first = true;
    bool any = false;
    while (!lx.done()) {
        lx.ws();
        if (lx.s.compare(lx.p, 4, "(den") == 0) break;
        int sign = 1;
        if (lx.eat('+')) {
            if (first) throw std::invalid_argument("scalar: leading '+'");
        } else if (lx.eat('-')) {
            sign = -1;
        } else if (!first) {
            throw std::invalid_argument("scalar: expected '+' or '-' in '" + text + "'");
        }
        mpq_class coef = 1;
        bool has_coef = false;
        if (lx.peek_digit()) {
            coef = lx.integer();
            has_coef = true;
            if (lx.eat('/')) {
                mpz_class d = lx.integer();
                if (d == 0) throw std::invalid_argument("scalar: zero denominator");
                coef /= d;
            }
        }
        long e = 0;
        bool has_z = false;
        if (has_coef && lx.eat('*')) {
            if (!lx.eat('z')) throw std::invalid_argument("scalar: expected 'z' after '*'");
            has_z = true;
        } else if (!has_coef) {
            if (!lx.eat('z')) throw std::invalid_argument("scalar: expected term in '" + text + "'");
            has_z = true;
        }
        if (has_z) {
            e = 1;
            if (lx.eat('^')) {
                mpz_class ez = lx.integer();
                if (ez >= n) throw std::invalid_argument("scalar: exponent " + ez.get_str() + " >= root order");
                e = ez.get_si();
            }
            if (e >= n) throw std::invalid_argument("scalar: exponent >= root order");
        }
        raw[e] += sign * coef;
        first = false;
        any = true;
    }
    if (!any) throw std::invalid_argument("scalar: empty expression");
    mpz_class den = 1;
    if (!lx.done()) {
        lx.p += 4;
        den = lx.integer();
        if (!lx.eat(')')) throw std::invalid_argument("scalar: expected ')'");
        if (den == 0) throw std::invalid_argument("scalar: zero denominator");
        if (!lx.done()) throw std::invalid_argument("scalar: trailing text in '" + text + "'");
    }
    for (auto& x : raw) x /= den;
    return reduce(raw, n);
}

CycNumber cyc_reduce(const std::vector<mpq_class>& raw, int n) { return CycNumber::reduce(raw, n); }
CycNumber cyc_mul(const CycNumber& a, const CycNumber& b) { return a * b; }
CycNumber cyc_add(const CycNumber& a, const CycNumber& b) { return a + b; }
CycNumber cyc_neg(const CycNumber& a) { return -a; }
CycNumber cyc_inv(const CycNumber& a) { return a.inv(); }
CycNumber cyc_conj(const CycNumber& a) { return a.conj(); }

Factor::Factor(const CycNumber& x) : v(x) {
    auto m = x.monomial();
    if (m) {
        mono = true;
        q = m->first;
        k = m->second;
    }
}

void Prod::mul(const Factor& x) {
    if (x.mono) {
        mul_mono(x.q, x.k);
        return;
    }
    mul(x.v);
}

void Prod::div(const Factor& x) {
    if (x.mono) {
        mul_mono(1 / x.q, -x.k);
        return;
    }
    div(x.v);
}

Prod::Prod(int n) : n_(n), q_(1), g_(n, 1) {}

void Prod::mul_mono(const mpq_class& q, int k) {
    q_ *= q;
    k_ = mod(k_ + k, n_);
    if (q == 0) zero_ = true;
}

void Prod::mul(const CycNumber& x) {
    if (x.is_zero()) {
        zero_ = true;
        return;
    }
    auto m = x.monomial();
    if (m) {
        mul_mono(m->first, m->second);
        return;
    }
    g_ *= x;
    general_ = true;
}

void Prod::div(const CycNumber& x) {
    if (x.is_zero()) throw std::domain_error("division by zero");
    auto m = x.monomial();
    if (m) {
        mul_mono(1 / m->first, -m->second);
        return;
    }
    g_ *= x.inv();
    general_ = true;
}

CycNumber Prod::value() const {
    if (zero_) return CycNumber(n_);
    CycNumber r = CycNumber::zeta(n_, k_);
    CycNumber q(n_, q_);
    r = r * q;
    if (general_) r = r * g_;
    return r;
}

}  // namespace gcx

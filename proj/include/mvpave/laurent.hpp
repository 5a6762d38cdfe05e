#ifndef MVPAVE_LAURENT_HPP
#define MVPAVE_LAURENT_HPP

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mvpave {

// Sentinel valuation of an exact zero, also used as "infinite precision".
inline constexpr int kInfVal = INT_MAX / 4;
inline constexpr int kDefaultPrecision = 64;

inline int sat_add(int a, int b) {
    if (a >= kInfVal || b >= kInfVal) return kInfVal;
    long long s = static_cast<long long>(a) + b;
    if (s >= kInfVal) return kInfVal;
    return static_cast<int>(s);
}

namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw division_by_zero("zero coefficient has no inverse");
    return pow(a, p - 2, p);
}
inline std::uint32_t reduce(long long a, std::uint32_t p) {
    long long r = a % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

} // namespace modp

class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2) : p_(p) {
        if (!is_prime(p)) throw precondition_violation("modulus " + std::to_string(p) + " is not prime");
    }
    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
    std::uint32_t p() const { return p_; }
    bool operator==(const PrimeField &o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

// Truncated Laurent series over F_p. The value is sum c_k eps^(lead+k), known
// modulo eps^prec unless the exact flag is set.
class LaurentSeries {
public:
    using coeff_t = std::uint32_t;

    LaurentSeries() = default;

    static LaurentSeries zero(std::uint32_t p) {
        LaurentSeries r;
        r.p_ = p;
        return r;
    }
    // O(eps^prec): zero as far as is known.
    static LaurentSeries zero_mod(std::uint32_t p, int prec) {
        LaurentSeries r;
        r.p_ = p;
        r.exact_ = prec >= kInfVal;
        r.prec_ = prec;
        return r;
    }
    static LaurentSeries monomial(std::uint32_t p, long long c, int e) {
        return polynomial(p, e, {modp::reduce(c, p)});
    }
    static LaurentSeries constant(std::uint32_t p, long long c) { return monomial(p, c, 0); }
    static LaurentSeries one(std::uint32_t p) { return constant(p, 1); }
    static LaurentSeries eps(std::uint32_t p, int e) { return monomial(p, 1, e); }

    static LaurentSeries polynomial(std::uint32_t p, int lead, std::vector<coeff_t> c) {
        LaurentSeries r;
        r.p_ = p;
        r.lead_ = lead;
        r.c_ = std::move(c);
        for (auto &x : r.c_) x %= p;
        r.normalize();
        return r;
    }
    static LaurentSeries series(std::uint32_t p, int lead, std::vector<coeff_t> c, int prec) {
        LaurentSeries r;
        r.p_ = p;
        r.lead_ = lead;
        r.c_ = std::move(c);
        for (auto &x : r.c_) x %= p;
        r.exact_ = prec >= kInfVal;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    std::uint32_t prime() const { return p_; }
    bool exact() const { return exact_; }
    int prec() const { return exact_ ? kInfVal : prec_; }
    int lead() const { return lead_; }
    const std::vector<coeff_t> &coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return exact_ && c_.empty(); }
    // Index one past the last stored exponent.
    int end() const { return lead_ + static_cast<int>(c_.size()); }

    int val() const {
        if (!c_.empty()) return lead_;
        if (exact_) return kInfVal;
        throw precision_loss("valuation undetermined below eps^" + std::to_string(prec_));
    }
    // Never throws: lead when nonzero, else the precision.
    int val_bound() const { return c_.empty() ? prec() : lead_; }

    coeff_t coeff(int e) const {
        if (e < lead_ || e >= end()) return 0;
        return c_[static_cast<std::size_t>(e - lead_)];
    }
    coeff_t lead_coeff() const { return c_.empty() ? 0 : c_.front(); }

    LaurentSeries truncated(int N) const {
        if (N >= prec()) return *this;
        LaurentSeries r = *this;
        r.exact_ = false;
        r.prec_ = N;
        r.normalize();
        return r;
    }
    LaurentSeries shifted(int k) const {
        LaurentSeries r = *this;
        r.lead_ += k;
        if (!r.exact_) r.prec_ = sat_add(r.prec_, k);
        if (r.c_.empty()) r.lead_ = 0;
        return r;
    }
    // Exact polynomial made of the terms with exponent < N.
    LaurentSeries low_part(int N) const {
        if (prec() < N) throw precision_loss("need precision " + std::to_string(N));
        std::vector<coeff_t> c;
        for (int e = lead_; e < std::min(N, end()); ++e) c.push_back(coeff(e));
        return polynomial(p_, lead_, std::move(c));
    }
    // (x - low_part(N)) * eps^-N.
    LaurentSeries high_part(int N) const {
        std::vector<coeff_t> c;
        int from = std::max(N, lead_);
        for (int e = from; e < end(); ++e) c.push_back(coeff(e));
        int pr = exact_ ? kInfVal : prec_ - N;
        return series(p_, from - N, std::move(c), pr);
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto &x : r.c_) x = modp::neg(x, p_);
        return r;
    }
    friend LaurentSeries operator+(const LaurentSeries &a, const LaurentSeries &b) { return combine(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries &a, const LaurentSeries &b) { return combine(a, b, true); }
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b) {
        check_same(a, b);
        if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.p_);
        int P = std::min(sat_add(a.val_bound(), b.prec()), sat_add(b.val_bound(), a.prec()));
        if (a.is_zero() || b.is_zero()) return zero_mod(a.p_, P);
        int lead = a.lead_ + b.lead_;
        long long len = static_cast<long long>(a.c_.size() + b.c_.size() - 1);
        if (P < kInfVal) len = std::min<long long>(len, static_cast<long long>(P) - lead);
        if (len <= 0) return zero_mod(a.p_, P);
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(len), 0);
        const std::uint64_t p = a.p_;
        const std::uint64_t limit = UINT64_MAX - p * p;
        for (std::size_t i = 0; i < a.c_.size() && static_cast<long long>(i) < len; ++i) {
            if (a.c_[i] == 0) continue;
            std::uint64_t ai = a.c_[i];
            std::size_t jmax = std::min<std::size_t>(b.c_.size(), static_cast<std::size_t>(len) - i);
            for (std::size_t j = 0; j < jmax; ++j) {
                std::uint64_t &s = acc[i + j];
                s += ai * b.c_[j];
                if (s > limit) s %= p;
            }
        }
        std::vector<coeff_t> c(acc.size());
        for (std::size_t k = 0; k < acc.size(); ++k) c[k] = static_cast<coeff_t>(acc[k] % p);
        return series(a.p_, lead, std::move(c), P);
    }
    LaurentSeries &operator+=(const LaurentSeries &o) { return *this = *this + o; }
    LaurentSeries &operator-=(const LaurentSeries &o) { return *this = *this - o; }
    LaurentSeries &operator*=(const LaurentSeries &o) { return *this = *this * o; }

    // Scalar multiple by an element of F_p.
    LaurentSeries scaled(coeff_t s) const {
        s %= p_;
        if (s == 0) return zero(p_);
        LaurentSeries r = *this;
        for (auto &x : r.c_) x = modp::mul(x, s, p_);
        return r;
    }

    // Same stored data and same precision.
    bool identical(const LaurentSeries &o) const {
        return p_ == o.p_ && exact_ == o.exact_ && (exact_ || prec_ == o.prec_) && c_ == o.c_ &&
               (c_.empty() || lead_ == o.lead_);
    }
    // Agreement modulo the smaller of the two precisions.
    bool agrees(const LaurentSeries &o) const {
        LaurentSeries d = *this - o;
        return d.is_zero();
    }

    std::string key() const {
        std::string s = std::to_string(lead_) + ":";
        for (auto x : c_) s += std::to_string(x) + ",";
        s += exact_ ? "x" : ("p" + std::to_string(prec_));
        return s;
    }

private:
    static void check_same(const LaurentSeries &a, const LaurentSeries &b) {
        if (a.p_ != b.p_) throw precondition_violation("series over different prime fields");
    }
    static LaurentSeries combine(const LaurentSeries &a, const LaurentSeries &b, bool subtract) {
        check_same(a, b);
        int P = std::min(a.prec(), b.prec());
        int lo = INT_MAX, hi = INT_MIN;
        if (!a.c_.empty()) { lo = std::min(lo, a.lead_); hi = std::max(hi, a.end()); }
        if (!b.c_.empty()) { lo = std::min(lo, b.lead_); hi = std::max(hi, b.end()); }
        if (lo == INT_MAX) return zero_mod(a.p_, P);
        hi = std::min(hi, P);
        if (hi <= lo) return zero_mod(a.p_, P);
        std::vector<coeff_t> c(static_cast<std::size_t>(hi - lo));
        for (int e = lo; e < hi; ++e) {
            coeff_t x = a.coeff(e), y = b.coeff(e);
            c[static_cast<std::size_t>(e - lo)] = subtract ? modp::sub(x, y, a.p_) : modp::add(x, y, a.p_);
        }
        return series(a.p_, lo, std::move(c), P);
    }
    void normalize() {
        if (!exact_) {
            long long keep = static_cast<long long>(prec_) - lead_;
            if (keep < static_cast<long long>(c_.size())) c_.resize(keep > 0 ? static_cast<std::size_t>(keep) : 0);
        }
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        if (k) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
            lead_ += static_cast<int>(k);
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) lead_ = 0;
    }

    std::uint32_t p_ = 2;
    int lead_ = 0;
    std::vector<coeff_t> c_;
    int prec_ = kInfVal;
    bool exact_ = true;
};

// Inverse to relative precision R; an exact monomial inverts exactly.
inline LaurentSeries inv(const LaurentSeries &x, int R = kDefaultPrecision) {
    const std::uint32_t p = x.prime();
    if (x.is_exact_zero()) throw division_by_zero("inverse of exact zero");
    if (x.is_zero()) throw precision_loss("inverse of a value that is zero up to precision");
    const int v = x.lead();
    const auto &u = x.coeffs();
    if (x.exact() && u.size() == 1) return LaurentSeries::monomial(p, modp::inv(u[0], p), -v);
    const int r = x.exact() ? R : x.prec() - v;
    std::vector<LaurentSeries::coeff_t> w(static_cast<std::size_t>(r), 0);
    const std::uint32_t u0inv = modp::inv(u[0], p);
    w[0] = u0inv;
    for (int k = 1; k < r; ++k) {
        std::uint64_t s = 0;
        int imax = std::min<int>(k, static_cast<int>(u.size()) - 1);
        for (int i = 1; i <= imax; ++i) s = (s + static_cast<std::uint64_t>(u[i]) * w[k - i]) % p;
        w[k] = modp::mul(modp::neg(static_cast<std::uint32_t>(s), p), u0inv, p);
    }
    return LaurentSeries::series(p, -v, std::move(w), -v + r);
}

inline LaurentSeries operator/(const LaurentSeries &a, const LaurentSeries &b) { return a * inv(b); }

// Valuation n exactly, nonzero leading coefficient, uniform tail up to eps^N.
template <class Rng>
LaurentSeries random_with_val(int n, std::uint32_t p, Rng &rng, int N = kDefaultPrecision) {
    if (N <= n) throw precondition_violation("working precision must exceed the valuation");
    std::uniform_int_distribution<std::uint32_t> lead(1, p - 1), any(0, p - 1);
    std::vector<LaurentSeries::coeff_t> c(static_cast<std::size_t>(N - n));
    c[0] = lead(rng);
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = any(rng);
    return LaurentSeries::series(p, n, std::move(c), N);
}

// Exact polynomial with uniform coefficients on exponents [lo, hi).
template <class Rng>
LaurentSeries random_poly(int lo, int hi, std::uint32_t p, Rng &rng) {
    std::uniform_int_distribution<std::uint32_t> any(0, p - 1);
    std::vector<LaurentSeries::coeff_t> c;
    for (int e = lo; e < hi; ++e) c.push_back(any(rng));
    return LaurentSeries::polynomial(p, lo, std::move(c));
}

// Minimum of several valuations, refusing to guess when an undetermined
// entry could still be the minimum.
inline int min_val(const std::vector<LaurentSeries> &xs) {
    int known = kInfVal, unknown = kInfVal;
    for (const auto &x : xs) {
        if (!x.is_zero()) known = std::min(known, x.lead());
        else if (!x.exact()) unknown = std::min(unknown, x.prec());
    }
    if (unknown < kInfVal && unknown <= known) throw precision_loss("minimum valuation undetermined");
    return known;
}

using Vec3 = std::array<int, 3>;

// 3x3 matrix over F_p((eps)).
class Matrix3 {
public:
    Matrix3() = default;
    explicit Matrix3(std::uint32_t p) {
        for (auto &x : a_) x = LaurentSeries::zero(p);
    }
    static Matrix3 identity(std::uint32_t p) {
        Matrix3 m(p);
        for (int i = 0; i < 3; ++i) m(i, i) = LaurentSeries::one(p);
        return m;
    }
    static Matrix3 diagonal(std::uint32_t p, const Vec3 &e) {
        Matrix3 m(p);
        for (int i = 0; i < 3; ++i) m(i, i) = LaurentSeries::eps(p, e[i]);
        return m;
    }
    // Elementary unipotent 1 + t E_ij.
    static Matrix3 elementary(int i, int j, const LaurentSeries &t) {
        Matrix3 m = identity(t.prime());
        m(i, j) = t;
        return m;
    }

    LaurentSeries &operator()(int i, int j) { return a_[static_cast<std::size_t>(3 * i + j)]; }
    const LaurentSeries &operator()(int i, int j) const { return a_[static_cast<std::size_t>(3 * i + j)]; }
    std::uint32_t prime() const { return a_[0].prime(); }

    friend Matrix3 operator*(const Matrix3 &x, const Matrix3 &y) {
        Matrix3 r(x.prime());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                LaurentSeries s = LaurentSeries::zero(x.prime());
                for (int k = 0; k < 3; ++k) {
                    if (x(i, k).is_exact_zero() || y(k, j).is_exact_zero()) continue;
                    s += x(i, k) * y(k, j);
                }
                r(i, j) = s;
            }
        return r;
    }
    Matrix3 transpose() const {
        Matrix3 r(prime());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    bool identical(const Matrix3 &o) const {
        for (std::size_t k = 0; k < 9; ++k)
            if (!a_[k].identical(o.a_[k])) return false;
        return true;
    }
    bool agrees(const Matrix3 &o) const {
        for (std::size_t k = 0; k < 9; ++k)
            if (!a_[k].agrees(o.a_[k])) return false;
        return true;
    }

private:
    std::array<LaurentSeries, 9> a_;
};

// Determinant of the submatrix on the given rows and columns (same length).
inline LaurentSeries minor(const Matrix3 &g, const std::vector<int> &rows, const std::vector<int> &cols) {
    if (rows.size() != cols.size()) throw precondition_violation("minor needs |rows| = |cols|");
    const std::uint32_t p = g.prime();
    switch (rows.size()) {
    case 0:
        return LaurentSeries::one(p);
    case 1:
        return g(rows[0], cols[0]);
    case 2:
        return g(rows[0], cols[0]) * g(rows[1], cols[1]) - g(rows[0], cols[1]) * g(rows[1], cols[0]);
    case 3: {
        LaurentSeries s = LaurentSeries::zero(p);
        for (int j = 0; j < 3; ++j) {
            std::vector<int> r{rows[1], rows[2]}, c;
            for (int k = 0; k < 3; ++k)
                if (k != j) c.push_back(cols[static_cast<std::size_t>(k)]);
            LaurentSeries t = g(rows[0], cols[static_cast<std::size_t>(j)]) * minor(g, r, c);
            s = (j % 2 == 0) ? s + t : s - t;
        }
        return s;
    }
    default:
        throw precondition_violation("minor size out of range");
    }
}

inline LaurentSeries det(const Matrix3 &g) { return minor(g, {0, 1, 2}, {0, 1, 2}); }

inline Matrix3 adjugate(const Matrix3 &g) {
    Matrix3 r(g.prime());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < 3; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            LaurentSeries m = minor(g, rows, cols);
            r(i, j) = ((i + j) % 2 == 0) ? m : -m;
        }
    return r;
}

inline Matrix3 inverse(const Matrix3 &g) {
    LaurentSeries d = det(g);
    if (d.is_exact_zero()) throw singular_matrix("determinant is exactly zero");
    LaurentSeries di = inv(d);
    Matrix3 a = adjugate(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = a(i, j) * di;
    return a;
}

} // namespace mvpave

#endif

#ifndef MVPAVE_GRASS_HPP
#define MVPAVE_GRASS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "mvcomb.hpp"
#include "rootdata.hpp"

namespace mvpave {

// Point gK of GL3(F)/GL3(O) in lower column-Hermite form: h lower triangular,
// h_jj = eps^{d_j}, h_ij (i > j) an exact polynomial with exponents < d_i.
class GrassPoint {
public:
    GrassPoint() = default;

    const Matrix3 &h() const { return h_; }
    const Vec3 &d() const { return d_; }
    int nu() const { return d_[0] + d_[1] + d_[2]; }
    std::uint32_t prime() const { return h_.prime(); }
    const std::string &key() const { return key_; }

    bool operator==(const GrassPoint &o) const { return key_ == o.key_; }
    bool operator!=(const GrassPoint &o) const { return key_ != o.key_; }
    bool operator<(const GrassPoint &o) const { return key_ < o.key_; }

    // Assemble from canonical data; the entries are reduced but not otherwise checked.
    static GrassPoint from_canonical(std::uint32_t p, const Vec3 &d, const LaurentSeries &h10, const LaurentSeries &h20,
                                     const LaurentSeries &h21) {
        GrassPoint x;
        x.d_ = d;
        x.h_ = Matrix3::diagonal(p, d);
        x.h_(1, 0) = h10.low_part(d[1]);
        x.h_(2, 0) = h20.low_part(d[2]);
        x.h_(2, 1) = h21.low_part(d[2]);
        x.make_key();
        return x;
    }
    static GrassPoint torus(std::uint32_t p, const Vec3 &nu) {
        LaurentSeries z = LaurentSeries::zero(p);
        return from_canonical(p, nu, z, z, z);
    }

private:
    void make_key() {
        std::string s = std::to_string(d_[0]) + "," + std::to_string(d_[1]) + "," + std::to_string(d_[2]);
        for (auto [i, j] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) s += "|" + h_(i, j).key();
        key_ = s;
    }

    Matrix3 h_;
    Vec3 d_{0, 0, 0};
    std::string key_;
};

namespace detail {

inline void swap_cols(Matrix3 &m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < 3; ++i) std::swap(m(i, a), m(i, b));
}

// col_dst -= a * col_src
inline void axpy_col(Matrix3 &m, int dst, int src, const LaurentSeries &a) {
    for (int i = 0; i < 3; ++i)
        if (!m(i, src).is_exact_zero()) m(i, dst) -= a * m(i, src);
}

} // namespace detail

// Right O-column reduction to the lower Hermite form.
inline GrassPoint canonicalize_point(Matrix3 m, int rel_prec = kDefaultPrecision) {
    const std::uint32_t p = m.prime();
    Vec3 d{};
    for (int r = 0; r < 3; ++r) {
        std::vector<LaurentSeries> row;
        for (int c = r; c < 3; ++c) row.push_back(m(r, c));
        bool all_zero = std::all_of(row.begin(), row.end(), [](const LaurentSeries &x) { return x.is_exact_zero(); });
        if (all_zero) throw singular_matrix("row " + std::to_string(r + 1) + " vanishes on the remaining columns");
        int v = min_val(row);
        int piv = r;
        while (m(r, piv).is_zero() || m(r, piv).lead() != v) ++piv;
        detail::swap_cols(m, r, piv);
        LaurentSeries unit = m(r, r).shifted(-v);
        LaurentSeries uinv = inv(unit, rel_prec);
        for (int i = r + 1; i < 3; ++i) m(i, r) = m(i, r) * uinv;
        m(r, r) = LaurentSeries::eps(p, v);
        d[static_cast<std::size_t>(r)] = v;
        for (int c = r + 1; c < 3; ++c) {
            if (m(r, c).is_exact_zero()) continue;
            LaurentSeries q = m(r, c).shifted(-v);
            m(r, c) = LaurentSeries::zero(p);
            for (int i = r + 1; i < 3; ++i) m(i, c) -= q * m(i, r);
        }
    }
    for (int j = 0; j < 2; ++j)
        for (int i = j + 1; i < 3; ++i) {
            int di = d[static_cast<std::size_t>(i)];
            LaurentSeries a = m(i, j).high_part(di);
            m(i, j) = m(i, j).low_part(di);
            for (int k = i + 1; k < 3; ++k) m(k, j) -= a * m(k, i);
        }
    return GrassPoint::from_canonical(p, d, m(1, 0), m(2, 0), m(2, 1));
}

inline Matrix3 antidiagonal(std::uint32_t p) {
    Matrix3 a(p);
    for (int i = 0; i < 3; ++i) a(i, 2 - i) = LaurentSeries::one(p);
    return a;
}

// Upper-triangular representative of the same coset; its diagonal exponents are H_{B0}.
inline Matrix3 upper_form(const GrassPoint &x) {
    Matrix3 P = antidiagonal(x.prime());
    return P * canonicalize_point(P * x.h()).h() * P;
}

inline Vec3 upper_exponents(const GrassPoint &x) {
    Matrix3 u = upper_form(x);
    return {u(0, 0).val(), u(1, 1).val(), u(2, 2).val()};
}

// Exact inverse of the canonical representative by forward substitution.
inline Matrix3 inverse_rep(const GrassPoint &x) {
    const std::uint32_t p = x.prime();
    const Matrix3 &h = x.h();
    Matrix3 r(p);
    for (int i = 0; i < 3; ++i) {
        LaurentSeries di = LaurentSeries::eps(p, -x.d()[static_cast<std::size_t>(i)]);
        r(i, i) = di;
        for (int j = 0; j < i; ++j) {
            LaurentSeries s = LaurentSeries::zero(p);
            for (int k = j; k < i; ++k) s += h(i, k) * r(k, j);
            r(i, j) = -(s * di);
        }
    }
    return r;
}

inline std::vector<int> columns_of(const ChamberWeight &S) {
    std::vector<int> c;
    for (int k = 0; k < 3; ++k)
        if (S.contains(k)) c.push_back(k);
    return c;
}

inline std::vector<std::vector<int>> subsets_of_size(int k) {
    std::vector<std::vector<int>> out;
    for (unsigned m = 0; m < 8; ++m)
        if (__builtin_popcount(m) == k) {
            std::vector<int> s;
            for (int i = 0; i < 3; ++i)
                if ((m >> i) & 1u) s.push_back(i);
            out.push_back(s);
        }
    return out;
}

// Minor on the first |S| rows and the column set S.
inline LaurentSeries Delta(const Matrix3 &g, const ChamberWeight &S) {
    std::vector<int> cols = columns_of(S), rows;
    for (int k = 0; k < static_cast<int>(cols.size()); ++k) rows.push_back(k);
    return minor(g, rows, cols);
}

// val(g^{-1} v_S): minimum over row sets J of val det(g^{-1}[J, S]).
inline int D_of_inverse(const Matrix3 &ginv, const ChamberWeight &S) {
    std::vector<int> cols = columns_of(S);
    std::vector<LaurentSeries> ms;
    for (const auto &J : subsets_of_size(static_cast<int>(cols.size()))) ms.push_back(minor(ginv, J, cols));
    return min_val(ms);
}

inline int D(const GrassPoint &x, const ChamberWeight &S) { return D_of_inverse(inverse_rep(x), S); }

// Indexed as all_chamber_weights().
inline std::array<int, 6> d_profile(const GrassPoint &x) {
    Matrix3 xi = inverse_rep(x);
    std::array<int, 6> r{};
    for (const auto &S : all_chamber_weights()) r[static_cast<std::size_t>(S.index())] = D_of_inverse(xi, S);
    return r;
}

inline GTFamily ec_from_profile(const std::array<int, 6> &D, int nu) {
    std::array<int, 6> M{};
    for (std::size_t k = 0; k < 6; ++k) M[k] = -D[k];
    return family_from_support(M, nu);
}

inline GTFamily ec(const GrassPoint &x) { return ec_from_profile(d_profile(x), x.nu()); }

// H_B for B numbered clockwise from B0.
inline Coweight f_B(const GrassPoint &x, int b) { return ec(x).at_borel(b); }

inline bool member_profile(const std::array<int, 6> &D, int nu, const GTFamily &f) {
    if (nu != f.nu) return false;
    auto M = f.supports();
    for (std::size_t k = 0; k < 6; ++k)
        if (D[k] < -M[k]) return false;
    return true;
}

inline bool member(const GrassPoint &x, const GTFamily &f) {
    if (x.nu() != f.nu) return false;
    return member_profile(d_profile(x), x.nu(), f);
}

// ---------------------------------------------------------------- BFZ maps

struct GaussLTU {
    Matrix3 v, t, u;
};

inline std::vector<int> range_upto(int n) {
    std::vector<int> r;
    for (int k = 0; k < n; ++k) r.push_back(k);
    return r;
}

// g = v t u with v lower unipotent, t diagonal, u upper unipotent.
inline GaussLTU gauss(const Matrix3 &g) {
    const std::uint32_t p = g.prime();
    std::array<LaurentSeries, 4> lead;
    lead[0] = LaurentSeries::one(p);
    for (int i = 1; i <= 3; ++i) {
        lead[static_cast<std::size_t>(i)] = minor(g, range_upto(i), range_upto(i));
        if (lead[static_cast<std::size_t>(i)].is_zero())
            throw gauss_failure("leading principal minor of size " + std::to_string(i) + " vanishes");
    }
    GaussLTU r{Matrix3::identity(p), Matrix3(p), Matrix3::identity(p)};
    for (int i = 0; i < 3; ++i) {
        LaurentSeries li = inv(lead[static_cast<std::size_t>(i + 1)]);
        r.t(i, i) = lead[static_cast<std::size_t>(i + 1)] * inv(lead[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < 3; ++j) {
            auto cols = range_upto(i);
            cols.push_back(j);
            r.u(i, j) = minor(g, range_upto(i + 1), cols) * li;
            r.v(j, i) = minor(g, cols, range_upto(i + 1)) * li;
        }
    }
    return r;
}

inline Matrix3 gauss_plus(const Matrix3 &g) { return gauss(g).u; }

// Lift of s_i built from psi_i([[0,1],[-1,0]]).
inline Matrix3 s_bar(std::uint32_t p, int i) {
    Matrix3 m = Matrix3::identity(p);
    int a = i - 1, b = i;
    m(a, a) = LaurentSeries::zero(p);
    m(b, b) = LaurentSeries::zero(p);
    m(a, b) = LaurentSeries::one(p);
    m(b, a) = LaurentSeries::constant(p, -1);
    return m;
}

inline Matrix3 w0_bar(std::uint32_t p) { return s_bar(p, 1) * s_bar(p, 2) * s_bar(p, 1); }
inline Matrix3 w0_bar_inv(std::uint32_t p) { return inverse(w0_bar(p)); }

inline Matrix3 eta_w0(const Matrix3 &y) { return gauss_plus(w0_bar(y.prime()) * y.transpose()); }

inline Matrix3 eta_w0_inv(const Matrix3 &x) {
    const std::uint32_t p = x.prime();
    return w0_bar_inv(p) * gauss_plus(x * w0_bar_inv(p)).transpose() * w0_bar(p);
}

inline Matrix3 x_elem(int i, const LaurentSeries &t) { return Matrix3::elementary(i - 1, i, t); }

// x_{i3}(t3) x_{i2}(t2) x_{i1}(t1)
inline Matrix3 x_map(Word w, const std::array<LaurentSeries, 3> &t) {
    auto l = letters(w);
    Matrix3 m = Matrix3::identity(t[0].prime());
    for (int j = 2; j >= 0; --j) m = m * x_elem(l[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j)]);
    return m;
}

inline Matrix3 y_map(Word w, const std::array<LaurentSeries, 3> &t) {
    for (const auto &ti : t)
        if (ti.is_zero()) throw gauss_failure("y_map parameters must be nonzero");
    return eta_w0_inv(x_map(w, t));
}

// Parameters of an element in the image of x_map.
inline std::array<LaurentSeries, 3> x_map_inverse(Word w, const Matrix3 &x) {
    if (w == Word::w121) {
        LaurentSeries t2 = x(1, 2);
        if (t2.is_zero()) throw gauss_failure("not in the image of x_121");
        LaurentSeries t3 = x(0, 2) * inv(t2);
        return {x(0, 1) - t3, t2, t3};
    }
    LaurentSeries t2 = x(0, 1);
    if (t2.is_zero()) throw gauss_failure("not in the image of x_212");
    LaurentSeries t1 = x(0, 2) * inv(t2);
    return {t1, t2, x(1, 2) - t1};
}

// Field-level transition (121) -> (212).
inline std::array<LaurentSeries, 3> transition(const std::array<LaurentSeries, 3> &t) {
    LaurentSeries s = t[0] + t[2];
    LaurentSeries si = inv(s);
    return {t[1] * t[2] * si, s, t[0] * t[1] * si};
}

// t with [y_w(t)^{-1}] = x for x in U0(F)K/K, found by right translation by
// random elements of U0(O) until the parametrization applies.
template <class Rng>
std::array<LaurentSeries, 3> decompose_u0(const GrassPoint &x, Word w, Rng &rng, int retries = 64) {
    const std::uint32_t p = x.prime();
    Matrix3 u = upper_form(x);
    for (int i = 0; i < 3; ++i)
        if (u(i, i).val() != 0) throw precondition_violation("point is not in U0(F)K/K");
    int deg = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!u(i, j).is_zero()) deg = std::max(deg, u(i, j).end());
    for (int attempt = 0; attempt < retries; ++attempt) {
        Matrix3 a = Matrix3::identity(p);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) a(i, j) = random_poly(0, deg + 2 + attempt / 8, p, rng);
        try {
            Matrix3 yinv = u * a;
            Matrix3 y = inverse(yinv);
            auto t = x_map_inverse(w, eta_w0(y));
            bool ok = std::none_of(t.begin(), t.end(), [](const LaurentSeries &s) { return s.is_zero(); });
            if (!ok) continue;
            if (canonicalize_point(inverse(y_map(w, t))) == x) return t;
        } catch (const domain_error &) {
        }
    }
    throw retry_exhausted("no parametrization found after " + std::to_string(retries) + " attempts");
}

// -------------------------------------------------------------- enumeration

struct EnumOptions {
    long long budget = 20'000'000;  // work units (candidate entries generated)
    int slack = 0;                   // widen every lower exponent bound
    std::optional<Vec3> only_d;      // restrict the diagonal exponents
};

namespace detail {

// All polynomials over F_p with support in [lo, hi).
inline void for_each_poly(std::uint32_t p, int lo, int hi, long long &work, long long budget,
                          const std::function<void(const LaurentSeries &)> &fn) {
    int n = std::max(0, hi - lo);
    std::vector<LaurentSeries::coeff_t> c(static_cast<std::size_t>(n), 0);
    while (true) {
        if (++work > budget) throw budget_exceeded("enumeration exceeded " + std::to_string(budget) + " work units");
        fn(LaurentSeries::polynomial(p, lo, c));
        int k = 0;
        while (k < n && ++c[static_cast<std::size_t>(k)] == p) c[static_cast<std::size_t>(k++)] = 0;
        if (k == n) return;
    }
}

} // namespace detail

// F_p-points of X(f), sorted by canonical key. Entry windows come from the
// row conditions of the defining inequalities; the final filter is member().
inline std::vector<GrassPoint> enumerate_points(const GTFamily &f, std::uint32_t p, const EnumOptions &opt = {}) {
    PrimeField field(p);
    validate(f);
    const auto M = f.supports();
    auto m = [&](unsigned mask) { return M[static_cast<std::size_t>(ChamberWeight{mask}.index())]; };
    const int nu = f.nu, s = opt.slack;
    std::vector<GrassPoint> out;
    long long work = 0;
    for (const Coweight &d : lattice_points(f)) {
        if (opt.only_d && *opt.only_d != d) continue;
        // row k (0-based) of h has valuation >= nu - M_{complement of k}
        int lo1 = nu - m(0b101) - s;
        int lo2 = nu - m(0b011) - s;
        int lo10 = std::max(lo1, nu - m(0b001) - d[2] - s);
        int lo21 = std::max(lo2, nu - m(0b010) - d[0] - s);
        int L = nu - m(0b001);  // val(h10 h21 - eps^{d1} h20) >= L
        LaurentSeries eps_d1_inv = LaurentSeries::eps(p, -d[1]);
        detail::for_each_poly(p, lo10, d[1], work, opt.budget, [&](const LaurentSeries &h10) {
            detail::for_each_poly(p, lo21, d[2], work, opt.budget, [&](const LaurentSeries &h21) {
                LaurentSeries target = h10 * h21 * eps_d1_inv;
                int fixed_hi = L - d[1];
                int lo20 = lo2;
                // coefficients of h20 below fixed_hi are forced to match target
                std::vector<LaurentSeries::coeff_t> base;
                int from = std::min(lo20, target.is_zero() ? lo20 : target.lead());
                bool ok = true;
                for (int e = from; e < fixed_hi; ++e) {
                    auto c = target.coeff(e);
                    if ((e < lo20 || e >= d[2]) && c != 0) ok = false;
                }
                if (!ok) return;
                int free_lo = std::max(lo20, fixed_hi);
                LaurentSeries forced = target.low_part(std::min(fixed_hi, d[2]));
                detail::for_each_poly(p, free_lo, d[2], work, opt.budget, [&](const LaurentSeries &free) {
                    GrassPoint x = GrassPoint::from_canonical(p, d, h10, forced + free, h21);
                    if (member(x, f)) out.push_back(x);
                });
            });
        });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Random point of X(f) with coefficients in F_p: random entries in the
// enumeration windows, forced part of h20 filled in, then rejection by member().
template <class Rng>
GrassPoint random_point(const GTFamily &f, std::uint32_t p, Rng &rng, int tries = 10000) {
    const auto M = f.supports();
    auto m = [&](unsigned mask) { return M[static_cast<std::size_t>(ChamberWeight{mask}.index())]; };
    auto pts = lattice_points(f);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    const int nu = f.nu;
    for (int k = 0; k < tries; ++k) {
        Coweight d = pts[pick(rng)];
        int lo1 = nu - m(0b101), lo2 = nu - m(0b011);
        int lo10 = std::max(lo1, nu - m(0b001) - d[2]);
        int lo21 = std::max(lo2, nu - m(0b010) - d[0]);
        LaurentSeries h10 = random_poly(lo10, std::max(lo10, d[1]), p, rng);
        LaurentSeries h21 = random_poly(lo21, std::max(lo21, d[2]), p, rng);
        int fixed_hi = nu - m(0b001) - d[1];
        LaurentSeries target = h10 * h21 * LaurentSeries::eps(p, -d[1]);
        bool ok = true;
        for (int e = target.lead(); e < fixed_hi && !target.is_zero(); ++e)
            if ((e < lo2 || e >= d[2]) && target.coeff(e) != 0) ok = false;
        if (!ok) continue;
        int free_lo = std::max(lo2, fixed_hi);
        LaurentSeries h20 = target.low_part(std::min(fixed_hi, d[2])) + random_poly(free_lo, std::max(free_lo, d[2]), p, rng);
        GrassPoint x = GrassPoint::from_canonical(p, d, h10, h20, h21);
        if (member(x, f)) return x;
    }
    throw retry_exhausted("no random point found in the polytope");
}

} // namespace mvpave

#endif

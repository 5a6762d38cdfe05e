#ifndef MVPAVE_ROOTDATA_HPP
#define MVPAVE_ROOTDATA_HPP

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace mvpave {

// Cocharacters of the diagonal torus of GL3, i.e. Z^3. Coordinates are 0-based.
using Coweight = Vec3;

inline int coweight_sum(const Coweight &v) { return v[0] + v[1] + v[2]; }
inline Coweight operator+(const Coweight &a, const Coweight &b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Coweight operator-(const Coweight &a, const Coweight &b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Coweight operator*(int k, const Coweight &a) { return {k * a[0], k * a[1], k * a[2]}; }
inline std::string to_string(const Coweight &v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

// Root alpha_ij = e_i - e_j (as a character); its coroot is the same vector.
struct Root {
    int i = 0, j = 1;
    Coweight coroot() const {
        Coweight c{0, 0, 0};
        c[static_cast<std::size_t>(i)] = 1;
        c[static_cast<std::size_t>(j)] = -1;
        return c;
    }
    int pair(const Coweight &v) const { return v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)]; }
    Root negated() const { return {j, i}; }
    bool positive() const { return i < j; }
    bool operator==(const Root &o) const { return i == o.i && j == o.j; }
    bool operator<(const Root &o) const { return i != o.i ? i < o.i : j < o.j; }
    std::string name() const { return "α_" + std::to_string(i + 1) + std::to_string(j + 1); }
};

inline const std::array<Root, 6> &all_roots() {
    static const std::array<Root, 6> r{Root{0, 1}, Root{1, 2}, Root{0, 2}, Root{1, 0}, Root{2, 1}, Root{2, 0}};
    return r;
}

// Element of S3 stored as its images: w(k) = img[k].
struct WeylElt {
    std::array<int, 3> img{0, 1, 2};

    int operator()(int k) const { return img[static_cast<std::size_t>(k)]; }
    WeylElt operator*(const WeylElt &o) const {
        WeylElt r;
        for (int k = 0; k < 3; ++k) r.img[static_cast<std::size_t>(k)] = (*this)(o(k));
        return r;
    }
    WeylElt inverse() const {
        WeylElt r;
        for (int k = 0; k < 3; ++k) r.img[static_cast<std::size_t>(img[static_cast<std::size_t>(k)])] = k;
        return r;
    }
    Coweight act(const Coweight &v) const {
        Coweight r{};
        for (int k = 0; k < 3; ++k) r[static_cast<std::size_t>(img[static_cast<std::size_t>(k)])] = v[static_cast<std::size_t>(k)];
        return r;
    }
    Root act(const Root &a) const { return {(*this)(a.i), (*this)(a.j)}; }
    bool operator==(const WeylElt &o) const { return img == o.img; }
    bool operator!=(const WeylElt &o) const { return img != o.img; }
    // One-line notation, 1-based: "123", "213", ...
    std::string one_line() const {
        std::string s;
        for (int k = 0; k < 3; ++k) s += static_cast<char>('1' + img[static_cast<std::size_t>(k)]);
        return s;
    }
    // Root alpha is positive for the Borel w.B0.
    bool positive(const Root &a) const {
        WeylElt wi = inverse();
        return wi(a.i) < wi(a.j);
    }
};

namespace weyl {

inline WeylElt id() { return {}; }
inline WeylElt s(int i) {
    WeylElt w;
    std::swap(w.img[static_cast<std::size_t>(i - 1)], w.img[static_cast<std::size_t>(i)]);
    return w;
}
inline WeylElt w0() { return s(1) * s(2) * s(1); }

// Fixed enumeration: id, s1, s2, s1s2, s2s1, w0.
inline const std::array<WeylElt, 6> &all() {
    static const std::array<WeylElt, 6> w{id(), s(1), s(2), s(1) * s(2), s(2) * s(1), w0()};
    return w;
}
inline int index(const WeylElt &w) {
    const auto &a = all();
    for (int k = 0; k < 6; ++k)
        if (a[static_cast<std::size_t>(k)] == w) return k;
    throw precondition_violation("not a permutation");
}
inline WeylElt from_one_line(const std::string &s) {
    if (s.size() != 3) throw precondition_violation("bad permutation '" + s + "'");
    WeylElt w;
    for (int k = 0; k < 3; ++k) w.img[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)] - '1';
    for (const auto &x : all())
        if (x == w) return w;
    throw precondition_violation("bad permutation '" + s + "'");
}

// Borels numbered clockwise 0..5 with 0 = B0: e, s2, s2s1, w0, s1s2, s1.
inline int borel_to_weyl(int b) {
    static const std::array<int, 6> m{0, 2, 4, 5, 3, 1};
    if (b < 0 || b > 5) throw precondition_violation("Borel index must be in 0..5");
    return m[static_cast<std::size_t>(b)];
}
inline int weyl_to_borel(int w) {
    static const std::array<int, 6> m{0, 5, 1, 4, 2, 3};
    return m[static_cast<std::size_t>(w)];
}
inline const WeylElt &borel(int b) { return all()[static_cast<std::size_t>(borel_to_weyl(b))]; }

} // namespace weyl

// Chamber weight w.varpi_i stored as the column set w{1..i} (bitmask).
struct ChamberWeight {
    unsigned mask = 1;
    int level() const { return __builtin_popcount(mask); }
    bool contains(int k) const { return (mask >> k) & 1u; }
    bool operator==(const ChamberWeight &o) const { return mask == o.mask; }
    std::string name() const {
        std::string s = "{";
        for (int k = 0; k < 3; ++k)
            if (contains(k)) s += static_cast<char>('1' + k);
        return s + "}";
    }
    // Position in the fixed order {1},{2},{3},{1,2},{1,3},{2,3}.
    int index() const {
        static const std::array<int, 8> m{-1, 0, 1, 3, 2, 4, 5, -1};
        return m[mask];
    }
};

inline const std::array<ChamberWeight, 6> &all_chamber_weights() {
    static const std::array<ChamberWeight, 6> c{ChamberWeight{1}, ChamberWeight{2}, ChamberWeight{4},
                                                ChamberWeight{3}, ChamberWeight{5}, ChamberWeight{6}};
    return c;
}

inline ChamberWeight chamber(const WeylElt &w, int level) {
    unsigned m = 0;
    for (int k = 0; k < level; ++k) m |= 1u << w(k);
    return {m};
}

inline int pairing(const Coweight &v, const ChamberWeight &S) {
    int s = 0;
    for (int k = 0; k < 3; ++k)
        if (S.contains(k)) s += v[static_cast<std::size_t>(k)];
    return s;
}

inline Coweight rho() { return {1, 0, -1}; }

// Vertex data (lambda_w) of a pseudo-Weyl polytope, indexed by weyl::all().
struct GTFamily {
    std::array<Coweight, 6> lam{};
    int nu = 0;

    const Coweight &at(const WeylElt &w) const { return lam[static_cast<std::size_t>(weyl::index(w))]; }
    const Coweight &at_borel(int b) const { return lam[static_cast<std::size_t>(weyl::borel_to_weyl(b))]; }
    int support(const ChamberWeight &S) const {
        for (const auto &w : weyl::all())
            if (chamber(w, S.level()) == S) return pairing(at(w), S);
        throw precondition_violation("bad chamber weight");
    }
    std::array<int, 6> supports() const {
        std::array<int, 6> m{};
        for (const auto &S : all_chamber_weights()) m[static_cast<std::size_t>(S.index())] = support(S);
        return m;
    }
    bool operator==(const GTFamily &o) const { return lam == o.lam && nu == o.nu; }
    bool operator!=(const GTFamily &o) const { return !(*this == o); }
    std::vector<Coweight> distinct_vertices() const {
        std::vector<Coweight> v(lam.begin(), lam.end());
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }
};

// Coefficient n with lambda_w - lambda_{w s_i} = n * (w.alpha_i)^vee.
inline int edge_length(const GTFamily &f, const WeylElt &w, int i) {
    Coweight d = f.at(w) - f.at(w * weyl::s(i));
    Root a = w.act(Root{i - 1, i});
    Coweight c = a.coroot();
    int n = d[static_cast<std::size_t>(a.i)];
    if (d != n * c) throw inconsistent_family("adjacent vertices " + to_string(f.at(w)) + ", " +
                                              to_string(f.at(w * weyl::s(i))) + " not on a coroot line");
    return n;
}

inline void validate(const GTFamily &f) {
    for (const auto &v : f.lam)
        if (coweight_sum(v) != f.nu) throw inconsistent_family("vertex " + to_string(v) + " off the nu fiber");
    for (const auto &w : weyl::all())
        for (int i = 1; i <= 2; ++i)
            if (edge_length(f, w, i) < 0) throw inconsistent_family("negative edge at " + w.one_line());
}

inline bool is_valid(const GTFamily &f) {
    try {
        validate(f);
        return true;
    } catch (const inconsistent_family &) {
        return false;
    }
}

// Support numbers indexed as all_chamber_weights().
inline GTFamily family_from_support(const std::array<int, 6> &M, int nu) {
    GTFamily f;
    f.nu = nu;
    for (const auto &w : weyl::all()) {
        int m1 = M[static_cast<std::size_t>(chamber(w, 1).index())];
        int m2 = M[static_cast<std::size_t>(chamber(w, 2).index())];
        Coweight v{};
        v[static_cast<std::size_t>(w(0))] = m1;
        v[static_cast<std::size_t>(w(1))] = m2 - m1;
        v[static_cast<std::size_t>(w(2))] = nu - m2;
        f.lam[static_cast<std::size_t>(weyl::index(w))] = v;
    }
    validate(f);
    return f;
}

inline std::array<int, 6> support_of(const GTFamily &f) { return f.supports(); }

inline bool contains(const GTFamily &outer, const GTFamily &inner) {
    if (outer.nu != inner.nu) return false;
    auto a = outer.supports(), b = inner.supports();
    for (std::size_t k = 0; k < 6; ++k)
        if (b[k] > a[k]) return false;
    return true;
}

inline bool contains_point(const std::array<int, 6> &M, int nu, const Coweight &v) {
    if (coweight_sum(v) != nu) return false;
    for (const auto &S : all_chamber_weights())
        if (pairing(v, S) > M[static_cast<std::size_t>(S.index())]) return false;
    return true;
}

inline bool contains_point(const GTFamily &f, const Coweight &v) { return contains_point(f.supports(), f.nu, v); }

// Integer points of {x : sum x = nu, <x,S> <= M_S}, sorted.
inline std::vector<Coweight> lattice_points(const std::array<int, 6> &M, int nu) {
    std::vector<Coweight> out;
    // x_k <= M_{k} and x_k >= nu - M_{complement of k}
    int lo0 = nu - M[5], hi0 = M[0];
    int lo1 = nu - M[4], hi1 = M[1];
    for (int a = lo0; a <= hi0; ++a)
        for (int b = lo1; b <= hi1; ++b) {
            Coweight v{a, b, nu - a - b};
            if (contains_point(M, nu, v)) out.push_back(v);
        }
    return out;
}

inline std::vector<Coweight> lattice_points(const GTFamily &f) { return lattice_points(f.supports(), f.nu); }

// (w.f)_{w w'} = w . lambda_{w'}
inline GTFamily weyl_act(const WeylElt &w, const GTFamily &f) {
    GTFamily r;
    r.nu = f.nu;
    for (const auto &x : weyl::all()) r.lam[static_cast<std::size_t>(weyl::index(w * x))] = w.act(f.at(x));
    return r;
}

inline GTFamily translate(const GTFamily &f, const Coweight &chi) {
    GTFamily r = f;
    for (auto &v : r.lam) v = v + chi;
    r.nu += coweight_sum(chi);
    return r;
}

// Equal up to a translation in X_*(T).
inline bool equal_up_to_translation(const GTFamily &a, const GTFamily &b) {
    return translate(a, b.lam[0] - a.lam[0]) == b;
}

inline GTFamily point_family(const Coweight &v) {
    GTFamily f;
    f.nu = coweight_sum(v);
    f.lam.fill(v);
    return f;
}

// Convex hull of the W-orbit of lambda; lambda need not be dominant.
inline GTFamily weyl_polytope(Coweight lambda) {
    std::sort(lambda.begin(), lambda.end(), [](int x, int y) { return x > y; });
    GTFamily f;
    f.nu = coweight_sum(lambda);
    for (const auto &w : weyl::all()) f.lam[static_cast<std::size_t>(weyl::index(w))] = w.act(lambda);
    return f;
}

inline bool is_dominant(const Coweight &v) { return v[0] >= v[1] && v[1] >= v[2]; }

} // namespace mvpave

#endif

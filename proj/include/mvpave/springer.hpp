#ifndef MVPAVE_SPRINGER_HPP
#define MVPAVE_SPRINGER_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grass.hpp"
#include "moment.hpp"
#include "mvcomb.hpp"
#include "paving.hpp"
#include "rootdata.hpp"

namespace mvpave {

// val(gamma_i - gamma_j) for the three pairs.
struct ValuationPattern {
    int c12 = 0, c23 = 0, c13 = 0;

    int of(int i, int j) const {
        if (i > j) std::swap(i, j);
        if (i == 0 && j == 1) return c12;
        if (i == 1 && j == 2) return c23;
        return c13;
    }
    int of(const Root &a) const { return of(a.i, a.j); }
    bool operator==(const ValuationPattern &o) const { return c12 == o.c12 && c23 == o.c23 && c13 == o.c13; }
};

inline bool is_ultrametric(const ValuationPattern &c) {
    std::array<int, 3> v{c.c12, c.c23, c.c13};
    std::sort(v.begin(), v.end());
    return v[0] >= 0 && v[0] == v[1];
}

inline void check_pattern(const ValuationPattern &c) {
    if (!is_ultrametric(c))
        throw precondition_violation("valuations must be >= 0 with the minimum attained twice");
}

// A diagonal pattern needs a unit u with u != 0, 1 when all three agree.
inline bool realizable(const ValuationPattern &c, std::uint32_t p) {
    return is_ultrametric(c) && !(c.c12 == c.c23 && c.c23 == c.c13 && p < 3);
}

struct RegularDiagonal {
    std::array<LaurentSeries, 3> g;
    ValuationPattern c;

    std::uint32_t prime() const { return g[0].prime(); }
};

inline ValuationPattern pattern_of(const std::array<LaurentSeries, 3> &g) {
    auto v = [&](int i, int j) {
        LaurentSeries d = g[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(j)];
        if (d.is_zero()) throw precondition_violation("gamma is not regular");
        return d.val();
    };
    ValuationPattern c{v(0, 1), v(1, 2), v(0, 2)};
    check_pattern(c);
    return c;
}

inline RegularDiagonal make_gamma(const std::array<LaurentSeries, 3> &g) {
    for (const auto &x : g)
        if (!x.is_zero() && x.val() < 0) throw precondition_violation("gamma must be integral");
    return {g, pattern_of(g)};
}

// Polynomial representative with the given pattern.
inline RegularDiagonal make_gamma(const ValuationPattern &c, std::uint32_t p) {
    check_pattern(c);
    if (!realizable(c, p))
        throw precondition_violation("pattern (" + std::to_string(c.c12) + "," + std::to_string(c.c23) + "," +
                                     std::to_string(c.c13) + ") needs a field with more than two elements");
    auto e = [&](int k) { return LaurentSeries::eps(p, k); };
    LaurentSeries z = LaurentSeries::zero(p);
    std::array<LaurentSeries, 3> g{z, z, z};
    if (c.c12 < c.c23) g = {z, e(c.c12), e(c.c12) + e(c.c23)};
    else if (c.c12 > c.c23) g = {z, e(c.c12), e(c.c23)};
    else if (c.c13 > c.c12) g = {z, e(c.c12), e(c.c13)};
    else g = {z, e(c.c12), LaurentSeries::monomial(p, 2, c.c12)};
    RegularDiagonal r = make_gamma(g);
    if (!(r.c == c)) throw precondition_violation("internal: gamma pattern mismatch");
    return r;
}

// g^{-1} gamma g integral.
inline bool member_springer(const GrassPoint &x, const RegularDiagonal &gamma) {
    const std::uint32_t p = x.prime();
    if (gamma.prime() != p) throw precondition_violation("gamma and point live over different fields");
    Matrix3 G(p);
    for (int i = 0; i < 3; ++i) G(i, i) = gamma.g[static_cast<std::size_t>(i)];
    Matrix3 m = inverse_rep(x) * G * x.h();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const LaurentSeries &e = m(i, j);
            if (e.is_zero()) {
                if (e.prec() < 0) throw precision_loss("entry known only to negative precision");
                continue;
            }
            if (e.val() < 0) return false;
        }
    return true;
}

inline int springer_dim(const ValuationPattern &c) { return c.c12 + c.c23 + c.c13; }
inline int springer_dim(const RegularDiagonal &g) { return springer_dim(g.c); }

// Lattice O[gamma] v for v = (1,1,1): columns v, gamma v, gamma^2 v.
inline GrassPoint regular_point(const RegularDiagonal &gamma, const Coweight &shift = {0, 0, 0},
                                const std::array<LaurentSeries, 3> *units = nullptr) {
    const std::uint32_t p = gamma.prime();
    Matrix3 V(p);
    for (int i = 0; i < 3; ++i) {
        LaurentSeries pw = units ? (*units)[static_cast<std::size_t>(i)] : LaurentSeries::one(p);
        for (int k = 0; k < 3; ++k) {
            V(i, k) = pw;
            pw = pw * gamma.g[static_cast<std::size_t>(i)];
        }
    }
    return canonicalize_point(Matrix3::diagonal(p, shift) * V);
}

struct SpringerTruncation {
    MVPolytope polytope;
    ValuationPattern c;
};

inline SpringerTruncation fundamental_domain(const ValuationPattern &c) {
    if (!(c.c23 == c.c13 && c.c12 >= c.c23 && c.c23 >= 0))
        throw pattern_mismatch("expected c12 = n1 >= c23 = c13 = n2");
    return {MVPolytope({Word::w121, {c.c12, c.c23, c.c23}}, {0, 0, 0}), c};
}

// ------------------------------------------------------------ criterion

struct CriterionValue {
    std::vector<int> l;  // per cell entry, in shape order
    int sum = 0;
    int bound = 0;
    bool affine = false;
};

// l_alpha = min(c_alpha, free width of the entry).
inline CriterionValue criterion_value(const MVPolytope &P, int b, const ValuationPattern &c) {
    check_pattern(c);
    CellShape s = contracting_cell(P, b);
    const LusztigDatum &d = P.datum(Word::w121);
    const int n1 = d.n[0], n2 = d.n[1], n3 = d.n[2];
    CriterionValue v;
    for (const auto &e : s.entries) {
        v.l.push_back(std::min(c.of(e.i, e.j), s.width(e)));
        v.sum += v.l.back();
    }
    if (b == 1) v.bound = n1 + n2 + c.c23;
    else if (b == 4) v.bound = n1 + n2 + c.c13;
    else v.bound = n2 + n3 + c.c12;
    v.affine = v.sum <= v.bound;
    return v;
}

inline bool criterion(const MVPolytope &P, int b, const ValuationPattern &c) { return criterion_value(P, b, c).affine; }

struct OracleResult {
    long long count = 0;
    int curves = 0;               // T~-curves in the intersection at lambda_B
    std::map<Root, int> per_root; // curves by direction
    bool affine_like = false;     // count == q^curves
};

// Brute force over the cell coordinates. The exponent is not taken from the
// formulas: it is the number of T~-stable curves through eps^{lambda_B} that
// stay inside X(P), point into B and satisfy the Springer condition.
inline OracleResult criterion_oracle(const MVPolytope &P, int b, const RegularDiagonal &gamma,
                                     long long budget = 20'000'000) {
    const std::uint32_t q = gamma.prime();
    const GTFamily f = P.family();
    CellShape s = contracting_cell(P, b);
    OracleResult r;
    auto pts = cell_points(s, q, budget, [&](const GrassPoint &x) { return member_springer(x, gamma); });
    r.count = static_cast<long long>(pts.size());
    const WeylElt &w = weyl::borel(b);
    const int span = coordinate_span(lattice_points(f));
    for (const Root &alpha : all_roots()) {
        if (!w.positive(alpha)) continue;
        for (int k = 1; k <= span; ++k) {
            GrassPoint y = edge_curve_point(q, s.lambda, alpha, k);
            if (member(y, f) && member_springer(y, gamma)) ++r.curves, ++r.per_root[alpha];
        }
    }
    r.affine_like = r.count == ipow(q, r.curves);
    return r;
}

// ----------------------------------------------------- truncated pavings

// Raising operator normalized so that the weight drops by alpha_i^vee.
inline std::optional<MVPolytope> crystal_E_weight(int i, const MVPolytope &P) {
    if (i != 1 && i != 2) throw precondition_violation("crystal index must be 1 or 2");
    return crystal_E(3 - i, P);
}

inline std::optional<MVPolytope> apply_weight_word(const CrystalWord &j, const MVPolytope &P) {
    check_alternating(j);
    std::optional<MVPolytope> cur = P;
    for (auto it = j.rbegin(); it != j.rend() && cur; ++it) cur = crystal_E_weight(*it, *cur);
    return cur;
}

inline std::string word_string(const CrystalWord &j) {
    std::string s;
    for (int x : j) s += static_cast<char>('0' + x);
    return s.empty() ? "()" : s;
}

enum class LayerShape { single, collinear, vee, other };

struct Layer {
    CrystalWord word;  // the layer is lattice(E_word P) minus the next polytope
    LayerShape shape = LayerShape::other;
    std::vector<Coweight> order;
};

inline Coweight primitive(const Coweight &v) {
    int g = std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
    return g ? Coweight{v[0] / g, v[1] / g, v[2] / g} : v;
}

// Far end, nearest, next far, next nearest, ...
inline std::vector<Coweight> ends_inward(const std::vector<Coweight> &sorted) {
    std::vector<Coweight> out;
    std::size_t lo = 0, hi = sorted.size();
    bool far = true;
    while (lo < hi) out.push_back(far ? sorted[--hi] : sorted[lo++]), far = !far;
    return out;
}

inline Layer order_layer(const CrystalWord &word, std::vector<Coweight> pts) {
    Layer L{word, LayerShape::other, {}};
    std::sort(pts.begin(), pts.end());
    if (pts.size() <= 1) {
        L.shape = LayerShape::single;
        L.order = pts;
        return L;
    }
    std::set<Coweight> dirs;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        Coweight d = primitive(pts[k] - pts[0]);
        if (d < Coweight{0, 0, 0}) d = -1 * d;
        dirs.insert(d);
    }
    if (dirs.size() == 1) {
        // sorted by the first coordinate, then ends alternately inward
        std::stable_sort(pts.begin(), pts.end(), [](const Coweight &a, const Coweight &b) { return a[0] < b[0]; });
        std::vector<Coweight> rev(pts.rbegin(), pts.rend());
        L.shape = LayerShape::collinear;
        L.order = ends_inward(rev);
        return L;
    }
    for (const Coweight &apex : pts) {
        std::map<Coweight, std::vector<Coweight>> arms;
        for (const Coweight &x : pts)
            if (x != apex) arms[primitive(x - apex)].push_back(x);
        if (arms.size() != 2) continue;
        std::vector<std::vector<Coweight>> A;
        for (auto &[d, v] : arms) {
            auto dist = [&](const Coweight &x) { return std::abs(x[0] - apex[0]) + std::abs(x[1] - apex[1]) + std::abs(x[2] - apex[2]); };
            std::sort(v.begin(), v.end(), [&](const Coweight &a, const Coweight &b) { return dist(a) < dist(b); });
            A.push_back(ends_inward(v));
        }
        if (A[1].front()[2] < A[0].front()[2]) std::swap(A[0], A[1]);
        L.shape = LayerShape::vee;
        L.order.push_back(apex);
        for (std::size_t k = 0; k < std::max(A[0].size(), A[1].size()); ++k)
            for (const auto &arm : A)
                if (k < arm.size()) L.order.push_back(arm[k]);
        return L;
    }
    L.order = pts;
    return L;
}

struct TruncatedPlan {
    CrystalWord j;
    bool zero = false;                 // E_j P vanishes
    std::optional<MVPolytope> polytope;
    CrystalWord base_word;             // longest word reached
    std::optional<MVPolytope> base;
    std::vector<Layer> layers;
    bool springer_automatic = false;   // every point of the base satisfies the condition
    PavingPlan plan;
    std::vector<std::uint32_t> primes;
};

struct EngineFailure {
    std::string what;
};

// Remove the cell of each vertex in the given order, choosing a Borel for
// which the vertex is extreme among the remaining fixed points.
inline std::optional<EngineFailure> run_engine(Remaining &R, const std::vector<Coweight> &order, int span,
                                               std::vector<PavingStep> &steps) {
    for (const Coweight &v : order) {
        auto fixed = R.fixed_points();
        if (!std::binary_search(fixed.begin(), fixed.end(), v))
            return EngineFailure{"vertex " + to_string(v) + " already removed or absent"};
        int best_b = -1, best_dim = 0;
        for (int b = 0; b < 6; ++b) {
            const WeylElt &w = weyl::borel(b);
            ChamberWeight S1 = chamber(w, 1), S2 = chamber(w, 2);
            bool extreme = true;
            for (const Coweight &u : fixed) {
                if (u == v) continue;
                Coweight d = u - v;
                if (pairing(d, S1) >= 0 && pairing(d, S2) >= 0) {
                    extreme = false;
                    break;
                }
            }
            if (!extreme) continue;
            int dim = curves_in(R, v, b, span);
            if (best_b < 0 || dim < best_dim) best_b = b, best_dim = dim;
        }
        if (best_b < 0) return EngineFailure{"no Borel makes " + to_string(v) + " extreme"};
        auto c = R.cell(v, best_b);
        if (static_cast<long long>(c.size()) != ipow(R.ps->q, best_dim))
            return EngineFailure{"cell at " + to_string(v) + " B" + std::to_string(best_b) + " has " +
                                 std::to_string(c.size()) + " points, expected " +
                                 std::to_string(ipow(R.ps->q, best_dim))};
        steps.push_back({v, best_b, best_dim, std::nullopt});
        R.remove(c);
    }
    return std::nullopt;
}

// Paving of X(E_j P) cap X_gamma for P = P^(121)(n1, n2, n2) and gamma with
// c12 = n1, c23 = c13 = n2. Layers come first, then the base polytope, which
// is paved by the greedy scheme.
inline TruncatedPlan truncated_paving(const ValuationPattern &c, const CrystalWord &j,
                                      const std::vector<std::uint32_t> &qs = {2, 3}) {
    check_alternating(j);
    SpringerTruncation F = fundamental_domain(c);
    const int n2 = c.c23;
    TruncatedPlan T;
    T.j = j;
    T.primes = qs;
    if (qs.empty()) throw precondition_violation("need at least one prime");
    for (auto q : qs)
        if (!realizable(c, q)) throw precondition_violation("pattern not realizable over F_" + std::to_string(q));
    T.polytope = apply_weight_word(j, F.polytope);
    if (!T.polytope) {
        T.zero = true;
        return T;
    }
    // chain of words, prepending alternating letters
    std::vector<CrystalWord> chain{j};
    std::vector<MVPolytope> polys{*T.polytope};
    while (static_cast<int>(chain.back().size()) < 2 * n2) {
        CrystalWord nx = chain.back();
        nx.insert(nx.begin(), nx.empty() ? 2 : 3 - nx.front());
        auto P = apply_weight_word(nx, F.polytope);
        if (!P) break;
        chain.push_back(nx);
        polys.push_back(*P);
    }
    T.base_word = chain.back();
    T.base = polys.back();
    for (std::size_t m = 0; m + 1 < chain.size(); ++m) {
        auto outer = lattice_points(polys[m].family()), inner = lattice_points(polys[m + 1].family());
        std::vector<Coweight> diff;
        std::set_difference(outer.begin(), outer.end(), inner.begin(), inner.end(), std::back_inserter(diff));
        T.layers.push_back(order_layer(chain[m], diff));
    }
    const GTFamily top = polys.front().family(), basef = polys.back().family();
    PavingPlan base_plan = greedy_paving(basef, {{qs.front()}, 2});
    const int span = coordinate_span(lattice_points(top));

    std::optional<std::string> failure;
    T.springer_automatic = true;
    for (std::size_t k = 0; k < qs.size(); ++k) {
        const std::uint32_t q = qs[k];
        RegularDiagonal g = make_gamma(c, q);
        std::vector<GrassPoint> pts;
        for (auto &x : enumerate_points(top, q))
            if (member_springer(x, g)) pts.push_back(std::move(x));
        PointSet ps(q, std::move(pts));
        if (k == 0) {
            Remaining R(ps);
            for (const auto &L : T.layers) {
                auto err = run_engine(R, L.order, span, T.plan.steps);
                if (err && !failure) failure = "layer " + word_string(L.word) + ": " + err->what;
                if (err) break;
            }
            for (const auto &st : base_plan.steps) T.plan.steps.push_back(st);
        }
        Verification v = replay(T.plan, ps);
        for (const auto &x : enumerate_points(basef, q))
            if (!member_springer(x, g)) {
                T.springer_automatic = false;
                break;
            }
        if (failure && v.ok) v.ok = false, v.detail = *failure;
        T.plan.verified.push_back(v);
    }
    return T;
}

} // namespace mvpave

#endif

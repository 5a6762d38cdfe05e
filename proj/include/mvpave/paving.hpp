#ifndef MVPAVE_PAVING_HPP
#define MVPAVE_PAVING_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "grass.hpp"
#include "moment.hpp"
#include "mvcomb.hpp"
#include "rootdata.hpp"

namespace mvpave {

inline long long ipow(long long q, int e) {
    long long r = 1;
    for (int k = 0; k < e; ++k) r *= q;
    return r;
}

// ------------------------------------------------------------ Iwahori cells

struct IwahoriCell {
    Coweight a, lambda, lambda_prime;
    std::array<std::array<int, 3>, 3> m{};      // valuation thresholds, off-diagonal
    std::array<std::array<int, 3>, 3> width{};  // free exponents of x_ij
    int dim = 0;
};

// Thresholds of the intersection Sch(lambda) cap I_a eps^{lambda'} K/K. The
// fractional offset (i-j)/3 is rounded up: +1 below the diagonal, 0 above.
inline IwahoriCell iwahori_cell(const Coweight &a, const Coweight &lambda, const Coweight &lp) {
    if (!is_dominant(lambda)) throw shape_mismatch("lambda must be dominant, got " + to_string(lambda));
    const bool case1 = lambda[1] == lambda[2], case2 = lambda[0] == lambda[1];
    if (!case1 && !case2) throw shape_mismatch("lambda must satisfy l1 >= l2 = l3 or l1 = l2 >= l3");
    IwahoriCell c{a, lambda, lp, {}, {}, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
            int iw = a[I] - a[J] + (i > j ? 1 : 0);
            int sch = case1 ? lambda[2] - lp[J] : -lambda[0] + lp[I];
            c.m[I][J] = std::max(iw, sch);
            c.width[I][J] = std::max(0, lp[I] - lp[J] - c.m[I][J]);
            c.dim += c.width[I][J];
        }
    return c;
}

// Points of the cell, parametrized as a product of root elements
// x_ij(t_ij) eps^{lambda'} with t_ij supported on [m_ij, lambda'_i - lambda'_j).
inline std::vector<GrassPoint> iwahori_cell_points(const IwahoriCell &c, std::uint32_t p, long long budget = 5'000'000) {
    static const std::array<std::pair<int, int>, 6> order{{{1, 0}, {2, 1}, {2, 0}, {0, 1}, {1, 2}, {0, 2}}};
    std::vector<GrassPoint> out;
    std::vector<LaurentSeries> t(6, LaurentSeries::zero(p));
    long long work = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            Matrix3 g = Matrix3::identity(p);
            for (std::size_t e = 0; e < order.size(); ++e)
                if (!t[e].is_zero()) g = g * Matrix3::elementary(order[e].first, order[e].second, t[e]);
            out.push_back(canonicalize_point(g * Matrix3::diagonal(p, c.lambda_prime)));
            return;
        }
        auto [i, j] = order[k];
        int lo = c.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int w = c.width[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        detail::for_each_poly(p, lo, lo + w, work, budget, [&](const LaurentSeries &s) {
            t[k] = s;
            rec(k + 1);
        });
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct MVIntersection {
    Coweight lambda1, a, lambda2;
};

// X(P(n)) = Sch(lambda1) cap eps^a Sch(lambda2) in base-0 coordinates.
inline MVIntersection mv_as_intersection(const LusztigDatum &d) {
    if (d.word != Word::w121 || !normal_position(d))
        throw normal_position_required("need word 121 with n1 >= n3 >= n2");
    int n1 = d.n[0], n2 = d.n[1], n3 = d.n[2];
    return {{n1 + n2, -n2, -n2}, {n1 - n3, n1 - n3, 0}, {n3, n3, -n1 - n2}};
}

inline bool in_intersection(const GrassPoint &x, const MVIntersection &I) {
    if (!member(x, weyl_polytope(I.lambda1))) return false;
    const std::uint32_t p = x.prime();
    Coweight na{-I.a[0], -I.a[1], -I.a[2]};
    GrassPoint y = canonicalize_point(Matrix3::diagonal(p, na) * x.h());
    return member(y, weyl_polytope(I.lambda2));
}

// ------------------------------------------------------- plans and checking

struct PavingStep {
    Coweight vertex{};
    int borel = -1;  // -1 for Iwahori cells
    int dim = 0;
    std::optional<GTFamily> witness;
};

struct Verification {
    std::uint32_t q = 0;
    long long points = 0;
    long long predicted = 0;
    bool ok = false;
    std::string detail;
};

struct PavingPlan {
    std::vector<PavingStep> steps;
    std::vector<Verification> verified;

    bool ok() const {
        return !verified.empty() && std::all_of(verified.begin(), verified.end(), [](const Verification &v) { return v.ok; });
    }
    PoincarePoly poincare() const {
        PoincarePoly P;
        for (const auto &s : steps) P.add_term(static_cast<std::size_t>(s.dim));
        return P;
    }
    int max_dim() const {
        int m = -1;
        for (const auto &s : steps) m = std::max(m, s.dim);
        return m;
    }
};

// F_q points together with their vertex families.
struct PointSet {
    std::uint32_t q = 2;
    std::vector<GrassPoint> pts;
    std::vector<GTFamily> ecs;
    std::unordered_map<std::string, std::size_t> index;

    PointSet() = default;
    PointSet(std::uint32_t q_, std::vector<GrassPoint> p) : q(q_), pts(std::move(p)) {
        ecs.reserve(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) {
            ecs.push_back(ec(pts[k]));
            index[pts[k].key()] = k;
        }
    }
    bool contains(const GrassPoint &x) const { return index.count(x.key()) > 0; }
};

// Remaining points during a paving run.
struct Remaining {
    const PointSet *ps;
    std::vector<char> alive;
    std::size_t count;

    explicit Remaining(const PointSet &s) : ps(&s), alive(s.pts.size(), 1), count(s.pts.size()) {}
    bool has(const GrassPoint &x) const {
        auto it = ps->index.find(x.key());
        return it != ps->index.end() && alive[it->second];
    }
    std::vector<std::size_t> cell(const Coweight &v, int borel) const {
        std::vector<std::size_t> c;
        for (std::size_t k = 0; k < alive.size(); ++k)
            if (alive[k] && ps->ecs[k].at_borel(borel) == v) c.push_back(k);
        return c;
    }
    void remove(const std::vector<std::size_t> &c) {
        for (auto k : c)
            if (alive[k]) alive[k] = 0, --count;
    }
    // Torus-fixed points still present.
    std::vector<Coweight> fixed_points() const {
        std::vector<Coweight> f;
        for (std::size_t k = 0; k < alive.size(); ++k) {
            if (!alive[k]) continue;
            const GTFamily &e = ps->ecs[k];
            if (e.distinct_vertices().size() == 1) f.push_back(e.lam[0]);
        }
        std::sort(f.begin(), f.end());
        return f;
    }
};

// Number of B-positive T~-curves at v whose generic point is still present.
inline int curves_in(const Remaining &R, const Coweight &v, int borel, int span) {
    const WeylElt &w = weyl::borel(borel);
    int n = 0;
    for (const Root &alpha : all_roots()) {
        if (!w.positive(alpha)) continue;
        for (int k = 1; k <= span; ++k)
            if (R.has(edge_curve_point(R.ps->q, v, alpha, k))) ++n;
    }
    return n;
}

inline int coordinate_span(const std::vector<Coweight> &pts) {
    if (pts.empty()) return 0;
    int lo = pts[0][0], hi = pts[0][0];
    for (const auto &p : pts)
        for (int c : p) lo = std::min(lo, c), hi = std::max(hi, c);
    return hi - lo;
}

// Throws with the first failing record.
inline void require_verified(const PavingPlan &plan) {
    if (plan.verified.empty()) throw paving_verification_failed("plan was never verified");
    for (const auto &v : plan.verified)
        if (!v.ok) throw paving_verification_failed("q=" + std::to_string(v.q) + ": " + v.detail);
}

// Replay a plan on a point set: each step removes {y : f_B(y) = v} and must
// count q^dim; nothing may remain.
inline Verification replay(const PavingPlan &plan, const PointSet &ps) {
    Verification v{ps.q, static_cast<long long>(ps.pts.size()), 0, true, ""};
    Remaining R(ps);
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        const auto &st = plan.steps[s];
        v.predicted += ipow(ps.q, st.dim);
        auto c = R.cell(st.vertex, st.borel);
        long long want = ipow(ps.q, st.dim);
        if (static_cast<long long>(c.size()) != want && v.ok) {
            v.ok = false;
            v.detail = "step " + std::to_string(s) + " at " + to_string(st.vertex) + " B" + std::to_string(st.borel) +
                       ": " + std::to_string(c.size()) + " points, expected " + std::to_string(want);
        }
        if (st.witness && v.ok)
            for (auto k : c)
                if (!contains(*st.witness, ps.ecs[k])) {
                    v.ok = false;
                    v.detail = "step " + std::to_string(s) + " cell leaves its polytope";
                    break;
                }
        R.remove(c);
    }
    if (R.count != 0 && v.ok) {
        v.ok = false;
        v.detail = std::to_string(R.count) + " points not covered";
    }
    if (v.predicted != v.points && v.ok) {
        v.ok = false;
        v.detail = "sum of q^dim differs from the point count";
    }
    return v;
}

// ------------------------------------------------------ contracting cells

struct CellShape {
    struct Entry {
        int i, j, lo;
    };
    int borel = 0;
    bool inverted = false;
    Coweight lambda{};
    std::vector<Entry> entries;
    int dim = 0;

    int width(const Entry &e) const {
        return lambda[static_cast<std::size_t>(e.i)] - lambda[static_cast<std::size_t>(e.j)] - e.lo;
    }
};

// Cell C_B(P) of an MV polytope P^(121)(n) in normal position, as a unipotent
// shape acting on eps^{lambda_B}.
inline CellShape contracting_cell(const MVPolytope &P, int b) {
    const LusztigDatum &d = P.datum(Word::w121);
    if (!normal_position(d)) throw normal_position_required("contracting cells need n1 >= n3 >= n2");
    if (b < 0 || b > 5) throw precondition_violation("Borel index must be in 0..5");
    const int n1 = d.n[0], n3 = d.n[2];
    const int up = n1 - n3, dn = n3 - n1;
    CellShape c;
    c.borel = b;
    using E = CellShape::Entry;
    switch (b) {
    case 0: c.inverted = true, c.entries = {E{0, 1, 0}, E{1, 2, 0}, E{0, 2, up}}; break;
    case 1: c.entries = {E{0, 1, 0}, E{0, 2, up}, E{2, 1, 0}}; break;
    case 2: c.entries = {E{0, 1, 0}, E{2, 0, dn}, E{2, 1, 0}}; break;
    case 3: c.entries = {E{1, 0, 0}, E{2, 0, 0}, E{2, 1, dn}}; break;
    case 4: c.entries = {E{1, 0, 0}, E{2, 0, 0}, E{1, 2, up}}; break;
    default: c.inverted = true, c.entries = {E{0, 2, 0}, E{1, 0, 0}, E{1, 2, up}}; break;
    }
    const Coweight base = P.base();
    c.lambda = P.family().at_borel(b);
    for (auto &e : c.entries) e.lo += base[static_cast<std::size_t>(e.i)] - base[static_cast<std::size_t>(e.j)];
    for (const auto &e : c.entries) c.dim += c.width(e);
    return c;
}

inline Matrix3 cell_matrix(const CellShape &c, const std::vector<LaurentSeries> &t) {
    const std::uint32_t p = t.at(0).prime();
    Matrix3 u = Matrix3::identity(p);
    for (std::size_t k = 0; k < c.entries.size(); ++k) u(c.entries[k].i, c.entries[k].j) = t[k];
    if (c.inverted) u = inverse(u);
    return u * Matrix3::diagonal(p, c.lambda);
}

// Distinct points given by the shape with every parameter truncated to its window.
inline std::vector<GrassPoint> cell_points(const CellShape &c, std::uint32_t p, long long budget = 20'000'000,
                                           const std::function<bool(const GrassPoint &)> &keep = nullptr) {
    std::vector<GrassPoint> out;
    std::vector<LaurentSeries> t(c.entries.size(), LaurentSeries::zero(p));
    long long work = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == c.entries.size()) {
            GrassPoint x = canonicalize_point(cell_matrix(c, t));
            if (!keep || keep(x)) out.push_back(x);
            return;
        }
        const auto &e = c.entries[k];
        detail::for_each_poly(p, e.lo, e.lo + std::max(0, c.width(e)), work, budget, [&](const LaurentSeries &s) {
            t[k] = s;
            rec(k + 1);
        });
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ------------------------------------------------------------ paving_121

inline PavingPlan paving_121(const LusztigDatum &d, const std::vector<std::uint32_t> &qs = {2, 3}) {
    MVIntersection I = mv_as_intersection(d);
    MVPolytope P(d, {0, 0, 0});
    GTFamily f = P.family();
    PavingPlan plan;
    std::vector<IwahoriCell> cells;
    for (const Coweight &lp : lattice_points(f)) {
        cells.push_back(iwahori_cell(I.a, I.lambda1, lp));
        plan.steps.push_back({lp, -1, cells.back().dim, f});
    }
    for (std::uint32_t q : qs) {
        auto all = enumerate_points(f, q);
        std::set<std::string> seen;
        Verification v{q, static_cast<long long>(all.size()), 0, true, ""};
        for (std::size_t k = 0; k < cells.size(); ++k) {
            auto pts = iwahori_cell_points(cells[k], q);
            v.predicted += ipow(q, cells[k].dim);
            if (static_cast<long long>(pts.size()) != ipow(q, cells[k].dim) && v.ok)
                v.ok = false, v.detail = "cell at " + to_string(cells[k].lambda_prime) + " has " +
                                         std::to_string(pts.size()) + " points";
            for (const auto &x : pts) {
                if (!member(x, f) && v.ok) v.ok = false, v.detail = "cell point outside the polytope";
                if (!seen.insert(x.key()).second && v.ok) v.ok = false, v.detail = "cells overlap";
            }
        }
        if (static_cast<long long>(seen.size()) != v.points && v.ok) v.ok = false, v.detail = "cells do not cover";
        plan.verified.push_back(v);
    }
    return plan;
}

// ---------------------------------------------------------- greedy paving

inline int polytope_dim(const GTFamily &f) { return dimension(canonicalize(f).P); }

// Lattice hull of {x : <x,S> <= M_S}; empty when there are no lattice points.
inline std::optional<GTFamily> hull_family(const std::array<int, 6> &M, int nu) {
    auto pts = lattice_points(M, nu);
    if (pts.empty()) return std::nullopt;
    std::array<int, 6> t{};
    t.fill(INT_MIN);
    for (const auto &x : pts)
        for (const auto &S : all_chamber_weights()) {
            auto k = static_cast<std::size_t>(S.index());
            t[k] = std::max(t[k], pairing(x, S));
        }
    return family_from_support(t, nu);
}

// Maximal polytopes of the form Ec(y) (MV up to W) inside the family.
inline void mv_parts(const GTFamily &f, std::vector<GTFamily> &out, std::set<std::array<int, 6>> &seen) {
    if (!seen.insert(f.supports()).second) return;
    bool mv = true;
    try {
        canonicalize(f);
    } catch (const not_mv &) {
        mv = false;
    }
    if (mv) {
        out.push_back(f);
        return;
    }
    for (std::size_t s = 0; s < 6; ++s) {
        auto M = f.supports();
        --M[s];
        if (auto g = hull_family(M, f.nu)) mv_parts(*g, out, seen);
    }
}

inline std::vector<GTFamily> maximal_only(std::vector<GTFamily> v) {
    std::sort(v.begin(), v.end(), [](const GTFamily &a, const GTFamily &b) { return a.supports() < b.supports(); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<GTFamily> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < v.size() && !dominated; ++j)
            dominated = j != i && contains(v[j], v[i]) && v[j] != v[i];
        if (!dominated) out.push_back(v[i]);
    }
    return out;
}

// Biggest pieces of X(f) minus the cell at its B-vertex v.
inline std::vector<GTFamily> avoid_vertex(const GTFamily &f, int borel) {
    const WeylElt &w = weyl::borel(borel);
    const Coweight v = f.at_borel(borel);
    std::vector<GTFamily> parts;
    std::set<std::array<int, 6>> seen;
    for (int level = 1; level <= 2; ++level) {
        ChamberWeight S = chamber(w, level);
        auto M = f.supports();
        M[static_cast<std::size_t>(S.index())] = pairing(v, S) - 1;
        if (auto g = hull_family(M, f.nu)) mv_parts(*g, parts, seen);
    }
    return maximal_only(parts);
}

struct GreedyOptions {
    std::vector<std::uint32_t> qs{2, 3};
    std::uint32_t skeleton_prime = 2;
};

// Greedy contracting-cell scheme. The plan is built combinatorially and then
// replayed on the F_q points for every q.
inline PavingPlan greedy_paving(const GTFamily &f, const GreedyOptions &opt = {}) {
    validate(f);
    canonicalize(f);
    MomentGraph G = skeleton(f, opt.skeleton_prime);
    std::vector<GrassPoint> curve(G.edges.size());
    for (std::size_t e = 0; e < G.edges.size(); ++e) {
        const auto &E = G.edges[e];
        curve[e] = edge_curve_point(opt.skeleton_prime, G.vertices[static_cast<std::size_t>(E.u)], E.alpha, E.k);
    }
    PavingPlan plan;
    std::vector<GTFamily> active{f};
    std::string violation;
    while (!active.empty()) {
        std::vector<char> live(G.edges.size(), 0);
        for (std::size_t e = 0; e < G.edges.size(); ++e)
            for (const auto &A : active)
                if (member(curve[e], A)) {
                    live[e] = 1;
                    break;
                }
        auto wt_now = [&](const Coweight &v) {
            int i = G.index_of(v), n = 0;
            for (std::size_t e = 0; e < G.edges.size(); ++e)
                if (live[e] && (G.edges[e].u == i || G.edges[e].v == i)) ++n;
            return n;
        };
        int best_dim = -1;
        for (const auto &A : active) best_dim = std::max(best_dim, polytope_dim(A));
        std::tuple<int, Coweight, int, std::size_t> best{INT_MAX, {}, 0, 0};
        for (std::size_t a = 0; a < active.size(); ++a) {
            if (polytope_dim(active[a]) != best_dim) continue;
            for (int b = 0; b < 6; ++b) {
                Coweight v = active[a].at_borel(b);
                std::tuple<int, Coweight, int, std::size_t> cand{wt_now(v), v, b, a};
                if (cand < best) best = cand;
            }
        }
        auto [w, v, b, a] = best;
        (void)w;
        GTFamily chosen = active[a];
        plan.steps.push_back({v, b, best_dim, chosen});
        std::vector<GTFamily> next;
        for (const auto &A : active) {
            if (!contains_point(A, v)) {
                next.push_back(A);
                continue;
            }
            int bb = -1;
            for (int k = 0; k < 6 && bb < 0; ++k)
                if (A.at_borel(k) == v && weyl::borel(k) == weyl::borel(b)) bb = k;
            if (bb < 0 && A.at_borel(b) != v && violation.empty())
                violation = "vertex " + to_string(v) + " lies inside another active polytope";
            for (auto &g : avoid_vertex(A, b)) next.push_back(g);
        }
        active = maximal_only(next);
    }
    for (std::uint32_t q : opt.qs) {
        PointSet ps(q, enumerate_points(f, q));
        Verification ver = replay(plan, ps);
        if (!violation.empty() && ver.ok) ver.ok = false, ver.detail = violation;
        plan.verified.push_back(ver);
    }
    return plan;
}

} // namespace mvpave

#endif

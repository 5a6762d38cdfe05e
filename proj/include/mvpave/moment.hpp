#ifndef MVPAVE_MOMENT_HPP
#define MVPAVE_MOMENT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grass.hpp"
#include "rootdata.hpp"

namespace mvpave {

struct MomentEdge {
    int u = 0, v = 0;  // vertex indices, vert[u] - vert[v] = k * alpha^vee
    Root alpha;        // positive for B0
    int k = 1;
};

struct MomentGraph {
    std::vector<Coweight> vertices;
    std::vector<MomentEdge> edges;

    int index_of(const Coweight &c) const {
        auto it = std::find(vertices.begin(), vertices.end(), c);
        if (it == vertices.end()) return -1;
        return static_cast<int>(it - vertices.begin());
    }
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (const auto &e : edges) {
            adj[static_cast<std::size_t>(e.u)].push_back(e.v);
            adj[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        return adj;
    }
};

// Generic point x_alpha(c eps^m) eps^nu of the T~-curve through eps^nu in direction alpha.
inline GrassPoint curve_point(std::uint32_t p, const Coweight &nu, const Root &alpha, int m, long long c = 1) {
    Matrix3 g = Matrix3::elementary(alpha.i, alpha.j, LaurentSeries::monomial(p, c, m)) * Matrix3::diagonal(p, nu);
    return canonicalize_point(g);
}

// Curve joining nu and nu - k alpha^vee.
inline GrassPoint edge_curve_point(std::uint32_t p, const Coweight &nu, const Root &alpha, int k, long long c = 1) {
    return curve_point(p, nu, alpha, alpha.pair(nu) - k, c);
}

// 1-skeleton of X(f). Curve membership is tested on the c = 1 point; its minors
// are monomials in c, so this decides the whole orbit.
inline MomentGraph skeleton(const GTFamily &f, std::uint32_t p = 2) {
    MomentGraph g;
    g.vertices = lattice_points(f);
    std::map<Coweight, int> idx;
    int lo = 0, hi = 0;
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        idx[g.vertices[k]] = static_cast<int>(k);
        for (int c : g.vertices[k]) lo = std::min(lo, c), hi = std::max(hi, c);
    }
    const int span = hi - lo;
    for (std::size_t a = 0; a < g.vertices.size(); ++a) {
        const Coweight &nu = g.vertices[a];
        for (const Root &alpha : {Root{0, 1}, Root{1, 2}, Root{0, 2}}) {
            for (int k = 1; k <= span; ++k) {
                auto it = idx.find(nu - k * alpha.coroot());
                if (it == idx.end()) continue;
                if (member(edge_curve_point(p, nu, alpha, k), f))
                    g.edges.push_back({static_cast<int>(a), it->second, alpha, k});
            }
        }
    }
    return g;
}

// Direction of edge e at its endpoint v.
inline Root direction_at(const MomentGraph &g, const MomentEdge &e, int v) {
    (void)g;
    return e.u == v ? e.alpha : e.alpha.negated();
}

inline int wt(const MomentGraph &g, int v) {
    int n = 0;
    for (const auto &e : g.edges)
        if (e.u == v || e.v == v) ++n;
    return n;
}
inline int wt(const MomentGraph &g, const Coweight &v) {
    int i = g.index_of(v);
    if (i < 0) throw precondition_violation("not a vertex: " + to_string(v));
    return wt(g, i);
}

inline int L(const MomentGraph &g, const Coweight &v, const Root &alpha) {
    int i = g.index_of(v);
    if (i < 0) throw precondition_violation("not a vertex: " + to_string(v));
    int n = 0;
    for (const auto &e : g.edges)
        if ((e.u == i || e.v == i) && direction_at(g, e, i) == alpha) ++n;
    return n;
}

// Coefficients b_0, b_2, b_4, ... (index i stands for t^{2i}).
struct PoincarePoly {
    std::vector<long long> b;

    void normalize() {
        while (!b.empty() && b.back() == 0) b.pop_back();
    }
    void add_term(std::size_t i, long long c = 1) {
        if (b.size() <= i) b.resize(i + 1, 0);
        b[i] += c;
        normalize();
    }
    long long coeff(std::size_t i) const { return i < b.size() ? b[i] : 0; }
    long long eval(long long q) const {
        long long s = 0, pw = 1;
        for (auto c : b) s += c * pw, pw *= q;
        return s;
    }
    long long total() const {
        long long s = 0;
        for (auto c : b) s += c;
        return s;
    }
    PoincarePoly operator+(const PoincarePoly &o) const {
        PoincarePoly r;
        r.b.assign(std::max(b.size(), o.b.size()), 0);
        for (std::size_t i = 0; i < r.b.size(); ++i) r.b[i] = coeff(i) + o.coeff(i);
        r.normalize();
        return r;
    }
    bool operator==(const PoincarePoly &o) const {
        PoincarePoly a = *this, c = o;
        a.normalize();
        c.normalize();
        return a.b == c.b;
    }
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || b[i] != 1) s += std::to_string(b[i]);
            if (i == 1) s += "t^2";
            else if (i > 1) s += "t^" + std::to_string(2 * i);
        }
        return s.empty() ? "0" : s;
    }
};

// -1, 0, 1 by the sign of the leading coefficient of q - p.
inline int compare(const PoincarePoly &p, const PoincarePoly &q) {
    std::size_t n = std::max(p.b.size(), q.b.size());
    for (std::size_t i = n; i-- > 0;) {
        long long d = q.coeff(i) - p.coeff(i);
        if (d > 0) return -1;
        if (d < 0) return 1;
    }
    return 0;
}

// order lists vertex indices from smallest to largest; edges point from the
// larger endpoint to the smaller one.
inline PoincarePoly formal_betti(const MomentGraph &g, const std::vector<int> &order) {
    if (order.size() != g.vertices.size()) throw precondition_violation("order must list every vertex once");
    std::vector<int> rank(g.vertices.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) {
        int v = order[k];
        if (v < 0 || static_cast<std::size_t>(v) >= rank.size() || rank[static_cast<std::size_t>(v)] >= 0)
            throw precondition_violation("order must list every vertex once");
        rank[static_cast<std::size_t>(v)] = static_cast<int>(k);
    }
    std::vector<int> out(g.vertices.size(), 0);
    for (const auto &e : g.edges) {
        int src = rank[static_cast<std::size_t>(e.u)] > rank[static_cast<std::size_t>(e.v)] ? e.u : e.v;
        ++out[static_cast<std::size_t>(src)];
    }
    PoincarePoly P;
    for (int d : out) P.add_term(static_cast<std::size_t>(d));
    return P;
}

struct MinPoincare {
    PoincarePoly poly;
    std::vector<int> order;  // smallest first
};

// Exact minimum over all total orders. Building an order bottom-up, a vertex
// placed on top of the set S has out-degree |N(v) cap S|; the comparison is
// translation invariant, so the minimum decomposes over subsets.
inline MinPoincare min_formal_poincare(const MomentGraph &g, int max_vertices = 22) {
    const int n = static_cast<int>(g.vertices.size());
    if (n > max_vertices)
        throw budget_exceeded("graph with " + std::to_string(n) + " vertices exceeds the budget of " +
                              std::to_string(max_vertices));
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (const auto &e : g.edges) {
        nbr[static_cast<std::size_t>(e.u)] |= 1u << e.v;
        nbr[static_cast<std::size_t>(e.v)] |= 1u << e.u;
    }
    const std::size_t full = std::size_t{1} << n;
    std::vector<PoincarePoly> best(full);
    std::vector<int> last(full, -1);
    for (std::size_t S = 1; S < full; ++S) {
        bool have = false;
        for (int v = 0; v < n; ++v) {
            if (!((S >> v) & 1u)) continue;
            std::size_t rest = S & ~(std::size_t{1} << v);
            PoincarePoly cand = best[rest];
            cand.add_term(static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(rest) & nbr[static_cast<std::size_t>(v)])));
            if (!have || compare(cand, best[S]) < 0) {
                best[S] = cand;
                last[S] = v;
                have = true;
            }
        }
    }
    MinPoincare r;
    r.poly = best[full - 1];
    std::vector<int> top_down;
    for (std::size_t S = full - 1; S; S &= ~(std::size_t{1} << last[S])) top_down.push_back(last[S]);
    r.order.assign(top_down.rbegin(), top_down.rend());
    return r;
}

inline std::string to_dot(const MomentGraph &g) {
    std::string s = "graph moment {\n";
    for (std::size_t k = 0; k < g.vertices.size(); ++k)
        s += "  v" + std::to_string(k) + " [label=\"" + to_string(g.vertices[k]) + "\"];\n";
    for (const auto &e : g.edges)
        s += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) + " [label=\"" + e.alpha.name() + ", " +
             std::to_string(e.k) + "\"];\n";
    return s + "}\n";
}

} // namespace mvpave

#endif

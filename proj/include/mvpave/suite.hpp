#ifndef MVPAVE_SUITE_HPP
#define MVPAVE_SUITE_HPP

// The ten acceptance checks. Each returns a pass flag, a one-line summary and
// the first witness of a failure, if any.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grass.hpp"
#include "moment.hpp"
#include "mvcomb.hpp"
#include "paving.hpp"
#include "rootdata.hpp"
#include "springer.hpp"

namespace mvpave::suite {

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary;
    std::string witness;
    std::vector<std::string> notes;
    double seconds = 0;
};

struct Options {
    std::uint64_t seed = 7;
    std::function<void(const std::string &)> log;  // progress, may be empty
};

namespace detail {

inline std::string show(const std::array<int, 3> &n) {
    return "(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," + std::to_string(n[2]) + ")";
}

inline std::vector<std::array<int, 3>> normal_box(int hi) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= hi; ++a)
        for (int b = 0; b <= hi; ++b)
            for (int c = 0; c <= hi; ++c)
                if (normal_position({Word::w121, {a, b, c}})) out.push_back({a, b, c});
    return out;
}

inline std::vector<ValuationPattern> ultrametric_box(int hi) {
    std::vector<ValuationPattern> out;
    for (int x = 0; x <= hi; ++x)
        for (int y = 0; y <= hi; ++y)
            for (int z = 0; z <= hi; ++z)
                if (is_ultrametric({x, y, z})) out.push_back({x, y, z});
    return out;
}

// Alternating words of length len ending in the given letter.
inline CrystalWord alternating(int len, int last) {
    CrystalWord j;
    for (int k = 0; k < len; ++k) j.insert(j.begin(), k % 2 == 0 ? last : 3 - last);
    return j;
}

template <class Rng>
LaurentSeries exact_with_val(int n, std::uint32_t p, Rng &rng) {
    std::uniform_int_distribution<std::uint32_t> unit(1, p - 1);
    return LaurentSeries::monomial(p, unit(rng), n) + random_poly(n + 1, n + 4, p, rng);
}

} // namespace detail

inline Result braid_involutivity() {
    Result r{1, "braid involutivity and invariance", true, "", "", {}, 0};
    int cases = 0;
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            for (int c = 0; c <= 10; ++c) {
                ++cases;
                LusztigDatum d{Word::w121, {a, b, c}}, e = braid(d);
                LusztigDatum e212 = in_word(e, Word::w212);
                bool ok = braid(e) == d && e.word == Word::w212;
                ok = ok && dimension(d) == e212.n[0] + 2 * e212.n[1] + e212.n[2];
                ok = ok && coweight(d) == coweight(e);
                if (!ok && r.pass) r.pass = false, r.witness = detail::show(d.n);
            }
    r.summary = std::to_string(cases) + " data";
    return r;
}

inline Result tropicalization(const Options &o) {
    Result r{2, "tropical transition", true, "", "", {}, 0};
    std::mt19937_64 rng(o.seed);
    const std::uint32_t p = 10007;
    std::uniform_int_distribution<int> nv(0, 4);
    int generic = 0, special = 0;
    for (int s = 0; s < 1000; ++s) {
        std::array<int, 3> n{nv(rng), nv(rng), nv(rng)};
        std::array<LaurentSeries, 3> t{random_with_val(n[0], p, rng), random_with_val(n[1], p, rng),
                                       random_with_val(n[2], p, rng)};
        auto tp = transition(t);
        int vs = (t[0] + t[2]).val();
        if (vs == std::min(n[0], n[2])) {
            ++generic;
            LusztigDatum b = braid({Word::w121, n});
            std::array<int, 3> got{tp[0].val(), tp[1].val(), tp[2].val()};
            if (got != b.n && r.pass) r.pass = false, r.witness = "n=" + detail::show(n) + " got " + detail::show(got);
        } else {
            ++special;
            if (n[0] != n[2] && r.pass) r.pass = false, r.witness = "cancellation with n1 != n3 at " + detail::show(n);
        }
    }
    r.summary = std::to_string(generic) + " generic samples match, " + std::to_string(special) +
                " cancellations all with n1 = n3";
    return r;
}

inline Result generic_points(const Options &o) {
    Result r{3, "generic points of the parametrization", true, "", "", {}, 0};
    std::mt19937_64 rng(o.seed + 1);
    const std::uint32_t p = 10007;
    int total = 0, inside = 0, equal = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c) {
                LusztigDatum d{Word::w121, {a, b, c}};
                GTFamily f = vertices_of(d, {-a, 0, b});
                for (int s = 0; s < 20; ++s) {
                    std::array<LaurentSeries, 3> t{detail::exact_with_val(a, p, rng), detail::exact_with_val(b, p, rng),
                                                   detail::exact_with_val(c, p, rng)};
                    GrassPoint x = canonicalize_point(inverse(y_map(Word::w121, t)));
                    ++total;
                    if (member(x, f)) ++inside;
                    else if (r.witness.empty()) r.witness = "outside at n=" + detail::show(d.n);
                    if (ec(x) == f) ++equal;
                }
            }
    double frac = static_cast<double>(equal) / total;
    r.pass = inside == total && frac >= 0.95;
    std::ostringstream s;
    s << inside << "/" << total << " inside, Ec equal in " << equal << "/" << total;
    r.summary = s.str();
    return r;
}

inline Result polytopes_are_mv(const Options &o) {
    Result r{4, "Ec(x) is an MV polytope up to W", true, "", "", {}, 0};
    std::mt19937_64 rng(o.seed + 2);
    const std::uint32_t p = 10007;
    GTFamily sch = weyl_polytope({3, -1, -1});
    std::set<std::array<int, 6>> shapes;
    for (int s = 0; s < 200; ++s) {
        GrassPoint x = random_point(sch, p, rng);
        GTFamily e = ec(x);
        shapes.insert(e.supports());
        try {
            canonicalize(e);
        } catch (const not_mv &) {
            if (r.pass) r.pass = false, r.witness = "NotMV for point " + x.key();
        }
    }
    r.summary = "200 points, " + std::to_string(shapes.size()) + " distinct polytopes";
    return r;
}

inline Result contracting_cells() {
    Result r{5, "contracting cells are affine of dimension n1+2n2+n3", true, "", "", {}, 0};
    int cells = 0;
    for (const auto &n : detail::normal_box(2)) {
        MVPolytope P({Word::w121, n}, {0, 0, 0});
        GTFamily f = P.family();
        auto all = enumerate_points(f, 2);
        std::vector<GTFamily> ecs;
        for (const auto &x : all) ecs.push_back(ec(x));
        for (int b = 0; b < 6; ++b) {
            ++cells;
            CellShape c = contracting_cell(P, b);
            std::vector<GrassPoint> oracle;
            for (std::size_t k = 0; k < all.size(); ++k)
                if (ecs[k].at_borel(b) == c.lambda) oracle.push_back(all[k]);
            auto shape = cell_points(c, 2);
            const long long want = ipow(2, dimension(P));
            bool ok = c.dim == dimension(P) && static_cast<long long>(oracle.size()) == want && shape == oracle;
            if (!ok && r.pass)
                r.pass = false, r.witness = "n=" + detail::show(n) + " B" + std::to_string(b) + ": " +
                                            std::to_string(oracle.size()) + " points, shape gives " +
                                            std::to_string(shape.size()) + ", expected " + std::to_string(want);
        }
    }
    r.summary = std::to_string(cells) + " cells over F_2";
    return r;
}

inline Result purity_bridge() {
    Result r{6, "pavings and point counts agree", true, "", "", {}, 0};
    struct Item {
        std::string name;
        GTFamily f;
        std::optional<LusztigDatum> d;
    };
    std::vector<Item> items;
    for (auto n : std::vector<std::array<int, 3>>{{1, 0, 0}, {0, 0, 1}, {1, 0, 1}, {2, 1, 1}, {1, 1, 0}, {2, 0, 1}}) {
        LusztigDatum d{Word::w121, n};
        items.push_back({"P" + detail::show(n), vertices_of(d, {0, 0, 0}), d});
    }
    items.push_back({"Weyl(1,0,0)", weyl_polytope({1, 0, 0}), std::nullopt});
    items.push_back({"Weyl(1,1,0)", weyl_polytope({1, 1, 0}), std::nullopt});
    std::string polys;
    for (const auto &it : items) {
        auto fail = [&](const std::string &w) {
            if (r.pass) r.pass = false, r.witness = it.name + ": " + w;
        };
        PavingPlan g = greedy_paving(it.f);
        if (!g.ok())
            for (const auto &v : g.verified)
                if (!v.ok) fail("greedy q=" + std::to_string(v.q) + " " + v.detail);
        PoincarePoly P = g.poincare();
        if (it.d && normal_position(*it.d)) {
            PavingPlan iw = paving_121(*it.d);
            if (!iw.ok()) fail("Iwahori paving does not verify");
            if (!(iw.poincare() == P)) fail("Iwahori polynomial " + iw.poincare().to_string());
        }
        MomentGraph G = skeleton(it.f);
        if (G.vertices.size() <= 12) {
            auto m = min_formal_poincare(G);
            if (!(m.poly == P)) fail("minimum over orders " + m.poly.to_string() + " vs " + P.to_string());
        }
        polys += (polys.empty() ? "" : "; ") + it.name + " " + P.to_string();
    }
    r.summary = polys;
    return r;
}

inline Result springer_criterion(const Options &o) {
    Result r{7, "affine-cell criterion vs brute force", true, "", "", {}, 0};
    int cases = 0, affine = 0, lifted = 0, diag = 0;
    for (const auto &n : detail::normal_box(2)) {
        MVPolytope P({Word::w121, n}, {0, 0, 0});
        for (const auto &c : detail::ultrametric_box(3)) {
            std::vector<std::uint32_t> qs{realizable(c, 2) ? 2u : 3u};
            if (qs[0] == 3) ++lifted;
            if (n[0] == c.c12 && qs[0] == 2) qs.push_back(3);
            for (std::uint32_t q : qs) {
                if (q == 3 && n[0] == c.c12) ++diag;
                RegularDiagonal g = make_gamma(c, q);
                for (int b = 0; b < 6; ++b) {
                    ++cases;
                    auto cv = criterion_value(P, b, c);
                    auto orc = criterion_oracle(P, b, g);
                    if (cv.affine) ++affine;
                    if ((cv.affine != orc.affine_like || cv.sum != orc.curves) && r.pass) {
                        std::ostringstream w;
                        w << "n=" << detail::show(n) << " c=(" << c.c12 << "," << c.c23 << "," << c.c13 << ") B" << b
                          << " q=" << q << ": sum l " << cv.sum << " bound " << cv.bound << ", oracle " << orc.count
                          << " points, " << orc.curves << " curves";
                        r.pass = false, r.witness = w.str();
                    }
                    // raw form of the first inequality
                    if (b == 0) {
                        const int n1 = n[0], n2 = n[1], n3 = n[2];
                        bool raw = std::max(0, n1 - c.c12) + std::max(0, n2 - c.c23) + c.c12 >=
                                   std::min(n1 + n2, n1 - n3 + c.c13);
                        if (raw != cv.affine && r.pass) r.pass = false, r.witness = "raw inequality differs";
                    }
                }
            }
        }
    }
    (void)o;
    r.summary = std::to_string(cases) + " cases agree (" + std::to_string(affine) + " affine), " +
                std::to_string(diag) + " of them at q=3 on n1=c12";
    r.notes.push_back(std::to_string(lifted) +
                      " patterns with c12=c23=c13 have no diagonal realization over F_2 and were run at q=3");
    return r;
}

struct TruncatedRun {
    ValuationPattern c;
    CrystalWord j;
    TruncatedPlan plan;
};

inline std::vector<std::uint32_t> springer_primes(const ValuationPattern &c) {
    return realizable(c, 2) ? std::vector<std::uint32_t>{2, 3} : std::vector<std::uint32_t>{3, 5};
}

inline std::vector<TruncatedRun> truncated_runs(const Options &o) {
    std::vector<TruncatedRun> runs;
    for (auto [n1, n2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        ValuationPattern c{n1, n2, n2};
        for (int len = 0; len <= 2 * n2 + 1; ++len)
            for (int last : {2, 1}) {
                if (len == 0 && last == 1) continue;
                CrystalWord j = len ? detail::alternating(len, last) : CrystalWord{};
                if (o.log) o.log("  truncated paving n=(" + std::to_string(n1) + "," + std::to_string(n2) + ") j=" + word_string(j));
                runs.push_back({c, j, truncated_paving(c, j, springer_primes(c))});
            }
    }
    return runs;
}

inline Result truncated_springer(const std::vector<TruncatedRun> &runs) {
    Result r{8, "truncated Springer fibers are paved", true, "", "", {}, 0};
    int verified = 0;
    std::string odd;
    for (const auto &run : runs) {
        const int n1 = run.c.c12, n2 = run.c.c23;
        const int len = static_cast<int>(run.j.size());
        const bool ends2 = len == 0 || run.j.back() == 2;
        const std::string tag = "n=(" + std::to_string(n1) + "," + std::to_string(n2) + ") j=" + word_string(run.j);
        auto fail = [&](const std::string &w) {
            if (r.pass) r.pass = false, r.witness = tag + ": " + w;
        };
        const auto &T = run.plan;
        if (len > 2 * n2) {
            if (ends2 && !T.zero) fail("expected the zero polytope");
            if (!ends2) odd += (odd.empty() ? "" : ", ") + word_string(run.j) + (T.zero ? " zero" : " nonzero");
            if (!ends2 && !T.zero && !T.plan.ok()) fail("plan does not verify");
            continue;
        }
        if (T.zero) {
            fail("unexpected zero polytope");
            continue;
        }
        if (!T.plan.ok()) {
            for (const auto &v : T.plan.verified)
                if (!v.ok) fail("q=" + std::to_string(v.q) + " " + v.detail);
            continue;
        }
        ++verified;
        if (len == 2 * n2) {
            if (!T.springer_automatic) fail("Springer condition not automatic on the base");
            if (!T.layers.empty()) fail("base case has layers");
            if (ends2 && !(T.base->datum() == LusztigDatum{Word::w121, {n1 - n2, n2, 0}}))
                fail("base polytope differs from P(n1-n2, n2, 0)");
        }
    }
    r.summary = std::to_string(verified) + " plans verified at two primes";
    r.notes.push_back("patterns (1,1,1) and (2,2,2) need three distinct residues and were verified at q=3,5");
    if (!odd.empty()) r.notes.push_back("long words ending in 1: " + odd);
    return r;
}

inline Result springer_dimension(const std::vector<TruncatedRun> &runs) {
    Result r{9, "top paving dimension equals the fiber dimension", true, "", "", {}, 0};
    std::string s;
    for (const auto &run : runs) {
        if (!run.j.empty()) continue;
        const int n1 = run.c.c12, n2 = run.c.c23;
        int top = run.plan.plan.max_dim();
        bool ok = run.plan.plan.ok() && top == n1 + 2 * n2 && top == springer_dim(run.c);
        if (!ok && r.pass) r.pass = false, r.witness = "n=(" + std::to_string(n1) + "," + std::to_string(n2) + ") top " + std::to_string(top);
        s += (s.empty() ? "" : ", ") + std::string("(") + std::to_string(n1) + "," + std::to_string(n2) + ")->" + std::to_string(top);
    }
    r.summary = s;
    return r;
}

inline Result kostant_count() {
    Result r{10, "Lusztig data count equals Kostant partitions", true, "", "", {}, 0};
    const std::array<Coweight, 3> pos{Coweight{1, -1, 0}, Coweight{0, 1, -1}, Coweight{1, 0, -1}};
    for (int p = 0; p <= 12; ++p)
        for (int q = 0; q <= 12; ++q) {
            Coweight target = p * pos[0] + q * pos[1];
            int data = 0;
            for (int a = 0; a <= p + q; ++a)
                for (int b = 0; b <= p + q; ++b)
                    for (int c = 0; c <= p + q; ++c)
                        if (coweight({Word::w121, {a, b, c}}) == -1 * target) ++data;
            // multisets of positive coroots, grown in nondecreasing root order
            int parts = 0;
            std::function<void(std::size_t, Coweight)> grow = [&](std::size_t from, Coweight sum) {
                if (sum == target) ++parts;
                if (sum[0] >= target[0] && sum[2] <= target[2]) return;
                for (std::size_t k = from; k < pos.size(); ++k) {
                    Coweight s = sum + pos[k];
                    if (s[0] > target[0] || s[2] < target[2]) continue;
                    grow(k, s);
                }
            };
            grow(0, {0, 0, 0});
            if ((data != parts || data != std::min(p, q) + 1) && r.pass)
                r.pass = false, r.witness = "p=" + std::to_string(p) + " q=" + std::to_string(q);
        }
    r.summary = "169 coweights";
    return r;
}

template <class F>
Result timed(F &&f) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = f();
    } catch (const std::exception &e) {
        r.pass = false;
        r.witness = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Runs the selected checks (empty = all) in order.
inline std::vector<Result> run(const Options &o, const std::set<int> &only = {}) {
    std::vector<Result> out;
    auto want = [&](int id) { return only.empty() || only.count(id); };
    auto go = [&](int id, const std::string &name, auto f) {
        if (!want(id)) return;
        if (o.log) o.log("running " + std::to_string(id) + " " + name);
        Result r = timed(f);
        if (r.id == 0) r.id = id, r.name = name;
        out.push_back(r);
    };
    go(1, "braid", [] { return braid_involutivity(); });
    go(2, "tropical", [&] { return tropicalization(o); });
    go(3, "generic", [&] { return generic_points(o); });
    go(4, "mv", [&] { return polytopes_are_mv(o); });
    go(5, "cells", [] { return contracting_cells(); });
    go(6, "purity", [] { return purity_bridge(); });
    go(7, "criterion", [&] { return springer_criterion(o); });
    if (want(8) || want(9)) {
        std::vector<TruncatedRun> runs;
        auto t0 = std::chrono::steady_clock::now();
        std::string err;
        try {
            runs = truncated_runs(o);
        } catch (const std::exception &e) {
            err = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto with = [&](int id, const std::string &name, auto f) {
            Result r = err.empty() ? timed(f) : Result{id, name, false, "", "exception: " + err, {}, 0};
            r.seconds += dt;
            out.push_back(r);
        };
        if (want(8)) with(8, "truncated Springer fibers are paved", [&] { return truncated_springer(runs); });
        if (want(9)) with(9, "top paving dimension equals the fiber dimension", [&] { return springer_dimension(runs); });
    }
    go(10, "kostant", [] { return kostant_count(); });
    return out;
}

} // namespace mvpave::suite

#endif

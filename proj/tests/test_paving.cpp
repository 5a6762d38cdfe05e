#include <algorithm>
#include <set>

#include "doctest.h"
#include "mvpave/paving.hpp"

using namespace mvpave;

namespace {

std::vector<int> dims(const PavingPlan &p) {
    std::vector<int> d;
    for (const auto &s : p.steps) d.push_back(s.dim);
    std::sort(d.rbegin(), d.rend());
    return d;
}

std::set<std::string> keys(const std::vector<GrassPoint> &v) {
    std::set<std::string> s;
    for (const auto &x : v) s.insert(x.key());
    return s;
}

} // namespace

TEST_CASE("Iwahori cells of projective planes") {
    for (const Coweight &lambda : {Coweight{1, 0, 0}, Coweight{1, 1, 0}}) {
        GTFamily W = weyl_polytope(lambda);
        for (std::uint32_t q : {2u, 3u}) {
            auto all = enumerate_points(W, q);
            std::set<std::string> seen;
            std::multiset<int> ds;
            for (const auto &lp : lattice_points(W)) {
                IwahoriCell c = iwahori_cell({0, 0, 0}, lambda, lp);
                auto pts = iwahori_cell_points(c, q);
                CHECK(static_cast<long long>(pts.size()) == ipow(q, c.dim));
                for (const auto &x : pts) {
                    CHECK(member(x, W));
                    CHECK(seen.insert(x.key()).second);
                }
                ds.insert(c.dim);
            }
            CHECK(ds == std::multiset<int>{0, 1, 2});
            CHECK(seen == keys(all));
        }
    }
    CHECK_THROWS_AS(iwahori_cell({0, 0, 0}, {0, 1, 0}, {0, 1, 0}), shape_mismatch);
    CHECK_THROWS_AS(iwahori_cell({0, 0, 0}, {2, 1, 0}, {2, 1, 0}), shape_mismatch);
}

TEST_CASE("MV cycles as intersections") {
    auto a = mv_as_intersection({Word::w121, {1, 0, 0}});
    CHECK(a.lambda1 == Coweight{1, 0, 0});
    CHECK(a.a == Coweight{1, 1, 0});
    CHECK(a.lambda2 == Coweight{0, 0, -1});
    auto b = mv_as_intersection({Word::w121, {2, 1, 1}});
    CHECK(b.lambda1 == Coweight{3, -1, -1});
    CHECK(b.a == Coweight{1, 1, 0});
    CHECK(b.lambda2 == Coweight{1, 1, -3});
    CHECK_THROWS_AS(mv_as_intersection({Word::w121, {1, 0, 2}}), normal_position_required);

    for (auto n : std::vector<std::array<int, 3>>{{1, 0, 1}, {2, 0, 1}}) {
        LusztigDatum d{Word::w121, n};
        auto I = mv_as_intersection(d);
        GTFamily f = MVPolytope(d, {0, 0, 0}).family();
        auto cycle = enumerate_points(f, 2);
        std::set<std::string> inter;
        for (const auto &x : enumerate_points(weyl_polytope(I.lambda1), 2))
            if (in_intersection(x, I)) inter.insert(x.key());
        CHECK(inter == keys(cycle));
    }
}

TEST_CASE("Iwahori paving of MV cycles") {
    PavingPlan p = paving_121({Word::w121, {1, 0, 0}});
    CHECK(p.ok());
    CHECK(dims(p) == std::vector<int>{1, 0});
    PavingPlan z = paving_121({Word::w121, {0, 0, 0}});
    CHECK(z.ok());
    CHECK(dims(z) == std::vector<int>{0});
    PavingPlan q = paving_121({Word::w121, {1, 0, 1}});
    CHECK(q.ok());
    CHECK(q.poincare().eval(2) == static_cast<long long>(enumerate_points(weyl_polytope({1, 0, 0}), 2).size()));
    CHECK(q.poincare().eval(3) == 13);
}

TEST_CASE("contracting cells") {
    for (auto n : std::vector<std::array<int, 3>>{{2, 1, 1}, {2, 0, 1}, {1, 0, 0}, {2, 1, 2}}) {
        MVPolytope P({Word::w121, n}, {0, 0, 0});
        GTFamily f = P.family();
        PointSet ps(2, enumerate_points(f, 2));
        for (int b = 0; b < 6; ++b) {
            CellShape c = contracting_cell(P, b);
            CHECK(c.dim == dimension(P));
            CHECK(c.lambda == f.at_borel(b));
            auto pts = cell_points(c, 2);
            CHECK(static_cast<long long>(pts.size()) == ipow(2, dimension(P)));
            std::set<std::string> contracting;
            for (std::size_t k = 0; k < ps.pts.size(); ++k)
                if (ps.ecs[k].at_borel(b) == c.lambda) contracting.insert(ps.pts[k].key());
            CHECK(keys(pts) == contracting);
        }
    }
    // translated polytopes carry their cells along
    MVPolytope T({Word::w121, {2, 1, 1}}, {1, -1, 2});
    for (int b = 0; b < 6; ++b) {
        auto pts = cell_points(contracting_cell(T, b), 2);
        CHECK(pts.size() == 32);
        for (const auto &x : pts) CHECK(f_B(x, b) == T.family().at_borel(b));
    }
    MVPolytope Z({Word::w121, {0, 0, 0}}, {0, 0, 0});
    for (int b = 0; b < 6; ++b) CHECK(cell_points(contracting_cell(Z, b), 3).size() == 1);
    CHECK_THROWS_AS(contracting_cell(MVPolytope({Word::w121, {1, 0, 2}}, {0, 0, 0}), 0), normal_position_required);
    CHECK_THROWS_AS(contracting_cell(T, 6), precondition_violation);
}

TEST_CASE("greedy paving") {
    PavingPlan w = greedy_paving(weyl_polytope({1, 0, 0}));
    CHECK(w.ok());
    CHECK(dims(w) == std::vector<int>{2, 1, 0});
    CHECK(w.verified.at(0).points == 7);
    CHECK(w.verified.at(1).points == 13);
    PavingPlan p = greedy_paving(vertices_of({Word::w121, {1, 0, 0}}, {0, 0, 0}));
    CHECK(p.ok());
    CHECK(dims(p) == std::vector<int>{1, 0});
    for (auto n : std::vector<std::array<int, 3>>{{1, 0, 1}, {2, 1, 1}, {2, 0, 1}}) {
        GTFamily f = vertices_of({Word::w121, n}, {0, 0, 0});
        PavingPlan g = greedy_paving(f);
        CHECK(g.ok());
        CHECK(g.poincare() == min_formal_poincare(skeleton(f)).poly);
        CHECK(g.poincare() == paving_121({Word::w121, n}).poincare());
        CHECK(g.max_dim() == dimension(LusztigDatum{Word::w121, n}));
        // the first cell is a full contracting cell
        CHECK(g.steps.front().dim == dimension(LusztigDatum{Word::w121, n}));
    }
    // the greedy scheme also handles polytopes that are not in normal position
    GTFamily off = vertices_of({Word::w121, {1, 2, 0}}, {0, 0, 0});
    CHECK(greedy_paving(off).ok());
}

TEST_CASE("verification records") {
    GTFamily f = vertices_of({Word::w121, {1, 0, 1}}, {0, 0, 0});
    PavingPlan good = greedy_paving(f);
    CHECK_NOTHROW(require_verified(good));
    PavingPlan never = good;
    never.verified.clear();
    CHECK_FALSE(never.ok());
    CHECK_THROWS_AS(require_verified(never), paving_verification_failed);

    PavingPlan bad = good;
    bad.steps.front().dim += 1;
    bad.verified = {replay(bad, PointSet(2, enumerate_points(f, 2)))};
    CHECK_FALSE(bad.ok());
    CHECK_THROWS_AS(require_verified(bad), paving_verification_failed);

    PavingPlan partial = good;
    partial.steps.pop_back();
    Verification v = replay(partial, PointSet(3, enumerate_points(f, 3)));
    CHECK_FALSE(v.ok);
    CHECK(v.detail.find("not covered") != std::string::npos);
}

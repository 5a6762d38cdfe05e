#include <set>

#include "doctest.h"
#include "mvpave/mvcomb.hpp"

using namespace mvpave;

namespace {

// Support function from the vertex list, and a wide-box filter using it.
int support_from_vertices(const GTFamily &f, const ChamberWeight &S) {
    int m = INT_MIN;
    for (const auto &v : f.lam) m = std::max(m, pairing(v, S));
    return m;
}

std::vector<Coweight> box_points(const GTFamily &f) {
    std::vector<Coweight> out;
    for (int a = -12; a <= 12; ++a)
        for (int b = -12; b <= 12; ++b) {
            Coweight v{a, b, f.nu - a - b};
            bool ok = true;
            for (const auto &S : all_chamber_weights()) ok = ok && pairing(v, S) <= support_from_vertices(f, S);
            if (ok) out.push_back(v);
        }
    return out;
}

// Any integer point set of the right shape satisfying M exists?
bool feasible(const std::array<int, 6> &M, int nu) {
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b)
            if (contains_point(M, nu, {a, b, nu - a - b})) return true;
    return false;
}

} // namespace

TEST_CASE("pairing") {
    CHECK(pairing({1, 0, 0}, ChamberWeight{1}) == 1);
    CHECK(pairing({2, 1, -1}, ChamberWeight{3}) == 3);
    for (const auto &S : all_chamber_weights()) CHECK(pairing({0, 0, 0}, S) == 0);
}

TEST_CASE("Weyl group conventions") {
    CHECK(weyl::all().size() == 6);
    CHECK(weyl::w0().one_line() == "321");
    CHECK(weyl::s(1).one_line() == "213");
    for (const auto &w : weyl::all()) {
        CHECK((w * w.inverse()) == weyl::id());
        CHECK(weyl::from_one_line(w.one_line()) == w);
    }
    std::set<int> seen;
    for (int b = 0; b < 6; ++b) {
        seen.insert(weyl::borel_to_weyl(b));
        CHECK(weyl::weyl_to_borel(weyl::borel_to_weyl(b)) == b);
    }
    CHECK(seen.size() == 6);
    // consecutive Borels differ by one simple reflection
    for (int b = 0; b < 6; ++b) {
        WeylElt d = weyl::borel(b).inverse() * weyl::borel((b + 1) % 6);
        CHECK((d == weyl::s(1) || d == weyl::s(2)));
    }
}

TEST_CASE("family from support") {
    std::array<int, 6> zero{};
    GTFamily f = family_from_support(zero, 0);
    for (const auto &v : f.lam) CHECK(v == Coweight{0, 0, 0});

    GTFamily W = weyl_polytope({2, 0, -1});
    auto M = W.supports();
    CHECK(family_from_support(M, W.nu) == W);
    for (std::size_t k = 0; k < 6; ++k) {
        auto N = M;
        N[k] -= 1;
        // the oracle only says whether any point survives; families need more
        if (!feasible(N, W.nu)) CHECK_THROWS_AS(family_from_support(N, W.nu), inconsistent_family);
        N[k] -= 6;
        CHECK_FALSE(feasible(N, W.nu));
        CHECK_THROWS_AS(family_from_support(N, W.nu), inconsistent_family);
    }
}

TEST_CASE("vertex set of P(2,1,1)") {
    GTFamily f = vertices_of({Word::w121, {2, 1, 1}}, {0, 0, 0});
    std::set<Coweight> got(f.lam.begin(), f.lam.end());
    // (0,n1,-n2) is reached through the degenerate edge at (-n2, n1, 0)
    std::set<Coweight> expect{{0, 2, -1}, {2, 0, -1}, {-1, 2, 0}, {2, -1, 0}, {-1, 1, 1}, {1, -1, 1}};
    CHECK(got == expect);
}

TEST_CASE("lattice points") {
    GTFamily p100 = vertices_of({Word::w121, {1, 0, 0}}, {0, 0, 0});
    CHECK(lattice_points(p100) == std::vector<Coweight>{{0, 1, 0}, {1, 0, 0}});
    CHECK(lattice_points(point_family({0, 0, 0})) == std::vector<Coweight>{{0, 0, 0}});
    CHECK(lattice_points(weyl_polytope({1, 0, 0})) == std::vector<Coweight>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    for (auto n : std::vector<std::array<int, 3>>{{2, 1, 1}, {3, 0, 2}, {1, 2, 0}, {0, 3, 3}}) {
        GTFamily f = vertices_of({Word::w121, n}, {1, -2, 0});
        auto a = lattice_points(f), b = box_points(f);
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("containment") {
    GTFamily a = vertices_of({Word::w121, {1, 0, 0}}, {0, 0, 0});
    GTFamily b = vertices_of({Word::w121, {2, 0, 0}}, {0, 0, 0});
    CHECK(a.nu != b.nu);
    CHECK_FALSE(contains(b, a));
    GTFamily at = translate(a, {1, 0, 0});
    CHECK(contains(b, at));
    CHECK_FALSE(contains(at, b));
}

TEST_CASE("Weyl action and translation") {
    GTFamily f = vertices_of({Word::w121, {2, 1, 1}}, {0, 0, 0});
    for (const auto &w : weyl::all()) {
        GTFamily g = weyl_act(w, f);
        CHECK(is_valid(g));
        CHECK(weyl_act(w.inverse(), g) == f);
        auto pf = lattice_points(f), pg = lattice_points(g);
        CHECK(pf.size() == pg.size());
    }
    GTFamily t = translate(f, {1, 2, 3});
    CHECK(t.nu == f.nu + 6);
    CHECK(equal_up_to_translation(f, t));
    CHECK(lattice_points(t).size() == lattice_points(f).size());
}

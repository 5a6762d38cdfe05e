#include <random>

#include "doctest.h"
#include "mvpave/grass.hpp"

using namespace mvpave;

namespace {

constexpr std::uint32_t kP = 10007;

// Random element of K = GL3(O) with polynomial entries.
Matrix3 random_k(std::uint32_t p, std::mt19937_64 &rng) {
    while (true) {
        Matrix3 k(p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) k(i, j) = random_poly(0, 3, p, rng);
        LaurentSeries d = det(k);
        if (!d.is_zero() && d.val() == 0) return k;
    }
}

std::array<LaurentSeries, 3> random_t(const std::array<int, 3> &n, std::mt19937_64 &rng, int N = 24) {
    std::array<LaurentSeries, 3> t;
    for (std::size_t k = 0; k < 3; ++k) t[k] = random_with_val(n[k], kP, rng, N);
    return t;
}

bool upper_unipotent(const Matrix3 &m) {
    for (int i = 0; i < 3; ++i) {
        if (!(m(i, i) - LaurentSeries::one(m.prime())).is_zero()) return false;
        for (int j = 0; j < i; ++j)
            if (!m(i, j).is_zero()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("canonical form") {
    GrassPoint t = canonicalize_point(Matrix3::diagonal(5, {2, -1, 0}));
    CHECK(t == GrassPoint::torus(5, {2, -1, 0}));
    GrassPoint e = canonicalize_point(Matrix3::identity(5));
    CHECK(e.nu() == 0);
    CHECK(e == GrassPoint::torus(5, {0, 0, 0}));

    std::mt19937_64 rng(11);
    for (int s = 0; s < 30; ++s) {
        const std::uint32_t p = s % 2 ? 2 : 7;
        Matrix3 g = Matrix3::elementary(1, 0, random_poly(-2, 2, p, rng)) *
                    Matrix3::elementary(0, 2, random_poly(-3, 1, p, rng)) * Matrix3::diagonal(p, {1, -1, 2});
        GrassPoint x = canonicalize_point(g);
        CHECK(canonicalize_point(g * random_k(p, rng)) == x);
        CHECK(canonicalize_point(x.h()) == x);
        CHECK(d_profile(canonicalize_point(g * random_k(p, rng))) == d_profile(x));
    }
}

TEST_CASE("minors") {
    const std::uint32_t p = 5;
    Matrix3 I = Matrix3::identity(p);
    for (const auto &S : all_chamber_weights()) {
        bool initial = S.mask == 1 || S.mask == 3;
        CHECK(Delta(I, S).identical(initial ? LaurentSeries::one(p) : LaurentSeries::zero(p)));
    }
    Matrix3 g = Matrix3::elementary(0, 1, LaurentSeries::eps(p, 2)) * Matrix3::diagonal(p, {3, 1, 0});
    CHECK(Delta(g, ChamberWeight{1}).identical(g(0, 0)));
    CHECK(minor(Matrix3::diagonal(p, {2, -1, 4}), {0, 1}, {0, 1}).identical(LaurentSeries::eps(p, 1)));
}

TEST_CASE("valuation functions") {
    const Coweight nu{2, -1, 3};
    GrassPoint t = GrassPoint::torus(3, nu);
    for (const auto &S : all_chamber_weights()) CHECK(D(t, S) == -pairing(nu, S));
    CHECK(ec(t) == point_family(nu));

    // constant along U_w(F) eps^nu
    std::mt19937_64 rng(5);
    for (const auto &w : weyl::all()) {
        Matrix3 u = Matrix3::identity(3);
        for (const Root &a : all_roots())
            if (w.positive(a)) u = u * Matrix3::elementary(a.i, a.j, random_poly(-3, 3, 3, rng));
        GrassPoint x = canonicalize_point(u * Matrix3::diagonal(3, nu));
        for (int i = 1; i <= 2; ++i) CHECK(D(x, chamber(w, i)) == -pairing(nu, chamber(w, i)));
        CHECK(ec(x).at(w) == nu);
    }

    // root subgroup entries absorbed by K leave a point
    for (const Root &a : all_roots()) {
        int n = a.pair(nu);
        GrassPoint x = canonicalize_point(Matrix3::elementary(a.i, a.j, LaurentSeries::eps(3, n)) * Matrix3::diagonal(3, nu));
        CHECK(x == t);
        CHECK(ec(x) == point_family(nu));
    }
}

TEST_CASE("generic points of an MV cycle") {
    std::mt19937_64 rng(17);
    for (auto n : std::vector<std::array<int, 3>>{{1, 0, 1}, {2, 1, 1}, {0, 2, 1}, {1, 1, 2}}) {
        for (Word w : {Word::w121, Word::w212}) {
            LusztigDatum d{w, n};
            LusztigDatum a = in_word(d, Word::w121);
            GTFamily target = vertices_of(a, {-a.n[0], 0, a.n[1]});
            int equal = 0;
            for (int s = 0; s < 10; ++s) {
                GrassPoint x = canonicalize_point(inverse(y_map(w, random_t(n, rng))));
                CHECK(member(x, target));
                equal += ec(x) == target;
            }
            CHECK(equal >= 9);
        }
    }
}

TEST_CASE("membership") {
    GTFamily f = weyl_polytope({2, 1, 0});
    for (const auto &v : f.lam) CHECK(member(GrassPoint::torus(2, v), f));
    GTFamily sch = weyl_polytope({2, 0, 0});
    GTFamily small = translate(weyl_polytope({1, 0, 0}), {1, 0, 0});
    auto pts = enumerate_points(sch, 2);
    int inside = 0;
    for (const auto &x : pts) {
        CHECK(member(x, small) == contains(small, ec(x)));
        inside += member(x, small);
    }
    CHECK(inside > 0);
    CHECK(inside < static_cast<int>(pts.size()));
    CHECK(inside == static_cast<int>(enumerate_points(small, 2).size()));
}

TEST_CASE("Gauss decomposition") {
    const std::uint32_t p = 7;
    Matrix3 u = Matrix3::elementary(0, 1, LaurentSeries::eps(p, -1)) * Matrix3::elementary(1, 2, LaurentSeries::eps(p, 2));
    auto g = gauss(u);
    CHECK(g.v.identical(Matrix3::identity(p)));
    CHECK(g.t.identical(Matrix3::identity(p)));
    CHECK(g.u.identical(u));
    Matrix3 t = Matrix3::diagonal(p, {1, 4, -2});
    auto h = gauss(t);
    CHECK(h.u.identical(Matrix3::identity(p)));
    CHECK(h.t.identical(t));
    Matrix3 s(p);
    s(0, 1) = s(1, 0) = s(2, 2) = LaurentSeries::one(p);
    CHECK_THROWS_AS(gauss(s), gauss_failure);
}

TEST_CASE("eta round trip") {
    std::mt19937_64 rng(23);
    for (int s = 0; s < 20; ++s) {
        Word w = s % 2 ? Word::w212 : Word::w121;
        auto t = random_t({s % 3, (s + 1) % 3, 1}, rng);
        Matrix3 x = x_map(w, t);
        Matrix3 y = eta_w0_inv(x);
        CHECK(upper_unipotent(x));
        CHECK(upper_unipotent(y));
        CHECK(eta_w0(y).agrees(x));
        CHECK(eta_w0_inv(eta_w0(y)).agrees(y));
        auto back = x_map_inverse(w, eta_w0(y));
        for (std::size_t k = 0; k < 3; ++k) CHECK((back[k] - t[k]).is_zero());
    }
    std::array<LaurentSeries, 3> ones{LaurentSeries::one(kP), LaurentSeries::one(kP), LaurentSeries::one(kP)};
    Matrix3 y = y_map(Word::w121, ones);
    CHECK(upper_unipotent(y));
    CHECK(eta_w0(y).identical(x_map(Word::w121, ones)));
    CHECK_THROWS_AS(eta_w0_inv(Matrix3(kP)), gauss_failure);
    CHECK_THROWS_AS(y_map(Word::w121, {LaurentSeries::zero(kP), ones[1], ones[2]}), gauss_failure);
}

TEST_CASE("change of word") {
    std::mt19937_64 rng(29);
    for (int s = 0; s < 30; ++s) {
        auto t = random_t({s % 3, s % 2, (s / 3) % 3}, rng);
        auto t2 = transition(t);
        CHECK(y_map(Word::w121, t).agrees(y_map(Word::w212, t2)));
        LaurentSeries sum = t[0] + t[2];
        if (sum.val() == std::min(t[0].val(), t[2].val())) {
            LusztigDatum b = braid({Word::w121, {t[0].val(), t[1].val(), t[2].val()}});
            CHECK(b.n == std::array<int, 3>{t2[0].val(), t2[1].val(), t2[2].val()});
        }
    }
}

TEST_CASE("decompose into U0 coordinates") {
    std::mt19937_64 rng(31);
    for (int s = 0; s < 10; ++s) {
        Word w = s % 2 ? Word::w212 : Word::w121;
        std::array<int, 3> n{s % 3, (s + 1) % 2, (s + 2) % 3};
        GrassPoint x = canonicalize_point(inverse(y_map(w, random_t(n, rng))));
        auto t = decompose_u0(x, w, rng);
        CHECK(canonicalize_point(inverse(y_map(w, t))) == x);
    }
    GrassPoint id = canonicalize_point(Matrix3::identity(kP));
    auto t = decompose_u0(id, Word::w121, rng);
    CHECK(canonicalize_point(inverse(y_map(Word::w121, t))) == id);
    CHECK_THROWS_AS(decompose_u0(GrassPoint::torus(kP, {1, 0, -1}), Word::w121, rng), precondition_violation);
}

TEST_CASE("enumeration") {
    CHECK(enumerate_points(weyl_polytope({1, 0, 0}), 2).size() == 7);
    CHECK(enumerate_points(weyl_polytope({1, 0, 0}), 3).size() == 13);
    CHECK(enumerate_points(point_family({1, 2, 3}), 5).size() == 1);
    GTFamily p100 = vertices_of({Word::w121, {1, 0, 0}}, {0, 0, 0});
    CHECK(enumerate_points(p100, 2).size() == 3);
    CHECK(enumerate_points(p100, 3).size() == 4);
    CHECK(enumerate_points(weyl_polytope({1, 1, 0}), 3).size() == 13);

    // wider windows find nothing new
    for (const GTFamily &f : {weyl_polytope({2, 0, 0}), vertices_of({Word::w121, {2, 1, 1}}, {0, 0, 0})}) {
        auto a = enumerate_points(f, 2);
        EnumOptions wide;
        wide.slack = 2;
        auto b = enumerate_points(f, 2, wide);
        CHECK(a == b);
        for (const auto &x : a) CHECK(member(x, f));
    }
    EnumOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(enumerate_points(weyl_polytope({3, 0, 0}), 2, tiny), budget_exceeded);
    CHECK_THROWS_AS(enumerate_points(weyl_polytope({1, 0, 0}), 4), precondition_violation);
}

TEST_CASE("random points") {
    std::mt19937_64 rng(37);
    GTFamily f = weyl_polytope({3, -1, -1});
    for (int s = 0; s < 20; ++s) {
        GrassPoint x = random_point(f, kP, rng);
        CHECK(member(x, f));
        CHECK(is_mv(ec(x)));
    }
}

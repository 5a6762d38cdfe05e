#include <random>

#include "doctest.h"
#include "mvpave/laurent.hpp"

using namespace mvpave;

namespace {
LaurentSeries poly(std::uint32_t p, int lead, std::vector<LaurentSeries::coeff_t> c) {
    return LaurentSeries::polynomial(p, lead, std::move(c));
}
} // namespace

TEST_CASE("valuation") {
    CHECK((LaurentSeries::eps(5, 2) + LaurentSeries::eps(5, 3)).val() == 2);
    CHECK(LaurentSeries::zero(5).val() == kInfVal);
    LaurentSeries e = LaurentSeries::eps(7, 1);
    LaurentSeries d = e - e;
    CHECK(d.is_exact_zero());
    CHECK(d.val() == kInfVal);
    CHECK_THROWS_AS(LaurentSeries::zero_mod(5, 4).val(), precision_loss);
}

TEST_CASE("ring operations") {
    const std::uint32_t p = 11;
    CHECK((poly(p, 0, {1, 1}) + LaurentSeries::constant(p, -1)).identical(LaurentSeries::eps(p, 1)));
    CHECK((LaurentSeries::eps(p, 1) * LaurentSeries::eps(p, 2)).identical(LaurentSeries::eps(p, 3)));
    LaurentSeries x = poly(2, 0, {1, 1});
    CHECK((x + x).is_exact_zero());
    CHECK((-poly(p, -2, {3, 0, 4})).identical(poly(p, -2, {8, 0, 7})));
}

TEST_CASE("inverse") {
    CHECK(inv(LaurentSeries::eps(3, 1)).identical(LaurentSeries::eps(3, -1)));
    LaurentSeries y = inv(poly(2, 0, {1, 1}), 4);
    CHECK(y.prec() == 4);
    CHECK(y.coeffs() == std::vector<LaurentSeries::coeff_t>{1, 1, 1, 1});
    CHECK_THROWS_AS(inv(LaurentSeries::zero(2)), division_by_zero);

    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        LaurentSeries a = random_with_val(k % 5 - 2, 10007, rng, 20);
        LaurentSeries prod = a * inv(a, 20);
        CHECK((prod - LaurentSeries::one(10007)).is_zero());
    }
}

TEST_CASE("random series") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        LaurentSeries a = random_with_val(0, 2, rng, 10);
        CHECK(a.val() == 0);
        CHECK(a.lead_coeff() == 1);
        LaurentSeries b = random_with_val(3, 7, rng, 10);
        CHECK(b.val() == 3);
        CHECK(b.lead_coeff() != 0);
    }
    LaurentSeries u = random_with_val(0, 10007, rng, 12), v = random_with_val(0, 10007, rng, 12);
    CHECK_FALSE(u.identical(v));
    CHECK_THROWS_AS(random_with_val(5, 3, rng, 5), precondition_violation);
}

TEST_CASE("precision tracking") {
    LaurentSeries a = LaurentSeries::series(5, 0, {1, 2}, 3);
    LaurentSeries b = LaurentSeries::eps(5, -2);
    CHECK((a * b).prec() == 1);
    CHECK((a + LaurentSeries::eps(5, 7)).prec() == 3);
    CHECK_THROWS_AS(min_val({LaurentSeries::zero_mod(5, 1), LaurentSeries::eps(5, 2)}), precision_loss);
    CHECK(min_val({LaurentSeries::zero_mod(5, 4), LaurentSeries::eps(5, 2)}) == 2);
    CHECK(min_val({LaurentSeries::zero(5), LaurentSeries::zero(5)}) == kInfVal);
}

TEST_CASE("matrices") {
    const std::uint32_t p = 5;
    Matrix3 d = Matrix3::diagonal(p, {1, 2, -4});
    CHECK(minor(d, {0, 1}, {0, 1}).identical(LaurentSeries::eps(p, 3)));
    CHECK(det(d).identical(LaurentSeries::eps(p, -1)));
    Matrix3 g = Matrix3::elementary(0, 2, poly(p, -1, {2, 3})) * d;
    Matrix3 gi = inverse(g);
    CHECK((g * gi).identical(Matrix3::identity(p)));
    CHECK((gi * g).identical(Matrix3::identity(p)));
    Matrix3 z(p);
    CHECK_THROWS_AS(inverse(z), singular_matrix);
}

TEST_CASE("prime field") {
    CHECK(PrimeField::is_prime(10007));
    CHECK_FALSE(PrimeField::is_prime(1));
    CHECK_FALSE(PrimeField::is_prime(91));
    CHECK_THROWS_AS(PrimeField(12), precondition_violation);
    for (std::uint32_t a = 1; a < 13; ++a) CHECK(modp::mul(a, modp::inv(a, 13), 13) == 1);
}

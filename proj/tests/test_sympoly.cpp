#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "symroot/pd2d.hpp"
#include "symroot/pd3d.hpp"
#include "symroot/rational.hpp"
#include "symroot/sympoly.hpp"

using namespace symroot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent oracle: coefficients of prod_i (t - y_i) by convolution; then
// s_k = (-1)^k * coeff of t^(n-k).
std::vector<double> symmetric_from_root_product(const std::vector<double>& y) {
    std::vector<double> coeffs{1.0};
    for (double root : y) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + 1] -= coeffs[i] * root;
        }
        coeffs = std::move(next);
    }
    std::vector<double> s(y.size());
    for (std::size_t k = 1; k <= y.size(); ++k) {
        s[k - 1] = (k % 2 == 1 ? -1.0 : 1.0) * coeffs[k];
    }
    return s;
}

} // namespace

TEST_CASE("elementary symmetric polynomials of small tuples") {
    const std::vector<double> two{1.0, 1.0};
    CHECK(elementary_symmetric(two) == std::vector<double>{2.0, 1.0});

    const std::vector<double> three{1.0, 2.0, 3.0};
    CHECK(elementary_symmetric(three) == std::vector<double>{6.0, 11.0, 6.0});

    const std::vector<double> spike{7.5, 0.0, 0.0, 0.0};
    CHECK(elementary_symmetric(spike) == std::vector<double>{7.5, 0.0, 0.0, 0.0});

    CHECK_THROWS_AS(elementary_symmetric(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("elementary symmetric values match root-product extraction") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> y(n);
            for (double& v : y) v = dist(rng);
            const auto fast = elementary_symmetric(y);
            const auto oracle = symmetric_from_root_product(y);
            for (int k = 0; k < n; ++k) {
                CHECK_THAT(fast[k], WithinAbs(oracle[k], 1e-10));
            }
        }
    }
}

TEST_CASE("symmetrize fixes symmetric polynomials") {
    DensePolynomial p = elementary_symmetric_polynomial(3, 2);
    const DensePolynomial s = symmetrize(p);
    CHECK(s.almost_equal(p, 1e-15));
}

TEST_CASE("symmetrize averages over both permutations in two variables") {
    DensePolynomial p(2, 4);
    p.add_term({4, 0}, 1.0);
    const DensePolynomial s = symmetrize(p);
    CHECK_THAT(s.coefficient({4, 0}), WithinAbs(0.5, 1e-15));
    CHECK_THAT(s.coefficient({0, 4}), WithinAbs(0.5, 1e-15));
    CHECK(s.terms().size() == 2);
}

TEST_CASE("symmetrize of y1^3 y2 spreads over all six ordered pairs") {
    DensePolynomial p(3, 4);
    p.add_term({3, 1, 0}, 1.0);
    const DensePolynomial s = symmetrize(p);
    // All six permutations of (3, 1, 0), enumerated explicitly.
    const std::vector<std::vector<int>> orbit{{3, 1, 0}, {3, 0, 1}, {1, 3, 0},
                                              {0, 3, 1}, {1, 0, 3}, {0, 1, 3}};
    CHECK(s.terms().size() == orbit.size());
    for (const auto& exps : orbit) {
        CHECK_THAT(s.coefficient(exps), WithinAbs(1.0 / 6.0, 1e-15));
    }
}

TEST_CASE("symmetrize is idempotent and permutation invariant") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    DensePolynomial p(3, 4);
    p.add_term({4, 0, 0}, dist(rng));
    p.add_term({2, 1, 1}, dist(rng));
    p.add_term({1, 2, 1}, dist(rng));
    p.add_term({0, 2, 2}, dist(rng));
    const DensePolynomial s = symmetrize(p);
    CHECK(symmetrize(s).almost_equal(s, 1e-14));

    // Invariance: swapping any two coordinates leaves values unchanged.
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<double> y{dist(rng), dist(rng), dist(rng)};
        const std::vector<double> swapped{y[1], y[0], y[2]};
        const std::vector<double> rotated{y[2], y[0], y[1]};
        CHECK_THAT(s(y), WithinAbs(s(swapped), 1e-12));
        CHECK_THAT(s(y), WithinAbs(s(rotated), 1e-12));
    }
}

TEST_CASE("symmetrize rejects more than six variables") {
    DensePolynomial p(7, 2);
    p.add_term({2, 0, 0, 0, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(symmetrize(p), std::invalid_argument);
}

TEST_CASE("DensePolynomial enforces homogeneity of stored terms") {
    DensePolynomial p(2, 4);
    CHECK_THROWS_AS(p.add_term({3, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.add_term({3, 1, 0}, 1.0), std::invalid_argument);
    p.add_term({2, 2}, 3.0);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    const std::vector<double> y{dist(rng), dist(rng)};
    const double t = dist(rng);
    const std::vector<double> ty{t * y[0], t * y[1]};
    CHECK_THAT(p(ty), WithinRel(t * t * t * t * p(y), 1e-12));
}

TEST_CASE("basis change to monomial coefficients in two variables") {
    const CoefficientSet2D first = charpoly_to_monomial(CharPolyCoeffs2D{1, 0, 0});
    CHECK(first.l == 1.0);
    CHECK(first.m == 4.0);
    CHECK(first.n == 6.0);

    const CoefficientSet2D third = charpoly_to_monomial(CharPolyCoeffs2D{0, 0, 1});
    CHECK(third.l == 0.0);
    CHECK(third.m == 0.0);
    CHECK(third.n == 1.0);

    const CoefficientSet2D ones = charpoly_to_monomial(CharPolyCoeffs2D{1, 1, 1});
    CHECK(ones.l == 1.0);
    CHECK(ones.m == 5.0);
    CHECK(ones.n == 9.0);
}

TEST_CASE("basis change back from monomial coefficients in two variables") {
    const CharPolyCoeffs2D back = monomial_to_charpoly(CoefficientSet2D{1, 4, 6});
    CHECK(back.a == 1.0);
    CHECK(back.b == 0.0);
    CHECK(back.c == 0.0);

    const CharPolyCoeffs2D ones = monomial_to_charpoly(CoefficientSet2D{1, 5, 9});
    CHECK(ones.a == 1.0);
    CHECK(ones.b == 1.0);
    CHECK(ones.c == 1.0);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int rep = 0; rep < 200; ++rep) {
        const CharPolyCoeffs2D c{dist(rng), dist(rng), dist(rng)};
        const CharPolyCoeffs2D round = monomial_to_charpoly(charpoly_to_monomial(c));
        CHECK_THAT(round.a, WithinRel(c.a, 1e-12));
        CHECK_THAT(round.b, WithinAbs(c.b, 1e-12 * (1.0 + std::abs(c.b))));
        CHECK_THAT(round.c, WithinAbs(c.c, 1e-12 * (1.0 + std::abs(c.c))));
    }
}

TEST_CASE("basis change round trip is exact in rational arithmetic") {
    using RatCharPoly = BasicCharPolyCoeffs2<Rational>;
    const RatCharPoly c{Rational(3, 7), Rational(-5, 2), Rational(11, 13)};
    const RatCharPoly round = monomial_to_charpoly(charpoly_to_monomial(c));
    CHECK(round.a == c.a);
    CHECK(round.b == c.b);
    CHECK(round.c == c.c);

    using RatCharPoly3 = BasicCharPolyCoeffs3<Rational>;
    const RatCharPoly3 c3{Rational(1, 4), Rational(19, 6), Rational(-2, 9), Rational(7, 5)};
    const RatCharPoly3 round3 = monomial_to_charpoly(charpoly_to_monomial(c3));
    CHECK(round3.a == c3.a);
    CHECK(round3.b == c3.b);
    CHECK(round3.c == c3.c);
    CHECK(round3.d == c3.d);
}

TEST_CASE("basis change to monomial coefficients in three variables") {
    const CoefficientSet3D first = charpoly_to_monomial(CharPolyCoeffs3D{1, 0, 0, 0});
    CHECK(first.l == 1.0);
    CHECK(first.m == 4.0);
    CHECK(first.n == 6.0);
    CHECK(first.q == 12.0);

    const CoefficientSet3D last = charpoly_to_monomial(CharPolyCoeffs3D{0, 0, 0, 1});
    CHECK(last.l == 0.0);
    CHECK(last.m == 0.0);
    CHECK(last.n == 0.0);
    CHECK(last.q == 1.0);

    const CoefficientSet3D ones = charpoly_to_monomial(CharPolyCoeffs3D{1, 1, 1, 1});
    CHECK(ones.l == 1.0);
    CHECK(ones.m == 5.0);
    CHECK(ones.n == 9.0);
    CHECK(ones.q == 20.0);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int rep = 0; rep < 200; ++rep) {
        const CharPolyCoeffs3D c{dist(rng), dist(rng), dist(rng), dist(rng)};
        const CharPolyCoeffs3D round = monomial_to_charpoly(charpoly_to_monomial(c));
        CHECK_THAT(round.d, WithinAbs(c.d, 1e-12 * (1.0 + std::abs(c.d))));
    }
}

TEST_CASE("characteristic polynomial expansion in two variables") {
    const DensePolynomial pure_s1 = expand_charpoly(CharPolyCoeffs2D{1, 0, 0});
    CHECK(pure_s1.coefficient({4, 0}) == 1.0);
    CHECK(pure_s1.coefficient({3, 1}) == 4.0);
    CHECK(pure_s1.coefficient({2, 2}) == 6.0);
    CHECK(pure_s1.coefficient({1, 3}) == 4.0);
    CHECK(pure_s1.coefficient({0, 4}) == 1.0);

    const DensePolynomial pure_s2 = expand_charpoly(CharPolyCoeffs2D{0, 0, 1});
    CHECK(pure_s2.terms().size() == 1);
    CHECK(pure_s2.coefficient({2, 2}) == 1.0);
}

TEST_CASE("characteristic polynomial expansion in three variables") {
    const DensePolynomial s1s3 = expand_charpoly(CharPolyCoeffs3D{0, 0, 0, 1});
    CHECK(s1s3.coefficient({2, 1, 1}) == 1.0);
    CHECK(s1s3.coefficient({1, 2, 1}) == 1.0);
    CHECK(s1s3.coefficient({1, 1, 2}) == 1.0);
    CHECK(s1s3.terms().size() == 3);
}

TEST_CASE("expansion agrees with the orbit-basis quartic at sampled directions") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const CharPolyCoeffs2D c2{dist(rng), dist(rng), dist(rng)};
        const DensePolynomial expanded2 = expand_charpoly(c2);
        const CoefficientSet2D mono2 = charpoly_to_monomial(c2);
        const CharPolyCoeffs3D c3{dist(rng), dist(rng), dist(rng), dist(rng)};
        const DensePolynomial expanded3 = expand_charpoly(c3);
        const CoefficientSet3D mono3 = charpoly_to_monomial(c3);
        for (int k = 0; k < 5; ++k) {
            const std::vector<double> y2{dist(rng), dist(rng)};
            const double direct2 = metric_quartic(mono2, y2[0], y2[1]);
            CHECK_THAT(expanded2(y2), WithinAbs(direct2, 1e-12 * (1.0 + std::abs(direct2))));

            const std::vector<double> y3{dist(rng), dist(rng), dist(rng)};
            const double direct3 = metric_quartic(mono3, y3[0], y3[1], y3[2]);
            CHECK_THAT(expanded3(y3), WithinAbs(direct3, 1e-12 * (1.0 + std::abs(direct3))));
        }
    }
}

TEST_CASE("rational arithmetic normalizes and survives basic identities") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(5, 7) == Rational(-5, 7));
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>

#include "symroot/pd2d.hpp"

using namespace symroot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CoefficientSet2D random_pd_coefficients(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double l = 0.1 + 5.0 * unit(rng);
    const double m = (2.0 * unit(rng) - 1.0) * 4.0 * l * 0.9;
    const Interval interval = n_interval(l, m);
    const double n =
        interval.lower + (0.1 + 0.8 * unit(rng)) * (interval.upper - interval.lower);
    return {l, m, n};
}

} // namespace

TEST_CASE("hessian entries at axis directions") {
    const Eigen::Matrix2d h = hessian2d({1, 0, 0}, 1.0, 0.0);
    CHECK(h(0, 0) == 12.0);
    CHECK(h(0, 1) == 0.0);
    CHECK(h(1, 1) == 0.0);
}

TEST_CASE("hessian of the indefinite showcase metric") {
    const CoefficientSet2D c{4, 6, 5};
    const Eigen::Matrix2d h = hessian2d(c, 1.0, -2.0);
    CHECK(h(0, 0) == 16.0);
    CHECK(h(0, 1) == 50.0);
    CHECK(h(1, 0) == 50.0);
    CHECK(h(1, 1) == 130.0);
    CHECK(h.determinant() == -420.0);
}

TEST_CASE("hessian scales quadratically with the direction") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        const CoefficientSet2D c{dist(rng), dist(rng), dist(rng)};
        const double y1 = dist(rng), y2 = dist(rng);
        const double t = std::abs(dist(rng)) + 0.1;
        const Eigen::Matrix2d base = hessian2d(c, y1, y2);
        const Eigen::Matrix2d scaled = hessian2d(c, t * y1, t * y2);
        CHECK((scaled - t * t * base).norm() <= 1e-9 * (1.0 + base.norm()));
    }
}

TEST_CASE("determinant coefficients of the showcase metrics") {
    const Quartic2Form indefinite = det_hessian_coeffs({4, 6, 5});
    CHECK(indefinite.c40 == 156.0);
    CHECK(indefinite.c31 == 1368.0);
    CHECK(indefinite.c22 == 2652.0);
    CHECK(indefinite(1.0, -2.0) == -420.0);

    const Quartic2Form square = det_hessian_coeffs({1, 2, 3});
    CHECK(square.c40 == 36.0);
    CHECK(square.c31 == 72.0);
    CHECK(square.c22 == 108.0);
}

TEST_CASE("determinant form equals the numeric determinant of the hessian") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        const CoefficientSet2D c{dist(rng), dist(rng), dist(rng)};
        const Quartic2Form form = det_hessian_coeffs(c);
        for (int k = 0; k < 50; ++k) {
            const double y1 = dist(rng), y2 = dist(rng);
            const double direct = hessian2d(c, y1, y2).determinant();
            CHECK_THAT(form(y1, y2), WithinAbs(direct, 1e-9 * (1.0 + std::abs(direct))));
        }
    }
}

TEST_CASE("definiteness polynomial of the irreducible example") {
    const DefinitenessPolynomial p = definiteness_polynomial({1, 1, 2});
    CHECK(p.alpha == 13.0);
    CHECK(p.beta == 16.0);
    CHECK(p.gamma == 12.0);
    CHECK(p.discriminant() == -368.0);
    CHECK(p.delta1 == -23.0);
    CHECK(p.delta2 == 1.0);
}

TEST_CASE("definiteness polynomial of the perfect-square example") {
    const DefinitenessPolynomial p = definiteness_polynomial({1, 2, 3});
    CHECK(p.alpha == 12.0);
    CHECK(p.beta == 24.0);
    CHECK(p.gamma == 12.0);
    CHECK(p(2.0) == 108.0);
    CHECK(p(-2.0) == 12.0);
}

TEST_CASE("definiteness polynomial identities hold on random coefficients") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int rep = 0; rep < 500; ++rep) {
        const CoefficientSet2D c{dist(rng), dist(rng), dist(rng)};
        const DefinitenessPolynomial p = definiteness_polynomial(c);
        const Quartic2Form det = det_hessian_coeffs(c);

        // Discriminant factorization.
        const double disc = p.discriminant();
        const double factored = 16.0 * p.delta1 * p.delta2;
        CHECK_THAT(disc, WithinAbs(factored, 1e-9 * (1.0 + std::abs(disc))));

        // At z = +-2 the polynomial is the determinant along the diagonals,
        // up to the 3 y1^2 y2^2 normalization:
        // 3 P(+-2) = det A(1, +-1) = 12 (6l - n)(2l +- 2m + n).
        for (double sign : {1.0, -1.0}) {
            const double along = det(1.0, sign);
            const double closed = 12.0 * (6 * c.l - c.n) * (2 * c.l + 2 * sign * c.m + c.n);
            CHECK_THAT(3.0 * p(2.0 * sign), WithinAbs(along, 1e-9 * (1.0 + std::abs(along))));
            CHECK_THAT(along, WithinAbs(closed, 1e-9 * (1.0 + std::abs(closed))));
        }
    }
}

TEST_CASE("necessary conditions distinguish the boundary cases") {
    // Corner-minor and n-bounds hold but the antidiagonal fails.
    const NecessaryConditions2D near_miss = necessary_conditions({4, 6, 4});
    CHECK(near_miss.positive_l.holds);
    CHECK(near_miss.corner_minor.holds);
    CHECK(near_miss.corner_minor.margin == 128.0 - 108.0);
    CHECK(near_miss.n_upper.holds);
    CHECK_FALSE(near_miss.diagonal.holds);
    CHECK(near_miss.diagonal.margin == 0.0);
    CHECK_FALSE(near_miss.all());

    const NecessaryConditions2D sqrt7 = necessary_conditions({1, std::sqrt(7.0), 3});
    CHECK(sqrt7.corner_minor.holds);
    CHECK(sqrt7.n_upper.holds);
    CHECK_FALSE(sqrt7.diagonal.holds); // 2 sqrt(7) > 5
    CHECK(sqrt7.m_bound.holds);

    const NecessaryConditions2D good = necessary_conditions({1, 2, 3});
    CHECK(good.all());
}

TEST_CASE("sharp positive definiteness test on the showcase metrics") {
    const PDCheck2D pd = is_positive_definite({1, 2, 3});
    CHECK(pd.positive_definite);
    CHECK_THAT(pd.lower_bound, WithinAbs(2.196152422706632, 1e-12));
    CHECK(pd.upper_bound == 6.0);

    const PDCheck2D not_pd = is_positive_definite({4, 6, 5});
    CHECK_FALSE(not_pd.positive_definite);
    CHECK(not_pd.failure == PDFailure::BelowLowerBound);
    CHECK_THAT(not_pd.lower_bound, WithinAbs(1.5 * std::sqrt(136.0) - 12.0, 1e-12));
    CHECK(not_pd.lower_bound > 5.0);

    const PDCheck2D berwald = is_positive_definite({0.25, std::sqrt(19.0) / 6.0, 1.0});
    CHECK(berwald.positive_definite);
    CHECK_THAT(berwald.lower_bound, WithinAbs(0.9639136501002612, 1e-12));

    const PDCheck2D bad_l = is_positive_definite({-1, 0, 1});
    CHECK_FALSE(bad_l.positive_definite);
    CHECK(bad_l.failure == PDFailure::NonpositiveL);
}

TEST_CASE("classification of the three positive definite regimes") {
    const Classification2D irreducible = classify({1, 1, 2});
    CHECK(irreducible.verdict == Verdict2D::PDIrreducible);
    CHECK_THAT(irreducible.bounds.critical, WithinAbs(2.25, 1e-12));

    const Classification2D critical = classify({1, 2, 3});
    CHECK(critical.verdict == Verdict2D::PDRiemannianCritical);
    CHECK(critical.bounds.critical == 3.0);

    const Classification2D reducible = classify({1, 0, 4});
    CHECK(reducible.verdict == Verdict2D::PDReducible);
    CHECK(reducible.bounds.critical == 2.0);
    // Reducible with both roots strictly inside ]-2, 2[.
    const DefinitenessPolynomial p = definiteness_polynomial({1, 0, 4});
    CHECK(p.discriminant() > 0.0);
    const double root = std::sqrt(p.discriminant()) / (2.0 * p.alpha);
    const double mid = -p.beta / (2.0 * p.alpha);
    CHECK(std::abs(mid - root) < 2.0);
    CHECK(std::abs(mid + root) < 2.0);
}

TEST_CASE("classification reports a failing direction for indefinite metrics") {
    const Classification2D failing = classify({4, 6, 5});
    CHECK(failing.verdict == Verdict2D::NotPositiveDefinite);
    REQUIRE(failing.witness.has_value());
    CHECK(failing.witness->y1 == 1.0);
    CHECK(failing.witness->y2 == -2.0);
    CHECK(failing.witness->det == -420.0);
}

TEST_CASE("perfect square structure at the critical value") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double l = 0.2 + 4.0 * unit(rng);
        const double m = (2.0 * unit(rng) - 1.0) * 4.0 * l * 0.95;
        const double n = riemannian_critical_value(l, m);
        CHECK(classify({l, m, n}).verdict == Verdict2D::PDRiemannianCritical);
        for (int k = 0; k < 10; ++k) {
            const double y1 = 4.0 * unit(rng) - 2.0;
            const double y2 = 4.0 * unit(rng) - 2.0;
            const double quadratic = y1 * y1 + y2 * y2 + m / (2.0 * l) * y1 * y2;
            const double expected = l * quadratic * quadratic;
            const double actual = metric_quartic({l, m, n}, y1, y2);
            CHECK_THAT(actual, WithinAbs(expected, 1e-9 * (1.0 + std::abs(expected))));
        }
    }
}

TEST_CASE("slope-condition lower bound") {
    CHECK(reducible_case_bounds({1, 0, 0}) == 0.0);
    CHECK_THAT(reducible_case_bounds({1, 2, 0}), WithinAbs(2.4, 1e-15));
    CHECK_THAT(reducible_case_bounds({1, -2, 0}), WithinAbs(2.4, 1e-15));
    CHECK_THROWS_AS(reducible_case_bounds({1, 4, 0}), std::domain_error);
    CHECK_THROWS_AS(reducible_case_bounds({1, -5, 0}), std::domain_error);
}

TEST_CASE("admissible n-intervals") {
    const Interval i12 = n_interval(1, 2);
    CHECK_THAT(i12.lower, WithinAbs(2.196152422706632, 1e-12));
    CHECK(i12.upper == 6.0);

    const Interval i411 = n_interval(4, 11);
    CHECK_THAT(i411.lower, WithinAbs(14.239283526803852, 1e-10));
    CHECK(i411.upper == 24.0);

    const Interval i10 = n_interval(1, 0);
    CHECK(i10.lower == 0.0);
    CHECK(i10.upper == 6.0);

    CHECK_THROWS_AS(n_interval(0, 0), std::domain_error);
    CHECK_THROWS_AS(n_interval(1, 4), std::domain_error);
}

TEST_CASE("reducible fraction closed form") {
    CHECK(reducible_fraction(0.0) == 2.0 / 3.0);
    CHECK(reducible_fraction(4.0) == 1.0);
    CHECK_THAT(reducible_fraction(2.0), WithinAbs(0.5 + std::sqrt(12.0) / 12.0, 1e-15));
    CHECK_THROWS_AS(reducible_fraction(-0.1), std::domain_error);
    CHECK_THROWS_AS(reducible_fraction(4.1), std::domain_error);
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> ratio(0.0, 4.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double f = reducible_fraction(ratio(rng));
        CHECK(f >= 0.5);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("bound chain for admissible coefficient pairs") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 10000; ++rep) {
        const double l = 1e-3 + (10.0 - 1e-3) * unit(rng);
        const double m = (2.0 * unit(rng) - 1.0) * 4.0 * l * 0.9999;
        const double b1 = 3.0 * m * m / (8.0 * l);
        const double b2 = pd_lower_bound(l, m);
        const double star = reducible_case_bounds({l, m, 0});
        const double b4 = riemannian_critical_value(l, m);
        const double b5 = pd_upper_bound(l);
        const double slack = 1e-9 * (1.0 + std::abs(b2) + std::abs(star));
        CHECK(0.0 <= b1);
        CHECK(b1 <= b2 + slack);
        CHECK(b2 <= star + slack);
        CHECK(star < b4);
        CHECK(b4 < b5);
    }
}

TEST_CASE("classification is invariant under positive scaling") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dist(-6.0, 6.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
        CoefficientSet2D c;
        if (rep % 2 == 0) {
            c = random_pd_coefficients(rng);
        } else {
            c = {dist(rng), dist(rng), dist(rng)};
        }
        const double t = std::pow(10.0, 6.0 * unit(rng) - 3.0);
        const CoefficientSet2D scaled{t * c.l, t * c.m, t * c.n};
        CHECK(classify(scaled).verdict == classify(c).verdict);
    }
}

TEST_CASE("field check over the oscillating showcase field") {
    const ScalarField l = ScalarField::parse("cos(x1*x2)+2");
    const ScalarField m = ScalarField::parse("sqrt(2)*sin(x1*x2)");
    const ScalarField n = ScalarField::parse("cos(x1*x2)+4");
    const Box region{{-3.0, -3.0}, {3.0, 3.0}};
    const RegularityReport report = check_field(l, m, n, region, {61, 61});
    CHECK(report.positive_definite_everywhere);
    CHECK(report.total_points == 61 * 61);
    CHECK(report.classified_points == 61 * 61);
    CHECK(report.failing_points == 0);
    CHECK(report.classification_varies);
    CHECK(report.verdict_counts[static_cast<int>(Verdict2D::PDIrreducible)] > 0);
    CHECK(report.verdict_counts[static_cast<int>(Verdict2D::PDReducible)] > 0);
    CHECK(report.evaluation_error_count == 0);
}

TEST_CASE("field check with constant coefficients") {
    const Box region{{-1.0, -1.0}, {1.0, 1.0}};
    const auto constant = [](double v) { return ScalarField::constant(v); };

    const RegularityReport critical =
        check_field(constant(1), constant(2), constant(3), region, {5, 5});
    CHECK(critical.positive_definite_everywhere);
    CHECK_FALSE(critical.classification_varies);
    CHECK(critical.verdict_counts[static_cast<int>(Verdict2D::PDRiemannianCritical)] == 25);

    const RegularityReport failing =
        check_field(constant(4), constant(6), constant(5), region, {5, 5});
    CHECK_FALSE(failing.positive_definite_everywhere);
    CHECK(failing.failing_points == 25);
    REQUIRE_FALSE(failing.failures.empty());
    const auto& witness = failing.failures.front().result.witness;
    REQUIRE(witness.has_value());
    CHECK(witness->y1 == 1.0);
    CHECK(witness->y2 == -2.0);
    const std::string summary = summarize(failing);
    CHECK(summary.find("NOT positive definite") != std::string::npos);
    CHECK(summary.find("-420") != std::string::npos);
}

TEST_CASE("field evaluation failures are collected, not fatal") {
    // sqrt goes NaN on half the region.
    const ScalarField l = ScalarField::parse("sqrt(x1)+2");
    const ScalarField m = ScalarField::constant(0);
    const ScalarField n = ScalarField::constant(3);
    const Box region{{-1.0}, {1.0}};
    const RegularityReport report = check_field(l, m, n, region, {9});
    CHECK(report.evaluation_error_count > 0);
    CHECK(report.classified_points + report.evaluation_error_count == report.total_points);
    CHECK_FALSE(report.positive_definite_everywhere);
    CHECK(report.failing_points == 0);
    CHECK_FALSE(report.evaluation_errors.empty());
}

TEST_CASE("field check validates its grid") {
    const auto c = ScalarField::constant(1);
    CHECK_THROWS_AS(check_field(c, c, c, Box{{0.0}, {1.0}}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(check_field(c, c, c, Box{{0.0}, {1.0}}, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(check_field(c, c, c, Box{{0.0, 0.0}, {1.0}}, {2}), std::invalid_argument);
}

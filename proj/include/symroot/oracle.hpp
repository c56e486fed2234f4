#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "symroot/pd2d.hpp"
#include "symroot/pd3d.hpp"
#include "symroot/sampling.hpp"

namespace symroot {

/// Result of scanning Hessian eigenvalues over sampled unit directions.
struct EigenScan {
    double min_eigenvalue = 0.0;
    std::array<double, 3> direction{};
    int dimension = 0;
};

/// Minimum eigenvalue of the analytic Hessian over all sampled directions.
/// Positive definiteness of a homogeneous quartic's Hessian is equivalent
/// to positivity on the unit sphere, so a negative sample disproves it and
/// an all-positive scan is strong (but sampled) evidence for it.
inline EigenScan min_eigenvalue_on_sphere(const CoefficientSet2D& c,
                                          const DirectionSampler& sampler) {
    if (sampler.dimension() != 2)
        throw std::invalid_argument("min_eigenvalue_on_sphere: sampler dimension mismatch");
    EigenScan scan;
    scan.dimension = 2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver;
    bool first = true;
    for (std::size_t i = 0; i < sampler.count(); ++i) {
        const auto y = sampler.direction(i);
        solver.computeDirect(hessian2d(c, y[0], y[1]), Eigen::EigenvaluesOnly);
        const double lambda = solver.eigenvalues()(0);
        if (first || lambda < scan.min_eigenvalue) {
            scan.min_eigenvalue = lambda;
            scan.direction = {y[0], y[1], 0.0};
            first = false;
        }
    }
    return scan;
}

inline EigenScan min_eigenvalue_on_sphere(const CoefficientSet3D& c,
                                          const DirectionSampler& sampler) {
    if (sampler.dimension() != 3)
        throw std::invalid_argument("min_eigenvalue_on_sphere: sampler dimension mismatch");
    EigenScan scan;
    scan.dimension = 3;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
    bool first = true;
    for (std::size_t i = 0; i < sampler.count(); ++i) {
        const auto y = sampler.direction(i);
        solver.computeDirect(hessian3d(c, y), Eigen::EigenvaluesOnly);
        const double lambda = solver.eigenvalues()(0);
        if (first || lambda < scan.min_eigenvalue) {
            scan.min_eigenvalue = lambda;
            scan.direction = {y[0], y[1], y[2]};
            first = false;
        }
    }
    return scan;
}

/// Central-difference Hessian of an arbitrary scalar function. Mixed entries
/// come from the 4-point cross stencil, which is symmetric by construction.
template <class F>
Eigen::MatrixXd finite_diff_hessian(F&& f, std::span<const double> y, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_hessian: step must be positive");
    const int n = static_cast<int>(y.size());
    std::vector<double> probe(y.begin(), y.end());
    auto eval = [&](int i, double di, int j, double dj) {
        probe.assign(y.begin(), y.end());
        probe[static_cast<std::size_t>(i)] += di;
        probe[static_cast<std::size_t>(j)] += dj;
        return f(std::span<const double>(probe));
    };
    Eigen::MatrixXd hess(n, n);
    const double center = f(y);
    for (int i = 0; i < n; ++i) {
        hess(i, i) = (eval(i, h, i, 0.0) - 2.0 * center + eval(i, -h, i, 0.0)) / (h * h);
        for (int j = i + 1; j < n; ++j) {
            const double mixed = (eval(i, h, j, h) - eval(i, h, j, -h) - eval(i, -h, j, h) +
                                  eval(i, -h, j, -h)) /
                                 (4.0 * h * h);
            hess(i, j) = mixed;
            hess(j, i) = mixed;
        }
    }
    return hess;
}

struct EnergyRelationReport {
    bool passed = false;
    double max_relative_residual = 0.0;
    double quartic_value = 0.0;
    double tolerance = 0.0;
};

/// Checks the identity tying the quartic's Hessian to the energy function
/// E = sqrt(A)/2: wherever A > 0,
///   A_ij = 8 E_i E_j + 8 E E_ij.
/// E-derivatives are taken by finite differences, so the identity is checked
/// through a route independent of the analytic Hessian assembly.
inline EnergyRelationReport energy_relation_check(const CoefficientSet2D& c, double y1, double y2,
                                                  double tol) {
    const double a_value = metric_quartic(c, y1, y2);
    if (!(a_value > 0.0))
        throw std::domain_error("energy_relation_check: quartic must be positive at y");
    auto energy = [&c](std::span<const double> y) {
        return std::sqrt(metric_quartic(c, y[0], y[1])) / 2.0;
    };
    const std::array<double, 2> y{y1, y2};
    const double h = 1e-4 * std::max({1.0, std::abs(y1), std::abs(y2)});
    const Eigen::MatrixXd e_hess = finite_diff_hessian(energy, y, h);
    std::array<double, 2> e_grad{};
    for (int i = 0; i < 2; ++i) {
        std::array<double, 2> plus = y, minus = y;
        plus[static_cast<std::size_t>(i)] += h;
        minus[static_cast<std::size_t>(i)] -= h;
        e_grad[static_cast<std::size_t>(i)] = (energy(plus) - energy(minus)) / (2.0 * h);
    }
    const double e_value = std::sqrt(a_value) / 2.0;
    const Eigen::Matrix2d analytic = hessian2d(c, y1, y2);
    EnergyRelationReport report;
    report.quartic_value = a_value;
    report.tolerance = tol;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double reconstructed =
                8.0 * e_grad[static_cast<std::size_t>(i)] * e_grad[static_cast<std::size_t>(j)] +
                8.0 * e_value * e_hess(i, j);
            const double residual =
                std::abs(analytic(i, j) - reconstructed) / (1.0 + std::abs(analytic(i, j)));
            report.max_relative_residual = std::max(report.max_relative_residual, residual);
        }
    }
    report.passed = report.max_relative_residual <= tol;
    return report;
}

/// Portable uniform double in [lo, hi): uses the top 53 bits of the engine
/// output so runs reproduce bit-for-bit across standard libraries.
inline double uniform_double(std::mt19937_64& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

struct Disagreement {
    CoefficientSet2D coefficients;
    bool criterion_positive_definite = false;
    double oracle_min_eigenvalue = 0.0;
    std::array<double, 3> direction{};
};

/// Confusion summary of the coefficient criterion against the sampled
/// eigenvalue oracle.
struct AgreementSummary {
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    std::size_t discarded = 0;
    std::uint64_t seed = 0;
    std::size_t directions = 0;
    std::vector<Disagreement> examples; // capped at 8
};

/// Samples coefficient sets uniformly from [lo, hi]^3, discards those within
/// margin_scale * (1 + |l| + |m| + |n|) of the positive-definiteness
/// boundary, and compares the closed-form criterion with the eigenvalue
/// oracle on every kept sample.
inline AgreementSummary agreement_harness(std::size_t sample_count, double lo, double hi,
                                          double margin_scale, std::uint64_t seed,
                                          std::size_t directions = 720) {
    if (!(margin_scale > 0.0))
        throw std::invalid_argument("agreement_harness: margin must be positive");
    const DirectionSampler sampler = DirectionSampler::circle(directions);
    std::mt19937_64 rng(seed);
    AgreementSummary summary;
    summary.seed = seed;
    summary.directions = sampler.count();
    while (summary.samples < sample_count) {
        CoefficientSet2D c;
        c.l = uniform_double(rng, lo, hi);
        c.m = uniform_double(rng, lo, hi);
        c.n = uniform_double(rng, lo, hi);
        const double margin = margin_scale * (1.0 + std::abs(c.l) + std::abs(c.m) + std::abs(c.n));
        const double lower = pd_lower_bound(c.l, c.m);
        const double upper = pd_upper_bound(c.l);
        if (std::min(std::abs(c.n - lower), std::abs(c.n - upper)) <= margin) {
            ++summary.discarded;
            continue;
        }
        ++summary.samples;
        const bool criterion = is_positive_definite(c).positive_definite;
        const EigenScan scan = min_eigenvalue_on_sphere(c, sampler);
        const bool oracle = scan.min_eigenvalue > 0.0;
        if (criterion == oracle) {
            ++summary.agreements;
        } else {
            ++summary.disagreements;
            if (summary.examples.size() < 8)
                summary.examples.push_back({c, criterion, scan.min_eigenvalue, scan.direction});
        }
    }
    return summary;
}

} // namespace symroot

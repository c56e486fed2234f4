#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "symroot/exprfield.hpp"

namespace symroot {

/// A degree-2 symmetric metric a(x) s1^2 + b(x) s2 in n variables. Up to the
/// conformal factor 2a, its unit-diagonal model matrix has the single
/// parameter p = 1 + b/(2a) in every off-diagonal slot.
struct SymmetricSecondRoot {
    ScalarField a;
    ScalarField b;
    int dimension = 2;
};

inline double p_parameter(const SymmetricSecondRoot& metric, std::span<const double> x) {
    const double a = metric.a.evaluate(x);
    if (!(a > 0.0))
        throw std::domain_error("p_parameter: leading coefficient a(x) must be positive");
    return 1.0 + metric.b.evaluate(x) / (2.0 * a);
}

/// The p-field 1 + b/(2a) as a composed expression, so that its derivatives
/// are available in closed form.
inline ScalarField p_field(const SymmetricSecondRoot& metric) {
    return ScalarField::constant(1.0) + metric.b / (2.0 * metric.a);
}

/// Unit-diagonal model matrix: ones on the diagonal, p everywhere else.
inline Eigen::MatrixXd model_matrix(double p, int n) {
    if (n < 2) throw std::invalid_argument("model_matrix: dimension must be >= 2");
    Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, p);
    g.diagonal().setOnes();
    return g;
}

struct SecondRootEigenvalues {
    bool positive_definite = false;
    double lambda_transverse = 0.0; // multiplicity n - 1
    double lambda_principal = 0.0;  // multiplicity 1
};

/// The model matrix has eigenvalues 1 - p (n-1 fold) and 1 + (n-1) p, so it
/// is positive definite exactly on the open interval -1/(n-1) < p < 1.
inline SecondRootEigenvalues is_pd_second_root(double p, int n) {
    if (n < 2) throw std::invalid_argument("is_pd_second_root: dimension must be >= 2");
    SecondRootEigenvalues r;
    r.lambda_transverse = 1.0 - p;
    r.lambda_principal = 1.0 + (n - 1) * p;
    r.positive_definite = p < 1.0 && p > -1.0 / (n - 1);
    return r;
}

/// Closed-form inverse of the model matrix.
inline Eigen::MatrixXd inverse_metric(double p, int n) {
    const SecondRootEigenvalues ev = is_pd_second_root(p, n);
    if (!ev.positive_definite)
        throw std::domain_error("inverse_metric: model matrix is not positive definite");
    const double scale = 1.0 / ((1.0 - p) * (1.0 + (n - 1) * p));
    Eigen::MatrixXd inv = Eigen::MatrixXd::Constant(n, n, -p * scale);
    inv.diagonal().setConstant((1.0 + (n - 2) * p) * scale);
    return inv;
}

enum class DerivativeMode { ClosedForm, FiniteDifference };

/// Margin kept from the p = +-1 singularity of the surface formulas.
inline constexpr double kSingularMargin = 1e-8;

namespace detail {

struct PJet {
    double p = 0.0, d1 = 0.0, d2 = 0.0, d12 = 0.0;
};

inline PJet evaluate_jet(const ScalarField& p, std::span<const double> x, DerivativeMode mode) {
    PJet jet;
    jet.p = p.evaluate(x);
    if (std::abs(jet.p) >= 1.0 - kSingularMargin)
        throw std::domain_error("surface metric is singular: |p(x)| reaches 1");
    if (mode == DerivativeMode::ClosedForm) {
        const ScalarField p1 = p.derivative(0);
        jet.d1 = p1.evaluate(x);
        jet.d2 = p.derivative(1).evaluate(x);
        jet.d12 = p1.derivative(1).evaluate(x);
    } else {
        jet.d1 = partial(p, 0, x);
        jet.d2 = partial(p, 1, x);
        jet.d12 = mixed_partial(p, 0, 1, x);
    }
    return jet;
}

} // namespace detail

struct ChristoffelSymbols {
    // value[k][i][j] with the upper index first; symmetric in (i, j).
    double value[2][2][2] = {};
    double operator()(int k, int i, int j) const { return value[k][i][j]; }
};

namespace detail {

inline ChristoffelSymbols christoffel_from_jet(const PJet& jet) {
    const double den = 1.0 - jet.p * jet.p;
    ChristoffelSymbols g;
    g.value[0][0][0] = -jet.p * jet.d1 / den;
    g.value[1][0][0] = jet.d1 / den;
    g.value[0][1][1] = jet.d2 / den;
    g.value[1][1][1] = -jet.p * jet.d2 / den;
    return g;
}

} // namespace detail

/// Christoffel symbols of the surface model metric. The mixed symbols vanish;
/// the rest are rational in p and its first partials.
inline ChristoffelSymbols christoffel(const ScalarField& p, std::span<const double> x,
                                      DerivativeMode mode = DerivativeMode::ClosedForm) {
    return detail::christoffel_from_jet(detail::evaluate_jet(p, x, mode));
}

/// Full curvature package of the surface model metric at one position.
struct CurvatureData {
    ChristoffelSymbols christoffel;
    double riemann_up[2][2][2][2] = {};   // R_{ijk}^l stored as [i][j][k][l]
    double riemann_down[2][2][2][2] = {}; // R_{ijkl}
    double ricci[2][2] = {};
    double scalar = 0.0;
    double gauss = 0.0;
    detail::PJet jet; // p and the partials that produced the values
};

inline CurvatureData curvature(const ScalarField& p, std::span<const double> x,
                               DerivativeMode mode = DerivativeMode::ClosedForm) {
    CurvatureData r;
    r.jet = detail::evaluate_jet(p, x, mode);
    r.christoffel = detail::christoffel_from_jet(r.jet);
    const double pv = r.jet.p;
    const double den = 1.0 - pv * pv;
    // Numerator shared by every curvature component.
    const double core = den * r.jet.d12 + pv * r.jet.d1 * r.jet.d2;
    const double c2 = core / (den * den);

    r.riemann_up[0][1][0][0] = pv * c2;
    r.riemann_up[0][1][0][1] = -c2;
    r.riemann_up[0][1][1][0] = c2;
    r.riemann_up[0][1][1][1] = -pv * c2;
    r.riemann_up[1][0][0][0] = -pv * c2;
    r.riemann_up[1][0][0][1] = c2;
    r.riemann_up[1][0][1][0] = -c2;
    r.riemann_up[1][0][1][1] = pv * c2;

    const double c1 = core / den;
    r.riemann_down[0][1][0][1] = -c1;
    r.riemann_down[0][1][1][0] = c1;
    r.riemann_down[1][0][0][1] = c1;
    r.riemann_down[1][0][1][0] = -c1;

    r.ricci[0][0] = c2;
    r.ricci[1][1] = c2;
    r.ricci[0][1] = pv * c2;
    r.ricci[1][0] = pv * c2;

    r.scalar = 2.0 * c2;
    r.gauss = c2;
    return r;
}

enum class CurvatureBranch { TanhPlus, TanhMinus };

/// The two tanh families solving the constant-curvature equation for the
/// Gaussian curvature k:
///   plus:  p = 2 tanh^2(c1 x1 - (k/c1) x2 + c2) - 1
///   minus: p = 1 - 2 tanh^2(c1 x1 + (k/c1) x2 + c2)
/// k = 0 is allowed and degenerates to a function of x1 alone.
inline ScalarField constant_curvature_solution(double k, double c1, double c2,
                                               CurvatureBranch branch) {
    if (c1 == 0.0) throw std::invalid_argument("constant_curvature_solution: c1 must be nonzero");
    const ScalarField x1 = ScalarField::variable(0);
    const ScalarField x2 = ScalarField::variable(1);
    if (branch == CurvatureBranch::TanhPlus) {
        const ScalarField arg = c1 * x1 - (k / c1) * x2 + ScalarField::constant(c2);
        return 2.0 * pow(tanh(arg), 2) - 1.0;
    }
    const ScalarField arg = c1 * x1 + (k / c1) * x2 + ScalarField::constant(c2);
    return 1.0 - 2.0 * pow(tanh(arg), 2);
}

/// Flat (k = 0) solutions of the separable form: any function of x1 alone or
/// of x2 alone qualifies. A field depending on both variables is rejected,
/// since the separable ansatz then forces one factor to be constant.
inline ScalarField separable_flat_solution(const ScalarField& f) {
    if (f.uses_variable(0) && f.uses_variable(1))
        throw std::invalid_argument(
            "separable_flat_solution: field must depend on x1 only or x2 only");
    if (f.uses_variable(2))
        throw std::invalid_argument("separable_flat_solution: field must not use x3");
    return f;
}

struct CurvatureResidualReport {
    bool passed = false;
    double worst_residual = 0.0;
    std::array<double, 2> worst_point{};
    std::size_t checked = 0;
    std::size_t skipped = 0; // points too close to |p| = 1, flagged not fatal
    double tolerance = 0.0;
};

/// Evaluates the Gaussian curvature of p at each sample point and compares
/// it against the target constant k. Near-singular points (1 - p^2 <= 1e-6)
/// are skipped and counted.
inline CurvatureResidualReport verify_constant_curvature(
    const ScalarField& p, double k, std::span<const std::array<double, 2>> points, double tol,
    DerivativeMode mode = DerivativeMode::ClosedForm) {
    CurvatureResidualReport report;
    report.tolerance = tol;
    report.passed = true;
    for (const auto& point : points) {
        const double pv = p.evaluate(point);
        if (1.0 - pv * pv <= 1e-6) {
            ++report.skipped;
            continue;
        }
        const CurvatureData data = curvature(p, point, mode);
        const double residual = std::abs(data.gauss - k);
        ++report.checked;
        if (residual > report.worst_residual) {
            report.worst_residual = residual;
            report.worst_point = point;
        }
        if (residual > tol) report.passed = false;
    }
    return report;
}

} // namespace symroot

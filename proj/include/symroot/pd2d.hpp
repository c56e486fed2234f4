#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symroot/exprfield.hpp"
#include "symroot/sympoly.hpp"

namespace symroot {

/// Value of the symmetric quartic A(y) = l(y1^4+y2^4) + m(y1^3 y2 + y1 y2^3)
/// + n y1^2 y2^2.
inline double metric_quartic(const CoefficientSet2D& c, double y1, double y2) {
    return c.l * (y1 * y1 * y1 * y1 + y2 * y2 * y2 * y2) +
           c.m * (y1 * y1 * y1 * y2 + y1 * y2 * y2 * y2) + c.n * y1 * y1 * y2 * y2;
}

/// Hessian of the quartic at the direction y:
///   A11 = 12 l y1^2 + 6 m y1 y2 + 2 n y2^2
///   A12 = 3 m (y1^2 + y2^2) + 4 n y1 y2
///   A22 = 2 n y1^2 + 6 m y1 y2 + 12 l y2^2
inline Eigen::Matrix2d hessian2d(const CoefficientSet2D& c, double y1, double y2) {
    Eigen::Matrix2d h;
    h(0, 0) = 12.0 * c.l * y1 * y1 + 6.0 * c.m * y1 * y2 + 2.0 * c.n * y2 * y2;
    h(0, 1) = 3.0 * c.m * (y1 * y1 + y2 * y2) + 4.0 * c.n * y1 * y2;
    h(1, 0) = h(0, 1);
    h(1, 1) = 2.0 * c.n * y1 * y1 + 6.0 * c.m * y1 * y2 + 12.0 * c.l * y2 * y2;
    return h;
}

/// A symmetric binary quartic c40 (y1^4+y2^4) + c31 (y1^3 y2 + y1 y2^3)
/// + c22 y1^2 y2^2.
struct Quartic2Form {
    double c40 = 0.0, c31 = 0.0, c22 = 0.0;

    double operator()(double y1, double y2) const {
        return c40 * (y1 * y1 * y1 * y1 + y2 * y2 * y2 * y2) +
               c31 * (y1 * y1 * y1 * y2 + y1 * y2 * y2 * y2) + c22 * y1 * y1 * y2 * y2;
    }
};

/// Coefficients of det(Hessian) as a symmetric quartic form.
inline Quartic2Form det_hessian_coeffs(const CoefficientSet2D& c) {
    const double l = c.l, m = c.m, n = c.n;
    return {24 * l * n - 9 * m * m, 72 * l * m - 12 * m * n,
            144 * l * l + 18 * m * m - 12 * n * n};
}

/// det(Hessian) divided by 3 y1^2 y2^2 and rewritten in z = y1/y2 + y2/y1.
/// Positivity of the determinant away from the axes is equivalent to
/// P(z) > 0 on |z| >= 2. delta1 and delta2 factor the discriminant:
/// beta^2 - 4 alpha gamma = 16 delta1 delta2.
struct DefinitenessPolynomial {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double delta1 = 0.0, delta2 = 0.0;

    double operator()(double z) const { return (alpha * z + beta) * z + gamma; }
    double discriminant() const { return beta * beta - 4.0 * alpha * gamma; }
};

inline DefinitenessPolynomial definiteness_polynomial(const CoefficientSet2D& c) {
    const double l = c.l, m = c.m, n = c.n;
    DefinitenessPolynomial p;
    p.alpha = 8 * l * n - 3 * m * m;
    p.beta = 24 * l * m - 4 * m * n;
    p.gamma = 48 * l * l + 12 * m * m - 4 * n * n - 16 * l * n;
    p.delta1 = 9 * m * m - 12 * l * n - 2 * n * n;
    p.delta2 = 8 * l * l - 4 * l * n + m * m;
    return p;
}

/// One strict inequality with its evaluated margin (margin > 0 iff it holds).
struct Condition {
    bool holds = false;
    double margin = 0.0;
};

/// The classical necessary conditions for the Hessian of the quartic to be
/// positive definite, each with its margin.
struct NecessaryConditions2D {
    Condition positive_l;      // l > 0
    Condition corner_minor;    // 8 l n > 3 m^2
    Condition n_upper;         // n < 6 l
    Condition diagonal;        // 2|m| < 2 l + n
    Condition m_bound;         // |m| < 4 l

    bool all() const {
        return positive_l.holds && corner_minor.holds && n_upper.holds && diagonal.holds &&
               m_bound.holds;
    }
};

inline NecessaryConditions2D necessary_conditions(const CoefficientSet2D& c) {
    const double l = c.l, m = c.m, n = c.n;
    auto strict = [](double margin) { return Condition{margin > 0.0, margin}; };
    NecessaryConditions2D r;
    r.positive_l = strict(l);
    r.corner_minor = strict(8 * l * n - 3 * m * m);
    r.n_upper = strict(6 * l - n);
    r.diagonal = strict(2 * l + n - 2 * std::abs(m));
    r.m_bound = strict(4 * l - std::abs(m));
    return r;
}

inline double pd_lower_bound(double l, double m) {
    return 1.5 * std::sqrt(4 * l * l + 2 * m * m) - 3 * l;
}

inline double pd_upper_bound(double l) { return 6 * l; }

/// n-value at which the quartic becomes the square of a quadratic form.
inline double riemannian_critical_value(double l, double m) {
    return (8 * l * l + m * m) / (4 * l);
}

enum class PDFailure { None, NonpositiveL, BelowLowerBound, AboveUpperBound };

struct PDCheck2D {
    bool positive_definite = false;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    PDFailure failure = PDFailure::None;
};

/// The sharp positive-definiteness test: PD iff
/// (3/2) sqrt(4 l^2 + 2 m^2) - 3 l < n < 6 l, both strict.
inline PDCheck2D is_positive_definite(const CoefficientSet2D& c) {
    PDCheck2D r;
    r.lower_bound = pd_lower_bound(c.l, c.m);
    r.upper_bound = pd_upper_bound(c.l);
    if (c.l <= 0.0) {
        r.failure = PDFailure::NonpositiveL;
        return r;
    }
    if (!(c.n > r.lower_bound)) {
        r.failure = PDFailure::BelowLowerBound;
        return r;
    }
    if (!(c.n < r.upper_bound)) {
        r.failure = PDFailure::AboveUpperBound;
        return r;
    }
    r.positive_definite = true;
    return r;
}

/// Lower bound on n coming from the slope conditions of the definiteness
/// polynomial at z = +-2. Requires |m| < 4l, otherwise the denominators
/// 8l +- m may degenerate.
inline double reducible_case_bounds(const CoefficientSet2D& c) {
    if (!(std::abs(c.m) < 4 * c.l))
        throw std::domain_error("reducible_case_bounds: requires |m| < 4 l");
    if (c.m >= 0.0) return 3 * c.m * (c.m + 2 * c.l) / (8 * c.l + c.m);
    return 3 * c.m * (c.m - 2 * c.l) / (8 * c.l - c.m);
}

enum class Verdict2D { NotPositiveDefinite, PDIrreducible, PDReducible, PDRiemannianCritical };

inline std::string_view to_string(Verdict2D v) {
    switch (v) {
        case Verdict2D::NotPositiveDefinite: return "NotPositiveDefinite";
        case Verdict2D::PDIrreducible: return "PDIrreducible";
        case Verdict2D::PDReducible: return "PDReducible";
        case Verdict2D::PDRiemannianCritical: return "PDRiemannianCritical";
    }
    return "";
}

/// Direction at which a principal minor of the Hessian fails to be positive.
struct Witness2D {
    double y1 = 0.0, y2 = 0.0;
    double a11 = 0.0;
    double det = 0.0;
};

struct Bounds2D {
    double lower = 0.0;
    double upper = 0.0;
    double critical = 0.0;               // NaN when l <= 0
    std::optional<double> slope_bound;   // defined only when |m| < 4 l
};

struct Classification2D {
    Verdict2D verdict = Verdict2D::NotPositiveDefinite;
    Bounds2D bounds;
    std::optional<Witness2D> witness;
};

namespace detail {

/// Looks for a failing direction, preferring small integer directions (the
/// failing directions of hand-checked metrics tend to be low-denominator
/// rationals), then falling back to an angle scan with golden-section
/// refinement.
inline std::optional<Witness2D> find_witness(const CoefficientSet2D& c) {
    const Quartic2Form det = det_hessian_coeffs(c);
    auto probe = [&](double y1, double y2) -> std::optional<Witness2D> {
        const Eigen::Matrix2d h = hessian2d(c, y1, y2);
        const double d = det(y1, y2);
        if (h(0, 0) <= 0.0 || d <= 0.0) return Witness2D{y1, y2, h(0, 0), d};
        return std::nullopt;
    };

    if (auto w = probe(1, 0)) return w;
    if (auto w = probe(0, 1)) return w;
    for (int height = 1; height <= 12; ++height) {
        for (int p = 1; p <= height; ++p) {
            for (int q = 1; q <= height; ++q) {
                if (std::max(p, q) != height || std::gcd(p, q) != 1) continue;
                if (auto w = probe(p, q)) return w;
                if (auto w = probe(p, -q)) return w;
            }
        }
    }

    // Coarse scan over half the circle (both minors are even in y).
    auto minor_min = [&](double theta) {
        const double y1 = std::cos(theta), y2 = std::sin(theta);
        const Eigen::Matrix2d h = hessian2d(c, y1, y2);
        return std::min(h(0, 0), det(y1, y2));
    };
    const int scan = 360;
    double best_theta = 0.0, best_value = minor_min(0.0);
    for (int k = 1; k < scan; ++k) {
        const double theta = std::numbers::pi * k / scan;
        const double value = minor_min(theta);
        if (value < best_value) {
            best_value = value;
            best_theta = theta;
        }
    }
    double a = best_theta - std::numbers::pi / scan, b = best_theta + std::numbers::pi / scan;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = minor_min(x1), f2 = minor_min(x2);
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = minor_min(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = minor_min(x2);
        }
    }
    const double theta = (a + b) / 2.0;
    if (auto w = probe(std::cos(theta), std::sin(theta))) return w;
    return std::nullopt;
}

} // namespace detail

/// Relative snap tolerance for recognizing the Riemannian critical value.
inline constexpr double kCriticalSnapTolerance = 1e-9;

/// Full classification: the sharp PD test, then the position of n relative
/// to the critical value decides whether the definiteness polynomial is
/// irreducible (n below), a perfect square (n at the critical value) or
/// reducible with roots in ]-2, 2[ (n above).
inline Classification2D classify(const CoefficientSet2D& c) {
    Classification2D r;
    const PDCheck2D pd = is_positive_definite(c);
    r.bounds.lower = pd.lower_bound;
    r.bounds.upper = pd.upper_bound;
    r.bounds.critical = c.l > 0.0 ? riemannian_critical_value(c.l, c.m)
                                  : std::numeric_limits<double>::quiet_NaN();
    if (std::abs(c.m) < 4 * c.l) r.bounds.slope_bound = reducible_case_bounds(c);
    if (!pd.positive_definite) {
        r.verdict = Verdict2D::NotPositiveDefinite;
        r.witness = detail::find_witness(c);
        return r;
    }
    const double critical = r.bounds.critical;
    if (std::abs(c.n - critical) <= kCriticalSnapTolerance * (1.0 + std::abs(c.n))) {
        r.verdict = Verdict2D::PDRiemannianCritical;
    } else if (c.n < critical) {
        r.verdict = Verdict2D::PDIrreducible;
    } else {
        r.verdict = Verdict2D::PDReducible;
    }
    return r;
}

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Open interval of n-values that make (l, m, n) positive definite.
inline Interval n_interval(double l, double m) {
    if (!(l > 0.0)) throw std::domain_error("n_interval: requires l > 0");
    if (!(std::abs(m) < 4 * l)) throw std::domain_error("n_interval: requires |m| < 4 l");
    return {pd_lower_bound(l, m), pd_upper_bound(l)};
}

/// Fraction of the admissible n-interval on which the definiteness polynomial
/// is reducible, as a function of ratio = m / l. Valid on [0, 4]; the right
/// endpoint is the degenerate limit where the interval shrinks to a point.
inline double reducible_fraction(double ratio) {
    if (!(ratio >= 0.0 && ratio <= 4.0))
        throw std::domain_error("reducible_fraction: ratio must lie in [0, 4]");
    return 0.5 + std::sqrt(4.0 + 2.0 * ratio * ratio) / 12.0;
}

/// Axis-aligned box region; min and max have one entry per position variable.
struct Box {
    std::vector<double> min;
    std::vector<double> max;
};

struct GridFailure {
    std::vector<double> x;
    Classification2D result;
};

/// Aggregated result of classifying a coefficient field over a grid.
struct RegularityReport {
    bool positive_definite_everywhere = false;
    bool classification_varies = false;
    std::size_t total_points = 0;
    std::size_t classified_points = 0;
    std::size_t failing_points = 0;
    std::array<std::size_t, 4> verdict_counts{}; // indexed by Verdict2D
    std::vector<GridFailure> failures;           // capped at max_recorded
    std::vector<std::string> evaluation_errors;  // capped at max_recorded
    std::size_t evaluation_error_count = 0;
    static constexpr std::size_t max_recorded = 16;
};

/// Plain-text one-paragraph summary of a field check.
inline std::string summarize(const RegularityReport& r) {
    std::ostringstream os;
    os << (r.positive_definite_everywhere ? "positive definite on all "
                                          : "NOT positive definite on ")
       << (r.positive_definite_everywhere ? r.total_points : r.failing_points) << " of "
       << r.total_points << " grid points";
    os << " (irreducible " << r.verdict_counts[1] << ", reducible " << r.verdict_counts[2]
       << ", critical " << r.verdict_counts[3] << ")";
    if (r.evaluation_error_count > 0) os << "; " << r.evaluation_error_count << " evaluation errors";
    if (!r.positive_definite_everywhere && !r.failures.empty() &&
        r.failures.front().result.witness) {
        const auto& w = *r.failures.front().result.witness;
        os << "; first witness direction (" << w.y1 << ", " << w.y2 << ") with det " << w.det;
    }
    return os.str();
}

/// Evaluates the coefficient fields on a grid over `region` and classifies
/// every node. Field evaluation failures are collected, not fatal; the
/// aggregate is independent of traversal order.
inline RegularityReport check_field(const ScalarField& l, const ScalarField& m,
                                    const ScalarField& n, const Box& region,
                                    const std::vector<int>& grid) {
    const std::size_t dims = region.min.size();
    if (region.max.size() != dims || grid.size() != dims || dims == 0 || dims > 3)
        throw std::invalid_argument("check_field: region/grid must agree on 1..3 axes");
    for (int g : grid)
        if (g < 1) throw std::invalid_argument("check_field: grid counts must be positive");

    std::size_t total = 1;
    for (int g : grid) total *= static_cast<std::size_t>(g);

    RegularityReport report;
    report.total_points = total;

    std::vector<double> x(dims, 0.0);
    bool any_positive = false;
    std::optional<Verdict2D> first_verdict;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t axis = 0; axis < dims; ++axis) {
            const std::size_t count = static_cast<std::size_t>(grid[axis]);
            const std::size_t idx = rest % count;
            rest /= count;
            x[axis] = count == 1 ? region.min[axis]
                                 : region.min[axis] + (region.max[axis] - region.min[axis]) *
                                                          static_cast<double>(idx) /
                                                          static_cast<double>(count - 1);
        }
        CoefficientSet2D c;
        try {
            c.l = l.evaluate(x);
            c.m = m.evaluate(x);
            c.n = n.evaluate(x);
            if (!std::isfinite(c.l) || !std::isfinite(c.m) || !std::isfinite(c.n))
                throw std::domain_error("coefficient evaluated to a non-finite value");
        } catch (const std::exception& e) {
            ++report.evaluation_error_count;
            if (report.evaluation_errors.size() < RegularityReport::max_recorded) {
                std::ostringstream os;
                os << "at (";
                for (std::size_t axis = 0; axis < dims; ++axis)
                    os << (axis ? ", " : "") << x[axis];
                os << "): " << e.what();
                report.evaluation_errors.push_back(os.str());
            }
            continue;
        }
        const Classification2D result = classify(c);
        ++report.classified_points;
        ++report.verdict_counts[static_cast<std::size_t>(result.verdict)];
        if (!first_verdict) {
            first_verdict = result.verdict;
        } else if (*first_verdict != result.verdict) {
            report.classification_varies = true;
        }
        if (result.verdict == Verdict2D::NotPositiveDefinite) {
            ++report.failing_points;
            if (report.failures.size() < RegularityReport::max_recorded)
                report.failures.push_back({x, result});
        } else {
            any_positive = true;
        }
    }
    report.positive_definite_everywhere = report.failing_points == 0 &&
                                          report.evaluation_error_count == 0 &&
                                          report.classified_points == report.total_points &&
                                          any_positive;
    return report;
}

} // namespace symroot

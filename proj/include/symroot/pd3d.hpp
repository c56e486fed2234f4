#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>

#include "symroot/pd2d.hpp"
#include "symroot/sampling.hpp"
#include "symroot/sympoly.hpp"

namespace symroot {

/// Value of the symmetric ternary quartic with monomial-orbit coefficients
/// (l, m, n, q).
inline double metric_quartic(const CoefficientSet3D& c, double y1, double y2, double y3) {
    const double p4 = y1 * y1 * y1 * y1 + y2 * y2 * y2 * y2 + y3 * y3 * y3 * y3;
    const double p31 = y1 * y1 * y1 * (y2 + y3) + y2 * y2 * y2 * (y1 + y3) +
                       y3 * y3 * y3 * (y1 + y2);
    const double p22 = y1 * y1 * y2 * y2 + y1 * y1 * y3 * y3 + y2 * y2 * y3 * y3;
    const double p211 = y1 * y2 * y3 * (y1 + y2 + y3);
    return c.l * p4 + c.m * p31 + c.n * p22 + c.q * p211;
}

/// Hessian of the ternary quartic at the direction y.
inline Eigen::Matrix3d hessian3d(const CoefficientSet3D& c, double y1, double y2, double y3) {
    const double l = c.l, m = c.m, n = c.n, q = c.q;
    Eigen::Matrix3d h;
    h(0, 0) = 12 * l * y1 * y1 + 6 * m * (y1 * y2 + y1 * y3) + 2 * n * (y2 * y2 + y3 * y3) +
              2 * q * y2 * y3;
    h(1, 1) = 12 * l * y2 * y2 + 6 * m * (y1 * y2 + y2 * y3) + 2 * n * (y1 * y1 + y3 * y3) +
              2 * q * y1 * y3;
    h(2, 2) = 12 * l * y3 * y3 + 6 * m * (y1 * y3 + y2 * y3) + 2 * n * (y1 * y1 + y2 * y2) +
              2 * q * y1 * y2;
    h(0, 1) = 3 * m * (y1 * y1 + y2 * y2) + 4 * n * y1 * y2 +
              q * (2 * y1 * y3 + 2 * y2 * y3 + y3 * y3);
    h(0, 2) = 3 * m * (y1 * y1 + y3 * y3) + 4 * n * y1 * y3 +
              q * (2 * y1 * y2 + y2 * y2 + 2 * y2 * y3);
    h(1, 2) = 3 * m * (y2 * y2 + y3 * y3) + 4 * n * y2 * y3 +
              q * (y1 * y1 + 2 * y1 * y2 + 2 * y1 * y3);
    h(1, 0) = h(0, 1);
    h(2, 0) = h(0, 2);
    h(2, 1) = h(1, 2);
    return h;
}

inline Eigen::Matrix3d hessian3d(const CoefficientSet3D& c, std::span<const double> y) {
    return hessian3d(c, y[0], y[1], y[2]);
}

/// Coefficient matrix of the quadratic form y^T B y = A11(y).
inline Eigen::Matrix3d a11_form_matrix(const CoefficientSet3D& c) {
    Eigen::Matrix3d b;
    b << 12 * c.l, 3 * c.m, 3 * c.m,
         3 * c.m,  2 * c.n, c.q,
         3 * c.m,  c.q,     2 * c.n;
    return b;
}

/// The quartic A11*A22 - A12^2 stored termwise (15 monomials of degree 4 in
/// three variables), keyed by exponent triple.
class Minor2Form3D {
public:
    using Key = std::array<int, 3>;

    explicit Minor2Form3D(std::map<Key, double> terms) : terms_(std::move(terms)) {}

    const std::map<Key, double>& terms() const { return terms_; }

    double coefficient(const Key& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? 0.0 : it->second;
    }

    double operator()(double y1, double y2, double y3) const {
        double sum = 0.0;
        for (const auto& [key, coeff] : terms_) {
            double term = coeff;
            for (int k = 0; k < key[0]; ++k) term *= y1;
            for (int k = 0; k < key[1]; ++k) term *= y2;
            for (int k = 0; k < key[2]; ++k) term *= y3;
            sum += term;
        }
        return sum;
    }

    /// Coefficients that survive setting y3 = 0; these coincide exactly with
    /// the 2D determinant form of (l, m, n).
    Quartic2Form restrict_to_plane() const {
        return {coefficient({4, 0, 0}), coefficient({3, 1, 0}), coefficient({2, 2, 0})};
    }

private:
    std::map<Key, double> terms_;
};

inline Minor2Form3D minor2_coeffs(const CoefficientSet3D& c) {
    const double l = c.l, m = c.m, n = c.n, q = c.q;
    std::map<Minor2Form3D::Key, double> t;
    t[{4, 0, 0}] = 24 * l * n - 9 * m * m;
    t[{3, 1, 0}] = 72 * l * m - 12 * m * n;
    t[{3, 0, 1}] = 24 * l * q + 12 * m * n - 12 * m * q;
    t[{2, 2, 0}] = 144 * l * l + 18 * m * m - 12 * n * n;
    t[{2, 1, 1}] = 72 * l * m + 36 * m * m - 12 * n * q;
    t[{2, 0, 2}] = 24 * l * n + 6 * m * q + 4 * n * n - 4 * q * q;
    t[{1, 3, 0}] = 72 * l * m - 12 * m * n;
    t[{1, 2, 1}] = 72 * l * m + 36 * m * m - 12 * n * q;
    t[{1, 1, 2}] = 36 * m * m + 24 * m * n - 8 * n * q - 4 * q * q;
    t[{1, 0, 3}] = 12 * m * n + 4 * n * q - 4 * q * q;
    t[{0, 4, 0}] = 24 * l * n - 9 * m * m;
    t[{0, 3, 1}] = 24 * l * q + 12 * m * n - 12 * m * q;
    t[{0, 2, 2}] = 24 * l * n + 6 * m * q + 4 * n * n - 4 * q * q;
    t[{0, 1, 3}] = 12 * m * n + 4 * n * q - 4 * q * q;
    t[{0, 0, 4}] = 4 * n * n - q * q;
    return Minor2Form3D(std::move(t));
}

/// det(Hessian) as a symmetric sextic, stored by the seven permutation
/// orbits of degree-6 monomials in three variables.
struct Sextic3Form {
    double a = 0.0; // y_i^6
    double b = 0.0; // y_i^5 y_j
    double c = 0.0; // y_i^4 y_j^2
    double d = 0.0; // y_i^4 y_j y_k
    double e = 0.0; // y_i^3 y_j^3
    double f = 0.0; // y_i^3 y_j^2 y_k
    double g = 0.0; // y_1^2 y_2^2 y_3^2

    double operator()(double y1, double y2, double y3) const {
        const double y1_2 = y1 * y1, y2_2 = y2 * y2, y3_2 = y3 * y3;
        const double y1_3 = y1_2 * y1, y2_3 = y2_2 * y2, y3_3 = y3_2 * y3;
        const double orbit_a = y1_3 * y1_3 + y2_3 * y2_3 + y3_3 * y3_3;
        const double orbit_b = y1_3 * y1_2 * (y2 + y3) + y2_3 * y2_2 * (y1 + y3) +
                               y3_3 * y3_2 * (y1 + y2);
        const double orbit_c = y1_2 * y1_2 * (y2_2 + y3_2) + y2_2 * y2_2 * (y1_2 + y3_2) +
                               y3_2 * y3_2 * (y1_2 + y2_2);
        const double orbit_d = y1 * y2 * y3 * (y1_3 + y2_3 + y3_3);
        const double orbit_e = y1_3 * y2_3 + y1_3 * y3_3 + y2_3 * y3_3;
        const double orbit_f = y1_3 * (y2_2 * y3 + y2 * y3_2) + y2_3 * (y1_2 * y3 + y1 * y3_2) +
                               y3_3 * (y1_2 * y2 + y1 * y2_2);
        const double orbit_g = y1_2 * y2_2 * y3_2;
        return a * orbit_a + b * orbit_b + c * orbit_c + d * orbit_d + e * orbit_e +
               f * orbit_f + g * orbit_g;
    }
};

inline Sextic3Form det_coeffs(const CoefficientSet3D& cs) {
    const double l = cs.l, m = cs.m, n = cs.n, q = cs.q;
    Sextic3Form s;
    s.a = 48 * l * n * n - 12 * l * q * q - 36 * m * m * n + 18 * m * m * q;
    s.b = 144 * l * m * n + 48 * l * n * q - 48 * l * q * q - 54 * m * m * m +
          18 * m * m * q - 24 * m * n * n + 6 * m * q * q;
    s.c = 288 * l * l * n - 108 * l * m * m + 72 * l * m * q + 48 * l * n * n -
          48 * l * q * q + 54 * m * m * m + 18 * m * m * n - 54 * m * m * q +
          12 * m * n * q + 6 * m * q * q - 24 * n * n * n + 6 * n * q * q;
    s.d = 432 * l * m * m + 288 * l * m * n - 96 * l * n * q - 48 * l * q * q -
          108 * m * m * m - 72 * m * m * n + 96 * m * n * q - 24 * m * q * q -
          24 * n * n * q + 6 * q * q * q;
    s.e = 288 * l * l * q + 288 * l * m * n - 288 * l * m * q + 72 * m * m * n +
          36 * m * m * q - 48 * m * n * n - 24 * m * q * q - 24 * n * n * q +
          24 * n * q * q;
    s.f = 864 * l * l * m + 432 * l * m * m - 144 * l * m * n - 144 * l * n * q +
          108 * m * m * m + 72 * m * m * n - 36 * m * m * q + 48 * m * n * n -
          96 * m * n * q - 24 * m * q * q + 24 * n * n * q + 12 * q * q * q;
    s.g = 1728 * l * l * l + 648 * l * m * m - 432 * l * n * n + 540 * m * m * m -
          162 * m * m * q - 216 * m * n * q + 144 * n * n * n + 18 * q * q * q;
    return s;
}

/// Necessary conditions for positive definiteness in three variables:
/// A11 > 0 pins l and a two-sided bound on q, and restricting to a
/// coordinate plane must leave a positive definite binary metric.
struct NecessaryConditions3D {
    Condition positive_l; // l > 0
    Condition q_lower;    // q > (3 m^2 - 4 l n) / (2 l)
    Condition q_upper;    // q < 2 n
    PDCheck2D base_2d;    // sharp test on (l, m, n)

    bool all() const {
        return positive_l.holds && q_lower.holds && q_upper.holds && base_2d.positive_definite;
    }
};

inline NecessaryConditions3D necessary_conditions_3d(const CoefficientSet3D& c) {
    NecessaryConditions3D r;
    r.positive_l = {c.l > 0.0, c.l};
    if (c.l > 0.0) {
        const double lower = (3 * c.m * c.m - 4 * c.l * c.n) / (2 * c.l);
        r.q_lower = {c.q > lower, c.q - lower};
    } else {
        r.q_lower = {false, std::numeric_limits<double>::quiet_NaN()};
    }
    r.q_upper = {c.q < 2 * c.n, 2 * c.n - c.q};
    r.base_2d = is_positive_definite({c.l, c.m, c.n});
    return r;
}

/// Record of the smallest leading principal minor seen over a direction scan.
struct MinorSample {
    double value = 0.0;
    int minor_index = 0; // 1, 2 or 3
    std::array<double, 3> direction{};
};

/// Sphere-sampled evidence for positive definiteness. This is evidence, not
/// a certificate: no complete coefficient criterion is implemented in three
/// variables, so a clean scan only means no violation was found.
struct NumericPDEvidence {
    bool all_minors_positive = false;
    MinorSample minimum;
    std::size_t samples = 0;
};

inline NumericPDEvidence numeric_pd_check_3d(const CoefficientSet3D& c, std::size_t samples) {
    if (samples < 100)
        throw std::invalid_argument("numeric_pd_check_3d: need at least 100 samples");
    const DirectionSampler sampler = DirectionSampler::fibonacci_sphere(samples);
    NumericPDEvidence evidence;
    evidence.samples = sampler.count();
    bool first = true;
    for (std::size_t i = 0; i < sampler.count(); ++i) {
        const auto y = sampler.direction(i);
        const Eigen::Matrix3d h = hessian3d(c, y);
        const double minor1 = h(0, 0);
        const double minor2 = h(0, 0) * h(1, 1) - h(0, 1) * h(0, 1);
        const double minor3 = h.determinant();
        const double values[3] = {minor1, minor2, minor3};
        for (int k = 0; k < 3; ++k) {
            if (first || values[k] < evidence.minimum.value) {
                evidence.minimum = {values[k], k + 1, {y[0], y[1], y[2]}};
                first = false;
            }
        }
    }
    evidence.all_minors_positive = evidence.minimum.value > 0.0;
    return evidence;
}

} // namespace symroot

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace symroot {

/// Coefficients of a symmetric binary quartic in the elementary-symmetric
/// basis: a*s1^4 + b*s1^2*s2 + c*s2^2.
template <class Scalar>
struct BasicCharPolyCoeffs2 {
    Scalar a{}, b{}, c{};
};

/// Coefficients of a symmetric ternary quartic in the elementary-symmetric
/// basis: a*s1^4 + b*s1^2*s2 + c*s2^2 + d*s1*s3.
template <class Scalar>
struct BasicCharPolyCoeffs3 {
    Scalar a{}, b{}, c{}, d{};
};

/// Coefficients of a symmetric binary quartic in the monomial-orbit basis:
/// l*(y1^4+y2^4) + m*(y1^3*y2+y1*y2^3) + n*y1^2*y2^2.
template <class Scalar>
struct BasicCoefficientSet2 {
    Scalar l{}, m{}, n{};
};

/// Coefficients of a symmetric ternary quartic in the monomial-orbit basis;
/// q multiplies the y1^2*y2*y3 orbit.
template <class Scalar>
struct BasicCoefficientSet3 {
    Scalar l{}, m{}, n{}, q{};
};

using CharPolyCoeffs2D = BasicCharPolyCoeffs2<double>;
using CharPolyCoeffs3D = BasicCharPolyCoeffs3<double>;
using CoefficientSet2D = BasicCoefficientSet2<double>;
using CoefficientSet3D = BasicCoefficientSet3<double>;

/// Elementary-symmetric basis to monomial-orbit basis. Unit lower-triangular,
/// hence exact for integer and rational inputs.
template <class Scalar>
constexpr BasicCoefficientSet2<Scalar> charpoly_to_monomial(const BasicCharPolyCoeffs2<Scalar>& c) {
    return {c.a, 4 * c.a + c.b, 6 * c.a + 2 * c.b + c.c};
}

template <class Scalar>
constexpr BasicCharPolyCoeffs2<Scalar> monomial_to_charpoly(const BasicCoefficientSet2<Scalar>& c) {
    return {c.l, c.m - 4 * c.l, c.n - 2 * c.m + 2 * c.l};
}

template <class Scalar>
constexpr BasicCoefficientSet3<Scalar> charpoly_to_monomial(const BasicCharPolyCoeffs3<Scalar>& c) {
    return {c.a,
            4 * c.a + c.b,
            6 * c.a + 2 * c.b + c.c,
            12 * c.a + 5 * c.b + 2 * c.c + c.d};
}

template <class Scalar>
constexpr BasicCharPolyCoeffs3<Scalar> monomial_to_charpoly(const BasicCoefficientSet3<Scalar>& c) {
    return {c.l,
            c.m - 4 * c.l,
            c.n - 2 * c.m + 2 * c.l,
            c.q + 4 * c.l - c.m - 2 * c.n};
}

/// Elementary symmetric polynomials s1..sn of the entries of y, via the
/// O(n^2) Newton-style recurrence.
inline std::vector<double> elementary_symmetric(std::span<const double> y) {
    if (y.empty()) throw std::invalid_argument("elementary_symmetric: empty input");
    const std::size_t n = y.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = std::min(i + 1, n); j >= 1; --j) {
            e[j] += y[i] * e[j - 1];
        }
    }
    return {e.begin() + 1, e.end()};
}

/// A homogeneous polynomial of fixed degree in a fixed number of variables,
/// stored densely as exponent-tuple -> coefficient. The sorted map makes
/// iteration order (and printed/serialized form) deterministic.
class DensePolynomial {
public:
    using Exponents = std::vector<int>;

    DensePolynomial(int dimension, int degree) : dimension_(dimension), degree_(degree) {
        if (dimension < 1) throw std::invalid_argument("DensePolynomial: dimension must be >= 1");
        if (degree < 0) throw std::invalid_argument("DensePolynomial: degree must be >= 0");
    }

    int dimension() const { return dimension_; }
    int degree() const { return degree_; }
    const std::map<Exponents, double>& terms() const { return terms_; }

    /// Adds `coefficient * y^exponents`; the exponents must sum to the degree.
    void add_term(Exponents exponents, double coefficient) {
        check_exponents(exponents);
        if (coefficient == 0.0) return;
        auto [it, inserted] = terms_.emplace(std::move(exponents), coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    double coefficient(const Exponents& exponents) const {
        auto it = terms_.find(exponents);
        return it == terms_.end() ? 0.0 : it->second;
    }

    double operator()(std::span<const double> y) const {
        if (static_cast<int>(y.size()) != dimension_)
            throw std::invalid_argument("DensePolynomial: wrong evaluation arity");
        double sum = 0.0;
        for (const auto& [exps, coeff] : terms_) {
            double term = coeff;
            for (int i = 0; i < dimension_; ++i) {
                for (int k = 0; k < exps[i]; ++k) term *= y[i];
            }
            sum += term;
        }
        return sum;
    }

    DensePolynomial& operator+=(const DensePolynomial& other) {
        require_same_shape(other);
        for (const auto& [exps, coeff] : other.terms_) add_term(exps, coeff);
        return *this;
    }

    DensePolynomial& operator*=(double factor) {
        if (factor == 0.0) {
            terms_.clear();
            return *this;
        }
        for (auto& [exps, coeff] : terms_) coeff *= factor;
        return *this;
    }

    friend DensePolynomial operator*(const DensePolynomial& p, const DensePolynomial& q) {
        if (p.dimension_ != q.dimension_)
            throw std::invalid_argument("DensePolynomial: dimension mismatch in product");
        DensePolynomial result(p.dimension_, p.degree_ + q.degree_);
        for (const auto& [pe, pc] : p.terms_) {
            for (const auto& [qe, qc] : q.terms_) {
                Exponents e(pe);
                for (int i = 0; i < p.dimension_; ++i) e[i] += qe[i];
                result.add_term(std::move(e), pc * qc);
            }
        }
        return result;
    }

    friend DensePolynomial operator+(DensePolynomial p, const DensePolynomial& q) {
        p += q;
        return p;
    }

    friend DensePolynomial operator*(double factor, DensePolynomial p) {
        p *= factor;
        return p;
    }

    bool almost_equal(const DensePolynomial& other, double tol) const {
        if (dimension_ != other.dimension_ || degree_ != other.degree_) return false;
        auto covered = [tol](const DensePolynomial& a, const DensePolynomial& b) {
            for (const auto& [exps, coeff] : a.terms_) {
                if (std::abs(coeff - b.coefficient(exps)) > tol) return false;
            }
            return true;
        };
        return covered(*this, other) && covered(other, *this);
    }

private:
    void check_exponents(const Exponents& exponents) const {
        if (static_cast<int>(exponents.size()) != dimension_)
            throw std::invalid_argument("DensePolynomial: exponent tuple has wrong length");
        int sum = 0;
        for (int e : exponents) {
            if (e < 0) throw std::invalid_argument("DensePolynomial: negative exponent");
            sum += e;
        }
        if (sum != degree_)
            throw std::invalid_argument("DensePolynomial: exponents do not sum to the degree");
    }

    void require_same_shape(const DensePolynomial& other) const {
        if (dimension_ != other.dimension_ || degree_ != other.degree_)
            throw std::invalid_argument("DensePolynomial: shape mismatch");
    }

    int dimension_;
    int degree_;
    std::map<Exponents, double> terms_;
};

/// The k-th elementary symmetric polynomial in `dimension` variables as a
/// DensePolynomial (degree k, all squarefree monomials of k distinct
/// variables).
inline DensePolynomial elementary_symmetric_polynomial(int dimension, int k) {
    if (k < 1 || k > dimension)
        throw std::invalid_argument("elementary_symmetric_polynomial: need 1 <= k <= dimension");
    DensePolynomial p(dimension, k);
    std::vector<int> mask(dimension, 0);
    std::fill(mask.end() - k, mask.end(), 1);
    do {
        p.add_term(mask, 1.0);
    } while (std::next_permutation(mask.begin(), mask.end()));
    return p;
}

/// Averages p over all permutations of its variables. The result is invariant
/// under every coordinate permutation and fixes symmetric inputs. Enumerating
/// permutations is factorial in the dimension, so inputs are capped at six
/// variables.
inline DensePolynomial symmetrize(const DensePolynomial& p) {
    const int n = p.dimension();
    if (n > 6) throw std::invalid_argument("symmetrize: dimension capped at 6");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    DensePolynomial sum(n, p.degree());
    do {
        ++count;
        for (const auto& [exps, coeff] : p.terms()) {
            std::vector<int> permuted(n);
            for (int i = 0; i < n; ++i) permuted[perm[i]] = exps[i];
            sum.add_term(std::move(permuted), coeff);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    sum *= 1.0 / static_cast<double>(count);
    return sum;
}

/// Expands the degree-4 characteristic polynomial in two variables into the
/// dense monomial form.
inline DensePolynomial expand_charpoly(const CharPolyCoeffs2D& c) {
    const DensePolynomial s1 = elementary_symmetric_polynomial(2, 1);
    const DensePolynomial s2 = elementary_symmetric_polynomial(2, 2);
    const DensePolynomial s1s1 = s1 * s1;
    DensePolynomial result = c.a * (s1s1 * s1s1);
    result += c.b * (s1s1 * s2);
    result += c.c * (s2 * s2);
    return result;
}

/// Three-variable counterpart, including the s1*s3 orbit.
inline DensePolynomial expand_charpoly(const CharPolyCoeffs3D& c) {
    const DensePolynomial s1 = elementary_symmetric_polynomial(3, 1);
    const DensePolynomial s2 = elementary_symmetric_polynomial(3, 2);
    const DensePolynomial s3 = elementary_symmetric_polynomial(3, 3);
    const DensePolynomial s1s1 = s1 * s1;
    DensePolynomial result = c.a * (s1s1 * s1s1);
    result += c.b * (s1s1 * s2);
    result += c.c * (s2 * s2);
    result += c.d * (s1 * s3);
    return result;
}

} // namespace symroot

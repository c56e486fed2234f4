#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace symroot {

/// Deterministic set of unit directions used by the brute-force checks:
/// equally spaced angles in 2D, a Fibonacci spiral in 3D, always augmented
/// with the low-denominator rational directions (axes, diagonals, face
/// diagonals) at which hand-checked metrics tend to fail.
class DirectionSampler {
public:
    static DirectionSampler circle(std::size_t count) {
        DirectionSampler s(2);
        s.coords_.reserve(2 * (count + 8));
        for (std::size_t i = 0; i < count; ++i) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(count);
            s.push({std::cos(theta), std::sin(theta)});
        }
        const double dirs[][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                  {1, 2}, {1, -2}, {2, 1}, {2, -1}};
        for (const auto& d : dirs) s.push({d[0], d[1]});
        return s;
    }

    static DirectionSampler fibonacci_sphere(std::size_t count) {
        DirectionSampler s(3);
        s.coords_.reserve(3 * (count + 13));
        // Golden-angle spiral; z offset by half a step keeps the poles out.
        const double golden = std::numbers::pi * (std::sqrt(5.0) + 1.0);
        for (std::size_t i = 0; i < count; ++i) {
            const double z = -1.0 + (2.0 * static_cast<double>(i) + 1.0) /
                                        static_cast<double>(count);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double theta = golden * static_cast<double>(i);
            s.push({r * std::cos(theta), r * std::sin(theta), z});
        }
        const double dirs[][3] = {{1, 0, 0},  {0, 1, 0},  {0, 0, 1},  {1, 1, 0},  {1, -1, 0},
                                  {1, 0, 1},  {1, 0, -1}, {0, 1, 1},  {0, 1, -1}, {1, 1, 1},
                                  {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};
        for (const auto& d : dirs) s.push({d[0], d[1], d[2]});
        return s;
    }

    int dimension() const { return dimension_; }
    std::size_t count() const { return coords_.size() / static_cast<std::size_t>(dimension_); }

    std::span<const double> direction(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dimension_),
                static_cast<std::size_t>(dimension_)};
    }

private:
    explicit DirectionSampler(int dimension) : dimension_(dimension) {}

    void push(std::initializer_list<double> v) {
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::invalid_argument("DirectionSampler: zero direction");
        for (double c : v) coords_.push_back(c / norm);
    }

    int dimension_;
    std::vector<double> coords_;
};

} // namespace symroot

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symroot/exprfield.hpp"
#include "symroot/pd2d.hpp"
#include "symroot/sympoly.hpp"

namespace symroot {

/// Raised for malformed or inconsistent configuration input; the CLI maps it
/// to the usage/config exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric specification loaded from JSON. Coefficients may be plain numbers
/// or expression strings in x1..x3; `raw` keeps the parsed document so that
/// reports can echo their input.
struct MetricConfig {
    int dimension = 2;
    std::string basis = "monomial"; // "monomial" | "charpoly"
    std::map<std::string, ScalarField> coefficients;
    std::optional<Box> region;
    std::optional<std::vector<int>> grid;
    nlohmann::json raw;

    bool constant() const {
        for (const auto& [name, field] : coefficients)
            if (field.arity() != 0) return false;
        return true;
    }
};

namespace detail {

inline ScalarField coefficient_field(const nlohmann::json& value, const std::string& name) {
    if (value.is_number()) return ScalarField::constant(value.get<double>());
    if (value.is_string()) {
        try {
            return ScalarField::parse(value.get<std::string>());
        } catch (const ParseError& e) {
            throw ConfigError("coefficient '" + name + "': " + e.what());
        }
    }
    throw ConfigError("coefficient '" + name + "' must be a number or an expression string");
}

inline std::vector<std::string> expected_names(int dimension, const std::string& basis) {
    if (basis == "monomial") {
        if (dimension == 2) return {"l", "m", "n"};
        return {"l", "m", "n", "q"};
    }
    if (dimension == 2) return {"a", "b", "c"};
    return {"a", "b", "c", "d"};
}

} // namespace detail

inline MetricConfig load_metric_config(const nlohmann::json& j) {
    MetricConfig config;
    config.raw = j;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    config.dimension = j.value("dimension", 2);
    if (config.dimension != 2 && config.dimension != 3)
        throw ConfigError("dimension must be 2 or 3");

    config.basis = j.value("basis", std::string("monomial"));
    if (config.basis != "monomial" && config.basis != "charpoly")
        throw ConfigError("basis must be \"monomial\" or \"charpoly\"");

    if (!j.contains("coefficients") || !j["coefficients"].is_object())
        throw ConfigError("config needs a \"coefficients\" object");

    const std::vector<std::string> names = detail::expected_names(config.dimension, config.basis);
    for (const std::string& name : names) {
        if (!j["coefficients"].contains(name))
            throw ConfigError("missing coefficient '" + name + "' for dimension " +
                              std::to_string(config.dimension) + ", basis " + config.basis);
        config.coefficients.emplace(name, detail::coefficient_field(j["coefficients"][name], name));
    }
    for (const auto& [name, value] : j["coefficients"].items()) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw ConfigError("unexpected coefficient '" + name + "'");
    }

    if (j.contains("region")) {
        const auto& r = j["region"];
        if (!r.is_object() || !r.contains("min") || !r.contains("max"))
            throw ConfigError("region needs \"min\" and \"max\" arrays");
        Box box;
        box.min = r["min"].get<std::vector<double>>();
        box.max = r["max"].get<std::vector<double>>();
        if (box.min.size() != box.max.size() || box.min.empty() || box.min.size() > 3)
            throw ConfigError("region min/max must have matching length 1..3");
        config.region = std::move(box);
    }
    if (j.contains("grid")) {
        auto grid = j["grid"].get<std::vector<int>>();
        if (!config.region) throw ConfigError("grid requires a region");
        if (grid.size() != config.region->min.size())
            throw ConfigError("grid length must match the region axes");
        for (int g : grid)
            if (g < 1) throw ConfigError("grid counts must be positive");
        config.grid = std::move(grid);
    }
    return config;
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline MetricConfig load_metric_config_file(const std::string& path) {
    return load_metric_config(parse_json_file(path));
}

/// Evaluates the coefficient fields at x and, for the characteristic basis,
/// applies the basis change to monomial-orbit coefficients.
inline CoefficientSet2D coefficients_2d_at(const MetricConfig& config,
                                           std::span<const double> x) {
    if (config.dimension != 2) throw ConfigError("config is not 2-dimensional");
    if (config.basis == "monomial") {
        return {config.coefficients.at("l").evaluate(x), config.coefficients.at("m").evaluate(x),
                config.coefficients.at("n").evaluate(x)};
    }
    const CharPolyCoeffs2D cp{config.coefficients.at("a").evaluate(x),
                              config.coefficients.at("b").evaluate(x),
                              config.coefficients.at("c").evaluate(x)};
    return charpoly_to_monomial(cp);
}

inline CoefficientSet3D coefficients_3d_at(const MetricConfig& config,
                                           std::span<const double> x) {
    if (config.dimension != 3) throw ConfigError("config is not 3-dimensional");
    if (config.basis == "monomial") {
        return {config.coefficients.at("l").evaluate(x), config.coefficients.at("m").evaluate(x),
                config.coefficients.at("n").evaluate(x), config.coefficients.at("q").evaluate(x)};
    }
    const CharPolyCoeffs3D cp{
        config.coefficients.at("a").evaluate(x), config.coefficients.at("b").evaluate(x),
        config.coefficients.at("c").evaluate(x), config.coefficients.at("d").evaluate(x)};
    return charpoly_to_monomial(cp);
}

/// Returns the three monomial coefficient fields of a 2D config, composing
/// the basis change symbolically when the config uses the characteristic
/// basis.
inline std::array<ScalarField, 3> coefficient_fields_2d(const MetricConfig& config) {
    if (config.dimension != 2) throw ConfigError("config is not 2-dimensional");
    if (config.basis == "monomial") {
        return {config.coefficients.at("l"), config.coefficients.at("m"),
                config.coefficients.at("n")};
    }
    const ScalarField& a = config.coefficients.at("a");
    const ScalarField& b = config.coefficients.at("b");
    const ScalarField& c = config.coefficients.at("c");
    return {a, 4.0 * a + b, 6.0 * a + 2.0 * b + c};
}

/// Configuration for the surface-curvature commands: either a p-field
/// directly or the (a, b) coefficient pair it derives from.
struct CurvatureConfig {
    ScalarField p;
    std::optional<Box> region;
    std::optional<std::vector<int>> grid;
    std::vector<std::array<double, 2>> points;
    nlohmann::json raw;
};

inline CurvatureConfig load_curvature_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    std::optional<ScalarField> p;
    if (j.contains("p")) {
        p = detail::coefficient_field(j["p"], "p");
    } else if (j.contains("coefficients") && j["coefficients"].contains("a") &&
               j["coefficients"].contains("b")) {
        const ScalarField a = detail::coefficient_field(j["coefficients"]["a"], "a");
        const ScalarField b = detail::coefficient_field(j["coefficients"]["b"], "b");
        p = ScalarField::constant(1.0) + b / (2.0 * a);
    } else {
        throw ConfigError("curvature config needs \"p\" or coefficients \"a\" and \"b\"");
    }
    CurvatureConfig config{*p, std::nullopt, std::nullopt, {}, j};
    if (j.contains("region")) {
        Box box;
        box.min = j["region"]["min"].get<std::vector<double>>();
        box.max = j["region"]["max"].get<std::vector<double>>();
        if (box.min.size() != 2 || box.max.size() != 2)
            throw ConfigError("curvature region must have two axes");
        config.region = std::move(box);
        if (j.contains("grid")) {
            auto grid = j["grid"].get<std::vector<int>>();
            if (grid.size() != 2) throw ConfigError("curvature grid must have two axes");
            for (int g : grid)
                if (g < 1) throw ConfigError("grid counts must be positive");
            config.grid = std::move(grid);
        }
    }
    if (j.contains("points")) {
        for (const auto& pt : j["points"]) {
            const auto coords = pt.get<std::vector<double>>();
            if (coords.size() != 2) throw ConfigError("curvature points must have two entries");
            config.points.push_back({coords[0], coords[1]});
        }
    }
    return config;
}

} // namespace symroot

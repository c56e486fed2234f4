#pragma once

#include <cmath>
#include <json.hpp>

#include "symroot/oracle.hpp"
#include "symroot/pd2d.hpp"
#include "symroot/pd3d.hpp"
#include "symroot/riemann.hpp"
#include "symroot/table.hpp"

// JSON views of the report types. Non-finite values serialize as null, which
// is nlohmann's dump() behavior already; verdicts serialize as their names.

namespace symroot {

inline void to_json(nlohmann::json& j, const Condition& c) {
    j = {{"holds", c.holds}, {"margin", c.margin}};
}

inline void to_json(nlohmann::json& j, const CoefficientSet2D& c) {
    j = {{"l", c.l}, {"m", c.m}, {"n", c.n}};
}

inline void to_json(nlohmann::json& j, const CoefficientSet3D& c) {
    j = {{"l", c.l}, {"m", c.m}, {"n", c.n}, {"q", c.q}};
}

inline void to_json(nlohmann::json& j, const Quartic2Form& f) {
    j = {{"c40", f.c40}, {"c31", f.c31}, {"c22", f.c22}};
}

inline void to_json(nlohmann::json& j, const DefinitenessPolynomial& p) {
    j = {{"alpha", p.alpha},   {"beta", p.beta},     {"gamma", p.gamma},
         {"delta1", p.delta1}, {"delta2", p.delta2}, {"discriminant", p.discriminant()}};
}

inline void to_json(nlohmann::json& j, const NecessaryConditions2D& c) {
    j = {{"positive_l", c.positive_l}, {"corner_minor", c.corner_minor},
         {"n_upper", c.n_upper},       {"diagonal", c.diagonal},
         {"m_bound", c.m_bound},       {"all", c.all()}};
}

inline void to_json(nlohmann::json& j, const PDCheck2D& c) {
    const char* failure = nullptr;
    switch (c.failure) {
        case PDFailure::None: failure = "none"; break;
        case PDFailure::NonpositiveL: failure = "l must be positive"; break;
        case PDFailure::BelowLowerBound: failure = "n at or below the lower bound"; break;
        case PDFailure::AboveUpperBound: failure = "n at or above 6 l"; break;
    }
    j = {{"positive_definite", c.positive_definite},
         {"lower_bound", c.lower_bound},
         {"upper_bound", c.upper_bound},
         {"failure", failure}};
}

inline void to_json(nlohmann::json& j, const Witness2D& w) {
    j = {{"y1", w.y1}, {"y2", w.y2}, {"a11", w.a11}, {"det", w.det}};
}

inline void to_json(nlohmann::json& j, const Bounds2D& b) {
    j = {{"lower", b.lower}, {"upper", b.upper}, {"critical", b.critical}};
    if (b.slope_bound) j["slope_bound"] = *b.slope_bound;
}

inline void to_json(nlohmann::json& j, const Classification2D& c) {
    j = {{"verdict", std::string(to_string(c.verdict))}, {"bounds", c.bounds}};
    if (c.witness) j["witness"] = *c.witness;
}

inline void to_json(nlohmann::json& j, const GridFailure& f) {
    j = {{"x", f.x}, {"result", f.result}};
}

inline void to_json(nlohmann::json& j, const RegularityReport& r) {
    j = {{"positive_definite_everywhere", r.positive_definite_everywhere},
         {"classification_varies", r.classification_varies},
         {"total_points", r.total_points},
         {"classified_points", r.classified_points},
         {"failing_points", r.failing_points},
         {"counts",
          {{"not_positive_definite", r.verdict_counts[0]},
           {"irreducible", r.verdict_counts[1]},
           {"reducible", r.verdict_counts[2]},
           {"riemannian_critical", r.verdict_counts[3]}}},
         {"failures", r.failures},
         {"evaluation_errors", r.evaluation_errors},
         {"evaluation_error_count", r.evaluation_error_count}};
}

inline void to_json(nlohmann::json& j, const NecessaryConditions3D& c) {
    j = {{"positive_l", c.positive_l},
         {"q_lower", c.q_lower},
         {"q_upper", c.q_upper},
         {"base_2d", c.base_2d},
         {"all", c.all()}};
}

inline void to_json(nlohmann::json& j, const MinorSample& s) {
    j = {{"value", s.value}, {"minor", s.minor_index}, {"direction", s.direction}};
}

inline void to_json(nlohmann::json& j, const NumericPDEvidence& e) {
    j = {{"all_minors_positive", e.all_minors_positive},
         {"minimum", e.minimum},
         {"samples", e.samples}};
}

inline void to_json(nlohmann::json& j, const Sextic3Form& s) {
    j = {{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}, {"e", s.e}, {"f", s.f}, {"g", s.g}};
}

inline void to_json(nlohmann::json& j, const EigenScan& s) {
    j = {{"min_eigenvalue", s.min_eigenvalue},
         {"direction", std::vector<double>(s.direction.begin(),
                                           s.direction.begin() + s.dimension)}};
}

inline void to_json(nlohmann::json& j, const Disagreement& d) {
    j = {{"coefficients", d.coefficients},
         {"criterion_positive_definite", d.criterion_positive_definite},
         {"oracle_min_eigenvalue", d.oracle_min_eigenvalue}};
}

inline void to_json(nlohmann::json& j, const AgreementSummary& s) {
    j = {{"samples", s.samples},       {"agreements", s.agreements},
         {"disagreements", s.disagreements}, {"discarded", s.discarded},
         {"seed", s.seed},             {"directions", s.directions},
         {"examples", s.examples}};
}

inline void to_json(nlohmann::json& j, const EnergyRelationReport& r) {
    j = {{"passed", r.passed},
         {"max_relative_residual", r.max_relative_residual},
         {"quartic_value", r.quartic_value},
         {"tolerance", r.tolerance}};
}

inline void to_json(nlohmann::json& j, const ChristoffelSymbols& g) {
    j = nlohmann::json::object();
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj)
                j["G" + std::to_string(k + 1) + "_" + std::to_string(i + 1) +
                  std::to_string(jj + 1)] = g.value[k][i][jj];
}

inline void to_json(nlohmann::json& j, const CurvatureData& c) {
    j = {{"christoffel", c.christoffel},
         {"ricci", {{"11", c.ricci[0][0]}, {"12", c.ricci[0][1]}, {"22", c.ricci[1][1]}}},
         {"riemann_down_1212", c.riemann_down[0][1][0][1]},
         {"scalar", c.scalar},
         {"gauss", c.gauss},
         {"p", c.jet.p},
         {"dp", {c.jet.d1, c.jet.d2}},
         {"dp12", c.jet.d12}};
}

inline void to_json(nlohmann::json& j, const CurvatureResidualReport& r) {
    j = {{"passed", r.passed},
         {"worst_residual", r.worst_residual},
         {"worst_point", r.worst_point},
         {"checked", r.checked},
         {"skipped", r.skipped},
         {"tolerance", r.tolerance}};
}

inline void to_json(nlohmann::json& j, const IntervalTable& t) {
    j = {{"l", t.l_values}, {"m", t.m_values}, {"cells", t.cells}};
}

} // namespace symroot

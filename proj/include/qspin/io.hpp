// JSON / CSV serialization of specs, reports and matrices, plus the exact
// spin-string parsing used by the CLI ("1/2", "3/2", "1", ...).
#pragma once

#include "qspin/relations.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qspin {

using nlohmann::json;

// Spin strings are parsed exactly: either an integer or an odd number over 2.
inline int parse_spin_string(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const int whole = std::stoi(text, &used);
            if (used != text.size() || whole < 0) throw DomainError("");
            return 2 * whole;
        }
        std::size_t used = 0;
        const int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash || num < 0) throw DomainError("");
        if (text.substr(slash + 1) != "2") throw DomainError("");
        return num;
    } catch (const std::exception&) {
        throw DomainError("cannot parse spin '" + text + "': expected forms like 1, 1/2, 3/2");
    }
}

inline std::string spin_to_string(int two_S) {
    if (two_S % 2 == 0) return std::to_string(two_S / 2);
    return std::to_string(two_S) + "/2";
}

inline ChainSpec parse_chain_spec(const json& j) {
    ChainSpec spec;
    try {
        spec.params.two_S = parse_spin_string(j.at("S").get<std::string>());
        spec.N            = j.at("N").get<int>();
        spec.params.gamma = j.at("gamma").get<double>();
        const json& c = j.at("coupling");
        const std::string type = c.at("type").get<std::string>();
        if (type == "single_s") {
            CouplingSchedule::SingleS s;
            s.s = c.at("s").get<int>();
            s.a = c.at("a").get<std::vector<double>>();
            spec.coupling.value = std::move(s);
        } else if (type == "general") {
            CouplingSchedule::General g;
            g.b = c.at("b").get<std::vector<std::vector<double>>>();
            spec.coupling.value = std::move(g);
        } else {
            throw DomainError("coupling type must be single_s or general");
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed chain spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

inline ChainSpec load_chain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return parse_chain_spec(j);
}

inline json chain_spec_to_json(const ChainSpec& spec) {
    json c;
    if (spec.coupling.is_single()) {
        const auto& s = std::get<CouplingSchedule::SingleS>(spec.coupling.value);
        c = {{"type", "single_s"}, {"s", s.s}, {"a", s.a}};
    } else {
        const auto& g = std::get<CouplingSchedule::General>(spec.coupling.value);
        c = {{"type", "general"}, {"b", g.b}};
    }
    return {{"S", spin_to_string(spec.params.two_S)},
            {"N", spec.N},
            {"gamma", spec.params.gamma},
            {"coupling", c}};
}

// Matrices as row-major arrays of [re, im] pairs.
inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j) {
    const auto rows = j.size();
    if (rows == 0) return Matrix(0, 0);
    const auto cols = j.at(0).size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = Complex(j.at(i).at(k).at(0).get<double>(),
                              j.at(i).at(k).at(1).get<double>());
    return m;
}

inline json to_json(const SpectrumReport& rep) {
    json eig = json::array();
    for (Complex v : rep.eigenvalues) eig.push_back({v.real(), v.imag()});
    json clusters = json::array();
    for (const auto& [center, mult] : rep.clusters)
        clusters.push_back({{"center", {center.real(), center.imag()}}, {"multiplicity", mult}});
    return {{"eigenvalues", eig},
            {"max_abs_imag", rep.max_abs_imag},
            {"is_real", rep.is_real},
            {"tol", rep.tol},
            {"scale", rep.scale},
            {"clusters", clusters}};
}

inline json to_json(const RealityScan& scan, double tol = kRealityTol) {
    json j{{"tolerances", {{"reality", tol}}},
           {"boundary", nullptr},
           {"bracket", {scan.boundary_bracket.first, scan.boundary_bracket.second}},
           {"skipped_gammas", scan.skipped_gammas}};
    if (scan.boundary) j["boundary"] = *scan.boundary;
    json transitions = json::array();
    for (const auto& [lo, hi] : scan.transitions) transitions.push_back({lo, hi});
    j["transitions"] = transitions;
    json curve = json::array();
    for (std::size_t i = 0; i < scan.gamma_grid.size(); ++i) {
        const double v = scan.max_imag_curve[i];
        curve.push_back({{"gamma", scan.gamma_grid[i]},
                         {"max_abs_imag", std::isnan(v) ? json(nullptr) : json(v)}});
    }
    j["curve"] = curve;
    return j;
}

inline void write_scan_csv(std::ostream& out, const RealityScan& scan, double tol = kRealityTol) {
    out << "gamma,max_abs_imag,is_real\n";
    for (std::size_t i = 0; i < scan.gamma_grid.size(); ++i) {
        const double v = scan.max_imag_curve[i];
        out << scan.gamma_grid[i] << ",";
        if (std::isnan(v)) {
            out << ",";  // skipped point: empty fields
        } else {
            out << v << "," << (v <= tol ? 1 : 0);
        }
        out << "\n";
    }
}

inline json metric_diagnostics_json(const MetricCandidate& cand, double gamma, double alpha) {
    return {{"hermiticity_residual", cand.hermiticity_residual},
            {"min_eig", cand.min_eig_hermitian_part},
            {"is_pd", cand.is_positive_definite},
            {"gamma", gamma},
            {"alpha", alpha}};
}

inline json to_json(const IdentityReport& rep) {
    json j{{"identity_name", rep.identity_name},
           {"statement", rep.statement},
           {"residual", std::isnan(rep.residual) ? json(nullptr) : json(rep.residual)},
           {"tolerance", rep.tolerance},
           {"pass", rep.pass},
           {"params",
            {{"S", spin_to_string(rep.params.two_S)},
             {"N", rep.params.N},
             {"gamma", rep.params.gamma},
             {"seed", rep.params.seed}}}};
    if (!rep.error.empty()) j["error"] = rep.error;
    return j;
}

inline json to_json(const std::vector<IdentityReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

inline json to_json(const Conjecture1Report& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases) {
        json item{{"S", spin_to_string(c.two_S)},
                  {"s", c.s},
                  {"bound", c.bound},
                  {"trials_below", c.trials_below},
                  {"real_below", c.real_below},
                  {"violation_gamma", nullptr},
                  {"violation_max_imag", c.violation_max_imag}};
        if (c.violation_gamma) item["violation_gamma"] = *c.violation_gamma;
        cases.push_back(std::move(item));
    }
    return {{"conjecture", 1}, {"seed", rep.seed}, {"supported", rep.supported}, {"cases", cases}};
}

inline json to_json(const Conjecture2Report& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases)
        cases.push_back({{"S", spin_to_string(c.two_S)},
                         {"N", c.N},
                         {"scan_boundary", c.scan_boundary},
                         {"chebyshev", c.chebyshev},
                         {"abs_diff", c.abs_diff}});
    return {{"conjecture", 2}, {"max_abs_diff", rep.max_abs_diff}, {"cases", cases}};
}

inline json to_json(const Conjecture3Report& rep) {
    json counter = json::array();
    for (const auto& c : rep.counterexamples)
        counter.push_back(
            {{"gamma", c.gamma}, {"s", c.s}, {"a", c.a}, {"max_abs_imag", c.max_abs_imag}});
    return {{"conjecture", 3},
            {"S", spin_to_string(rep.two_S)},
            {"N", rep.N},
            {"trials", rep.trials},
            {"seed", rep.seed},
            {"gamma_max", rep.gamma_max},
            {"real_count", rep.real_count},
            {"counterexamples", counter}};
}

// Dispatcher used by reporting code: one JSON document per conjecture.
inline json conjecture_support(int which, int trials, std::uint64_t seed) {
    switch (which) {
        case 1: return to_json(conjecture1_support(trials, seed));
        case 2: return to_json(conjecture2_support());
        case 3: {
            json arr = json::array();
            arr.push_back(to_json(conjecture3_support(1, 4, trials, seed)));
            arr.push_back(to_json(conjecture3_support(2, 3, trials, seed)));
            return arr;
        }
        default: throw DomainError("conjecture_support: which must be 1, 2 or 3");
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace qspin

#include "ineqforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ineqforge/errors.hpp"

namespace ineqforge::report {
namespace {

using nlohmann::json;
using spectral::Coordinate;

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string coordinate_name(Coordinate c) {
    return c == Coordinate::LogRadius ? "log_radius" : "linear";
}

Coordinate coordinate_from(const std::string& s) {
    if (s == "log_radius") return Coordinate::LogRadius;
    if (s == "linear") return Coordinate::Linear;
    throw ParameterError("unknown coordinate '" + s + "'");
}

json family_json(const chains::FamilyTag& f) {
    return {{"kind", chains::to_string(f.kind)}, {"d", f.d},         {"a", f.a},
            {"alpha", f.alpha},                  {"beta", f.beta},   {"tstar", f.tstar},
            {"delta_omega", f.delta_omega},      {"name", f.name()}};
}

chains::FamilyTag family_from(const json& j) {
    chains::FamilyTag f;
    f.kind = chains::family_kind_from_string(j.at("kind").get<std::string>());
    f.d = j.at("d").get<int>();
    f.a = j.at("a").get<double>();
    f.alpha = j.at("alpha").get<double>();
    f.beta = j.at("beta").get<double>();
    f.tstar = j.at("tstar").get<double>();
    f.delta_omega = j.at("delta_omega").get<double>();
    return f;
}

json domain_json(const spectral::Domain& d) {
    return {{"r_in", d.r_in()},
            {"r_out", d.r_out()},
            {"log_r_in", d.log_r_in},
            {"log_r_out", d.log_r_out}};
}

spectral::Domain domain_from(const json& j) {
    return {j.at("log_r_in").get<double>(), j.at("log_r_out").get<double>()};
}

}  // namespace

std::string to_string(chains::RhsConvention conv) {
    return conv == chains::RhsConvention::Remainder ? "remainder" : "literal";
}

chains::RhsConvention convention_from_string(const std::string& s) {
    if (s == "remainder") return chains::RhsConvention::Remainder;
    if (s == "literal") return chains::RhsConvention::LiteralSum;
    throw ParameterError("unknown convention '" + s + "' (expected remainder or literal)");
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_number(row[i]);
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Table& table) {
    json j;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(2) + "\n";
}

Table weights_table(const chains::WeightChain& chain, int N, const std::vector<double>& t) {
    Table table;
    table.columns.push_back("t");
    for (int k = 0; k <= N; ++k) table.columns.push_back("W_" + std::to_string(k));
    table.columns.push_back("partial_sum");
    for (double x : t) {
        const auto s = chain.weight_sequence(x, N);
        std::vector<double> row{x};
        row.insert(row.end(), s.w.begin(), s.w.end());
        row.push_back(s.partial_sum);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table lambda_table(const spectral::VerificationReport& report) {
    Table table;
    table.columns = {"r_in", "r_out", "log_r_in", "log_r_out", "nodes", "lambda_min", "tolerance"};
    for (const auto& r : report.refinements) {
        table.rows.push_back({r.domain.r_in(), r.domain.r_out(), r.domain.log_r_in,
                              r.domain.log_r_out, double(r.nodes), r.lambda_min, r.tolerance});
    }
    return table;
}

std::string to_json(const spectral::VerificationReport& rep, const std::string& timestamp) {
    json j;
    j["family"] = family_json(rep.family);
    j["params"] = {{"N", rep.options.N},
                   {"inflation", rep.options.inflation},
                   {"convention", to_string(rep.options.conv)},
                   {"ell", rep.options.ell},
                   {"extra_r2", rep.options.extra_r2},
                   {"extra_const", rep.options.extra_const},
                   {"include_chain", rep.options.include_chain}};
    j["N"] = rep.options.N;
    j["verdict"] = spectral::to_string(rep.verdict);
    j["lambda_min"] = rep.lambda_min;
    j["tolerance"] = rep.tolerance;
    j["grid"] = {{"size", rep.grid_size}, {"coordinate", coordinate_name(rep.coordinate)}};
    j["domain"] = domain_json(rep.domain);
    json steps = json::array();
    for (const auto& r : rep.refinements) {
        steps.push_back({{"domain", domain_json(r.domain)},
                         {"nodes", r.nodes},
                         {"lambda_min", r.lambda_min},
                         {"tolerance", r.tolerance},
                         {"dirichlet", r.dirichlet},
                         {"potential", r.potential}});
    }
    j["refinements"] = steps;
    if (rep.witness) {
        const auto& w = *rep.witness;
        j["witness"] = {{"coordinate", coordinate_name(w.coordinate)},
                        {"nodes", w.nodes},
                        {"values", w.values},
                        {"q_discrete", w.q_discrete},
                        {"q_quadrature", w.q_quadrature},
                        {"scale", w.scale},
                        {"valid", w.valid}};
    }
    j["note"] = rep.note;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

spectral::VerificationReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    spectral::VerificationReport rep;
    rep.family = family_from(j.at("family"));
    const json& p = j.at("params");
    rep.options.N = p.at("N").get<int>();
    rep.options.inflation = p.at("inflation").get<double>();
    rep.options.conv = convention_from_string(p.at("convention").get<std::string>());
    rep.options.ell = p.at("ell").get<int>();
    rep.options.extra_r2 = p.at("extra_r2").get<double>();
    rep.options.extra_const = p.at("extra_const").get<double>();
    rep.options.include_chain = p.at("include_chain").get<bool>();
    rep.verdict = spectral::verdict_from_string(j.at("verdict").get<std::string>());
    rep.lambda_min = j.at("lambda_min").get<double>();
    rep.tolerance = j.at("tolerance").get<double>();
    rep.grid_size = j.at("grid").at("size").get<int>();
    rep.coordinate = coordinate_from(j.at("grid").at("coordinate").get<std::string>());
    rep.domain = domain_from(j.at("domain"));
    for (const auto& s : j.at("refinements")) {
        spectral::Refinement r;
        r.domain = domain_from(s.at("domain"));
        r.nodes = s.at("nodes").get<int>();
        r.lambda_min = s.at("lambda_min").get<double>();
        r.tolerance = s.at("tolerance").get<double>();
        r.dirichlet = s.at("dirichlet").get<double>();
        r.potential = s.at("potential").get<double>();
        rep.refinements.push_back(r);
    }
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        spectral::Witness out;
        out.coordinate = coordinate_from(w.at("coordinate").get<std::string>());
        out.nodes = w.at("nodes").get<std::vector<double>>();
        out.values = w.at("values").get<std::vector<double>>();
        if (out.nodes.size() != out.values.size()) {
            throw ParameterError("witness nodes and values differ in length");
        }
        out.q_discrete = w.at("q_discrete").get<double>();
        out.q_quadrature = w.at("q_quadrature").get<double>();
        out.scale = w.at("scale").get<double>();
        out.valid = w.at("valid").get<bool>();
        rep.witness = std::move(out);
    }
    rep.note = j.at("note").get<std::string>();
    return rep;
}

std::string to_json(const spectral::RemainderProbe& probe, const std::string& timestamp) {
    json j;
    j["family"] = family_json(probe.family);
    j["k"] = probe.k;
    j["t"] = probe.t;
    j["xi"] = probe.xi;
    j["ratio"] = probe.ratio;
    j["limit"] = probe.limit;
    j["uncertainty"] = probe.uncertainty;
    j["verdict"] = spectral::to_string(probe.verdict);
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

}  // namespace ineqforge::report

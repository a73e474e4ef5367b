#include "coboson/serialize.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "coboson/errors.hpp"

namespace coboson {

namespace {

nlohmann::json real_or_null(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

double real_from(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

bool same_real(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

} // namespace

nlohmann::json to_json(const SchmidtDistribution& dist) {
    return nlohmann::json{{"family", dist.family_tag},
                          {"weights", dist.weights},
                          {"truncation_error", dist.truncation_error}};
}

SchmidtDistribution distribution_from_json(const nlohmann::json& j) {
    SchmidtDistribution dist;
    dist.family_tag = j.at("family").get<std::string>();
    dist.weights = j.at("weights").get<std::vector<double>>();
    dist.truncation_error = j.at("truncation_error").get<double>();
    return dist;
}

nlohmann::json to_json(const ChiTable& table) {
    return nlohmann::json{
        {"nmax", table.Nmax}, {"source", to_string(table.source)}, {"values", table.values}};
}

ChiTable chi_table_from_json(const nlohmann::json& j) {
    ChiTable table;
    table.Nmax = j.at("nmax").get<int>();
    table.values = j.at("values").get<std::vector<double>>();
    const auto s = j.at("source").get<std::string>();
    if (s == "dp") table.source = ChiSource::dp;
    else if (s == "newton") table.source = ChiSource::newton;
    else if (s == "oracle") table.source = ChiSource::oracle;
    else if (s == "analytic") table.source = ChiSource::analytic;
    else throw OutOfRange("unknown chi source: " + s);
    return table;
}

nlohmann::json to_json(const OccupationConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [mode, occ] : cfg.occupations) j[mode] = occ;
    return j;
}

OccupationConfig occupation_from_json(const nlohmann::json& j) {
    OccupationConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        cfg.occupations[it.key()] = it.value().get<int>();
    }
    return cfg;
}

nlohmann::json to_json(const EngineReport& report) {
    nlohmann::json f_star = nlohmann::json::array();
    nlohmann::json l_eq = nlohmann::json::array();
    for (double x : report.f_star) f_star.push_back(real_or_null(x));
    for (double x : report.l_eq) l_eq.push_back(real_or_null(x));
    return nlohmann::json{
        {"N", report.N},
        {"beta", report.beta},
        {"chi2", report.chi2},
        {"f", report.f},
        {"f_star", f_star},
        {"l_eq", l_eq},
        {"work", report.work},
        {"diagnostics",
         {{"modes_left", report.diagnostics.modes_left},
          {"modes_right", report.diagnostics.modes_right},
          {"tail_left", report.diagnostics.tail_left},
          {"tail_right", report.diagnostics.tail_right},
          {"skipped_branches", report.diagnostics.skipped_branches}}}};
}

EngineReport report_from_json(const nlohmann::json& j) {
    EngineReport report;
    report.N = j.at("N").get<int>();
    report.beta = j.at("beta").get<double>();
    report.chi2 = j.at("chi2").get<double>();
    report.f = j.at("f").get<std::vector<double>>();
    for (const auto& x : j.at("f_star")) report.f_star.push_back(real_from(x));
    for (const auto& x : j.at("l_eq")) report.l_eq.push_back(real_from(x));
    report.work = j.at("work").get<double>();
    const auto& d = j.at("diagnostics");
    report.diagnostics.modes_left = d.at("modes_left").get<int>();
    report.diagnostics.modes_right = d.at("modes_right").get<int>();
    report.diagnostics.tail_left = d.at("tail_left").get<double>();
    report.diagnostics.tail_right = d.at("tail_right").get<double>();
    report.diagnostics.skipped_branches = d.at("skipped_branches").get<std::vector<int>>();
    return report;
}

bool reports_equal(const EngineReport& a, const EngineReport& b) {
    auto same_vec = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!same_real(x[i], y[i])) return false;
        }
        return true;
    };
    return a.N == b.N && same_real(a.beta, b.beta) && same_real(a.chi2, b.chi2) &&
           same_vec(a.f, b.f) && same_vec(a.f_star, b.f_star) && same_vec(a.l_eq, b.l_eq) &&
           same_real(a.work, b.work) &&
           a.diagnostics.modes_left == b.diagnostics.modes_left &&
           a.diagnostics.modes_right == b.diagnostics.modes_right &&
           same_real(a.diagnostics.tail_left, b.diagnostics.tail_left) &&
           same_real(a.diagnostics.tail_right, b.diagnostics.tail_right) &&
           a.diagnostics.skipped_branches == b.diagnostics.skipped_branches;
}

} // namespace coboson

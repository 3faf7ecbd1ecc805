#pragma once

// Experiment configuration and structured reports. Configs round-trip through
// a flat key=value text format; reports serialize to JSON (stable field names
// and deterministic float formatting) or CSV.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace abt {

struct ExperimentConfig {
    std::string experiment;
    double extent = 8.0;
    int grid = 0;  // 0 = per-experiment default
    unsigned long seed = 1;
    std::string out;
    std::string format = "json";
    std::map<std::string, double> tolerances;  // overrides, keyed by name
    std::map<std::string, double> params;      // experiment-specific numbers

    double tol(const std::string& name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }
    double param(const std::string& name, double fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
};

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline std::string config_to_text(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "experiment = " << c.experiment << "\n";
    os << "extent = " << format_double(c.extent) << "\n";
    os << "grid = " << c.grid << "\n";
    os << "seed = " << c.seed << "\n";
    if (!c.out.empty()) os << "out = " << c.out << "\n";
    os << "format = " << c.format << "\n";
    for (const auto& [k, v] : c.tolerances) os << "tol." << k << " = " << format_double(v) << "\n";
    for (const auto& [k, v] : c.params) os << "param." << k << " = " << format_double(v) << "\n";
    return os.str();
}

inline ExperimentConfig config_from_text(const std::string& text) {
    ExperimentConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "experiment") c.experiment = val;
        else if (key == "extent") c.extent = std::stod(val);
        else if (key == "grid") c.grid = std::stoi(val);
        else if (key == "seed") c.seed = std::stoul(val);
        else if (key == "out") c.out = val;
        else if (key == "format") c.format = val;
        else if (key.rfind("tol.", 0) == 0) c.tolerances[key.substr(4)] = std::stod(val);
        else if (key.rfind("param.", 0) == 0) c.params[key.substr(6)] = std::stod(val);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return c;
}

enum class Verdict { Pass, Fail, ReportOnly };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::ReportOnly: return "report-only";
    }
    return "?";
}

struct ReportRow {
    std::string quantity;
    double measured = 0.0;
    double reference = 0.0;
    std::string note;  // where the reference value comes from
    Verdict verdict = Verdict::ReportOnly;
};

struct ExperimentReport {
    std::string experiment;
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    double elapsed_s = 0.0;

    // |measured - reference| <= tol
    void check_abs(const std::string& quantity, double measured, double reference,
                   double tol, const std::string& note) {
        Verdict v = std::abs(measured - reference) <= tol ? Verdict::Pass : Verdict::Fail;
        rows.push_back({quantity, measured, reference, note, v});
    }
    // |measured - reference| <= tol * |reference|
    void check_rel(const std::string& quantity, double measured, double reference,
                   double tol, const std::string& note) {
        Verdict v = std::abs(measured - reference) <= tol * std::abs(reference)
                        ? Verdict::Pass
                        : Verdict::Fail;
        rows.push_back({quantity, measured, reference, note, v});
    }
    void check_le(const std::string& quantity, double measured, double limit,
                  const std::string& note) {
        rows.push_back({quantity, measured, limit, note,
                        measured <= limit ? Verdict::Pass : Verdict::Fail});
    }
    void check_ge(const std::string& quantity, double measured, double limit,
                  const std::string& note) {
        rows.push_back({quantity, measured, limit, note,
                        measured >= limit ? Verdict::Pass : Verdict::Fail});
    }
    void check_true(const std::string& quantity, bool ok, const std::string& note) {
        rows.push_back({quantity, ok ? 1.0 : 0.0, 1.0, note,
                        ok ? Verdict::Pass : Verdict::Fail});
    }
    void info(const std::string& quantity, double measured, double reference,
              const std::string& note) {
        rows.push_back({quantity, measured, reference, note, Verdict::ReportOnly});
    }

    bool all_pass() const {
        for (const auto& r : rows)
            if (r.verdict == Verdict::Fail) return false;
        return true;
    }
};

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    nlohmann::ordered_json cfg;
    cfg["extent"] = r.config.extent;
    cfg["grid"] = r.config.grid;
    cfg["seed"] = r.config.seed;
    cfg["format"] = r.config.format;
    nlohmann::ordered_json tols(nlohmann::ordered_json::value_t::object);
    for (const auto& [k, v] : r.config.tolerances) tols[k] = v;
    cfg["tolerances"] = tols;
    nlohmann::ordered_json pars(nlohmann::ordered_json::value_t::object);
    for (const auto& [k, v] : r.config.params) pars[k] = v;
    cfg["params"] = pars;
    j["config"] = cfg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json jr;
        jr["quantity"] = row.quantity;
        jr["measured"] = row.measured;
        jr["reference"] = row.reference;
        jr["note"] = row.note;
        jr["verdict"] = verdict_name(row.verdict);
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["elapsed_s"] = r.elapsed_s;
    return j;
}

inline std::string report_to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "quantity,measured,reference,verdict\n";
    for (const auto& row : r.rows)
        os << row.quantity << "," << format_double(row.measured) << ","
           << format_double(row.reference) << "," << verdict_name(row.verdict) << "\n";
    return os.str();
}

// returns false on I/O failure
inline bool emit_report(const ExperimentReport& r, const std::string& path,
                        const std::string& format) {
    std::ofstream out(path);
    if (!out) return false;
    if (format == "csv") {
        out << report_to_csv(r);
    } else {
        out << report_to_json(r).dump(2) << "\n";
    }
    return static_cast<bool>(out);
}

}  // namespace abt

// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_REPORT_HPP
#define ECM_REPORT_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecm/errors.hpp"
#include "ecm/version.hpp"

namespace ecm::cli {

using nlohmann::json;

/// One verification record. Threshold-exceeded quantities are stored as
/// residuals so that pass always means max_abs_residual <= tolerance;
/// ratio-type criteria ("at least X") are recorded through reciprocals.
struct CheckRecord {
    std::string name;
    double max_abs_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    json details;  // optional extra fields

    json to_json() const {
        json j{{"name", name},
               {"max_abs_residual", max_abs_residual},
               {"tolerance", tolerance},
               {"pass", pass}};
        if (!details.is_null()) j["details"] = details;
        return j;
    }
};

/// Verification report: config echo, per-check records, overall verdict.
/// Emitted even when checks fail; the exit code reflects the verdict.
struct Report {
    std::string command;
    json config;
    std::vector<CheckRecord> checks;
    double wall_time_seconds = 0.0;

    CheckRecord& add(const std::string& name, double residual, double tolerance) {
        checks.push_back({name, residual, tolerance, residual <= tolerance, json()});
        return checks.back();
    }

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& c : checks) arr.push_back(c.to_json());
        return json{{"schema", "ecmlab-report/1"},
                    {"command", command},
                    {"artifact_version", ecm::version},
                    {"config", config},
                    {"checks", arr},
                    {"pass", pass()},
                    {"wall_time_seconds", wall_time_seconds}};
    }
};

/// Minimal CSV emitter: a schema comment line, a header row, then rows.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw config_error("cannot open CSV output file " + path);
        out_ << "# schema: ecmlab-csv/1\n";
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
        out_.precision(17);
    }

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((out_ << (first ? "" : ",") << fields, first = false), ...);
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

}  // namespace ecm::cli

#endif  // ECM_REPORT_HPP

// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Strict configuration reading: every key must be known and well-typed,
// complex numbers are two-element [re, im] arrays, and errors carry the
// full key path.

#ifndef ECM_CONFIG_HPP
#define ECM_CONFIG_HPP

#include <complex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecm/errors.hpp"

namespace ecm::cli {

using nlohmann::json;

/// Typed, path-tracking view of one configuration object. Keys are marked
/// as they are read; finish() rejects anything left over.
class ConfigReader {
  public:
    ConfigReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw config_error(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        mark(key);
        if (!j_.contains(key)) throw config_error(path_ + "." + key + ": missing required key");
        return j_.at(key);
    }

    long long integer(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number_integer())
            throw config_error(path_ + "." + key + ": expected an integer");
        return v.get<long long>();
    }

    long long integer_or(const std::string& key, long long fallback) {
        return has(key) ? integer(key) : fallback;
    }

    double number(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number()) throw config_error(path_ + "." + key + ": expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw config_error(path_ + "." + key + ": expected a boolean");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) throw config_error(path_ + "." + key + ": expected a string");
        return v.get<std::string>();
    }

    std::complex<double> complex_value(const std::string& key) {
        return parse_complex(raw(key), path_ + "." + key);
    }

    std::complex<double> complex_or(const std::string& key, std::complex<double> fallback) {
        return has(key) ? complex_value(key) : fallback;
    }

    std::vector<std::complex<double>> complex_array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw config_error(path_ + "." + key + ": expected an array");
        std::vector<std::complex<double>> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(parse_complex(v[i], path_ + "." + key + "[" + std::to_string(i) + "]"));
        return out;
    }

    std::vector<std::string> string_array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw config_error(path_ + "." + key + ": expected an array");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string())
                throw config_error(path_ + "." + key + "[" + std::to_string(i) +
                                   "]: expected a string");
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    std::vector<double> number_array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw config_error(path_ + "." + key + ": expected an array");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw config_error(path_ + "." + key + "[" + std::to_string(i) +
                                   "]: expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    ConfigReader object(const std::string& key) {
        return ConfigReader(raw(key), path_ + "." + key);
    }

    /// Every present key must have been consumed by a getter.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw config_error(path_ + "." + it.key() + ": unknown key");
    }

    static std::complex<double> parse_complex(const json& v, const std::string& path) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw config_error(path + ": complex numbers are two-element [re, im] arrays");
        return {v[0].get<double>(), v[1].get<double>()};
    }

  private:
    void mark(const std::string& key) { seen_.insert(key); }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace ecm::cli

#endif  // ECM_CONFIG_HPP

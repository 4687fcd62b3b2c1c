#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosegas/cli/table.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/potentials/potential.hpp"

namespace bosegas {

// Flat record of everything a subcommand run depends on. canonical() turns
// it into one deterministic line so output headers can carry a config hash.
struct RunConfig {
    std::string subcommand;
    std::string potential_path;
    std::string out_path;
    double rtilde = -1.0;          // scatter: optional variational comparison scale
    double s = 0.05;               // localize: bump width
    double ell = 1.0;              // localize: box scale
    std::string pgrid = "0:40:81"; // localize: axis momentum grid lo:hi:n
    double A = 2.0;                // bog
    double B = 1.0;                // bog
    double kappa = 0.0;            // bog
    int nmax = 40;                 // bog
    std::vector<double> rho_a3;    // lhy: dilution parameters
    double rho = 1e-6;             // energy
    double C = 1.0;                // energy
    std::string filter;            // verify
    unsigned long seed = 20240611; // randomized checks; recorded in outputs
    double c_kin = -1.0;           // verify: kinetic cutoff override, < 0 = default

    std::string canonical() const {
        std::string out = "subcommand=" + subcommand + ";potential=" + potential_path +
                          ";out=" + out_path + ";rtilde=" + format_full(rtilde) +
                          ";s=" + format_full(s) + ";ell=" + format_full(ell) +
                          ";pgrid=" + pgrid + ";A=" + format_full(A) + ";B=" + format_full(B) +
                          ";kappa=" + format_full(kappa) + ";nmax=" + std::to_string(nmax) +
                          ";rho_a3=";
        for (std::size_t i = 0; i < rho_a3.size(); ++i)
            out += (i ? "," : "") + format_full(rho_a3[i]);
        out += ";rho=" + format_full(rho) + ";C=" + format_full(C) + ";filter=" + filter +
               ";seed=" + std::to_string(seed) + ";c_kin=" + format_full(c_kin);
        return out;
    }
};

namespace detail {

inline RadialPotential potential_from_json(const nlohmann::json& j, const std::string& where);

inline double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + ": missing key '" + key + "'");
    if (!j.at(key).is_number())
        throw ConfigError(where + ": key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::vector<double> require_array(const nlohmann::json& j, const char* key,
                                         const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + ": missing key '" + key + "'");
    if (!j.at(key).is_array())
        throw ConfigError(where + ": key '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : j.at(key)) {
        if (!e.is_number())
            throw ConfigError(where + ": key '" + key + "' must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

inline RadialPotential potential_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + ": potential must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError(where + ": missing string key 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "hard_core") {
            reject_unknown_keys(j, {"kind", "core_radius"}, where);
            return RadialPotential::hard_core(require_number(j, "core_radius", where));
        }
        if (kind == "square_well") {
            reject_unknown_keys(j, {"kind", "v0", "range"}, where);
            return RadialPotential::square_well(require_number(j, "v0", where),
                                                require_number(j, "range", where));
        }
        if (kind == "piecewise_constant") {
            reject_unknown_keys(j, {"kind", "breakpoints", "values"}, where);
            return RadialPotential::piecewise_constant(require_array(j, "breakpoints", where),
                                                       require_array(j, "values", where));
        }
        if (kind == "tabulated") {
            reject_unknown_keys(j, {"kind", "grid", "samples"}, where);
            return RadialPotential::tabulated(require_array(j, "grid", where),
                                              require_array(j, "samples", where));
        }
        if (kind == "sum") {
            reject_unknown_keys(j, {"kind", "parts"}, where);
            if (!j.contains("parts") || !j.at("parts").is_array())
                throw ConfigError(where + ": key 'parts' must be an array");
            std::vector<RadialPotential> parts;
            for (const auto& p : j.at("parts"))
                parts.push_back(potential_from_json(p, where));
            return RadialPotential::sum(std::move(parts));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        // factory rejected the numbers; surface it as a config problem
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": unknown potential kind '" + kind + "'");
}

} // namespace detail

// Potential file loader: strict JSON with unknown keys rejected and parse
// failures reported with a line number.
inline RadialPotential load_potential(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("load_potential: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t stop = e.byte < text.size() ? e.byte : text.size();
        for (std::size_t i = 0; i < stop; ++i)
            if (text[i] == '\n')
                ++line;
        throw ConfigError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    return detail::potential_from_json(j, path);
}

} // namespace bosegas

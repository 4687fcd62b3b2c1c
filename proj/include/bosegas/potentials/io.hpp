#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bosegas/errors.hpp"
#include "bosegas/potentials/potential.hpp"

namespace bosegas {

// File schema: one JSON object with exactly the keys kind, params, range.
//   kind   "hard_core" | "square_well" | "piecewise_constant" | "tabulated" | "sum"
//   params kind-specific, see below
//   range  redundant copy of the support radius, validated on load
// Numbers round-trip losslessly (shortest-representation printing).

inline nlohmann::json potential_to_json(const RadialPotential& v) {
    using Kind = RadialPotential::Kind;
    nlohmann::json j;
    switch (v.kind()) {
    case Kind::hard_core:
        j["kind"] = "hard_core";
        j["params"] = {{"r_core", v.core_radius()}};
        break;
    case Kind::square_well: {
        if (v.raw_params().size() != 2)
            throw IoError("potential_to_json: square well parameters missing");
        j["kind"] = "square_well";
        j["params"] = {{"V0", v.raw_params()[0]}, {"R", v.raw_params()[1]}};
        break;
    }
    case Kind::piecewise_constant:
        j["kind"] = "piecewise_constant";
        j["params"] = {{"breakpoints", v.raw_grid()}, {"values", v.raw_params()}};
        break;
    case Kind::tabulated:
        j["kind"] = "tabulated";
        j["params"] = {{"grid", v.raw_grid()}, {"samples", v.raw_params()}};
        break;
    case Kind::sum: {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& q : v.parts())
            parts.push_back(potential_to_json(q));
        j["kind"] = "sum";
        j["params"] = {{"parts", parts}};
        break;
    }
    }
    j["range"] = v.range();
    return j;
}

inline RadialPotential potential_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("potential: expected a JSON object");
    for (const auto& item : j.items())
        if (item.key() != "kind" && item.key() != "params" && item.key() != "range")
            throw ConfigError("potential: unknown key '" + item.key() + "'");
    if (!j.contains("kind") || !j.contains("params") || !j.contains("range"))
        throw ConfigError("potential: keys kind, params, range are required");

    const std::string kind = j.at("kind").get<std::string>();
    const auto& p = j.at("params");
    RadialPotential v = [&]() -> RadialPotential {
        try {
            if (kind == "hard_core")
                return RadialPotential::hard_core(p.at("r_core").get<double>());
            if (kind == "square_well")
                return RadialPotential::square_well(p.at("V0").get<double>(),
                                                    p.at("R").get<double>());
            if (kind == "piecewise_constant")
                return RadialPotential::piecewise_constant(
                    p.at("breakpoints").get<std::vector<double>>(),
                    p.at("values").get<std::vector<double>>());
            if (kind == "tabulated")
                return RadialPotential::tabulated(p.at("grid").get<std::vector<double>>(),
                                                  p.at("samples").get<std::vector<double>>());
            if (kind == "sum") {
                std::vector<RadialPotential> parts;
                for (const auto& q : p.at("parts"))
                    parts.push_back(potential_from_json(q));
                return RadialPotential::sum(std::move(parts));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("potential: bad params: ") + e.what());
        } catch (const Error& e) {
            throw ConfigError(std::string("potential: ") + e.what());
        }
        throw ConfigError("potential: unknown kind '" + kind + "'");
    }();

    const double declared = j.at("range").get<double>();
    if (std::fabs(declared - v.range()) > 1e-12 * (1.0 + v.range()))
        throw ConfigError("potential: declared range disagrees with parameters");
    return v;
}

inline RadialPotential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open potential file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("potential file " + path + ": " + e.what());
    }
    return potential_from_json(j);
}

inline void save_potential(const RadialPotential& v, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write potential file: " + path);
    out << potential_to_json(v).dump(2) << "\n";
}

} // namespace bosegas

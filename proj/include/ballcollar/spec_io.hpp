#pragma once

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ballcollar/geometry.hpp"
#include "ballcollar/group.hpp"

// Group description files: JSON with a dimension, generator pairs given by
// disk centers (radii implied by orthogonality to the unit sphere), and
// optional labels.  See README.md for the format.

namespace ballcollar {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroupSpecFile {
    int dimension = 0;
    std::vector<SpherePair> pairs;
    std::vector<std::string> labels;    // one per pair; defaults g1, g2, ...
    std::vector<std::string> warnings;  // non-fatal oddities found while parsing
};

namespace detail {

inline Vec read_center(const nlohmann::json& node, int dimension, const std::string& path) {
    if (!node.is_array())
        throw SpecError(path + " must be an array of numbers");
    if (static_cast<int>(node.size()) != dimension)
        throw SpecError(path + " must have exactly `dimension` entries");
    Vec c;
    c.reserve(node.size());
    for (const auto& el : node) {
        if (!el.is_number()) throw SpecError(path + " must contain only numbers");
        c.push_back(el.get<double>());
    }
    return c;
}

// The radius of a boundary-orthogonal sphere is determined by its center;
// a stated radius is cross-checked, never trusted.
inline InversionSphere read_sphere(const nlohmann::json& node, int dimension,
                                   const std::string& path, std::vector<std::string>& warnings) {
    if (!node.is_object()) throw SpecError(path + " must be an object");
    if (!node.contains("center")) throw SpecError(path + ".center is required");
    Vec c = read_center(node.at("center"), dimension, path + ".center");
    double m2 = norm_sq(c);
    if (m2 <= 1.0)
        throw SpecError(path + ".center must lie strictly outside the closed unit ball");
    double r = std::sqrt(m2 - 1.0);
    if (node.contains("radius")) {
        const auto& rn = node.at("radius");
        if (!rn.is_number()) throw SpecError(path + ".radius must be a number");
        double given = rn.get<double>();
        if (!(given > 0.0)) throw SpecError(path + ".radius must be positive");
        if (std::abs(m2 - 1.0 - given * given) > tol_norm)
            warnings.push_back(path + ".radius " + std::to_string(given) +
                               " is not orthogonal to the unit sphere; using " +
                               std::to_string(r) + " derived from the center");
    }
    return InversionSphere(std::move(c), r, true);
}

}  // namespace detail

inline GroupSpecFile parse_group_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw SpecError("top level must be an object");
    GroupSpecFile spec;

    if (!j.contains("dimension")) throw SpecError("dimension is required");
    if (!j.at("dimension").is_number_integer())
        throw SpecError("dimension must be an integer");
    spec.dimension = j.at("dimension").get<int>();
    if (spec.dimension < 2) throw SpecError("dimension must be >= 2");

    if (!j.contains("pairs") || !j.at("pairs").is_array() || j.at("pairs").empty())
        throw SpecError("pairs must be a nonempty array");
    const auto& pairs = j.at("pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string path = "pairs[" + std::to_string(i) + "]";
        const auto& p = pairs.at(i);
        if (!p.is_object()) throw SpecError(path + " must be an object");
        if (!p.contains("sphere") || !p.contains("paired"))
            throw SpecError(path + " must have `sphere` and `paired`");
        InversionSphere source =
            detail::read_sphere(p.at("sphere"), spec.dimension, path + ".sphere", spec.warnings);
        InversionSphere target =
            detail::read_sphere(p.at("paired"), spec.dimension, path + ".paired", spec.warnings);
        spec.pairs.push_back(SpherePair{std::move(source), std::move(target)});
    }

    if (j.contains("labels")) {
        const auto& labels = j.at("labels");
        if (!labels.is_array()) throw SpecError("labels must be an array of strings");
        if (labels.size() != spec.pairs.size())
            throw SpecError("labels must have one entry per pair");
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels.at(i).is_string())
                throw SpecError("labels[" + std::to_string(i) + "] must be a string");
            spec.labels.push_back(labels.at(i).get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < spec.pairs.size(); ++i)
            spec.labels.push_back("g" + std::to_string(i + 1));
    }
    return spec;
}

inline GroupSpecFile load_group_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(path + ": invalid JSON: " + e.what());
    }
    return parse_group_spec(j);
}

// Throws std::domain_error (from validation) when the disks fail ping-pong.
inline SchottkyGroup make_group(const GroupSpecFile& spec) {
    return SchottkyGroup(spec.pairs);
}

}  // namespace ballcollar

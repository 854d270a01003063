#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ballcollar/geometry.hpp"
#include "ballcollar/group.hpp"
#include "ballcollar/isometry.hpp"

namespace support {

using namespace ballcollar;

// Reference group: two pairs on the coordinate axes, orthogonal radii sqrt(0.44).
inline SchottkyGroup make_gstar() {
    std::vector<SpherePair> pairs;
    pairs.push_back({make_boundary_orthogonal_sphere({1.2, 0.0}),
                     make_boundary_orthogonal_sphere({-1.2, 0.0})});
    pairs.push_back({make_boundary_orthogonal_sphere({0.0, 1.2}),
                     make_boundary_orthogonal_sphere({0.0, -1.2})});
    return SchottkyGroup(std::move(pairs));
}

inline SchottkyGroup make_cyclic() {
    std::vector<SpherePair> pairs;
    pairs.push_back({make_boundary_orthogonal_sphere({1.2, 0.0}),
                     make_boundary_orthogonal_sphere({-1.2, 0.0})});
    return SchottkyGroup(std::move(pairs));
}

// Nearly tangent disks at 80/100 degree spacings.  The level-1 tail bound
// exceeds the generator radius here, so the radius supremum is not certified
// until the enumeration deepens on its own.
inline SchottkyGroup make_crowded() {
    auto at = [](double degrees) {
        double t = degrees * 3.14159265358979323846 / 180.0;
        return make_boundary_orthogonal_sphere({1.29 * std::cos(t), 1.29 * std::sin(t)});
    };
    std::vector<SpherePair> pairs;
    pairs.push_back({at(0.0), at(180.0)});
    pairs.push_back({at(80.0), at(260.0)});
    return SchottkyGroup(std::move(pairs));
}

inline SchottkyGroup make_gstar_3d() {
    std::vector<SpherePair> pairs;
    pairs.push_back({make_boundary_orthogonal_sphere({1.2, 0.0, 0.0}),
                     make_boundary_orthogonal_sphere({-1.2, 0.0, 0.0})});
    pairs.push_back({make_boundary_orthogonal_sphere({0.0, 1.2, 0.0}),
                     make_boundary_orthogonal_sphere({0.0, -1.2, 0.0})});
    return SchottkyGroup(std::move(pairs));
}

inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in the closed ball of the given Euclidean radius.
inline Vec sample_ball(std::mt19937_64& rng, int dim, double radius) {
    for (;;) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = 2.0 * unit_uniform(rng) - 1.0;
        if (norm_sq(v) <= 1.0) return scaled(v, radius);
    }
}

// Random reduced word of exactly the given length.
inline Word sample_word(std::mt19937_64& rng, int rank, int length) {
    std::vector<int> letters;
    for (int i = 0; i < length; ++i) {
        for (;;) {
            int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rank));
            int s = (rng() & 1) ? k : -k;
            if (!letters.empty() && letters.back() == -s) continue;
            letters.push_back(s);
            break;
        }
    }
    return Word(std::move(letters));
}

// Applies a word through the raw pairing-sphere reflections, bypassing the
// canonical decomposition entirely.  Independent oracle for isometry actions.
inline Vec apply_word_raw(const SchottkyGroup& g, const Word& w, Vec x) {
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        x = reflect_in_sphere(g.source_disk(*it), x);
        x = reflect_in_sphere(g.target_disk(*it), x);
    }
    return x;
}

}  // namespace support

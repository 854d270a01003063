#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballcollar/geometry.hpp"
#include "ballcollar/vec.hpp"

// Deterministic SVG pictures of planar scenes: the unit disk with pairing
// disks, cover disks, isometric circles, orbit points, and a certified
// collar.  Output is byte-stable: fixed element order, %.6f coordinates.

namespace ballcollar {

struct CollarMark {
    Vec center;  // boundary anchor
    double rho = 0.0;
};

struct Scene {
    std::vector<InversionSphere> pairing_disks;
    std::vector<std::pair<int, InversionSphere>> cover_disks;  // (level, disk)
    std::vector<InversionSphere> isometric_circles;
    std::vector<Vec> orbit_points;
    std::optional<CollarMark> collar;
};

namespace detail {

inline std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Disk model coordinates to viewport: unit circle of radius 450 centered in a
// 1000 x 1000 box, y pointing up.
inline double svg_x(double x) { return 500.0 + 450.0 * x; }
inline double svg_y(double y) { return 500.0 - 450.0 * y; }

inline void append_circle(std::string& out, const char* cls, double cx, double cy, double r) {
    out += "<circle class=\"";
    out += cls;
    out += "\" cx=\"" + fmt6(svg_x(cx)) + "\" cy=\"" + fmt6(svg_y(cy)) + "\" r=\"" +
           fmt6(450.0 * r) + "\"/>\n";
}

inline void check_planar(int dim) {
    if (dim != 2) throw std::domain_error("SVG rendering is only available in dimension 2");
}

}  // namespace detail

inline std::string render_svg(const Scene& scene) {
    for (const auto& d : scene.pairing_disks) detail::check_planar(d.dim());
    for (const auto& d : scene.cover_disks) detail::check_planar(d.second.dim());
    for (const auto& d : scene.isometric_circles) detail::check_planar(d.dim());
    for (const auto& p : scene.orbit_points) detail::check_planar(static_cast<int>(p.size()));
    if (scene.collar) detail::check_planar(static_cast<int>(scene.collar->center.size()));

    std::string out;
    out +=
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    out += "<style>\n";
    out += ".unit { fill: none; stroke: #222222; stroke-width: 2; }\n";
    out += ".pairing { fill: #dbe9f6; fill-opacity: 0.5; stroke: #3366aa; stroke-width: 1.5; }\n";
    out += ".cover { fill: none; stroke: #aa3333; stroke-width: 1; }\n";
    out += ".iso { fill: none; stroke: #338833; stroke-width: 1; stroke-dasharray: 4 3; }\n";
    out += ".orbit { fill: #111111; }\n";
    out += ".collar { fill: #f6d9a0; fill-opacity: 0.6; stroke: #aa7711; stroke-width: 1.5; }\n";
    out += ".collararc { fill: none; stroke: #aa7711; stroke-width: 4; }\n";
    out += "</style>\n";

    detail::append_circle(out, "unit", 0.0, 0.0, 1.0);

    for (const auto& d : scene.pairing_disks)
        detail::append_circle(out, "pairing", d.center[0], d.center[1], d.radius);

    // Cover disks grouped by level, shallow first; stable within a level.
    int max_level = 0;
    for (const auto& d : scene.cover_disks) max_level = std::max(max_level, d.first);
    for (int lvl = 0; lvl <= max_level; ++lvl)
        for (const auto& d : scene.cover_disks)
            if (d.first == lvl)
                detail::append_circle(out, "cover", d.second.center[0], d.second.center[1],
                                      d.second.radius);

    for (const auto& d : scene.isometric_circles)
        detail::append_circle(out, "iso", d.center[0], d.center[1], d.radius);

    for (const auto& p : scene.orbit_points) {
        out += "<circle class=\"orbit\" cx=\"" + detail::fmt6(detail::svg_x(p[0])) + "\" cy=\"" +
               detail::fmt6(detail::svg_y(p[1])) + "\" r=\"2\"/>\n";
    }

    if (scene.collar) {
        const CollarMark& c = *scene.collar;
        if (!(c.rho > 0.0) || c.rho > 2.0)
            throw std::invalid_argument("collar radius out of range for rendering");
        detail::append_circle(out, "collar", c.center[0], c.center[1], c.rho);
        // Boundary points within rho of the anchor: chord 2 sin(h/2) <= rho,
        // an arc of half-width 2 asin(rho/2) around the anchor angle.
        double theta = std::atan2(c.center[1], c.center[0]);
        double half = 2.0 * std::asin(c.rho / 2.0);
        double a1 = theta - half;
        double a2 = theta + half;
        out += "<path class=\"collararc\" d=\"M " + detail::fmt6(detail::svg_x(std::cos(a1))) +
               " " + detail::fmt6(detail::svg_y(std::sin(a1))) + " A 450 450 0 0 0 " +
               detail::fmt6(detail::svg_x(std::cos(a2))) + " " +
               detail::fmt6(detail::svg_y(std::sin(a2))) + "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace ballcollar

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballcollar/certify.hpp"
#include "ballcollar/geometry.hpp"
#include "ballcollar/group.hpp"
#include "ballcollar/isometry.hpp"
#include "ballcollar/spec_io.hpp"
#include "ballcollar/svg.hpp"

// Command-line front end.  Exit codes: 0 success / certificate issued /
// certified, 1 domain refusal (invalid group, refused certificate,
// uncertified distance, unrenderable dimension), 2 usage or input-format
// errors.

namespace ballcollar {
namespace cli {

namespace detail {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Vec parse_coords(const std::string& s, int dim, const std::string& what) {
    Vec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            double x = std::stod(tok, &used);
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
                ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
            v.push_back(x);
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": cannot parse coordinate `" + tok + "`");
        }
    }
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument(what + " needs " + std::to_string(dim) +
                                    " comma-separated coordinates");
    return v;
}

// Anchors are directions: project the given coordinates radially onto the
// unit sphere, warning when that actually moves them.
inline Point normalize_anchor(const Vec& v, std::ostream& err) {
    double n = norm(v);
    if (n <= tol_center) throw std::invalid_argument("anchor direction cannot be zero");
    if (std::abs(n - 1.0) > tol_norm)
        err << "note: anchor norm " << fmt17(n) << " projected radially onto the boundary\n";
    return Point::boundary(v);
}

inline bool write_text_file(const std::string& path, const std::string& content,
                            std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    f << content;
    f.close();
    if (!f) {
        err << "error: failed writing " << path << "\n";
        return false;
    }
    return true;
}

inline void emit(const std::string& content, const std::string& out_path, std::ostream& out,
                 std::ostream& err, int& status) {
    if (out_path.empty()) {
        out << content;
    } else if (!write_text_file(out_path, content, err)) {
        status = 1;
    }
}

struct Loaded {
    GroupSpecFile spec;
    SchottkyGroup group;
};

inline Loaded load(const std::string& path, std::ostream& err) {
    GroupSpecFile spec = load_group_spec(path);
    for (const auto& w : spec.warnings) err << "warning: " << w << "\n";
    SchottkyGroup g = make_group(spec);
    return Loaded{std::move(spec), std::move(g)};
}

inline std::string orbit_csv(const SchottkyGroup& g, int maxlen, const Point& base) {
    std::string csv = "word";
    for (int i = 1; i <= g.dim(); ++i) csv += ",x" + std::to_string(i);
    csv += ",orbit_norm,isometric_radius\n";
    Vec origin = zero_vec(g.dim());
    for (const Isometry& el : enumerate_elements(g, maxlen)) {
        csv += el.word().str();
        for (double c : el.apply(base.coords())) csv += "," + fmt17(c);
        csv += "," + fmt17(norm(el.apply(origin)));
        csv += ",";
        if (!el.is_rotation_only()) csv += fmt17(el.isometric_sphere().radius);
        csv += "\n";
    }
    return csv;
}

inline std::string limitset_csv(const SchottkyGroup& g, int level) {
    DiskCover cover = disk_cover(g, level);
    std::string csv = "kind";
    for (int i = 1; i <= g.dim(); ++i) csv += ",x" + std::to_string(i);
    csv += ",radius\n";
    for (const auto& entry : cover.disks) {
        Point dir = Point::boundary(entry.second.center);
        csv += "sample";
        for (double c : dir.coords()) csv += "," + fmt17(c);
        csv += "," + fmt17(entry.second.radius) + "\n";
    }
    for (const auto& entry : cover.disks) {
        csv += "disk";
        for (double c : entry.second.center) csv += "," + fmt17(c);
        csv += "," + fmt17(entry.second.radius) + "\n";
    }
    return csv;
}

inline void print_constants(const CertifiedNeighborhood& cert, std::ostream& out) {
    out << "r_pi = " << fmt17(cert.r_pi) << "\n";
    out << "rho0 = " << fmt17(cert.rho0) << " (r_pi / 4)\n";
    out << "sup_radius = " << fmt17(cert.sup.value) << " (word " << cert.sup.attained.str()
        << ", level " << cert.sup.level << ", tail bound " << fmt17(cert.sup.tail_radius)
        << ", certified)\n";
    out << "delta = " << fmt17(cert.delta) << " (enumerated "
        << fmt17(cert.lipschitz.delta_enumerated) << ", cover "
        << fmt17(cert.lipschitz.delta_cover) << ")\n";
    out << "c_prime = " << fmt17(cert.c_prime) << "\n";
    out << "c_good = " << fmt17(cert.c_good) << "\n";
    out << "rho = " << fmt17(cert.rho) << "\n";
}

inline nlohmann::ordered_json certificate_json(const SchottkyGroup& g,
                                               const CertifiedNeighborhood& cert) {
    nlohmann::ordered_json j;
    j["anchor"] = cert.center.coords();
    j["rho"] = cert.rho;
    j["r_pi"] = cert.r_pi;
    j["rho0"] = cert.rho0;
    j["c_prime"] = cert.c_prime;
    j["c_good"] = cert.c_good;
    j["delta"] = cert.delta;
    j["sup_radius"] = {{"value", cert.sup.value},
                       {"word", cert.sup.attained.str()},
                       {"level", cert.sup.level},
                       {"tail_radius", cert.sup.tail_radius},
                       {"certified", cert.sup.certified}};
    j["lipschitz"] = {{"delta", cert.lipschitz.delta},
                      {"delta_enumerated", cert.lipschitz.delta_enumerated},
                      {"delta_cover", cert.lipschitz.delta_cover},
                      {"c_prime", cert.lipschitz.c_prime}};
    j["truncation_level"] = cert.truncation_level;
    j["group"] = {{"dimension", g.dim()}, {"pairs", g.rank()}, {"min_gap", g.min_gap()}};
    j["notes"] = cert.notes;
    return j;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified collar toolkit for Schottky groups on the hyperbolic ball"};
    app.name("ballcollar");
    app.require_subcommand(1);

    std::string spec_path, point_str, base_str, x_str, y_str, out_path, collar_str;
    int level = 6;
    int maxlen = 4;
    int orbit_len = 0, iso_len = 0, cover_level = 0;
    bool no_disks = false;
    std::size_t verify_n = 0;
    std::uint64_t seed = 0;

    CLI::App* c_validate = app.add_subcommand("validate", "check a group description file");
    c_validate->add_option("--spec", spec_path, "group description (JSON)")->required();

    CLI::App* c_orbit = app.add_subcommand("orbit", "enumerate an orbit as CSV");
    c_orbit->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_orbit->add_option("--max-word-length", maxlen, "enumerate reduced words up to this length")
        ->capture_default_str();
    c_orbit->add_option("--base", base_str, "base point x1,..,xn (default: the origin)");
    c_orbit->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App* c_limit = app.add_subcommand("limitset", "sample the limit set as CSV");
    c_limit->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_limit->add_option("--level", level, "disk-cover level")->capture_default_str();
    c_limit->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App* c_const = app.add_subcommand("constants", "print the certified constants");
    c_const->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_const->add_option("--point", point_str, "boundary anchor x1,..,xn")->required();
    c_const->add_option("--level", level, "enumeration level")->capture_default_str();

    CLI::App* c_cert = app.add_subcommand("certify", "issue a certified collar");
    c_cert->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_cert->add_option("--point", point_str, "boundary anchor x1,..,xn")->required();
    c_cert->add_option("--level", level, "enumeration level")->capture_default_str();
    c_cert->add_option("--out", out_path, "write the JSON certificate here");
    c_cert->add_option("--verify", verify_n, "check N sampled pairs on the issued collar")
        ->capture_default_str();
    c_cert->add_option("--seed", seed, "seed for --verify sampling")->capture_default_str();

    CLI::App* c_dist = app.add_subcommand("dist", "certified quotient distance");
    c_dist->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_dist->add_option("--x", x_str, "first interior point x1,..,xn")->required();
    c_dist->add_option("--y", y_str, "second interior point x1,..,xn")->required();
    c_dist->add_option("--level", level, "truncation level")->capture_default_str();

    CLI::App* c_render = app.add_subcommand("render", "draw a planar scene as SVG");
    c_render->add_option("--spec", spec_path, "group description (JSON)")->required();
    c_render->add_option("--out", out_path, "output SVG path")->required();
    c_render->add_flag("--no-disks", no_disks, "omit the pairing disks");
    c_render->add_option("--orbit", orbit_len, "plot orbit points for words up to this length");
    c_render->add_option("--isocircles", iso_len,
                         "plot isometric circles for words up to this length");
    c_render->add_option("--cover", cover_level, "plot disk covers up to this level");
    c_render->add_option("--collar", collar_str, "certify and shade a collar at this anchor");
    c_render->add_option("--level", level, "enumeration level for --collar")
        ->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    int status = 0;
    try {
        if (*c_validate) {
            GroupSpecFile spec = load_group_spec(spec_path);
            for (const auto& w : spec.warnings) err << "warning: " << w << "\n";
            ValidationReport rep = validate_schottky(spec.pairs);
            out << "dimension: " << rep.dimension << "\n";
            out << "pairs: " << rep.pair_count << "\n";
            out << "min_gap: " << detail::fmt17(rep.min_gap) << "\n";
            out << "valid: " << (rep.valid ? "yes" : "no") << "\n";
            for (const auto& f : rep.failures) out << "  - " << f << "\n";
            return rep.valid ? 0 : 1;
        }

        if (*c_orbit) {
            detail::Loaded l = detail::load(spec_path, err);
            Point base = base_str.empty()
                             ? Point::origin(l.group.dim())
                             : Point(detail::parse_coords(base_str, l.group.dim(), "--base"));
            detail::emit(detail::orbit_csv(l.group, maxlen, base), out_path, out, err, status);
            return status;
        }

        if (*c_limit) {
            detail::Loaded l = detail::load(spec_path, err);
            detail::emit(detail::limitset_csv(l.group, level), out_path, out, err, status);
            return status;
        }

        if (*c_const) {
            detail::Loaded l = detail::load(spec_path, err);
            Point a = detail::normalize_anchor(
                detail::parse_coords(point_str, l.group.dim(), "--point"), err);
            CertifiedNeighborhood cert = certified_neighborhood(l.group, a, level);
            detail::print_constants(cert, out);
            return 0;
        }

        if (*c_cert) {
            detail::Loaded l = detail::load(spec_path, err);
            Point a = detail::normalize_anchor(
                detail::parse_coords(point_str, l.group.dim(), "--point"), err);
            CertifiedNeighborhood cert = certified_neighborhood(l.group, a, level);
            out << "certified collar at (";
            for (int i = 0; i < l.group.dim(); ++i)
                out << (i ? ", " : "") << detail::fmt17(cert.center.coords()[i]);
            out << ")\n";
            detail::print_constants(cert, out);
            for (const auto& n : cert.notes) out << "note: " << n << "\n";

            nlohmann::ordered_json j = detail::certificate_json(l.group, cert);
            if (verify_n > 0) {
                VerifyReport rep = verify_isometry_on(l.group, cert, verify_n, seed);
                out << "verify: " << rep.failures.size() << " failures in " << rep.samples
                    << " samples (seed " << seed << ")\n";
                if (rep.passed) {
                    out << "verify: max |quotient - direct| = "
                        << detail::fmt17(rep.max_deviation)
                        << ", min tail margin = " << detail::fmt17(rep.min_tail_margin) << "\n";
                } else {
                    for (std::size_t i = 0; i < rep.failures.size() && i < 5; ++i)
                        out << "verify failure [" << rep.failures[i].index
                            << "]: " << rep.failures[i].reason << "\n";
                }
                nlohmann::ordered_json v;
                v["samples"] = rep.samples;
                v["seed"] = seed;
                v["failures"] = rep.failures.size();
                v["passed"] = rep.passed;
                if (rep.passed) {
                    v["max_deviation"] = rep.max_deviation;
                    v["min_tail_margin"] = rep.min_tail_margin;
                }
                j["verification"] = v;
                if (!rep.passed) status = 1;
            }
            if (!out_path.empty() &&
                !detail::write_text_file(out_path, j.dump(2) + "\n", err))
                status = 1;
            if (status != 0) err << "refused: verification failed on the issued collar\n";
            return status;
        }

        if (*c_dist) {
            detail::Loaded l = detail::load(spec_path, err);
            Point x(detail::parse_coords(x_str, l.group.dim(), "--x"));
            Point y(detail::parse_coords(y_str, l.group.dim(), "--y"));
            QuotientContext ctx = make_quotient_context(l.group, level);
            QuotientDistanceResult res = quotient_distance(ctx, x, y);
            out << "value = " << detail::fmt17(res.value) << "\n";
            out << "minimizer = " << res.minimizer.str() << "\n";
            out << "tail_bound = " << detail::fmt17(res.tail_bound) << "\n";
            out << "certified = " << (res.certified ? "yes" : "no") << " (level " << res.level
                << ")\n";
            return res.certified ? 0 : 1;
        }

        if (*c_render) {
            detail::Loaded l = detail::load(spec_path, err);
            Scene scene;
            if (!no_disks)
                for (const auto& p : l.group.pairs()) {
                    scene.pairing_disks.push_back(p.source);
                    scene.pairing_disks.push_back(p.target);
                }
            for (int k = 1; k <= cover_level; ++k)
                for (const auto& entry : disk_cover(l.group, k).disks)
                    scene.cover_disks.emplace_back(k, entry.second);
            if (iso_len > 0)
                for (const Isometry& el : enumerate_elements(l.group, iso_len))
                    if (!el.is_rotation_only())
                        scene.isometric_circles.push_back(el.isometric_sphere());
            if (orbit_len > 0) {
                Vec origin = zero_vec(l.group.dim());
                for (const Isometry& el : enumerate_elements(l.group, orbit_len))
                    scene.orbit_points.push_back(el.apply(origin));
            }
            if (!collar_str.empty()) {
                Point a = detail::normalize_anchor(
                    detail::parse_coords(collar_str, l.group.dim(), "--collar"), err);
                CertifiedNeighborhood cert = certified_neighborhood(l.group, a, level);
                scene.collar = CollarMark{a.coords(), cert.rho};
            }
            std::string svg = render_svg(scene);
            if (!detail::write_text_file(out_path, svg, err)) return 1;
            return 0;
        }
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace cli
}  // namespace ballcollar

#pragma once

#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ballcollar/geometry.hpp"
#include "ballcollar/isometry.hpp"
#include "ballcollar/vec.hpp"

// Schottky groups given by pairs of disjoint boundary-orthogonal spheres, and
// the word-by-word enumeration machinery built on them.

namespace ballcollar {

struct SpherePair {
    InversionSphere source;  // isometric sphere of the generator
    InversionSphere target;  // isometric sphere of its inverse
};

struct ValidationReport {
    bool valid = false;
    std::vector<std::string> failures;
    double min_gap = std::numeric_limits<double>::infinity();
    int dimension = 0;
    int pair_count = 0;
};

namespace detail {

inline double sphere_gap(const InversionSphere& a, const InversionSphere& b) {
    return euclidean_distance(a.center, b.center) - a.radius - b.radius;
}

}  // namespace detail

// Checks the ping-pong configuration: every sphere orthogonal to the unit
// sphere, all 2g spheres pairwise disjoint with positive gaps, and the origin
// outside every closed disk.  min_gap is reported even when invalid.
inline ValidationReport validate_schottky(const std::vector<SpherePair>& pairs) {
    ValidationReport rep;
    if (pairs.empty()) {
        rep.failures.push_back("no generator pairs given");
        return rep;
    }
    rep.pair_count = static_cast<int>(pairs.size());
    rep.dimension = pairs.front().source.dim();

    std::vector<const InversionSphere*> all;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        all.push_back(&pairs[i].source);
        all.push_back(&pairs[i].target);
    }

    for (std::size_t i = 0; i < all.size(); ++i) {
        const InversionSphere& s = *all[i];
        std::string tag = "sphere " + std::to_string(i);
        if (s.dim() != rep.dimension)
            rep.failures.push_back(tag + ": dimension mismatch");
        double res = std::abs(norm_sq(s.center) - 1.0 - s.radius * s.radius);
        if (res > tol_norm)
            rep.failures.push_back(tag + ": not orthogonal to the unit sphere (residual " +
                                   std::to_string(res) + ")");
        if (norm(s.center) <= s.radius + tol_norm)
            rep.failures.push_back(tag + ": closed disk contains the origin");
    }

    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            double gap = detail::sphere_gap(*all[i], *all[j]);
            if (gap < rep.min_gap) rep.min_gap = gap;
            if (gap < tol_norm)
                rep.failures.push_back("spheres " + std::to_string(i) + " and " +
                                       std::to_string(j) + " are not disjoint (gap " +
                                       std::to_string(gap) + ")");
        }

    rep.valid = rep.failures.empty();
    return rep;
}

class SchottkyGroup {
public:
    explicit SchottkyGroup(std::vector<SpherePair> pairs) : pairs_(std::move(pairs)) {
        ValidationReport rep = validate_schottky(pairs_);
        if (!rep.valid) throw std::domain_error("invalid Schottky data: " + rep.failures.front());
        dim_ = rep.dimension;
        min_gap_ = rep.min_gap;
        generators_.reserve(pairs_.size());
        for (const auto& p : pairs_) {
            // g = i_target . i_source maps the exterior of the source disk
            // into the target disk; its canonical isometric sphere lies
            // strictly inside the source disk.
            FactorList fs(dim_);
            fs.push_back(p.source);
            fs.push_back(p.target);
            int letter = static_cast<int>(generators_.size()) + 1;
            generators_.push_back(Isometry::from_factors(fs, Word({letter})));
        }
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(pairs_.size()); }
    double min_gap() const { return min_gap_; }
    const std::vector<SpherePair>& pairs() const { return pairs_; }

    // letter in {+-1, ..., +-rank}
    Isometry generator(int letter) const {
        int k = check_letter(letter);
        const Isometry& g = generators_[k];
        return letter > 0 ? g : g.inverse();
    }

    // The disk a reduced word ending in `letter` lands in.
    const InversionSphere& target_disk(int letter) const {
        int k = check_letter(letter);
        return letter > 0 ? pairs_[k].target : pairs_[k].source;
    }

    // The pairing disk whose exterior generator(letter) maps into its target;
    // equals target_disk(-letter).
    const InversionSphere& source_disk(int letter) const {
        int k = check_letter(letter);
        return letter > 0 ? pairs_[k].source : pairs_[k].target;
    }

    // Enumeration order: +1, -1, +2, -2, ...
    std::vector<int> letters() const {
        std::vector<int> out;
        for (int k = 1; k <= rank(); ++k) {
            out.push_back(k);
            out.push_back(-k);
        }
        return out;
    }

private:
    int check_letter(int letter) const {
        int k = std::abs(letter) - 1;
        if (letter == 0 || k >= rank())
            throw std::invalid_argument("generator letter out of range");
        return k;
    }

    std::vector<SpherePair> pairs_;
    std::vector<Isometry> generators_;
    int dim_ = 0;
    double min_gap_ = 0.0;
};

// Guard against runaway enumerations: (2g)(2g-1)^{k-1} grows fast.  The cap
// counts words including the identity and can be raised via the environment.
inline std::size_t enumeration_cap() {
    const char* env = std::getenv("BALLCOLLAR_MAX_WORDS");
    if (!env || !*env) return 200000;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw std::runtime_error("BALLCOLLAR_MAX_WORDS must be a positive integer");
    return static_cast<std::size_t>(v);
}

inline std::size_t reduced_word_count(int rank, int maxlen) {
    std::size_t total = 1;
    std::size_t level = 2 * static_cast<std::size_t>(rank);
    for (int k = 1; k <= maxlen; ++k) {
        total += level;
        level *= 2 * static_cast<std::size_t>(rank) - 1;
    }
    return total;
}

// All reduced words of length <= maxlen, identity first, breadth-first with
// letters ordered +1, -1, +2, -2, ...; words extend on the right.
inline std::vector<Word> reduced_words(const SchottkyGroup& g, int maxlen) {
    if (maxlen < 0) throw std::invalid_argument("negative word length");
    std::size_t cap = enumeration_cap();
    if (reduced_word_count(g.rank(), maxlen) > cap)
        throw std::runtime_error(
            "enumeration exceeds the word cap; raise BALLCOLLAR_MAX_WORDS to proceed");

    std::vector<Word> out;
    out.emplace_back();
    std::size_t level_begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (int s : g.letters()) {
                if (!out[i].empty() && out[i].letters().back() == -s) continue;
                out.push_back(out[i].appended(s));
            }
        level_begin = level_end;
    }
    return out;
}

// Same order as reduced_words, but carrying the composed isometries; each
// extension composes one generator on the right, which keeps every
// canonicalization numerically shallow.
inline std::vector<Isometry> enumerate_elements(const SchottkyGroup& g, int maxlen) {
    if (maxlen < 0) throw std::invalid_argument("negative word length");
    std::size_t cap = enumeration_cap();
    if (reduced_word_count(g.rank(), maxlen) > cap)
        throw std::runtime_error(
            "enumeration exceeds the word cap; raise BALLCOLLAR_MAX_WORDS to proceed");

    std::vector<Isometry> out;
    out.push_back(Isometry::identity(g.dim()));
    std::size_t level_begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (int s : g.letters()) {
                const Word& w = out[i].word();
                if (!w.empty() && w.letters().back() == -s) continue;
                out.push_back(compose(out[i], g.generator(s)));
            }
        level_begin = level_end;
    }
    return out;
}

// The element spelled by a reduced word.
inline Isometry element_of(const SchottkyGroup& g, const Word& w) {
    if (!w.is_reduced()) throw std::invalid_argument("word is not reduced");
    Isometry out = Isometry::identity(g.dim());
    for (int s : w.letters()) out = compose(out, g.generator(s));
    return out;
}

// Orbit of `base` under all reduced words of length <= maxlen, in word order.
inline std::vector<std::pair<Word, Point>> orbit(const SchottkyGroup& g, int maxlen,
                                                 const Point& base) {
    std::vector<std::pair<Word, Point>> out;
    for (const Isometry& el : enumerate_elements(g, maxlen))
        out.emplace_back(el.word(), el.apply(base));
    return out;
}

inline std::vector<std::pair<Word, Point>> orbit(const SchottkyGroup& g, int maxlen) {
    return orbit(g, maxlen, Point::origin(g.dim()));
}

// Image of a sphere under an isometry.  In canonical form gamma = A . i the
// inversion sends the sphere (d, rho) to one with center c + (r^2/pw)(d - c)
// and radius r^2 rho / |pw|, where pw = |d - c|^2 - rho^2 is the power of the
// inversion center with respect to the sphere; the rotation then moves the
// center rigidly.  pw = 0 means the center lies on the sphere and the image
// degenerates to a hyperplane.
inline InversionSphere map_sphere(const Isometry& gamma, const InversionSphere& s) {
    Vec d = s.center;
    double rho = s.radius;
    if (gamma.inversion()) {
        const InversionSphere& inv = *gamma.inversion();
        Vec w = sub(d, inv.center);
        double pw = norm_sq(w) - rho * rho;
        if (std::abs(pw) <= tol_center)
            throw std::domain_error("inversion center lies on the sphere being mapped");
        double f = inv.radius * inv.radius / pw;
        d = add(inv.center, scaled(w, f));
        rho = std::abs(f) * rho;
    }
    d = gamma.rotation().apply(d);
    if (rho < 1e-300)
        throw std::runtime_error("sphere image underflows; word too deep for this cover");
    return InversionSphere(std::move(d), rho, s.boundary_orthogonal);
}

struct DiskCover {
    int level = 0;
    std::vector<std::pair<Word, InversionSphere>> disks;
    double max_radius = 0.0;
    double min_norm = 1.0;  // smallest |center| - radius over the cover
};

// Images of the 2g pairing disks under all reduced words of length k-1 whose
// last letter may precede the disk's letter: exactly the level-k disks of the
// nested Schottky family, (2g)(2g-1)^{k-1} of them.
inline DiskCover disk_cover(const SchottkyGroup& g, int level) {
    if (level < 1) throw std::invalid_argument("cover level must be >= 1");
    DiskCover cover;
    cover.level = level;

    std::size_t cap = enumeration_cap();
    std::size_t count = 2 * static_cast<std::size_t>(g.rank());
    for (int k = 1; k < level; ++k) count *= 2 * static_cast<std::size_t>(g.rank()) - 1;
    if (count > cap)
        throw std::runtime_error(
            "cover exceeds the word cap; raise BALLCOLLAR_MAX_WORDS to proceed");

    // Seed: level-1 disks are the target disks of single letters.
    std::vector<std::pair<Word, Isometry>> prefixes;
    prefixes.emplace_back(Word{}, Isometry::identity(g.dim()));
    for (int len = 1; len < level; ++len) {
        std::vector<std::pair<Word, Isometry>> next;
        for (const auto& [w, el] : prefixes)
            for (int s : g.letters()) {
                if (!w.empty() && w.letters().back() == -s) continue;
                next.emplace_back(w.appended(s), compose(el, g.generator(s)));
            }
        prefixes = std::move(next);
    }

    for (const auto& [w, el] : prefixes)
        for (int s : g.letters()) {
            if (!w.empty() && w.letters().back() == -s) continue;
            InversionSphere img = map_sphere(el, g.target_disk(s));
            double lo = norm(img.center) - img.radius;
            if (img.radius > cover.max_radius) cover.max_radius = img.radius;
            if (lo < cover.min_norm) cover.min_norm = lo;
            cover.disks.emplace_back(w.appended(s), std::move(img));
        }
    return cover;
}

// Euclidean norm below which no orbit point of the origin at word length
// > maxlen can fall: orbit points of longer words lie inside the level-
// (maxlen+1) disks, so their norm is at least min_norm of that cover.
inline double min_tail_orbit_norm(const SchottkyGroup& g, int maxlen) {
    return disk_cover(g, maxlen + 1).min_norm;
}

// Direction samples of the limit set: normalized centers of the level-k
// disks.  Each lies within max_radius of an actual limit point.
inline std::vector<std::pair<Word, Point>> limit_set_sample(const SchottkyGroup& g, int level) {
    DiskCover cover = disk_cover(g, level);
    std::vector<std::pair<Word, Point>> out;
    out.reserve(cover.disks.size());
    for (const auto& [w, s] : cover.disks)
        out.emplace_back(w, Point::boundary(s.center));
    return out;
}

}  // namespace ballcollar

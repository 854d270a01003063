#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ballcollar/geometry.hpp"
#include "ballcollar/vec.hpp"

// Mobius isometries of the ball in canonical form A . i_S (orthogonal matrix
// composed with at most one inversion in a boundary-orthogonal sphere), plus
// free-group word bookkeeping.

namespace ballcollar {

// A reduced-or-not word in the free group: letters +k / -k stand for the
// k-th generator and its inverse (k >= 1).  Equality of group elements is
// decided by word identity, never by comparing floats.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
        for (int s : letters_)
            if (s == 0) throw std::invalid_argument("word letters must be nonzero");
    }

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int leading_letter() const { return letters_.front(); }

    bool is_reduced() const {
        for (std::size_t i = 1; i < letters_.size(); ++i)
            if (letters_[i] == -letters_[i - 1]) return false;
        return true;
    }

    Word freely_reduced() const {
        std::vector<int> out;
        for (int s : letters_) {
            if (!out.empty() && out.back() == -s)
                out.pop_back();
            else
                out.push_back(s);
        }
        return Word(std::move(out));
    }

    Word appended(int letter) const {
        std::vector<int> out = letters_;
        out.push_back(letter);
        return Word(std::move(out));
    }

    Word concat(const Word& rhs) const {
        std::vector<int> out = letters_;
        out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
        return Word(std::move(out));
    }

    Word inverse() const {
        std::vector<int> out(letters_.rbegin(), letters_.rend());
        for (int& s : out) s = -s;
        return Word(std::move(out));
    }

    bool operator==(const Word& rhs) const { return letters_ == rhs.letters_; }
    bool operator!=(const Word& rhs) const { return !(*this == rhs); }

    // "e" for the identity; letters a..z / A..Z while the alphabet allows,
    // dotted numeric tokens (g1.g-2) beyond 26 generator pairs.
    std::string str() const {
        if (letters_.empty()) return "e";
        bool lettered = true;
        for (int s : letters_)
            if (std::abs(s) > 26) lettered = false;
        std::string out;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            int s = letters_[i];
            if (lettered) {
                char base = s > 0 ? 'a' : 'A';
                out.push_back(static_cast<char>(base + std::abs(s) - 1));
            } else {
                if (i) out.push_back('.');
                out += "g" + std::to_string(s);
            }
        }
        return out;
    }

private:
    std::vector<int> letters_;
};

// Ordered factors, applied first-to-last; each factor is an inversion in a
// boundary-orthogonal sphere or an orthogonal matrix.
class FactorList {
public:
    using Factor = std::variant<InversionSphere, Mat>;

    explicit FactorList(int dim) : dim_(dim) {
        if (dim < 2) throw std::invalid_argument("factor lists need dimension >= 2");
    }

    void push_back(const InversionSphere& s) {
        if (s.dim() != dim_) throw std::invalid_argument("factor dimension mismatch");
        double res = std::abs(norm_sq(s.center) - 1.0 - s.radius * s.radius);
        if (res > tol_norm)
            throw std::domain_error("factor sphere is not orthogonal to the unit sphere");
        factors_.emplace_back(s);
    }

    void push_back(const Mat& m) {
        if (m.dim() != dim_) throw std::invalid_argument("factor dimension mismatch");
        if (m.orthogonality_residual() > tol_norm)
            throw std::domain_error("factor matrix is not orthogonal");
        factors_.emplace_back(m);
    }

    int dim() const { return dim_; }
    const std::vector<Factor>& factors() const { return factors_; }

private:
    int dim_;
    std::vector<Factor> factors_;
};

namespace detail {

// One canonical-form constituent: a sphere inversion or an orthogonal map.
using Primitive = std::variant<InversionSphere, Mat>;

inline Vec primitive_apply(const Primitive& p, const Vec& x) {
    if (std::holds_alternative<InversionSphere>(p))
        return reflect_in_sphere(std::get<InversionSphere>(p), x);
    return std::get<Mat>(p).apply(x);
}

// Accumulates J := Dp(x) . J.  The inversion Jacobian is
// (r/|x-c|)^2 (I - 2 uu^T) with u = x - c; always evaluated at moderate
// arguments along the orbit of the origin, which keeps the product
// well-conditioned at any word length.
inline void primitive_jacobian_accumulate(const Primitive& p, const Vec& x, Mat& j) {
    if (std::holds_alternative<InversionSphere>(p)) {
        const InversionSphere& s = std::get<InversionSphere>(p);
        Vec w = sub(x, s.center);
        double d2 = norm_sq(w);
        if (d2 <= tol_center * tol_center)
            throw std::domain_error("Jacobian is singular at an inversion center");
        Mat refl = reflection_matrix(w);
        refl.scale(s.radius * s.radius / d2);
        j = refl.mul(j);
    } else {
        j = std::get<Mat>(p).mul(j);
    }
}

inline Primitive primitive_inverse(const Primitive& p) {
    if (std::holds_alternative<InversionSphere>(p)) return p;  // involution
    return Primitive(std::get<Mat>(p).transpose());
}

}  // namespace detail

class Isometry;
Isometry compose(const Isometry& outer, const Isometry& inner);

class Isometry {
public:
    static Isometry identity(int n) {
        return Isometry(n, Mat::identity(n), std::nullopt, Word{});
    }

    // Canonicalizes a composition of reflections / orthogonal maps.
    // The optional word records what the factors spell in some generator set;
    // it is bookkeeping only and does not influence the geometry.
    static Isometry from_factors(const FactorList& fs, Word word = Word{}) {
        std::vector<detail::Primitive> fwd;
        for (const auto& f : fs.factors())
            fwd.push_back(std::visit([](const auto& v) { return detail::Primitive(v); }, f));
        return canonicalize(fs.dim(), fwd, std::move(word));
    }

    int dim() const { return dim_; }
    const Word& word() const { return word_; }
    const Mat& rotation() const { return rot_; }
    const std::optional<InversionSphere>& inversion() const { return inv_; }

    std::pair<const Mat*, const InversionSphere*> canonical_parts() const {
        return {&rot_, inv_ ? &*inv_ : nullptr};
    }

    bool is_rotation_only() const { return !inv_.has_value(); }

    // The isometric sphere of the canonical inversion; absent exactly for
    // rotation-only elements (the identity among them).
    const InversionSphere& isometric_sphere() const {
        if (!inv_)
            throw std::domain_error("rotation-only isometry has no isometric sphere");
        return *inv_;
    }

    // Raw action on coordinates; no ball-membership constraints.
    Vec apply(const Vec& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("isometry/point dimension mismatch");
        Vec y = inv_ ? reflect_in_sphere(*inv_, x) : x;
        return rot_.apply(y);
    }

    // Ball action: interior stays interior, boundary stays boundary; results
    // within tol_norm of the sphere at infinity are renormalized onto it.
    Point apply(const Point& p) const {
        Vec y = apply(p.coords());
        double n = norm(y);
        if (p.is_boundary() || std::abs(n - 1.0) <= tol_norm) {
            if (n == 0.0) throw std::domain_error("degenerate boundary image");
            return Point::boundary(std::move(y));
        }
        return Point(std::move(y));
    }

    Vec apply_inverse(const Vec& x) const {
        Vec y = rot_.apply_transpose(x);
        return inv_ ? reflect_in_sphere(*inv_, y) : y;
    }

    Isometry inverse() const {
        // gamma = A . i  =>  gamma^{-1} = i . A^T.
        std::vector<detail::Primitive> fwd;
        fwd.emplace_back(rot_.transpose());
        if (inv_) fwd.emplace_back(*inv_);
        return canonicalize(dim_, fwd, word_.inverse());
    }

    friend Isometry compose(const Isometry& outer, const Isometry& inner);

private:
    Isometry(int dim, Mat rot, std::optional<InversionSphere> inv, Word word)
        : dim_(dim), rot_(std::move(rot)), inv_(std::move(inv)), word_(std::move(word)) {
        if (rot_.dim() != dim_ || (inv_ && inv_->dim() != dim_))
            throw std::invalid_argument("canonical parts disagree on dimension");
        if (rot_.orthogonality_residual() > tol_norm)
            throw std::domain_error("canonical rotation is not orthogonal");
        // The sphere constructor has already certified boundary orthogonality.
    }

    // Canonical form of the map spelled by `fwd` (applied first-to-last).
    //
    //   q := gamma^{-1}(0).  If q vanishes the map fixes the origin and is the
    //   orthogonal map x -> Dgamma(0) x.  Otherwise the inversion sphere is
    //   centered at c = q/|q|^2, and since Dgamma(0) = A . Di_S(0) with
    //   Di_S(0) = (r/|c|)^2 Ref(c), the rotation is recovered as
    //   A = normalize(Dgamma(0) . Ref(c)) and the radius from the conformal
    //   scale s = |gamma'(0)| = (r/|c|)^2, i.e. r = sqrt(s)/|q|.
    //
    // Evaluating the Jacobian chain along the orbit of the origin avoids the
    // severely ill-conditioned alternative of reflecting basis vectors through
    // deep isometric spheres.
    static Isometry canonicalize(int dim, const std::vector<detail::Primitive>& fwd, Word word) {
        Vec q = zero_vec(dim);
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it)
            q = primitive_apply(detail::primitive_inverse(*it), q);

        Mat j = Mat::identity(dim);
        Vec x = zero_vec(dim);
        for (const auto& p : fwd) {
            detail::primitive_jacobian_accumulate(p, x, j);
            x = detail::primitive_apply(p, x);
        }

        double qn = norm(q);
        if (qn <= tol_norm) {
            double s = column_norm(j, 0);
            if (!(s > 0.0)) throw std::domain_error("degenerate factor composition");
            j.scale(1.0 / s);
            return Isometry(dim, std::move(j), std::nullopt, std::move(word));
        }
        if (qn >= 1.0)
            throw std::domain_error("factor composition does not preserve the ball");

        Vec c = scaled(q, 1.0 / norm_sq(q));
        Mat a_raw = j.mul(reflection_matrix(c));
        double s = column_norm(a_raw, 0);
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::domain_error("degenerate factor composition");
        a_raw.scale(1.0 / s);
        double r = std::sqrt(s) / qn;
        InversionSphere sphere(std::move(c), r, true);
        return Isometry(dim, std::move(a_raw), std::move(sphere), std::move(word));
    }

    static Vec primitive_apply(const detail::Primitive& p, const Vec& v) {
        return detail::primitive_apply(p, v);
    }

    static double column_norm(const Mat& m, int col) {
        double s = 0.0;
        for (int i = 0; i < m.dim(); ++i) s += m(i, col) * m(i, col);
        return std::sqrt(s);
    }

    int dim_;
    Mat rot_;
    std::optional<InversionSphere> inv_;
    Word word_;
};

// outer . inner, applied as inner first.  Words concatenate and freely reduce.
inline Isometry compose(const Isometry& outer, const Isometry& inner) {
    if (outer.dim() != inner.dim())
        throw std::invalid_argument("composing isometries of different dimensions");
    std::vector<detail::Primitive> fwd;
    if (inner.inversion()) fwd.emplace_back(*inner.inversion());
    fwd.emplace_back(inner.rotation());
    if (outer.inversion()) fwd.emplace_back(*outer.inversion());
    fwd.emplace_back(outer.rotation());
    Word word = outer.word().concat(inner.word()).freely_reduced();
    return Isometry::canonicalize(outer.dim(), fwd, std::move(word));
}

// |gamma(0)| as a function of the isometric-sphere radius: the orbit point
// gamma(0) has Euclidean norm 1/sqrt(1 + r^2).  Decreasing in r; the value is
// 2/sqrt(5) at r = 1/2 and tends to 1 as r -> 0+.
inline double orbit_norm_from_radius(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("isometric radius must be positive");
    return 1.0 / std::sqrt(1.0 + r * r);
}

}  // namespace ballcollar

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Small dense vectors and square matrices with runtime dimension.
// Dimensions here are tiny (the ball model needs n >= 2, typically 2 or 3),
// so everything is plain loops over std::vector<double>.

namespace ballcollar {

using Vec = std::vector<double>;

inline void require_same_dim(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dimension mismatch between operands");
}

inline double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec add(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
    return r;
}

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

inline Vec basis_vec(int n, int j) {
    Vec r = zero_vec(n);
    r[static_cast<std::size_t>(j)] = 1.0;
    return r;
}

// Row-major square matrix.
class Mat {
public:
    explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
    }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    Vec apply(const Vec& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("matrix/vector dimension mismatch");
        Vec y(x.size(), 0.0);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

    // A^T x; the inverse action when A is orthogonal.
    Vec apply_transpose(const Vec& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("matrix/vector dimension mismatch");
        Vec y(x.size(), 0.0);
        for (int j = 0; j < n_; ++j) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (*this)(i, j) * x[i];
            y[static_cast<std::size_t>(j)] = s;
        }
        return y;
    }

    Mat transpose() const {
        Mat t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat mul(const Mat& rhs) const {
        if (rhs.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
        Mat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < n_; ++j) r(i, j) += v * rhs(k, j);
            }
        return r;
    }

    void scale(double t) {
        for (double& v : a_) v *= t;
    }

    // max |A^T A - I|; zero for an exactly orthogonal matrix.
    double orthogonality_residual() const {
        double worst = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                double s = 0.0;
                for (int k = 0; k < n_; ++k) s += (*this)(k, i) * (*this)(k, j);
                double target = (i == j) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(s - target));
            }
        return worst;
    }

private:
    int n_;
    std::vector<double> a_;
};

// Householder-type reflection I - 2 vv^T/|v|^2.
inline Mat reflection_matrix(const Vec& v) {
    double q = norm_sq(v);
    if (q == 0.0) throw std::invalid_argument("reflection axis must be nonzero");
    int n = static_cast<int>(v.size());
    Mat m = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) -= 2.0 * v[i] * v[j] / q;
    return m;
}

}  // namespace ballcollar

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "drsubmax/errors.hpp"

namespace drsubmax {

using Vec = std::vector<double>;

// Dense row-major matrix. Sizes in this project stay small (d, m <= 50),
// so a flat vector with bounds-free indexing is all we need.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
    double* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
};

inline double dot(const Vec& x, const Vec& y) {
    assert(x.size() == y.size());
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double norm_inf(const Vec& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::fabs(v));
    return s;
}

// out = M x
inline void matvec(const Mat& m, const Vec& x, Vec& out) {
    if (static_cast<int>(x.size()) != m.cols) throw LengthMismatch("matvec: size mismatch");
    out.assign(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double* r = m.row(i);
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += r[j] * x[j];
        out[i] = s;
    }
}

inline Vec matvec(const Mat& m, const Vec& x) {
    Vec out;
    matvec(m, x, out);
    return out;
}

inline double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

inline double trace(const Mat& m) {
    assert(m.rows == m.cols);
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

}  // namespace drsubmax

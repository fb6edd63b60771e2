#pragma once

#include <cmath>

namespace qs {

// Real 2x2 matrix [[a, b], [c, d]]. All transfer-matrix work stays in this
// type; everything is inline and allocation-free.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0; // identity by default

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] double trace() const { return a + d; }
    [[nodiscard]] double det() const { return a * d - b * c; }

    // Inverse of a unimodular matrix (adjugate); caller guarantees det = 1.
    [[nodiscard]] Mat2 inv_unimodular() const { return {d, -b, -c, a}; }

    // Spectral 2-norm, closed form via the singular values of a 2x2 matrix.
    [[nodiscard]] double norm2() const {
        const double s = a * a + b * b + c * c + d * d;
        const double dt = det();
        const double disc = std::sqrt(std::fmax(0.0, s * s - 4.0 * dt * dt));
        return std::sqrt(0.5 * (s + disc));
    }

    [[nodiscard]] double frobenius() const {
        return std::sqrt(a * a + b * b + c * c + d * d);
    }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator-(const Mat2& o) const {
        return {a - o.a, b - o.b, c - o.c, d - o.d};
    }
    Mat2 operator+(const Mat2& o) const {
        return {a + o.a, b + o.b, c + o.c, d + o.d};
    }
};

struct Vec2 {
    double x = 0.0, y = 0.0;
    [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

// One-step matrix of the difference equation at energy E and site value v:
// [[E - v, -1], [1, 0]].
inline Mat2 elementary_matrix(double E, double v) {
    return {E - v, -1.0, 1.0, 0.0};
}

// M^k for unimodular M through the three-term power recursion
// M^k = tr(M) M^{k-1} - M^{k-2}; k >= 0.
Mat2 unimodular_power(const Mat2& m, long k);

// tr(M^k) from t = tr(M) alone, same recursion seeded (2, t).
double unimodular_power_trace(double t, long k);

} // namespace qs

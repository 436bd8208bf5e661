#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace szego {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kImag{0.0, 1.0};

/// Laurent polynomial with complex coefficients over a contiguous power
/// range [lo, lo+len-1].  The canonical zero is stored as lo = 0,
/// coeffs = {0}; all other values keep nonzero leading and trailing
/// coefficients (exact-zero trim only, so algebra stays exact).
class LaurentPolynomial {
public:
    LaurentPolynomial() : lo_(0), c_{cplx(0.0)} {}

    LaurentPolynomial(int lo, std::vector<cplx> coeffs) : lo_(lo), c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("LaurentPolynomial: empty coefficient list");
        trim();
    }

    static LaurentPolynomial zero() { return LaurentPolynomial(); }

    static LaurentPolynomial constant(cplx a) { return LaurentPolynomial(0, {a}); }

    static LaurentPolynomial monomial(int k, cplx a = cplx(1.0)) {
        return LaurentPolynomial(k, {a});
    }

    bool is_zero() const { return c_.size() == 1 && c_[0] == cplx(0.0); }

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }

    /// Coefficient of z^k; zero outside the stored range.
    cplx coeff(int k) const {
        if (k < lo_ || k > hi()) return cplx(0.0);
        return c_[static_cast<std::size_t>(k - lo_)];
    }

    std::span<const cplx> coeffs() const { return c_; }

    /// Horner evaluation, nonnegative and negative tails split so |z| far
    /// from 1 does not overflow intermediate powers.
    cplx operator()(cplx z) const {
        if (is_zero()) return cplx(0.0);
        if (lo_ < 0 && z == cplx(0.0))
            throw std::domain_error("LaurentPolynomial: evaluation at z = 0 with negative powers");
        cplx pos(0.0);
        const int h = hi();
        if (h >= 0) {
            for (int k = h; k >= std::max(lo_, 0); --k) pos = pos * z + coeff(k);
            if (lo_ > 0) for (int j = 0; j < lo_; ++j) pos *= z;
        }
        cplx neg(0.0);
        if (lo_ < 0) {
            const cplx u = cplx(1.0) / z;
            const int top = std::min(h, -1);
            for (int k = lo_; k <= top; ++k) neg = neg * u + coeff(k);
            for (int j = 0; j < -top; ++j) neg *= u;
        }
        return pos + neg;
    }

    cplx eval_circle(double theta) const { return (*this)(std::polar(1.0, theta)); }

    std::vector<cplx> eval_grid(std::span<const cplx> pts) const {
        std::vector<cplx> out(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = (*this)(pts[i]);
        return out;
    }

    /// Multiply every power by z^k.
    LaurentPolynomial shifted(int k) const {
        if (is_zero()) return zero();
        return LaurentPolynomial(lo_ + k, c_);
    }

    /// Reversed polynomial of degree n: z^n conj(p(1/conj(z))).
    /// Requires an ordinary polynomial (lo >= 0) of degree <= n.
    LaurentPolynomial reversed(int n) const {
        if (lo_ < 0) throw std::domain_error("reversed: negative powers present");
        if (hi() > n) throw std::domain_error("reversed: degree exceeds n");
        if (is_zero()) return zero();
        std::vector<cplx> out(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j)
            out[j] = std::conj(c_[c_.size() - 1 - j]);
        return LaurentPolynomial(n - hi(), std::move(out));
    }

    /// Reflection for the unit circle: p_*(z) = conj(p(1/conj(z))), i.e.
    /// coefficient of z^k becomes conj(coefficient of z^{-k}).
    LaurentPolynomial reflected() const {
        if (is_zero()) return zero();
        std::vector<cplx> out(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j)
            out[j] = std::conj(c_[c_.size() - 1 - j]);
        return LaurentPolynomial(-hi(), std::move(out));
    }

    double norm_inf() const {
        double m = 0.0;
        for (const cplx& a : c_) m = std::max(m, std::abs(a));
        return m;
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& q) { *this = *this + q; return *this; }
    LaurentPolynomial& operator-=(const LaurentPolynomial& q) { *this = *this - q; return *this; }

    friend LaurentPolynomial operator+(const LaurentPolynomial& p, const LaurentPolynomial& q) {
        if (p.is_zero()) return q;
        if (q.is_zero()) return p;
        const int lo = std::min(p.lo_, q.lo_);
        const int hi = std::max(p.hi(), q.hi());
        std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0));
        for (int k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = p.coeff(k) + q.coeff(k);
        return LaurentPolynomial(lo, std::move(out));
    }

    friend LaurentPolynomial operator-(const LaurentPolynomial& p, const LaurentPolynomial& q) {
        return p + (cplx(-1.0) * q);
    }

    friend LaurentPolynomial operator*(cplx a, const LaurentPolynomial& p) {
        if (a == cplx(0.0) || p.is_zero()) return zero();
        std::vector<cplx> out(p.c_);
        for (cplx& v : out) v *= a;
        return LaurentPolynomial(p.lo_, std::move(out));
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& p, cplx a) { return a * p; }

    friend LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) {
        if (p.is_zero() || q.is_zero()) return zero();
        std::vector<cplx> out(p.c_.size() + q.c_.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j)
                out[i + j] += p.c_[i] * q.c_[j];
        return LaurentPolynomial(p.lo_ + q.lo_, std::move(out));
    }

    friend bool operator==(const LaurentPolynomial& p, const LaurentPolynomial& q) {
        return p.lo_ == q.lo_ && p.c_ == q.c_;
    }

private:
    void trim() {
        std::size_t first = 0, last = c_.size();
        while (first < last && c_[first] == cplx(0.0)) ++first;
        while (last > first && c_[last - 1] == cplx(0.0)) --last;
        if (first == last) { lo_ = 0; c_ = {cplx(0.0)}; return; }
        if (first > 0 || last < c_.size()) {
            c_ = std::vector<cplx>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                   c_.begin() + static_cast<std::ptrdiff_t>(last));
            lo_ += static_cast<int>(first);
        }
    }

    int lo_;
    std::vector<cplx> c_;
};

inline double max_coeff_distance(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    return (p - q).norm_inf();
}

/// 2x2 complex matrix, value semantics.
struct Matrix2C {
    cplx e11{0.0}, e12{0.0}, e21{0.0}, e22{0.0};

    static Matrix2C identity() { return {cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}; }

    cplx det() const { return e11 * e22 - e12 * e21; }

    Matrix2C inverse() const {
        const cplx d = det();
        if (std::abs(d) == 0.0) throw std::domain_error("Matrix2C: singular");
        return {e22 / d, -e12 / d, -e21 / d, e11 / d};
    }

    Matrix2C conjugated() const {
        return {std::conj(e11), std::conj(e12), std::conj(e21), std::conj(e22)};
    }

    double norm_inf() const {
        return std::max(std::max(std::abs(e11), std::abs(e12)),
                        std::max(std::abs(e21), std::abs(e22)));
    }

    friend Matrix2C operator*(const Matrix2C& a, const Matrix2C& b) {
        return {a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
                a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
    }

    friend Matrix2C operator*(cplx s, const Matrix2C& a) {
        return {s * a.e11, s * a.e12, s * a.e21, s * a.e22};
    }

    friend Matrix2C operator+(const Matrix2C& a, const Matrix2C& b) {
        return {a.e11 + b.e11, a.e12 + b.e12, a.e21 + b.e21, a.e22 + b.e22};
    }

    friend Matrix2C operator-(const Matrix2C& a, const Matrix2C& b) {
        return {a.e11 - b.e11, a.e12 - b.e12, a.e21 - b.e21, a.e22 - b.e22};
    }
};

inline std::array<cplx, 2> solve2(const Matrix2C& m, const std::array<cplx, 2>& rhs) {
    const cplx d = m.det();
    if (std::abs(d) == 0.0) throw std::domain_error("solve2: singular matrix");
    return {(rhs[0] * m.e22 - rhs[1] * m.e12) / d, (m.e11 * rhs[1] - m.e21 * rhs[0]) / d};
}

inline std::array<cplx, 2> mat_vec(const Matrix2C& m, const std::array<cplx, 2>& v) {
    return {m.e11 * v[0] + m.e12 * v[1], m.e21 * v[0] + m.e22 * v[1]};
}

/// Dense complex NxN helpers (Gaussian elimination with partial pivoting);
/// used only for the 4x4 block systems.
template <std::size_t N>
using MatrixNC = std::array<cplx, N * N>;

template <std::size_t N>
cplx det_n(MatrixNC<N> m) {
    cplx d(1.0);
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m[r * N + col]) > std::abs(m[piv * N + col])) piv = r;
        if (std::abs(m[piv * N + col]) == 0.0) return cplx(0.0);
        if (piv != col) {
            for (std::size_t c = 0; c < N; ++c) std::swap(m[piv * N + c], m[col * N + c]);
            d = -d;
        }
        d *= m[col * N + col];
        for (std::size_t r = col + 1; r < N; ++r) {
            const cplx f = m[r * N + col] / m[col * N + col];
            for (std::size_t c = col; c < N; ++c) m[r * N + c] -= f * m[col * N + c];
        }
    }
    return d;
}

template <std::size_t N>
std::array<cplx, N> solve_n(MatrixNC<N> m, std::array<cplx, N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(m[r * N + col]) > std::abs(m[piv * N + col])) piv = r;
        if (std::abs(m[piv * N + col]) == 0.0) throw std::domain_error("solve_n: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < N; ++c) std::swap(m[piv * N + c], m[col * N + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < N; ++r) {
            const cplx f = m[r * N + col] / m[col * N + col];
            for (std::size_t c = col; c < N; ++c) m[r * N + c] -= f * m[col * N + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::array<cplx, N> x{};
    for (std::size_t ri = N; ri-- > 0;) {
        cplx s = rhs[ri];
        for (std::size_t c = ri + 1; c < N; ++c) s -= m[ri * N + c] * x[c];
        x[ri] = s / m[ri * N + ri];
    }
    return x;
}

}  // namespace szego

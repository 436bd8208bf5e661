#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "szego/laurent.hpp"

namespace szego {

struct Atom {
    double theta;  // radians in [0, 2*pi)
    double mass;   // > 0 after normalization
};

enum class WeightKind { Uniform, BernsteinSzego, Fourier, Sampled };

inline const char* weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::Uniform: return "uniform";
        case WeightKind::BernsteinSzego: return "bernstein_szego";
        case WeightKind::Fourier: return "fourier";
        case WeightKind::Sampled: return "sampled";
    }
    return "?";
}

/// Runs the Szego recursion on a prescribed coefficient sequence and returns
/// the monic polynomial of degree alphas.size() together with its reversed
/// polynomial.  This is the standard construction behind the
/// Bernstein-Szego weights; no measure is involved.
inline std::pair<LaurentPolynomial, LaurentPolynomial>
monic_from_verblunsky(std::span<const cplx> alphas) {
    LaurentPolynomial phi = LaurentPolynomial::constant(1.0);
    LaurentPolynomial phistar = LaurentPolynomial::constant(1.0);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (std::abs(alphas[j]) >= 1.0)
            throw std::invalid_argument("verblunsky coefficient with |alpha| >= 1");
        LaurentPolynomial next = phi.shifted(1) - std::conj(alphas[j]) * phistar;
        phistar = phistar - alphas[j] * phi.shifted(1);
        phi = next;
    }
    return {phi, phistar};
}

/// Nontrivial probability measure on the unit circle: a nonnegative weight
/// w sampled on a uniform M-point grid (dmu_ac = w dtheta / 2pi) plus a
/// finite list of atoms.  Trigonometric moments up to K are precomputed for
/// both the full measure and the absolutely continuous part; every integral
/// of (Laurent polynomial x dmu) in the library reduces to them.
class CircleMeasure {
public:
    static CircleMeasure uniform(int M = 4096, int K = 256,
                                 std::vector<Atom> atoms = {}) {
        std::vector<double> w(static_cast<std::size_t>(M), 1.0);
        return CircleMeasure(WeightKind::Uniform, std::move(w), std::move(atoms), K, {}, {});
    }

    static CircleMeasure bernstein_szego(std::vector<cplx> alphas, int M = 4096, int K = 256,
                                         std::vector<Atom> atoms = {}) {
        for (const cplx& a : alphas)
            if (std::abs(a) >= 1.0)
                throw std::invalid_argument("bernstein_szego: |alpha| >= 1");
        const auto [phi, phistar] = monic_from_verblunsky(alphas);
        (void)phistar;
        double kappa_sq = 1.0;
        for (const cplx& a : alphas) kappa_sq /= 1.0 - std::norm(a);
        std::vector<double> w(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            const cplx v = phi.eval_circle(2.0 * kPi * m / M);
            w[static_cast<std::size_t>(m)] = 1.0 / (kappa_sq * std::norm(v));
        }
        return CircleMeasure(WeightKind::BernsteinSzego, std::move(w), std::move(atoms), K,
                             std::move(alphas), {});
    }

    /// w(theta) = coeffs[0] + 2 * sum_{k>=1} Re(coeffs[k] e^{i k theta});
    /// coeffs[0] must be real and the result positive on the grid.
    static CircleMeasure fourier(std::vector<cplx> coeffs, int M = 4096, int K = 256,
                                 std::vector<Atom> atoms = {}) {
        if (coeffs.empty()) throw std::invalid_argument("fourier: empty coefficient list");
        if (std::abs(coeffs[0].imag()) > 1e-14)
            throw std::invalid_argument("fourier: constant coefficient must be real");
        std::vector<double> w(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            const double theta = 2.0 * kPi * m / M;
            double v = coeffs[0].real();
            for (std::size_t k = 1; k < coeffs.size(); ++k)
                v += 2.0 * (coeffs[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
            w[static_cast<std::size_t>(m)] = v;
        }
        return CircleMeasure(WeightKind::Fourier, std::move(w), std::move(atoms), K,
                             {}, std::move(coeffs));
    }

    static CircleMeasure sampled(std::vector<double> values, int K = 256,
                                 std::vector<Atom> atoms = {}) {
        return CircleMeasure(WeightKind::Sampled, std::move(values), std::move(atoms), K, {}, {});
    }

    WeightKind kind() const { return kind_; }
    int grid_size() const { return M_; }
    int max_moment() const { return K_; }
    bool has_atoms() const { return !atoms_.empty(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<cplx>& bs_alphas() const { return bs_alphas_; }
    const std::vector<cplx>& fourier_coeffs() const { return fourier_coeffs_; }

    double theta(int idx) const { return 2.0 * kPi * idx / M_; }
    double weight_at(int idx) const { return w_[static_cast<std::size_t>(idx)]; }
    const std::vector<double>& weight_values() const { return w_; }

    /// c_n = integral of conj(tau)^n dmu, n = 0..K (Hermitian extension for
    /// negative n).
    cplx c(int n) const {
        if (n < 0) return std::conj(c(-n));
        require_index(n);
        return c_full_[static_cast<std::size_t>(n)];
    }

    /// integral of tau^m dmu = conj(c_m).
    cplx moment(int m) const { return std::conj(c(m)); }

    /// Fourier coefficient of the weight alone:
    /// (1/2pi) int w(theta) e^{-i m theta} dtheta.
    cplx weight_fourier(int m) const {
        if (m < 0) return std::conj(weight_fourier(-m));
        require_index(m);
        return c_ac_[static_cast<std::size_t>(m)];
    }

    /// integral of p(tau) dmu(tau).
    cplx integrate(const LaurentPolynomial& p) const {
        cplx s(0.0);
        for (int k = p.lo(); k <= p.hi(); ++k) s += p.coeff(k) * moment(k);
        return s;
    }

    /// <f, g>_C = integral conj(f) g dmu.
    cplx inner_c(const LaurentPolynomial& f, const LaurentPolynomial& g) const {
        cplx s(0.0);
        for (int j = f.lo(); j <= f.hi(); ++j) {
            const cplx fj = std::conj(f.coeff(j));
            if (fj == cplx(0.0)) continue;
            for (int k = g.lo(); k <= g.hi(); ++k) s += fj * g.coeff(k) * moment(k - j);
        }
        return s;
    }

    /// <f, g>_R = integral f g dmu (no conjugation; the bilinear extension
    /// is used on complex integrands throughout).  Operands are put in a
    /// canonical order first so the symmetry is exact, not just up to
    /// accumulation roundoff.
    cplx inner_r(const LaurentPolynomial& f, const LaurentPolynomial& g) const {
        auto precedes = [](const LaurentPolynomial& p, const LaurentPolynomial& q) {
            if (p.lo() != q.lo()) return p.lo() < q.lo();
            if (p.hi() != q.hi()) return p.hi() < q.hi();
            for (int k = p.lo(); k <= p.hi(); ++k) {
                const cplx a = p.coeff(k), b = q.coeff(k);
                if (a.real() != b.real()) return a.real() < b.real();
                if (a.imag() != b.imag()) return a.imag() < b.imag();
            }
            return false;
        };
        return precedes(g, f) ? integrate(g * f) : integrate(f * g);
    }

    std::string describe() const {
        std::string s = weight_kind_name(kind_);
        if (!atoms_.empty()) s += " + " + std::to_string(atoms_.size()) + " atom(s)";
        return s;
    }

private:
    CircleMeasure(WeightKind kind, std::vector<double> w, std::vector<Atom> atoms, int K,
                  std::vector<cplx> bs_alphas, std::vector<cplx> fourier_coeffs)
        : kind_(kind),
          M_(static_cast<int>(w.size())),
          K_(K),
          w_(std::move(w)),
          atoms_(std::move(atoms)),
          bs_alphas_(std::move(bs_alphas)),
          fourier_coeffs_(std::move(fourier_coeffs)) {
        if (M_ < 4 || (M_ & (M_ - 1)) != 0)
            throw std::invalid_argument("CircleMeasure: quadrature_points must be a power of two >= 4");
        if (K_ < 1 || K_ >= M_ / 2)
            throw std::invalid_argument("CircleMeasure: need 1 <= K < M/2 (anti-aliasing bound)");
        for (double v : w_)
            if (!(v >= 0.0))
                throw std::invalid_argument("CircleMeasure: weight negative at a quadrature node");
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (!(atoms_[i].mass > 0.0))
                throw std::invalid_argument("CircleMeasure: atom mass must be positive");
            if (atoms_[i].theta < 0.0 || atoms_[i].theta >= 2.0 * kPi)
                throw std::invalid_argument("CircleMeasure: atom angle outside [0, 2pi)");
            for (std::size_t j = 0; j < i; ++j)
                if (atoms_[i].theta == atoms_[j].theta)
                    throw std::invalid_argument("CircleMeasure: atom angles must be distinct");
        }
        normalize();
        compute_moments();
    }

    void normalize() {
        double wm = std::accumulate(w_.begin(), w_.end(), 0.0) / M_;
        double am = 0.0;
        for (const Atom& a : atoms_) am += a.mass;
        const double total = wm + am;
        if (!(total > 0.0)) throw std::invalid_argument("CircleMeasure: total mass not positive");
        for (double& v : w_) v /= total;
        for (Atom& a : atoms_) a.mass /= total;
        if (wm == 0.0 && atoms_.empty())
            throw std::invalid_argument("CircleMeasure: trivial measure");
    }

    void compute_moments() {
        c_ac_.assign(static_cast<std::size_t>(K_) + 1, cplx(0.0));
        c_full_.assign(static_cast<std::size_t>(K_) + 1, cplx(0.0));
        // (1/M) sum_m w(theta_m) e^{-i n theta_m}: the M-point trapezoid
        // rule, exact for band-limited weights, spectrally accurate for the
        // rest of the built-in family.
        std::vector<cplx> unit(static_cast<std::size_t>(M_));
        for (int m = 0; m < M_; ++m) unit[static_cast<std::size_t>(m)] = std::polar(1.0, -theta(m));
        std::vector<cplx> pw(static_cast<std::size_t>(M_), cplx(1.0));
        for (int n = 0; n <= K_; ++n) {
            cplx s(0.0);
            for (int m = 0; m < M_; ++m) s += w_[static_cast<std::size_t>(m)] * pw[static_cast<std::size_t>(m)];
            c_ac_[static_cast<std::size_t>(n)] = s / static_cast<double>(M_);
            for (int m = 0; m < M_; ++m) pw[static_cast<std::size_t>(m)] *= unit[static_cast<std::size_t>(m)];
        }
        for (int n = 0; n <= K_; ++n) {
            cplx s = c_ac_[static_cast<std::size_t>(n)];
            for (const Atom& a : atoms_) s += a.mass * std::polar(1.0, -n * a.theta);
            c_full_[static_cast<std::size_t>(n)] = s;
        }
    }

    void require_index(int n) const {
        if (n > K_) throw std::out_of_range("CircleMeasure: moment index exceeds table (" +
                                            std::to_string(n) + " > " + std::to_string(K_) + ")");
    }

    WeightKind kind_;
    int M_;
    int K_;
    std::vector<double> w_;
    std::vector<Atom> atoms_;
    std::vector<cplx> bs_alphas_;
    std::vector<cplx> fourier_coeffs_;
    std::vector<cplx> c_ac_;
    std::vector<cplx> c_full_;
};

}  // namespace szego

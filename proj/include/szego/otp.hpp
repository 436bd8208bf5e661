#pragma once

#include <string>
#include <vector>

#include "szego/laurent.hpp"
#include "szego/measure.hpp"
#include "szego/report.hpp"

namespace szego {

/// sin-like basis element (z^n - z^{-n}) / 2i.
inline LaurentPolynomial trig_sin(int n) {
    const cplx half_over_i = cplx(0.0, -0.5);  // 1/(2i)
    return LaurentPolynomial(-n, {-half_over_i}) + LaurentPolynomial(n, {half_over_i});
}

/// cos-like basis element (z^n + z^{-n}) / 2.
inline LaurentPolynomial trig_cos(int n) {
    if (n == 0) return LaurentPolynomial::constant(1.0);
    return LaurentPolynomial(-n, {cplx(0.5)}) + LaurentPolynomial(n, {cplx(0.5)});
}

/// First-class orthonormal Laurent polynomials sigma_n, pi_n together with
/// the seven real coefficient sequences attached to their expansions.
/// Conventions: sigma_0 = 1, pi_0 = 0, a_0 = b_0 = 1, beta_0 = 0; the four
/// cross coefficients (iota, jmath, varsigma, zeta) start at index 1.
struct OtpSystem {
    int N = 0;
    std::vector<LaurentPolynomial> sigma;  // sigma[0..N]
    std::vector<LaurentPolynomial> pi;     // pi[0..N], pi[0] = 0
    std::vector<double> a, b, beta;        // index 0..N
    std::vector<double> iota, jmath, varsigma, zeta;  // index 0 unused

    double S(int n) const {  // a_n^2 + b_n^2 (1 + beta_n^2), the recurring norm sum
        return a[static_cast<std::size_t>(n)] * a[static_cast<std::size_t>(n)] +
               b[static_cast<std::size_t>(n)] * b[static_cast<std::size_t>(n)] *
                   (1.0 + beta[static_cast<std::size_t>(n)] * beta[static_cast<std::size_t>(n)]);
    }

    double T(int n) const {  // a_n^{-2}(1+beta_n^2) + b_n^{-2}
        const double an = a[static_cast<std::size_t>(n)];
        const double bn = b[static_cast<std::size_t>(n)];
        const double be = beta[static_cast<std::size_t>(n)];
        return (1.0 + be * be) / (an * an) + 1.0 / (bn * bn);
    }
};

namespace detail {

inline double real_checked(cplx v, const char* what, double imag_tol = 1e-10) {
    if (std::abs(v.imag()) > imag_tol * std::max(1.0, std::abs(v.real())))
        throw std::domain_error(std::string("otp: ") + what +
                                " acquired a non-real value (imag = " +
                                std::to_string(v.imag()) + ")");
    return v.real();
}

}  // namespace detail

/// Gram-Schmidt under the bilinear form <.,.>_R over the ordered basis
/// {1, (z - 1/z)/2i, (z + 1/z)/2, ...}: within each level the sin-like
/// element is orthogonalized first (producing b_n pi_n), then the cos-like
/// one (producing a_n sigma_n).  Swapping that order would change the seven
/// coefficient sequences.  Modified GS with one reorthogonalization pass.
inline OtpSystem build_otp(const CircleMeasure& m, int N) {
    if (N < 1) throw std::invalid_argument("build_otp: N must be >= 1");
    if (2 * N + 2 > m.max_moment())
        throw std::invalid_argument("build_otp: moment table too short for requested index");
    OtpSystem sys;
    sys.N = N;
    sys.sigma.resize(static_cast<std::size_t>(N) + 1);
    sys.pi.resize(static_cast<std::size_t>(N) + 1);
    sys.a.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.b.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.beta.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.iota.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.jmath.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.varsigma.assign(static_cast<std::size_t>(N) + 1, 0.0);
    sys.zeta.assign(static_cast<std::size_t>(N) + 1, 0.0);

    sys.sigma[0] = LaurentPolynomial::constant(1.0);
    sys.pi[0] = LaurentPolynomial::zero();
    sys.a[0] = sys.b[0] = 1.0;
    sys.beta[0] = 0.0;

    std::vector<LaurentPolynomial> ortho;  // orthonormal chain: 1, pi_1, sigma_1, ...
    ortho.push_back(LaurentPolynomial::constant(1.0));

    auto orthogonalize = [&](LaurentPolynomial v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const LaurentPolynomial& q : ortho) v -= m.inner_r(q, v) * q;
        return v;
    };

    for (int n = 1; n <= N; ++n) {
        LaurentPolynomial vp = orthogonalize(trig_sin(n));
        const double b2 = detail::real_checked(m.inner_r(vp, vp), "pi norm");
        if (!(b2 > 1e-28))
            throw std::domain_error("build_otp: Gram matrix singular at level " + std::to_string(n) +
                                    " (measure trivial at this size)");
        sys.b[static_cast<std::size_t>(n)] = std::sqrt(b2);
        sys.pi[static_cast<std::size_t>(n)] = cplx(1.0 / sys.b[static_cast<std::size_t>(n)]) * vp;
        ortho.push_back(sys.pi[static_cast<std::size_t>(n)]);

        LaurentPolynomial vs = orthogonalize(trig_cos(n));
        const double a2 = detail::real_checked(m.inner_r(vs, vs), "sigma norm");
        if (!(a2 > 1e-28))
            throw std::domain_error("build_otp: Gram matrix singular at level " + std::to_string(n));
        sys.a[static_cast<std::size_t>(n)] = std::sqrt(a2);
        sys.sigma[static_cast<std::size_t>(n)] = cplx(1.0 / sys.a[static_cast<std::size_t>(n)]) * vs;
        ortho.push_back(sys.sigma[static_cast<std::size_t>(n)]);

        sys.beta[static_cast<std::size_t>(n)] = detail::real_checked(
            m.inner_r(trig_cos(n), sys.pi[static_cast<std::size_t>(n)]), "beta") /
            sys.b[static_cast<std::size_t>(n)];
        sys.iota[static_cast<std::size_t>(n)] = detail::real_checked(
            m.inner_r(trig_cos(n), sys.sigma[static_cast<std::size_t>(n - 1)]), "iota") /
            sys.a[static_cast<std::size_t>(n - 1)];
        sys.jmath[static_cast<std::size_t>(n)] = detail::real_checked(
            m.inner_r(trig_cos(n), sys.pi[static_cast<std::size_t>(n - 1)]), "jmath") /
            sys.b[static_cast<std::size_t>(n - 1)];
        sys.varsigma[static_cast<std::size_t>(n)] = detail::real_checked(
            m.inner_r(trig_sin(n), sys.sigma[static_cast<std::size_t>(n - 1)]), "varsigma") /
            sys.a[static_cast<std::size_t>(n - 1)];
        sys.zeta[static_cast<std::size_t>(n)] = detail::real_checked(
            m.inner_r(trig_sin(n), sys.pi[static_cast<std::size_t>(n - 1)]), "zeta") /
            sys.b[static_cast<std::size_t>(n - 1)];
    }
    return sys;
}

/// Orthonormality of {1, pi_1, sigma_1, ..., pi_N, sigma_N} under <.,.>_R:
/// max absolute deviation of the Gram matrix from the identity.
inline double otp_orthonormality_residual(const OtpSystem& sys, const CircleMeasure& m) {
    std::vector<const LaurentPolynomial*> chain;
    chain.push_back(&sys.sigma[0]);
    for (int n = 1; n <= sys.N; ++n) {
        chain.push_back(&sys.pi[static_cast<std::size_t>(n)]);
        chain.push_back(&sys.sigma[static_cast<std::size_t>(n)]);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const cplx v = m.inner_r(*chain[i], *chain[j]);
            const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
            worst = std::max(worst, std::abs(v - want));
        }
    return worst;
}

/// Residuals of the level-n expansions: the defect of a_n sigma_n
/// (resp. b_n pi_n) against its leading block must be orthogonal to every
/// basis element of level >= n-1.
inline ResidualReport otp_expansion_check(const OtpSystem& sys, const CircleMeasure& m,
                                          double tol = 1e-10) {
    ResidualReport rep;
    IdentityCheck& cs = rep.add("OTP-EXP-SIGMA", "2.11", tol);
    IdentityCheck& cp = rep.add("OTP-EXP-PI", "2.12", tol);
    for (int n = 1; n <= sys.N; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        const LaurentPolynomial rs =
            cplx(sys.a[idx]) * sys.sigma[idx] - trig_cos(n) +
            cplx(sys.beta[idx] * sys.b[idx]) * sys.pi[idx] +
            cplx(sys.iota[idx] * sys.a[idx - 1]) * sys.sigma[idx - 1] +
            cplx(sys.jmath[idx] * sys.b[idx - 1]) * sys.pi[idx - 1];
        const LaurentPolynomial rp =
            cplx(sys.b[idx]) * sys.pi[idx] - trig_sin(n) +
            cplx(sys.varsigma[idx] * sys.a[idx - 1]) * sys.sigma[idx - 1] +
            cplx(sys.zeta[idx] * sys.b[idx - 1]) * sys.pi[idx - 1];
        double ws = 0.0, wp = 0.0;
        const LaurentPolynomial* probes[4] = {&sys.sigma[idx - 1], &sys.pi[idx - 1],
                                              &sys.sigma[idx], &sys.pi[idx]};
        for (const LaurentPolynomial* q : probes) {
            if (q->is_zero()) continue;
            ws = std::max(ws, std::abs(m.inner_r(rs, *q)));
            wp = std::max(wp, std::abs(m.inner_r(rp, *q)));
        }
        cs.record(n, ws);
        cp.record(n, wp);
    }
    return rep;
}

/// sigma_n, pi_n evaluated on a theta grid as real trigonometric
/// polynomials; the imaginary parts are asserted to be numerical noise.
struct TrigView {
    std::vector<double> sigma;
    std::vector<double> pi;
};

inline TrigView trig_view(const OtpSystem& sys, int n, std::span<const double> thetas,
                          double imag_tol = 1e-12) {
    TrigView out;
    out.sigma.reserve(thetas.size());
    out.pi.reserve(thetas.size());
    for (double t : thetas) {
        const cplx s = sys.sigma[static_cast<std::size_t>(n)].eval_circle(t);
        const cplx p = n == 0 ? cplx(0.0) : sys.pi[static_cast<std::size_t>(n)].eval_circle(t);
        if (std::abs(s.imag()) > imag_tol * std::max(1.0, std::abs(s.real())) ||
            std::abs(p.imag()) > imag_tol * std::max(1.0, std::abs(p.real())))
            throw std::domain_error("trig_view: non-real value on the circle (upstream bug)");
        out.sigma.push_back(s.real());
        out.pi.push_back(p.real());
    }
    return out;
}

/// Auto-reflection defect of the system (both families are fixed points of
/// the circle reflection).
inline double otp_autoreflection_residual(const OtpSystem& sys) {
    double worst = 0.0;
    for (int n = 0; n <= sys.N; ++n) {
        worst = std::max(worst, max_coeff_distance(sys.sigma[static_cast<std::size_t>(n)],
                                                   sys.sigma[static_cast<std::size_t>(n)].reflected()));
        worst = std::max(worst, max_coeff_distance(sys.pi[static_cast<std::size_t>(n)],
                                                   sys.pi[static_cast<std::size_t>(n)].reflected()));
    }
    return worst;
}

}  // namespace szego

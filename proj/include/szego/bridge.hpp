#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "szego/laurent.hpp"
#include "szego/opuc.hpp"
#include "szego/otp.hpp"
#include "szego/report.hpp"

namespace szego {

/// Joint view of the two coefficient systems of one measure.
/// The conventions sigma_0 = 1, a_0 = b_0 = 1 make the level-0 element
/// carry a full-size leading coefficient where every later level carries a
/// half-size one; all boundary instances below (alpha_0, kappa_0, the
/// n = 1 Delta entries) are therefore evaluated against kappa_0 = 1 rather
/// than against the generic-level closed forms.
struct BridgeContext {
    const OpucSystem* opuc = nullptr;
    const OtpSystem* otp = nullptr;

    int max_level() const {  // largest n with Phi_{2n} and sigma_n available
        return std::min(otp->N, opuc->N / 2);
    }

    cplx lambda(int n) const {  // Lambda_n = -(1/2) T(n) i, n >= 1
        return cplx(0.0, -0.5 * otp->T(n));
    }
};

inline BridgeContext make_bridge(const OpucSystem& opuc, const OtpSystem& otp) {
    BridgeContext ctx;
    ctx.opuc = &opuc;
    ctx.otp = &otp;
    if (opuc.N < 2)
        throw std::invalid_argument("make_bridge: OPUC system too short");
    return ctx;
}

/// alpha_{2n-2} expressed through the level-n cross coefficients.  The
/// generic half-size formula applies for n >= 2; at n = 1 the level-0
/// convention doubles the expansion coefficients.
inline cplx alpha_even_from_otp(const OtpSystem& otp, int n) {
    const auto i = static_cast<std::size_t>(n);
    const double bprev = otp.beta[i - 1];
    const double x = otp.iota[i] + bprev * otp.varsigma[i] - otp.zeta[i];
    const double y = otp.jmath[i] - otp.iota[i] * bprev + otp.varsigma[i];
    const double factor = (n == 1) ? 1.0 : 0.5;
    return cplx(factor * x, -factor * y);
}

/// alpha_{2n-1} expressed through (a_n, b_n, beta_n), n >= 1.
inline cplx alpha_odd_from_otp(const OtpSystem& otp, int n) {
    const auto i = static_cast<std::size_t>(n);
    const double a2 = otp.a[i] * otp.a[i];
    const double b2 = otp.b[i] * otp.b[i];
    const double be = otp.beta[i];
    const double kinv2 = 4.0 / otp.T(n);  // kappa_{2n}^{-2}
    return cplx(0.25 * kinv2 * (1.0 / b2 - (1.0 - be * be) / a2),
                -0.5 * kinv2 * be / a2);
}

/// kappa_{2n}^2 from the OTP side (kappa_0 = 1 by normalization).
inline double kappa_even_sq_from_otp(const OtpSystem& otp, int n) {
    return n == 0 ? 1.0 : 0.25 * otp.T(n);
}

/// kappa_{2n-1}^{-2} from the OTP side, n >= 1 (the norm sum).
inline double kappa_odd_inv_sq_from_otp(const OtpSystem& otp, int n) { return otp.S(n); }

/// 1 - kappa_{2n}^2 / kappa_{2n+1}^2 through the OTP data: the squared
/// modulus of the even recursion coefficient.
inline double alpha_even_modulus_sq_from_otp(const OtpSystem& otp, int n) {
    return n == 0 ? 1.0 - otp.S(1) : 1.0 - 0.25 * otp.T(n) * otp.S(n + 1);
}

// ---------------------------------------------------------------------------
// Mutual representation
// ---------------------------------------------------------------------------

/// Phi_{2n-1} rebuilt from the OTP system.
inline LaurentPolynomial reconstruct_phi_odd(const OtpSystem& otp, int n) {
    const auto i = static_cast<std::size_t>(n);
    const LaurentPolynomial comb = cplx(otp.a[i]) * otp.sigma[i] +
                                   (cplx(otp.beta[i]) + kImag) * cplx(otp.b[i]) * otp.pi[i];
    return comb.shifted(n - 1);
}

/// kappa_{2n}^2 Phi_{2n}* rebuilt from the OTP system.
inline LaurentPolynomial reconstruct_phi_star_even(const OtpSystem& otp, int n) {
    const auto i = static_cast<std::size_t>(n);
    const cplx ca = (cplx(1.0) + cplx(otp.beta[i]) * kImag) / cplx(otp.a[i]);
    const cplx cb = -kImag / cplx(otp.b[i]);
    const LaurentPolynomial comb = ca * otp.sigma[i] + cb * otp.pi[i];
    return (cplx(0.5) * comb).shifted(n);
}

/// a_n sigma_n rebuilt from the OPUC system plus the level-n triple.
inline LaurentPolynomial reconstruct_a_sigma(const BridgeContext& ctx, int n) {
    const OtpSystem& otp = *ctx.otp;
    const OpucSystem& op = *ctx.opuc;
    const auto i = static_cast<std::size_t>(n);
    const cplx lam_inv = cplx(1.0) / ctx.lambda(n);
    const double b2 = otp.b[i] * otp.b[i];
    const LaurentPolynomial z_phi = op.phi[static_cast<std::size_t>(2 * n - 1)].shifted(1);
    const LaurentPolynomial& star = op.phi_star[static_cast<std::size_t>(2 * n)];
    const LaurentPolynomial inner =
        (lam_inv * kImag / b2) * z_phi - (cplx(1.0) - cplx(otp.beta[i]) * kImag) * star;
    return (cplx(-0.5) * inner).shifted(-n);
}

/// b_n pi_n rebuilt from the OPUC system plus the level-n triple.
inline LaurentPolynomial reconstruct_b_pi(const BridgeContext& ctx, int n) {
    const OtpSystem& otp = *ctx.otp;
    const OpucSystem& op = *ctx.opuc;
    const auto i = static_cast<std::size_t>(n);
    const cplx lam_inv = cplx(1.0) / ctx.lambda(n);
    const double a2 = otp.a[i] * otp.a[i];
    const LaurentPolynomial z_phi = op.phi[static_cast<std::size_t>(2 * n - 1)].shifted(1);
    const LaurentPolynomial& star = op.phi_star[static_cast<std::size_t>(2 * n)];
    const LaurentPolynomial inner =
        (lam_inv * (cplx(1.0) + cplx(otp.beta[i]) * kImag) / a2) * z_phi - kImag * star;
    return (cplx(-0.5) * inner).shifted(-n);
}

inline ResidualReport mutual_representation_check(const BridgeContext& ctx, int n_max,
                                                  double tol = 1e-9) {
    ResidualReport rep;
    IdentityCheck& odd = rep.add("MR-ODD", "2.17", tol);
    IdentityCheck& even = rep.add("MR-EVEN", "2.18", tol);
    IdentityCheck& invs = rep.add("MR-INV-SIGMA", "2.19", tol);
    IdentityCheck& invp = rep.add("MR-INV-PI", "2.20", tol);
    const int top = std::min(n_max, ctx.max_level());
    for (int n = 1; n <= top; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const OpucSystem& op = *ctx.opuc;
        const OtpSystem& ot = *ctx.otp;
        odd.record(n, max_coeff_distance(op.phi[static_cast<std::size_t>(2 * n - 1)],
                                         reconstruct_phi_odd(ot, n)));
        even.record(n, max_coeff_distance(cplx(op.kappa_sq(2 * n)) *
                                              op.phi_star[static_cast<std::size_t>(2 * n)],
                                          reconstruct_phi_star_even(ot, n)));
        invs.record(n, max_coeff_distance(cplx(ot.a[i]) * ot.sigma[i], reconstruct_a_sigma(ctx, n)));
        invp.record(n, max_coeff_distance(cplx(ot.b[i]) * ot.pi[i], reconstruct_b_pi(ctx, n)));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Coefficient identity catalogue
// ---------------------------------------------------------------------------

inline ResidualReport coefficient_identities(const BridgeContext& ctx, double tol = 1e-9) {
    ResidualReport rep;
    const OpucSystem& op = *ctx.opuc;
    const OtpSystem& ot = *ctx.otp;
    const int top = ctx.max_level();

    IdentityCheck& ke = rep.add("KAPPA-EVEN", "2.21", tol);
    IdentityCheck& ao = rep.add("ALPHA-ODD", "2.22", tol);
    IdentityCheck& ae = rep.add("ALPHA-EVEN", "2.23", tol);
    IdentityCheck& ae0 = rep.add("ALPHA-EVEN-0", "2.23", tol);
    IdentityCheck& ko = rep.add("KAPPA-ODD", "2.24", tol);
    IdentityCheck& kp = rep.add("KAPPA-PROD", "2.28", tol);
    IdentityCheck& s4 = rep.add("SUM4", "2.29", tol);
    IdentityCheck& bid = rep.add("BETA-ID", "2.34", tol);
    IdentityCheck& lid = rep.add("LAMBDA-ID", "2.37", tol);

    for (int n = 1; n <= top; ++n) {
        const auto i = static_cast<std::size_t>(n);
        ke.record(n, std::abs(op.kappa_sq(2 * n) - 0.25 * ot.T(n)));
        ko.record(n, std::abs(op.kappa_sq(2 * n - 1) - 1.0 / ot.S(n)));
        const double a2 = ot.a[i] * ot.a[i];
        const double b2 = ot.b[i] * ot.b[i];
        kp.record(n, std::abs(op.kappa_sq(2 * n - 1) * op.kappa_sq(2 * n) - 0.25 / (a2 * b2)));
        ao.record(n, std::abs(op.alpha[static_cast<std::size_t>(2 * n - 1)] -
                              alpha_odd_from_otp(ot, n)));
        if (n == 1)
            ae0.record(n, std::abs(op.alpha[0] - alpha_even_from_otp(ot, 1)));
        else
            ae.record(n, std::abs(op.alpha[static_cast<std::size_t>(2 * n - 2)] -
                                  alpha_even_from_otp(ot, n)));
        lid.record(n, std::abs(ctx.lambda(n) + cplx(0.0, 2.0 * op.kappa_sq(2 * n))));

        // the mixed alpha/kappa/Lambda identity
        const cplx lam_inv = cplx(1.0) / ctx.lambda(n);
        const cplx al = op.alpha[static_cast<std::size_t>(2 * n - 1)];
        const cplx one_bi = cplx(1.0, ot.beta[i]);
        const double ki_odd = op.kappa_inv_sq(2 * n - 1);
        const double ki_even = op.kappa_inv_sq(2 * n);
        const cplx r = al * cplx(ot.beta[i]) +
                       0.25 * lam_inv / (a2 * b2) * one_bi * (cplx(1.0) + al) * ki_odd -
                       0.25 * (lam_inv / (a2 * b2) * one_bi + al * kImag / b2) * ki_even;
        bid.record(n, std::abs(r));
    }

    // the four-term sum: T(n) S(n+1) + X^2 + Y^2 = 4, generic levels only
    for (int n = 1; n + 1 <= ot.N; ++n) {
        const auto j = static_cast<std::size_t>(n + 1);
        const double x = ot.iota[j] + ot.beta[static_cast<std::size_t>(n)] * ot.varsigma[j] - ot.zeta[j];
        const double y = ot.jmath[j] - ot.iota[j] * ot.beta[static_cast<std::size_t>(n)] + ot.varsigma[j];
        s4.record(n, std::abs(ot.T(n) * ot.S(n + 1) + x * x + y * y - 4.0));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Level coefficient matrices and cross-coefficient recursions
// ---------------------------------------------------------------------------

/// Everything the level-n linear systems need.  Valid when the guards
/// alpha_{2n-1} != 0 and alpha_{2n} != 0 hold.
///
/// The natural unknowns of the level-n systems are the scaled subleading
/// coefficients s1 = a_{2n,2n-1} kappa_{2n-1}^{-2} and
/// s2 = a_{2n+1,2n} kappa_{2n}^{-2} (they are what the moment integrals
/// produce), and the z^{-(n+1)} pairings contribute conj(s1), so each
/// coefficient matrix splits into a part acting on s1 and a part acting on
/// conj(s1).  The combined matrices A..F (s1 real collapses the split) are
/// kept for the determinant catalogue and the 4x4 block.
struct LevelSystems {
    int n = 0;
    Matrix2C A, B, C, D, E, F, P, Q;
    Matrix2C A_s, A_c, B_s, B_c;       // column-1 split: *_s acts on (s1,s2), *_c on (conj(s1),0)
    std::array<cplx, 2> gamma{}, eta{};
    std::array<cplx, 2> subleads{};    // raw (a_{2n,2n-1}, a_{2n+1,2n})
    std::array<cplx, 2> s{};           // scaled (s1, s2)
    std::array<cplx, 2> rhs_ij{};      // (iota - eta1, jmath - eta2)
    std::array<cplx, 2> rhs_sz{};      // (varsigma + gamma1, zeta + gamma2)
    std::array<double, 4> data{};      // (iota, jmath, varsigma, zeta)_{n+1}
    cplx alpha_odd, alpha_even;
    double beta = 0.0;
    double a_inv2 = 0.0, b_inv2 = 0.0;
    cplx lam_inv;

    std::array<cplx, 2> model_ij() const {  // predicted (iota, jmath)
        const auto v = mat_vec(A_s, s);
        const cplx cs = std::conj(s[0]);
        return {v[0] + A_c.e11 * cs + eta[0], v[1] + A_c.e21 * cs + eta[1]};
    }
    std::array<cplx, 2> model_sz() const {  // predicted (varsigma, zeta)
        const auto v = mat_vec(B_s, s);
        const cplx cs = std::conj(s[0]);
        return {v[0] + B_c.e11 * cs - gamma[0], v[1] + B_c.e21 * cs - gamma[1]};
    }
};

/// The level systems scale like 1/alpha_{2n-1}; below this floor a double
/// cannot hold the determinant and solve cancellations at the catalogue
/// tolerances, so such levels are enumerated as skips rather than checked
/// against meaningless digits.
inline constexpr double kAlphaConditioningFloor = 1e-3;

inline std::optional<std::string> level_guard(const BridgeContext& ctx, int n) {
    const OpucSystem& op = *ctx.opuc;
    if (2 * n + 1 > op.N || n + 1 > ctx.otp->N) return "index out of range";
    const double odd = std::abs(op.alpha[static_cast<std::size_t>(2 * n - 1)]);
    if (odd < kAlphaZeroGuard) return "alpha_odd ~ 0";
    if (odd < kAlphaConditioningFloor) return "alpha_odd below conditioning floor";
    if (std::abs(op.alpha[static_cast<std::size_t>(2 * n)]) < kAlphaZeroGuard)
        return "alpha_even ~ 0";
    return std::nullopt;
}

inline LevelSystems build_level_systems(const BridgeContext& ctx, int n) {
    const OpucSystem& op = *ctx.opuc;
    const OtpSystem& ot = *ctx.otp;
    LevelSystems L;
    L.n = n;
    const auto i = static_cast<std::size_t>(n);
    L.alpha_odd = op.alpha[static_cast<std::size_t>(2 * n - 1)];
    L.alpha_even = op.alpha[static_cast<std::size_t>(2 * n)];
    L.beta = ot.beta[i];
    L.a_inv2 = 1.0 / (ot.a[i] * ot.a[i]);
    L.b_inv2 = 1.0 / (ot.b[i] * ot.b[i]);
    L.lam_inv = cplx(1.0) / ctx.lambda(n);

    const cplx u = cplx(1.0) / L.alpha_odd;
    const cplx p = L.lam_inv * L.a_inv2 * L.b_inv2;
    const cplx one_bi = cplx(1.0, L.beta);
    const cplx one_mbi = cplx(1.0, -L.beta);
    const cplx w1 = p * u * kImag + L.a_inv2 * one_mbi;
    const cplx w2 = p * one_bi * u + L.b_inv2 * kImag;
    const cplx quarter(0.25);
    const cplx quarter_over_i = cplx(0.0, -0.25);  // 1/(4i)

    L.A = Matrix2C{quarter * p * (u + cplx(1.0)) * kImag, -quarter * w1,
                   quarter * p * one_bi * (u + cplx(1.0)), -quarter * w2};
    L.B = Matrix2C{quarter * p * (u - cplx(1.0)), quarter_over_i * cplx(-1.0) * w1,
                   quarter_over_i * p * one_bi * (u - cplx(1.0)), quarter_over_i * cplx(-1.0) * w2};
    L.A_s = Matrix2C{quarter * p * u * kImag, L.A.e12, quarter * p * one_bi * u, L.A.e22};
    L.A_c = Matrix2C{quarter * p * kImag, cplx(0.0), quarter * p * one_bi, cplx(0.0)};
    L.B_s = Matrix2C{quarter * p * u, L.B.e12, quarter_over_i * p * one_bi * u, L.B.e22};
    L.B_c = Matrix2C{-quarter * p, cplx(0.0), -quarter_over_i * p * one_bi, cplx(0.0)};
    L.C = Matrix2C{L.A.e11, L.A.e12, L.B.e11, L.B.e12};
    L.D = Matrix2C{L.A.e21, L.A.e22, L.B.e21, L.B.e22};
    L.E = Matrix2C{L.A.e11, L.A.e12, L.B.e21, L.B.e22};
    L.F = Matrix2C{L.A.e21, L.A.e22, L.B.e11, L.B.e12};

    const cplx half_one_bi = cplx(0.5) * one_bi;
    L.P = Matrix2C{half_one_bi, cplx(0.0, -0.5), cplx(0.5) * one_mbi, cplx(0.0, 0.5)};
    L.Q = Matrix2C{cplx(0.5) * cplx(L.beta, -1.0), cplx(-0.5),
                   cplx(0.5) * cplx(L.beta, 1.0), cplx(-0.5)};

    // conj(alpha_even)^{-1} (kappa_{2n}^{-2} - kappa_{2n+1}^{-2}) in its
    // cancellation-free form kappa_{2n}^{-2} alpha_even
    const cplx tail_core = op.kappa_inv_sq(2 * n) * L.alpha_even;
    L.eta = {quarter * L.a_inv2 * one_mbi * tail_core, quarter * L.b_inv2 * tail_core * kImag};
    L.gamma = {quarter_over_i * L.a_inv2 * one_mbi * tail_core, quarter * L.b_inv2 * tail_core};

    L.subleads = {op.a_sub(2 * n), op.a_sub(2 * n + 1)};
    L.s = {op.a_sub(2 * n) * op.kappa_inv_sq(2 * n - 1),
           op.a_sub(2 * n + 1) * op.kappa_inv_sq(2 * n)};
    const auto j = static_cast<std::size_t>(n + 1);
    L.data = {ot.iota[j], ot.jmath[j], ot.varsigma[j], ot.zeta[j]};
    L.rhs_ij = {cplx(L.data[0]) - L.eta[0], cplx(L.data[1]) - L.eta[1]};
    L.rhs_sz = {cplx(L.data[2]) + L.gamma[0], cplx(L.data[3]) + L.gamma[1]};
    return L;
}

/// One scalar row of the level system in the unknowns
/// (s1, s2, conj(s1), conj(s2)): cs * s1 + cc * conj(s1) + c2 * s2 = v.
struct LevelRow {
    cplx cs, cc, c2, v;
};

inline LevelRow level_row(const LevelSystems& L, int which) {
    switch (which) {
        case 0: return {L.A_s.e11, L.A_c.e11, L.A_s.e12, L.rhs_ij[0]};  // iota
        case 1: return {L.A_s.e21, L.A_c.e21, L.A_s.e22, L.rhs_ij[1]};  // jmath
        case 2: return {L.B_s.e11, L.B_c.e11, L.B_s.e12, L.rhs_sz[0]};  // varsigma
        default: return {L.B_s.e21, L.B_c.e21, L.B_s.e22, L.rhs_sz[1]}; // zeta
    }
}

/// Solve a two-row pairing for (s1, s2).  Each complex equation splits into
/// two real ones, so a pairing is an exactly determined 4x4 real system in
/// (Re s1, Im s1, Re s2, Im s2); the conj(s1) column folds in linearly.
/// The (iota,zeta) and (jmath,varsigma) pairings lose rank at beta_n = 0;
/// when the level data are real the surviving 2x2 block still determines
/// (Re s1, Re s2), and that fallback is used.  Returns nullopt when the
/// pairing genuinely cannot be solved.
inline std::optional<std::array<cplx, 2>> solve_pairing(const LevelSystems& L, int r1, int r2) {
    MatrixNC<4> m{};
    std::array<cplx, 4> rhs{};
    double row_norm_prod = 1.0;
    int row = 0;
    for (int which : {r1, r2}) {
        const LevelRow r = level_row(L, which);
        auto put = [&m](int rr, int cc, double v) {
            m[static_cast<std::size_t>(rr * 4 + cc)] = cplx(v);
        };
        put(row, 0, r.cs.real() + r.cc.real());
        put(row, 1, -r.cs.imag() + r.cc.imag());
        put(row, 2, r.c2.real());
        put(row, 3, -r.c2.imag());
        rhs[static_cast<std::size_t>(row)] = cplx(r.v.real());
        put(row + 1, 0, r.cs.imag() + r.cc.imag());
        put(row + 1, 1, r.cs.real() - r.cc.real());
        put(row + 1, 2, r.c2.imag());
        put(row + 1, 3, r.c2.real());
        rhs[static_cast<std::size_t>(row + 1)] = cplx(r.v.imag());
        row += 2;
    }
    for (int rr = 0; rr < 4; ++rr) {
        double s = 0.0;
        for (int cc = 0; cc < 4; ++cc) s += std::norm(m[static_cast<std::size_t>(rr * 4 + cc)]);
        row_norm_prod *= std::sqrt(s);
    }
    const double d = std::abs(det_n<4>(m));
    if (row_norm_prod > 0.0 && d / row_norm_prod > 1e-8) {
        const auto x = solve_n<4>(m, rhs);
        return std::array<cplx, 2>{cplx(x[0].real(), x[1].real()), cplx(x[2].real(), x[3].real())};
    }
    // rank-deficient refined system: real-data fallback on the Re block
    const double data_imag = std::abs(L.s[0].imag()) + std::abs(L.s[1].imag());
    if (data_imag > 1e-10) return std::nullopt;
    const LevelRow p = level_row(L, r1);
    const LevelRow q = level_row(L, r2);
    const Matrix2C re_block{cplx(p.cs.real() + p.cc.real()), cplx(p.c2.real()),
                            cplx(q.cs.real() + q.cc.real()), cplx(q.c2.real())};
    const Matrix2C im_block{cplx(p.cs.imag() + p.cc.imag()), cplx(p.c2.imag()),
                            cplx(q.cs.imag() + q.cc.imag()), cplx(q.c2.imag())};
    // pick whichever half of the split equations is better conditioned
    const Matrix2C& blk = std::abs(re_block.det()) >= std::abs(im_block.det()) ? re_block : im_block;
    const std::array<cplx, 2> v = (&blk == &re_block)
                                      ? std::array<cplx, 2>{cplx(p.v.real()), cplx(q.v.real())}
                                      : std::array<cplx, 2>{cplx(p.v.imag()), cplx(q.v.imag())};
    if (std::abs(blk.det()) < 1e-14) return std::nullopt;
    const auto x = solve2(blk, v);
    return std::array<cplx, 2>{cplx(x[0].real(), 0.0), cplx(x[1].real(), 0.0)};
}

/// Residuals of the four expansion-coefficient recursions at level n.
inline ResidualReport seven_coefficient_recursion(const BridgeContext& ctx, double tol = 1e-8) {
    ResidualReport rep;
    IdentityCheck& ci = rep.add("SEVEN-REC-IOTA", "5.6", tol);
    IdentityCheck& cj = rep.add("SEVEN-REC-JMATH", "5.7", tol);
    IdentityCheck& cs = rep.add("SEVEN-REC-VARSIGMA", "5.8", tol);
    IdentityCheck& cz = rep.add("SEVEN-REC-ZETA", "5.9", tol);
    const int top = std::min(ctx.otp->N - 1, (ctx.opuc->N - 1) / 2);
    for (int n = 1; n <= top; ++n) {
        if (auto g = level_guard(ctx, n)) {
            for (IdentityCheck* c : {&ci, &cj, &cs, &cz}) c->skip(n, *g);
            continue;
        }
        const LevelSystems L = build_level_systems(ctx, n);
        const auto ij = L.model_ij();
        const auto sz = L.model_sz();
        ci.record(n, std::abs(cplx(L.data[0]) - ij[0]));
        cj.record(n, std::abs(cplx(L.data[1]) - ij[1]));
        cs.record(n, std::abs(cplx(L.data[2]) - sz[0]));
        cz.record(n, std::abs(cplx(L.data[3]) - sz[1]));
    }
    return rep;
}

/// Solve the A-system for the two subleading coefficients and compare with
/// the directly stored values; also pin the closed form of |A|.
inline ResidualReport sublead_solve(const BridgeContext& ctx, double tol_solve = 1e-9,
                                    double tol_det = 1e-11) {
    ResidualReport rep;
    IdentityCheck& solve = rep.add("SUBLEAD-SOLVE", "5.18", tol_solve);
    IdentityCheck& det = rep.add("DETS-A", "5.17", tol_det);
    const int top = std::min(ctx.otp->N - 1, (ctx.opuc->N - 1) / 2);
    for (int n = 1; n <= top; ++n) {
        if (auto g = level_guard(ctx, n)) {
            solve.skip(n, *g);
            det.skip(n, *g);
            continue;
        }
        const LevelSystems L = build_level_systems(ctx, n);
        const cplx closed =
            cplx(0.125) * L.a_inv2 * L.b_inv2 * (cplx(1.0) / L.alpha_odd + cplx(1.0)) * kImag;
        det.record(n, scaled_residual(std::abs(L.A.det() - closed), std::abs(closed)));
        const auto x = solve_pairing(L, 0, 1);
        if (!x) {
            solve.skip(n, "system rank-deficient");
            continue;
        }
        const cplx rec1 = (*x)[0] * ctx.opuc->kappa_sq(2 * n - 1);
        const cplx rec2 = (*x)[1] * ctx.opuc->kappa_sq(2 * n);
        solve.record(n, std::max(std::abs(rec1 - L.subleads[0]), std::abs(rec2 - L.subleads[1])));
    }
    return rep;
}

/// Closed-form determinants of the five remaining coefficient matrices, the
/// cross-pairing consistency chain, and the determinant identities.
inline ResidualReport determinant_catalog(const BridgeContext& ctx, double tol_det = 1e-11,
                                          double tol_chain = 1e-8, double tol_id = 1e-9) {
    ResidualReport rep;
    IdentityCheck& db = rep.add("DETS-B", "5.20", tol_det);
    IdentityCheck& dc = rep.add("DETS-C", "5.21", tol_det);
    IdentityCheck& dd = rep.add("DETS-D", "5.22", tol_det);
    IdentityCheck& de = rep.add("DETS-E", "5.23", tol_det);
    IdentityCheck& df = rep.add("DETS-F", "5.24", tol_det);
    IdentityCheck& chain = rep.add("CONSIST", "5.25", tol_chain);
    IdentityCheck& chain_f = rep.add("CONSIST-F", "5.26", tol_chain);
    IdentityCheck& det_id = rep.add("DET-ID", "5.59", tol_id);
    IdentityCheck& det_mat = rep.add("DET-ID-MAT", "5.66", tol_id);
    const int top = std::min(ctx.otp->N - 1, (ctx.opuc->N - 1) / 2);
    for (int n = 1; n <= top; ++n) {
        if (auto g = level_guard(ctx, n)) {
            for (IdentityCheck* c : {&db, &dc, &dd, &de, &df, &chain, &chain_f, &det_id, &det_mat})
                c->skip(n, *g);
            continue;
        }
        const LevelSystems L = build_level_systems(ctx, n);
        const cplx u = cplx(1.0) / L.alpha_odd;
        const cplx one_bi = cplx(1.0, L.beta);
        const cplx eighth(0.125);
        const cplx eighth_over_i = cplx(0.0, -0.125);

        const cplx cb = -eighth * L.a_inv2 * L.b_inv2 * (u - cplx(1.0)) * kImag;
        const cplx cc = eighth * L.lam_inv * L.a_inv2 * L.a_inv2 * L.b_inv2 * u * one_bi;
        // the (1 + beta i) factor survives the column reduction; it is
        // invisible on real data where beta vanishes
        const cplx cd = -eighth * L.lam_inv * L.a_inv2 * L.b_inv2 * L.b_inv2 * u * one_bi;
        const cplx ce = eighth_over_i * L.lam_inv * L.a_inv2 * L.b_inv2 * u *
                        (L.a_inv2 * one_bi + L.b_inv2);
        const cplx cf = -eighth_over_i * L.lam_inv * L.a_inv2 * L.a_inv2 * L.b_inv2 * u * L.beta *
                        cplx(L.beta, -1.0);
        db.record(n, scaled_residual(std::abs(L.B.det() - cb), std::abs(cb)));
        dc.record(n, scaled_residual(std::abs(L.C.det() - cc), std::abs(cc)));
        dd.record(n, scaled_residual(std::abs(L.D.det() - cd), std::abs(cd)));
        de.record(n, scaled_residual(std::abs(L.E.det() - ce), std::abs(ce)));
        df.record(n, scaled_residual(std::abs(L.F.det() - cf), std::abs(cf)));

        // every admissible pairing must recover the same subleads
        std::vector<std::array<cplx, 2>> solves;
        const int pairs[5][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}};  // A, B, C, D, E
        for (const auto& pr : pairs)
            if (auto x = solve_pairing(L, pr[0], pr[1])) solves.push_back(*x);
        double spread = 0.0;
        for (std::size_t pi = 0; pi < solves.size(); ++pi)
            for (std::size_t pj = 0; pj < pi; ++pj)
                spread = std::max(spread, std::max(std::abs(solves[pi][0] - solves[pj][0]),
                                                   std::abs(solves[pi][1] - solves[pj][1])));
        chain.record(n, spread);
        if (std::abs(L.beta) < kAlphaZeroGuard) {
            chain_f.skip(n, "beta ~ 0 (F singular)");
        } else if (auto xf = solve_pairing(L, 1, 2)) {  // F: (jmath, varsigma)
            double sf = 0.0;
            for (const auto& s : solves)
                sf = std::max(sf, std::max(std::abs((*xf)[0] - s[0]), std::abs((*xf)[1] - s[1])));
            chain_f.record(n, sf);
        } else {
            chain_f.skip(n, "system rank-deficient");
        }

        // with the actual determinant of D the (1 + beta i) factor is
        // already inside it, so the alternating sum is unweighted
        const cplx t1 = L.A.det() * L.B.det();
        const cplx t2 = L.C.det() * L.D.det();
        const cplx t3 = L.E.det() * L.F.det();
        det_id.record(n, scaled_residual(std::abs(t1 - t2 + t3),
                                         std::max(std::abs(t1), std::max(std::abs(t2), std::abs(t3)))));
        const Matrix2C lhs = L.F * L.E.inverse();
        const cplx s = cplx(1.0) / L.E.det();
        const Matrix2C rhs = s * Matrix2C{L.D.det(), L.A.det(), L.B.det(), L.C.det()};
        det_mat.record(n, scaled_residual((lhs - rhs).norm_inf(), rhs.norm_inf()));
    }
    return rep;
}

/// The 4x4 block system: determinant pin, the alpha relation, and recovery
/// of the four cross coefficients from OPUC-side data alone.  The block
/// matrix [[P,Q],[B,-A]] is nonsingular, but A and B do not commute, so its
/// bottom rows applied to the true coefficient vector give
/// A gamma + B eta + (BA - AB)-terms in the scaled subleads; the recovery
/// right-hand side is evaluated accordingly.  The plain
/// (alpha; A gamma + B eta) right-hand side is recorded as data only.
inline ResidualReport block_recovery(const BridgeContext& ctx, double tol_det = 1e-11,
                                     double tol_rec = 1e-9) {
    ResidualReport rep;
    IdentityCheck& det = rep.add("BLOCK-DET", "5.47", tol_det);
    IdentityCheck& alrel = rep.add("BLOCK-ALPHA", "5.29", tol_rec);
    IdentityCheck& rec = rep.add("BLOCK", "5.33", tol_rec);
    IdentityCheck& printed = rep.add("BLOCK-AS-PRINTED", "5.33", tol_rec);
    printed.informational = true;
    printed.note = "plain right-hand side (alpha; A gamma + B eta); recorded, not gated";
    const int top = std::min(ctx.otp->N - 1, (ctx.opuc->N - 1) / 2);
    for (int n = 1; n <= top; ++n) {
        if (auto g = level_guard(ctx, n)) {
            for (IdentityCheck* c : {&det, &alrel, &rec}) c->skip(n, *g);
            continue;
        }
        const LevelSystems L = build_level_systems(ctx, n);

        MatrixNC<4> blk{};
        auto put = [&blk](int r, int c, const Matrix2C& m) {
            blk[static_cast<std::size_t>(r * 4 + c)] = m.e11;
            blk[static_cast<std::size_t>(r * 4 + c + 1)] = m.e12;
            blk[static_cast<std::size_t>((r + 1) * 4 + c)] = m.e21;
            blk[static_cast<std::size_t>((r + 1) * 4 + c + 1)] = m.e22;
        };
        put(0, 0, L.P);
        put(0, 2, L.Q);
        put(2, 0, L.B);
        put(2, 2, cplx(-1.0) * L.A);
        const cplx closed = cplx(-0.125) * L.a_inv2 * L.b_inv2 * cplx(1.0, L.beta);
        det.record(n, std::abs(det_n<4>(blk) - closed));

        const auto pv = mat_vec(L.P, {cplx(L.data[0]), cplx(L.data[1])});
        const auto qv = mat_vec(L.Q, {cplx(L.data[2]), cplx(L.data[3])});
        alrel.record(n, std::max(std::abs(pv[0] + qv[0] - L.alpha_even),
                                 std::abs(pv[1] + qv[1] - std::conj(L.alpha_even))));

        // bottom right-hand side evaluated from the sublead model
        const auto ij = L.model_ij();
        const auto sz = L.model_sz();
        const auto bij = mat_vec(L.B, ij);
        const auto asz = mat_vec(L.A, sz);
        const std::array<cplx, 4> rhs{L.alpha_even, std::conj(L.alpha_even), bij[0] - asz[0],
                                      bij[1] - asz[1]};
        const auto x = solve_n<4>(blk, rhs);
        double worst = 0.0;
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst,
                             std::abs(x[static_cast<std::size_t>(k)] -
                                      cplx(L.data[static_cast<std::size_t>(k)])));
        rec.record(n, worst);

        // plain right-hand side, recorded as data
        const auto ag = mat_vec(L.A, L.gamma);
        const auto be = mat_vec(L.B, L.eta);
        const std::array<cplx, 4> rhs_printed{L.alpha_even, std::conj(L.alpha_even), ag[0] + be[0],
                                              ag[1] + be[1]};
        const auto xp = solve_n<4>(blk, rhs_printed);
        double worst_p = 0.0;
        for (int k = 0; k < 4; ++k)
            worst_p = std::max(worst_p,
                               std::abs(xp[static_cast<std::size_t>(k)] -
                                        cplx(L.data[static_cast<std::size_t>(k)])));
        printed.record(n, worst_p);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Delta matrix of the OTP Riemann-Hilbert reflection (level n >= 1)
// ---------------------------------------------------------------------------

inline Matrix2C delta_matrix(const BridgeContext& ctx, int n) {
    const cplx al = alpha_even_from_otp(*ctx.otp, n);
    return Matrix2C{-al, cplx(kappa_odd_inv_sq_from_otp(*ctx.otp, n)),
                    cplx(-kappa_even_sq_from_otp(*ctx.otp, n - 1)), -std::conj(al)};
}

inline ResidualReport delta_checks(const BridgeContext& ctx, int n_max, double tol_det = 1e-10,
                                   double tol_match = 1e-10) {
    ResidualReport rep;
    IdentityCheck& dd = rep.add("DELTA-DET", "4.29", tol_det);
    IdentityCheck& dm = rep.add("DELTA-MATCH", "4.24", tol_match);
    const int top = std::min(n_max, ctx.max_level());
    for (int n = 1; n <= top; ++n) {
        const Matrix2C d = delta_matrix(ctx, n);
        dd.record(n, std::abs(d.det() - cplx(1.0)));
        const cplx al = ctx.opuc->alpha[static_cast<std::size_t>(2 * n - 2)];
        dm.record(n, std::max(std::abs(d.e11 + al), std::abs(d.e22 + std::conj(al))));
    }
    return rep;
}

}  // namespace szego

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szego/bridge.hpp"
#include "szego/measure.hpp"
#include "szego/opuc.hpp"
#include "szego/otp.hpp"

namespace szego {

/// Admissibility handling: Strict keeps the inequalities of the
/// reconstruction inequalities strict (alpha_even = 0 is rejected); Closed
/// admits the boundary and reconstructs with alpha_even = 0.  Natural
/// measures (Lebesgue among them) sit exactly on the boundary, which is why
/// the closed mode exists.
enum class FavardMode { Strict, Closed };

inline const char* favard_mode_name(FavardMode m) {
    return m == FavardMode::Strict ? "strict" : "closed";
}

/// Free phases of the even-index recursion coefficients; the triple data
/// only determine their moduli.
struct PhasePolicy {
    enum class Kind { PositiveReal, FixedAngle, SuppliedList } kind = Kind::PositiveReal;
    double angle = 0.0;
    std::vector<double> angles;  // per even index n = 0, 1, ...

    static PhasePolicy positive_real() { return {}; }
    static PhasePolicy fixed_angle(double a) { return {Kind::FixedAngle, a, {}}; }
    static PhasePolicy supplied(std::vector<double> as) {
        return {Kind::SuppliedList, 0.0, std::move(as)};
    }

    cplx unit(int n) const {
        switch (kind) {
            case Kind::PositiveReal: return cplx(1.0);
            case Kind::FixedAngle: return std::polar(1.0, angle);
            case Kind::SuppliedList:
                if (n >= static_cast<int>(angles.size()))
                    throw std::invalid_argument("phase policy: supplied list too short for index " +
                                                std::to_string(n));
                return std::polar(1.0, angles[static_cast<std::size_t>(n)]);
        }
        return cplx(1.0);
    }
};

struct TripleSeq {
    std::vector<double> a, b, beta;  // index 0..N with a0 = b0 = 1, beta0 = 0

    int N() const { return static_cast<int>(a.size()) - 1; }

    double S(int n) const {
        return a[static_cast<std::size_t>(n)] * a[static_cast<std::size_t>(n)] +
               b[static_cast<std::size_t>(n)] * b[static_cast<std::size_t>(n)] *
                   (1.0 + beta[static_cast<std::size_t>(n)] * beta[static_cast<std::size_t>(n)]);
    }
    double T(int n) const {
        const double an = a[static_cast<std::size_t>(n)];
        const double bn = b[static_cast<std::size_t>(n)];
        const double be = beta[static_cast<std::size_t>(n)];
        return (1.0 + be * be) / (an * an) + 1.0 / (bn * bn);
    }

    void validate_conventions() const {
        if (a.size() < 2 || a.size() != b.size() || a.size() != beta.size())
            throw std::invalid_argument("TripleSeq: need matched sequences with N >= 1");
        if (std::abs(a[0] - 1.0) > 1e-12 || std::abs(b[0] - 1.0) > 1e-12 ||
            std::abs(beta[0]) > 1e-12)
            throw std::invalid_argument("TripleSeq: conventions a0 = b0 = 1, beta0 = 0 violated");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] > 0.0) || !(b[i] > 0.0))
                throw std::invalid_argument("TripleSeq: a_n, b_n must be positive (index " +
                                            std::to_string(i) + ")");
    }
};

struct SevenSeq {
    TripleSeq triple;
    std::vector<double> iota, jmath, varsigma, zeta;  // index 0 unused

    int N() const { return triple.N(); }

    void validate_conventions() const {
        triple.validate_conventions();
        const std::size_t want = triple.a.size();
        if (iota.size() != want || jmath.size() != want || varsigma.size() != want ||
            zeta.size() != want)
            throw std::invalid_argument("SevenSeq: cross-coefficient sequences mismatched");
    }
};

inline TripleSeq extract_triple(const OtpSystem& otp) { return {otp.a, otp.b, otp.beta}; }

inline SevenSeq extract_seven(const OtpSystem& otp) {
    return {extract_triple(otp), otp.iota, otp.jmath, otp.varsigma, otp.zeta};
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

struct AdmissibilityEntry {
    int n;
    double kappa_ratio_sq;   // kappa_{2n}^2 / kappa_{2n+1}^2 (kappa_0 = 1)
    bool boundary = false;   // ratio = 1 within tolerance (alpha_even = 0)
    bool violated = false;   // ratio > 1: no measure matches
    std::string clause;      // which clause failed / which solves an index enables
};

struct AdmissibilityReport {
    std::vector<AdmissibilityEntry> entries;
    bool ok(FavardMode mode) const {
        for (const auto& e : entries) {
            if (e.violated) return false;
            if (e.boundary && mode == FavardMode::Strict) return false;
        }
        return true;
    }
    std::optional<int> first_rejected(FavardMode mode) const {
        for (const auto& e : entries)
            if (e.violated || (e.boundary && mode == FavardMode::Strict)) return e.n;
        return std::nullopt;
    }
};

inline constexpr double kBoundaryTol = 1e-12;

/// kappa ratios for even-index moduli: the n = 0 instance is pinned by the
/// kappa_0 = 1 normalization, the rest follow the printed inequality.
inline AdmissibilityReport validate_triple(const TripleSeq& t) {
    t.validate_conventions();
    AdmissibilityReport rep;
    for (int n = 0; n + 1 <= t.N(); ++n) {
        AdmissibilityEntry e;
        e.n = n;
        e.kappa_ratio_sq = n == 0 ? t.S(1) : 0.25 * t.T(n) * t.S(n + 1);
        if (e.kappa_ratio_sq > 1.0 + kBoundaryTol) {
            e.violated = true;
            e.clause = "norm-sum inequality violated (no measure attains these norms)";
        } else if (e.kappa_ratio_sq >= 1.0 - kBoundaryTol) {
            e.boundary = true;
            e.clause = "equality: admissible only in closed mode (alpha_even = 0)";
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Weak reconstruction: triple data + a phase policy
// ---------------------------------------------------------------------------

struct FavardResult {
    std::vector<cplx> alphas;          // alpha_0 .. alpha_{2N-1}
    AdmissibilityReport admissibility;
    std::optional<CircleMeasure> measure;
};

inline cplx alpha_odd_from_triple(const TripleSeq& t, int n) {
    const auto i = static_cast<std::size_t>(n);
    const double a2 = t.a[i] * t.a[i];
    const double b2 = t.b[i] * t.b[i];
    const double be = t.beta[i];
    const double kinv2 = 4.0 / t.T(n);
    return cplx(0.25 * kinv2 * (1.0 / b2 - (1.0 - be * be) / a2), -0.5 * kinv2 * be / a2);
}

inline FavardResult weak_favard(const TripleSeq& t, const PhasePolicy& policy,
                                FavardMode mode = FavardMode::Strict, int M = 4096, int K = 256) {
    FavardResult out;
    out.admissibility = validate_triple(t);
    if (auto bad = out.admissibility.first_rejected(mode))
        throw std::domain_error(std::string("weak_favard: admissibility rejected at index ") +
                                std::to_string(*bad) + " (" + favard_mode_name(mode) + " mode)");
    const int N = t.N();
    out.alphas.assign(static_cast<std::size_t>(2 * N), cplx(0.0));
    for (int n = 1; n <= N; ++n) {
        const cplx a = alpha_odd_from_triple(t, n);
        if (std::abs(a) >= 1.0)
            throw std::domain_error("weak_favard: |alpha_odd| >= 1 at level " + std::to_string(n));
        out.alphas[static_cast<std::size_t>(2 * n - 1)] = a;
    }
    for (int n = 0; n + 1 <= N; ++n) {
        const double ratio = out.admissibility.entries[static_cast<std::size_t>(n)].kappa_ratio_sq;
        const double mod2 = std::max(0.0, 1.0 - ratio);
        out.alphas[static_cast<std::size_t>(2 * n)] = std::sqrt(mod2) * policy.unit(n);
    }
    out.measure = CircleMeasure::bernstein_szego(out.alphas, M, K);
    return out;
}

// ---------------------------------------------------------------------------
// Strong reconstruction: the full seven-tuple data
// ---------------------------------------------------------------------------

struct StrongValidationEntry {
    int n;
    double equality_residual;  // | |alpha_even|^2 - (1 - kappa ratio) |
    bool uniqueness_ok = true;  // beta_n != 0 or a^2/b^2 + beta^2 != 1
    std::string enabled_solves;
};

struct StrongFavardResult {
    std::vector<cplx> alphas;
    AdmissibilityReport admissibility;
    std::vector<StrongValidationEntry> validation;
    std::optional<CircleMeasure> measure;
    double roundtrip_alpha_residual = 0.0;
    double roundtrip_seven_residual = 0.0;
};

inline cplx alpha_even_from_seven(const SevenSeq& s, int n) {
    const auto j = static_cast<std::size_t>(n + 1);
    const double be = s.triple.beta[static_cast<std::size_t>(n)];
    const double x = s.iota[j] + be * s.varsigma[j] - s.zeta[j];
    const double y = s.jmath[j] - s.iota[j] * be + s.varsigma[j];
    const double factor = (n == 0) ? 1.0 : 0.5;  // level-0 carries full-size coefficients
    return cplx(factor * x, -factor * y);
}

inline StrongFavardResult strong_favard(const SevenSeq& s, FavardMode mode = FavardMode::Strict,
                                        int M = 4096, int K = 256) {
    s.validate_conventions();
    StrongFavardResult out;
    out.admissibility = validate_triple(s.triple);
    const int N = s.N();

    for (int n = 0; n + 1 <= N; ++n) {
        StrongValidationEntry v;
        v.n = n;
        const cplx ae = alpha_even_from_seven(s, n);
        const double ratio = out.admissibility.entries[static_cast<std::size_t>(n)].kappa_ratio_sq;
        v.equality_residual = std::abs(std::norm(ae) - std::max(0.0, 1.0 - ratio));
        if (n >= 1) {
            const auto i = static_cast<std::size_t>(n);
            const double r = s.triple.a[i] * s.triple.a[i] / (s.triple.b[i] * s.triple.b[i]) +
                             s.triple.beta[i] * s.triple.beta[i];
            v.uniqueness_ok = std::abs(s.triple.beta[i]) > kBoundaryTol ||
                              std::abs(r - 1.0) > kBoundaryTol;
            v.enabled_solves = !v.uniqueness_ok
                                   ? "none (alpha_odd = 0)"
                                   : (std::abs(s.triple.beta[i]) > kBoundaryTol ? "A,B,C,D,E,F"
                                                                                : "A,B,C,D,E");
        }
        out.validation.push_back(std::move(v));
    }
    for (const auto& v : out.validation) {
        if (v.equality_residual > 1e-6)
            throw std::domain_error("strong_favard: seven-tuple inconsistent with the norm data "
                                    "at index " + std::to_string(v.n) +
                                    " (squared-modulus equality violated)");
        if (mode == FavardMode::Strict && !v.uniqueness_ok)
            throw std::domain_error("strong_favard: uniqueness clause violated at index " +
                                    std::to_string(v.n) +
                                    " (beta = 0 and a^2/b^2 + beta^2 = 1)");
    }
    if (auto bad = out.admissibility.first_rejected(mode))
        throw std::domain_error(std::string("strong_favard: admissibility rejected at index ") +
                                std::to_string(*bad) + " (" + favard_mode_name(mode) + " mode)");

    out.alphas.assign(static_cast<std::size_t>(2 * N), cplx(0.0));
    for (int n = 1; n <= N; ++n) {
        const cplx a = alpha_odd_from_triple(s.triple, n);
        if (std::abs(a) >= 1.0)
            throw std::domain_error("strong_favard: |alpha_odd| >= 1 at level " + std::to_string(n));
        out.alphas[static_cast<std::size_t>(2 * n - 1)] = a;
    }
    for (int n = 0; n + 1 <= N; ++n) {
        cplx ae = alpha_even_from_seven(s, n);
        if (mode == FavardMode::Closed && std::abs(ae) < kBoundaryTol) ae = cplx(0.0);
        if (std::abs(ae) >= 1.0)
            throw std::domain_error("strong_favard: |alpha_even| >= 1 at index " +
                                    std::to_string(n));
        out.alphas[static_cast<std::size_t>(2 * n)] = ae;
    }
    out.measure = CircleMeasure::bernstein_szego(out.alphas, M, K);

    // automatic round-trip verification
    const OpucSystem op = build_opuc(*out.measure, 2 * N);
    const OtpSystem ot = build_otp(*out.measure, N);
    for (int k = 0; k < 2 * N; ++k)
        out.roundtrip_alpha_residual =
            std::max(out.roundtrip_alpha_residual,
                     std::abs(op.alpha[static_cast<std::size_t>(k)] -
                              out.alphas[static_cast<std::size_t>(k)]));
    const SevenSeq back = extract_seven(ot);
    double worst = 0.0;
    for (int n = 0; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n);
        worst = std::max(worst, std::abs(back.triple.a[i] - s.triple.a[i]));
        worst = std::max(worst, std::abs(back.triple.b[i] - s.triple.b[i]));
        worst = std::max(worst, std::abs(back.triple.beta[i] - s.triple.beta[i]));
        if (n >= 1 && n < N) {  // the top level depends on data beyond the truncation
            worst = std::max(worst, std::abs(back.iota[i] - s.iota[i]));
            worst = std::max(worst, std::abs(back.jmath[i] - s.jmath[i]));
            worst = std::max(worst, std::abs(back.varsigma[i] - s.varsigma[i]));
            worst = std::max(worst, std::abs(back.zeta[i] - s.zeta[i]));
        }
    }
    out.roundtrip_seven_residual = worst;
    return out;
}

// ---------------------------------------------------------------------------
// Bernstein-Szego densities through the OTP data
// ---------------------------------------------------------------------------

struct BsDensityComparison {
    std::vector<double> theta;
    std::vector<double> otp_path;   // density through sigma_m, pi_m
    std::vector<double> opuc_path;  // density through 1/|phi_n|^2
    double max_gap = 0.0;
};

/// dmu_n / (dtheta/2pi) evaluated both through the level-m OTP combination
/// and through the orthonormal OPUC polynomial.  The even-case prefactor is
/// the norm-sum T(m) = 4 kappa_{2m}^2 forced by |phi_{2m}| on the circle.
inline BsDensityComparison bernstein_szego_density(const OtpSystem& otp, const OpucSystem& opuc,
                                                   int n, int grid = 512) {
    if (n < 1) throw std::invalid_argument("bernstein_szego_density: n >= 1 required");
    BsDensityComparison out;
    const bool odd = (n % 2 == 1);
    const int m = odd ? (n + 1) / 2 : n / 2;
    if (m > otp.N || n > opuc.N)
        throw std::invalid_argument("bernstein_szego_density: level exceeds computed systems");
    const auto i = static_cast<std::size_t>(m);
    const double kappa_sq = opuc.kappa_sq(n);
    out.theta.reserve(static_cast<std::size_t>(grid));
    for (int g = 0; g < grid; ++g) {
        const double th = 2.0 * kPi * g / grid;
        out.theta.push_back(th);
        const cplx sv = otp.sigma[i].eval_circle(th);
        const cplx pv = otp.pi[i].eval_circle(th);
        double dotp;
        if (odd) {
            const cplx comb = cplx(otp.a[i]) * sv + (cplx(otp.beta[i]) + kImag) * cplx(otp.b[i]) * pv;
            dotp = otp.S(m) / std::norm(comb);
        } else {
            const cplx comb = cplx(otp.beta[i], -1.0) / cplx(otp.a[i]) * sv - pv / cplx(otp.b[i]);
            dotp = otp.T(m) / std::norm(comb);
        }
        const cplx phi = opuc.phi[static_cast<std::size_t>(n)].eval_circle(th);
        const double dopuc = 1.0 / (kappa_sq * std::norm(phi));
        out.otp_path.push_back(dotp);
        out.opuc_path.push_back(dopuc);
        out.max_gap = std::max(out.max_gap, std::abs(dotp - dopuc));
    }
    return out;
}

}  // namespace szego

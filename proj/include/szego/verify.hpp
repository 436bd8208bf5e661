#pragma once

#include <set>
#include <string>
#include <vector>

#include "szego/analytic.hpp"
#include "szego/bridge.hpp"
#include "szego/favard.hpp"
#include "szego/measure.hpp"
#include "szego/opuc.hpp"
#include "szego/otp.hpp"
#include "szego/report.hpp"
#include "szego/rhp.hpp"

namespace szego {

struct VerifyOptions {
    int n_max = 10;            // top OTP level; OPUC runs to 2 n_max + 2
    double tol_override = -1;  // > 0 replaces every per-identity tolerance
    std::vector<std::string> ids;  // empty: full catalogue
    std::uint64_t seed = 1;
    int schur_steps = 9;
    bool run_rhp = true;
};

/// The full identity catalogue for one measure.  Guarded instances are
/// recorded as skips, never silently dropped; informational entries carry
/// data but do not gate.
inline ResidualReport run_verify(const CircleMeasure& m, const VerifyOptions& opt) {
    ResidualReport rep;
    const int N = opt.n_max;
    const OpucSystem opuc = build_opuc(m, 2 * N + 2);
    const OpucSystem oracle = gram_schmidt_opuc(m, 2 * N + 2);
    const OtpSystem otp = build_otp(m, N);
    const BridgeContext ctx = make_bridge(opuc, otp);

    {
        IdentityCheck& c = rep.add("ORTHO-OPUC", "2.4", 1e-10);
        c.record(opuc.N, opuc_orthogonality_residual(opuc, m));
        IdentityCheck& d = rep.add("ORTHO-OTP", "2.10", 1e-10);
        d.record(otp.N, otp_orthonormality_residual(otp, m));
        IdentityCheck& e = rep.add("DUAL-OPUC", "2.7", 1e-9);
        e.record(opuc.N, opuc_coefficient_distance(opuc, oracle));
        IdentityCheck& f = rep.add("AUTOREFL", "4.31", 1e-12);
        f.record(otp.N, otp_autoreflection_residual(otp));
    }

    rep.append(szego_recursion_check(opuc));
    rep.append(integral_identities(opuc, m));
    rep.append(mutual_representation_check(ctx, N));
    rep.append(coefficient_identities(ctx));
    rep.append(seven_coefficient_recursion(ctx));
    rep.append(sublead_solve(ctx));
    rep.append(determinant_catalog(ctx));
    rep.append(block_recovery(ctx));
    rep.append(delta_checks(ctx, N));
    rep.append(otp_expansion_check(otp, m));

    // Schur / Geronimus / Szego section
    {
        const int K = 2 * opt.schur_steps + 16;
        const SchurState st = schur_algorithm(m, opt.schur_steps, K);
        rep.append(geronimus_checks(st, opuc, otp));

        std::mt19937_64 rng(opt.seed ^ 0x5a5a5a5aULL);
        std::uniform_real_distribution<double> rad(0.05, 0.85), ang(0.0, 2.0 * kPi);
        std::vector<cplx> pts;
        for (int k = 0; k < 100; ++k) pts.push_back(std::polar(rad(rng), ang(rng)));
        const PowerSeries F = caratheodory_series(m, K);
        IdentityCheck& cp = rep.add("CARA-POS", "3.36", 1e-12);
        double worst = 0.0;
        for (cplx z : pts) worst = std::max(worst, -F(z).real());
        cp.record(0, std::max(0.0, worst));
        IdentityCheck& sb = rep.add("SCHUR-BOUND", "3.38", 1e-9);
        sb.record(0, std::max(0.0, schur_contraction_residual(st, pts)));

        const SzegoData sz = szego_function(m);
        rep.append(szego_limit_checks(opuc, otp, sz, m));
        // |D(r e^{i theta})|^2 -> w(theta) at first order in 1 - r; the
        // radius keeps (1-r) * sup|d log w| well under the tolerance for
        // every built-in weight family
        IdentityCheck& db = rep.add("SZEGO-BOUNDARY", "3.48", 1e-3);
        double wd = 0.0;
        for (int g = 0; g < 64; ++g) {
            const int idx = g * (m.grid_size() / 64);
            const double d2 = std::norm(sz.D(std::polar(0.99999, m.theta(idx))));
            wd = std::max(wd, std::abs(d2 - m.weight_at(idx)));
        }
        db.record(0, wd);

        // the bracketed expressions of the convergence statements equal
        // their alpha-side counterparts at every finite level
        const auto rows = asymptotic_diagnostics(opuc, otp, sz, N);
        IdentityCheck& dterm = rep.add("DIAG-TERMS", "3.41", 1e-10);
        // the modulus sums take square roots of the bracketed terms, so a
        // vanishing coefficient contributes sqrt(machine eps) of noise
        IdentityCheck& dsum = rep.add("DIAG-SUMS", "3.35", 1e-7);
        for (const auto& r : rows) {
            if (r.id == "rakhmanov_odd" || r.id == "rakhmanov_even")
                dterm.record(r.n, std::abs(r.gap));
            else if (r.id.size() > 11 && r.id.substr(r.id.size() - 11) == "partial_sum")
                dsum.record(r.n, std::abs(r.gap));
        }
    }

    // Bernstein-Szego density through the OTP data
    {
        IdentityCheck& bs = rep.add("BS-MEASURE", "3.52", 1e-10);
        for (int n = 1; n <= std::min(2 * N, 6); ++n)
            bs.record(n, bernstein_szego_density(otp, opuc, n).max_gap);
    }

    // Riemann-Hilbert catalogue (pure weights only: the jump data is w)
    {
        IdentityCheck& jump = rep.add("RHP-JUMP-OPUC", "1.2", 1e-9);
        IdentityCheck& growth = rep.add("RHP-GROWTH-OPUC", "1.2", kGrowthContractBound);
        IdentityCheck& jumpo = rep.add("RHP-JUMP-OTP", "1.3", 1e-9);
        IdentityCheck& growtho = rep.add("RHP-GROWTH-OTP", "1.3", kGrowthContractBound);
        IdentityCheck& origin = rep.add("RHP-ORIGIN", "1.3", 1e-14);
        IdentityCheck& refl = rep.add("REFLECT-OPUC", "4.10", 1e-8);
        IdentityCheck& reflo = rep.add("REFLECT-OTP", "4.32", 1e-8);
        IdentityCheck& ca = rep.add("CAUCHY-ID-OPUC-A", "4.13", 1e-8);
        IdentityCheck& cb = rep.add("CAUCHY-ID-OPUC-B", "4.14", 1e-8);
        IdentityCheck& cbp = rep.add("CAUCHY-ID-OPUC-B-PRINTED", "4.14", 1e-8);
        cbp.informational = true;
        cbp.note = "constant term as printed; the gating entry uses the split constant";
        IdentityCheck& coa = rep.add("CAUCHY-ID-OTP-A", "4.37", 1e-8);
        IdentityCheck& cob = rep.add("CAUCHY-ID-OTP-B", "4.38", 1e-8);
        IdentityCheck& fta = rep.add("FOUR-TERM-A", "4.35", 1e-10);
        IdentityCheck& ftb = rep.add("FOUR-TERM-B", "4.36", 1e-10);
        IdentityCheck& fga = rep.add("FOUR-TERM-GRID-A", "4.41", 1e-10);
        IdentityCheck& fgb = rep.add("FOUR-TERM-GRID-B", "4.42", 1e-10);
        IdentityCheck& fha = rep.add("FOUR-TERM-HILB-A", "4.43", 1e-7);
        IdentityCheck& fhb = rep.add("FOUR-TERM-HILB-B", "4.44", 1e-7);
        IdentityCheck& plem = rep.add("PLEMELJ", "4.46", 1e-10);
        std::vector<IdentityCheck*> rhp_checks{&jump, &growth, &jumpo, &growtho, &origin, &refl,
                                               &reflo, &ca,    &cb,    &cbp,     &coa,    &cob,
                                               &fta,  &ftb,    &fga,   &fgb,     &fha,    &fhb,
                                               &plem};
        if (m.has_atoms()) {
            for (IdentityCheck* c : rhp_checks)
                c->skip(0, "measure has atoms; the jump data requires a pure weight");
        } else if (opt.run_rhp) {
            const RhpCheckOptions ropt;
            const std::vector<cplx> samples = reflection_samples(opt.seed);
            for (int n : {1, 2, 3, 5}) {
                if (n > opuc.N) continue;
                const OpucRhp sol = build_opuc_rhp(opuc, m, n);
                rhp_opuc_conditions(sol, m, ropt, jump, growth);
                opuc_reflection_check(sol, opuc, samples, refl);
                opuc_cauchy_identities(sol, opuc, m, samples, ca, cb, cbp);
                plemelj_check(sol.y12, opuc.phi[static_cast<std::size_t>(n)].shifted(-n), m, 256,
                              n, plem);
            }
            for (int n : {1, 2, 3}) {
                if (n > otp.N) continue;
                const OtpRhp sol = build_otp_rhp(otp, m, ctx, n);
                rhp_otp_conditions(sol, m, ropt, jumpo, growtho, origin);
                otp_reflection_check(sol, samples, reflo);
                otp_cauchy_identities(sol, m, samples, coa, cob);
                otp_four_term_checks(sol, otp, m, fta, ftb, fga, fgb, fha, fhb);
                plemelj_check(sol.y12, sol.comb_top.shifted(-n), m, 256, n, plem);
            }
        }
    }

    if (!opt.ids.empty()) {
        std::set<std::string> keep(opt.ids.begin(), opt.ids.end());
        ResidualReport filtered;
        for (auto& c : rep.checks)
            if (keep.erase(c.id) > 0) filtered.checks.push_back(std::move(c));
        if (!keep.empty())
            throw std::invalid_argument("unknown identity id '" + *keep.begin() + "'");
        rep = std::move(filtered);
    }
    if (opt.tol_override > 0.0)
        for (auto& c : rep.checks) c.tolerance = opt.tol_override;
    return rep;
}

}  // namespace szego

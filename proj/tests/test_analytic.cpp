#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "szego/analytic.hpp"
#include "szego/measure.hpp"
#include "szego/opuc.hpp"
#include "szego/otp.hpp"

using namespace szego;

TEST_CASE("caratheodory function") {
    SUBCASE("lebesgue: F = 1, f_0 = 0") {
        const auto m = CircleMeasure::uniform();
        const auto F = caratheodory_series(m, 24);
        CHECK(std::abs(caratheodory_eval(F, cplx(0.3, 0.2)) - cplx(1.0)) < 1e-13);
        const auto st = schur_algorithm(m, 6, 24);
        for (const cplx& g : st.gamma) CHECK(std::abs(g) < 1e-13);
    }
    SUBCASE("series matches the quadrature oracle") {
        const auto m = CircleMeasure::uniform(4096, 64, {{0.0, 1.0}});  // half mass in the atom
        const auto F = caratheodory_series(m, 64);
        for (const cplx z : {cplx(0.3), cplx(-0.2, 0.4), cplx(0.0, -0.55)})
            CHECK(std::abs(caratheodory_eval(F, z) - caratheodory_quadrature(m, z)) < 1e-10);
    }
    SUBCASE("positive real part on sampled interior points") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> rad(0.0, 0.9), ang(0.0, 2.0 * kPi);
        for (const auto& m : {CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.2)}),
                              CircleMeasure::fourier({cplx(1.0), cplx(0.4)}),
                              CircleMeasure::uniform(4096, 256, {{2.0, 0.3}})}) {
            const auto F = caratheodory_series(m, 128);
            for (int k = 0; k < 100; ++k)
                CHECK(F(std::polar(rad(rng), ang(rng))).real() > 0.0);
        }
    }
    SUBCASE("evaluation near the circle is refused") {
        const auto F = caratheodory_series(CircleMeasure::uniform(), 16);
        CHECK_THROWS_AS(caratheodory_eval(F, cplx(0.9999995)), std::domain_error);
    }
}

TEST_CASE("schur parameters equal the recursion coefficients") {
    SUBCASE("finite seed list") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.2)});
        const auto op = build_opuc(m, 9);
        const auto st = schur_algorithm(m, 9, 40);
        REQUIRE(st.gamma.size() >= 9);
        for (int k = 0; k < 9; ++k)
            CHECK(std::abs(st.gamma[static_cast<std::size_t>(k)] -
                           op.alpha[static_cast<std::size_t>(k)]) < 1e-8);
    }
    SUBCASE("smooth weight") {
        const auto m = CircleMeasure::fourier({cplx(1.0), cplx(0.21, 0.13), cplx(-0.08, 0.05)});
        const auto op = build_opuc(m, 9);
        const auto st = schur_algorithm(m, 9, 40);
        for (int k = 0; k < 9; ++k)
            CHECK(std::abs(st.gamma[static_cast<std::size_t>(k)] -
                           op.alpha[static_cast<std::size_t>(k)]) < 1e-7);
    }
    SUBCASE("iterates stay strictly inside the disc") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.2)});
        const auto st = schur_algorithm(m, 6, 40);
        std::vector<cplx> pts;
        for (int k = 0; k < 24; ++k) pts.push_back(std::polar(0.05 + 0.03 * k, 0.37 * k));
        CHECK(schur_contraction_residual(st, pts) < 0.0);
    }
}

TEST_CASE("geronimus coefficient forms") {
    for (const auto& m : {CircleMeasure::uniform(),
                          CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.3), cplx(0.2)}),
                          CircleMeasure::bernstein_szego({cplx(0.3, 0.1), cplx(-0.2), cplx(0.0, 0.15)})}) {
        const auto op = build_opuc(m, 10);
        const auto ot = build_otp(m, 4);
        const auto st = schur_algorithm(m, 9, 40);
        const auto rep = geronimus_checks(st, op, ot);
        for (const auto& c : rep.checks) {
            INFO(c.id);
            CHECK(c.evaluated());
            CHECK(c.max_residual < 1e-7);
        }
    }
}

TEST_CASE("szego function") {
    SUBCASE("lebesgue: D = 1, all log coefficients vanish") {
        const auto sz = szego_function(CircleMeasure::uniform());
        CHECK(sz.integral == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(std::abs(sz.D(cplx(0.3, 0.4)) - cplx(1.0)) < 1e-13);
        for (int n = 0; n <= 8; ++n) CHECK(std::abs(sz.Lhat[static_cast<std::size_t>(n)]) < 1e-14);
    }
    SUBCASE("boundary modulus approaches the weight") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
        const auto sz = szego_function(m);
        double worst9999 = 0.0, worst999 = 0.0;
        for (int g = 0; g < 64; ++g) {
            const int idx = g * (m.grid_size() / 64);
            const double w = m.weight_at(idx);
            worst999 = std::max(worst999, std::abs(std::norm(sz.D(std::polar(0.999, m.theta(idx)))) - w));
            worst9999 = std::max(worst9999,
                                 std::abs(std::norm(sz.D(std::polar(0.9999, m.theta(idx)))) - w));
        }
        CHECK(worst9999 < 1e-3);
        // first-order boundary convergence: shrinking 1-r by 10 shrinks the gap by ~10
        CHECK(worst9999 < 0.2 * worst999);
    }
    SUBCASE("geometric mean equals the stabilized leading constant") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
        const auto op = build_opuc(m, 8);
        const auto sz = szego_function(m);
        CHECK(std::abs(std::exp(sz.integral) - op.kappa_inv_sq(8)) < 1e-9);
    }
    SUBCASE("vanishing weight is rejected") {
        std::vector<double> w(4096, 1.0);
        w[100] = 0.0;
        CHECK_THROWS_AS(szego_function(CircleMeasure::sampled(std::move(w))), std::domain_error);
    }
}

TEST_CASE("finite-support limit checks") {
    const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
    const auto op = build_opuc(m, 10);
    const auto ot = build_otp(m, 5);
    const auto sz = szego_function(m);
    const auto rep = szego_limit_checks(op, ot, sz, m);
    for (const auto& c : rep.checks) {
        CHECK(c.evaluated());
        CHECK(c.max_residual < 1e-9);
    }
    // trend-only weights are skipped with a reason
    const auto mf = CircleMeasure::fourier({cplx(1.0), cplx(0.4)});
    const auto repf = szego_limit_checks(build_opuc(mf, 10), build_otp(mf, 5),
                                         szego_function(mf), mf);
    for (const auto& c : repf.checks) {
        CHECK(!c.evaluated());
        CHECK(c.skipped.size() == 1);
    }
}

TEST_CASE("diagnostic table") {
    SUBCASE("lebesgue rows are exact") {
        const auto m = CircleMeasure::uniform();
        const auto rows = asymptotic_diagnostics(build_opuc(m, 14), build_otp(m, 6),
                                                 szego_function(m), 6);
        for (const auto& r : rows) {
            if (r.id == "ab_product") CHECK(r.value == doctest::Approx(0.5).epsilon(1e-13));
            if (r.id == "rakhmanov_odd") CHECK(r.value == doctest::Approx(0.0).epsilon(1e-13));
            if (r.id == "rakhmanov_even") CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
            if (r.id == "baxter_partial_sum" || r.id == "szego_partial_sum" ||
                r.id == "strong_szego_partial_sum")
                CHECK(std::abs(r.value) < 1e-12);
            CHECK(std::abs(r.gap) < 1e-12);
        }
    }
    SUBCASE("every bracketed expression matches its alpha counterpart") {
        std::vector<cplx> alphas;
        for (int n = 0; n < 12; ++n) alphas.push_back(std::pow(0.5, n + 1) * std::polar(1.0, 0.3 * n));
        const auto m = CircleMeasure::bernstein_szego(alphas);
        const auto rows = asymptotic_diagnostics(build_opuc(m, 14), build_otp(m, 6),
                                                 szego_function(m), 6);
        int term_rows = 0;
        for (const auto& r : rows)
            if (r.id == "rakhmanov_odd" || r.id == "rakhmanov_even" ||
                r.id == "baxter_partial_sum" || r.id == "szego_partial_sum" ||
                r.id == "strong_szego_partial_sum") {
                CHECK(std::abs(r.gap) < 1e-10);
                ++term_rows;
            }
        CHECK(term_rows > 20);
    }
    SUBCASE("norm product telescopes toward the szego integral") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
        const auto rows = asymptotic_diagnostics(build_opuc(m, 14), build_otp(m, 6),
                                                 szego_function(m), 6);
        for (const auto& r : rows)
            if (r.id == "norm_product" && r.n >= 1) CHECK(std::abs(r.gap) < 1e-10);
    }
}

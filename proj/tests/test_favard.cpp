#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "szego/favard.hpp"
#include "szego/measure.hpp"
#include "szego/opuc.hpp"
#include "szego/otp.hpp"

using namespace szego;

namespace {

std::vector<cplx> geometric_alphas(int count) {
    std::vector<cplx> a;
    for (int n = 0; n < count; ++n) a.push_back(std::pow(0.5, n + 1));
    return a;
}

}  // namespace

TEST_CASE("weak reconstruction round trips") {
    const auto alphas = geometric_alphas(12);
    const auto m = CircleMeasure::bernstein_szego(alphas);
    const auto otp = build_otp(m, 6);
    const auto opuc = build_opuc(m, 14);
    const TripleSeq triple = extract_triple(otp);

    SUBCASE("supplied phases recover the full sequence") {
        std::vector<double> phases;
        for (int n = 0; n + 1 <= triple.N(); ++n)
            phases.push_back(std::arg(opuc.alpha[static_cast<std::size_t>(2 * n)]));
        const auto res = weak_favard(triple, PhasePolicy::supplied(phases), FavardMode::Strict);
        for (std::size_t k = 0; k < res.alphas.size(); ++k)
            CHECK(std::abs(res.alphas[k] - alphas[k]) < 1e-9);
    }
    SUBCASE("positive-real policy recovers a positive-real-even measure") {
        // the geometric seeds are positive real, so the default policy wins too
        const auto res = weak_favard(triple, PhasePolicy::positive_real(), FavardMode::Strict);
        for (std::size_t k = 0; k < res.alphas.size(); ++k)
            CHECK(std::abs(res.alphas[k] - alphas[k]) < 1e-9);
    }
    SUBCASE("odd coefficients are phase-policy independent, bit for bit") {
        const auto r1 = weak_favard(triple, PhasePolicy::positive_real(), FavardMode::Strict);
        const auto r2 = weak_favard(triple, PhasePolicy::fixed_angle(1.234), FavardMode::Strict);
        for (int n = 1; n <= triple.N(); ++n) {
            const auto k = static_cast<std::size_t>(2 * n - 1);
            CHECK(r1.alphas[k].real() == r2.alphas[k].real());
            CHECK(r1.alphas[k].imag() == r2.alphas[k].imag());
        }
    }
    SUBCASE("even modulus matches the kappa ratio by construction") {
        const auto res = weak_favard(triple, PhasePolicy::positive_real(), FavardMode::Strict);
        for (int n = 0; n + 1 <= triple.N(); ++n) {
            const double ratio = n == 0 ? triple.S(1) : 0.25 * triple.T(n) * triple.S(n + 1);
            CHECK(std::abs(res.alphas[static_cast<std::size_t>(2 * n)]) ==
                  doctest::Approx(std::sqrt(1.0 - ratio)).epsilon(1e-12));
        }
    }
}

TEST_CASE("lebesgue sits on the admissibility boundary") {
    const auto m = CircleMeasure::uniform();
    const auto otp = build_otp(m, 5);
    const TripleSeq triple = extract_triple(otp);

    const auto adm = validate_triple(triple);
    for (const auto& e : adm.entries) {
        CHECK(e.boundary);
        CHECK(!e.violated);
    }
    CHECK_THROWS_AS(weak_favard(triple, PhasePolicy::positive_real(), FavardMode::Strict),
                    std::domain_error);
    const auto res = weak_favard(triple, PhasePolicy::positive_real(), FavardMode::Closed);
    for (const cplx& a : res.alphas) CHECK(std::abs(a) < 1e-12);
}

TEST_CASE("inadmissible norms are refused with the index") {
    TripleSeq t;
    t.a = {1.0, 0.9};
    t.b = {1.0, 0.9};
    t.beta = {0.0, 0.0};
    // S(1) = 1.62 > 1: no probability measure has level-1 norms this large
    const auto adm = validate_triple(t);
    CHECK(adm.entries[0].violated);
    CHECK_THROWS_WITH_AS(weak_favard(t, PhasePolicy::positive_real(), FavardMode::Closed),
                         doctest::Contains("index 0"), std::domain_error);
}

TEST_CASE("strong reconstruction round trips") {
    SUBCASE("geometric coefficients") {
        const auto alphas = geometric_alphas(12);
        const auto m = CircleMeasure::bernstein_szego(alphas);
        const auto otp = build_otp(m, 6);
        const auto res = strong_favard(extract_seven(otp), FavardMode::Strict);
        for (std::size_t k = 0; k < res.alphas.size(); ++k)
            CHECK(std::abs(res.alphas[k] - alphas[k]) < 1e-9);
        CHECK(res.roundtrip_alpha_residual < 1e-9);
        CHECK(res.roundtrip_seven_residual < 1e-8);
    }
    SUBCASE("complex seeds need the closed mode beyond the truncation") {
        const std::vector<cplx> alphas{cplx(0.4, 0.1), cplx(0.3), cplx(0.2, -0.05)};
        const auto m = CircleMeasure::bernstein_szego(alphas);
        const auto otp = build_otp(m, 5);
        const auto res = strong_favard(extract_seven(otp), FavardMode::Closed);
        for (std::size_t k = 0; k < alphas.size(); ++k)
            CHECK(std::abs(res.alphas[k] - alphas[k]) < 1e-9);
        for (std::size_t k = alphas.size(); k < res.alphas.size(); ++k)
            CHECK(std::abs(res.alphas[k]) < 1e-9);
        CHECK(res.roundtrip_seven_residual < 1e-8);
    }
}

TEST_CASE("strong validation clauses") {
    const auto alphas = geometric_alphas(12);
    const auto m = CircleMeasure::bernstein_szego(alphas);
    const auto otp = build_otp(m, 5);
    SevenSeq seven = extract_seven(otp);

    SUBCASE("uniqueness clause violation names the index") {
        // a measure whose fourth recursion coefficient vanishes produces
        // beta_2 = 0 with a_2 = b_2, the excluded configuration at index 2
        const auto mz = CircleMeasure::bernstein_szego(
            {cplx(0.4), cplx(0.3), cplx(0.2), cplx(0.0), cplx(0.1), cplx(0.05)});
        const SevenSeq sz = extract_seven(build_otp(mz, 4));
        CHECK_THROWS_WITH_AS(strong_favard(sz, FavardMode::Strict),
                             doctest::Contains("index 2"), std::domain_error);
        // the closed mode accepts the boundary and still round trips
        const auto res = strong_favard(sz, FavardMode::Closed);
        CHECK(std::abs(res.alphas[3]) < 1e-10);
        CHECK(std::abs(res.alphas[0] - cplx(0.4)) < 1e-9);
        CHECK(std::abs(res.alphas[4] - cplx(0.1)) < 1e-9);
    }
    SUBCASE("modulus equality violation is caught") {
        seven.iota[2] += 0.2;  // breaks |alpha_even|^2 = 1 - kappa ratio
        CHECK_THROWS_AS(strong_favard(seven, FavardMode::Closed), std::domain_error);
    }
    SUBCASE("validation entries name the enabled solves") {
        const auto res = strong_favard(extract_seven(otp), FavardMode::Strict);
        for (const auto& v : res.validation)
            if (v.n >= 1) {
                CHECK(v.uniqueness_ok);
                CHECK(!v.enabled_solves.empty());
            }
    }
}

TEST_CASE("bernstein-szego density via the OTP data") {
    SUBCASE("lebesgue density is one both ways") {
        const auto m = CircleMeasure::uniform();
        const auto otp = build_otp(m, 3);
        const auto opuc = build_opuc(m, 8);
        for (int n = 1; n <= 4; ++n) {
            const auto cmpd = bernstein_szego_density(otp, opuc, n, 128);
            CHECK(cmpd.max_gap < 1e-13);
            for (double v : cmpd.otp_path) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("both parities agree pointwise on a 512 grid") {
        const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
        const auto otp = build_otp(m, 3);
        const auto opuc = build_opuc(m, 8);
        CHECK(bernstein_szego_density(otp, opuc, 1).max_gap < 1e-10);
        CHECK(bernstein_szego_density(otp, opuc, 2).max_gap < 1e-10);
        // complex seeds as well
        const auto mc = CircleMeasure::bernstein_szego({cplx(0.3, 0.1), cplx(-0.2)});
        const auto otpc = build_otp(mc, 3);
        const auto opc = build_opuc(mc, 8);
        for (int n = 1; n <= 5; ++n) CHECK(bernstein_szego_density(otpc, opc, n).max_gap < 1e-10);
    }
}

TEST_CASE("coefficient file conventions are enforced") {
    TripleSeq bad;
    bad.a = {2.0, 1.0};
    bad.b = {1.0, 1.0};
    bad.beta = {0.0, 0.0};
    CHECK_THROWS_AS(validate_triple(bad), std::invalid_argument);
    TripleSeq neg;
    neg.a = {1.0, -0.5};
    neg.b = {1.0, 0.5};
    neg.beta = {0.0, 0.0};
    CHECK_THROWS_AS(validate_triple(neg), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "szego/measure.hpp"
#include "szego/opuc.hpp"

using namespace szego;

TEST_CASE("lebesgue closed form") {
    const auto m = CircleMeasure::uniform();
    const auto sys = build_opuc(m, 10);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(sys.alpha[static_cast<std::size_t>(n)]) < 1e-14);
    for (int n = 0; n <= 10; ++n) {
        CHECK(sys.kappa[static_cast<std::size_t>(n)] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(max_coeff_distance(sys.phi[static_cast<std::size_t>(n)],
                                 LaurentPolynomial::monomial(n)) < 1e-14);
    }
}

TEST_CASE("bernstein-szego weight forces its seed coefficients") {
    const auto m = CircleMeasure::bernstein_szego({cplx(0.5)});
    const auto sys = build_opuc(m, 6);
    CHECK(std::abs(sys.alpha[0] - cplx(0.5)) < 1e-10);
    for (int n = 1; n < 6; ++n) CHECK(std::abs(sys.alpha[static_cast<std::size_t>(n)]) < 1e-10);
    // kappa_n^2 = 1/(1-1/4) beyond the cutoff
    for (int n = 1; n <= 6; ++n)
        CHECK(sys.kappa_sq(n) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("recursion build against the Gram-Schmidt oracle") {
    SUBCASE("lebesgue is exact up to the quadrature noise floor") {
        const auto m = CircleMeasure::uniform();
        CHECK(opuc_coefficient_distance(build_opuc(m, 8), gram_schmidt_opuc(m, 8)) < 1e-28);
    }
    SUBCASE("atomic measure") {
        const auto m = CircleMeasure::uniform(4096, 64, {{0.0, 1.0}});  // mass 0.5 after scaling
        CHECK(opuc_coefficient_distance(build_opuc(m, 4), gram_schmidt_opuc(m, 4)) < 1e-10);
    }
    SUBCASE("fourier weight 1 + cos(theta)") {
        const auto m = CircleMeasure::fourier({cplx(1.0), cplx(0.5)});
        CHECK(opuc_coefficient_distance(build_opuc(m, 6), gram_schmidt_opuc(m, 6)) < 1e-9);
    }
    SUBCASE("general suite at N = 8") {
        for (const auto& m : {CircleMeasure::bernstein_szego({cplx(0.3, 0.1), cplx(-0.2)}),
                              CircleMeasure::uniform(4096, 256, {{kPi / 3, 0.3}})})
            CHECK(opuc_coefficient_distance(build_opuc(m, 8), gram_schmidt_opuc(m, 8)) < 1e-9);
    }
}

TEST_CASE("orthogonality and stored invariants") {
    for (const auto& m : {CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.3), cplx(0.2), cplx(0.1)}),
                          CircleMeasure::fourier({cplx(1.0), cplx(0.4)}),
                          CircleMeasure::uniform(4096, 256, {{0.0, 0.4}})}) {
        const auto sys = build_opuc(m, 12);
        CHECK(opuc_orthogonality_residual(sys, m) < 1e-10);
        for (int n = 0; n < sys.N; ++n) {
            // alpha_n is minus the conjugated constant term of Phi_{n+1}
            CHECK(sys.alpha[static_cast<std::size_t>(n)] ==
                  -std::conj(sys.phi[static_cast<std::size_t>(n + 1)].coeff(0)));
            CHECK(std::abs(sys.alpha[static_cast<std::size_t>(n)]) < 1.0);
        }
        // kappa_n^2 prod_{j<n} (1 - |alpha_j|^2) = 1
        double prod = 1.0;
        for (int n = 0; n <= sys.N; ++n) {
            CHECK(std::abs(sys.kappa_sq(n) * prod - 1.0) < 1e-12);
            if (n < sys.N) prod *= 1.0 - std::norm(sys.alpha[static_cast<std::size_t>(n)]);
        }
        // kappa ratio identity of the recursion
        for (int n = 0; n < sys.N; ++n)
            CHECK(std::abs(sys.kappa_sq(n) / sys.kappa_sq(n + 1) -
                           (1.0 - std::norm(sys.alpha[static_cast<std::size_t>(n)]))) < 1e-12);
        // sublead recursion: a_{n+1,n} = a_{n,n-1} + conj(alpha_n) alpha_{n-1}
        for (int n = 1; n < sys.N; ++n)
            CHECK(std::abs(sys.a_sub(n + 1) -
                           (sys.a_sub(n) + std::conj(sys.alpha[static_cast<std::size_t>(n)]) *
                                               sys.alpha[static_cast<std::size_t>(n - 1)])) < 1e-12);
    }
}

TEST_CASE("integral identities") {
    SUBCASE("lebesgue trivially") {
        const auto m = CircleMeasure::uniform();
        const auto rep = integral_identities(build_opuc(m, 8), m);
        for (const auto& c : rep.checks) {
            CHECK(c.pass());
            if (c.id == "INT-ZPHI" || c.id == "INT-Z2PHI") CHECK(!c.skipped.empty());
        }
    }
    SUBCASE("generic measures hold below 1e-10") {
        for (const auto& m : {CircleMeasure::bernstein_szego({cplx(0.4), cplx(0.2)}),
                              CircleMeasure::uniform(4096, 256, {{kPi / 3, 0.3}})}) {
            const auto rep = integral_identities(build_opuc(m, 11), m);
            for (const auto& c : rep.checks) {
                CHECK(c.evaluated());
                CHECK(c.max_residual < 1e-10);
            }
        }
    }
}

TEST_CASE("szego recursion residuals") {
    for (const auto& m : {CircleMeasure::uniform(),
                          CircleMeasure::bernstein_szego({cplx(0.3), cplx(0.0, 0.2)}),
                          CircleMeasure::fourier({cplx(1.0), cplx(0.21, 0.13), cplx(-0.08, 0.05)})}) {
        const auto rep = szego_recursion_check(build_opuc(m, 20));
        for (const auto& c : rep.checks) CHECK(c.max_residual < 1e-11);
    }
}

TEST_CASE("degenerate measures are refused") {
    // two atoms support polynomials only below degree 2
    auto atoms_only = CircleMeasure::sampled(std::vector<double>(4096, 0.0), 256,
                                             {{0.0, 0.5}, {kPi, 0.5}});
    CHECK_NOTHROW(build_opuc(atoms_only, 1));
    CHECK_THROWS_AS(build_opuc(atoms_only, 2), std::domain_error);
    CHECK_THROWS_AS(gram_schmidt_opuc(atoms_only, 2), std::domain_error);
    // moment table too short
    CHECK_THROWS_AS(build_opuc(CircleMeasure::uniform(4096, 16), 10), std::invalid_argument);
}

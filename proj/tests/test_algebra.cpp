#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "szego/laurent.hpp"

using namespace szego;

namespace {

LaurentPolynomial z_plus(double c) { return LaurentPolynomial(0, {cplx(c), cplx(1.0)}); }

/// Naive power-sum evaluation, the independent oracle for the Horner path.
cplx powersum_eval(const LaurentPolynomial& p, cplx z) {
    cplx s(0.0);
    for (int k = p.lo(); k <= p.hi(); ++k) s += p.coeff(k) * std::pow(z, k);
    return s;
}

LaurentPolynomial random_laurent(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c;
    for (int k = lo; k <= hi; ++k) c.emplace_back(u(rng), u(rng));
    return LaurentPolynomial(lo, std::move(c));
}

}  // namespace

TEST_CASE("product and annihilator") {
    const LaurentPolynomial p = z_plus(1.0) * z_plus(-1.0);  // (z+1)(z-1)
    CHECK(p.lo() == 0);
    CHECK(p.coeff(0) == cplx(-1.0));
    CHECK(p.coeff(1) == cplx(0.0));
    CHECK(p.coeff(2) == cplx(1.0));

    const LaurentPolynomial q = LaurentPolynomial::zero() * z_plus(3.0);
    CHECK(q.is_zero());
    CHECK(q.lo() == 0);

    // (z^{-1}+z)(z^{-1}-z) = z^{-2} - z^2
    const LaurentPolynomial a(-1, {cplx(1.0), cplx(0.0), cplx(1.0)});
    const LaurentPolynomial b(-1, {cplx(1.0), cplx(0.0), cplx(-1.0)});
    const LaurentPolynomial ab = a * b;
    CHECK(ab.coeff(-2) == cplx(1.0));
    CHECK(ab.coeff(0) == cplx(0.0));
    CHECK(ab.coeff(2) == cplx(-1.0));
}

TEST_CASE("shift") {
    const LaurentPolynomial p = z_plus(1.0).shifted(-1);  // z^{-1} + 1
    CHECK(p.lo() == -1);
    CHECK(p.coeff(-1) == cplx(1.0));
    CHECK(p.coeff(0) == cplx(1.0));
    CHECK(LaurentPolynomial::zero().shifted(5).is_zero());

    std::mt19937_64 rng(7);
    const LaurentPolynomial q = random_laurent(rng, -3, 4);
    CHECK(q.shifted(3).shifted(-3) == q);
}

TEST_CASE("reversed polynomial") {
    // (z - a)* of degree 1 with a real: 1 - a z
    const LaurentPolynomial p(0, {cplx(-0.7), cplx(1.0)});
    const LaurentPolynomial r = p.reversed(1);
    CHECK(r.coeff(0) == cplx(1.0));
    CHECK(r.coeff(1) == cplx(-0.7));

    CHECK(LaurentPolynomial::monomial(5).reversed(5) == LaurentPolynomial::constant(1.0));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const LaurentPolynomial q = random_laurent(rng, 0, 6);
        CHECK(max_coeff_distance(q.reversed(6).reversed(6), q) == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(random_laurent(rng, -1, 3).reversed(4), std::domain_error);
}

TEST_CASE("reflection") {
    // (z^n + z^{-n})/2 and (z^n - z^{-n})/(2i) are fixed points
    for (int n = 1; n <= 5; ++n) {
        const LaurentPolynomial c(-n, {cplx(0.5), cplx(0.0)});
        const LaurentPolynomial cosn = c + LaurentPolynomial::monomial(n, cplx(0.5));
        CHECK(max_coeff_distance(cosn.reflected(), cosn) == 0.0);
        const LaurentPolynomial sinn = LaurentPolynomial::monomial(-n, cplx(0.0, 0.5)) +
                                       LaurentPolynomial::monomial(n, cplx(0.0, -0.5));
        CHECK(max_coeff_distance(sinn.reflected(), sinn) == 0.0);
    }
    // reflect(i z) = -i z^{-1}
    const LaurentPolynomial p = LaurentPolynomial::monomial(1, kImag).reflected();
    CHECK(p.lo() == -1);
    CHECK(p.coeff(-1) == -kImag);

    std::mt19937_64 rng(13);
    SUBCASE("involution and multiplicativity") {
        for (int trial = 0; trial < 20; ++trial) {
            const LaurentPolynomial a = random_laurent(rng, -4, 3);
            const LaurentPolynomial b = random_laurent(rng, -2, 5);
            CHECK(max_coeff_distance(a.reflected().reflected(), a) == doctest::Approx(0.0));
            CHECK(max_coeff_distance((a * b).reflected(), a.reflected() * b.reflected()) <= 1e-15);
        }
    }
    SUBCASE("circle conjugation at 64 grid points") {
        for (int trial = 0; trial < 5; ++trial) {
            const LaurentPolynomial a = random_laurent(rng, -5, 5);
            const LaurentPolynomial ar = a.reflected();
            for (int g = 0; g < 64; ++g) {
                const double th = 2.0 * kPi * g / 64;
                CHECK(std::abs(ar.eval_circle(th) - std::conj(a.eval_circle(th))) < 1e-13);
            }
        }
    }
}

TEST_CASE("evaluation") {
    const LaurentPolynomial p(0, {cplx(-1.0), cplx(0.0), cplx(1.0)});  // z^2 - 1
    CHECK(p(cplx(1.0)) == cplx(0.0));

    const LaurentPolynomial q(-1, {cplx(1.0), cplx(0.0), cplx(1.0)});  // z^{-1} + z
    CHECK(std::abs(q(std::polar(1.0, kPi / 2))) < 1e-15);              // 2 cos(pi/2)

    CHECK_THROWS_AS(q(cplx(0.0)), std::domain_error);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 17; ++trial) {
        const LaurentPolynomial a = random_laurent(rng, -4, 6);
        const cplx z(u(rng) + 0.1, u(rng));
        CHECK(std::abs(a(z) - powersum_eval(a, z)) <= 1e-14 * (1.0 + std::abs(powersum_eval(a, z))));
    }

    // purely negative power range
    const LaurentPolynomial m2 = LaurentPolynomial::monomial(-2);
    CHECK(std::abs(m2(cplx(0.0, 2.0)) - cplx(-0.25)) < 1e-15);
    for (int trial = 0; trial < 8; ++trial) {
        const LaurentPolynomial a = random_laurent(rng, -6, -2);
        const cplx z(u(rng) + 2.5, u(rng));
        CHECK(std::abs(a(z) - powersum_eval(a, z)) <= 1e-14 * (1.0 + std::abs(powersum_eval(a, z))));
    }
}

TEST_CASE("trim keeps exact zeros only") {
    const LaurentPolynomial p(2, {cplx(0.0), cplx(1.0), cplx(0.0)});
    CHECK(p.lo() == 3);
    CHECK(p.hi() == 3);
    const LaurentPolynomial tiny(0, {cplx(1e-300)});
    CHECK(!tiny.is_zero());  // no epsilon trimming
    const LaurentPolynomial diff = z_plus(2.0) - z_plus(2.0);
    CHECK(diff.is_zero());
}

TEST_CASE("matrix algebra") {
    const Matrix2C a{cplx(1.0, 1.0), cplx(2.0), cplx(0.5), cplx(-1.0, 2.0)};
    const Matrix2C id = a * a.inverse();
    CHECK((id - Matrix2C::identity()).norm_inf() < 1e-15);

    const auto x = solve2(a, {cplx(1.0), cplx(0.0, 1.0)});
    CHECK(std::abs(a.e11 * x[0] + a.e12 * x[1] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(a.e21 * x[0] + a.e22 * x[1] - cplx(0.0, 1.0)) < 1e-15);

    MatrixNC<4> m{};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : m) v = cplx(u(rng), u(rng));
    std::array<cplx, 4> rhs{cplx(1.0), cplx(0.0), cplx(0.0, 1.0), cplx(-1.0)};
    const auto y = solve_n<4>(m, rhs);
    for (int r = 0; r < 4; ++r) {
        cplx s(0.0);
        for (int c = 0; c < 4; ++c) s += m[static_cast<std::size_t>(r * 4 + c)] * y[static_cast<std::size_t>(c)];
        CHECK(std::abs(s - rhs[static_cast<std::size_t>(r)]) < 1e-13);
    }
    // det via elimination matches the cofactor expansion on a 2x2 embed
    MatrixNC<2> m2{a.e11, a.e12, a.e21, a.e22};
    CHECK(std::abs(det_n<2>(m2) - a.det()) < 1e-15);
}

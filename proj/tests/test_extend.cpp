#include "oracles.hpp"
#include "phull/extend.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace phull;

namespace {

// Boundary values of r(z) = (z^2 + 1) / ((z - 0.5)(z + 0.3i)).
cplx rational(cplx z) { return (z * z + 1.0) / ((z - 0.5) * (z + cplx(0.0, 0.3))); }

BoundaryFunction sampled(std::size_t n, cplx (*f)(cplx)) {
    std::vector<cplx> s(n);
    for (std::size_t j = 0; j < n; ++j)
        s[j] = f(std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n)));
    return BoundaryFunction(s);
}

} // namespace

TEST(Annihilator, RationalFunctionIsReconstructed) {
    const auto phi = sampled(256, rational);
    const QuotientModel m = annihilator(phi, 2);
    EXPECT_LT(m.residual, 1e-10);
    EXPECT_NEAR(coeff_norm(m.k_coeffs), 1.0, 1e-12);
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 100) {
        const cplx z(u(g), u(g));
        if (std::abs(z) >= 0.95 || std::abs(z - 0.5) < 0.05 || std::abs(z + cplx(0, 0.3)) < 0.05)
            continue;
        const cplx ref = rational(z);
        EXPECT_LT(std::abs(evaluate_quotient(m, z) - ref), 1e-8 * (1.0 + std::abs(ref))) << z;
        ++checked;
    }
    const auto poles = pole_candidates(m);
    ASSERT_EQ(poles.size(), 2u);
    EXPECT_LT(std::abs(poles[0].location - cplx(0.0, -0.3)), 1e-8);
    EXPECT_LT(std::abs(poles[1].location - 0.5), 1e-8);
    EXPECT_EQ(total_multiplicity(poles), 2);
}

TEST(Annihilator, OverParameterizedDegreeKeepsPoles) {
    const auto phi = sampled(256, rational);
    const QuotientModel m = annihilator(phi, 5);
    EXPECT_LT(m.residual, 1e-10);
    EXPECT_EQ(total_multiplicity(pole_candidates(m)), 2);
    EXPECT_LT(std::abs(evaluate_quotient(m, cplx(0.1, 0.6)) - rational(cplx(0.1, 0.6))), 1e-7);
}

TEST(Annihilator, GaugeAndScaling) {
    const auto phi = builtin_phi("cos", 128);
    const QuotientModel a = annihilator(phi, 3), b = annihilator(phi.scaled(cplx(0.0, -2.0)), 3);
    const auto big = std::max_element(a.k_coeffs.begin(), a.k_coeffs.end(),
                                      [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    EXPECT_NEAR(big->imag(), 0.0, 1e-14);
    EXPECT_GT(big->real(), 0.0);
    for (std::size_t i = 0; i < a.k_coeffs.size(); ++i)
        EXPECT_LT(std::abs(a.k_coeffs[i] - b.k_coeffs[i]), 1e-10);
    for (std::size_t i = 0; i < a.l_coeffs.size(); ++i)
        EXPECT_LT(std::abs(a.l_coeffs[i] * cplx(0.0, -2.0) - b.l_coeffs[i]), 1e-10);
}

TEST(Annihilator, ZeroFunctionIsDegenerate) {
    const QuotientModel m = annihilator(builtin_phi("zero", 64), 2);
    EXPECT_TRUE(m.degenerate);
    EXPECT_EQ(m.k_coeffs[0], cplx(1.0));
    EXPECT_TRUE(pole_candidates(m).empty());
    EXPECT_EQ(evaluate_quotient(m, 0.4), cplx{});
}

TEST(Annihilator, Validation) {
    const auto phi = builtin_phi("cos", 32);
    EXPECT_THROW(annihilator(phi, 0, 4), std::invalid_argument);
    EXPECT_THROW(annihilator(phi, 3, 2), std::invalid_argument);
    EXPECT_THROW(annihilator(phi, 4, 8), std::invalid_argument);
}

TEST(Quotient, NearPoleIsRefused) {
    const QuotientModel m = annihilator(builtin_phi("inverse", 64), 1);
    EXPECT_THROW(evaluate_quotient(m, 0.0), NearPoleError);
    EXPECT_LT(std::abs(evaluate_quotient(m, 0.25) - 4.0), 1e-10);
}

TEST(Roots, CompanionMatrix) {
    // (z - 1)(z + 2)(z - i) = z^3 + (1 - i) z^2 + (-2 - i) z + 2i
    const std::vector<cplx> c{cplx(0, 2), cplx(-2, -1), cplx(1, -1), 1.0};
    auto r = polynomial_roots(c);
    ASSERT_EQ(r.size(), 3u);
    for (const cplx& root : r)
        EXPECT_LT(std::abs(oracle::power_sum(c, root)), 1e-12);
    EXPECT_TRUE(polynomial_roots({3.0}).empty());
    EXPECT_EQ(polynomial_roots({1.0, 1.0, 0.0, 0.0}).size(), 1u); // trailing zeros trimmed
}

TEST(Roots, VanishingOrder) {
    // (z - 0.5)^2 (z + 1)
    const std::vector<cplx> c{0.25, -0.75, 0.0, 1.0};
    EXPECT_EQ(vanishing_order(c, 0.5, 1e-12, 5), 2);
    EXPECT_EQ(vanishing_order(c, -1.0, 1e-12, 5), 1);
    EXPECT_EQ(vanishing_order(c, 0.1, 1e-12, 5), 0);
    EXPECT_EQ(vanishing_order(c, 0.5, 1e-12, 1), 1);
}

TEST(Poles, BuiltinPoleOrders) {
    for (int m : {1, 2, 3}) {
        const auto poles = pole_candidates(annihilator(builtin_phi("pole_m", 128, m), 4));
        ASSERT_EQ(poles.size(), 1u) << m;
        EXPECT_LT(std::abs(poles[0].location), 1e-6);
        EXPECT_EQ(poles[0].multiplicity, m);
    }
}

TEST(Extendability, Verdicts) {
    EXPECT_EQ(extendability_score(builtin_phi("cos", 256)).verdict, ExtendVerdict::meromorphic_consistent);
    EXPECT_EQ(extendability_score(builtin_phi("pole_m", 256, 2)).verdict, ExtendVerdict::meromorphic_consistent);
    EXPECT_EQ(extendability_score(builtin_phi("abs_sin", 256)).verdict, ExtendVerdict::not_extendable);
    ExtendOptions bad;
    bad.d_list = {4, 2};
    EXPECT_THROW(extendability_score(builtin_phi("cos", 64), bad), std::invalid_argument);
    EXPECT_TRUE(poles_agree({{0.1, 1}}, {{0.1 + 1e-5, 1}}, 1e-3));
    EXPECT_FALSE(poles_agree({{0.1, 1}}, {{0.1, 2}}, 1e-3));
}

TEST(Extendability, InteriorModelPicksLowestDegree) {
    const QuotientModel m = interior_model(builtin_phi("cos", 256));
    EXPECT_EQ(m.d_k, 1);
    EXPECT_LT(std::abs(evaluate_quotient(m, 0.3) - (0.09 + 1.0) / 0.6), 1e-10);
}

TEST(Extendability, CsvSchemas) {
    const QuotientModel m = annihilator(builtin_phi("cos", 32), 1);
    std::ostringstream mc, pc;
    write_model_csv(mc, m);
    write_poles_csv(pc, pole_candidates(m));
    EXPECT_EQ(mc.str().substr(0, mc.str().find('\n')), "which,index,re,im");
    EXPECT_NE(mc.str().find("\nresidual,"), std::string::npos);
    EXPECT_EQ(pc.str(), "re,im,multiplicity\n0,0,1\n");
}

TEST(Annihilator, InverseIsExactAtDegreeOne) {
    const QuotientModel m = annihilator(builtin_phi("inverse", 64), 1, 4);
    EXPECT_LE(m.residual, 1e-12);
    EXPECT_LT(std::abs(m.k_coeffs[0]), 1e-12);
    EXPECT_NEAR(std::abs(m.k_coeffs[1]), 1.0, 1e-12);
    // l = k phi = k_1 on the circle.
    EXPECT_LT(std::abs(m.l_coeffs[0] - m.k_coeffs[1]), 1e-12);
    for (std::size_t i = 1; i < m.l_coeffs.size(); ++i)
        EXPECT_LT(std::abs(m.l_coeffs[i]), 1e-12);
}

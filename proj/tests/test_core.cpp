#include "oracles.hpp"
#include "phull/core.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace phull;

namespace {

std::vector<cplx> random_samples(std::size_t n, unsigned seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> s(n);
    for (auto& v : s)
        v = {nd(g), nd(g)};
    return s;
}

} // namespace

TEST(BoundaryFunction, CoefficientsMatchNaiveDft) {
    const auto s = random_samples(64, 1);
    const BoundaryFunction phi(s);
    const auto ref = oracle::naive_dft(s);
    for (int n = -32; n < 32; ++n)
        EXPECT_LT(std::abs(phi.coeff(n) - ref[static_cast<std::size_t>((n + 64) % 64)]), 1e-13) << n;
}

TEST(BoundaryFunction, ParsevalAndSynthesis) {
    const BoundaryFunction phi(random_samples(128, 2));
    double energy = 0.0;
    for (const auto& c : phi.fft_coeffs())
        energy += std::norm(c);
    EXPECT_NEAR(std::sqrt(energy), phi.l2_norm(), 1e-12 * phi.l2_norm());
    const auto back = phi.synthesize();
    for (std::size_t j = 0; j < phi.size(); ++j)
        EXPECT_LT(std::abs(back[j] - phi.sample(j)), 1e-12);
}

TEST(BoundaryFunction, RejectsBadInput) {
    EXPECT_THROW(BoundaryFunction(std::vector<cplx>(24)), std::invalid_argument);
    EXPECT_THROW(BoundaryFunction(std::vector<cplx>(8)), std::invalid_argument);
    auto s = random_samples(16, 3);
    s[5] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    EXPECT_THROW(BoundaryFunction{s}, std::invalid_argument);
    s[5] = {0.0, std::numeric_limits<double>::infinity()};
    EXPECT_THROW(BoundaryFunction{s}, std::invalid_argument);
    EXPECT_THROW(builtin_phi("cos", 16).coeff(8), std::out_of_range);
}

TEST(BoundaryFunction, RotationShiftsPhases) {
    const BoundaryFunction phi(random_samples(32, 4));
    const auto r = phi.rotated(3);
    for (int n = -16; n < 16; ++n)
        EXPECT_LT(std::abs(r.coeff(n) - phi.coeff(n) * std::polar(1.0, two_pi * 3.0 * n / 32.0)), 1e-12);
}

TEST(Builtins, FourierCoefficients) {
    const auto inv = builtin_phi("inverse", 64);
    EXPECT_NEAR(std::abs(inv.coeff(-1) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(inv.l2_norm(), 1.0, 1e-14);
    const auto p3 = builtin_phi_spec("pole_3", 64);
    EXPECT_NEAR(std::abs(p3.coeff(-3) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(builtin_phi_spec("pole_m:3", 64).coeff(-3) - 1.0), 0.0, 1e-14);
    const auto c = builtin_phi("cos", 64);
    EXPECT_NEAR(c.coeff(1).real(), 0.5, 1e-14);
    EXPECT_NEAR(c.coeff(-1).real(), 0.5, 1e-14);
    EXPECT_TRUE(builtin_phi("zero", 16).is_zero());
    EXPECT_THROW(builtin_phi("nope", 16), std::invalid_argument);
    EXPECT_THROW(builtin_phi("pole_m", 16, 0), std::invalid_argument);
    EXPECT_THROW(builtin_phi_spec("pole_x", 16), std::invalid_argument);
}

TEST(Builtins, ExpCosMatchesBesselSeries) {
    // exp(cos t) = I_0(1) + 2 sum_n I_n(1) cos(n t), so coeff(+-n) = I_n(1).
    const auto phi = builtin_phi("exp_cos", 64);
    for (int n = 0; n <= 12; ++n) {
        EXPECT_NEAR(phi.coeff(n).real(), oracle::bessel_i(n, 1.0), 1e-14) << n;
        EXPECT_NEAR(phi.coeff(-n).real(), oracle::bessel_i(n, 1.0), 1e-14) << n;
    }
}

TEST(BoundaryCsv, RoundTrip) {
    const auto phi = builtin_phi("exp_cos", 32);
    std::stringstream ss;
    write_boundary_csv(ss, phi);
    const auto back = parse_boundary_csv(ss);
    ASSERT_EQ(back.size(), phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j)
        EXPECT_EQ(back.sample(j), phi.sample(j));
}

TEST(BoundaryCsv, Rejections) {
    auto rows = [](std::size_t n, double jitter_at, double nan_at) {
        std::ostringstream os;
        os.precision(17);
        os << "theta,re,im\n";
        for (std::size_t j = 0; j < n; ++j) {
            double t = two_pi * static_cast<double>(j) / static_cast<double>(n);
            if (static_cast<double>(j) == jitter_at)
                t += 1e-6;
            os << t << ',' << (static_cast<double>(j) == nan_at ? "nan" : "1.0") << ",0\n";
        }
        return os.str();
    };
    std::istringstream good(rows(16, -1, -1));
    EXPECT_NO_THROW(parse_boundary_csv(good));
    std::istringstream jitter(rows(16, 3, -1));
    EXPECT_THROW(parse_boundary_csv(jitter), std::invalid_argument);
    std::istringstream count(rows(24, -1, -1));
    EXPECT_THROW(parse_boundary_csv(count), std::invalid_argument);
    std::istringstream nan(rows(16, -1, 2));
    EXPECT_THROW(parse_boundary_csv(nan), std::invalid_argument);
    std::istringstream header("x,y,z\n");
    EXPECT_THROW(parse_boundary_csv(header), std::invalid_argument);
    std::istringstream shortrow("theta,re,im\n0,1\n");
    EXPECT_THROW(parse_boundary_csv(shortrow), std::invalid_argument);
}

TEST(SampledSet, Constructors) {
    const auto c = SampledSet::circle(8);
    EXPECT_EQ(c.size(), 8u);
    EXPECT_FALSE(c.is_real_line());
    for (const auto& p : c.points())
        EXPECT_NEAR(std::abs(p.z), 1.0, 1e-15);
    const auto i = SampledSet::chebyshev_interval(5);
    EXPECT_TRUE(i.is_real_line());
    EXPECT_NEAR(i[2].z.real(), 0.0, 1e-15);
    EXPECT_THROW(SampledSet(3, {Point{}}), std::invalid_argument);
    EXPECT_THROW(SampledSet(1, {}), std::invalid_argument);
}

TEST(DegreeCurve, InsertAndRunningMax) {
    DegreeCurve c;
    c.insert(1, {0.1, 0.2});
    c.insert(2, {0.05, 0.3});
    c.insert(3, {0.2, 0.25});
    EXPECT_DOUBLE_EQ(c.running_max_lb(2), 0.1);
    EXPECT_DOUBLE_EQ(c.running_max_lb(3), 0.2);
    EXPECT_FALSE(c.any_unbounded());
    EXPECT_THROW(c.insert(0, {0, 0}), std::invalid_argument);
    EXPECT_THROW(c.insert(4, {1.0, 0.5}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    c.insert(4, {inf, inf, BracketStatus::unbounded});
    EXPECT_TRUE(c.any_unbounded());
}

TEST(Format, RoundTripsDoubles) {
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_double(x)), x);
}

#include "oracles.hpp"
#include "phull/optimize.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace phull;

namespace {

struct Instance {
    ModulusProgram prog;
    std::vector<std::vector<cplx>> rows;
    std::vector<cplx> l;
};

Instance random_instance(std::mt19937_64& g, int n, int m) {
    std::normal_distribution<double> nd;
    Instance in;
    in.prog.objective.resize(n);
    in.prog.constraints.resize(m, n);
    in.l.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        in.prog.objective(i) = in.l[static_cast<std::size_t>(i)] = {nd(g), nd(g)};
    for (int j = 0; j < m; ++j) {
        std::vector<cplx> r(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            in.prog.constraints(j, i) = r[static_cast<std::size_t>(i)] = {nd(g), nd(g)};
        in.rows.push_back(r);
    }
    return in;
}

double max_constraint(const ModulusProgram& p, const Eigen::VectorXcd& c) {
    return (p.constraints * c).cwiseAbs().maxCoeff();
}

} // namespace

TEST(MaxModulus, BracketsBruteForceGrid) {
    std::mt19937_64 g(5);
    for (int t = 0; t < 24; ++t) {
        const int n = 1 + t % 2, m = n + 1 + t % 2; // n <= 2, m <= 3
        const Instance in = random_instance(g, n, m);
        const double oracle_value = oracle::grid_max_modulus(in.rows, in.l);
        const Bracket b = max_modulus(in.prog);
        ASSERT_EQ(b.status, BracketStatus::bounded);
        EXPECT_LE(b.lb, b.ub);
        EXPECT_GE(b.ub, oracle_value * (1.0 - 1e-9)) << t;
        EXPECT_GE(b.lb, oracle_value * (1.0 - 1e-4)) << t; // grid resolution
        EXPECT_LE(max_constraint(in.prog, b.witness), 1.0 + 1e-12);
        EXPECT_NEAR(std::abs((in.prog.objective.transpose() * b.witness)(0)), b.lb, 1e-12 * (1.0 + b.lb));
    }
}

TEST(MaxModulus, ZeroConstraintsAreUnbounded) {
    ModulusProgram p;
    p.objective = Eigen::VectorXcd::Ones(2);
    p.constraints = Eigen::MatrixXcd::Zero(3, 2);
    const Bracket b = max_modulus(p);
    EXPECT_EQ(b.status, BracketStatus::unbounded);
    EXPECT_TRUE(std::isinf(b.lb) && std::isinf(b.ub));
}

TEST(MaxModulus, NullDirectionWithObjectiveSupport) {
    // Constraints see only c0; the objective depends on c1.
    ModulusProgram p;
    p.objective.resize(2);
    p.objective << 1.0, 1.0;
    p.constraints = Eigen::MatrixXcd::Zero(4, 2);
    p.constraints.col(0).setOnes();
    EXPECT_EQ(max_modulus(p).status, BracketStatus::unbounded);
    // Objective orthogonal to the null direction stays bounded.
    p.objective << 2.0, 0.0;
    const Bracket b = max_modulus(p);
    ASSERT_EQ(b.status, BracketStatus::bounded);
    EXPECT_NEAR(b.lb, 2.0, 1e-9);
}

TEST(MaxModulus, MoreRowsNeverIncrease) {
    std::mt19937_64 g(9);
    for (int t = 0; t < 10; ++t) {
        const Instance big = random_instance(g, 3, 8);
        ModulusProgram small = big.prog;
        small.constraints = big.prog.constraints.topRows(5);
        const Bracket bs = max_modulus(small), bb = max_modulus(big.prog);
        if (bs.status == BracketStatus::unbounded)
            continue;
        EXPECT_LE(bb.lb, bs.ub * (1.0 + 1e-12));
    }
}

TEST(MaxModulus, PhaseCountOnlyTightensUpperBound) {
    std::mt19937_64 g(13);
    const Instance in = random_instance(g, 3, 10);
    MaxModulusOptions once;
    once.refine_rounds = 0;
    ModulusProgram coarse = in.prog;
    coarse.phase_count = 8;
    const Bracket b8 = max_modulus(coarse, once);
    coarse.phase_count = 128;
    const Bracket b128 = max_modulus(coarse, once);
    EXPECT_LE(b128.ub, b8.ub * (1.0 + 1e-12));
    EXPECT_LE(b8.ub, b8.lb / std::cos(std::numbers::pi / 8) * (1.0 + 1e-9));
    const Bracket refined = max_modulus(in.prog);
    EXPECT_LE(refined.ub - refined.lb, 1e-6 * refined.ub);
}

TEST(MaxModulus, Validation) {
    ModulusProgram p;
    p.objective = Eigen::VectorXcd::Ones(2);
    p.constraints = Eigen::MatrixXcd::Ones(3, 3);
    EXPECT_THROW(max_modulus(p), std::invalid_argument);
    p.constraints = Eigen::MatrixXcd::Ones(3, 2);
    p.phase_count = 7;
    EXPECT_THROW(max_modulus(p), std::invalid_argument);
    p.phase_count = 64;
    p.constraints(0, 0) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    EXPECT_THROW(max_modulus(p), std::invalid_argument);
}

#include "phull/simplex.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <limits>
#include <random>

using namespace phull;

namespace {

// Max of g.x over vertices of {G x <= b} in two variables.
double vertex_enumeration(const Eigen::MatrixXd& gm, const Eigen::VectorXd& b, const Eigen::VectorXd& g) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < gm.rows(); ++i)
        for (Eigen::Index j = i + 1; j < gm.rows(); ++j) {
            Eigen::Matrix2d m;
            m << gm.row(i), gm.row(j);
            if (std::abs(m.determinant()) < 1e-12)
                continue;
            const Eigen::Vector2d x = m.inverse() * (Eigen::Vector2d(b(i), b(j)));
            if (((gm * x).array() <= b.array() + 1e-9).all())
                best = std::max(best, g.dot(x));
        }
    return best;
}

} // namespace

TEST(Simplex, MatchesVertexEnumeration) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.5, 2.0);
    for (int t = 0; t < 50; ++t) {
        const int m = 3 + t % 8;
        Eigen::MatrixXd gm(m + 4, 2);
        Eigen::VectorXd b(m + 4);
        for (int i = 0; i < m; ++i) {
            gm.row(i) << nd(rng), nd(rng);
            b(i) = ud(rng);
        }
        gm.bottomRows(4) << 1, 0, -1, 0, 0, 1, 0, -1; // box keeps the region bounded
        b.tail(4).setConstant(5.0);
        const Eigen::Vector2d g(nd(rng), nd(rng));
        const lp::Result r = lp::maximize(lp::DenseRows(gm, b), g, Eigen::VectorXd::Zero(2));
        ASSERT_EQ(r.status, lp::Status::optimal);
        EXPECT_NEAR(r.objective, vertex_enumeration(gm, b, g), 1e-9);
        EXPECT_TRUE(((gm * r.x).array() <= b.array() + 1e-9).all());
    }
}

TEST(Simplex, DetectsUnboundedness) {
    Eigen::MatrixXd gm(2, 2);
    gm << 1, 0, -1, 0;
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(2);
    const lp::Result r = lp::maximize(lp::DenseRows(gm, b), Eigen::Vector2d(0.0, 1.0), Eigen::VectorXd::Zero(2));
    ASSERT_EQ(r.status, lp::Status::unbounded);
    EXPECT_GT(r.ray(1), 0.0);
    EXPECT_TRUE(((gm * r.ray).array() <= 1e-12).all());
}

TEST(Simplex, DegenerateVertex) {
    // Many constraints through the optimum (1, 1).
    const int m = 12;
    Eigen::MatrixXd gm(m, 2);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        const double a = 0.1 + 1.3 * i / (m - 1);
        gm.row(i) << std::cos(a), std::sin(a);
        b(i) = std::cos(a) + std::sin(a);
    }
    const lp::Result r = lp::maximize(lp::DenseRows(gm, b), Eigen::Vector2d(1.0, 1.0), Eigen::VectorXd::Zero(2));
    ASSERT_EQ(r.status, lp::Status::optimal);
    EXPECT_NEAR(r.objective, 2.0, 1e-9);
}

TEST(Simplex, DimensionMismatch) {
    const lp::DenseRows rows(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(2));
    EXPECT_THROW(lp::maximize(rows, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(2)), std::invalid_argument);
    EXPECT_THROW(lp::DenseRows(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

#include "phull/modconst.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace phull;

TEST(ModuleConstant, ZeroFunctionIsPolynomialMaximumPrinciple) {
    const auto phi = builtin_phi("zero", 64);
    for (int d : {1, 3, 6}) {
        const Bracket b = module_constant(ModuleQuery{&phi, cplx(0.3, -0.4), 0.0, d}).bracket;
        EXPECT_NEAR(b.lb, 1.0, 1e-8);
        EXPECT_LE(b.ub, 1.0 + 1e-6);
    }
    EXPECT_TRUE(rudin_test(ModuleQuery{&phi, 0.5, 0.0, 4}));
}

TEST(ModuleConstant, InverseWithMatchingLambdaIsExact) {
    // a + b conj(zeta) with lambda = 2 at z = 0.5 has constant 2 at every degree.
    const auto phi = builtin_phi("inverse", 64);
    for (int d : {1, 2, 4}) {
        const ModuleBracket m = module_constant(ModuleQuery{&phi, 0.5, 2.0, d});
        EXPECT_LE(m.bracket.lb, 2.0 + 1e-9);
        EXPECT_GE(m.bracket.ub, 2.0 - 1e-9);
        EXPECT_NEAR(m.bracket.lb, 2.0, 1e-6);
        EXPECT_EQ(m.a.size(), d + 1);
        EXPECT_EQ(m.b.size(), d + 1);
    }
}

TEST(ModuleConstant, InverseAtOtherPointIsReciprocalModulus) {
    const auto phi = builtin_phi("inverse", 64);
    const Bracket b = module_constant(ModuleQuery{&phi, 0.2, 5.0, 3}).bracket;
    EXPECT_NEAR(b.lb, 5.0, 1e-6);
    EXPECT_FALSE(rudin_test(ModuleQuery{&phi, 0.2, 5.0, 3}));
}

TEST(ModuleConstant, WrongLambdaIsUnbounded) {
    const auto phi = builtin_phi("inverse", 64);
    const Bracket b = module_constant(ModuleQuery{&phi, 0.5, 3.0, 2}).bracket;
    EXPECT_EQ(b.status, BracketStatus::unbounded);
}

TEST(ModuleConstant, Validation) {
    const auto phi = builtin_phi("cos", 32);
    EXPECT_THROW(module_constant(ModuleQuery{nullptr, 0.5, 0.0, 1}), std::invalid_argument);
    EXPECT_THROW(module_constant(ModuleQuery{&phi, 0.5, 0.0, 5}), std::invalid_argument); // N < 8 d
    EXPECT_THROW(module_constant(ModuleQuery{&phi, 1.0, 0.0, 2}), std::invalid_argument);
    EXPECT_THROW(module_constant(ModuleQuery{&phi, 0.0, 0.0, 2}), std::invalid_argument);
    EXPECT_THROW(module_constant(ModuleQuery{&phi, 0.5, 0.0, 0}), std::invalid_argument);
    EXPECT_NO_THROW(module_constant(ModuleQuery{&phi, 0.0, 0.0, 2, true}));
}

TEST(ModuleVerdict, Rules) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(module_verdict({2.0, 2.0, 2.1}, 1.5), ModuleVerdict::bounded);
    EXPECT_EQ(module_verdict({1.0, 2.0, 4.0}, 1.5), ModuleVerdict::growing);
    EXPECT_EQ(module_verdict({1.0, 3.0, 3.0}, 1.5), ModuleVerdict::inconclusive);
    EXPECT_EQ(module_verdict({1.0, inf, inf}, 1.5), ModuleVerdict::growing);
    EXPECT_THROW(module_verdict({1.0, 2.0}, 1.5), std::invalid_argument);
    EXPECT_STREQ(to_string(ModuleVerdict::growing), "growing");
}

TEST(ClassifyModule, SweepAndCsv) {
    const auto phi = builtin_phi("inverse", 64);
    ClassifyModuleOptions opt;
    opt.d_list = {1, 2, 4};
    const auto rows = classify_module(phi, {0.5, cplx(0.0, 0.25), 1.5}, [](cplx z) { return 1.0 / z; }, opt);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].verdict, ModuleVerdict::bounded);
    EXPECT_EQ(rows[1].verdict, ModuleVerdict::bounded);
    EXPECT_FALSE(rows[2].error.empty());
    std::ostringstream csv;
    write_module_csv(csv, rows);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "re_z,im_z,re_lambda,im_lambda,degree,lb,ub,verdict");
    opt.d_list = {4, 2, 8};
    EXPECT_THROW(classify_module(phi, {0.5}, [](cplx) { return cplx{}; }, opt), std::invalid_argument);
}

TEST(ClassifyModule, ThreadCountDoesNotChangeResults) {
    const auto phi = builtin_phi("cos", 64);
    ClassifyModuleOptions a, b;
    a.d_list = b.d_list = {1, 2, 3};
    b.module.threads = 4;
    const auto rule = [](cplx z) { return 0.5 * (z + 1.0 / z); };
    std::ostringstream ca, cb;
    write_module_csv(ca, classify_module(phi, {0.3, 0.6}, rule, a));
    write_module_csv(cb, classify_module(phi, {0.3, 0.6}, rule, b));
    EXPECT_EQ(ca.str(), cb.str());
}

TEST(ClassifyModule, DoublePoleWithMatchingLambdaIsBounded) {
    const auto phi = builtin_phi("pole_m", 128, 2);
    ClassifyModuleOptions opt;
    opt.d_list = {4, 8, 16};
    const auto rows = classify_module(phi, {0.5}, [](cplx z) { return 1.0 / (z * z); }, opt);
    EXPECT_EQ(rows[0].verdict, ModuleVerdict::bounded);
    EXPECT_NEAR(rows[0].curve.at(16).lb, 4.0, 1e-6);
}

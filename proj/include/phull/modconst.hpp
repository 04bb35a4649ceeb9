#pragma once

#include "phull/core.hpp"
#include "phull/optimize.hpp"
#include "phull/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phull {

// Pointwise evaluation functional on the module {a + b phi : deg a, deg b <= d}.
struct ModuleQuery {
    const BoundaryFunction* phi = nullptr;
    cplx z{};
    cplx lambda{};
    int d = 1;
    bool allow_origin = false;
};

struct ModuleOptions {
    MaxModulusOptions solver;
    int phase_count = 64;
    unsigned threads = 1;
};

// Coefficients [a_0..a_d, b_0..b_d].
struct ModuleBracket {
    Bracket bracket;
    Eigen::VectorXcd a;
    Eigen::VectorXcd b;
};

inline void validate(const ModuleQuery& q) {
    if (q.phi == nullptr)
        throw std::invalid_argument("module query: no boundary function");
    if (q.d < 1)
        throw std::invalid_argument("module query: degree must be >= 1");
    if (q.phi->size() < 8 * static_cast<std::size_t>(q.d))
        throw std::invalid_argument("module query: N = " + std::to_string(q.phi->size()) + " is below 8 d = " +
                                    std::to_string(8 * q.d));
    if (!all_finite(q.z) || !all_finite(q.lambda))
        throw std::invalid_argument("module query: non-finite z or lambda");
    if (!(std::abs(q.z) < 1.0))
        throw std::invalid_argument("module query: |z| must be < 1");
    if (q.z == cplx{} && !q.allow_origin)
        throw std::invalid_argument("module query: z = 0 requires the origin flag");
}

inline ModuleBracket module_constant(const ModuleQuery& q, const ModuleOptions& opt = {}) {
    validate(q);
    const BoundaryFunction& phi = *q.phi;
    const int d = q.d;
    const auto n = static_cast<Eigen::Index>(phi.size());
    ModulusProgram prog;
    prog.phase_count = opt.phase_count;
    prog.constraints.resize(n, 2 * (d + 1));
    prog.objective.resize(2 * (d + 1));
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx zeta = phi.node(static_cast<std::size_t>(j));
        const cplx f = phi.sample(static_cast<std::size_t>(j));
        cplx p{1.0, 0.0};
        for (int l = 0; l <= d; ++l, p *= zeta) {
            prog.constraints(j, l) = p;
            prog.constraints(j, d + 1 + l) = p * f;
        }
    }
    cplx p{1.0, 0.0};
    for (int l = 0; l <= d; ++l, p *= q.z) {
        prog.objective(l) = p;
        prog.objective(d + 1 + l) = p * q.lambda;
    }
    ModuleBracket out;
    out.bracket = max_modulus(prog, opt.solver);
    out.a = out.bracket.witness.head(d + 1);
    out.b = out.bracket.witness.tail(d + 1);
    return out;
}

inline constexpr double rudin_tolerance = 1e-6;

// Whether the module satisfies the unweighted maximum principle at z.
inline bool rudin_test(const ModuleQuery& q, const ModuleOptions& opt = {}) {
    const ModuleBracket m = module_constant(q, opt);
    return m.bracket.status == BracketStatus::bounded && m.bracket.ub <= 1.0 + rudin_tolerance;
}

enum class ModuleVerdict { bounded, growing, inconclusive };

inline const char* to_string(ModuleVerdict v) {
    switch (v) {
    case ModuleVerdict::bounded: return "bounded";
    case ModuleVerdict::growing: return "growing";
    case ModuleVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ModuleClassification {
    cplx z{};
    cplx lambda{};
    DegreeCurve curve; // brackets of W(d)
    ModuleVerdict verdict = ModuleVerdict::inconclusive;
    bool unbounded = false;
    std::string error; // set when the sweep failed at this z
};

// Verdict from the certified lower bounds W(d) of an increasing degree list.
inline ModuleVerdict module_verdict(const std::vector<double>& w, double growth_ratio) {
    if (w.size() < 3)
        throw std::invalid_argument("module verdict: need at least three degrees");
    for (double v : w)
        if (std::isinf(v))
            return ModuleVerdict::growing;
    if (w.back() / w.front() <= growth_ratio)
        return ModuleVerdict::bounded;
    const double step = std::pow(growth_ratio, 1.0 / static_cast<double>(w.size() - 1));
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!(w[i] / w[i - 1] >= step))
            return ModuleVerdict::inconclusive;
    return ModuleVerdict::growing;
}

struct ClassifyModuleOptions {
    std::vector<int> d_list{4, 8, 16, 24};
    double growth_ratio = 1.5;
    bool allow_origin = false;
    ModuleOptions module;
};

using LambdaRule = std::function<cplx(cplx)>;

inline std::vector<ModuleClassification> classify_module(const BoundaryFunction& phi, const std::vector<cplx>& z_list,
                                                         const LambdaRule& lambda_rule,
                                                         const ClassifyModuleOptions& opt = {}) {
    const auto& dl = opt.d_list;
    if (dl.size() < 3)
        throw std::invalid_argument("classify_module: d_list needs at least three entries");
    for (std::size_t i = 1; i < dl.size(); ++i)
        if (dl[i] <= dl[i - 1])
            throw std::invalid_argument("classify_module: d_list must be strictly increasing");
    if (!(opt.growth_ratio > 1.0))
        throw std::invalid_argument("classify_module: growth ratio must exceed 1");

    std::vector<ModuleClassification> out(z_list.size());
    for (std::size_t i = 0; i < z_list.size(); ++i) {
        out[i].z = z_list[i];
        out[i].lambda = lambda_rule(z_list[i]);
    }
    // One task per (z, d) pair.
    const std::size_t nd = dl.size();
    std::vector<ModuleBracket> results(z_list.size() * nd);
    std::vector<std::string> errors(results.size());
    ModuleOptions inner = opt.module;
    parallel_for(results.size(), opt.module.threads, [&](std::size_t t) {
        const std::size_t i = t / nd;
        try {
            ModuleQuery q{&phi, out[i].z, out[i].lambda, dl[t % nd], opt.allow_origin};
            results[t] = module_constant(q, inner);
        } catch (const std::exception& ex) {
            errors[t] = ex.what();
        }
    });
    for (std::size_t i = 0; i < z_list.size(); ++i) {
        std::vector<double> w;
        for (std::size_t k = 0; k < nd; ++k) {
            const std::size_t t = i * nd + k;
            if (!errors[t].empty()) {
                out[i].error = errors[t];
                break;
            }
            const Bracket& b = results[t].bracket;
            out[i].curve.insert(dl[k], CurveEntry{b.lb, b.ub, b.status});
            out[i].unbounded = out[i].unbounded || b.status == BracketStatus::unbounded;
            w.push_back(b.lb);
        }
        if (out[i].error.empty())
            out[i].verdict = module_verdict(w, opt.growth_ratio);
    }
    return out;
}

// re_z,im_z,re_lambda,im_lambda,degree,lb,ub,verdict
inline void write_module_csv(std::ostream& out, const std::vector<ModuleClassification>& rows) {
    out << "re_z,im_z,re_lambda,im_lambda,degree,lb,ub,verdict\n";
    for (const auto& r : rows) {
        const std::string head = format_double(r.z.real()) + "," + format_double(r.z.imag()) + "," +
                                 format_double(r.lambda.real()) + "," + format_double(r.lambda.imag()) + ",";
        const std::string verdict = r.error.empty() ? to_string(r.verdict) : "error";
        for (const auto& [d, e] : r.curve.entries())
            out << head << d << ',' << format_double(e.lb) << ',' << format_double(e.ub) << ',' << verdict << '\n';
        if (r.curve.empty())
            out << head << ",,," << verdict << '\n';
    }
}

} // namespace phull

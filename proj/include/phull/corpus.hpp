#pragma once

#include "phull/core.hpp"
#include "phull/extend.hpp"
#include "phull/extremal.hpp"
#include "phull/hull.hpp"
#include "phull/modconst.hpp"
#include "phull/optimize.hpp"
#include "phull/poly.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

// The acceptance corpus: fixed oracle checks plus seeded property suites.
namespace phull::corpus {

struct Outcome {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    unsigned threads = 1;
    std::uint64_t seed = 20240611;
    int instances = 20; // per property suite
};

namespace util {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// T_n(x) by the three-term recurrence.
inline double chebyshev_t(int n, double x) {
    double prev = 1.0, cur = x;
    if (n == 0)
        return prev;
    for (int k = 2; k <= n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct Checker {
    bool ok = true;
    std::ostringstream notes;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok)
                notes << "; ";
            notes << what;
            ok = false;
        }
    }
};

} // namespace util

inline Outcome extremal_circle(const Options& o) {
    util::Checker c;
    ExtremalOptions eo;
    eo.threads = o.threads;
    const auto k = SampledSet::circle(512);
    const double v2 = extremal_at(k, Point{2.0, 0.0}, 8, eo).value;
    const double v05 = extremal_at(k, Point{0.5, 0.0}, 8, eo).value;
    const double l2 = std::log(2.0);
    c.expect(v2 >= l2 - 1e-9 && v2 <= l2 * 1.005, "V(2) = " + util::fmt(v2) + " outside [log 2 - 1e-9, 1.005 log 2]");
    c.expect(v05 == 0.0, "V(0.5) = " + util::fmt(v05) + " is not 0");
    return {1, "extremal circle", c.ok,
            c.ok ? "V(2) = " + util::fmt(v2) + ", V(0.5) = " + util::fmt(v05) : c.notes.str()};
}

inline Outcome extremal_interval(const Options& o) {
    util::Checker c;
    ExtremalOptions eo;
    eo.threads = o.threads;
    const auto est = extremal_at(SampledSet::chebyshev_interval(1024), Point{2.0, 0.0}, 16, eo);
    const double lb16 = est.curve.at(16).lb;
    const double oracle = std::log(util::chebyshev_t(16, 2.0)) / 16.0;
    const double cap = std::log(2.0 + std::sqrt(3.0)) * 1.005;
    c.expect(lb16 >= oracle - 1e-6, "lb(16) = " + util::fmt(lb16) + " < oracle " + util::fmt(oracle));
    c.expect(est.value <= cap, "value " + util::fmt(est.value) + " > " + util::fmt(cap));
    return {2, "extremal interval", c.ok,
            c.ok ? "lb(16) = " + util::fmt(lb16) + " >= " + util::fmt(oracle) + ", value " + util::fmt(est.value)
                 : c.notes.str()};
}

inline Outcome module_exact(const Options& o) {
    util::Checker c;
    ModuleOptions mo;
    mo.threads = o.threads;
    const auto phi = builtin_phi("inverse", 256);
    std::ostringstream d;
    for (int deg : {2, 4, 8, 16}) {
        const Bracket b = module_constant(ModuleQuery{&phi, 0.5, 2.0, deg}, mo).bracket;
        c.expect(b.status == BracketStatus::bounded && b.lb <= 2.0 && 2.0 <= b.ub && b.ub - b.lb <= 0.01,
                 "d = " + std::to_string(deg) + " bracket [" + util::fmt(b.lb) + ", " + util::fmt(b.ub) + "]");
        d << "d" << deg << " [" << util::fmt(b.lb) << "," << util::fmt(b.ub) << "] ";
    }
    const double w4 = module_constant(ModuleQuery{&phi, 0.5, 3.0, 4}, mo).bracket.lb;
    const double w16 = module_constant(ModuleQuery{&phi, 0.5, 3.0, 16}, mo).bracket.lb;
    // Compared in the extended reals; both sides may be +inf.
    c.expect(w16 >= 1.5 * w4, "lambda = 3: W(16) = " + util::fmt(w16) + ", W(4) = " + util::fmt(w4));
    d << "lambda=3: W(4)=" << util::fmt(w4) << " W(16)=" << util::fmt(w16);
    return {3, "module constants exact case", c.ok, c.ok ? d.str() : c.notes.str()};
}

inline Outcome rudin_regime(const Options& o) {
    util::Checker c;
    ModuleOptions mo;
    mo.threads = o.threads;
    const auto phi = builtin_phi("zero", 256);
    const ModuleQuery q{&phi, 0.5, 0.0, 16};
    const Bracket b = module_constant(q, mo).bracket;
    const bool rt = rudin_test(q, mo);
    c.expect(rt, "rudin_test false");
    c.expect(b.lb >= 1.0 - 1e-9 && b.ub <= 1.005, "W bracket [" + util::fmt(b.lb) + ", " + util::fmt(b.ub) + "]");
    return {4, "Rudin regime", c.ok,
            c.ok ? "W in [" + util::fmt(b.lb) + ", " + util::fmt(b.ub) + "]" : c.notes.str()};
}

inline Outcome quotient_reconstruction(const Options&) {
    util::Checker c;
    const auto cosphi = builtin_phi("cos", 256);
    const QuotientModel m = annihilator(cosphi, 2);
    const cplx h = evaluate_quotient(m, 0.3);
    const auto poles = pole_candidates(m);
    c.expect(m.residual <= 1e-10, "cos residual " + util::fmt(m.residual));
    c.expect(std::abs(h - (0.09 + 1.0) / 0.6) <= 1e-6, "h(0.3) = " + util::fmt(h.real()));
    c.expect(poles.size() == 1 && std::abs(poles[0].location) <= 1e-8 && poles[0].multiplicity == 1,
             "cos poles: " + std::to_string(poles.size()));
    const auto p2 = builtin_phi("pole_m", 256, 2);
    const auto poles2 = pole_candidates(annihilator(p2, 2));
    c.expect(poles2.size() == 1 && std::abs(poles2[0].location) <= 1e-8 && poles2[0].multiplicity == 2,
             "pole_2 poles: " + std::to_string(poles2.size()));
    return {5, "quotient reconstruction", c.ok,
            c.ok ? "residual " + util::fmt(m.residual) + ", h(0.3) = " + util::fmt(h.real()) : c.notes.str()};
}

struct CrossRow {
    std::string name;
    ModuleVerdict module = ModuleVerdict::inconclusive;
    ExtendVerdict extend = ExtendVerdict::inconclusive;
    cplx lambda{};
};

inline std::vector<CrossRow> cross_equivalence_rows(const Options& o, cplx z = 0.2) {
    std::vector<CrossRow> rows;
    ClassifyModuleOptions co;
    co.module.threads = o.threads;
    for (const char* name : {"zero", "inverse", "pole_2", "cos", "exp_cos", "abs_sin"}) {
        const auto phi = builtin_phi_spec(name, 256);
        CrossRow r;
        r.name = name;
        r.extend = extendability_score(phi).verdict;
        const QuotientModel model = interior_model(phi);
        const auto cls = classify_module(phi, {z}, [&](cplx x) { return evaluate_quotient(model, x); }, co);
        r.lambda = cls[0].lambda;
        r.module = cls[0].verdict;
        rows.push_back(r);
    }
    return rows;
}

inline Outcome cross_equivalence(const Options& o) {
    util::Checker c;
    std::ostringstream d;
    const auto rows = cross_equivalence_rows(o);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool bounded = r.module == ModuleVerdict::bounded;
        const bool mero = r.extend == ExtendVerdict::meromorphic_consistent;
        const bool expected = i < 4;
        c.expect(bounded == mero, r.name + ": modconst " + to_string(r.module) + " vs extend " + to_string(r.extend));
        c.expect(bounded == expected && mero == expected, r.name + ": expected " + (expected ? "yes" : "no"));
        d << r.name << "=" << to_string(r.module) << "/" << to_string(r.extend) << " ";
    }
    return {6, "cross-equivalence", c.ok, c.ok ? d.str() : c.notes.str() + " | " + d.str()};
}

inline Outcome pole_order(const Options& o) {
    util::Checker c;
    ExtremalOptions eo;
    eo.threads = o.threads;
    const std::vector<double> radii{0.3, 0.4, 0.5, 0.6, 0.7};
    const auto p2 = builtin_phi("pole_m", 512, 2);
    const auto zero = builtin_phi("zero", 512);
    const double m2 = pole_order_fit(p2, radii, 8, 6, quotient_rule(p2), eo).m_hat;
    const double m0 = pole_order_fit(zero, radii, 8, 6, quotient_rule(zero), eo).m_hat;
    c.expect(m2 >= 1.75 && m2 <= 2.25, "pole_2 m_hat " + util::fmt(m2));
    c.expect(m0 >= -0.05 && m0 <= 0.05, "zero m_hat " + util::fmt(m0));
    return {7, "pole-order fit", c.ok, "m_hat(pole_2) = " + util::fmt(m2) + ", m_hat(zero) = " + util::fmt(m0)};
}

inline Outcome slice_separation(const Options& o) {
    util::Checker c;
    SliceOptions so;
    so.extremal.threads = o.threads;
    const auto zero = builtin_phi("zero", 256);
    const std::vector<cplx> wz{0.0, 0.3, -0.3, 0.6, -0.6, cplx(0, 0.3), cplx(0, -0.6)};
    const HullSlice s0 = hull_slice(zero, 0.5, wz, 6, 0.0, so);
    for (std::size_t i = 0; i < s0.size(); ++i) {
        const bool finite = s0.ok(i) && std::isfinite(s0.values[i].value);
        if (wz[i] == cplx{})
            c.expect(finite, "zero: w = 0 not finite");
        else
            c.expect(std::string(slice_status(s0, i)) == "unbounded",
                     "zero: w = " + util::fmt(wz[i].real()) + "," + util::fmt(wz[i].imag()) + " not unbounded");
    }
    const auto p2 = builtin_phi("pole_m", 256, 2);
    const std::vector<cplx> wp{5.5, 6.0, 6.25, 6.5, 7.0, cplx(6.25, 0.25), cplx(6.25, -0.25)};
    const HullSlice s2 = hull_slice(p2, 0.4, wp, 6, 6.25, so);
    const double on = s2.values[2].value;
    c.expect(s2.ok(2) && std::abs(on - (-2.0 * std::log(0.4))) <= 0.02, "pole_2 on-graph value " + util::fmt(on));
    for (std::size_t i = 0; i < s2.size(); ++i)
        if (i != 2)
            c.expect(s2.ok(i) && s2.values[i].value > on, "pole_2: node " + std::to_string(i) + " not above graph value");
    return {8, "hull-slice separation", c.ok, c.ok ? "pole_2 on-graph " + util::fmt(on) : c.notes.str()};
}

// ---------------------------------------------------------------------------
// Property suites

namespace util {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
inline cplx cnormal(Rng& g) {
    std::normal_distribution<double> n;
    return {n(g), n(g)};
}

inline BoundaryFunction random_phi(Rng& g, std::size_t n, int band) {
    std::vector<cplx> s(n);
    std::vector<cplx> c(static_cast<std::size_t>(2 * band + 1));
    for (auto& v : c)
        v = cnormal(g) / static_cast<double>(c.size());
    for (std::size_t j = 0; j < n; ++j) {
        const double t = two_pi * static_cast<double>(j) / static_cast<double>(n);
        for (int k = -band; k <= band; ++k)
            s[j] += c[static_cast<std::size_t>(k + band)] * std::polar(1.0, k * t);
    }
    return BoundaryFunction(std::move(s));
}

struct Suite {
    std::string name;
    int failures = 0;
    int runs = 0;
    std::string first;
    void check(bool cond, const std::string& what) {
        ++runs;
        if (!cond) {
            if (failures == 0)
                first = what;
            ++failures;
        }
    }
};

} // namespace util

inline util::Suite suite_soundness(const Options& o) {
    util::Suite s{"bracket soundness", 0, 0, {}};
    util::Rng g(o.seed + 1);
    for (int t = 0; t < o.instances; ++t) {
        ModulusProgram p;
        const int n = 1 + static_cast<int>(g() % 4), m = 6 + static_cast<int>(g() % 12);
        p.objective.resize(n);
        p.constraints.resize(m, n);
        for (int i = 0; i < n; ++i)
            p.objective(i) = util::cnormal(g);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                p.constraints(j, i) = util::cnormal(g);
        const Bracket b = max_modulus(p);
        const double feas = (p.constraints * b.witness).cwiseAbs().maxCoeff();
        const double val = std::abs((p.objective.transpose() * b.witness)(0));
        const double poly = 1.0 / std::pow(std::cos(std::numbers::pi / p.phase_count), 2);
        s.check(feas <= 1.0 + 1e-9 && std::abs(val - b.lb) <= 1e-9 * std::max(1.0, b.lb) && b.lb <= b.ub &&
                    b.ub <= b.lb * (poly + 1e-9),
                "program " + std::to_string(t));

        // witness of an extremal estimate on a random planar cloud
        std::vector<Point> pts(static_cast<std::size_t>(16 + g() % 32));
        for (auto& q : pts)
            q.z = std::polar(util::uniform(g, 0.5, 1.0), util::uniform(g, 0.0, two_pi));
        const SampledSet k(1, pts);
        const int d = 1 + static_cast<int>(g() % 4);
        const ExtremalEstimate e = extremal_at(k, Point{std::polar(util::uniform(g, 1.1, 2.0), 0.3), 0.0}, d);
        bool ok = true;
        for (const auto& [deg, entry] : e.curve.entries())
            ok = ok && witness_sup_norm(e, deg, k) <= 1.0 + 1e-9;
        s.check(ok, "extremal witness " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_degree_monotone(const Options& o) {
    util::Suite s{"degree monotonicity", 0, 0, {}};
    util::Rng g(o.seed + 2);
    for (int t = 0; t < o.instances; ++t) {
        const auto phi = util::random_phi(g, 64, 2);
        const cplx z = std::polar(util::uniform(g, 0.2, 0.8), util::uniform(g, 0.0, two_pi));
        const cplx lambda = util::cnormal(g);
        double prev_lb = 0.0;
        bool ok = true;
        for (int d = 1; d <= 4; ++d) {
            const Bracket b = module_constant(ModuleQuery{&phi, z, lambda, d}).bracket;
            ok = ok && b.ub >= prev_lb;
            prev_lb = std::max(prev_lb, b.lb);
        }
        s.check(ok, "module instance " + std::to_string(t));

        const auto k = SampledSet::circle(32 + 8 * (g() % 4));
        const Point q{std::polar(util::uniform(g, 1.05, 2.0), util::uniform(g, 0.0, two_pi)), 0.0};
        const double v2 = extremal_at(k, q, 2).value;
        const double v4 = extremal_at(k, q, 4).value;
        s.check(v4 >= v2, "extremal instance " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_set_monotone(const Options& o) {
    util::Suite s{"set monotonicity", 0, 0, {}};
    util::Rng g(o.seed + 3);
    for (int t = 0; t < o.instances; ++t) {
        std::vector<Point> big(static_cast<std::size_t>(24 + g() % 24));
        for (auto& p : big)
            p.z = std::polar(util::uniform(g, 0.3, 1.0), util::uniform(g, 0.0, two_pi));
        std::vector<Point> small(big.begin(), big.begin() + static_cast<std::ptrdiff_t>(big.size() * 2 / 3));
        const SampledSet k1(1, small), k2(1, big);
        const Point q{std::polar(util::uniform(g, 1.1, 1.6), util::uniform(g, 0.0, two_pi)), 0.0};
        const int d = 1 + static_cast<int>(g() % 3);
        const auto e1 = extremal_at(k1, q, d), e2 = extremal_at(k2, q, d);
        bool ok = e1.value + 1e-7 >= e2.value;
        for (int deg = 1; deg <= d; ++deg)
            ok = ok && e1.curve.at(deg).ub >= e2.curve.at(deg).lb;
        s.check(ok, "instance " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_rotation(const Options& o) {
    util::Suite s{"rotation covariance", 0, 0, {}};
    util::Rng g(o.seed + 4);
    for (int t = 0; t < o.instances; ++t) {
        const std::size_t n = 64;
        const auto shift = static_cast<std::size_t>(g() % n);
        const cplx rho = std::polar(1.0, two_pi * static_cast<double>(shift) / static_cast<double>(n));
        const auto k = SampledSet::circle(n);
        const Point q{std::polar(util::uniform(g, 1.1, 2.0), util::uniform(g, 0.0, two_pi)), 0.0};
        const int d = 1 + static_cast<int>(g() % 4);
        const double a = extremal_at(k, q, d).value;
        const double b = extremal_at(k.rotated(rho), Point{rho * q.z, 0.0}, d).value;
        s.check(std::abs(a - b) <= 1e-9, "extremal instance " + std::to_string(t));

        // psi(theta) = phi(theta + tau): W(psi, z) = W(phi, e^{i tau} z).
        const auto phi = util::random_phi(g, n, 2);
        const auto psi = phi.rotated(shift);
        const cplx z = std::polar(util::uniform(g, 0.2, 0.8), util::uniform(g, 0.0, two_pi));
        const cplx lambda = util::cnormal(g);
        const Bracket b1 = module_constant(ModuleQuery{&psi, z, lambda, d}).bracket;
        const Bracket b2 = module_constant(ModuleQuery{&phi, rho * z, lambda, d}).bracket;
        const bool same = b1.status == b2.status &&
                          (b1.status == BracketStatus::unbounded ||
                           (b1.lb <= b2.ub * (1 + 1e-9) && b2.lb <= b1.ub * (1 + 1e-9)));
        s.check(same, "module instance " + std::to_string(t));

        // Circle means of graph estimates are invariant under rotating phi.
        const auto p2 = builtin_phi("pole_m", 64, 1 + static_cast<int>(g() % 2));
        const std::size_t s8 = 8 * (g() % 8);
        const auto rot = p2.rotated(s8);
        const std::vector<double> radii{0.4, 0.5, 0.6};
        const auto f1 = pole_order_fit(p2, radii, 8, 2, quotient_rule(p2));
        const auto f2 = pole_order_fit(rot, radii, 8, 2, quotient_rule(rot));
        bool ok = true;
        for (std::size_t i = 0; i < radii.size(); ++i)
            ok = ok && std::abs(f1.circle_means[i] - f2.circle_means[i]) <= 1e-9;
        s.check(ok, "circle-mean instance " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_invariance(const Options& o) {
    util::Suite s{"scalar and gauge invariance", 0, 0, {}};
    util::Rng g(o.seed + 5);
    for (int t = 0; t < o.instances; ++t) {
        const auto phi = util::random_phi(g, 64, 2);
        const cplx c = util::cnormal(g);
        const auto cphi = phi.scaled(c);
        const cplx z = std::polar(util::uniform(g, 0.2, 0.8), util::uniform(g, 0.0, two_pi));
        const cplx lambda = util::cnormal(g);
        const int d = 1 + static_cast<int>(g() % 4);
        const Bracket b1 = module_constant(ModuleQuery{&phi, z, lambda, d}).bracket;
        const Bracket b2 = module_constant(ModuleQuery{&cphi, z, c * lambda, d}).bracket;
        const bool same = b1.status == b2.status &&
                          (b1.status == BracketStatus::unbounded ||
                           (b1.lb <= b2.ub * (1 + 1e-9) && b2.lb <= b1.ub * (1 + 1e-9)));
        s.check(same, "scalar instance " + std::to_string(t));

        const cplx u = std::polar(1.0, util::uniform(g, 0.0, two_pi));
        const auto rat = builtin_phi_spec(t % 2 ? "cos" : "pole_2", 128);
        const auto m1 = annihilator(rat, 2), m2 = annihilator(rat.scaled(u), 2);
        bool ok = std::abs(m1.residual - m2.residual) <= 1e-10;
        for (std::size_t j = 0; j < m1.l_coeffs.size(); ++j)
            ok = ok && std::abs(m2.l_coeffs[j] - u * m1.l_coeffs[j]) <= 1e-10;
        const auto p1 = pole_candidates(m1), p2 = pole_candidates(m2);
        ok = ok && poles_agree(p1, p2, 1e-10);
        s.check(ok, "gauge instance " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_parseval(const Options& o) {
    util::Suite s{"Parseval", 0, 0, {}};
    util::Rng g(o.seed + 6);
    for (int t = 0; t < o.instances; ++t) {
        const std::size_t n = std::size_t{16} << (g() % 6);
        std::vector<cplx> v(n);
        for (auto& x : v)
            x = util::cnormal(g);
        const BoundaryFunction phi(v);
        double lhs = 0.0, rhs = 0.0;
        for (const auto& x : v)
            lhs += std::norm(x);
        lhs /= static_cast<double>(n);
        for (const auto& x : phi.fft_coeffs())
            rhs += std::norm(x);
        const auto back = phi.synthesize();
        double err = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            err = std::max(err, std::abs(back[j] - v[j]));
            scale = std::max(scale, std::abs(v[j]));
        }
        s.check(std::abs(lhs - rhs) <= 1e-12 * lhs && err <= 1e-12 * scale, "instance " + std::to_string(t));
    }
    return s;
}

inline util::Suite suite_determinism(const Options& o) {
    util::Suite s{"deterministic re-run", 0, 0, {}};
    util::Rng g(o.seed + 7);
    for (int t = 0; t < o.instances; ++t) {
        std::vector<Point> grid;
        for (int i = 0; i < 3; ++i)
            grid.push_back(Point{std::polar(util::uniform(g, 0.5, 2.0), util::uniform(g, 0.0, two_pi)), 0.0});
        const auto k = SampledSet::circle(32);
        const int d = 1 + static_cast<int>(g() % 3);
        auto render = [&](unsigned threads) {
            ExtremalOptions eo;
            eo.threads = threads;
            std::ostringstream os;
            write_extremal_csv(os, extremal_grid(k, grid, d, eo), 1);
            return os.str();
        };
        const auto phi = util::random_phi(g, 64, 2);
        auto render_model = [&] {
            std::ostringstream os;
            const auto m = annihilator(phi, 2);
            write_model_csv(os, m);
            write_poles_csv(os, pole_candidates(m));
            return os.str();
        };
        s.check(render(1) == render(1) && render(1) == render(std::max(2u, o.threads)) &&
                    render_model() == render_model(),
                "instance " + std::to_string(t));
    }
    return s;
}

inline Outcome property_suites(const Options& o, std::vector<util::Suite>* out = nullptr) {
    std::vector<util::Suite> suites;
    suites.push_back(suite_soundness(o));
    suites.push_back(suite_degree_monotone(o));
    suites.push_back(suite_set_monotone(o));
    suites.push_back(suite_rotation(o));
    suites.push_back(suite_invariance(o));
    suites.push_back(suite_parseval(o));
    suites.push_back(suite_determinism(o));
    bool ok = true;
    std::ostringstream d;
    for (const auto& s : suites) {
        ok = ok && s.failures == 0;
        d << s.name << " " << (s.runs - s.failures) << "/" << s.runs;
        if (s.failures)
            d << " (first failure: " << s.first << ")";
        d << "; ";
    }
    if (out)
        *out = suites;
    return {9, "property suites", ok, d.str()};
}

using Criterion = std::function<Outcome(const Options&)>;

inline std::vector<Criterion> criteria() {
    return {extremal_circle, extremal_interval, module_exact,     rudin_regime,   quotient_reconstruction,
            cross_equivalence, pole_order,      slice_separation, [](const Options& o) { return property_suites(o); }};
}

// Runs one criterion, turning exceptions into failures and recording time.
inline Outcome run_one(const Criterion& c, int id, const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = c(o);
    } catch (const std::exception& ex) {
        r = Outcome{id, "criterion " + std::to_string(id), false, std::string("exception: ") + ex.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::vector<Outcome> run_all(const Options& o) {
    std::vector<Outcome> out;
    const auto cs = criteria();
    for (std::size_t i = 0; i < cs.size(); ++i)
        out.push_back(run_one(cs[i], static_cast<int>(i + 1), o));
    return out;
}

inline std::string line(const Outcome& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail;
    return os.str();
}

// id,name,result,detail. Timing is left out so the table is reproducible.
inline void write_table_csv(std::ostream& out, const std::vector<Outcome>& rows) {
    out << "criterion,name,result,detail\n";
    for (const auto& r : rows) {
        std::string d = r.detail;
        for (auto& ch : d)
            if (ch == ',' || ch == '\n')
                ch = ';';
        out << r.id << ',' << r.name << ',' << (r.passed ? "pass" : "fail") << ',' << d << '\n';
    }
}

} // namespace phull::corpus

#pragma once

#include "phull/core.hpp"
#include "phull/optimize.hpp"
#include "phull/parallel.hpp"
#include "phull/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phull {

struct ExtremalOptions {
    MaxModulusOptions solver;
    int phase_count = 64;
    unsigned threads = 1;
};

// Which coefficient space the per-degree witnesses are expressed in.
struct BasisInfo {
    enum class Kind { monomial1, chebyshev1, monomial2 } kind = Kind::monomial1;
    double center = 0.0;
    double half_width = 1.0;
};

// Truncated extremal function at one point. curve holds brackets for
// (1/d) log(optimum at degree d); value is the running max of the lower bounds
// clamped at zero, or +inf once any degree is unbounded.
struct ExtremalEstimate {
    Point point;
    int dim = 1;
    DegreeCurve curve;
    double value = 0.0;
    BasisInfo basis;
    std::map<int, Eigen::VectorXcd> witness; // per degree, feasible on K, |p(point)| = exp(d * lb)

    bool unbounded() const { return std::isinf(value); }
};

namespace detail {

inline BasisInfo choose_basis(const SampledSet& k) {
    BasisInfo b;
    if (k.dim() == 2) {
        b.kind = BasisInfo::Kind::monomial2;
        return b;
    }
    if (k.is_real_line()) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& p : k.points()) {
            lo = std::min(lo, p.z.real());
            hi = std::max(hi, p.z.real());
        }
        if (hi > lo) {
            b.kind = BasisInfo::Kind::chebyshev1;
            b.center = 0.5 * (lo + hi);
            b.half_width = 0.5 * (hi - lo);
        }
    }
    return b;
}

template <class F>
decltype(auto) with_space(const BasisInfo& b, int degree, F&& f) {
    switch (b.kind) {
    case BasisInfo::Kind::chebyshev1: return f(ChebyshevSpace1(degree, b.center, b.half_width));
    case BasisInfo::Kind::monomial2: return f(MonomialSpace2(degree));
    case BasisInfo::Kind::monomial1: break;
    }
    return f(MonomialSpace1(degree));
}

} // namespace detail

// Value at p of the polynomial with coefficients c in the given basis and degree.
inline cplx evaluate_in_basis(const BasisInfo& b, int degree, const Eigen::VectorXcd& c, const Point& p) {
    return detail::with_space(b, degree, [&](const auto& space) -> cplx {
        const Eigen::VectorXcd row = basis_row(space, p);
        if (row.size() != c.size())
            throw std::invalid_argument("evaluate_in_basis: coefficient count does not match degree");
        return (row.transpose() * c)(0);
    });
}

// Max |p| over K for the witness polynomial at the given degree.
inline double witness_sup_norm(const ExtremalEstimate& e, int degree, const SampledSet& k) {
    const Eigen::VectorXcd& c = e.witness.at(degree);
    double s = 0.0;
    for (const auto& p : k.points())
        s = std::max(s, std::abs(evaluate_in_basis(e.basis, degree, c, p)));
    return s;
}

inline ExtremalEstimate extremal_at(const SampledSet& k, const Point& z, int d_max, const ExtremalOptions& opt = {}) {
    if (d_max < 1)
        throw std::invalid_argument("extremal_at: d_max must be >= 1");
    if (!all_finite(z.z) || !all_finite(z.w))
        throw std::invalid_argument("extremal_at: non-finite query point");
    if (k.dim() == 1 && z.w != cplx{})
        throw std::invalid_argument("extremal_at: query point has a second coordinate but the set is one-dimensional");

    ExtremalEstimate est;
    est.point = z;
    est.dim = k.dim();
    est.basis = detail::choose_basis(k);
    constexpr double inf = std::numeric_limits<double>::infinity();

    double best = 0.0;
    for (int d = 1; d <= d_max; ++d) {
        ModulusProgram prog;
        prog.phase_count = opt.phase_count;
        detail::with_space(est.basis, d, [&](const auto& space) {
            prog.constraints = basis_matrix(space, k);
            prog.objective = basis_row(space, z);
        });
        const Bracket b = max_modulus(prog, opt.solver);
        const double inv_d = 1.0 / static_cast<double>(d);
        CurveEntry e;
        e.status = b.status;
        if (b.status == BracketStatus::unbounded) {
            e.lb = e.ub = inf;
            best = inf;
        } else {
            e.lb = std::log(b.lb) * inv_d;
            e.ub = std::log(b.ub) * inv_d;
            best = std::max(best, e.lb);
        }
        est.curve.insert(d, e);
        est.witness[d] = b.witness;
    }
    est.value = best;
    return est;
}

// A grid of extremal estimates. Points whose computation threw carry the
// message in `errors` and an empty estimate.
struct HullSlice {
    cplx z0{};
    std::vector<Point> grid;
    std::vector<ExtremalEstimate> values;
    std::vector<std::string> errors;
    double summary = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const { return grid.size(); }
    bool ok(std::size_t i) const { return errors[i].empty(); }
};

inline HullSlice extremal_grid(const SampledSet& k, const std::vector<Point>& grid, int d_max,
                               const ExtremalOptions& opt = {}) {
    HullSlice s;
    s.grid = grid;
    s.values.resize(grid.size());
    s.errors.resize(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        try {
            s.values[i] = extremal_at(k, grid[i], d_max, opt);
        } catch (const std::exception& ex) {
            s.errors[i] = ex.what();
        }
    });
    return s;
}

// One row per (point, degree): re_z,im_z,re_w,im_w,degree,lb,ub,status.
inline void write_extremal_csv(std::ostream& out, const HullSlice& s, int dim) {
    out << "re_z,im_z,re_w,im_w,degree,lb,ub,status\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point& p = s.grid[i];
        const std::string w = dim == 2 ? format_double(p.w.real()) + "," + format_double(p.w.imag()) : ",";
        const std::string head = format_double(p.z.real()) + "," + format_double(p.z.imag()) + "," + w + ",";
        if (!s.ok(i)) {
            out << head << ",,,error\n";
            continue;
        }
        for (const auto& [d, e] : s.values[i].curve.entries())
            out << head << d << ',' << format_double(e.lb) << ',' << format_double(e.ub) << ',' << to_string(e.status)
                << '\n';
    }
}

} // namespace phull

#pragma once

#include "phull/core.hpp"
#include "phull/extend.hpp"
#include "phull/extremal.hpp"
#include "phull/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phull {

// {(zeta_j, phi(zeta_j))} over the sample nodes.
inline SampledSet graph_set(const BoundaryFunction& phi) {
    std::vector<Point> pts(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j)
        pts[j] = Point{phi.node(j), phi.sample(j)};
    return SampledSet(2, std::move(pts));
}

inline void require_punctured_disk(cplx z, const char* who) {
    if (!all_finite(z) || !(std::abs(z) > 0.0) || !(std::abs(z) < 1.0))
        throw std::invalid_argument(std::string(who) + ": need 0 < |z| < 1");
}

inline ExtremalEstimate graph_point_estimate(const SampledSet& graph, cplx z, cplx w, int d_max,
                                             const ExtremalOptions& opt = {}) {
    require_punctured_disk(z, "graph_point_estimate");
    return extremal_at(graph, Point{z, w}, d_max, opt);
}

inline ExtremalEstimate graph_point_estimate(const BoundaryFunction& phi, cplx z, cplx w, int d_max,
                                             const ExtremalOptions& opt = {}) {
    return graph_point_estimate(graph_set(phi), z, w, d_max, opt);
}

// Interior values along the graph; by default the reconstructed quotient l/k.
using WRule = std::function<cplx(cplx)>;

inline WRule quotient_rule(const BoundaryFunction& phi) {
    auto m = std::make_shared<QuotientModel>(interior_model(phi));
    return [m](cplx z) { return evaluate_quotient(*m, z); };
}

struct PoleOrderFit {
    std::vector<double> radii;
    std::vector<double> circle_means;
    double m_hat = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    int order = 0;
    double max_laplacian_residual = std::numeric_limits<double>::quiet_NaN();
};

class OffHullError : public std::runtime_error {
public:
    explicit OffHullError(cplx z)
        : std::runtime_error("off-hull node at z = " + format_double(z.real()) + (z.imag() < 0 ? "" : "+") +
                             format_double(z.imag()) + "i"),
          z_(z) {}
    cplx z() const { return z_; }

private:
    cplx z_;
};

namespace detail {

// v(r_i e^{i theta_k}) on the product grid, row-major in (i, k).
inline std::vector<double> polar_values(const SampledSet& graph, const std::vector<double>& radii, int n_theta,
                                        const WRule& w_of, int d_max, const ExtremalOptions& opt) {
    const std::size_t nr = radii.size(), nt = static_cast<std::size_t>(n_theta);
    std::vector<cplx> nodes(nr * nt);
    std::vector<cplx> ws(nr * nt);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t k = 0; k < nt; ++k) {
            const cplx z = std::polar(radii[i], two_pi * static_cast<double>(k) / static_cast<double>(nt));
            nodes[i * nt + k] = z;
            ws[i * nt + k] = w_of(z);
        }
    std::vector<double> v(nodes.size());
    parallel_for(nodes.size(), opt.threads, [&](std::size_t t) {
        ExtremalOptions inner = opt;
        inner.threads = 1;
        v[t] = graph_point_estimate(graph, nodes[t], ws[t], d_max, inner).value;
    });
    for (std::size_t t = 0; t < v.size(); ++t)
        if (std::isinf(v[t]))
            throw OffHullError(nodes[t]);
    return v;
}

} // namespace detail

struct Annulus {
    double r0 = 0.3;
    double r1 = 0.7;
    int n_r = 5;
    int n_theta = 64;
};

// Max over interior nodes of the five-point polar Laplacian of v, multiplied
// by the squared radial spacing.
inline PoleOrderFit harmonicity_residual(const BoundaryFunction& phi, const Annulus& a, int d_max,
                                         const WRule& w_of, const ExtremalOptions& opt = {}) {
    if (!(0.0 < a.r0 && a.r0 < a.r1 && a.r1 < 1.0))
        throw std::invalid_argument("harmonicity_residual: need 0 < r0 < r1 < 1");
    if (a.n_r < 3)
        throw std::invalid_argument("harmonicity_residual: need at least 3 radii");
    if (a.n_theta < 32)
        throw std::invalid_argument("harmonicity_residual: n_theta must be >= 32");
    PoleOrderFit fit;
    const double dr = (a.r1 - a.r0) / static_cast<double>(a.n_r - 1);
    for (int i = 0; i < a.n_r; ++i)
        fit.radii.push_back(a.r0 + dr * static_cast<double>(i));
    const auto nt = static_cast<std::size_t>(a.n_theta);
    const std::vector<double> v = detail::polar_values(graph_set(phi), fit.radii, a.n_theta, w_of, d_max, opt);
    const double dt = two_pi / static_cast<double>(nt);
    auto at = [&](std::size_t i, std::size_t k) { return v[i * nt + (k % nt)]; };
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < fit.radii.size(); ++i) {
        const double r = fit.radii[i];
        for (std::size_t k = 0; k < nt; ++k) {
            const double c = at(i, k);
            const double vrr = (at(i + 1, k) - 2.0 * c + at(i - 1, k)) / (dr * dr);
            const double vr = (at(i + 1, k) - at(i - 1, k)) / (2.0 * dr);
            const double vtt = (at(i, k + 1) - 2.0 * c + at(i, k + nt - 1)) / (dt * dt);
            worst = std::max(worst, std::abs(vrr + vr / r + vtt / (r * r)) * dr * dr);
        }
    }
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < nt; ++k)
            s += at(i, k);
        fit.circle_means.push_back(s / static_cast<double>(nt));
    }
    fit.max_laplacian_residual = worst;
    return fit;
}

// Least-squares fit of mean value on |z| = r against -log r.
inline PoleOrderFit pole_order_fit(const BoundaryFunction& phi, const std::vector<double>& radii, int n_theta,
                                   int d_max, const WRule& w_of, const ExtremalOptions& opt = {}) {
    if (radii.size() < 3)
        throw std::invalid_argument("pole_order_fit: need at least 3 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0 && radii[i] < 1.0))
            throw std::invalid_argument("pole_order_fit: radii must lie in (0, 1)");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("pole_order_fit: radii must be strictly increasing");
    }
    if (n_theta < 1)
        throw std::invalid_argument("pole_order_fit: n_theta must be >= 1");
    PoleOrderFit fit;
    fit.radii = radii;
    const auto nt = static_cast<std::size_t>(n_theta);
    const std::vector<double> v = detail::polar_values(graph_set(phi), radii, n_theta, w_of, d_max, opt);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < nt; ++k)
            s += v[i * nt + k];
        fit.circle_means.push_back(s / static_cast<double>(nt));
    }
    const double n = static_cast<double>(radii.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double x = -std::log(radii[i]), y = fit.circle_means[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.m_hat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.m_hat * sx) / n;
    fit.order = std::max(0, static_cast<int>(std::lround(fit.m_hat)));
    return fit;
}

struct SliceOptions {
    ExtremalOptions extremal;
    double graph_tol = 1e-9; // |w - h(z0)| <= graph_tol * (1 + |h(z0)|) counts as on the graph
};

// Extremal estimates along {z0} x w_grid. summary is the smallest value on the
// graph divided by the median off-graph value (0 when that median is infinite,
// NaN when either side is empty).
inline HullSlice hull_slice(const BoundaryFunction& phi, cplx z0, const std::vector<cplx>& w_grid, int d_max,
                            cplx h_z0, const SliceOptions& opt = {}) {
    require_punctured_disk(z0, "hull_slice");
    HullSlice s;
    s.z0 = z0;
    for (const cplx& w : w_grid)
        s.grid.push_back(Point{z0, w});
    s.values.resize(s.grid.size());
    s.errors.resize(s.grid.size());
    const SampledSet graph = graph_set(phi);
    parallel_for(s.grid.size(), opt.extremal.threads, [&](std::size_t i) {
        ExtremalOptions inner = opt.extremal;
        inner.threads = 1;
        try {
            s.values[i] = graph_point_estimate(graph, z0, w_grid[i], d_max, inner);
        } catch (const std::exception& ex) {
            s.errors[i] = ex.what();
        }
    });

    const double near = opt.graph_tol * (1.0 + std::abs(h_z0));
    double on = std::numeric_limits<double>::infinity();
    bool any_on = false;
    std::vector<double> off;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.ok(i))
            continue;
        if (std::abs(w_grid[i] - h_z0) <= near) {
            any_on = true;
            on = std::min(on, s.values[i].value);
        } else {
            off.push_back(s.values[i].value);
        }
    }
    if (any_on && !off.empty()) {
        std::sort(off.begin(), off.end());
        const std::size_t m = off.size();
        const double median = m % 2 ? off[m / 2] : 0.5 * (off[m / 2 - 1] + off[m / 2]);
        s.summary = std::isinf(median) ? 0.0 : on / median;
    }
    return s;
}

inline const char* slice_status(const HullSlice& s, std::size_t i) {
    if (!s.ok(i))
        return "error";
    const auto& curve = s.values[i].curve;
    if (curve.any_unbounded())
        return "unbounded";
    for (const auto& [d, e] : curve.entries())
        if (e.status == BracketStatus::infeasible_numerics)
            return "infeasible-numerics";
    return "bounded";
}

// re_w,im_w,value,status
inline void write_slice_csv(std::ostream& out, const HullSlice& s) {
    out << "re_w,im_w,value,status\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_double(s.grid[i].w.real()) << ',' << format_double(s.grid[i].w.imag()) << ',';
        if (s.ok(i))
            out << format_double(s.values[i].value);
        out << ',' << slice_status(s, i) << '\n';
    }
}

// r,mean_value
inline void write_fit_csv(std::ostream& out, const PoleOrderFit& f) {
    out << "r,mean_value\n";
    for (std::size_t i = 0; i < f.radii.size(); ++i)
        out << format_double(f.radii[i]) << ',' << format_double(f.circle_means[i]) << '\n';
}

} // namespace phull

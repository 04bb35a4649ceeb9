#pragma once

#include "phull/core.hpp"
#include "phull/parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phull {

// Analytic polynomials k (unit coefficient norm) and l with phi k = l on the
// circle up to the negative-frequency residual, so that h = l / k.
struct QuotientModel {
    std::vector<cplx> k_coeffs;
    std::vector<cplx> l_coeffs;
    double residual = 0.0;
    int d_k = 0;
    int n_neg = 0;
    bool degenerate = false;
};

inline int default_n_neg(std::size_t n, int d_k) {
    return std::min(4 * d_k, static_cast<int>(n / 2) - d_k);
}

// Rows n = 1..n_neg, columns j = 0..d_k, entry coeff(-n - j).
inline Eigen::MatrixXcd annihilator_matrix(const BoundaryFunction& phi, int d_k, int n_neg) {
    Eigen::MatrixXcd h(n_neg, d_k + 1);
    for (int n = 1; n <= n_neg; ++n)
        for (int j = 0; j <= d_k; ++j)
            h(n - 1, j) = phi.coeff(-n - j);
    return h;
}

inline QuotientModel annihilator(const BoundaryFunction& phi, int d_k, int n_neg) {
    if (d_k < 1)
        throw std::invalid_argument("annihilator: d_k must be >= 1");
    if (n_neg < d_k)
        throw std::invalid_argument("annihilator: n_neg must be >= d_k");
    if (phi.size() < 4 * static_cast<std::size_t>(d_k + n_neg))
        throw std::invalid_argument("annihilator: N = " + std::to_string(phi.size()) + " too small for d_k = " +
                                    std::to_string(d_k) + ", n_neg = " + std::to_string(n_neg) +
                                    " (need N >= 4 (d_k + n_neg))");

    QuotientModel m;
    m.d_k = d_k;
    m.n_neg = n_neg;
    m.k_coeffs.assign(static_cast<std::size_t>(d_k + 1), cplx{});
    const int half = phi.half();
    m.l_coeffs.assign(static_cast<std::size_t>(half + d_k), cplx{});
    if (phi.is_zero()) {
        m.k_coeffs[0] = 1.0;
        m.degenerate = true;
        return m;
    }

    const Eigen::MatrixXcd h = annihilator_matrix(phi, d_k, n_neg);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullV);
    const Eigen::VectorXcd kv = svd.matrixV().col(d_k);
    const Eigen::VectorXd& sv = svd.singularValues();
    m.residual = n_neg >= d_k + 1 ? sv(d_k) : 0.0;

    // Fix the unimodular gauge: largest coefficient (first on ties) real positive.
    Eigen::Index big = 0;
    for (Eigen::Index j = 1; j < kv.size(); ++j)
        if (std::abs(kv(j)) > std::abs(kv(big)))
            big = j;
    const cplx gauge = std::conj(kv(big)) / std::abs(kv(big));
    for (int j = 0; j <= d_k; ++j)
        m.k_coeffs[static_cast<std::size_t>(j)] = kv(j) * gauge;

    for (int n = 0; n < half + d_k; ++n) {
        cplx s{};
        for (int j = 0; j <= d_k; ++j)
            if (n - j >= -half && n - j < half)
                s += m.k_coeffs[static_cast<std::size_t>(j)] * phi.coeff(n - j);
        m.l_coeffs[static_cast<std::size_t>(n)] = s;
    }
    return m;
}

inline QuotientModel annihilator(const BoundaryFunction& phi, int d_k) {
    return annihilator(phi, d_k, default_n_neg(phi.size(), d_k));
}

inline cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

class NearPoleError : public std::runtime_error {
public:
    NearPoleError(cplx z, double k_abs)
        : std::runtime_error("near pole: |k(z)| = " + format_double(k_abs) + " at z = " + format_double(z.real()) +
                             (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i"),
          z_(z), k_abs_(k_abs) {}
    cplx z() const { return z_; }
    double k_abs() const { return k_abs_; }

private:
    cplx z_;
    double k_abs_;
};

inline double coeff_norm(const std::vector<cplx>& c) {
    double s = 0.0;
    for (const auto& v : c)
        s += std::norm(v);
    return std::sqrt(s);
}

// h(z) = l(z) / k(z); refuses when |k(z)| <= eps_div * |k|.
inline cplx evaluate_quotient(const QuotientModel& m, cplx z, double eps_div = 1e-10) {
    const cplx kz = horner(m.k_coeffs, z);
    if (std::abs(kz) <= eps_div * coeff_norm(m.k_coeffs))
        throw NearPoleError(z, std::abs(kz));
    return horner(m.l_coeffs, z) / kz;
}

// Roots of sum c_j z^j from the companion matrix. Trailing coefficients at or
// below trim * |c| are dropped first.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c, double trim = 1e-14) {
    const double scale = coeff_norm(c);
    int deg = static_cast<int>(c.size()) - 1;
    while (deg >= 0 && std::abs(c[static_cast<std::size_t>(deg)]) <= trim * scale)
        --deg;
    if (deg <= 0)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    const cplx lead = c[static_cast<std::size_t>(deg)];
    for (int i = 0; i < deg; ++i)
        comp(0, i) = -c[static_cast<std::size_t>(deg - 1 - i)] / lead;
    for (int i = 1; i < deg; ++i)
        comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("polynomial_roots: eigenvalue iteration did not converge");
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    return r;
}

struct Pole {
    cplx location{};
    int multiplicity = 0;
};

struct PoleOptions {
    double inside = 1.0 - 1e-6;   // keep roots with |z| below this
    double cluster_radius = 1e-4;
    double removable_tol = 1e-8;  // |l(root)| at or below this marks a cancelled root
};

// Number of leading Taylor coefficients of c at r with modulus <= tol, up to cap.
inline int vanishing_order(const std::vector<cplx>& c, cplx r, double tol, int cap) {
    std::vector<cplx> q(c);
    for (int j = 0; j < cap; ++j) {
        // Synthetic division by (z - r): q <- quotient, value = remainder.
        if (q.empty())
            return cap;
        cplx acc{};
        for (std::size_t i = q.size(); i-- > 0;) {
            const cplx next = acc * r + q[i];
            q[i] = acc;
            acc = next;
        }
        q.pop_back();
        if (std::abs(acc) > tol)
            return j;
    }
    return cap;
}

// Zeros of k inside the disk, clustered, with the order of vanishing of l at
// the same point subtracted from each multiplicity.
inline std::vector<Pole> pole_candidates(const QuotientModel& m, const PoleOptions& opt = {}) {
    std::vector<cplx> roots;
    for (const cplx& r : polynomial_roots(m.k_coeffs))
        if (std::abs(r) < opt.inside)
            roots.push_back(r);
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (std::abs(a) != std::abs(b))
            return std::abs(a) < std::abs(b);
        return std::arg(a) < std::arg(b);
    });
    std::vector<Pole> poles;
    std::vector<char> used(roots.size(), 0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        cplx sum{};
        int count = 0;
        for (std::size_t j = i; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) <= opt.cluster_radius) {
                used[j] = 1;
                sum += roots[j];
                ++count;
            }
        const cplx center = sum / static_cast<double>(count);
        const int order = count - vanishing_order(m.l_coeffs, center, opt.removable_tol, count);
        if (order > 0)
            poles.push_back({center, order});
    }
    return poles;
}

inline int total_multiplicity(const std::vector<Pole>& p) {
    int s = 0;
    for (const auto& x : p)
        s += x.multiplicity;
    return s;
}

enum class ExtendVerdict { meromorphic_consistent, not_extendable, inconclusive };

inline const char* to_string(ExtendVerdict v) {
    switch (v) {
    case ExtendVerdict::meromorphic_consistent: return "meromorphic-consistent";
    case ExtendVerdict::not_extendable: return "not-extendable";
    case ExtendVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ExtendOptions {
    std::vector<int> d_list{2, 4, 8};
    double residual_rel = 1e-8;    // residual threshold relative to the RMS norm of phi
    double stability_tol = 1e-3;   // pole location agreement across the top two degrees
    PoleOptions poles;
    unsigned threads = 1;
};

struct ExtendReport {
    std::vector<int> degrees;
    DegreeCurve residuals; // lb = ub = residual
    std::vector<QuotientModel> models;
    std::vector<std::vector<Pole>> poles;
    ExtendVerdict verdict = ExtendVerdict::inconclusive;

    // Model at the largest degree, the one used for interior values.
    const QuotientModel& top() const { return models.back(); }
};

inline bool poles_agree(const std::vector<Pole>& a, const std::vector<Pole>& b, double tol) {
    if (a.size() != b.size())
        return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& p : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && b[j].multiplicity == p.multiplicity && std::abs(b[j].location - p.location) <= tol) {
                used[j] = 1;
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

inline ExtendReport extendability_score(const BoundaryFunction& phi, const ExtendOptions& opt = {}) {
    const auto& dl = opt.d_list;
    if (dl.empty())
        throw std::invalid_argument("extendability_score: empty degree list");
    for (std::size_t i = 1; i < dl.size(); ++i)
        if (dl[i] <= dl[i - 1])
            throw std::invalid_argument("extendability_score: degree list must be strictly increasing");

    ExtendReport r;
    r.degrees = dl;
    r.models.resize(dl.size());
    r.poles.resize(dl.size());
    parallel_for(dl.size(), opt.threads, [&](std::size_t i) {
        r.models[i] = annihilator(phi, dl[i]);
        r.poles[i] = pole_candidates(r.models[i], opt.poles);
    });
    bool small = false;
    const double eps = opt.residual_rel * phi.l2_norm();
    for (std::size_t i = 0; i < dl.size(); ++i) {
        r.residuals.insert(dl[i], CurveEntry{r.models[i].residual, r.models[i].residual, BracketStatus::bounded});
        small = small || r.models[i].residual <= eps;
    }

    const std::size_t n = dl.size();
    const bool stable = n >= 2 && poles_agree(r.poles[n - 2], r.poles[n - 1], opt.stability_tol);
    if (small && stable) {
        r.verdict = ExtendVerdict::meromorphic_consistent;
        return r;
    }
    // Longest run of strictly growing pole counts.
    std::size_t run = 1, best = 1;
    for (std::size_t i = 1; i < n; ++i) {
        run = total_multiplicity(r.poles[i]) > total_multiplicity(r.poles[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    r.verdict = best >= 3 ? ExtendVerdict::not_extendable : ExtendVerdict::inconclusive;
    return r;
}

// Lowest-degree model whose residual is at most residual_rel * |phi|, so the
// annihilating k is as short as possible and carries no spurious zeros. Falls
// back to degree d_max.
inline QuotientModel interior_model(const BoundaryFunction& phi, int d_max = 8, double residual_rel = 1e-8) {
    if (d_max < 1)
        throw std::invalid_argument("interior_model: d_max must be >= 1");
    const double eps = residual_rel * phi.l2_norm();
    for (int d = 1; d < d_max; ++d) {
        QuotientModel m = annihilator(phi, d);
        if (m.residual <= eps)
            return m;
    }
    return annihilator(phi, d_max);
}

// which,index,re,im rows for k and l, then residual,<value>.
inline void write_model_csv(std::ostream& out, const QuotientModel& m) {
    out << "which,index,re,im\n";
    for (std::size_t j = 0; j < m.k_coeffs.size(); ++j)
        out << "k," << j << ',' << format_double(m.k_coeffs[j].real()) << ',' << format_double(m.k_coeffs[j].imag())
            << '\n';
    for (std::size_t j = 0; j < m.l_coeffs.size(); ++j)
        out << "l," << j << ',' << format_double(m.l_coeffs[j].real()) << ',' << format_double(m.l_coeffs[j].imag())
            << '\n';
    out << "residual," << format_double(m.residual) << '\n';
}

inline void write_poles_csv(std::ostream& out, const std::vector<Pole>& poles) {
    out << "re,im,multiplicity\n";
    for (const auto& p : poles)
        out << format_double(p.location.real()) << ',' << format_double(p.location.imag()) << ',' << p.multiplicity
            << '\n';
}

} // namespace phull

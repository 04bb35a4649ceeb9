#pragma once

#include "phull/core.hpp"
#include "phull/simplex.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cstdint>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace phull {

// sup { |L(c)| : |A_j(c)| <= 1 for all j } over complex coefficient vectors c.
struct ModulusProgram {
    Eigen::VectorXcd objective;   // L, length n
    Eigen::MatrixXcd constraints; // m x n, row j is A_j
    int phase_count = 64;

    void validate() const {
        if (objective.size() < 1 || constraints.rows() < 1)
            throw std::invalid_argument("modulus program: need n >= 1 and m >= 1");
        if (constraints.cols() != objective.size())
            throw std::invalid_argument("modulus program: objective has " + std::to_string(objective.size()) +
                                        " coefficients, constraints have " + std::to_string(constraints.cols()));
        if (phase_count < 8 || phase_count % 2 != 0)
            throw std::invalid_argument("modulus program: phase count must be even and >= 8");
        if (!objective.allFinite() || !constraints.allFinite())
            throw std::invalid_argument("modulus program: non-finite data");
    }
};

struct MaxModulusOptions {
    lp::Options lp;
    // Tangent cuts added at the phases of violated constraints, repeated until
    // (ub - lb) <= refine_tol * ub or the round budget runs out.
    int refine_rounds = 8;
    double refine_tol = 1e-8;
    double null_tol = 1e-11;           // singular values below this * s_max span the null space
    double null_objective_tol = 1e-9;  // objective weight on the null space that means unbounded
    double rhs_perturbation = 1e-10;   // relative enlargement of the LP bounds against degeneracy
};

struct Bracket {
    double lb = 0.0;
    double ub = 0.0;
    BracketStatus status = BracketStatus::bounded;
    Eigen::VectorXcd witness; // feasible (max_j |A_j witness| <= 1) with |L witness| = lb
    int lp_iterations = 0;
    int rounds = 0;
};

namespace detail {

// Rows Re(e^{i beta} A_j c) <= 1 over x = [Re c; Im c]: the polygon grid
// beta = 2 pi k / phase_count for every j, followed by individual cuts.
class ModulusRows {
public:
    // Right-hand sides are 1 + perturbation * u_i with u_i in [0.5, 1) fixed per
    // row, which keeps the polygon vertices nondegenerate. Raising the bounds
    // only enlarges the relaxation, so the LP optimum stays an upper bound.
    ModulusRows(const Eigen::MatrixXcd& a, int phase_count, double perturbation = 0.0)
        : a_(a), phases_(phase_count), perturbation_(perturbation) {
        for (int k = 0; k < phase_count; ++k)
            phases_[static_cast<std::size_t>(k)] =
                std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(phase_count));
        norms_ = a_.rowwise().norm();
    }

    void add_cut(Eigen::Index j, cplx rotation) { cuts_.push_back({j, rotation}); }

    Eigen::Index rows() const { return a_.rows() * static_cast<Eigen::Index>(phases_.size()) + static_cast<Eigen::Index>(cuts_.size()); }
    Eigen::Index cols() const { return 2 * a_.cols(); }
    double rhs(Eigen::Index i) const {
        if (perturbation_ == 0.0)
            return 1.0;
        // splitmix64 of the row index
        std::uint64_t h = static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ULL;
        h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
        h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
        h ^= h >> 31;
        const double u = 0.5 + 0.5 * static_cast<double>(h >> 11) * 0x1.0p-53;
        return 1.0 + perturbation_ * u;
    }
    double row_norm(Eigen::Index i) const { return norms_(source(i)); }

    void multiply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
        const Eigen::Index n = a_.cols();
        Eigen::VectorXcd c(n);
        for (Eigen::Index l = 0; l < n; ++l)
            c(l) = cplx(v(l), v(n + l));
        const Eigen::VectorXcd av = a_ * c;
        out.resize(rows());
        const auto np = static_cast<Eigen::Index>(phases_.size());
        for (Eigen::Index j = 0; j < a_.rows(); ++j) {
            const double re = av(j).real(), im = av(j).imag();
            for (Eigen::Index k = 0; k < np; ++k) {
                const cplx w = phases_[static_cast<std::size_t>(k)];
                out(j * np + k) = w.real() * re - w.imag() * im;
            }
        }
        const Eigen::Index base = a_.rows() * np;
        for (std::size_t q = 0; q < cuts_.size(); ++q)
            out(base + static_cast<Eigen::Index>(q)) = (cuts_[q].rotation * av(cuts_[q].j)).real();
    }

    Eigen::VectorXd row(Eigen::Index i) const {
        const Eigen::Index n = a_.cols();
        const cplx w = rotation(i);
        Eigen::VectorXd r(2 * n);
        const Eigen::Index j = source(i);
        for (Eigen::Index l = 0; l < n; ++l) {
            const cplx e = w * a_(j, l);
            r(l) = e.real();
            r(n + l) = -e.imag();
        }
        return r;
    }

private:
    struct Cut {
        Eigen::Index j;
        cplx rotation;
    };

    Eigen::Index source(Eigen::Index i) const {
        const auto np = static_cast<Eigen::Index>(phases_.size());
        const Eigen::Index base = a_.rows() * np;
        return i < base ? i / np : cuts_[static_cast<std::size_t>(i - base)].j;
    }
    cplx rotation(Eigen::Index i) const {
        const auto np = static_cast<Eigen::Index>(phases_.size());
        const Eigen::Index base = a_.rows() * np;
        return i < base ? phases_[static_cast<std::size_t>(i % np)] : cuts_[static_cast<std::size_t>(i - base)].rotation;
    }

    const Eigen::MatrixXcd& a_;
    std::vector<cplx> phases_;
    std::vector<Cut> cuts_;
    Eigen::VectorXd norms_;
    double perturbation_;
};

inline Eigen::VectorXd to_real(const Eigen::VectorXcd& c) {
    const Eigen::Index n = c.size();
    Eigen::VectorXd x(2 * n);
    x.head(n) = c.real();
    x.tail(n) = c.imag();
    return x;
}

inline Eigen::VectorXcd to_complex(const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size() / 2;
    Eigen::VectorXcd c(n);
    for (Eigen::Index l = 0; l < n; ++l)
        c(l) = cplx(x(l), x(n + l));
    return c;
}

} // namespace detail

// Certified bracket for sup |L(c)| subject to |A_j(c)| <= 1.
//
// The modulus constraints are relaxed to the circumscribed regular polygon with
// phase_count sides, giving an LP whose optimum R over Re L(c) is an upper
// bound (the true feasible set is invariant under c -> e^{it} c, so a single
// objective phase suffices and every grid phase gives the same value). The LP
// solution rescaled by its exact constraint moduli is feasible and yields lb.
// Tangent cuts at the phases of the violated moduli then tighten both sides.
//
// The LP runs in the coordinates y = S V^H c of the thin SVD A = U S V^H, so its
// rows are the orthonormal columns of U. Directions with singular value below
// null_tol * s_max are the numerical null space of A: if L has weight there the
// program is unbounded, otherwise they are dropped.
inline Bracket max_modulus(const ModulusProgram& prog, const MaxModulusOptions& opt = {}) {
    prog.validate();
    const Eigen::Index n = prog.objective.size();
    const Eigen::MatrixXcd& a = prog.constraints;
    const Eigen::VectorXcd& l = prog.objective;
    constexpr double inf = std::numeric_limits<double>::infinity();

    Bracket out;
    out.witness = Eigen::VectorXcd::Zero(n);
    const double lnorm = l.norm();
    if (lnorm == 0.0)
        return out;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > opt.null_tol * smax)
        ++rank;
    const Eigen::MatrixXcd& v = svd.matrixV();
    for (Eigen::Index j = rank; j < n; ++j) {
        const cplx lv = (l.transpose() * v.col(j))(0);
        if (std::abs(lv) > opt.null_objective_tol * lnorm) {
            out.status = BracketStatus::unbounded;
            out.lb = out.ub = inf;
            out.witness = v.col(j) * (std::conj(lv) / std::abs(lv));
            return out;
        }
    }
    if (rank == 0)
        return out;

    // c = back * y
    const Eigen::MatrixXcd back = v.leftCols(rank) * sigma.head(rank).cwiseInverse().asDiagonal();
    const Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
    const Eigen::VectorXcd ly = (l.transpose() * back).transpose();

    const bool real_data = a.imag().isZero(0.0) && l.imag().isZero(0.0);
    detail::ModulusRows rows(u, prog.phase_count, opt.rhs_perturbation);
    Eigen::VectorXd g(2 * rank);
    g.head(rank) = ly.real();
    g.tail(rank) = -ly.imag();

    double best_lb = 0.0;
    Eigen::VectorXcd best = Eigen::VectorXcd::Zero(n);
    double ub = inf;

    auto consider = [&](const Eigen::VectorXcd& c) {
        const double s = (a * c).cwiseAbs().maxCoeff();
        const double val = std::abs((l.transpose() * c)(0));
        if (!(s > 0.0) || !std::isfinite(val))
            return;
        if (val / s > best_lb) {
            best_lb = val / s;
            best = c / s;
        }
    };

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * rank);
    for (int round = 0; round <= opt.refine_rounds; ++round) {
        const lp::Result r = lp::maximize(rows, g, x0, opt.lp);
        out.lp_iterations += r.iterations;
        out.rounds = round + 1;
        if (r.status == lp::Status::unbounded) {
            // Cannot happen for full-rank rows; reported rather than trusted.
            out.status = BracketStatus::infeasible_numerics;
            break;
        }
        const Eigen::VectorXcd y = detail::to_complex(r.x);
        const Eigen::VectorXcd c = back * y;
        consider(c);
        if (real_data)
            consider(c.real().cast<cplx>());
        if (r.status == lp::Status::iteration_limit) {
            out.status = BracketStatus::infeasible_numerics;
            break;
        }
        ub = std::min(ub, r.objective);
        if (ub - best_lb <= opt.refine_tol * ub)
            break;

        const Eigen::VectorXcd uy = u * y;
        for (Eigen::Index j = 0; j < u.rows(); ++j) {
            const double mod = std::abs(uy(j));
            if (mod > 1.0 + 1e-14)
                rows.add_cut(j, std::conj(uy(j)) / mod);
        }
        // Warm start from the feasible witness, rotated so that L(c) > 0.
        const cplx lv = (l.transpose() * best)(0);
        const cplx phase = std::abs(lv) > 0.0 ? std::conj(lv) / std::abs(lv) : cplx(1.0);
        const Eigen::VectorXcd yw = sigma.head(rank).asDiagonal() * (v.leftCols(rank).adjoint() * (best * phase));
        x0 = detail::to_real(yw) * (1.0 - 1e-12);
    }

    const cplx lv = (l.transpose() * best)(0);
    if (std::abs(lv) > 0.0)
        best *= std::conj(lv) / std::abs(lv);
    out.witness = best;
    out.lb = best_lb;
    out.ub = std::max(ub, best_lb);
    return out;
}

} // namespace phull

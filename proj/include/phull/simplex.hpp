#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <vector>

// Dense primal simplex for inequality-form linear programs
//
//   maximize g.x  subject to  G x <= b,  x free,
//
// started from a feasible point. The working set holds the constraints the
// iterate is pinned to; off-vertex iterates move along the projected gradient
// until a constraint blocks, and at points where the gradient lies in the span
// of the working set a constraint with negative multiplier is released. At a
// vertex this is the textbook edge-following simplex step. Pivot choice is
// Dantzig's rule with lowest-index ties, switching to Bland's rule after a run
// of degenerate steps. All choices are deterministic.
namespace phull::lp {

enum class Status { optimal, unbounded, iteration_limit };

struct Options {
    int max_iterations = 200000;
    double direction_tol = 1e-11;  // projected gradient below this (relative to |g|) counts as zero
    double pivot_tol = 1e-11;      // row rates below this (relative to |row| |d|) never block
    double multiplier_tol = 1e-11; // relative to |g|
    int degenerate_switch = 25;    // consecutive zero-length steps before Bland's rule
    int refresh_every = 64;        // recompute slacks from scratch
};

struct Result {
    Status status = Status::optimal;
    Eigen::VectorXd x;
    Eigen::VectorXd ray; // improving direction with G ray <= 0 when unbounded
    double objective = 0.0;
    int iterations = 0;
};

// A constraint family G x <= b. multiply() computes G v for every row.
template <class R>
concept RowSet = requires(const R& r, const Eigen::VectorXd& v, Eigen::VectorXd& out, Eigen::Index i) {
    { r.rows() } -> std::convertible_to<Eigen::Index>;
    { r.cols() } -> std::convertible_to<Eigen::Index>;
    r.multiply(v, out);
    { r.row(i) } -> std::convertible_to<Eigen::VectorXd>;
    { r.rhs(i) } -> std::convertible_to<double>;
    { r.row_norm(i) } -> std::convertible_to<double>;
};

class DenseRows {
public:
    DenseRows(Eigen::MatrixXd g, Eigen::VectorXd b) : g_(std::move(g)), b_(std::move(b)) {
        if (g_.rows() != b_.size())
            throw std::invalid_argument("DenseRows: row count mismatch");
        norms_ = g_.rowwise().norm();
    }
    Eigen::Index rows() const { return g_.rows(); }
    Eigen::Index cols() const { return g_.cols(); }
    void multiply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const { out.noalias() = g_ * v; }
    Eigen::VectorXd row(Eigen::Index i) const { return g_.row(i).transpose(); }
    double rhs(Eigen::Index i) const { return b_(i); }
    double row_norm(Eigen::Index i) const { return norms_(i); }

private:
    Eigen::MatrixXd g_;
    Eigen::VectorXd b_;
    Eigen::VectorXd norms_;
};

template <RowSet Rows>
Result maximize(const Rows& rows, const Eigen::VectorXd& g, const Eigen::VectorXd& x0, const Options& opt = {}) {
    const Eigen::Index p = rows.cols();
    const Eigen::Index m = rows.rows();
    if (g.size() != p || x0.size() != p)
        throw std::invalid_argument("lp::maximize: dimension mismatch");

    Result res;
    res.x = x0;
    const double gnorm = g.norm();
    if (gnorm == 0.0 || p == 0) {
        res.objective = g.dot(res.x);
        return res;
    }

    Eigen::VectorXd b(m), norms(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        b(i) = rows.rhs(i);
        norms(i) = rows.row_norm(i);
    }
    Eigen::VectorXd slack, gd, d;
    auto refresh = [&] {
        rows.multiply(res.x, slack);
        slack = b - slack;
    };
    refresh();

    std::vector<Eigen::Index> working;
    std::vector<char> in_working(static_cast<std::size_t>(m), 0);
    Eigen::MatrixXd active(p, 0); // columns are the working rows
    int degenerate_run = 0;

    for (int it = 0; it < opt.max_iterations; ++it) {
        res.iterations = it + 1;
        if (it > 0 && it % opt.refresh_every == 0)
            refresh();

        const Eigen::Index k = static_cast<Eigen::Index>(working.size());
        Eigen::HouseholderQR<Eigen::MatrixXd> qr;
        Eigen::MatrixXd q;
        if (k == 0) {
            d = g;
        } else {
            qr.compute(active);
            q = qr.householderQ() * Eigen::MatrixXd::Identity(p, k);
            d = g - q * (q.transpose() * g);
            d -= q * (q.transpose() * d);
        }

        const double dnorm = d.norm();
        if (dnorm > opt.direction_tol * gnorm) {
            rows.multiply(d, gd);
            Eigen::Index enter = -1;
            double tmin = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                if (in_working[static_cast<std::size_t>(i)])
                    continue;
                const double rate = gd(i);
                if (rate <= opt.pivot_tol * norms(i) * dnorm)
                    continue;
                const double t = std::max(slack(i), 0.0) / rate;
                if (t < tmin) {
                    tmin = t;
                    enter = i;
                }
            }
            if (enter < 0) {
                res.status = Status::unbounded;
                res.ray = d;
                res.objective = g.dot(res.x);
                return res;
            }
            degenerate_run = (tmin == 0.0) ? degenerate_run + 1 : 0;
            res.x += tmin * d;
            slack -= tmin * gd;
            slack(enter) = 0.0;
            working.push_back(enter);
            in_working[static_cast<std::size_t>(enter)] = 1;
            active.conservativeResize(Eigen::NoChange, k + 1);
            active.col(k) = rows.row(enter);
            continue;
        }

        // Multipliers of the working set: active * u = g.
        Eigen::VectorXd u = qr.solve(g);
        Eigen::Index leave = -1;
        const bool bland = degenerate_run >= opt.degenerate_switch;
        double best = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double scaled = u(j) * norms(working[static_cast<std::size_t>(j)]);
            if (scaled >= -opt.multiplier_tol * gnorm)
                continue;
            if (bland) {
                if (leave < 0 || working[static_cast<std::size_t>(j)] < working[static_cast<std::size_t>(leave)])
                    leave = j;
            } else if (scaled < best ||
                       (scaled == best && working[static_cast<std::size_t>(j)] < working[static_cast<std::size_t>(leave)])) {
                best = scaled;
                leave = j;
            }
        }
        if (leave < 0) {
            res.status = Status::optimal;
            res.objective = g.dot(res.x);
            return res;
        }
        in_working[static_cast<std::size_t>(working[static_cast<std::size_t>(leave)])] = 0;
        working.erase(working.begin() + leave);
        Eigen::MatrixXd shrunk(p, k - 1);
        for (Eigen::Index j = 0, c = 0; j < k; ++j)
            if (j != leave)
                shrunk.col(c++) = active.col(j);
        active = std::move(shrunk);
    }
    res.status = Status::iteration_limit;
    res.objective = g.dot(res.x);
    return res;
}

} // namespace phull::lp

#pragma once

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phull {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline bool all_finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Uniform samples of a continuous function on the unit circle together with its
// discrete Fourier coefficients
//
//   coeff(n) = (1/N) sum_j phi(e^{i theta_j}) e^{-i n theta_j},  n in [-N/2, N/2),
//
// so coeff(n) for n >= 0 are the analytic (Taylor) coefficients. Immutable.
class BoundaryFunction {
public:
    static constexpr std::size_t min_samples = 16;

    explicit BoundaryFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
        const std::size_t n = samples_.size();
        if (n < min_samples || !is_power_of_two(n))
            throw std::invalid_argument("boundary function: sample count must be a power of two >= 16, got " +
                                        std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            if (!all_finite(samples_[j]))
                throw std::invalid_argument("boundary function: non-finite sample at index " + std::to_string(j));

        Eigen::FFT<double> fft;
        fft.fwd(fft_order_, samples_);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& c : fft_order_)
            c *= inv_n;
    }

    std::size_t size() const { return samples_.size(); }
    int half() const { return static_cast<int>(samples_.size() / 2); }

    const std::vector<cplx>& samples() const { return samples_; }
    cplx sample(std::size_t j) const { return samples_.at(j); }

    double theta(std::size_t j) const { return two_pi * static_cast<double>(j) / static_cast<double>(size()); }
    cplx node(std::size_t j) const { return std::polar(1.0, theta(j)); }

    // n must lie in [-N/2, N/2).
    cplx coeff(int n) const {
        if (n < -half() || n >= half())
            throw std::out_of_range("boundary function: frequency " + std::to_string(n) + " outside [-N/2, N/2)");
        const auto idx = static_cast<std::size_t>(n < 0 ? n + static_cast<int>(size()) : n);
        return fft_order_[idx];
    }

    // Coefficients in FFT storage order (index j holds frequency j for j < N/2, j - N otherwise).
    const std::vector<cplx>& fft_coeffs() const { return fft_order_; }

    // Inverse transform of the stored coefficients.
    std::vector<cplx> synthesize() const {
        Eigen::FFT<double> fft;
        std::vector<cplx> unscaled(fft_order_.size());
        for (std::size_t j = 0; j < fft_order_.size(); ++j)
            unscaled[j] = fft_order_[j] * static_cast<double>(size());
        std::vector<cplx> out;
        fft.inv(out, unscaled);
        return out;
    }

    // Root-mean-square over the samples, (1/N sum |phi|^2)^{1/2}.
    double l2_norm() const {
        double s = 0.0;
        for (const auto& v : samples_)
            s += std::norm(v);
        return std::sqrt(s / static_cast<double>(size()));
    }

    double sup_norm() const {
        double s = 0.0;
        for (const auto& v : samples_)
            s = std::max(s, std::abs(v));
        return s;
    }

    bool is_zero() const {
        return std::all_of(samples_.begin(), samples_.end(), [](const cplx& v) { return v == cplx{}; });
    }

    BoundaryFunction scaled(cplx c) const {
        std::vector<cplx> s(samples_);
        for (auto& v : s)
            v *= c;
        return BoundaryFunction(std::move(s));
    }

    // psi(e^{i theta}) = phi(e^{i(theta + 2 pi shift / N)}).
    BoundaryFunction rotated(std::size_t shift) const {
        std::vector<cplx> s(size());
        for (std::size_t j = 0; j < size(); ++j)
            s[j] = samples_[(j + shift) % size()];
        return BoundaryFunction(std::move(s));
    }

private:
    std::vector<cplx> samples_;
    std::vector<cplx> fft_order_;
};

// Reads `theta,re,im` rows. The grid must be theta_j = 2 pi j / N with N a power of two.
inline BoundaryFunction parse_boundary_csv(std::istream& in, double grid_tol = 1e-9) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("boundary csv: empty input");
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
        return s;
    };
    if (strip(line) != "theta,re,im")
        throw std::invalid_argument("boundary csv: expected header 'theta,re,im', got '" + line + "'");

    std::vector<double> thetas;
    std::vector<cplx> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty())
            continue;
        double fields[3];
        std::size_t pos = 0;
        for (int f = 0; f < 3; ++f) {
            const std::size_t comma = line.find(',', pos);
            const std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty() || (f < 2 && comma == std::string::npos) || (f == 2 && comma != std::string::npos))
                throw std::invalid_argument("boundary csv: malformed row at line " + std::to_string(lineno));
            std::size_t used = 0;
            try {
                fields[f] = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("boundary csv: unparsable number '" + tok + "' at line " +
                                            std::to_string(lineno));
            }
            if (used != tok.size())
                throw std::invalid_argument("boundary csv: unparsable number '" + tok + "' at line " +
                                            std::to_string(lineno));
            if (!std::isfinite(fields[f]))
                throw std::invalid_argument("boundary csv: non-finite value at line " + std::to_string(lineno));
            pos = comma + 1;
        }
        thetas.push_back(fields[0]);
        values.emplace_back(fields[1], fields[2]);
    }
    const std::size_t n = values.size();
    if (n < BoundaryFunction::min_samples || !is_power_of_two(n))
        throw std::invalid_argument("boundary csv: row count " + std::to_string(n) +
                                    " is not a power of two >= 16");
    for (std::size_t j = 0; j < n; ++j) {
        const double expected = two_pi * static_cast<double>(j) / static_cast<double>(n);
        if (std::abs(thetas[j] - expected) > grid_tol)
            throw std::invalid_argument("boundary csv: non-uniform grid at row " + std::to_string(j));
    }
    return BoundaryFunction(std::move(values));
}

inline BoundaryFunction load_boundary(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("boundary csv: cannot open '" + path + "'");
    return parse_boundary_csv(in);
}

inline void write_boundary_csv(std::ostream& out, const BoundaryFunction& phi) {
    const auto old = out.precision(17);
    out << "theta,re,im\n";
    for (std::size_t j = 0; j < phi.size(); ++j)
        out << phi.theta(j) << ',' << phi.sample(j).real() << ',' << phi.sample(j).imag() << '\n';
    out.precision(old);
}

// Builtin corpus: inverse, pole_m (m >= 1), cos, exp_cos, abs_sin, zero.
inline BoundaryFunction builtin_phi(std::string_view name, std::size_t n, int m = 0) {
    if (n < BoundaryFunction::min_samples || !is_power_of_two(n))
        throw std::invalid_argument("builtin_phi: N must be a power of two >= 16");
    std::vector<cplx> s(n);
    auto fill = [&](auto f) {
        for (std::size_t j = 0; j < n; ++j)
            s[j] = f(two_pi * static_cast<double>(j) / static_cast<double>(n));
    };
    if (name == "zero") {
        // already zero
    } else if (name == "inverse") {
        fill([](double t) { return std::polar(1.0, -t); });
    } else if (name == "pole_m") {
        if (m <= 0)
            throw std::invalid_argument("builtin_phi: pole_m requires m >= 1");
        fill([m](double t) { return std::polar(1.0, -m * t); });
    } else if (name == "cos") {
        fill([](double t) { return cplx(std::cos(t), 0.0); });
    } else if (name == "exp_cos") {
        fill([](double t) { return cplx(std::exp(std::cos(t)), 0.0); });
    } else if (name == "abs_sin") {
        fill([](double t) { return cplx(std::abs(std::sin(t)), 0.0); });
    } else {
        throw std::invalid_argument("builtin_phi: unknown function '" + std::string(name) + "'");
    }
    return BoundaryFunction(std::move(s));
}

// Accepts "cos", "pole_m:3" and the shorthand "pole_3".
inline BoundaryFunction builtin_phi_spec(std::string_view spec, std::size_t n) {
    const bool long_form = spec.rfind("pole_m:", 0) == 0;
    if (long_form || (spec.rfind("pole_", 0) == 0 && spec != "pole_m")) {
        const auto digits = spec.substr(long_form ? 7 : 5);
        int m = 0;
        try {
            std::size_t used = 0;
            m = std::stoi(std::string(digits), &used);
            if (used != digits.size())
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("builtin_phi: bad pole order in '" + std::string(spec) + "'");
        }
        return builtin_phi("pole_m", n, m);
    }
    return builtin_phi(spec, n);
}

struct Point {
    cplx z{};
    cplx w{};
};

// Finite point cloud standing in for a compact set in C^1 or C^2.
class SampledSet {
public:
    SampledSet(int dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
        if (dim_ != 1 && dim_ != 2)
            throw std::invalid_argument("sampled set: dimension must be 1 or 2");
        if (points_.empty())
            throw std::invalid_argument("sampled set: empty");
        for (const auto& p : points_)
            if (!all_finite(p.z) || !all_finite(p.w))
                throw std::invalid_argument("sampled set: non-finite coordinate");
    }

    static SampledSet circle(std::size_t n) {
        std::vector<Point> pts(n);
        for (std::size_t j = 0; j < n; ++j)
            pts[j].z = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
        return SampledSet(1, std::move(pts));
    }

    // Chebyshev points of the first kind on [-1, 1].
    static SampledSet chebyshev_interval(std::size_t n) {
        std::vector<Point> pts(n);
        for (std::size_t j = 0; j < n; ++j)
            pts[j].z = std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n)));
        return SampledSet(1, std::move(pts));
    }

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    bool is_real_line() const {
        return dim_ == 1 && std::all_of(points_.begin(), points_.end(), [](const Point& p) { return p.z.imag() == 0.0; });
    }

    SampledSet rotated(cplx rho) const {
        std::vector<Point> pts(points_);
        for (auto& p : pts)
            p.z *= rho;
        return SampledSet(dim_, std::move(pts));
    }

private:
    int dim_;
    std::vector<Point> points_;
};

enum class BracketStatus { bounded, unbounded, infeasible_numerics };

inline const char* to_string(BracketStatus s) {
    switch (s) {
    case BracketStatus::bounded: return "bounded";
    case BracketStatus::unbounded: return "unbounded";
    case BracketStatus::infeasible_numerics: return "infeasible-numerics";
    }
    return "?";
}

struct CurveEntry {
    double lb = 0.0;
    double ub = 0.0;
    BracketStatus status = BracketStatus::bounded;
};

// Degree-indexed certified brackets.
class DegreeCurve {
public:
    void insert(int degree, CurveEntry e) {
        if (degree < 1)
            throw std::invalid_argument("degree curve: degree must be >= 1");
        if (std::isnan(e.lb) || std::isnan(e.ub) || e.lb > e.ub)
            throw std::invalid_argument("degree curve: bracket with lb > ub at degree " + std::to_string(degree));
        entries_[degree] = e;
    }

    const std::map<int, CurveEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const CurveEntry& at(int degree) const { return entries_.at(degree); }

    bool any_unbounded() const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [](const auto& kv) { return kv.second.status == BracketStatus::unbounded; });
    }

    // max over degrees <= d of lb.
    double running_max_lb(int degree) const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& [d, e] : entries_) {
            if (d > degree)
                break;
            m = std::max(m, e.lb);
        }
        return m;
    }

private:
    std::map<int, CurveEntry> entries_;
};

inline std::string format_double(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace phull

#pragma once

#include "phull/core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace phull {

// Polynomial in one variable, monomial basis. The coefficient count minus one is
// a degree bound; the leading coefficient may vanish.
struct Poly1 {
    std::vector<cplx> coeffs;

    int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }

    cplx operator()(cplx z) const {
        cplx acc{};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    Poly1 scaled(cplx c) const {
        Poly1 out{coeffs};
        for (auto& v : out.coeffs)
            v *= c;
        return out;
    }
};

inline cplx eval1(const Poly1& p, cplx z) { return p(z); }

// Chebyshev series sum_k c_k T_k(t) with t = (z - center) / half_width.
struct ChebPoly1 {
    std::vector<cplx> coeffs;
    double center = 0.0;
    double half_width = 1.0;

    int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }

    // Clenshaw recurrence.
    cplx operator()(cplx z) const {
        const cplx t = (z - center) / half_width;
        cplx b1{}, b2{};
        for (int k = degree_bound(); k >= 1; --k) {
            const cplx b0 = 2.0 * t * b1 - b2 + coeffs[k];
            b2 = b1;
            b1 = b0;
        }
        return coeffs.empty() ? cplx{} : t * b1 - b2 + coeffs[0];
    }

    // Change of basis to monomials in z. Exponentially ill-conditioned in the
    // degree; meant for reporting, not for evaluation.
    Poly1 to_monomial() const {
        const int d = degree_bound();
        Poly1 out{std::vector<cplx>(static_cast<std::size_t>(std::max(d, 0) + 1))};
        if (d < 0)
            return out;
        // T_k as polynomials in t.
        std::vector<std::vector<double>> tk(static_cast<std::size_t>(d + 1));
        tk[0] = {1.0};
        if (d >= 1)
            tk[1] = {0.0, 1.0};
        for (int k = 2; k <= d; ++k) {
            tk[k].assign(static_cast<std::size_t>(k + 1), 0.0);
            for (std::size_t i = 0; i < tk[k - 1].size(); ++i)
                tk[k][i + 1] += 2.0 * tk[k - 1][i];
            for (std::size_t i = 0; i < tk[k - 2].size(); ++i)
                tk[k][i] -= tk[k - 2][i];
        }
        std::vector<cplx> in_t(static_cast<std::size_t>(d + 1));
        for (int k = 0; k <= d; ++k)
            for (std::size_t i = 0; i < tk[k].size(); ++i)
                in_t[i] += coeffs[k] * tk[k][i];
        // substitute t = (z - center) / half_width
        const double a = 1.0 / half_width, b = -center / half_width;
        std::vector<cplx> power{1.0};
        for (int i = 0; i <= d; ++i) {
            for (std::size_t j = 0; j < power.size(); ++j)
                out.coeffs[j] += in_t[i] * power[j];
            std::vector<cplx> next(power.size() + 1);
            for (std::size_t j = 0; j < power.size(); ++j) {
                next[j + 1] += a * power[j];
                next[j] += b * power[j];
            }
            power = std::move(next);
        }
        return out;
    }
};

// Polynomial in (z, w) of total degree <= degree. Coefficients are stored in
// graded order: block t holds z^{t-k} w^k for k = 0..t.
struct Poly2 {
    int degree = 0;
    std::vector<cplx> coeffs;

    Poly2() : coeffs(1) {}
    explicit Poly2(int d) : degree(d), coeffs(count(d)) {
        if (d < 0)
            throw std::invalid_argument("Poly2: negative degree");
    }
    Poly2(int d, std::vector<cplx> c) : degree(d), coeffs(std::move(c)) {
        if (d < 0 || coeffs.size() != count(d))
            throw std::invalid_argument("Poly2: coefficient count does not match degree");
    }

    static std::size_t count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }
    static std::size_t index(int j, int k) {
        const int t = j + k;
        return static_cast<std::size_t>(t * (t + 1) / 2 + k);
    }

    cplx& at(int j, int k) { return coeffs.at(index(j, k)); }
    cplx at(int j, int k) const { return coeffs.at(index(j, k)); }

    int total_degree() const {
        for (int t = degree; t >= 0; --t)
            for (int k = 0; k <= t; ++k)
                if (at(t - k, k) != cplx{})
                    return t;
        return -1;
    }

    // Horner in w over Horner-in-z coefficient polynomials.
    cplx operator()(cplx z, cplx w) const {
        cplx acc{};
        for (int k = degree; k >= 0; --k) {
            cplx q{};
            for (int j = degree - k; j >= 0; --j)
                q = q * z + at(j, k);
            acc = acc * w + q;
        }
        return acc;
    }

    Poly2 scaled(cplx c) const {
        Poly2 out(*this);
        for (auto& v : out.coeffs)
            v *= c;
        return out;
    }
};

inline cplx eval2(const Poly2& p, cplx z, cplx w) { return p(z, w); }

inline Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out(std::max(a.degree, b.degree));
    for (int t = 0; t <= a.degree; ++t)
        for (int k = 0; k <= t; ++k)
            out.at(t - k, k) += a.at(t - k, k);
    for (int t = 0; t <= b.degree; ++t)
        for (int k = 0; k <= t; ++k)
            out.at(t - k, k) += b.at(t - k, k);
    return out;
}

inline Poly1 operator+(const Poly1& a, const Poly1& b) {
    Poly1 out{std::vector<cplx>(std::max(a.coeffs.size(), b.coeffs.size()))};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        out.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
        out.coeffs[i] += b.coeffs[i];
    return out;
}

inline double sup_norm(const Poly1& p, const SampledSet& k) {
    if (k.dim() != 1)
        throw std::invalid_argument("sup_norm: one-variable polynomial on a set of dimension " +
                                    std::to_string(k.dim()));
    double s = 0.0;
    for (const auto& pt : k.points())
        s = std::max(s, std::abs(p(pt.z)));
    return s;
}

inline double sup_norm(const ChebPoly1& p, const SampledSet& k) {
    if (k.dim() != 1)
        throw std::invalid_argument("sup_norm: one-variable polynomial on a set of dimension " +
                                    std::to_string(k.dim()));
    double s = 0.0;
    for (const auto& pt : k.points())
        s = std::max(s, std::abs(p(pt.z)));
    return s;
}

inline double sup_norm(const Poly2& p, const SampledSet& k) {
    if (k.dim() != 2)
        throw std::invalid_argument("sup_norm: two-variable polynomial on a set of dimension " +
                                    std::to_string(k.dim()));
    double s = 0.0;
    for (const auto& pt : k.points())
        s = std::max(s, std::abs(p(pt.z, pt.w)));
    return s;
}

// Coefficient spaces used to set up extremal programs: each maps a point to the
// row of basis values and a coefficient vector back to a polynomial.

class MonomialSpace1 {
public:
    using poly_type = Poly1;
    explicit MonomialSpace1(int degree) : degree_(degree) {}

    Eigen::Index size() const { return degree_ + 1; }

    void values(const Point& p, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out) const {
        cplx v{1.0, 0.0};
        for (int k = 0; k <= degree_; ++k, v *= p.z)
            out(k) = v;
    }

    Poly1 make(const Eigen::VectorXcd& c) const { return Poly1{std::vector<cplx>(c.data(), c.data() + c.size())}; }

private:
    int degree_;
};

// Chebyshev basis on the real interval [center - half_width, center + half_width].
class ChebyshevSpace1 {
public:
    using poly_type = ChebPoly1;
    ChebyshevSpace1(int degree, double center, double half_width)
        : degree_(degree), center_(center), half_width_(half_width) {
        if (!(half_width_ > 0.0))
            throw std::invalid_argument("ChebyshevSpace1: interval must have positive width");
    }

    Eigen::Index size() const { return degree_ + 1; }

    void values(const Point& p, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out) const {
        const cplx t = (p.z - center_) / half_width_;
        cplx prev{1.0, 0.0}, cur = t;
        out(0) = prev;
        if (degree_ >= 1)
            out(1) = cur;
        for (int k = 2; k <= degree_; ++k) {
            const cplx next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
            out(k) = cur;
        }
    }

    ChebPoly1 make(const Eigen::VectorXcd& c) const {
        return ChebPoly1{std::vector<cplx>(c.data(), c.data() + c.size()), center_, half_width_};
    }

private:
    int degree_;
    double center_;
    double half_width_;
};

class MonomialSpace2 {
public:
    using poly_type = Poly2;
    explicit MonomialSpace2(int degree) : degree_(degree) {}

    Eigen::Index size() const { return static_cast<Eigen::Index>(Poly2::count(degree_)); }

    void values(const Point& p, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out) const {
        std::vector<cplx> zp(static_cast<std::size_t>(degree_ + 1)), wp(static_cast<std::size_t>(degree_ + 1));
        zp[0] = wp[0] = 1.0;
        for (int i = 1; i <= degree_; ++i) {
            zp[i] = zp[i - 1] * p.z;
            wp[i] = wp[i - 1] * p.w;
        }
        for (int t = 0; t <= degree_; ++t)
            for (int k = 0; k <= t; ++k)
                out(static_cast<Eigen::Index>(Poly2::index(t - k, k))) = zp[t - k] * wp[k];
    }

    Poly2 make(const Eigen::VectorXcd& c) const {
        return Poly2(degree_, std::vector<cplx>(c.data(), c.data() + c.size()));
    }

private:
    int degree_;
};

template <class Space>
Eigen::MatrixXcd basis_matrix(const Space& space, const SampledSet& k) {
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(k.size()), space.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        space.values(k[i], a.row(static_cast<Eigen::Index>(i)));
    return a;
}

template <class Space>
Eigen::VectorXcd basis_row(const Space& space, const Point& p) {
    Eigen::RowVectorXcd r(space.size());
    space.values(p, r);
    return r.transpose();
}

} // namespace phull

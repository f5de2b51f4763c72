#ifndef RUMOR_QUADRATURE_HPP
#define RUMOR_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 200;
};

namespace detail {

// Gauss(7)-Kronrod(15) nodes and weights on [-1,1] (positive half).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
inline void gk15_panel(const F& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kGK15Nodes[i]);
        fv[14 - i] = f(c + h * kGK15Nodes[i]);
    }
    fv[7] = f(c);
    double rk = 0.0, rg = 0.0;
    for (int i = 0; i < 7; ++i)
        rk += kGK15Weights[i] * (fv[i] + fv[14 - i]);
    rk += kGK15Weights[7] * fv[7];
    // Gauss-7 nodes sit at the odd Kronrod indices
    rg = kG7Weights[0] * (fv[1] + fv[13]) + kG7Weights[1] * (fv[3] + fv[11]) +
         kG7Weights[2] * (fv[5] + fv[9]) + kG7Weights[3] * fv[7];
    kronrod = rk * h;
    err = std::fabs((rk - rg) * h);
}

} // namespace detail

// Adaptive bisection with a GK15 rule per panel.  Throws numerical_error if
// the subdivision budget is exhausted before tolerances are met or the result
// is not finite.
template <typename F>
inline double integrate(const F& f, double a, double b, const QuadratureConfig& q) {
    if (!(b >= a))
        throw input_error("integrate: b < a");
    if (a == b) return 0.0;

    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    double v0, e0;
    detail::gk15_panel(f, a, b, v0, e0);
    panels.push_back({a, b, v0, e0});
    int splits = 0;
    while (true) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.error;
        }
        if (!std::isfinite(total))
            throw numerical_error("integrate: non-finite panel value on [" +
                                  std::to_string(a) + "," + std::to_string(b) + "]");
        if (err <= q.abs_tol || err <= q.rel_tol * std::fabs(total))
            return total;
        if (splits >= q.max_subdivisions)
            throw numerical_error("integrate: subdivision budget exhausted (error " +
                                  std::to_string(err) + ")");
        // split the worst panel
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        Panel left{p.a, mid, 0, 0}, right{mid, p.b, 0, 0};
        detail::gk15_panel(f, left.a, left.b, left.value, left.error);
        detail::gk15_panel(f, right.a, right.b, right.value, right.error);
        panels[worst] = left;
        panels.push_back(right);
        ++splits;
    }
}

// log of integral_a^b exp(logf(t)) dt, computed after shifting by the maximum
// of the log-integrand over a scan grid so the exponentiated values stay in
// range.  Returns -inf when the integrand underflows everywhere.
template <typename LogF>
inline double log_integrate_exp(const LogF& logf, double a, double b, const QuadratureConfig& q) {
    if (a == b) return -std::numeric_limits<double>::infinity();
    const int scan = 128;
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= scan; ++i) {
        double t = a + (b - a) * i / scan;
        double v = logf(t);
        if (v > m) m = v;
    }
    if (!std::isfinite(m))
        return -std::numeric_limits<double>::infinity();
    double integral = integrate([&](double t) { return std::exp(logf(t) - m); }, a, b, q);
    if (integral <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return m + std::log(integral);
}

// Chebyshev-Lobatto interpolant on [0, t_max], evaluated barycentrically.
// Used to cache smooth convolution kernels in the exact-likelihood recursion.
class ChebInterp {
public:
    ChebInterp() = default;

    static std::vector<double> nodes(double t_max, int n) {
        constexpr double pi = 3.14159265358979323846;
        std::vector<double> xs(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j)
            xs[static_cast<size_t>(j)] = 0.5 * t_max * (1.0 - std::cos(pi * j / n));
        return xs;
    }

    ChebInterp(double t_max, std::vector<double> values)
        : t_max_(t_max), vals_(std::move(values)) {
        n_ = static_cast<int>(vals_.size()) - 1;
        xs_ = nodes(t_max_, n_);
    }

    double operator()(double x) const {
        // barycentric weights for Lobatto points: (-1)^j, halved at the ends
        double num = 0.0, den = 0.0;
        for (int j = 0; j <= n_; ++j) {
            double dx = x - xs_[static_cast<size_t>(j)];
            if (dx == 0.0) return vals_[static_cast<size_t>(j)];
            double w = (j % 2 == 0 ? 1.0 : -1.0);
            if (j == 0 || j == n_) w *= 0.5;
            w /= dx;
            num += w * vals_[static_cast<size_t>(j)];
            den += w;
        }
        return num / den;
    }

private:
    double t_max_ = 1.0;
    int n_ = 0;
    std::vector<double> xs_, vals_;
};

} // namespace rumor

#endif

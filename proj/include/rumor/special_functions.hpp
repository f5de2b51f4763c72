#ifndef RUMOR_SPECIAL_FUNCTIONS_HPP
#define RUMOR_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <string>

#include "rumor/errors.hpp"

namespace rumor {

// log density of the sum of `shape` iid Exp(1) delays.
inline double erlang_log_pdf(int shape, double t) {
    if (shape < 1 || t < 0.0)
        throw input_error("erlang_log_pdf: shape >= 1 and t >= 0 required");
    if (t == 0.0)
        return shape == 1 ? 0.0 : -std::numeric_limits<double>::infinity();
    return (shape - 1) * std::log(t) - t - std::lgamma(static_cast<double>(shape));
}

namespace detail {

// Regularized lower incomplete gamma P(a,x): power series for x < a+1,
// Lentz continued fraction for Q(a,x) otherwise.
inline double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw input_error("incomplete gamma: a > 0 and x >= 0 required");
    if (x == 0.0) return 0.0;
    const double log_prefix = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16)
                return sum * std::exp(log_prefix);
        }
        throw numerical_error("incomplete gamma series failed to converge (a=" +
                              std::to_string(a) + ", x=" + std::to_string(x) + ")");
    }
    // modified Lentz for the continued fraction of Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return 1.0 - std::exp(log_prefix) * h;
    }
    throw numerical_error("incomplete gamma continued fraction failed to converge (a=" +
                          std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

} // namespace detail

inline double regularized_gamma_p(double a, double x) {
    return detail::regularized_gamma_p(a, x);
}

// gamma(a,x) = integral_0^x t^{a-1} e^{-t} dt
inline double lower_incomplete_gamma(double a, double x) {
    return std::exp(std::lgamma(a)) * detail::regularized_gamma_p(a, x);
}

inline double log_lower_incomplete_gamma(double a, double x) {
    double p = detail::regularized_gamma_p(a, x);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::lgamma(a) + std::log(p);
}

} // namespace rumor

#endif

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace dircf {

/// Raised when a hypergeometric-type series cannot reach the requested
/// tolerance within the degree cap; carries the partial sum and the last
/// certified tail bound.
class SeriesTruncationError : public std::runtime_error {
public:
    SeriesTruncationError(std::string what, std::complex<double> partial, double tail_bound)
        : std::runtime_error(std::move(what)), partial_(partial), tail_bound_(tail_bound) {}
    std::complex<double> partial() const { return partial_; }
    double tail_bound() const { return tail_bound_; }

private:
    std::complex<double> partial_;
    double tail_bound_;
};

/// Raised when a series denominator parameter sits on a pole (c in Z_{<=0}).
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool is_nonpositive_integer(std::complex<double> c, double eps = 0.0) {
    if (std::abs(c.imag()) > eps) return false;
    double r = c.real();
    return r <= eps && std::abs(r - std::round(r)) <= eps;
}

namespace detail {

/// Sum of term(0) + term(1) + ... truncated by the geometric majorant rule.
/// The degree-n term is bounded by m_n with m_0 = 1 and
/// m_{n+1} = m_n * snorm*(A+n) / ((n+1)*|c+n|); summation stops once the
/// majorant ratio has settled below 1 (three consecutive non-increasing
/// values) and the geometric tail bound m_{N+1}/(1-r) drops under tol.
template <class TermFn>
std::complex<double> sum_series_majorant(TermFn term, double snorm, double A,
                                         std::complex<double> c, double tol, int n_max,
                                         const char* what) {
    auto ratio = [&](int n) { return snorm * (A + n) / ((n + 1) * std::abs(c + double(n))); };
    std::complex<double> sum = 0.0;
    double majorant = 1.0;  // m_n
    for (int n = 0; n <= n_max; ++n) {
        sum += term(n);
        double r1 = ratio(n + 1);
        if (r1 < 1.0 && ratio(n + 2) <= r1 && ratio(n + 3) <= ratio(n + 2)) {
            double tail = majorant * ratio(n) / (1.0 - r1);
            if (tail < tol) return sum;
        }
        majorant *= ratio(n);
    }
    double r = ratio(n_max + 1);
    double tail = (r < 1.0) ? majorant / (1.0 - r) : majorant;
    throw SeriesTruncationError(std::string(what) + ": tolerance unreachable within degree cap",
                                sum, tail);
}

}  // namespace detail

/// Kummer 1F1(a;b;x) for non-negative real parameters; used as the runtime
/// majorant of the extended characteristic functional.
inline double hyp1f1(double a, double b, double x) {
    if (!(b > 0.0)) throw std::domain_error("hyp1f1: b must be positive");
    if (a < 0.0 || x < 0.0) throw std::domain_error("hyp1f1: expected non-negative a, x");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 10000; ++n) {
        term *= (a + n) * x / ((b + n) * (n + 1));
        sum += term;
        if (term < 1e-16 * sum && n > x) return sum;
    }
    throw std::runtime_error("hyp1f1: series did not converge");
}

}  // namespace dircf

#pragma once

#include <complex>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "dircf/partition.hpp"
#include "dircf/rational.hpp"

namespace dircf {

/// Hard cap on exact cycle-index degree: 33! is the largest factorial
/// representable in 128 bits. The configurable default cap is 30.
inline constexpr int kCycleIndexMaxDegree = 32;
inline constexpr int kCycleIndexDefaultDegree = 30;

/// Sparse cycle index polynomial: map from partitions of n (monomials t^lambda)
/// to exact rational coefficients. Terms iterate in reverse-lex order of the
/// frequency vector, matching enumerate_partitions.
class CycleIndexPolynomial {
public:
    using TermMap = std::map<Partition, Rational, std::greater<Partition>>;

    explicit CycleIndexPolynomial(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("cycle index: negative degree");
        if (degree > kCycleIndexMaxDegree)
            throw std::invalid_argument("cycle index: degree exceeds exact-arithmetic cap");
    }

    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }

    Rational coefficient(const Partition& lambda) const {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Partition& lambda, const Rational& coeff) {
        if (lambda.n() != degree_)
            throw std::invalid_argument("cycle index: term degree mismatch");
        Rational& c = terms_[lambda];
        c += coeff;
        if (c.is_zero()) terms_.erase(lambda);
    }

    /// Evaluate at t_1..t_n (point must supply at least degree() entries).
    template <class T>
    T evaluate_at(std::span<const T> point) const {
        if ((int)point.size() < degree_)
            throw std::invalid_argument("cycle index: evaluation point too short");
        T sum{};
        for (const auto& [lambda, coeff] : terms_) {
            T mono = monomial_value(lambda, point);
            if constexpr (std::is_same_v<T, Rational>)
                sum += coeff * mono;
            else
                sum += T(coeff.to_double()) * mono;
        }
        return sum;
    }

    std::complex<double> evaluate(std::span<const std::complex<double>> point) const {
        return evaluate_at<std::complex<double>>(point);
    }
    double evaluate(std::span<const double> point) const { return evaluate_at<double>(point); }
    Rational evaluate(std::span<const Rational> point) const { return evaluate_at<Rational>(point); }

    friend bool operator==(const CycleIndexPolynomial& a, const CycleIndexPolynomial& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const CycleIndexPolynomial& a, const CycleIndexPolynomial& b) {
        return !(a == b);
    }

private:
    template <class T>
    static T monomial_value(const Partition& lambda, std::span<const T> point) {
        T prod(1);
        for (int i = 1; i <= lambda.n(); ++i) {
            for (int j = 0; j < lambda.freq(i); ++j) prod *= point[i - 1];
        }
        return prod;
    }

    int degree_;
    TermMap terms_;
};

/// Z_n(t) = (1/n!) sum_{lambda |- n} M(lambda) t^lambda.
inline CycleIndexPolynomial cycle_index_direct(int n) {
    CycleIndexPolynomial z(n);
    Rational inv_nfact = Rational(1) / factorial_rational(n);
    for (const Partition& lambda : enumerate_partitions(n))
        z.add_term(lambda, multinomial_weight(lambda) * inv_nfact);
    return z;
}

namespace detail {

/// Multiply a cycle index polynomial by the variable t_v, lifting degree to
/// new_degree = old degree + v.
inline CycleIndexPolynomial multiply_by_variable(const CycleIndexPolynomial& p, int v) {
    CycleIndexPolynomial out(p.degree() + v);
    for (const auto& [lambda, coeff] : p.terms()) {
        std::vector<int> freq(p.degree() + v, 0);
        for (int i = 1; i <= lambda.n(); ++i) freq[i - 1] = lambda.freq(i);
        freq[v - 1] += 1;
        out.add_term(Partition(p.degree() + v, std::move(freq)), coeff);
    }
    return out;
}

}  // namespace detail

/// Z_n via the recurrence Z_n = (1/n) sum_{k=0}^{n-1} Z_k * t_{n-k}, Z_0 = 1.
inline CycleIndexPolynomial cycle_index_recurrence(int n) {
    std::vector<CycleIndexPolynomial> z;
    z.reserve(n + 1);
    CycleIndexPolynomial z0(0);
    z0.add_term(Partition(), Rational(1));
    z.push_back(std::move(z0));
    for (int m = 1; m <= n; ++m) {
        CycleIndexPolynomial zm(m);
        Rational inv_m = Rational(1, m);
        for (int k = 0; k < m; ++k) {
            CycleIndexPolynomial lifted = detail::multiply_by_variable(z[k], m - k);
            for (const auto& [lambda, coeff] : lifted.terms())
                zm.add_term(lambda, coeff * inv_m);
        }
        z.push_back(std::move(zm));
    }
    return z[n];
}

/// Reject element lists that are empty, hold duplicates, mix degrees, or are
/// not closed under composition (a finite composition-closed set of
/// permutations is a group).
inline void validate_group(std::span<const Permutation> elements) {
    if (elements.empty()) throw std::invalid_argument("group: empty element list");
    int n = elements.front().k();
    std::set<std::vector<int>> images;
    for (const auto& pi : elements) {
        if (pi.k() != n) throw std::invalid_argument("group: elements act on different sets");
        if (!images.insert(pi.images()).second)
            throw std::invalid_argument("group: duplicate element");
    }
    for (const auto& a : elements) {
        for (const auto& b : elements) {
            if (!images.count(compose(a, b).images()))
                throw std::invalid_argument("group: not a group (closure check failed)");
        }
    }
}

/// Z^G = (1/#G) sum_{pi in G} t^{lambda(pi)} for an explicitly listed group.
inline CycleIndexPolynomial cycle_index_group(std::span<const Permutation> elements) {
    validate_group(elements);
    int n = elements.front().k();
    CycleIndexPolynomial z(n);
    Rational inv_order(1, (long long)elements.size());
    for (const auto& pi : elements) z.add_term(cycle_structure(pi), inv_order);
    return z;
}

/// Values Z_0..Z_N at a fixed point (p_1, p_2, ...) via the degree recurrence
/// z_n = (1/n) sum_{k<n} z_k p_{n-k}, in complex double arithmetic. O(N^2);
/// used by the series evaluators, independently of the multi-index route.
inline std::vector<std::complex<double>> cycle_index_values(
    std::span<const std::complex<double>> power_sums, int N) {
    if ((int)power_sums.size() < N)
        throw std::invalid_argument("cycle_index_values: need N power sums");
    std::vector<std::complex<double>> z(N + 1);
    z[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) acc += z[k] * power_sums[n - k - 1];
        z[n] = acc / double(n);
    }
    return z;
}

}  // namespace dircf

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dircf/cycle_index.hpp"
#include "dircf/partition.hpp"
#include "dircf/rational.hpp"
#include "dircf/rng.hpp"
#include "dircf/series.hpp"

namespace dircf {

using complex_t = std::complex<double>;

/// Rising factorial (a)_n as a plain product; no Gamma evaluation, so it is
/// defined for every complex a.
template <class T>
T pochhammer(T a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: negative order");
    T prod(1);
    for (int j = 0; j < n; ++j) prod *= a + T(j);
    return prod;
}

inline Rational pochhammer(const Rational& a, int n) {
    Rational prod(1);
    for (int j = 0; j < n; ++j) prod *= a + Rational(j);
    return prod;
}

/// Multi-index Pochhammer (a)_m = prod_i (a_i)_{m_i}.
template <class T>
T pochhammer_multi(const std::vector<T>& a, const std::vector<int>& m) {
    T prod(1);
    for (size_t i = 0; i < a.size(); ++i) prod *= pochhammer(a[i], m[i]);
    return prod;
}

namespace detail {

template <class T>
T vector_total(const std::vector<T>& v) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
}

inline void check_dimensions(size_t k_s, size_t k_a, const char* who) {
    if (k_s != k_a || k_a == 0)
        throw std::invalid_argument(std::string(who) + ": s and alpha must have equal positive length");
}

inline void check_moment_denominator(double alpha_total, int n, const char* who) {
    double r = std::round(alpha_total);
    if (alpha_total <= 0.0 && std::abs(alpha_total - r) == 0.0 && r > -double(n))
        throw std::domain_error(std::string(who) +
                                ": |alpha| is a non-positive integer above -n (singular denominator)");
}

/// Visit every m in N_0^k with |m| = n. Iterative odometer, no recursion.
template <class Visit>
void for_each_composition(int n, int k, Visit visit) {
    std::vector<int> m(k, 0);
    m[0] = n;
    for (;;) {
        visit(const_cast<const std::vector<int>&>(m));
        if (k == 1) return;
        int rem = m[k - 1];
        m[k - 1] = 0;
        int j = k - 2;
        while (j >= 0 && m[j] == 0) --j;
        if (j < 0) return;
        m[j] -= 1;
        m[j + 1] = rem + 1;
    }
}

/// Power sums p_i = sum_j s_j^i alpha_j for i = 1..n.
template <class T>
std::vector<T> weighted_power_sums(const std::vector<T>& s, const std::vector<T>& alpha, int n) {
    std::vector<T> p(n, T(0));
    for (size_t j = 0; j < s.size(); ++j) {
        T pw = T(1);
        for (int i = 0; i < n; ++i) {
            pw *= s[j];
            p[i] += pw * alpha[j];
        }
    }
    return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Moment routes
// ---------------------------------------------------------------------------

/// Moment of order n of Dir(alpha) against s via the multinomial expansion:
/// (n!/(|alpha|)_n) * sum_{|m|=n} s^m (alpha)_m / m!.
inline double moment_multiindex(const std::vector<double>& s, const std::vector<double>& alpha,
                                int n) {
    detail::check_dimensions(s.size(), alpha.size(), "moment_multiindex");
    if (n < 0) throw std::invalid_argument("moment_multiindex: negative order");
    if (n == 0) return 1.0;
    double at = detail::vector_total(alpha);
    detail::check_moment_denominator(at, n, "moment_multiindex");
    int k = (int)s.size();
    // per-coordinate tables: (alpha_i)_m / m! and s_i^m
    std::vector<std::vector<double>> ratio(k, std::vector<double>(n + 1));
    std::vector<std::vector<double>> pw(k, std::vector<double>(n + 1));
    for (int i = 0; i < k; ++i) {
        ratio[i][0] = 1.0;
        pw[i][0] = 1.0;
        for (int m = 1; m <= n; ++m) {
            ratio[i][m] = ratio[i][m - 1] * (alpha[i] + m - 1) / m;
            pw[i][m] = pw[i][m - 1] * s[i];
        }
    }
    double sum = 0.0;
    detail::for_each_composition(n, k, [&](const std::vector<int>& m) {
        double term = 1.0;
        for (int i = 0; i < k; ++i) term *= ratio[i][m[i]] * pw[i][m[i]];
        sum += term;
    });
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale *= double(j + 1) / (at + j);
    return scale * sum;
}

/// Same moment through the cycle-index identity:
/// (n!/(|alpha|)_n) * Z_n(s^1.alpha, ..., s^n.alpha).
inline double moment_cycle_index(const std::vector<double>& s, const std::vector<double>& alpha,
                                 int n) {
    detail::check_dimensions(s.size(), alpha.size(), "moment_cycle_index");
    if (n < 0) throw std::invalid_argument("moment_cycle_index: negative order");
    if (n == 0) return 1.0;
    double at = detail::vector_total(alpha);
    detail::check_moment_denominator(at, n, "moment_cycle_index");
    std::vector<double> p = detail::weighted_power_sums(s, alpha, n);
    double zn = cycle_index_direct(n).evaluate(std::span<const double>(p));
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale *= double(j + 1) / (at + j);
    return scale * zn;
}

/// Exact-rational cycle-index moment, for the exhaustive identities.
inline Rational moment_cycle_index_exact(const std::vector<Rational>& s,
                                         const std::vector<Rational>& alpha, int n) {
    detail::check_dimensions(s.size(), alpha.size(), "moment_cycle_index_exact");
    if (n == 0) return Rational(1);
    Rational at = detail::vector_total(alpha);
    Rational denom = pochhammer(at, n);
    if (denom.is_zero())
        throw std::domain_error("moment_cycle_index_exact: singular denominator");
    std::vector<Rational> p = detail::weighted_power_sums(s, alpha, n);
    Rational zn = cycle_index_direct(n).evaluate(std::span<const Rational>(p));
    return factorial_rational(n) * zn / denom;
}

struct MomentReport {
    double value = 0.0;
    enum class Route { multiindex, cycleindex, montecarlo } route = Route::multiindex;
    std::optional<double> stderr_;   // Monte Carlo only
    std::optional<long long> samples;
};

/// Monte Carlo moment: mean of (s.y)^n over N Dirichlet draws, sharded
/// deterministically by (seed, shard).
inline MomentReport moment_monte_carlo(const std::vector<double>& s,
                                       const std::vector<double>& alpha, int n, long long N,
                                       std::uint64_t seed) {
    detail::check_dimensions(s.size(), alpha.size(), "moment_monte_carlo");
    if (N < 1) throw std::invalid_argument("moment_monte_carlo: need at least one sample");
    if (n < 0) throw std::invalid_argument("moment_monte_carlo: negative order");
    MomentReport rep;
    rep.route = MomentReport::Route::montecarlo;
    rep.samples = N;
    if (n == 0) {
        rep.value = 1.0;
        rep.stderr_ = 0.0;
        return rep;
    }
    int shards = mc_shard_count(N);
    struct Acc {
        double sum = 0.0, sumsq = 0.0;
        long long count = 0;
    };
    auto results = run_sharded<Acc>(shards, [&](int shard) {
        Acc acc;
        long long lo = N * shard / shards, hi = N * (shard + 1) / shards;
        Rng rng = Rng::for_shard(seed, (std::uint64_t)shard);
        for (long long it = lo; it < hi; ++it) {
            std::vector<double> y = sample_dirichlet(alpha, rng);
            double dot = 0.0;
            for (size_t i = 0; i < s.size(); ++i) dot += s[i] * y[i];
            double v = std::pow(dot, n);
            acc.sum += v;
            acc.sumsq += v * v;
            acc.count += 1;
        }
        return acc;
    });
    double sum = 0.0, sumsq = 0.0;
    for (const auto& a : results) {
        sum += a.sum;
        sumsq += a.sumsq;
    }
    double mean = sum / double(N);
    double var = std::max(0.0, sumsq / double(N) - mean * mean);
    rep.value = mean;
    rep.stderr_ = std::sqrt(var / double(N));
    return rep;
}

// ---------------------------------------------------------------------------
// Humbert series and the characteristic functional
// ---------------------------------------------------------------------------

inline constexpr int kSeriesDefaultDegreeCap = 120;

/// Second k-variate Humbert function
///   Phi2[alpha; c; s] = sum_m (alpha)_m s^m / ((c)_{|m|} m!),
/// summed by total degree with the Pochhammer-quotient majorant tail rule.
/// Absolute error at return is below tol.
inline complex_t humbert_phi2(const std::vector<complex_t>& alpha, complex_t c,
                              const std::vector<complex_t>& s, double tol,
                              int degree_cap = kSeriesDefaultDegreeCap) {
    if (alpha.size() != s.size() || alpha.empty())
        throw std::invalid_argument("humbert_phi2: alpha and s must have equal positive length");
    if (!(tol > 0.0)) throw std::invalid_argument("humbert_phi2: tolerance must be positive");
    if (is_nonpositive_integer(c))
        throw PoleError("humbert_phi2: c is a non-positive integer (pole)");
    int k = (int)alpha.size();
    double snorm = 0.0, A = 0.0;
    for (int i = 0; i < k; ++i) {
        snorm = std::max(snorm, std::abs(s[i]));
        A += std::abs(alpha[i]);
    }
    // lazily grown per-coordinate tables: (alpha_i)_m / m! and s_i^m
    std::vector<std::vector<complex_t>> ratio(k, {complex_t(1.0)});
    std::vector<std::vector<complex_t>> pw(k, {complex_t(1.0)});
    auto grow = [&](int upto) {
        for (int i = 0; i < k; ++i) {
            while ((int)ratio[i].size() <= upto) {
                int m = (int)ratio[i].size();
                ratio[i].push_back(ratio[i][m - 1] * (alpha[i] + double(m - 1)) / double(m));
                pw[i].push_back(pw[i][m - 1] * s[i]);
            }
        }
    };
    complex_t poch_c(1.0);  // (c)_n, updated incrementally
    int poch_n = 0;
    auto term = [&](int n) {
        grow(n);
        while (poch_n < n) {
            poch_c *= c + double(poch_n);
            ++poch_n;
        }
        complex_t inner = 0.0;
        detail::for_each_composition(n, k, [&](const std::vector<int>& m) {
            complex_t t(1.0);
            for (int i = 0; i < k; ++i) t *= ratio[i][m[i]] * pw[i][m[i]];
            inner += t;
        });
        return inner / poch_c;
    };
    return detail::sum_series_majorant(term, snorm, A, c, tol, degree_cap, "humbert_phi2");
}

inline std::vector<complex_t> to_complex(const std::vector<double>& v) {
    return std::vector<complex_t>(v.begin(), v.end());
}

/// Characteristic functional of Dir(alpha): Phi2[alpha; |alpha|; i s].
inline complex_t characteristic_functional(const std::vector<double>& alpha,
                                           const std::vector<double>& s, double tol,
                                           int degree_cap = kSeriesDefaultDegreeCap) {
    detail::check_dimensions(s.size(), alpha.size(), "characteristic_functional");
    for (double a : alpha)
        if (!(a > 0.0))
            throw std::invalid_argument("characteristic_functional: alpha must be positive");
    std::vector<complex_t> is(s.size());
    for (size_t i = 0; i < s.size(); ++i) is[i] = complex_t(0.0, s[i]);
    return humbert_phi2(to_complex(alpha), complex_t(detail::vector_total(alpha)), is, tol,
                        degree_cap);
}

enum class LimitRegime { beta_to_zero, beta_to_infinity };

/// Closed-form confluent limits of Phi2[beta alpha; beta|alpha|; s].
inline complex_t confluent_limit(const std::vector<double>& alpha, const std::vector<complex_t>& s,
                                 LimitRegime regime) {
    detail::check_dimensions(s.size(), alpha.size(), "confluent_limit");
    double at = detail::vector_total(alpha);
    if (regime == LimitRegime::beta_to_zero) {
        complex_t acc = 0.0;
        for (size_t i = 0; i < alpha.size(); ++i) acc += alpha[i] * std::exp(s[i]);
        return acc / at;
    }
    complex_t dot = 0.0;
    for (size_t i = 0; i < alpha.size(); ++i) dot += alpha[i] * s[i];
    return std::exp(dot / at);
}

/// Closed-form limiting moments of Dir(beta alpha) as beta -> 0 / infinity.
inline double asymptotic_moment(const std::vector<double>& s, const std::vector<double>& alpha,
                                int n, LimitRegime regime) {
    detail::check_dimensions(s.size(), alpha.size(), "asymptotic_moment");
    if (n < 0) throw std::invalid_argument("asymptotic_moment: negative order");
    if (n == 0) return 1.0;
    double at = detail::vector_total(alpha);
    if (regime == LimitRegime::beta_to_zero) {
        double acc = 0.0;
        for (size_t i = 0; i < alpha.size(); ++i) acc += alpha[i] * std::pow(s[i], n);
        return acc / at;
    }
    double dot = 0.0;
    for (size_t i = 0; i < alpha.size(); ++i) dot += alpha[i] * s[i];
    return std::pow(dot / at, n);
}

// ---------------------------------------------------------------------------
// Mapping theorem: star map, additive contraction, pushforward
// ---------------------------------------------------------------------------

/// The weakly order-preserving surjection [1..k] -> [1..|lambda|] whose fiber
/// sizes realize lambda, smallest parts first: slots c_{j-1}+1..c_j (with
/// c_j = sum_{i<=j} i lambda_i) map to L_{j-1} + ceil((i-c_{j-1})/j).
inline std::vector<int> star_lambda(const Partition& lambda) {
    int k = lambda.n();
    std::vector<int> out(k);
    int slot_base = 0;   // c_{j-1}
    int index_base = 0;  // L_{j-1}
    for (int j = 1; j <= k; ++j) {
        int f = lambda.freq(j);
        for (int i = slot_base + 1; i <= slot_base + j * f; ++i)
            out[i - 1] = index_base + (i - slot_base + j - 1) / j;
        slot_base += j * f;
        index_base += f;
    }
    return out;
}

/// Contract y by summing consecutive groups of sizes given by lambda
/// (lambda_1 singletons first, then lambda_2 pairs, ...).
template <class T>
std::vector<T> additive_contraction(const std::vector<T>& y, const Partition& lambda) {
    if ((int)y.size() != lambda.n())
        throw std::invalid_argument("additive_contraction: length mismatch");
    std::vector<T> out;
    out.reserve(lambda.part_count());
    size_t pos = 0;
    for (int j = 1; j <= lambda.n(); ++j) {
        for (int r = 0; r < lambda.freq(j); ++r) {
            T acc{};
            for (int t = 0; t < j; ++t) acc += y[pos++];
            out.push_back(acc);
        }
    }
    return out;
}

/// Decomposition of g: [1..k] -> [1..k] through the canonical ordered set
/// partition of its fibers. star_lambda(lambda) o pi sends x to the canonical
/// index of its fiber; cluster_values maps that index back to g's value, so
/// g(x) == cluster_values[star_lambda(lambda)[pi(x)] - 1] pointwise.
struct MapDecomposition {
    Partition lambda;
    Permutation pi;
    std::vector<int> cluster_values;
};

inline MapDecomposition decompose_map(const std::vector<int>& g) {
    int k = (int)g.size();
    if (k == 0) throw std::invalid_argument("decompose_map: empty map");
    for (int v : g)
        if (v < 1 || v > k) throw std::invalid_argument("decompose_map: g not into [1..k]");
    std::vector<std::vector<int>> fibers(k + 1);
    for (int x = 1; x <= k; ++x) fibers[g[x - 1]].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (int v = 1; v <= k; ++v)
        if (!fibers[v].empty()) blocks.push_back(fibers[v]);
    SetPartition sp(k, blocks);  // canonicalizes: ascending cardinality, then least element
    Partition lambda = set_partition_shape(sp);

    std::vector<int> to_slot(k + 1, 0);
    std::vector<int> values;
    int slot = 1;
    for (const auto& block : sp.blocks()) {
        values.push_back(g[block.front() - 1]);
        for (int x : block) to_slot[x] = slot++;
    }
    std::vector<int> images(k);
    for (int x = 1; x <= k; ++x) images[x - 1] = to_slot[x];
    return MapDecomposition{std::move(lambda), Permutation(std::move(images)),
                            std::move(values)};
}

/// Pushforward intensity (g_# alpha)_j = sum_{i: g(i)=j} alpha_i with
/// empty-fiber (zero mass) coordinates dropped, in increasing j order.
template <class T>
std::vector<T> pushforward_params(const std::vector<int>& g, const std::vector<T>& alpha) {
    if (g.size() != alpha.size())
        throw std::invalid_argument("pushforward_params: size mismatch");
    int k = (int)g.size();
    std::vector<T> sums(k + 1, T(0));
    std::vector<char> hit(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
        int v = g[i - 1];
        if (v < 1 || v > k) throw std::invalid_argument("pushforward_params: g not into [1..k]");
        sums[v] += alpha[i - 1];
        hit[v] = 1;
    }
    std::vector<T> out;
    for (int j = 1; j <= k; ++j)
        if (hit[j]) out.push_back(sums[j]);
    return out;
}

}  // namespace dircf

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dircf {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

/// Deterministic xoshiro256++ generator. Self-contained so that streams are
/// reproducible across standard libraries; shard streams derive from
/// (seed, shard index) and aggregate order-independently of thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    static Rng for_shard(std::uint64_t seed, std::uint64_t shard) {
        std::uint64_t sm = seed ^ (0xA0761D6478BD642Full * (shard + 1));
        return Rng(detail::splitmix64(sm));
    }

    std::uint64_t next() {
        std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1], never zero (safe for logs and powers).
    double uniform_pos() { return 1.0 - uniform01(); }

    /// Standard normal via the Marsaglia polar method (one spare cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang for shape >= 1 and the uniform
    /// power boost for shape < 1.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("rng: gamma shape must be positive");
        if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Beta(1, b) by inverse CDF: v = 1 - u^(1/b).
    double beta1(double b) {
        if (!(b > 0.0)) throw std::invalid_argument("rng: beta parameter must be positive");
        return 1.0 - std::pow(uniform_pos(), 1.0 / b);
    }

private:
    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// One draw from Dir(alpha) as normalized independent Gamma(alpha_i) draws.
inline std::vector<double> sample_dirichlet(const std::vector<double>& alpha, Rng& rng) {
    if (alpha.empty()) throw std::invalid_argument("sample_dirichlet: empty alpha");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("sample_dirichlet: alpha must be positive");
    std::vector<double> y(alpha.size());
    double total = 0.0;
    for (size_t i = 0; i < alpha.size(); ++i) {
        y[i] = rng.gamma(alpha[i]);
        total += y[i];
    }
    if (total <= 0.0) {
        // all gammas underflowed (tiny shapes); fall back to a uniform vertex pick
        size_t i = size_t(rng.uniform01() * double(alpha.size()));
        if (i >= alpha.size()) i = alpha.size() - 1;
        for (auto& v : y) v = 0.0;
        y[i] = 1.0;
        return y;
    }
    for (auto& v : y) v /= total;
    return y;
}

/// Number of shards used for a deterministic Monte Carlo aggregate.
inline int mc_shard_count(long long samples) {
    const long long per = 1 << 14;
    long long s = (samples + per - 1) / per;
    if (s < 1) s = 1;
    if (s > 4096) s = 4096;
    return (int)s;
}

/// Worker cap from DIRICHLET_CF_THREADS (>=1); results never depend on it.
inline int worker_count() {
    if (const char* env = std::getenv("DIRICHLET_CF_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

/// Run `shards` independent jobs (job(shard) -> T) on up to worker_count()
/// threads and return results indexed by shard, so aggregates are
/// deterministic regardless of the thread count.
template <class T, class Job>
std::vector<T> run_sharded(int shards, Job job) {
    std::vector<T> results(shards);
    int workers = std::min(worker_count(), shards);
    if (workers <= 1) {
        for (int s = 0; s < shards; ++s) results[s] = job(s);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int s = next.fetch_add(1);
                if (s >= shards) break;
                results[s] = job(s);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace dircf

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dircf/cycle_index.hpp"
#include "dircf/dirichlet.hpp"
#include "dircf/rng.hpp"
#include "dircf/series.hpp"

namespace dircf {

/// Finitely supported signed measure on [0,1]: atom positions plus weights.
struct DiscreteMeasure {
    std::vector<double> atoms;
    std::vector<double> weights;

    DiscreteMeasure() = default;
    DiscreteMeasure(std::vector<double> a, std::vector<double> w)
        : atoms(std::move(a)), weights(std::move(w)) {
        if (atoms.size() != weights.size())
            throw std::invalid_argument("measure: atoms/weights length mismatch");
    }

    size_t size() const { return atoms.size(); }
    double total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
    double tv_norm() const {
        double s = 0.0;
        for (double w : weights) s += std::abs(w);
        return s;
    }

    /// nu + w * delta_y, merging with an existing atom at the same position.
    DiscreteMeasure with_atom(double y, double w) const {
        DiscreteMeasure out = *this;
        for (size_t i = 0; i < out.atoms.size(); ++i) {
            if (out.atoms[i] == y) {
                out.weights[i] += w;
                return out;
            }
        }
        out.atoms.push_back(y);
        out.weights.push_back(w);
        return out;
    }
};

/// Partition of [0,1) into cells [c_{i-1}, c_i) by strictly increasing
/// interior cut points.
struct BasePartition {
    std::vector<double> cuts;  // interior cuts, strictly increasing in (0,1)

    BasePartition() = default;
    explicit BasePartition(std::vector<double> interior_cuts) : cuts(std::move(interior_cuts)) {
        double prev = 0.0;
        for (double c : cuts) {
            if (!(c > prev && c < 1.0))
                throw std::invalid_argument("base partition: cuts must increase strictly within (0,1)");
            prev = c;
        }
    }

    static BasePartition dyadic(int depth) {
        std::vector<double> c;
        int cells = 1 << depth;
        c.reserve(cells - 1);
        for (int i = 1; i < cells; ++i) c.push_back(std::ldexp(double(i), -depth));
        return BasePartition(std::move(c));
    }

    int cells() const { return (int)cuts.size() + 1; }
    double lower(int cell) const { return cell == 0 ? 0.0 : cuts[cell - 1]; }
    double upper(int cell) const { return cell == (int)cuts.size() ? 1.0 : cuts[cell]; }
    int cell_of(double x) const {
        int c = (int)(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
        return c;
    }
};

/// Test function on [0,1]: either locally constant on a partition or an
/// arbitrary continuous callable (sup norm estimated on on a fixed grid).
class TestFunction {
public:
    static TestFunction piecewise(BasePartition partition, std::vector<double> values) {
        if ((int)values.size() != partition.cells())
            throw std::invalid_argument("test function: one value per cell required");
        TestFunction f;
        f.repr_ = Piecewise{std::move(partition), std::move(values)};
        return f;
    }
    static TestFunction callable(std::function<double(double)> fn) {
        if (!fn) throw std::invalid_argument("test function: empty callable");
        TestFunction f;
        f.repr_ = std::move(fn);
        return f;
    }

    double operator()(double x) const {
        if (const auto* pw = std::get_if<Piecewise>(&repr_))
            return pw->values[pw->partition.cell_of(x)];
        return std::get<std::function<double(double)>>(repr_)(x);
    }

    bool is_piecewise() const { return std::holds_alternative<Piecewise>(repr_); }
    const BasePartition& partition() const { return std::get<Piecewise>(repr_).partition; }
    const std::vector<double>& values() const { return std::get<Piecewise>(repr_).values; }

    double sup_norm() const {
        if (const auto* pw = std::get_if<Piecewise>(&repr_)) {
            double m = 0.0;
            for (double v : pw->values) m = std::max(m, std::abs(v));
            return m;
        }
        const auto& fn = std::get<std::function<double(double)>>(repr_);
        double m = 0.0;
        const int grid = 4096;
        for (int i = 0; i <= grid; ++i) m = std::max(m, std::abs(fn(double(i) / grid)));
        return m;
    }

private:
    struct Piecewise {
        BasePartition partition;
        std::vector<double> values;
    };
    TestFunction() = default;
    std::variant<Piecewise, std::function<double(double)>> repr_;
};

namespace detail {

/// Nodes/weights of 8-point Gauss-Legendre on [-1,1].
inline const std::vector<std::pair<double, double>>& gauss8() {
    static const std::vector<std::pair<double, double>> table = {
        {-0.9602898564975363, 0.1012285362903763}, {-0.7966664774136267, 0.2223810344533745},
        {-0.5255324099163290, 0.3137066458778873}, {-0.1834346424956498, 0.3626837833783620},
        {0.1834346424956498, 0.3626837833783620},  {0.5255324099163290, 0.3137066458778873},
        {0.7966664774136267, 0.2223810344533745},  {0.9602898564975363, 0.1012285362903763}};
    return table;
}

/// Integral of g over [a,b], composite Gauss-Legendre with `panels` panels.
template <class G>
double integrate(G g, double a, double b, int panels = 32) {
    double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h;
        for (auto [x, w] : gauss8()) sum += w * g(mid + 0.5 * h * x);
        // scale applied once below
    }
    return sum * 0.5 * h;
}

}  // namespace detail

/// Moments of f under the uniform reference measure: integral of f^j on [0,1];
/// exact for piecewise-constant f, composite quadrature otherwise.
inline double uniform_moment(const TestFunction& f, int j) {
    if (f.is_piecewise()) {
        const auto& part = f.partition();
        const auto& vals = f.values();
        double acc = 0.0;
        for (int c = 0; c < part.cells(); ++c)
            acc += (part.upper(c) - part.lower(c)) * std::pow(vals[c], j);
        return acc;
    }
    return detail::integrate([&](double x) { return std::pow(f(x), j); }, 0.0, 1.0);
}

/// sum_i w_i f(x_i)^j.
inline double measure_moment(const DiscreteMeasure& nu, const TestFunction& f, int j) {
    double acc = 0.0;
    for (size_t i = 0; i < nu.size(); ++i) acc += nu.weights[i] * std::pow(f(nu.atoms[i]), j);
    return acc;
}

// ---------------------------------------------------------------------------
// Stick-breaking sampler
// ---------------------------------------------------------------------------

/// One Dirichlet-Ferguson realization with intensity beta * base law:
/// weights w_i = v_i prod_{j<i} (1 - v_j), v_j ~ Beta(1, beta), truncated when
/// the residual stick mass drops below eps; the residual is folded into the
/// last atom so the total mass is exactly one.
inline DiscreteMeasure sample_ferguson(double beta,
                                       const std::function<double(Rng&)>& base_sampler,
                                       double eps, Rng& rng) {
    if (!(beta > 0.0)) throw std::invalid_argument("sample_ferguson: beta must be positive");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("sample_ferguson: eps must lie in (0,1)");
    DiscreteMeasure eta;
    double remaining = 1.0;
    while (remaining >= eps) {
        double v = rng.beta1(beta);
        double w = v * remaining;
        eta.atoms.push_back(base_sampler(rng));
        eta.weights.push_back(w);
        remaining *= (1.0 - v);
        if (v == 1.0) {
            remaining = 0.0;
            break;
        }
    }
    if (eta.atoms.empty()) {
        eta.atoms.push_back(base_sampler(rng));
        eta.weights.push_back(0.0);
    }
    eta.weights.back() += remaining;
    return eta;
}

inline std::function<double(Rng&)> uniform_base_sampler() {
    return [](Rng& rng) { return rng.uniform01(); };
}

/// Cell masses (eta X_1, ..., eta X_k).
inline std::vector<double> marginalize(const DiscreteMeasure& eta, const BasePartition& X) {
    std::vector<double> out(X.cells(), 0.0);
    for (size_t i = 0; i < eta.size(); ++i) out[X.cell_of(eta.atoms[i])] += eta.weights[i];
    return out;
}

// ---------------------------------------------------------------------------
// Series characteristic functional and its extension
// ---------------------------------------------------------------------------

namespace detail {

/// Core series sum_n scale^n Z_n(mu_1..mu_n) / (nuX)_n with mu_j the f-moments
/// of nu; majorant family Poch(tv,n) |scale * supf|^n / (n! |(nuX)_n|).
inline complex_t phi_series(const std::function<double(int)>& moment, double nu_total,
                            double tv_norm, double sup_f, complex_t scale, double tol,
                            int degree_cap, const char* what) {
    if (is_nonpositive_integer(complex_t(nu_total)))
        throw PoleError(std::string(what) + ": total mass is a non-positive integer (pole)");
    std::vector<complex_t> power_sums;
    std::vector<complex_t> z{complex_t(1.0)};  // z_n by the degree recurrence
    double poch = 1.0;                         // (nuX)_n
    auto term = [&](int n) {
        if (n == 0) return complex_t(1.0);
        power_sums.push_back(std::pow(scale, n) * moment(n));
        complex_t acc = 0.0;
        for (int j = 0; j < n; ++j) acc += z[j] * power_sums[n - j - 1];
        z.push_back(acc / double(n));
        poch *= nu_total + double(n - 1);
        return z[n] / poch;
    };
    return detail::sum_series_majorant(term, std::abs(scale) * sup_f, tv_norm,
                                       complex_t(nu_total), tol, degree_cap, what);
}

}  // namespace detail

/// Characteristic-functional series of D_nu at t*f for a finitely supported
/// non-negative nu (Z_n route): sum_n (it)^n (nuX)_n^{-1} Z_n(nu f^1,...).
inline complex_t cf_series(const DiscreteMeasure& nu, const TestFunction& f, double t, double tol,
                           int degree_cap = kSeriesDefaultDegreeCap) {
    double beta = nu.total_mass();
    if (!(beta > 0.0)) throw std::invalid_argument("cf_series: total mass must be positive");
    for (double w : nu.weights)
        if (w < 0.0) throw std::invalid_argument("cf_series: negative weight");
    return detail::phi_series([&](int j) { return measure_moment(nu, f, j); }, beta, beta,
                              f.sup_norm(), complex_t(0.0, t), tol, degree_cap, "cf_series");
}

/// Same series with the uniform reference measure scaled by beta.
inline complex_t cf_series_uniform(double beta, const TestFunction& f, double t, double tol,
                                   int degree_cap = kSeriesDefaultDegreeCap) {
    if (!(beta > 0.0)) throw std::invalid_argument("cf_series_uniform: beta must be positive");
    return detail::phi_series([&](int j) { return beta * uniform_moment(f, j); }, beta, beta,
                              f.sup_norm(), complex_t(0.0, t), tol, degree_cap,
                              "cf_series_uniform");
}

struct CfEstimate {
    complex_t value;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
};

/// Monte Carlo estimate of E exp(i t <eta, f>) over stick-breaking samples;
/// deterministic per (seed, shard) split.
inline CfEstimate cf_monte_carlo(double beta, const std::function<double(Rng&)>& base_sampler,
                                 const TestFunction& f, double t, long long N, std::uint64_t seed,
                                 double eps = 1e-10) {
    if (N < 1) throw std::invalid_argument("cf_monte_carlo: need at least one sample");
    int shards = mc_shard_count(N);
    struct Acc {
        double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0;
    };
    auto results = run_sharded<Acc>(shards, [&](int shard) {
        Acc acc;
        long long lo = N * shard / shards, hi = N * (shard + 1) / shards;
        Rng rng = Rng::for_shard(seed, (std::uint64_t)shard);
        for (long long it = lo; it < hi; ++it) {
            DiscreteMeasure eta = sample_ferguson(beta, base_sampler, eps, rng);
            double pairing = measure_moment(eta, f, 1);
            double re = std::cos(t * pairing), im = std::sin(t * pairing);
            acc.sr += re;
            acc.si += im;
            acc.srr += re * re;
            acc.sii += im * im;
        }
        return acc;
    });
    double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0;
    for (const auto& a : results) {
        sr += a.sr;
        si += a.si;
        srr += a.srr;
        sii += a.sii;
    }
    double mr = sr / double(N), mi = si / double(N);
    CfEstimate est;
    est.value = complex_t(mr, mi);
    est.stderr_re = std::sqrt(std::max(0.0, srr / double(N) - mr * mr) / double(N));
    est.stderr_im = std::sqrt(std::max(0.0, sii / double(N) - mi * mi) / double(N));
    return est;
}

/// Extension Phi[nu, f] = sum_n (nuX)_n^{-1} Z_n(nu f^1, ..., nu f^n) to
/// signed nu with positive total mass; the 1F1 polydisk majorant is enforced
/// as a runtime sanity bound.
inline complex_t phi_extension(const DiscreteMeasure& nu, const TestFunction& f, double tol,
                               int degree_cap = kSeriesDefaultDegreeCap) {
    double total = nu.total_mass();
    if (!(total > 0.0)) throw std::invalid_argument("phi_extension: total mass must be positive");
    complex_t value =
        detail::phi_series([&](int j) { return measure_moment(nu, f, j); }, total, nu.tv_norm(),
                           f.sup_norm(), complex_t(1.0), tol, degree_cap, "phi_extension");
    double bound = hyp1f1(nu.tv_norm(), total, f.sup_norm());
    if (std::abs(value) > bound + tol)
        throw std::logic_error("phi_extension: value escaped its 1F1 majorant");
    return value;
}

/// Union of half-open intervals [lo, hi) used as a region of integration.
struct Region {
    std::vector<std::pair<double, double>> intervals;

    bool contains(double x) const {
        for (auto [lo, hi] : intervals)
            if (x >= lo && x < hi) return true;
        return false;
    }
    static Region interval(double lo, double hi) { return Region{{{lo, hi}}}; }
    static Region empty() { return Region{}; }
};

/// E_A Phi[nu, f] = sum over atoms y in A of nu{y} Phi[nu + delta_y, f].
inline complex_t raise_region(const DiscreteMeasure& nu, const TestFunction& f, const Region& A,
                              double tol, int degree_cap = kSeriesDefaultDegreeCap) {
    complex_t acc = 0.0;
    for (size_t i = 0; i < nu.size(); ++i) {
        if (!A.contains(nu.atoms[i])) continue;
        acc += nu.weights[i] * phi_extension(nu.with_atom(nu.atoms[i], 1.0), f, tol, degree_cap);
    }
    return acc;
}

/// E_{A,-B} Phi[nu, f]: raise over A \ B, lower over B \ A. Requires total
/// mass > 1 so Phi[nu - delta_y, f] stays in the convergence region.
inline complex_t raise_lower_region(const DiscreteMeasure& nu, const TestFunction& f,
                                    const Region& A, const Region& B, double tol,
                                    int degree_cap = kSeriesDefaultDegreeCap) {
    if (!(nu.total_mass() > 1.0))
        throw std::domain_error("raise_lower_region: total mass must exceed 1");
    complex_t acc = 0.0;
    for (size_t i = 0; i < nu.size(); ++i) {
        double y = nu.atoms[i];
        bool inA = A.contains(y), inB = B.contains(y);
        if (inA && !inB)
            acc += nu.weights[i] * phi_extension(nu.with_atom(y, 1.0), f, tol, degree_cap);
        else if (inB && !inA)
            acc += nu.weights[i] * phi_extension(nu.with_atom(y, -1.0), f, tol, degree_cap);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Limiting rescaled actions over dyadic refinements
// ---------------------------------------------------------------------------

struct LimitingActionResult {
    std::vector<int> depths;
    std::vector<complex_t> raising;   // alpha_{i_h}^{-1} E_{alpha_{i_h}} values
    std::vector<complex_t> cartan;    // alpha_{i_h}^{-1} J_{alpha_{i_h}} values
    std::vector<complex_t> lowering;  // exactly zero on the mass-1 stratum
    complex_t raising_target;         // Phi[sigma + delta_x, f]
    complex_t cartan_target;          // Phi[sigma, f]
    bool nudged = false;
    double x_used = 0.0;
};

/// Reference measure for the limiting actions: the uniform law on [0,1] or an
/// explicit discrete surrogate.
struct SigmaRef {
    std::optional<DiscreteMeasure> discrete;  // empty = uniform reference

    static SigmaRef uniform() { return SigmaRef{}; }
    static SigmaRef measure(DiscreteMeasure m) { return SigmaRef{std::move(m)}; }
};

/// Rescaled ladder actions along dyadic partitions X_h with cell-average
/// approximations f_h: the raising sequence tends to Phi[sigma + delta_x, f],
/// the Cartan sequence to Phi[sigma, f], and the lowering action vanishes
/// identically because sigma has mass one.
inline LimitingActionResult limiting_posterior_action(const SigmaRef& sigma,
                                                      const TestFunction& f, double x,
                                                      const std::vector<int>& depths,
                                                      double tol = 1e-12) {
    if (depths.empty()) throw std::invalid_argument("limiting_posterior_action: no depths");
    for (size_t i = 1; i < depths.size(); ++i)
        if (depths[i] <= depths[i - 1])
            throw std::invalid_argument("limiting_posterior_action: depths must increase");
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("limiting_posterior_action: x must lie in (0,1)");

    LimitingActionResult res;
    res.depths = depths;
    res.x_used = x;
    // dyadic cut points form the measure-zero exceptional set; nudge off them
    int dmax = depths.back();
    double scaled = std::ldexp(x, dmax);
    if (scaled == std::floor(scaled)) {
        res.nudged = true;
        res.x_used = x + std::ldexp(1.0, -(dmax + 40));
    }

    auto sigma_cell_mass = [&](const BasePartition& part, int c) {
        if (!sigma.discrete) return part.upper(c) - part.lower(c);
        double m = 0.0;
        const auto& mu = *sigma.discrete;
        for (size_t i = 0; i < mu.size(); ++i)
            if (part.cell_of(mu.atoms[i]) == c) m += mu.weights[i];
        return m;
    };
    auto cell_average = [&](const BasePartition& part, int c) {
        if (!sigma.discrete) {
            double lo = part.lower(c), hi = part.upper(c);
            return detail::integrate([&](double y) { return f(y); }, lo, hi, 8) / (hi - lo);
        }
        const auto& mu = *sigma.discrete;
        double m = 0.0, acc = 0.0;
        for (size_t i = 0; i < mu.size(); ++i) {
            if (part.cell_of(mu.atoms[i]) == c) {
                m += mu.weights[i];
                acc += mu.weights[i] * f(mu.atoms[i]);
            }
        }
        if (m <= 0.0)
            throw std::domain_error("limiting_posterior_action: cell with zero sigma mass");
        return acc / m;
    };

    for (int d : depths) {
        BasePartition part = BasePartition::dyadic(d);
        int cells = part.cells();
        std::vector<double> mass(cells), avg(cells);
        for (int c = 0; c < cells; ++c) {
            mass[c] = sigma_cell_mass(part, c);
            avg[c] = cell_average(part, c);
        }
        int ix = part.cell_of(res.x_used);
        // discretized sigma_h, and sigma_h + e_{i_h}
        DiscreteMeasure sigma_h;
        for (int c = 0; c < cells; ++c) {
            sigma_h.atoms.push_back(0.5 * (part.lower(c) + part.upper(c)));
            sigma_h.weights.push_back(mass[c]);
        }
        TestFunction f_h = TestFunction::piecewise(part, avg);
        DiscreteMeasure raised = sigma_h;
        raised.weights[ix] += 1.0;
        res.raising.push_back(phi_extension(raised, f_h, tol));
        // J rescaled by alpha_i^{-1}: eigenvalue |alpha| + alpha_i - 1 = alpha_i
        res.cartan.push_back(phi_extension(sigma_h, f_h, tol));
        res.lowering.push_back(complex_t(0.0));
    }

    // targets
    if (!sigma.discrete) {
        auto moment = [&](int j) {
            return detail::integrate([&](double y) { return std::pow(f(y), j); }, 0.0, 1.0) +
                   std::pow(f(res.x_used), j);
        };
        res.raising_target = detail::phi_series(moment, 2.0, 2.0, f.sup_norm(), complex_t(1.0),
                                                tol, kSeriesDefaultDegreeCap,
                                                "limiting_posterior_action");
        auto moment0 = [&](int j) {
            return detail::integrate([&](double y) { return std::pow(f(y), j); }, 0.0, 1.0);
        };
        res.cartan_target = detail::phi_series(moment0, 1.0, 1.0, f.sup_norm(), complex_t(1.0),
                                               tol, kSeriesDefaultDegreeCap,
                                               "limiting_posterior_action");
    } else {
        res.raising_target = phi_extension(sigma.discrete->with_atom(res.x_used, 1.0), f, tol);
        res.cartan_target = phi_extension(*sigma.discrete, f, tol);
    }
    return res;
}

}  // namespace dircf

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dircf/cycle_index.hpp"
#include "dircf/dirichlet.hpp"
#include "dircf/dsa.hpp"
#include "dircf/ferguson.hpp"
#include "dircf/partition.hpp"
#include "dircf/polya.hpp"
#include "dircf/rng.hpp"

namespace dircf {

/// One acceptance criterion: pass/fail plus the first few failure notes.
struct CriterionResult {
    int index = 0;
    std::string title;
    bool pass = true;
    double seconds = 0.0;
    long long checks = 0;
    std::vector<std::string> failures;

    void fail(std::string note) {
        pass = false;
        if (failures.size() < 8) failures.push_back(std::move(note));
    }
    void count_check(bool ok, const std::string& note) {
        ++checks;
        if (!ok) fail(note);
    }
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_pass() const {
        return std::all_of(results.begin(), results.end(),
                           [](const CriterionResult& r) { return r.pass; });
    }
};

namespace acceptance {

namespace detail {

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

inline std::vector<std::vector<int>> all_maps(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> g(k, 1);
    for (;;) {
        out.push_back(g);
        int pos = k - 1;
        while (pos >= 0 && g[pos] == k) g[pos--] = 1;
        if (pos < 0) break;
        g[pos] += 1;
    }
    return out;
}

template <class F>
CriterionResult timed(int index, std::string title, double time_limit_s, F body) {
    CriterionResult r;
    r.index = index;
    r.title = std::move(title);
    auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0 && r.seconds >= time_limit_s)
        r.fail("runtime " + std::to_string(r.seconds) + "s exceeds " +
               std::to_string(time_limit_s) + "s");
    return r;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace detail

// 1. Cycle-index oracle equivalence (exact, n <= 12; brute force S_n, n <= 8).
inline CriterionResult cycle_index_oracle(std::uint64_t) {
    return detail::timed(1, "cycle-index oracle equivalence", 5.0, [](CriterionResult& r) {
        for (int n = 0; n <= 12; ++n)
            r.count_check(cycle_index_recurrence(n) == cycle_index_direct(n),
                          "recurrence != direct at n=" + std::to_string(n));
        for (int n = 1; n <= 8; ++n) {
            auto tallied = cycle_index_group(detail::all_permutations(n));
            r.count_check(tallied == cycle_index_direct(n),
                          "S_n tally != direct at n=" + std::to_string(n));
        }
    });
}

// 2. Moment identity of Thm-type: multiindex vs cycle-index vs Monte Carlo.
inline CriterionResult moment_identity(std::uint64_t seed) {
    return detail::timed(2, "Dirichlet moment identity (three routes)", 60.0,
                         [seed](CriterionResult& r) {
        Rng rng(seed ^ 0x11);
        std::vector<std::pair<std::vector<double>, std::vector<double>>> instances;
        for (int rep = 0; rep < 200; ++rep) {
            int k = 1 + int(rng.uniform01() * 4.0);
            std::vector<double> alpha(k), s(k);
            for (int i = 0; i < k; ++i) {
                alpha[i] = 0.05 + 4.95 * rng.uniform01();
                s[i] = -2.0 + 4.0 * rng.uniform01();
            }
            instances.emplace_back(s, alpha);
            int n = int(rng.uniform01() * 9.0);
            double a = moment_multiindex(s, alpha, n);
            double b = moment_cycle_index(s, alpha, n);
            r.count_check(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)),
                          "route gap " + detail::fmt(std::abs(a - b)) + " at rep " +
                              std::to_string(rep));
        }
        for (int rep = 0; rep < 20; ++rep) {
            const auto& [s, alpha] = instances[rep * 7 % instances.size()];
            int n = 1 + int(rng.uniform01() * 4.0);
            auto mc = moment_monte_carlo(s, alpha, n, 1000000, seed + 100 + rep);
            double exact = moment_cycle_index(s, alpha, n);
            double gate = 4.0 * std::max(mc.stderr_.value(), 1e-12);
            r.count_check(std::abs(mc.value - exact) <= gate,
                          "MC gap " + detail::fmt(std::abs(mc.value - exact)) + " > 4se=" +
                              detail::fmt(gate));
        }
    });
}

// 3. Humbert series: exp collapse and the EGF identity.
inline CriterionResult humbert_series(std::uint64_t) {
    return detail::timed(3, "Humbert series vs exp and EGF identity", 0.0,
                         [](CriterionResult& r) {
        for (double a : {0.3, 1.0, 7.0}) {
            for (double s = -5.0; s <= 5.0 + 1e-9; s += 0.5) {
                complex_t v = humbert_phi2({complex_t(a)}, complex_t(a), {complex_t(s)}, 1e-12);
                r.count_check(std::abs(v - std::exp(s)) <= 1e-10,
                              "1Phi2[a;a;s] != e^s at a=" + detail::fmt(a) +
                                  " s=" + detail::fmt(s));
            }
        }
        // EGF identity, simplex anchor (c = 1) and general anchor (c = |alpha|)
        struct Case {
            std::vector<double> alpha, s;
        };
        std::vector<Case> cases{{{0.3, 0.45, 0.25}, {1.0, -0.6, 0.35}},
                                {{1.4, 0.8}, {0.9, -1.2}}};
        for (const auto& c : cases) {
            double at = std::accumulate(c.alpha.begin(), c.alpha.end(), 0.0);
            int N = 80;
            std::vector<complex_t> p(N);
            for (int i = 1; i <= N; ++i) {
                double acc = 0.0;
                for (size_t j = 0; j < c.s.size(); ++j)
                    acc += std::pow(c.s[j], i) * c.alpha[j];
                p[i - 1] = complex_t(acc);
            }
            auto z = cycle_index_values(std::span<const complex_t>(p), N);
            for (double t = -2.0; t <= 2.0 + 1e-9; t += 0.25) {
                std::vector<complex_t> ts(c.s.size());
                for (size_t i = 0; i < c.s.size(); ++i) ts[i] = complex_t(t * c.s[i]);
                complex_t lhs = humbert_phi2(to_complex(c.alpha), complex_t(at), ts, 1e-12);
                complex_t rhs = 0.0;
                double tn = 1.0, poch = 1.0;
                for (int n = 0; n <= N; ++n) {
                    rhs += tn * z[n] / poch;  // t^n Z_n / (|alpha|)_n
                    tn *= t;
                    poch *= at + n;
                }
                r.count_check(std::abs(lhs - rhs) <= 1e-10,
                              "EGF gap " + detail::fmt(std::abs(lhs - rhs)) + " at t=" +
                                  detail::fmt(t));
            }
        }
    });
}

// 4. Confluent and asymptotic limits, finite and Ferguson versions.
inline CriterionResult confluent_limits(std::uint64_t seed) {
    return detail::timed(4, "confluent/asymptotic limits (monotone decay)", 0.0,
                         [seed](CriterionResult& r) {
        Rng rng(seed ^ 0x44);
        const std::vector<double> betas_up{1e1, 1e2, 1e3, 1e4};
        const std::vector<double> betas_down{1e-1, 1e-2, 1e-3, 1e-4};
        for (int rep = 0; rep < 6; ++rep) {
            int k = 2 + rep % 2;
            std::vector<double> alpha(k);
            std::vector<complex_t> s(k);
            for (int i = 0; i < k; ++i) {
                alpha[i] = 0.3 + 2.0 * rng.uniform01();
                s[i] = complex_t(-2.0 + 4.0 * rng.uniform01());  // ||s|| <= 2
            }
            double at = std::accumulate(alpha.begin(), alpha.end(), 0.0);
            auto phi_at = [&](double beta) {
                std::vector<complex_t> ba(k);
                for (int i = 0; i < k; ++i) ba[i] = complex_t(beta * alpha[i]);
                return humbert_phi2(ba, complex_t(beta * at), s, 1e-12);
            };
            complex_t lim0 = confluent_limit(alpha, s, LimitRegime::beta_to_zero);
            complex_t liminf = confluent_limit(alpha, s, LimitRegime::beta_to_infinity);
            double prev = 1e300;
            for (double b : betas_down) {
                double err = std::abs(phi_at(b) - lim0);
                r.count_check(err < prev, "beta->0 not monotone at beta=" + detail::fmt(b));
                prev = err;
            }
            r.count_check(prev < 1e-2, "beta->0 final error " + detail::fmt(prev));
            prev = 1e300;
            for (double b : betas_up) {
                double err = std::abs(phi_at(b) - liminf);
                r.count_check(err < prev, "beta->inf not monotone at beta=" + detail::fmt(b));
                prev = err;
            }
            r.count_check(prev < 1e-2, "beta->inf final error " + detail::fmt(prev));

            // moment route against the closed-form limiting moments
            std::vector<double> sr(k);
            for (int i = 0; i < k; ++i) sr[i] = s[i].real();
            for (int n : {1, 2, 3}) {
                double m0 = asymptotic_moment(sr, alpha, n, LimitRegime::beta_to_zero);
                double minf = asymptotic_moment(sr, alpha, n, LimitRegime::beta_to_infinity);
                double p0 = 1e300, pinf = 1e300;
                for (double b : betas_down) {
                    std::vector<double> ba(k);
                    for (int i = 0; i < k; ++i) ba[i] = b * alpha[i];
                    double err = std::abs(moment_cycle_index(sr, ba, n) - m0);
                    r.count_check(err < p0, "moment beta->0 not monotone");
                    p0 = err;
                }
                for (double b : betas_up) {
                    std::vector<double> ba(k);
                    for (int i = 0; i < k; ++i) ba[i] = b * alpha[i];
                    double err = std::abs(moment_cycle_index(sr, ba, n) - minf);
                    r.count_check(err < pinf, "moment beta->inf not monotone");
                    pinf = err;
                }
                r.count_check(p0 < 1e-2 && pinf < 1e-2, "moment final errors too large");
            }
        }

        // Ferguson-side pattern for the series characteristic functional
        TestFunction f = TestFunction::piecewise(BasePartition({0.25, 0.5, 0.75}),
                                                 {1.0, -0.5, 0.3, 0.0});
        double t = 1.3;
        double sf = uniform_moment(f, 1);
        complex_t liminf = std::exp(complex_t(0.0, t * sf));
        complex_t lim0 = 0.0;
        for (int c = 0; c < 4; ++c)
            lim0 += (f.partition().upper(c) - f.partition().lower(c)) *
                    std::exp(complex_t(0.0, t * f.values()[c]));
        double prev = 1e300;
        for (double b : betas_up) {
            double err = std::abs(cf_series_uniform(b, f, t, 1e-13) - liminf);
            r.count_check(err < prev, "cf beta->inf not monotone at beta=" + detail::fmt(b));
            prev = err;
        }
        r.count_check(prev < 1e-2, "cf beta->inf final error " + detail::fmt(prev));
        prev = 1e300;
        for (double b : betas_down) {
            double err = std::abs(cf_series_uniform(b, f, t, 1e-13) - lim0);
            r.count_check(err < prev, "cf beta->0 not monotone at beta=" + detail::fmt(b));
            prev = err;
        }
        r.count_check(prev < 1e-2, "cf beta->0 final error " + detail::fmt(prev));
    });
}

// 5. Mapping theorem: exhaustive decomposition and exact pushforward moments.
inline CriterionResult mapping_theorem(std::uint64_t) {
    return detail::timed(5, "Mapping Theorem (exhaustive, exact)", 10.0,
                         [](CriterionResult& r) {
        for (int k = 2; k <= 4; ++k) {
            std::vector<Rational> alpha, s;
            for (int i = 1; i <= k; ++i) {
                alpha.emplace_back(2 * i + 1, 3);
                s.emplace_back(i + 1, k + 2);
            }
            for (const auto& g : detail::all_maps(k)) {
                auto d = decompose_map(g);
                std::vector<int> star = star_lambda(d.lambda);
                bool pointwise = true;
                for (int x = 1; x <= k; ++x)
                    if (d.cluster_values[star[d.pi(x) - 1] - 1] != g[x - 1]) pointwise = false;
                r.count_check(pointwise, "star(lambda_g) o pi_g fails to reproduce g");

                std::vector<Rational> pushed = pushforward_params(g, alpha);
                std::vector<int> kept;
                {
                    std::vector<char> hit(k + 1, 0);
                    for (int v : g) hit[v] = 1;
                    for (int v = 1; v <= k; ++v)
                        if (hit[v]) kept.push_back(v);
                }
                std::vector<Rational> s_pulled(k, Rational(0));
                for (int x = 1; x <= k; ++x) s_pulled[x - 1] = s[g[x - 1] - 1];
                std::vector<Rational> s_restricted;
                for (int v : kept) s_restricted.push_back(s[v - 1]);
                for (int n = 0; n <= 4; ++n)
                    r.count_check(moment_cycle_index_exact(s_restricted, pushed, n) ==
                                      moment_cycle_index_exact(s_pulled, alpha, n),
                                  "pushforward moment mismatch at k=" + std::to_string(k));
            }
        }
    });
}

// 6. Dynamical symmetry algebra verification.
inline CriterionResult dsa_verification(std::uint64_t seed) {
    return detail::timed(6, "dynamical symmetry algebra relations", 0.0,
                         [seed](CriterionResult& r) {
        for (int k = 2; k <= 4; ++k) {
            std::vector<double> base(k);
            Rng rng(seed ^ (0x600 + k));
            double total = 0.0;
            for (auto& b : base) {
                b = 0.1 + rng.uniform01();
                total += b;
            }
            for (auto& b : base) b /= total;

            auto table = verify_commutation_table(base, 200, seed + k, 1e-10);
            r.count_check(table.all_pass(), "commutation table worst " +
                                                table.worst().relation + " err " +
                                                detail::fmt(table.worst().max_error));
            auto serre = verify_serre(base, seed + 10 * k, 200, 1e-10);
            r.count_check(serre.all_pass(), "serre worst " + serre.worst().relation + " err " +
                                                detail::fmt(serre.worst().max_error));

            // subspace preservation on random applications
            Rng prng(seed ^ (0x6600 + k));
            for (int trial = 0; trial < 1000 / 3 + 1; ++trial) {
                std::vector<int> off(k, 0);
                for (auto& o : off) o = int(prng.uniform01() * 3.0);
                LatticeVector v = LatticeVector::basis(base, off);
                bool ok = true;
                for (int i = 1; i <= k && ok; ++i) {
                    for (const auto& op_ :
                         {LadderOperator::Raise(i), LadderOperator::Cartan(i)}) {
                        for (const auto& [o, c] : apply(op_, v).coeffs())
                            ok = ok && region_membership(base, o, RegionPredicate::H());
                    }
                }
                r.count_check(ok, "H_alpha not preserved by Raise/Cartan");

                double level = 1.0;
                for (int o : off) level += o;
                int i = 1 + trial % k, j = 1 + (trial + 1) % k;
                bool iso = true;
                for (const auto& [o, c] : apply(LadderOperator::Mixed(i, j), v).coeffs())
                    iso = iso && region_membership(base, o, RegionPredicate::IsoplethM(level));
                r.count_check(iso, "isopleth not preserved by Mixed");

                int extra = int(prng.uniform01() * 4.0);
                std::vector<int> off2(k, 0);
                for (int e = 0; e < extra; ++e) off2[int(prng.uniform01() * k)] += 1;
                LatticeVector w = LatticeVector::basis(base, off2);
                for (int q = 1; q <= k; ++q) {
                    auto lowered = apply(LadderOperator::Lower(q), w);
                    if (extra == 0) {
                        r.count_check(lowered.empty(), "Lower did not annihilate mass-1 label");
                    } else {
                        bool lp = true;
                        for (const auto& [o, c] : lowered.coeffs())
                            lp = lp && region_membership(base, o, RegionPredicate::LambdaPlus());
                        r.count_check(lp, "Lambda+ not preserved by Lower");
                    }
                }
            }

            // posterior operator: exact rational scalar and operator route
            std::vector<Rational> ra;
            std::vector<int> p;
            Rng arng(seed ^ (0x660 + k));
            for (int i = 0; i < k; ++i) {
                ra.emplace_back(1 + (long long)(arng.uniform01() * 6), 7);
                p.push_back(int(arng.uniform01() * 4.0));
            }
            Rational expect(1);
            {
                // step-by-step ladder bookkeeping in exact arithmetic
                std::vector<Rational> cur = ra;
                for (int i = 0; i < k; ++i)
                    for (int rep = 0; rep < p[i]; ++rep) {
                        expect *= cur[i];
                        cur[i] += Rational(1);
                    }
            }
            r.count_check(posterior_scalar_exact(ra, p) == expect,
                          "posterior scalar not exactly Poch(alpha, p)");
            std::vector<double> da(k);
            for (int i = 0; i < k; ++i) da[i] = ra[i].to_double();
            LatticeVector v = LatticeVector::basis(da);
            for (int i = 1; i <= k; ++i)
                for (int rep = 0; rep < p[i - 1]; ++rep)
                    v = apply(LadderOperator::Raise(i), v);
            auto action = posterior_operator(da, p);
            r.count_check(v.coeffs().size() == 1 &&
                              v.coeffs().begin()->first == action.offset &&
                              std::abs(v.coeffs().begin()->second -
                                       complex_t(action.scalar)) <= 1e-12,
                          "operator composition disagrees with posterior bookkeeping");

            // Weyl conjugation to 1e-12
            Rng wrng(seed ^ (0x66600 + k));
            std::vector<int> im(k);
            std::iota(im.begin(), im.end(), 1);
            for (int i = k - 1; i > 0; --i) std::swap(im[i], im[int(wrng.uniform01() * (i + 1))]);
            Permutation pi(im);
            LatticeVector u = dircf::detail::random_sparse_vector(base, wrng);
            auto w = weyl_permute(pi, u);
            for (int i = 1; i <= k; ++i) {
                auto conj = weyl_permute(pi, apply(LadderOperator::Raise(i),
                                                   weyl_permute(pi.inverse(), w)));
                auto direct = apply(LadderOperator::Raise(pi(i)), w);
                r.count_check(lattice_distance(conj, direct) <= 1e-12,
                              "Weyl conjugation gap for Raise");
                auto conj_c = weyl_permute(pi, apply(LadderOperator::Cartan(i),
                                                     weyl_permute(pi.inverse(), w)));
                auto direct_c = apply(LadderOperator::Cartan(pi(i)), w);
                r.count_check(lattice_distance(conj_c, direct_c) <= 1e-12,
                              "Weyl conjugation gap for Cartan");
            }
        }
    });
}

// 7. Polya shadings: exact oracle equivalence and the moment bridge.
inline CriterionResult polya_shadings(std::uint64_t) {
    return detail::timed(7, "Polya shadings vs brute force and moment bridge", 0.0,
                         [](CriterionResult& r) {
        for (int n = 1; n <= 6; ++n) {
            auto sym = detail::all_permutations(n);
            auto z = cycle_index_direct(n);
            for (int k = 1; k <= 3; ++k) {
                std::vector<int> palette(k, 1);
                for (;;) {
                    r.count_check(shading_gf(z, palette) ==
                                      brute_force_orbit_count(sym, palette),
                                  "shading gf != orbit count at n=" + std::to_string(n));
                    std::vector<Rational> alpha;
                    for (int a : palette) alpha.emplace_back(a);
                    r.count_check(shading_probability_gf(n, palette) ==
                                      moment_polynomial_multiindex(n, alpha),
                                  "probability gf != moment polynomial at n=" +
                                      std::to_string(n));
                    int pos = k - 1;
                    while (pos >= 0 && palette[pos] == 3) palette[pos--] = 1;
                    if (pos < 0) break;
                    palette[pos] += 1;
                }
            }
        }
    });
}

// 8. Ferguson marginals: stick-breaking vs analytic Dirichlet moments.
inline CriterionResult ferguson_marginals(std::uint64_t seed) {
    return detail::timed(8, "Ferguson marginals match Dirichlet moments", 0.0,
                         [seed](CriterionResult& r) {
        const long long N = 100000;
        std::vector<BasePartition> partitions{BasePartition({0.5}),
                                              BasePartition({0.25, 0.5, 0.75})};
        int combo = 0;
        for (double beta : {0.5, 1.0, 5.0}) {
            for (const auto& part : partitions) {
                ++combo;
                int k = part.cells();
                std::vector<double> alpha(k);
                for (int c = 0; c < k; ++c) alpha[c] = beta * (part.upper(c) - part.lower(c));
                // all mixed-moment monomials of order <= 3
                std::vector<std::vector<int>> monomials;
                for (int order = 1; order <= 3; ++order)
                    dircf::detail::for_each_composition(order, k,
                                                        [&](const std::vector<int>& m) {
                                                            monomials.push_back(m);
                                                        });
                std::vector<double> acc(monomials.size(), 0.0), accsq(monomials.size(), 0.0);
                double w1 = 0.0, w1sq = 0.0;
                int shards = mc_shard_count(N);
                for (int shard = 0; shard < shards; ++shard) {
                    long long lo = N * shard / shards, hi = N * (shard + 1) / shards;
                    Rng rng = Rng::for_shard(seed + 800 + combo, shard);
                    for (long long it = lo; it < hi; ++it) {
                        auto eta = sample_ferguson(beta, uniform_base_sampler(), 1e-8, rng);
                        auto y = marginalize(eta, part);
                        w1 += eta.weights[0];
                        w1sq += eta.weights[0] * eta.weights[0];
                        for (size_t m = 0; m < monomials.size(); ++m) {
                            double v = 1.0;
                            for (int c = 0; c < k; ++c)
                                for (int e = 0; e < monomials[m][c]; ++e) v *= y[c];
                            acc[m] += v;
                            accsq[m] += v * v;
                        }
                    }
                }
                for (size_t m = 0; m < monomials.size(); ++m) {
                    double mean = acc[m] / double(N);
                    double se = std::sqrt(
                        std::max(0.0, accsq[m] / double(N) - mean * mean) / double(N));
                    // analytic mixed moment: prod (alpha_c)_{m_c} / (|alpha|)_{|m|}
                    int order = std::accumulate(monomials[m].begin(), monomials[m].end(), 0);
                    double exact = 1.0;
                    for (int c = 0; c < k; ++c) exact *= pochhammer(alpha[c], monomials[m][c]);
                    exact /= pochhammer(beta, order);
                    r.count_check(std::abs(mean - exact) <= 4.0 * std::max(se, 1e-12),
                                  "mixed moment off at beta=" + detail::fmt(beta) + " cells=" +
                                      std::to_string(k));
                }
                double mw = w1 / double(N);
                double se = std::sqrt(std::max(0.0, w1sq / double(N) - mw * mw) / double(N));
                r.count_check(std::abs(mw - 1.0 / (1.0 + beta)) <= 4.0 * se,
                              "E w_1 off at beta=" + detail::fmt(beta));
            }
        }
    });
}

// 9. Characteristic functional of D_{beta sigma}: series vs MC vs Humbert.
inline CriterionResult ferguson_cf(std::uint64_t seed) {
    return detail::timed(9, "Ferguson characteristic functional (series/MC/Humbert)", 0.0,
                         [seed](CriterionResult& r) {
        TestFunction f1 = TestFunction::piecewise(BasePartition({0.25, 0.5, 0.75}),
                                                  {1.0, -0.5, 0.3, 0.0});
        TestFunction f2 = TestFunction::piecewise(BasePartition({0.5}), {0.8, -0.6});
        struct Combo {
            double beta, t;
            const TestFunction* f;
        };
        std::vector<Combo> grid;
        for (double beta : {0.5, 1.0, 5.0})
            for (double t : {-3.2, -1.1, 0.7, 2.4}) grid.push_back({beta, t, &f1});
        for (double beta : {0.5, 5.0})
            for (double t : {-3.2, -1.1, 0.7, 2.4}) grid.push_back({beta, t, &f2});
        int idx = 0;
        for (const auto& combo : grid) {
            ++idx;
            complex_t series = cf_series_uniform(combo.beta, *combo.f, combo.t, 1e-13);
            auto est = cf_monte_carlo(combo.beta, uniform_base_sampler(), *combo.f, combo.t,
                                      100000, seed + 900 + idx, 1e-8);
            r.count_check(std::abs(series.real() - est.value.real()) <=
                              4.0 * std::max(est.stderr_re, 1e-12),
                          "Re gap at beta=" + detail::fmt(combo.beta) +
                              " t=" + detail::fmt(combo.t));
            r.count_check(std::abs(series.imag() - est.value.imag()) <=
                              4.0 * std::max(est.stderr_im, 1e-12),
                          "Im gap at beta=" + detail::fmt(combo.beta) +
                              " t=" + detail::fmt(combo.t));
            // finite-dimensional Humbert route
            const auto& part = combo.f->partition();
            int k = part.cells();
            std::vector<double> alpha(k), ts(k);
            for (int c = 0; c < k; ++c) {
                alpha[c] = combo.beta * (part.upper(c) - part.lower(c));
                ts[c] = combo.t * combo.f->values()[c];
            }
            complex_t humbert = characteristic_functional(alpha, ts, 1e-13);
            r.count_check(std::abs(series - humbert) <= 1e-12,
                          "series vs Humbert gap " + detail::fmt(std::abs(series - humbert)));
        }
    });
}

// 10. Region operators and the limiting rescaled actions.
inline CriterionResult region_operators(std::uint64_t) {
    return detail::timed(10, "region operators and limiting actions", 0.0,
                         [](CriterionResult& r) {
        TestFunction f = TestFunction::piecewise(BasePartition({0.25, 0.5, 0.75}),
                                                 {1.0, -0.5, 0.3, 0.0});
        DiscreteMeasure nu({0.125, 0.375, 0.625, 0.875}, {0.5, 0.5, 0.5, 0.5});

        // raise_region vs the finite-dimensional operator sum
        Region A = Region::interval(0.0, 0.5);
        complex_t lhs = raise_region(nu, f, A, 1e-13);
        std::vector<double> alpha(4, 0.5);
        complex_t rhs = 0.0;
        for (int i = 0; i < 2; ++i) {
            std::vector<complex_t> ap = to_complex(alpha);
            ap[i] += 1.0;
            rhs += alpha[i] * humbert_phi2(ap, complex_t(3.0), to_complex(f.values()), 1e-13);
        }
        r.count_check(std::abs(lhs - rhs) <= 1e-12,
                      "raise_region vs operator sum gap " + detail::fmt(std::abs(lhs - rhs)));

        // raise_lower_region: mass guard and two-path agreement at nuX = 2
        DiscreteMeasure light({0.2, 0.7}, {0.5, 0.4});
        bool rejected = false;
        try {
            raise_lower_region(light, f, A, Region::interval(0.5, 1.0), 1e-10);
        } catch (const std::domain_error&) {
            rejected = true;
        }
        r.count_check(rejected, "raise_lower_region accepted total mass <= 1");
        Region B = Region::interval(0.5, 1.0);
        complex_t got = raise_lower_region(nu, f, A, B, 1e-13);
        complex_t expect = 0.0;
        for (size_t i = 0; i < nu.size(); ++i) {
            double w = nu.weights[i];
            if (A.contains(nu.atoms[i]))
                expect += w * phi_extension(nu.with_atom(nu.atoms[i], 1.0), f, 1e-13);
            else
                expect += w * phi_extension(nu.with_atom(nu.atoms[i], -1.0), f, 1e-13);
        }
        r.count_check(std::abs(got - expect) <= 1e-12, "two-path gap at nuX = 2");

        // limiting rescaled actions on a smooth windowed cosine
        TestFunction smooth = TestFunction::callable(
            [](double y) { return std::cos(2.0 * M_PI * y) * y * (1.0 - y); });
        auto res = limiting_posterior_action(SigmaRef::uniform(), smooth, 1.0 / 3.0, {3, 5, 7});
        double e3 = std::abs(res.raising[0] - res.raising_target);
        double e5 = std::abs(res.raising[1] - res.raising_target);
        double e7 = std::abs(res.raising[2] - res.raising_target);
        r.count_check(e5 < e3 && e7 < e5,
                      "raising errors not decreasing: " + detail::fmt(e3) + ", " +
                          detail::fmt(e5) + ", " + detail::fmt(e7));
        double c3 = std::abs(res.cartan[0] - res.cartan_target);
        double c7 = std::abs(res.cartan[2] - res.cartan_target);
        r.count_check(c7 < c3, "cartan sequence not approaching the functional");
        for (auto z : res.lowering)
            r.count_check(z == complex_t(0.0), "lowering limit not exactly zero");
    });
}

}  // namespace acceptance

/// Run all acceptance criteria with the given seed.
inline AcceptanceReport run_acceptance(std::uint64_t seed) {
    AcceptanceReport rep;
    rep.results.push_back(acceptance::cycle_index_oracle(seed));
    rep.results.push_back(acceptance::moment_identity(seed));
    rep.results.push_back(acceptance::humbert_series(seed));
    rep.results.push_back(acceptance::confluent_limits(seed));
    rep.results.push_back(acceptance::mapping_theorem(seed));
    rep.results.push_back(acceptance::dsa_verification(seed));
    rep.results.push_back(acceptance::polya_shadings(seed));
    rep.results.push_back(acceptance::ferguson_marginals(seed));
    rep.results.push_back(acceptance::ferguson_cf(seed));
    rep.results.push_back(acceptance::region_operators(seed));
    return rep;
}

}  // namespace dircf

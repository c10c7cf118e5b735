#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "dircf/dirichlet.hpp"
#include "dircf/rng.hpp"

using namespace dircf;
using complex = std::complex<double>;

TEST_CASE("pochhammer basics and Chu-Vandermonde") {
    CHECK(pochhammer(3.7, 0) == 1.0);
    CHECK(pochhammer(1.0, 5) == Catch::Approx(120.0));
    CHECK(pochhammer(Rational(1), 6) == Rational(720));
    CHECK(pochhammer(complex(0.0, 1.0), 1) == complex(0.0, 1.0));

    // (a+b)_n = sum_k C(n,k) (a)_k (b)_{n-k}, exactly in rational arithmetic
    Rng rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        Rational a(1 + (long long)(rng.uniform01() * 8), 1 + (long long)(rng.uniform01() * 8));
        Rational b(1 + (long long)(rng.uniform01() * 8), 1 + (long long)(rng.uniform01() * 8));
        for (int n = 0; n <= 10; ++n) {
            Rational rhs(0);
            Rational binom(1);
            for (int k = 0; k <= n; ++k) {
                rhs += binom * pochhammer(a, k) * pochhammer(b, n - k);
                binom = binom * Rational(n - k) / Rational(k + 1);
            }
            CHECK(pochhammer(a + b, n) == rhs);
        }
    }
}

TEST_CASE("moment routes: pinned values") {
    CHECK(moment_multiindex({0.5, 0.2}, {1.0, 2.0}, 0) == 1.0);
    // n = 1: mean (s . alpha)/|alpha|
    CHECK(moment_multiindex({1.0, 0.0}, {2.0, 1.0}, 1) == Catch::Approx(2.0 / 3.0));
    CHECK(moment_cycle_index({1.0, 0.0}, {2.0, 1.0}, 1) == Catch::Approx(2.0 / 3.0));
    // k = 1, s = 1: the simplex is a point
    for (int n = 0; n <= 6; ++n)
        CHECK(moment_multiindex({1.0}, {0.7}, n) == Catch::Approx(1.0).margin(1e-14));
    // singular denominator rejection (analytic extension off alpha > 0)
    CHECK_THROWS_AS(moment_multiindex({1.0, 1.0}, {2.0, -2.0}, 3), std::domain_error);
}

TEST_CASE("moment route equivalence on random instances") {
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        int k = 1 + int(rng.uniform01() * 4.0);
        int n = int(rng.uniform01() * 9.0);
        std::vector<double> alpha(k), s(k);
        for (int i = 0; i < k; ++i) {
            alpha[i] = 0.05 + 4.95 * rng.uniform01();
            s[i] = -2.0 + 4.0 * rng.uniform01();
        }
        double a = moment_multiindex(s, alpha, n);
        double b = moment_cycle_index(s, alpha, n);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("moment quasi-exchangeability and aggregation") {
    Rng rng(5);
    std::vector<double> alpha{0.8, 2.2, 1.1, 0.4}, s{1.3, -0.7, 0.25, 1.9};
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<int> im{1, 2, 3, 4};
        for (int i = 3; i > 0; --i) std::swap(im[i], im[int(rng.uniform01() * (i + 1))]);
        Permutation pi(im);
        std::vector<double> ap(4), sp(4);
        for (int i = 1; i <= 4; ++i) {
            ap[i - 1] = alpha[pi(i) - 1];
            sp[i - 1] = s[pi(i) - 1];
        }
        for (int n = 0; n <= 5; ++n)
            CHECK(moment_cycle_index(sp, ap, n) ==
                  Catch::Approx(moment_cycle_index(s, alpha, n)).epsilon(1e-13));
    }

    // merging the coordinates where s is constant matches the contracted
    // instance: lambda = (2,1) keeps slots 1,2 and sums slots 3,4
    Partition lambda(4, {2, 1, 0, 0});
    std::vector<double> s_eq{1.1, -0.4, 0.9, 0.9};
    std::vector<double> contracted_alpha = additive_contraction(alpha, lambda);
    std::vector<double> contracted_s{1.1, -0.4, 0.9};
    for (int n = 0; n <= 6; ++n) {
        double lhs = moment_cycle_index(s_eq, alpha, n);
        double rhs = moment_cycle_index(contracted_s, contracted_alpha, n);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("dirichlet sampling: simplex membership, mean, uniform marginal") {
    Rng rng(99);
    SECTION("k = 1 is the point mass at 1") {
        for (int i = 0; i < 10; ++i) {
            auto y = sample_dirichlet({2.5}, rng);
            CHECK(y[0] == Catch::Approx(1.0).margin(1e-12));
        }
    }
    SECTION("simplex membership and empirical mean") {
        std::vector<double> alpha{0.6, 2.0, 1.4};
        double at = 4.0;
        const int N = 200000;
        std::vector<double> mean(3, 0.0), var(3, 0.0);
        for (int it = 0; it < N; ++it) {
            auto y = sample_dirichlet(alpha, rng);
            double total = 0.0;
            for (int i = 0; i < 3; ++i) {
                REQUIRE(y[i] >= 0.0);
                total += y[i];
                mean[i] += y[i];
            }
            REQUIRE(std::abs(total - 1.0) <= 1e-12);
        }
        for (int i = 0; i < 3; ++i) {
            mean[i] /= N;
            double m = alpha[i] / at;
            double sd = std::sqrt(m * (1.0 - m) / N);  // crude upper bound on stderr
            CHECK(std::abs(mean[i] - m) <= 4.0 * sd);
        }
    }
    SECTION("Dir(1,1) marginal is uniform (KS test at 1%)") {
        const int N = 20000;
        std::vector<double> u;
        u.reserve(N);
        for (int it = 0; it < N; ++it) u.push_back(sample_dirichlet({1.0, 1.0}, rng)[0]);
        std::sort(u.begin(), u.end());
        double ks = 0.0;
        for (int i = 0; i < N; ++i) {
            double f = u[i];
            ks = std::max(ks, std::abs(f - double(i) / N));
            ks = std::max(ks, std::abs(double(i + 1) / N - f));
        }
        // 1% critical value for the KS statistic is 1.63 / sqrt(N)
        CHECK(ks < 1.63 / std::sqrt(double(N)));
    }
    SECTION("rejects non-positive parameters") {
        CHECK_THROWS_AS(sample_dirichlet({1.0, 0.0}, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_dirichlet({-1.0}, rng), std::invalid_argument);
    }
}

TEST_CASE("monte carlo moment route") {
    auto rep0 = moment_monte_carlo({0.3, 0.7}, {1.0, 2.0}, 0, 1000, 1);
    CHECK(rep0.value == 1.0);
    CHECK(rep0.stderr_.value() == 0.0);

    // E y^2 under Dir(1,1) marginal (uniform) is 1/3
    auto rep = moment_monte_carlo({1.0, 0.0}, {1.0, 1.0}, 2, 1000000, 7);
    CHECK(std::abs(rep.value - 1.0 / 3.0) <= 4.0 * rep.stderr_.value());

    // matches the analytic route within 4 stderr on random instances
    Rng rng(31);
    for (int trial = 0; trial < 3; ++trial) {
        int k = 2 + int(rng.uniform01() * 3.0);
        int n = 1 + int(rng.uniform01() * 4.0);
        std::vector<double> alpha(k), s(k);
        for (int i = 0; i < k; ++i) {
            alpha[i] = 0.3 + 3.0 * rng.uniform01();
            s[i] = -1.0 + 2.0 * rng.uniform01();
        }
        auto mc = moment_monte_carlo(s, alpha, n, 400000, 1234 + trial);
        double exact = moment_cycle_index(s, alpha, n);
        CHECK(std::abs(mc.value - exact) <= 4.0 * std::max(mc.stderr_.value(), 1e-12));
    }

    // determinism per seed
    auto a = moment_monte_carlo({0.4, 0.6}, {1.5, 2.5}, 3, 50000, 77);
    auto b = moment_monte_carlo({0.4, 0.6}, {1.5, 2.5}, 3, 50000, 77);
    CHECK(a.value == b.value);
}

TEST_CASE("humbert phi2: pinned and oracle values") {
    SECTION("zero argument") {
        CHECK(humbert_phi2({complex(0.7), complex(1.3)}, complex(2.0),
                           {complex(0.0), complex(0.0)}, 1e-12) == complex(1.0));
    }
    SECTION("k=1 collapse to exp") {
        for (double a : {0.3, 1.0, 7.0}) {
            for (double s = -5.0; s <= 5.0; s += 1.25) {
                complex v = humbert_phi2({complex(a)}, complex(a), {complex(s)}, 1e-12);
                CHECK(std::abs(v - std::exp(s)) < 1e-10);
            }
        }
    }
    SECTION("pole and truncation errors") {
        CHECK_THROWS_AS(
            humbert_phi2({complex(1.0)}, complex(0.0), {complex(0.5)}, 1e-10),
            PoleError);
        CHECK_THROWS_AS(
            humbert_phi2({complex(1.0)}, complex(-3.0), {complex(0.5)}, 1e-10),
            PoleError);
        try {
            humbert_phi2({complex(2.0)}, complex(0.5), {complex(40.0)}, 1e-14, 10);
            FAIL("expected truncation failure");
        } catch (const SeriesTruncationError& e) {
            CHECK(std::isfinite(e.tail_bound()));
            CHECK(std::abs(e.partial()) > 0.0);
        }
    }
    SECTION("truncation bound honored between levels N and N+5") {
        // sum to the certified tolerance, then compare against a much finer run
        std::vector<complex> alpha{complex(1.2), complex(0.7)};
        std::vector<complex> s{complex(1.7), complex(-2.2)};
        for (double tol : {1e-6, 1e-8, 1e-10}) {
            complex coarse = humbert_phi2(alpha, complex(1.9), s, tol);
            complex fine = humbert_phi2(alpha, complex(1.9), s, 1e-14);
            CHECK(std::abs(coarse - fine) <= tol);
        }
    }
}

TEST_CASE("EGF identity ties humbert to cycle index values") {
    // Phi2[alpha; |alpha|; t s] = sum_n t^n/n! * (n!/(|alpha|)_n) Z_n(power sums)
    std::vector<double> alpha{0.3, 0.45, 0.25};  // on the simplex: |alpha| = 1
    std::vector<double> s{1.0, -0.6, 0.35};
    for (double t = -2.0; t <= 2.01; t += 0.5) {
        std::vector<complex> ts(3);
        for (int i = 0; i < 3; ++i) ts[i] = complex(t * s[i]);
        complex lhs = humbert_phi2(to_complex(alpha), complex(1.0), ts, 1e-12);
        // rhs via the cycle-index value recurrence
        int N = 60;
        std::vector<complex> p(N);
        for (int i = 1; i <= N; ++i) {
            double acc = 0.0;
            for (int j = 0; j < 3; ++j) acc += std::pow(s[j], i) * alpha[j];
            p[i - 1] = complex(acc);
        }
        auto z = cycle_index_values(std::span<const complex>(p), N);
        // on the simplex (1)_n = n!, so the EGF term is t^n Z_n / n!
        complex rhs = 0.0;
        double tn_over_fact = 1.0;
        for (int n = 0; n <= N; ++n) {
            rhs += tn_over_fact * z[n];
            tn_over_fact *= t / double(n + 1);
        }
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("characteristic functional") {
    std::vector<double> alpha{1.2, 0.7, 2.1};
    SECTION("value at zero and conjugate symmetry") {
        CHECK(characteristic_functional(alpha, {0.0, 0.0, 0.0}, 1e-12) == complex(1.0));
        std::vector<double> s{0.8, -1.3, 0.4}, ns{-0.8, 1.3, -0.4};
        complex v = characteristic_functional(alpha, s, 1e-13);
        complex w = characteristic_functional(alpha, ns, 1e-13);
        CHECK(std::abs(w - std::conj(v)) < 1e-12);
    }
    SECTION("modulus bound") {
        Rng rng(3);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> s(3);
            for (auto& v : s) v = -3.0 + 6.0 * rng.uniform01();
            CHECK(std::abs(characteristic_functional(alpha, s, 1e-12)) <= 1.0 + 1e-10);
        }
    }
    SECTION("monte carlo cross-check") {
        std::vector<double> s{0.9, -0.5, 0.3};
        const long long N = 1000000;
        int shards = mc_shard_count(N);
        double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0;
        for (int shard = 0; shard < shards; ++shard) {
            long long lo = N * shard / shards, hi = N * (shard + 1) / shards;
            Rng rng = Rng::for_shard(17, shard);
            for (long long it = lo; it < hi; ++it) {
                auto y = sample_dirichlet(alpha, rng);
                double dot = 0.0;
                for (int i = 0; i < 3; ++i) dot += s[i] * y[i];
                sr += std::cos(dot);
                si += std::sin(dot);
                srr += std::cos(dot) * std::cos(dot);
                sii += std::sin(dot) * std::sin(dot);
            }
        }
        double mr = sr / N, mi = si / N;
        double se_r = std::sqrt(std::max(0.0, srr / N - mr * mr) / N);
        double se_i = std::sqrt(std::max(0.0, sii / N - mi * mi) / N);
        complex exact = characteristic_functional(alpha, s, 1e-12);
        CHECK(std::abs(exact.real() - mr) <= 4.0 * se_r);
        CHECK(std::abs(exact.imag() - mi) <= 4.0 * se_i);
    }
}

TEST_CASE("confluent limits and asymptotic moments") {
    std::vector<double> alpha{1.0, 1.0};
    SECTION("closed forms") {
        std::vector<complex> s{complex(0.7), complex(-0.3)};
        complex zero_lim = confluent_limit(alpha, s, LimitRegime::beta_to_zero);
        CHECK(std::abs(zero_lim - 0.5 * (std::exp(complex(0.7)) + std::exp(complex(-0.3)))) <
              1e-14);
        complex inf_lim = confluent_limit(alpha, s, LimitRegime::beta_to_infinity);
        CHECK(std::abs(inf_lim - std::exp(complex(0.2))) < 1e-14);
    }
    SECTION("series converges to both limits") {
        Rng rng(8);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> a{0.5 + rng.uniform01(), 0.5 + rng.uniform01()};
            std::vector<complex> s{complex(-2.0 + 4.0 * rng.uniform01()),
                                   complex(-2.0 + 4.0 * rng.uniform01())};
            auto at_beta = [&](double beta) {
                std::vector<complex> ba{complex(beta * a[0]), complex(beta * a[1])};
                return humbert_phi2(ba, complex(beta * (a[0] + a[1])), s, 1e-12);
            };
            complex lim0 = confluent_limit(a, s, LimitRegime::beta_to_zero);
            complex liminf = confluent_limit(a, s, LimitRegime::beta_to_infinity);
            double prev0 = 1e100, previnf = 1e100;
            for (double beta : {1e-1, 1e-2, 1e-3, 1e-4}) {
                double err = std::abs(at_beta(beta) - lim0);
                CHECK(err < prev0);
                prev0 = err;
            }
            for (double beta : {1e1, 1e2, 1e3, 1e4}) {
                double err = std::abs(at_beta(beta) - liminf);
                CHECK(err < previnf);
                previnf = err;
            }
            CHECK(prev0 < 1e-2);
            CHECK(previnf < 1e-2);
            // O(1/beta) decay going one more decade: error shrinks at least 2/2.5-fold
            double e4 = std::abs(at_beta(1e4) - liminf);
            double e5 = std::abs(at_beta(1e5) - liminf);
            CHECK(e5 <= e4 * (2.5 / 2.0));
        }
    }
    SECTION("limiting moments") {
        CHECK(asymptotic_moment({1.0, 0.0}, alpha, 2, LimitRegime::beta_to_zero) ==
              Catch::Approx(0.5));
        CHECK(asymptotic_moment({1.0, 0.0}, alpha, 2, LimitRegime::beta_to_infinity) ==
              Catch::Approx(0.25));
        // moment route converges to the limit as beta -> 0 / infinity
        std::vector<double> s{1.0, 0.0};
        double prev = 1e100;
        for (double beta : {1e-1, 1e-2, 1e-3, 1e-4}) {
            std::vector<double> ba{beta, beta};
            double err = std::abs(moment_cycle_index(s, ba, 2) - 0.5);
            CHECK(err < prev);
            prev = err;
        }
        prev = 1e100;
        for (double beta : {1e1, 1e2, 1e3, 1e4}) {
            std::vector<double> ba{beta, beta};
            double err = std::abs(moment_cycle_index(s, ba, 2) - 0.25);
            CHECK(err < prev);
            prev = err;
        }
    }
}

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "dircf/dirichlet.hpp"
#include "dircf/ferguson.hpp"

using namespace dircf;
using complex = std::complex<double>;

namespace {

TestFunction sample_piecewise() {
    return TestFunction::piecewise(BasePartition({0.25, 0.5, 0.75}),
                                   {1.0, -0.5, 0.3, 0.0});
}

}  // namespace

TEST_CASE("base partition and discrete measure basics") {
    BasePartition part({0.25, 0.5, 0.75});
    CHECK(part.cells() == 4);
    CHECK(part.cell_of(0.0) == 0);
    CHECK(part.cell_of(0.25) == 1);
    CHECK(part.cell_of(0.999) == 3);
    CHECK_THROWS_AS(BasePartition({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(BasePartition({0.0}), std::invalid_argument);

    DiscreteMeasure nu({0.1, 0.6}, {0.5, 0.5});
    CHECK(nu.total_mass() == 1.0);
    auto nu2 = nu.with_atom(0.6, 1.0);
    CHECK(nu2.size() == 2);
    CHECK(nu2.total_mass() == 2.0);
    auto nu3 = nu.with_atom(0.9, -0.25);
    CHECK(nu3.size() == 3);
    CHECK(nu3.tv_norm() == Catch::Approx(1.25));
}

TEST_CASE("stick-breaking sampler") {
    Rng rng(4);
    SECTION("weights and mean of w_1") {
        double beta = 2.0;
        const int N = 100000;
        double sum_w1 = 0.0, sumsq = 0.0;
        for (int it = 0; it < N; ++it) {
            auto eta = sample_ferguson(beta, uniform_base_sampler(), 1e-10, rng);
            CHECK(std::abs(eta.total_mass() - 1.0) <= 1e-12);
            sum_w1 += eta.weights[0];
            sumsq += eta.weights[0] * eta.weights[0];
        }
        double mean = sum_w1 / N;
        double se = std::sqrt(std::max(0.0, sumsq / N - mean * mean) / N);
        CHECK(std::abs(mean - 1.0 / (1.0 + beta)) <= 4.0 * se);
    }
    SECTION("coarse truncation still normalizes") {
        auto eta = sample_ferguson(0.05, uniform_base_sampler(), 0.5, rng);
        CHECK(eta.size() <= 4);
        CHECK(std::abs(eta.total_mass() - 1.0) <= 1e-15);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(sample_ferguson(0.0, uniform_base_sampler(), 1e-10, rng),
                        std::invalid_argument);
        CHECK_THROWS_AS(sample_ferguson(1.0, uniform_base_sampler(), 1.5, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("marginalize") {
    DiscreteMeasure eta({0.1, 0.3, 0.9}, {0.2, 0.3, 0.5});
    BasePartition whole;
    auto single = marginalize(eta, whole);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == Catch::Approx(1.0).margin(1e-15));
    BasePartition quarters({0.25, 0.5, 0.75});
    auto m = marginalize(eta, quarters);
    CHECK(m == std::vector<double>{0.2, 0.3, 0.0, 0.5});
    // point mass lands in the cell containing it
    DiscreteMeasure point({0.5}, {1.0});
    CHECK(marginalize(point, quarters) == std::vector<double>{0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("marginal law matches the Dirichlet analytic moments") {
    // Eq-level check: mixed moments of order <= 2 of marginalized samples
    double beta = 1.5;
    BasePartition part({0.5});
    const int N = 60000;
    Rng rng(12);
    double m1 = 0.0, m1sq = 0.0, m2 = 0.0, m2sq = 0.0;
    for (int it = 0; it < N; ++it) {
        auto eta = sample_ferguson(beta, uniform_base_sampler(), 1e-10, rng);
        auto y = marginalize(eta, part);
        m1 += y[0];
        m1sq += y[0] * y[0];
        m2 += y[0] * y[0];
        m2sq += y[0] * y[0] * y[0] * y[0];
    }
    double mean = m1 / N;
    double se1 = std::sqrt(std::max(0.0, m1sq / N - mean * mean) / N);
    // Dir(beta/2, beta/2): E y_1 = 1/2
    CHECK(std::abs(mean - 0.5) <= 4.0 * se1);
    double second = m2 / N;
    double se2 = std::sqrt(std::max(0.0, m2sq / N - second * second) / N);
    double exact2 = moment_multiindex({1.0, 0.0}, {beta / 2, beta / 2}, 2);
    CHECK(std::abs(second - exact2) <= 4.0 * se2);
}

TEST_CASE("cf series basics") {
    auto f = sample_piecewise();
    DiscreteMeasure nu({0.125, 0.375, 0.625, 0.875}, {0.25, 0.25, 0.25, 0.25});
    SECTION("t = 0") {
        CHECK(cf_series(nu, f, 0.0, 1e-12) == complex(1.0));
        CHECK(cf_series_uniform(1.0, f, 0.0, 1e-12) == complex(1.0));
    }
    SECTION("piecewise f reduces to the finite-dimensional Humbert route") {
        for (double beta : {0.5, 1.0, 5.0}) {
            DiscreteMeasure nub({0.125, 0.375, 0.625, 0.875},
                                {beta * 0.25, beta * 0.25, beta * 0.25, beta * 0.25});
            for (double t : {-2.0, -0.5, 0.75, 2.0}) {
                complex series = cf_series(nub, f, t, 1e-13);
                // Humbert route: Phi2[alpha; |alpha|; i t s]
                std::vector<double> alpha(4, beta * 0.25);
                std::vector<double> ts(4);
                for (int i = 0; i < 4; ++i) ts[i] = t * f.values()[i];
                complex humbert = characteristic_functional(alpha, ts, 1e-13);
                CHECK(std::abs(series - humbert) < 1e-12);
            }
        }
    }
    SECTION("uniform-reference series equals the discretized-atom series") {
        // nu places the uniform cell masses on cell midpoints
        complex a = cf_series(nu, f, 1.3, 1e-12);
        complex b = cf_series_uniform(1.0, f, 1.3, 1e-12);
        CHECK(std::abs(a - b) < 1e-12);
    }
    SECTION("validation") {
        DiscreteMeasure zero({0.5}, {0.0});
        CHECK_THROWS_AS(cf_series(zero, f, 1.0, 1e-10), std::invalid_argument);
        DiscreteMeasure sgn({0.2, 0.7}, {1.5, -0.25});
        CHECK_THROWS_AS(cf_series(sgn, f, 1.0, 1e-10), std::invalid_argument);
    }
}

TEST_CASE("cf series asymptotics in beta") {
    auto f = sample_piecewise();
    SECTION("beta to infinity: exp(i t sigma f)") {
        double t = 1.7;
        double sf = uniform_moment(f, 1);
        complex limit = std::exp(complex(0.0, t * sf));
        double prev = 1e100;
        for (double beta : {1e1, 1e2, 1e3, 1e4}) {
            complex v = cf_series_uniform(beta, f, t, 1e-13);
            double err = std::abs(v - limit);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-2);
    }
    SECTION("beta to zero: sigma exp(i t f)") {
        double t = 1.1;
        complex limit = 0.0;
        const auto& part = f.partition();
        for (int c = 0; c < part.cells(); ++c)
            limit += (part.upper(c) - part.lower(c)) *
                     std::exp(complex(0.0, t * f.values()[c]));
        double prev = 1e100;
        for (double beta : {1e-1, 1e-2, 1e-3, 1e-4}) {
            complex v = cf_series_uniform(beta, f, t, 1e-13);
            double err = std::abs(v - limit);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("cf monte carlo agrees with the series") {
    auto f = sample_piecewise();
    for (double beta : {0.5, 1.0, 5.0}) {
        double t = 0.9;
        auto est = cf_monte_carlo(beta, uniform_base_sampler(), f, t, 60000, 21, 1e-8);
        complex series = cf_series_uniform(beta, f, t, 1e-12);
        CHECK(std::abs(series.real() - est.value.real()) <=
              4.0 * std::max(est.stderr_re, 1e-12));
        CHECK(std::abs(series.imag() - est.value.imag()) <=
              4.0 * std::max(est.stderr_im, 1e-12));
    }
    // exact at t = 0, deterministic per seed
    auto a = cf_monte_carlo(1.0, uniform_base_sampler(), f, 0.0, 1000, 3);
    CHECK(a.value == complex(1.0));
    auto b = cf_monte_carlo(1.0, uniform_base_sampler(), f, 0.45, 5000, 3);
    auto c = cf_monte_carlo(1.0, uniform_base_sampler(), f, 0.45, 5000, 3);
    CHECK(b.value == c.value);
}

TEST_CASE("measure-level mapping theorem via marginals") {
    // push eta through a cell permutation m; marginals of m_# eta follow
    // Dir(g_# alpha)
    BasePartition part({0.25, 0.5, 0.75});
    std::vector<int> g{3, 1, 3, 2};  // cell relabeling (non-injective)
    double beta = 2.0;
    std::vector<double> alpha(4, beta * 0.25);
    auto pushed_alpha = pushforward_params(g, alpha);
    std::vector<double> s{0.8, -0.4, 0.5};
    const int N = 60000;
    Rng rng(9);
    double acc = 0.0, accsq = 0.0;
    const int order = 2;
    for (int it = 0; it < N; ++it) {
        auto eta = sample_ferguson(beta, uniform_base_sampler(), 1e-10, rng);
        auto y = marginalize(eta, part);
        // m_# eta has cell masses summed by g
        std::vector<double> z(3, 0.0);
        for (int i = 0; i < 4; ++i) z[g[i] - 1] += y[i];
        double dot = 0.0;
        for (int j = 0; j < 3; ++j) dot += s[j] * z[j];
        double v = std::pow(dot, order);
        acc += v;
        accsq += v * v;
    }
    double mean = acc / N;
    double se = std::sqrt(std::max(0.0, accsq / N - mean * mean) / N);
    double exact = moment_cycle_index(s, pushed_alpha, order);
    CHECK(std::abs(mean - exact) <= 4.0 * se);
}

TEST_CASE("phi extension") {
    auto f = sample_piecewise();
    SECTION("probability nu at t=1 equals cf at real argument") {
        DiscreteMeasure nu({0.125, 0.375, 0.625, 0.875}, {0.25, 0.25, 0.25, 0.25});
        // phi_extension uses scale 1 (real-argument series)
        complex phi = phi_extension(nu, f, 1e-12);
        // reproduce with the Humbert multi-index route at real s
        complex humbert = humbert_phi2(to_complex({0.25, 0.25, 0.25, 0.25}), complex(1.0),
                                       to_complex(f.values()), 1e-12);
        CHECK(std::abs(phi - humbert) < 1e-12);
    }
    SECTION("f == 0 gives 1; nonpositive mass rejected") {
        TestFunction zerof = TestFunction::piecewise(BasePartition({0.5}), {0.0, 0.0});
        DiscreteMeasure nu({0.2, 0.8}, {0.4, 0.35});
        CHECK(phi_extension(nu, zerof, 1e-12) == complex(1.0));
        DiscreteMeasure bad({0.5}, {-0.5});
        CHECK_THROWS_AS(phi_extension(bad, zerof, 1e-10), std::invalid_argument);
    }
    SECTION("signed nu stays within the 1F1 majorant") {
        Rng rng(15);
        for (int trial = 0; trial < 40; ++trial) {
            DiscreteMeasure nu;
            double total = 0.0;
            for (int i = 0; i < 4; ++i) {
                nu.atoms.push_back((i + 0.5) / 4.0);
                double w = -0.3 + 1.2 * rng.uniform01();
                nu.weights.push_back(w);
                total += w;
            }
            if (total <= 0.05) continue;
            TestFunction small = TestFunction::piecewise(
                BasePartition({0.5}), {0.4 * rng.uniform01(), -0.4 * rng.uniform01()});
            complex v = phi_extension(nu, small, 1e-12);  // throws if the bound breaks
            CHECK(std::abs(v) <= hyp1f1(nu.tv_norm(), nu.total_mass(), small.sup_norm()) + 1e-9);
            // positive nu is additionally bounded by exp(||f||)
            DiscreteMeasure pos = nu;
            for (auto& w : pos.weights) w = std::abs(w);
            complex vp = phi_extension(pos, small, 1e-12);
            CHECK(std::abs(vp) <= std::exp(small.sup_norm()) + 1e-9);
        }
    }
}

TEST_CASE("narrow continuity smoke test") {
    auto f = sample_piecewise();
    std::vector<double> base{0.3, 0.2, 0.4, 0.1};
    DiscreteMeasure nu({0.125, 0.375, 0.625, 0.875}, base);
    complex v0 = cf_series(nu, f, 1.0, 1e-13);
    auto perturbed_value = [&](double delta) {
        std::vector<double> w = base;
        w[0] += delta;
        w[2] -= delta;
        DiscreteMeasure nud({0.125, 0.375, 0.625, 0.875}, w);
        return cf_series(nud, f, 1.0, 1e-13);
    };
    double slope_2 = std::abs(perturbed_value(1e-2) - v0) / 1e-2;
    double slope_3 = std::abs(perturbed_value(1e-3) - v0) / 1e-3;
    CHECK(slope_2 < 10.0);
    CHECK(slope_3 < 10.0);
    CHECK(slope_3 / std::max(slope_2, 1e-12) > 0.5);
    CHECK(slope_3 / std::max(slope_2, 1e-12) < 2.0);
}

TEST_CASE("region operators") {
    auto f = sample_piecewise();
    DiscreteMeasure nu({0.125, 0.375, 0.625, 0.875}, {0.5, 0.5, 0.5, 0.5});

    SECTION("empty region gives zero") {
        CHECK(raise_region(nu, f, Region::empty(), 1e-12) == complex(0.0));
    }
    SECTION("finite-dimensional consistency (single raise over half the space)") {
        Region A = Region::interval(0.0, 0.5);
        complex lhs = raise_region(nu, f, A, 1e-13);
        // sum over cells inside A of alpha_i * Phi2[alpha + e_i; |alpha|+1; s]
        std::vector<double> alpha(4, 0.5);
        complex rhs = 0.0;
        for (int i = 0; i < 2; ++i) {
            std::vector<complex> ap = to_complex(alpha);
            ap[i] += 1.0;
            rhs += alpha[i] * humbert_phi2(ap, complex(3.0), to_complex(f.values()), 1e-13);
        }
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    SECTION("whole space sums all atoms") {
        Region whole = Region::interval(0.0, 1.0);
        complex lhs = raise_region(nu, f, whole, 1e-13);
        complex rhs = 0.0;
        for (size_t i = 0; i < nu.size(); ++i)
            rhs += nu.weights[i] * phi_extension(nu.with_atom(nu.atoms[i], 1.0), f, 1e-13);
        CHECK(std::abs(lhs - rhs) < 1e-14);
    }
    SECTION("raise/lower operator") {
        Region A = Region::interval(0.0, 0.5), B = Region::interval(0.5, 1.0);
        // A == B: both difference sets empty
        CHECK(raise_lower_region(nu, f, A, A, 1e-12) == complex(0.0));
        // B empty reduces to raise_region
        complex a = raise_lower_region(nu, f, A, Region::empty(), 1e-13);
        complex b = raise_region(nu, f, A, 1e-13);
        CHECK(std::abs(a - b) < 1e-14);
        // two-path evaluation at nuX = 2
        complex got = raise_lower_region(nu, f, A, B, 1e-13);
        complex expect = 0.0;
        for (size_t i = 0; i < nu.size(); ++i) {
            if (A.contains(nu.atoms[i]))
                expect += nu.weights[i] * phi_extension(nu.with_atom(nu.atoms[i], 1.0), f, 1e-13);
            else
                expect += nu.weights[i] * phi_extension(nu.with_atom(nu.atoms[i], -1.0), f, 1e-13);
        }
        CHECK(std::abs(got - expect) < 1e-12);
        // mass guard
        DiscreteMeasure light({0.2, 0.7}, {0.5, 0.4});
        CHECK_THROWS_AS(raise_lower_region(light, f, A, B, 1e-10), std::domain_error);
    }
}

TEST_CASE("limiting posterior actions over dyadic refinements") {
    SECTION("piecewise f is exact from the resolution depth on") {
        auto f = sample_piecewise();
        double x = 0.3;
        auto res = limiting_posterior_action(SigmaRef::uniform(), f, x, {2, 3, 4});
        REQUIRE(res.raising.size() == 3);
        // constant from depth 2 (f's resolution) onward
        CHECK(std::abs(res.raising[0] - res.raising[1]) < 1e-12);
        CHECK(std::abs(res.raising[1] - res.raising[2]) < 1e-12);
        CHECK(std::abs(res.raising[2] - res.raising_target) < 1e-11);
        CHECK_FALSE(res.nudged);
    }
    SECTION("smooth f: error decreases along depths 3,5,7") {
        TestFunction f = TestFunction::callable(
            [](double y) { return std::cos(2.0 * M_PI * y) * y * (1.0 - y); });
        // x = 1/3 sits at the same relative position in its dyadic cell at
        // every depth, so the cell-offset error contracts by the cell width
        double x = 1.0 / 3.0;
        auto res = limiting_posterior_action(SigmaRef::uniform(), f, x, {3, 5, 7});
        double e3 = std::abs(res.raising[0] - res.raising_target);
        double e5 = std::abs(res.raising[1] - res.raising_target);
        double e7 = std::abs(res.raising[2] - res.raising_target);
        CHECK(e5 < e3);
        CHECK(e7 < e5);
        // companion limits: Cartan -> identity value, Lower -> exact zero
        double c3 = std::abs(res.cartan[0] - res.cartan_target);
        double c7 = std::abs(res.cartan[2] - res.cartan_target);
        CHECK(c7 < c3);
        for (auto z : res.lowering) CHECK(z == complex(0.0));
    }
    SECTION("dyadic x is nudged with a warning flag") {
        auto f = sample_piecewise();
        auto res = limiting_posterior_action(SigmaRef::uniform(), f, 0.5, {2, 3});
        CHECK(res.nudged);
        CHECK(res.x_used > 0.5);
        CHECK(res.x_used < 0.5 + 1e-9);
    }
    SECTION("depth validation") {
        auto f = sample_piecewise();
        CHECK_THROWS_AS(limiting_posterior_action(SigmaRef::uniform(), f, 0.3, {3, 3}),
                        std::invalid_argument);
        CHECK_THROWS_AS(limiting_posterior_action(SigmaRef::uniform(), f, 0.3, {}),
                        std::invalid_argument);
    }
}

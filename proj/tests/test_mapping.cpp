#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "dircf/dirichlet.hpp"

using namespace dircf;

namespace {

// Reconstruct g from its decomposition: the canonical cluster index of x is
// star_lambda(lambda)[pi(x)], and cluster_values sends it back to g's value.
std::vector<int> recompose(const MapDecomposition& d) {
    std::vector<int> star = star_lambda(d.lambda);
    int k = d.lambda.n();
    std::vector<int> g(k);
    for (int x = 1; x <= k; ++x) g[x - 1] = d.cluster_values[star[d.pi(x) - 1] - 1];
    return g;
}

// All maps [1..k] -> [1..k] as image vectors.
std::vector<std::vector<int>> all_maps(int k) {
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

}  // namespace

TEST_CASE("star_lambda pinned values") {
    CHECK(star_lambda(Partition(4, {4, 0, 0, 0})) == std::vector<int>{1, 2, 3, 4});
    CHECK(star_lambda(Partition(2, {0, 1})) == std::vector<int>{1, 1});
    CHECK(star_lambda(Partition(3, {1, 1, 0})) == std::vector<int>{1, 2, 2});
    // weakly order-preserving surjection with fiber sizes matching lambda
    Partition lambda(7, {1, 0, 2});
    auto m = star_lambda(lambda);
    CHECK(m == std::vector<int>{1, 2, 2, 2, 3, 3, 3});
}

TEST_CASE("additive contraction") {
    std::vector<double> y{1.0, 2.0, 3.0};
    CHECK(additive_contraction(y, Partition(3, {3, 0, 0})) == y);
    CHECK(additive_contraction(std::vector<double>{1.5, 2.5}, Partition(2, {0, 1})) ==
          std::vector<double>{4.0});
    CHECK(additive_contraction(y, Partition(3, {1, 1, 0})) == std::vector<double>{1.0, 5.0});
    CHECK_THROWS_AS(additive_contraction(y, Partition(2, {2, 0})), std::invalid_argument);
    // mass is preserved
    std::vector<double> z{0.3, 0.2, 0.1, 0.25, 0.15};
    auto c = additive_contraction(z, Partition(5, {1, 2, 0, 0, 0}));
    double total = 0.0;
    for (double v : c) total += v;
    CHECK(total == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("decompose_map pinned cases") {
    // identity: all fibers singletons
    auto d = decompose_map({1, 2, 3});
    CHECK(d.lambda == Partition(3, {3, 0, 0}));
    CHECK(recompose(d) == std::vector<int>{1, 2, 3});

    // constant map: one fiber of size 3
    auto dc = decompose_map({1, 1, 1});
    CHECK(dc.lambda == Partition(3, {0, 0, 1}));
    CHECK(recompose(dc) == std::vector<int>{1, 1, 1});

    // image is not an initial segment
    auto dm = decompose_map({3, 1, 1});
    CHECK(dm.lambda == Partition(3, {1, 1, 0}));
    CHECK(recompose(dm) == std::vector<int>{3, 1, 1});
}

TEST_CASE("pushforward parameters") {
    std::vector<double> alpha{1.0, 2.0, 3.0};
    CHECK(pushforward_params({1, 2, 3}, alpha) == alpha);
    CHECK(pushforward_params({1, 1, 1}, alpha) == std::vector<double>{6.0});
    CHECK(pushforward_params({3, 1, 3}, alpha) == std::vector<double>{2.0, 4.0});
}

TEST_CASE("exhaustive map decomposition and exact pushforward moments, k <= 4") {
    for (int k = 2; k <= 4; ++k) {
        // generic rational alpha and s
        std::vector<Rational> alpha, s;
        for (int i = 1; i <= k; ++i) {
            alpha.emplace_back(2 * i + 1, 3);
            s.emplace_back(i + 1, k + 2);
        }
        for (const auto& g : all_maps(k)) {
            auto d = decompose_map(g);
            CHECK(recompose(d) == g);

            // lambda is the shape of the fiber partition
            std::vector<std::vector<int>> blocks(k + 1);
            for (int x = 1; x <= k; ++x) blocks[g[x - 1]].push_back(x);
            std::vector<std::vector<int>> nonempty;
            for (auto& b : blocks)
                if (!b.empty()) nonempty.push_back(b);
            CHECK(d.lambda == set_partition_shape(SetPartition(k, nonempty)));

            // additive contraction of the permuted alpha gives the canonical
            // cluster sums, i.e. the pushforward masses up to cluster order
            Permutation slot_to_element = d.pi.inverse();
            std::vector<Rational> arranged(k, Rational(0));
            for (int slot = 1; slot <= k; ++slot)
                arranged[slot - 1] = alpha[slot_to_element(slot) - 1];
            std::vector<Rational> cluster_sums = additive_contraction(arranged, d.lambda);
            std::vector<Rational> pushed = pushforward_params(g, alpha);
            REQUIRE(cluster_sums.size() == pushed.size());
            // match cluster m to its g-value position among the kept coords
            std::vector<int> kept;  // image values in increasing order
            for (int v = 1; v <= k; ++v)
                if (!blocks[v].empty()) kept.push_back(v);
            for (size_t m = 0; m < cluster_sums.size(); ++m) {
                auto it = std::find(kept.begin(), kept.end(), d.cluster_values[m]);
                REQUIRE(it != kept.end());
                CHECK(cluster_sums[m] == pushed[it - kept.begin()]);
            }

            // exact rational moment identity of the Mapping Theorem:
            // moments of s restricted under Dir(g_# alpha) equal moments of
            // the pulled-back s under Dir(alpha)
            std::vector<Rational> s_pulled(k, Rational(0));
            for (int x = 1; x <= k; ++x) s_pulled[x - 1] = s[g[x - 1] - 1];
            std::vector<Rational> s_restricted;
            for (int v : kept) s_restricted.push_back(s[v - 1]);
            for (int n = 0; n <= 4; ++n) {
                CHECK(moment_cycle_index_exact(s_restricted, pushed, n) ==
                      moment_cycle_index_exact(s_pulled, alpha, n));
            }
        }
    }
}

#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "dircf/rational.hpp"

namespace dircf {

/// Integer partition of n in frequency representation: freq[i] counts the
/// parts equal to i+1, so sum (i+1)*freq[i] == n. The frequency vector is
/// kept dense with length n (empty for n == 0).
class Partition {
public:
    Partition() : n_(0) {}

    Partition(int n, std::vector<int> freq) : n_(n), freq_(std::move(freq)) {
        if (n < 0) throw std::invalid_argument("partition: negative n");
        if ((int)freq_.size() != n) freq_.resize(n, 0);
        long long weighted = 0;
        for (int i = 0; i < (int)freq_.size(); ++i) {
            if (freq_[i] < 0) throw std::invalid_argument("partition: negative frequency");
            weighted += (long long)(i + 1) * freq_[i];
        }
        if (weighted != n) throw std::invalid_argument("partition: frequencies do not sum to n");
    }

    int n() const { return n_; }
    /// Number of parts |lambda|.
    int part_count() const { return std::accumulate(freq_.begin(), freq_.end(), 0); }
    /// Frequency of parts of the given size (1-based part size).
    int freq(int part_size) const {
        return (part_size >= 1 && part_size <= n_) ? freq_[part_size - 1] : 0;
    }
    const std::vector<int>& frequencies() const { return freq_; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.freq_ == b.freq_;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.freq_ < b.freq_;
    }
    friend bool operator>(const Partition& a, const Partition& b) { return b < a; }

private:
    int n_;
    std::vector<int> freq_;
};

/// All partitions of n, each exactly once, in reverse-lexicographic order of
/// the frequency vector (all-singletons first, the single n-part last).
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions: negative n");
    std::vector<std::vector<int>> freqs;
    std::vector<int> cur(n, 0);
    // parts chosen in decreasing size; rem = weight still to place
    auto rec = [&](auto&& self, int rem, int max_part) -> void {
        if (rem == 0) {
            freqs.push_back(cur);
            return;
        }
        for (int p = std::min(rem, max_part); p >= 1; --p) {
            cur[p - 1] += 1;
            self(self, rem - p, p);
            cur[p - 1] -= 1;
        }
    };
    rec(rec, n, n);
    std::sort(freqs.begin(), freqs.end(), std::greater<>());
    std::vector<Partition> out;
    out.reserve(freqs.size());
    for (auto& f : freqs) out.emplace_back(n, std::move(f));
    return out;
}

/// #{pi in S_n with cycle structure lambda} = n! / (lambda! * prod_i i^lambda_i).
inline Rational multinomial_weight(const Partition& lambda) {
    int n = lambda.n();
    int128 den = 1;
    for (int i = 1; i <= n; ++i) {
        int f = lambda.freq(i);
        for (int j = 2; j <= f; ++j) den = detail::checked_mul(den, j);
        for (int j = 0; j < f; ++j) den = detail::checked_mul(den, i);
    }
    int128 num = 1;
    for (int i = 2; i <= n; ++i) num = detail::checked_mul(num, i);
    return Rational::from_int128(num, den);
}

/// Permutation of [1..k] given by its image list (1-based).
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        int k = (int)images_.size();
        std::vector<char> seen(k + 1, 0);
        for (int v : images_) {
            if (v < 1 || v > k || seen[v])
                throw std::invalid_argument("permutation: images not a bijection of [1..k]");
            seen[v] = 1;
        }
    }
    static Permutation identity(int k) {
        std::vector<int> im(k);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    int k() const { return (int)images_.size(); }
    int operator()(int i) const { return images_[i - 1]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 1; i <= k(); ++i) inv[images_[i - 1] - 1] = i;
        return Permutation(std::move(inv));
    }

    /// Composition a*b: i -> a(b(i)).
    friend Permutation compose(const Permutation& a, const Permutation& b) {
        if (a.k() != b.k()) throw std::invalid_argument("permutation: size mismatch");
        std::vector<int> im(a.k());
        for (int i = 1; i <= a.k(); ++i) im[i - 1] = a(b(i));
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.images_ < b.images_;
    }

private:
    std::vector<int> images_;
};

/// Cycle type of a permutation: lambda_i = number of cycles of length i.
inline Partition cycle_structure(const Permutation& pi) {
    int k = pi.k();
    std::vector<char> visited(k + 1, 0);
    std::vector<int> freq(k, 0);
    for (int i = 1; i <= k; ++i) {
        if (visited[i]) continue;
        int len = 0, j = i;
        while (!visited[j]) {
            visited[j] = 1;
            j = pi(j);
            ++len;
        }
        freq[len - 1] += 1;
    }
    return Partition(k, std::move(freq));
}

/// Set partition of [1..n] in canonical order: blocks ascending by
/// cardinality, ties broken by least element; elements sorted within blocks.
class SetPartition {
public:
    SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
        std::set<int> seen;
        for (auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("set partition: empty block");
            std::sort(b.begin(), b.end());
            for (int v : b) {
                if (v < 1 || v > n || !seen.insert(v).second)
                    throw std::invalid_argument("set partition: blocks not disjoint subsets of [1..n]");
            }
        }
        if ((int)seen.size() != n)
            throw std::invalid_argument("set partition: blocks do not cover [1..n]");
        std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a.front() < b.front();
        });
    }

    int n() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

private:
    int n_;
    std::vector<std::vector<int>> blocks_;
};

/// lambda_i(L) = number of blocks of cardinality i.
inline Partition set_partition_shape(const SetPartition& L) {
    std::vector<int> freq(L.n(), 0);
    for (const auto& b : L.blocks()) freq[(int)b.size() - 1] += 1;
    return Partition(L.n(), std::move(freq));
}

}  // namespace dircf

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dircf/cycle_index.hpp"
#include "dircf/dirichlet.hpp"
#include "dircf/partition.hpp"
#include "dircf/rational.hpp"

namespace dircf {

/// Sparse multivariate polynomial over exact rationals; exponent vectors have
/// fixed arity k. Backs the coloring/shading generating functions.
class MultiPoly {
public:
    using TermMap = std::map<std::vector<int>, Rational>;

    explicit MultiPoly(int k) : k_(k) {
        if (k < 1) throw std::invalid_argument("multipoly: arity must be positive");
    }
    static MultiPoly constant(int k, const Rational& c) {
        MultiPoly p(k);
        p.add_term(std::vector<int>(k, 0), c);
        return p;
    }

    int arity() const { return k_; }
    const TermMap& terms() const { return terms_; }

    void add_term(const std::vector<int>& expo, const Rational& coeff) {
        if ((int)expo.size() != k_) throw std::invalid_argument("multipoly: exponent arity mismatch");
        if (coeff.is_zero()) return;
        Rational& c = terms_[expo];
        c += coeff;
        if (c.is_zero()) terms_.erase(expo);
    }

    Rational coefficient(const std::vector<int>& expo) const {
        auto it = terms_.find(expo);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.k_ != b.k_) throw std::invalid_argument("multipoly: arity mismatch");
        MultiPoly out(a.k_);
        std::vector<int> e(a.k_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.k_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    MultiPoly pow(int e) const {
        MultiPoly out = constant(k_, Rational(1));
        for (int i = 0; i < e; ++i) out = out * (*this);
        return out;
    }

    template <class T>
    T evaluate(std::span<const T> point) const {
        if ((int)point.size() != k_) throw std::invalid_argument("multipoly: point arity mismatch");
        T sum{};
        for (const auto& [e, c] : terms_) {
            T mono(1);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < e[i]; ++j) mono *= point[i];
            if constexpr (std::is_same_v<T, Rational>)
                sum += c * mono;
            else
                sum += T(c.to_double()) * mono;
        }
        return sum;
    }

    Rational sum_of_coefficients() const {
        Rational s(0);
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    bool all_integer() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.second.is_integer(); });
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.k_ == b.k_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    int k_;
    TermMap terms_;
};

/// Weighted power sum sum_j w_j t_j^i as a polynomial in t_1..t_k.
inline MultiPoly weighted_power_sum_poly(const std::vector<long long>& w, int i) {
    MultiPoly p((int)w.size());
    for (size_t j = 0; j < w.size(); ++j) {
        std::vector<int> e(w.size(), 0);
        e[j] = i;
        p.add_term(e, Rational(w[j]));
    }
    return p;
}

/// Substitute polynomials p_1..p_n for the variables t_1..t_n of a cycle
/// index and expand.
inline MultiPoly substitute_power_sums(const CycleIndexPolynomial& Z,
                                       const std::vector<MultiPoly>& p) {
    if ((int)p.size() < Z.degree())
        throw std::invalid_argument("substitute_power_sums: not enough substitution polynomials");
    int k = p.empty() ? 1 : p.front().arity();
    MultiPoly out(k);
    for (const auto& [lambda, coeff] : Z.terms()) {
        MultiPoly mono = MultiPoly::constant(k, coeff);
        for (int i = 1; i <= lambda.n(); ++i)
            for (int j = 0; j < lambda.freq(i); ++j) mono = mono * p[i - 1];
        out += mono;
    }
    return out;
}

/// Polya enumeration: the coefficient of t^h counts G-inequivalent
/// k-colorings of [n] with h_i occurrences of color i. Coefficients must come
/// out as non-negative integers; anything else means Z was not a group cycle
/// index.
inline MultiPoly coloring_gf(const CycleIndexPolynomial& Z, int colors) {
    if (colors < 1) throw std::invalid_argument("coloring_gf: need at least one color");
    std::vector<MultiPoly> p;
    p.reserve(Z.degree());
    std::vector<long long> ones(colors, 1);
    for (int i = 1; i <= Z.degree(); ++i) p.push_back(weighted_power_sum_poly(ones, i));
    MultiPoly gf = substitute_power_sums(Z, p);
    if (!gf.all_integer())
        throw std::logic_error("coloring_gf: non-integer coefficient (input is not a group cycle index)");
    for (const auto& [e, c] : gf.terms())
        if (c.sign() < 0)
            throw std::logic_error("coloring_gf: negative coefficient (input is not a group cycle index)");
    return gf;
}

/// Shadings with palette alpha: coefficient of s^h counts G-inequivalent
/// alpha-shadings with h_i occurrences of color i; substitution
/// Z^G(alpha.s^1, ..., alpha.s^n).
inline MultiPoly shading_gf(const CycleIndexPolynomial& Z, const std::vector<int>& palette) {
    if (palette.empty()) throw std::invalid_argument("shading_gf: empty palette");
    for (int a : palette)
        if (a < 1) throw std::invalid_argument("shading_gf: palette entries must be >= 1");
    std::vector<long long> w(palette.begin(), palette.end());
    std::vector<MultiPoly> p;
    p.reserve(Z.degree());
    for (int i = 1; i <= Z.degree(); ++i) p.push_back(weighted_power_sum_poly(w, i));
    MultiPoly gf = substitute_power_sums(Z, p);
    if (!gf.all_integer())
        throw std::logic_error("shading_gf: non-integer coefficient (input is not a group cycle index)");
    return gf;
}

/// Occupancy-class probabilities for a uniformly drawn S_n-class of
/// alpha-shadings: n! (|alpha|)_n^{-1} GF[b^alpha]; coefficientwise equal to
/// the degree-n Dirichlet moment polynomial.
inline MultiPoly shading_probability_gf(int n, const std::vector<int>& palette) {
    MultiPoly gf = shading_gf(cycle_index_direct(n), palette);
    long long total = std::accumulate(palette.begin(), palette.end(), 0ll);
    Rational scale = factorial_rational(n) / pochhammer(Rational(total), n);
    gf *= scale;
    return gf;
}

/// Degree-n moment polynomial of Dir(alpha) in exact arithmetic via the
/// multinomial route; independent oracle for the shading bridge.
inline MultiPoly moment_polynomial_multiindex(int n, const std::vector<Rational>& alpha) {
    int k = (int)alpha.size();
    MultiPoly out(k);
    Rational at(0);
    for (const auto& a : alpha) at += a;
    Rational scale = factorial_rational(n) / pochhammer(at, n);
    detail::for_each_composition(n, k, [&](const std::vector<int>& m) {
        Rational c = scale;
        for (int i = 0; i < k; ++i) c *= pochhammer(alpha[i], m[i]) / factorial_rational(m[i]);
        out.add_term(m, c);
    });
    return out;
}

/// Exhaustive orbit tally of palette shadings under an explicit group:
/// enumerate all (sum alpha)^n shade words, keep each orbit at its
/// lexicographically smallest representative, and bucket by color occupancy.
inline MultiPoly brute_force_orbit_count(std::span<const Permutation> group,
                                         const std::vector<int>& palette) {
    if (group.empty()) throw std::invalid_argument("brute_force_orbit_count: empty group");
    int n = group.front().k();
    int k = (int)palette.size();
    long long shades = std::accumulate(palette.begin(), palette.end(), 0ll);
    double size = std::pow(double(shades), double(n));
    if (n > 8 || size > 1e7)
        throw std::invalid_argument(
            "brute_force_orbit_count: instance exceeds guard (n <= 8 and shades^n <= 1e7)");
    validate_group(group);
    std::vector<int> color_of(shades);
    {
        int c = 0, used = 0;
        for (int s = 0; s < shades; ++s) {
            if (used == palette[c]) { ++c; used = 0; }
            color_of[s] = c;
            ++used;
        }
    }
    bool full_symmetric = false;
    {
        long long fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        full_symmetric = ((long long)group.size() == fact);
    }

    MultiPoly tally(k);
    std::vector<int> word(n, 0), image(n), h(k);
    long long total = (long long)size;
    for (long long code = 0; code < total; ++code) {
        // orbit representative check: count the word only if it is minimal
        bool minimal = true;
        if (full_symmetric) {
            minimal = std::is_sorted(word.begin(), word.end());
        } else {
            for (const auto& pi : group) {
                for (int x = 1; x <= n; ++x) image[x - 1] = word[pi(x) - 1];
                if (std::lexicographical_compare(image.begin(), image.end(), word.begin(),
                                                 word.end())) {
                    minimal = false;
                    break;
                }
            }
        }
        if (minimal) {
            std::fill(h.begin(), h.end(), 0);
            for (int x = 0; x < n; ++x) h[color_of[word[x]]] += 1;
            tally.add_term(h, Rational(1));
        }
        // next word in base `shades`
        int pos = n - 1;
        while (pos >= 0 && word[pos] == shades - 1) word[pos--] = 0;
        if (pos < 0) break;
        word[pos] += 1;
    }
    return tally;
}

}  // namespace dircf

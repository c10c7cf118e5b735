#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dircf/dirichlet.hpp"
#include "dircf/partition.hpp"
#include "dircf/rational.hpp"
#include "dircf/rng.hpp"

namespace dircf {

inline constexpr double kLatticePruneThreshold = 1e-15;

/// Finitely supported vector over the weight lattice alpha + Z^k: a sparse
/// map from integer offsets to complex coefficients, anchored at a fixed base
/// alpha. Vectors from different anchors never mix.
class LatticeVector {
public:
    using CoeffMap = std::map<std::vector<int>, complex_t>;

    explicit LatticeVector(std::vector<double> base) : base_(std::move(base)) {
        if (base_.empty()) throw std::invalid_argument("lattice: empty base");
    }

    static LatticeVector basis(std::vector<double> base, std::vector<int> offset = {}) {
        LatticeVector v(std::move(base));
        if (offset.empty()) offset.assign(v.k(), 0);
        v.add(offset, complex_t(1.0));
        return v;
    }

    int k() const { return (int)base_.size(); }
    const std::vector<double>& base() const { return base_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    /// Effective lattice point alpha' = base + offset.
    std::vector<double> point(const std::vector<int>& offset) const {
        std::vector<double> p(base_);
        for (int i = 0; i < k(); ++i) p[i] += offset[i];
        return p;
    }

    void add(const std::vector<int>& offset, complex_t c) {
        if ((int)offset.size() != k())
            throw std::invalid_argument("lattice: offset dimension mismatch");
        complex_t& v = coeffs_[offset];
        v += c;
        if (std::abs(v) < kLatticePruneThreshold) coeffs_.erase(offset);
    }

    LatticeVector& operator+=(const LatticeVector& o) {
        require_same_anchor(o);
        for (const auto& [off, c] : o.coeffs_) add(off, c);
        return *this;
    }
    LatticeVector& operator-=(const LatticeVector& o) {
        require_same_anchor(o);
        for (const auto& [off, c] : o.coeffs_) add(off, -c);
        return *this;
    }
    LatticeVector& operator*=(complex_t c) {
        if (std::abs(c) < kLatticePruneThreshold) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [off, v] : coeffs_) v *= c;
        return *this;
    }
    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [off, c] : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

private:
    void require_same_anchor(const LatticeVector& o) const {
        if (base_ != o.base_)
            throw std::invalid_argument("lattice: mixing vectors from different anchors");
    }

    std::vector<double> base_;
    CoeffMap coeffs_;
};

/// Distance between two vectors as the sup over offsets of the coefficient
/// discrepancy.
inline double lattice_distance(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector d = a;
    d -= b;
    return d.max_abs_coeff();
}

/// Ladder operators acting on basis labels f_{alpha'}:
///   Raise(i):  f -> alpha'_i f_{alpha'+e_i}
///   Lower(i):  f -> (1-|alpha'|) f_{alpha'-e_i}
///   Mixed(i,j):f -> alpha'_i f_{alpha'+e_i-e_j}
///   Cartan(i): f -> (|alpha'|+alpha'_i-1) f_{alpha'}
struct LadderOperator {
    enum class Kind { raise_op, lower_op, mixed_op, cartan_op };
    Kind kind;
    int i = 0;  // 1-based
    int j = 0;  // 1-based, mixed only

    static LadderOperator Raise(int i) { return {Kind::raise_op, i, 0}; }
    static LadderOperator Lower(int i) { return {Kind::lower_op, i, 0}; }
    static LadderOperator Mixed(int i, int j) {
        if (i == j) throw std::invalid_argument("ladder: mixed operator needs i != j");
        return {Kind::mixed_op, i, j};
    }
    static LadderOperator Cartan(int i) { return {Kind::cartan_op, i, 0}; }

    std::string name() const {
        switch (kind) {
            case Kind::raise_op: return "E_" + std::to_string(i);
            case Kind::lower_op: return "E_-" + std::to_string(i);
            case Kind::mixed_op: return "E_" + std::to_string(i) + ",-" + std::to_string(j);
            case Kind::cartan_op: return "J_" + std::to_string(i);
        }
        return "?";
    }
};

inline LatticeVector apply(const LadderOperator& op, const LatticeVector& v) {
    LatticeVector out(v.base());
    int k = v.k();
    if (op.i < 1 || op.i > k || (op.kind == LadderOperator::Kind::mixed_op && (op.j < 1 || op.j > k)))
        throw std::invalid_argument("ladder: operator index out of range");
    for (const auto& [off, c] : v.coeffs()) {
        std::vector<double> a = v.point(off);
        double total = std::accumulate(a.begin(), a.end(), 0.0);
        std::vector<int> shifted = off;
        switch (op.kind) {
            case LadderOperator::Kind::raise_op:
                shifted[op.i - 1] += 1;
                out.add(shifted, c * a[op.i - 1]);
                break;
            case LadderOperator::Kind::lower_op:
                shifted[op.i - 1] -= 1;
                out.add(shifted, c * (1.0 - total));
                break;
            case LadderOperator::Kind::mixed_op:
                shifted[op.i - 1] += 1;
                shifted[op.j - 1] -= 1;
                out.add(shifted, c * a[op.i - 1]);
                break;
            case LadderOperator::Kind::cartan_op:
                out.add(shifted, c * (total + a[op.i - 1] - 1.0));
                break;
        }
    }
    return out;
}

inline LatticeVector commutator(const LadderOperator& a, const LadderOperator& b,
                                const LatticeVector& v) {
    return apply(a, apply(b, v)) - apply(b, apply(a, v));
}

// ---------------------------------------------------------------------------
// Region predicates on the lattice
// ---------------------------------------------------------------------------

struct RegionPredicate {
    enum class Kind { lambda_plus, h, isopleth };
    Kind kind;
    double level = 0.0;

    static RegionPredicate LambdaPlus() { return {Kind::lambda_plus, 0.0}; }
    static RegionPredicate H() { return {Kind::h, 0.0}; }
    static RegionPredicate IsoplethM(double level) { return {Kind::isopleth, level}; }
};

inline bool region_membership(const std::vector<double>& base, const std::vector<int>& offset,
                              const RegionPredicate& pred) {
    if (base.size() != offset.size())
        throw std::invalid_argument("region_membership: dimension mismatch");
    double base_total = std::accumulate(base.begin(), base.end(), 0.0);
    long long shift = std::accumulate(offset.begin(), offset.end(), 0ll);
    double total = base_total + double(shift);
    switch (pred.kind) {
        case RegionPredicate::Kind::lambda_plus:
            return total > 0.0;
        case RegionPredicate::Kind::h: {
            if (!(total > 0.0)) return false;
            for (size_t i = 0; i < base.size(); ++i)
                if (!(base[i] + offset[i] > 0.0)) return false;
            return true;
        }
        case RegionPredicate::Kind::isopleth:
            // offsets are integers and |base| is fixed, so equality is exact
            return total == pred.level;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Weyl action
// ---------------------------------------------------------------------------

/// Pushforward action of pi on lattice labels: coordinate pi(i) of the image
/// holds coordinate i of the source. Anchors move to the permuted base, and
/// conjugation by this action relabels Raise(i) to Raise(pi(i)).
inline LatticeVector weyl_permute(const Permutation& pi, const LatticeVector& v) {
    if (pi.k() != v.k()) throw std::invalid_argument("weyl_permute: dimension mismatch");
    std::vector<double> new_base(v.k());
    for (int i = 1; i <= v.k(); ++i) new_base[pi(i) - 1] = v.base()[i - 1];
    LatticeVector out(std::move(new_base));
    std::vector<int> new_off(v.k());
    for (const auto& [off, c] : v.coeffs()) {
        for (int i = 1; i <= v.k(); ++i) new_off[pi(i) - 1] = off[i - 1];
        out.add(new_off, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Posterior operators
// ---------------------------------------------------------------------------

struct PosteriorAction {
    double scalar;
    std::vector<int> offset;
};

/// Scalar and offset of v(p) = Raise(1)^{p_1} ... Raise(k)^{p_k} acting on
/// f_alpha: Poch(alpha, p) f_{alpha+p}.
inline PosteriorAction posterior_operator(const std::vector<double>& alpha,
                                          const std::vector<int>& p) {
    if (alpha.size() != p.size())
        throw std::invalid_argument("posterior_operator: dimension mismatch");
    double scalar = 1.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw std::invalid_argument("posterior_operator: p must be non-negative");
        scalar *= pochhammer(alpha[i], p[i]);
    }
    return {scalar, p};
}

/// Exact-rational posterior scalar Poch(alpha, p).
inline Rational posterior_scalar_exact(const std::vector<Rational>& alpha,
                                       const std::vector<int>& p) {
    if (alpha.size() != p.size())
        throw std::invalid_argument("posterior_scalar_exact: dimension mismatch");
    Rational scalar(1);
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw std::invalid_argument("posterior_scalar_exact: p must be non-negative");
        scalar *= pochhammer(alpha[i], p[i]);
    }
    return scalar;
}

// ---------------------------------------------------------------------------
// Relation verification
// ---------------------------------------------------------------------------

struct RelationResult {
    std::string relation;
    double max_error = 0.0;
    bool pass = true;
};

struct VerificationReport {
    std::vector<RelationResult> relations;
    double tolerance = 1e-10;

    bool all_pass() const {
        for (const auto& r : relations)
            if (!r.pass) return false;
        return true;
    }
    const RelationResult& worst() const {
        size_t w = 0;
        for (size_t i = 1; i < relations.size(); ++i)
            if (relations[i].max_error > relations[w].max_error) w = i;
        return relations[w];
    }
};

namespace detail {

/// Operator expressions (sums/scalings/compositions of ladder actions) used
/// by the relation checks.
using OpFn = std::function<LatticeVector(const LatticeVector&)>;

inline OpFn op(const LadderOperator& l) {
    return [l](const LatticeVector& v) { return apply(l, v); };
}
inline OpFn zero_op() {
    return [](const LatticeVector& v) {
        LatticeVector out(v.base());
        return out;
    };
}
inline OpFn scale_op(complex_t c, OpFn f) {
    return [c, f](const LatticeVector& v) {
        LatticeVector out = f(v);
        out *= c;
        return out;
    };
}
inline OpFn sum_op(OpFn f, OpFn g) {
    return [f, g](const LatticeVector& v) { return f(v) + g(v); };
}
inline OpFn diff_op(OpFn f, OpFn g) {
    return [f, g](const LatticeVector& v) { return f(v) - g(v); };
}
inline OpFn bracket_op(OpFn f, OpFn g) {
    return [f, g](const LatticeVector& v) { return f(g(v)) - g(f(v)); };
}

inline LatticeVector random_sparse_vector(const std::vector<double>& base, Rng& rng) {
    LatticeVector v(base);
    int k = (int)base.size();
    int support = 1 + int(rng.uniform01() * 3.0);
    for (int s = 0; s < support; ++s) {
        std::vector<int> off(k);
        for (int i = 0; i < k; ++i) off[i] = int(rng.uniform01() * 5.0) - 2;
        v.add(off, complex_t(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0));
    }
    if (v.empty()) v.add(std::vector<int>(k, 0), complex_t(1.0));
    return v;
}

}  // namespace detail

/// Check the displayed commutation relations of the dynamical symmetry
/// algebra on random sparse lattice vectors. The bracket [J_i, E_{+-p}] is
/// verified against +-(1 + delta_ip) E_{+-p}: the displayed table's
/// "+-2 delta_ip" agrees at i = p, and the i != p value is forced by the
/// representation property (the |alpha'| shift contributes the extra unit).
inline VerificationReport verify_commutation_table(const std::vector<double>& base, int trials,
                                                   std::uint64_t seed, double tol = 1e-10) {
    using detail::op;
    using detail::OpFn;
    int k = (int)base.size();
    if (k < 2) throw std::invalid_argument("verify_commutation_table: need k >= 2");
    VerificationReport report;
    report.tolerance = tol;
    Rng rng(seed);

    auto E = [](int i) { return op(LadderOperator::Raise(i)); };
    auto F = [](int i) { return op(LadderOperator::Lower(i)); };
    auto M = [](int i, int j) { return op(LadderOperator::Mixed(i, j)); };
    auto J = [](int i) { return op(LadderOperator::Cartan(i)); };

    struct Check {
        std::string name;
        OpFn lhs, rhs;
    };
    std::vector<Check> checks;
    auto add = [&](std::string name, OpFn lhs, OpFn rhs) {
        checks.push_back({std::move(name), std::move(lhs), std::move(rhs)});
    };
    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };

    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            for (int p = 1; p <= k; ++p) {
                for (int q = 1; q <= k; ++q) {
                    if (p == q) continue;
                    double coeff = d(i, p) - d(i, q) - d(j, p) + d(j, q);
                    add("[J" + std::to_string(i) + "-J" + std::to_string(j) + ", E" +
                            std::to_string(p) + ",-" + std::to_string(q) + "]",
                        detail::bracket_op(detail::diff_op(J(i), J(j)), M(p, q)),
                        detail::scale_op(coeff, M(p, q)));
                }
            }
        }
    }
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            for (int p = 1; p <= k; ++p) {
                for (int q = 1; q <= k; ++q) {
                    if (p == q) continue;
                    OpFn rhs;
                    if (i == q && j == p)
                        rhs = detail::diff_op(J(i), J(j));
                    else if (i == q)
                        rhs = detail::scale_op(-1.0, M(p, j));
                    else if (j == p)
                        rhs = M(i, q);
                    else
                        rhs = detail::zero_op();
                    add("[E" + std::to_string(i) + ",-" + std::to_string(j) + ", E" +
                            std::to_string(p) + ",-" + std::to_string(q) + "]",
                        detail::bracket_op(M(i, j), M(p, q)), rhs);
                }
            }
        }
    }
    for (int i = 1; i <= k; ++i) {
        for (int p = 1; p <= k; ++p) {
            OpFn rhs = (i == p) ? J(i) : M(i, p);
            add("[E" + std::to_string(i) + ", E-" + std::to_string(p) + "]",
                detail::bracket_op(E(i), F(p)), rhs);
            add("[J" + std::to_string(i) + ", E" + std::to_string(p) + "]",
                detail::bracket_op(J(i), E(p)), detail::scale_op(1.0 + d(i, p), E(p)));
            add("[J" + std::to_string(i) + ", E-" + std::to_string(p) + "]",
                detail::bracket_op(J(i), F(p)), detail::scale_op(-(1.0 + d(i, p)), F(p)));
            add("[E" + std::to_string(i) + ", E" + std::to_string(p) + "]",
                detail::bracket_op(E(i), E(p)), detail::zero_op());
            add("[E-" + std::to_string(i) + ", E-" + std::to_string(p) + "]",
                detail::bracket_op(F(i), F(p)), detail::zero_op());
        }
    }
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            for (int p = 1; p <= k; ++p)
                add("[J" + std::to_string(i) + "-J" + std::to_string(j) + ", J" +
                        std::to_string(p) + "]",
                    detail::bracket_op(detail::diff_op(J(i), J(j)), J(p)), detail::zero_op());
        }

    std::vector<LatticeVector> vectors;
    vectors.reserve(trials);
    for (int t = 0; t < trials; ++t) vectors.push_back(detail::random_sparse_vector(base, rng));

    for (auto& c : checks) {
        RelationResult rr;
        rr.relation = c.name;
        for (const auto& v : vectors)
            rr.max_error = std::max(rr.max_error, lattice_distance(c.lhs(v), c.rhs(v)));
        rr.pass = rr.max_error <= tol;
        report.relations.push_back(std::move(rr));
    }
    return report;
}

/// Type-A Serre relations for the Chevalley generators realized by the
/// ladder operators: x_1 = E_{-1}, x_j = E_{j-1,-j}; y_1 = E_1,
/// y_j = E_{j,-(j-1)}; h_1 = -J_1, h_j = J_{j-1} - J_j. (The assignment with
/// x_1 = E_1 fails [x_1, x_2] != 0 and is not a homomorphism; this transposed
/// one is, and reproduces the A_k Dynkin adjacency.)
inline VerificationReport verify_serre(const std::vector<double>& base, std::uint64_t seed,
                                       int trials = 50, double tol = 1e-10) {
    using detail::op;
    using detail::OpFn;
    int k = (int)base.size();
    if (k < 2) throw std::invalid_argument("verify_serre: need k >= 2");
    VerificationReport report;
    report.tolerance = tol;
    Rng rng(seed);

    std::vector<OpFn> x(k + 1), y(k + 1), h(k + 1);
    x[1] = op(LadderOperator::Lower(1));
    y[1] = op(LadderOperator::Raise(1));
    h[1] = detail::scale_op(-1.0, op(LadderOperator::Cartan(1)));
    for (int j = 2; j <= k; ++j) {
        x[j] = op(LadderOperator::Mixed(j - 1, j));
        y[j] = op(LadderOperator::Mixed(j, j - 1));
        h[j] = detail::diff_op(op(LadderOperator::Cartan(j - 1)), op(LadderOperator::Cartan(j)));
    }

    std::vector<LatticeVector> vectors;
    vectors.reserve(trials);
    for (int t = 0; t < trials; ++t) vectors.push_back(detail::random_sparse_vector(base, rng));

    auto record = [&](std::string name, const OpFn& lhs, const OpFn& rhs) {
        RelationResult rr;
        rr.relation = std::move(name);
        for (const auto& v : vectors)
            rr.max_error = std::max(rr.max_error, lattice_distance(lhs(v), rhs(v)));
        rr.pass = rr.max_error <= tol;
        report.relations.push_back(std::move(rr));
    };
    auto cartan_entry = [&](int i, int j) {
        if (i == j) return 2.0;
        return std::abs(i - j) == 1 ? -1.0 : 0.0;
    };

    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            std::string si = std::to_string(i), sj = std::to_string(j);
            if (std::abs(i - j) == 1) {
                record("[x" + si + ",[x" + si + ",x" + sj + "]]",
                       detail::bracket_op(x[i], detail::bracket_op(x[i], x[j])),
                       detail::zero_op());
                record("[y" + si + ",[y" + si + ",y" + sj + "]]",
                       detail::bracket_op(y[i], detail::bracket_op(y[i], y[j])),
                       detail::zero_op());
            } else {
                record("[x" + si + ",x" + sj + "]", detail::bracket_op(x[i], x[j]),
                       detail::zero_op());
                record("[y" + si + ",y" + sj + "]", detail::bracket_op(y[i], y[j]),
                       detail::zero_op());
            }
            record("[x" + si + ",y" + sj + "]", detail::bracket_op(x[i], y[j]),
                   detail::zero_op());
        }
        record("[x" + std::to_string(i) + ",y" + std::to_string(i) + "]=h" + std::to_string(i),
               detail::bracket_op(x[i], y[i]), h[i]);
        for (int j = 1; j <= k; ++j) {
            record("[h" + std::to_string(i) + ",x" + std::to_string(j) + "]",
                   detail::bracket_op(h[i], x[j]), detail::scale_op(cartan_entry(i, j), x[j]));
            record("[h" + std::to_string(i) + ",y" + std::to_string(j) + "]",
                   detail::bracket_op(h[i], y[j]), detail::scale_op(-cartan_entry(i, j), y[j]));
        }
    }

    // Dynkin adjacency: adjacent simple generators must NOT commute.
    for (int i = 1; i < k; ++i) {
        RelationResult rr;
        rr.relation = "adjacency [x" + std::to_string(i) + ",x" + std::to_string(i + 1) + "] != 0";
        double max_norm = 0.0;
        for (const auto& v : vectors)
            max_norm = std::max(max_norm, detail::bracket_op(x[i], x[i + 1])(v).max_abs_coeff());
        rr.max_error = 0.0;
        rr.pass = max_norm > 1e-6;
        report.relations.push_back(std::move(rr));
    }

    // Faithfulness spot check: all basis operators act differently on a
    // basis label with alpha' > 1 componentwise.
    {
        std::vector<int> off(k, 2);
        LatticeVector f = LatticeVector::basis(base, off);
        std::vector<LadderOperator> basis_ops;
        for (int i = 1; i <= k; ++i) {
            basis_ops.push_back(LadderOperator::Raise(i));
            basis_ops.push_back(LadderOperator::Lower(i));
            basis_ops.push_back(LadderOperator::Cartan(i));
            for (int j = 1; j <= k; ++j)
                if (j != i) basis_ops.push_back(LadderOperator::Mixed(i, j));
        }
        RelationResult rr;
        rr.relation = "faithfulness: distinct basis operators act differently";
        rr.pass = true;
        for (size_t a = 0; a < basis_ops.size() && rr.pass; ++a)
            for (size_t b = a + 1; b < basis_ops.size() && rr.pass; ++b)
                if (lattice_distance(apply(basis_ops[a], f), apply(basis_ops[b], f)) < 1e-9)
                    rr.pass = false;
        report.relations.push_back(std::move(rr));
    }
    return report;
}

}  // namespace dircf

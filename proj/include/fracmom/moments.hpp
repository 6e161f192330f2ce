#ifndef FRACMOM_MOMENTS_HPP
#define FRACMOM_MOMENTS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fracmom/measures.hpp"

namespace fracmom {

// Finite truncation of the index set Q_+^n x Z_+:
// alpha in (1/D) Z_+^n with numerator degree sum <= N, beta <= B.
struct Window {
    unsigned long D = 1;
    unsigned long N = 0;
    unsigned long B = 0;
};

using DeltaIndex = std::pair<ExponentVector, unsigned long>; // (alpha, beta)

inline std::string index_str(const DeltaIndex& ix) {
    return "(" + ix.first.str() + "," + std::to_string(ix.second) + ")";
}

inline constexpr std::size_t kDefaultBasisLimit = 5000;

namespace detail {

// numerator tuples with sum <= N, grade ascending then lex descending
inline void enumerate_numerators(std::size_t n, unsigned long N,
                                 std::vector<std::vector<unsigned long>>& out) {
    for (unsigned long g = 0; g <= N; ++g) {
        std::vector<std::vector<unsigned long>> grade;
        std::vector<unsigned long> cur(n, 0);
        // lex-descending over tuples with fixed sum g
        auto rec = [&](auto&& self, std::size_t j, unsigned long rest) -> void {
            if (j + 1 == n) {
                cur[j] = rest;
                grade.push_back(cur);
                return;
            }
            for (unsigned long k = rest + 1; k-- > 0;) {
                cur[j] = k;
                self(self, j + 1, rest - k);
            }
        };
        if (n == 0) {
            if (g == 0) out.push_back({});
            continue;
        }
        rec(rec, 0, g);
        for (auto& t : grade) out.push_back(std::move(t));
    }
}

} // namespace detail

// window alpha range in graded-lex order
inline std::vector<ExponentVector> window_alphas(const Window& w, std::size_t n) {
    std::vector<std::vector<unsigned long>> nums;
    detail::enumerate_numerators(n, w.N, nums);
    std::vector<ExponentVector> out;
    out.reserve(nums.size());
    for (const auto& k : nums) {
        std::vector<Rational> comps(n);
        for (std::size_t j = 0; j < n; ++j)
            comps[j] = make_rational(static_cast<long>(k[j]), w.D);
        out.push_back(ExponentVector(std::move(comps)));
    }
    return out;
}

// deterministic basis enumeration: beta ascending, alpha graded-lex within
inline std::vector<DeltaIndex> build_basis(const Window& w, std::size_t n,
                                           std::size_t limit = kDefaultBasisLimit) {
    auto alphas = window_alphas(w, n);
    std::vector<DeltaIndex> basis;
    for (unsigned long b = 0; b <= w.B; ++b)
        for (const auto& a : alphas) {
            basis.emplace_back(a, b);
            if (basis.size() > limit) throw ResourceLimit("basis size exceeds limit");
        }
    return basis;
}

// The family delta_{(alpha,beta)}: computed from a measure or tabulated.
template <class M>
class DeltaFamily {
public:
    virtual ~DeltaFamily() = default;
    virtual typename M::Real value(const ExponentVector& alpha, unsigned long beta) const = 0;
};

template <class M>
class ComputedDelta final : public DeltaFamily<M> {
public:
    ComputedDelta(AtomicMeasure<M> mu, ProblemPolys<M> P)
        : mu_(std::move(mu)), P_(std::move(P)) {}

    typename M::Real value(const ExponentVector& alpha, unsigned long beta) const override {
        DeltaIndex key{alpha, beta};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto v = delta_forward(mu_, P_, alpha, beta);
        memo_.emplace(std::move(key), v);
        return v;
    }

    const AtomicMeasure<M>& measure() const { return mu_; }
    const ProblemPolys<M>& problem() const { return P_; }

private:
    AtomicMeasure<M> mu_;
    ProblemPolys<M> P_;
    mutable std::mutex mutex_;
    mutable std::map<DeltaIndex, typename M::Real> memo_;
};

template <class M>
class TabulatedDelta final : public DeltaFamily<M> {
public:
    void insert(ExponentVector alpha, unsigned long beta, typename M::Real v) {
        entries_.insert_or_assign({std::move(alpha), beta}, std::move(v));
    }

    typename M::Real value(const ExponentVector& alpha, unsigned long beta) const override {
        auto it = entries_.find({alpha, beta});
        if (it == entries_.end())
            throw MissingEntry("tabulated delta has no entry", index_str({alpha, beta}));
        return it->second;
    }

    const std::map<DeltaIndex, typename M::Real>& entries() const { return entries_; }

private:
    std::map<DeltaIndex, typename M::Real> entries_;
};

// wrapper capturing every queried index (drives --emit-delta coverage)
template <class M>
class RecordingDelta final : public DeltaFamily<M> {
public:
    explicit RecordingDelta(const DeltaFamily<M>& inner) : inner_(inner) {}

    typename M::Real value(const ExponentVector& alpha, unsigned long beta) const override {
        auto v = inner_.value(alpha, beta);
        std::lock_guard<std::mutex> lock(mutex_);
        seen_.insert_or_assign({alpha, beta}, v);
        return v;
    }

    const std::map<DeltaIndex, typename M::Real>& seen() const { return seen_; }

private:
    const DeltaFamily<M>& inner_;
    mutable std::mutex mutex_;
    mutable std::map<DeltaIndex, typename M::Real> seen_;
};

// dense symmetric matrix, row-major
template <class M>
struct SymMatrix {
    std::size_t n = 0;
    std::vector<typename M::Real> a;

    explicit SymMatrix(std::size_t n_ = 0) : n(n_), a(n_ * n_) {}
    typename M::Real& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const typename M::Real& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Gram matrix of the semi-inner product on the monomial basis:
// M[(a,b),(a',b')] = delta_{(a+a', b+b')}
template <class M>
SymMatrix<M> gram(const DeltaFamily<M>& delta, const std::vector<DeltaIndex>& basis) {
    SymMatrix<M> g(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            auto v = delta.value(basis[i].first + basis[j].first,
                                 basis[i].second + basis[j].second);
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    return g;
}

// localized Gram for p_k: entries sum_{xi in I_k} a_{k,xi} delta_{(a+a'+xi, b+b')}
template <class M>
SymMatrix<M> shifted_gram(const DeltaFamily<M>& delta, const std::vector<DeltaIndex>& basis,
                          const FracPoly<M>& pk) {
    if (!pk.is_real()) throw DomainError("shift polynomial must be real");
    SymMatrix<M> g(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            typename M::Real acc{};
            for (const auto& [xi, coeff] : pk.terms())
                acc += M::real_part(coeff) *
                       delta.value(basis[i].first + basis[j].first + xi,
                                   basis[i].second + basis[j].second);
            g.at(i, j) = acc;
            g.at(j, i) = acc;
        }
    return g;
}

template <class M>
struct GramVerdict {
    bool psd = true;
    // exact mode: the pivot sequence of the LDL^T factorization
    std::vector<typename M::Real> pivots;
    // float mode: smallest eigenvalue estimate
    double min_eigenvalue = 0.0;
    // on failure: v with v^T M v < 0 and the achieved value
    std::optional<std::vector<typename M::Real>> witness;
    typename M::Real witness_value{};
};

namespace detail {

// Lift a Schur-complement witness back to the original coordinates.
// After k pivot steps on permuted indices perm[0..k-1] with unit multipliers
// L (column-major per step), a witness x over the remaining indices extends
// with u = -L11^{-T} L21^T x on the pivoted block.
inline std::vector<Rational> lift_witness(std::size_t n, const std::vector<std::size_t>& perm,
                                          std::size_t k,
                                          const std::vector<std::vector<Rational>>& mult,
                                          const std::vector<Rational>& x_remaining) {
    // y over permuted coordinates: first k entries unknown, rest = x
    std::vector<Rational> y(n, Rational(0));
    for (std::size_t i = k; i < n; ++i) y[i] = x_remaining[i - k];
    // back-substitute: y_j = -sum_{i>j} mult[j][i] * y_i for j = k-1..0
    for (std::size_t j = k; j-- > 0;) {
        Rational s(0);
        for (std::size_t i = j + 1; i < n; ++i) s += mult[j][i] * y[i];
        y[j] = -s;
    }
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) v[perm[i]] = y[i];
    return v;
}

} // namespace detail

// Exact PSD decision: LDL^T with symmetric pivoting on the largest remaining
// diagonal (ties to the lowest index). PSD iff all pivots are >= 0 and every
// zero-diagonal remainder row is entirely zero.
inline GramVerdict<ExactMode> psd_check_exact(const SymMatrix<ExactMode>& m) {
    const std::size_t n = m.n;
    GramVerdict<ExactMode> verdict;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m.at(i, j) != m.at(j, i)) throw DomainError("matrix not symmetric");
            a[i][j] = m.at(i, j);
        }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    // mult[j][i]: multiplier applied at step j to permuted row i (i > j)
    std::vector<std::vector<Rational>> mult(n, std::vector<Rational>(n, Rational(0)));

    auto A = [&](std::size_t i, std::size_t j) -> Rational& { return a[perm[i]][perm[j]]; };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (A(j, j) > A(best, best)) best = j;
        if (best != k) {
            std::swap(perm[k], perm[best]);
            // keep multiplier columns aligned with permuted positions
            for (std::size_t j = 0; j < k; ++j) std::swap(mult[j][k], mult[j][best]);
        }
        Rational d = A(k, k);
        if (d < 0) {
            std::vector<Rational> x(n - k, Rational(0));
            x[0] = 1;
            verdict.psd = false;
            verdict.witness = detail::lift_witness(n, perm, k, mult, x);
            verdict.witness_value = d;
            return verdict;
        }
        if (d == 0) {
            // d is the max remaining diagonal, so the rest are <= 0
            for (std::size_t j = k + 1; j < n; ++j)
                if (A(j, j) < 0) {
                    std::vector<Rational> x(n - k, Rational(0));
                    x[j - k] = 1;
                    verdict.psd = false;
                    verdict.witness_value = A(j, j);
                    verdict.witness = detail::lift_witness(n, perm, k, mult, x);
                    return verdict;
                }
            for (std::size_t j = k; j < n; ++j)
                for (std::size_t l = j + 1; l < n; ++l)
                    if (A(j, l) != 0) {
                        // rows j,l of the remainder: form over x e_j + e_l is
                        // A_ll + 2 x A_jl with A_jj = 0; pick x for value -1
                        Rational x = -(A(l, l) + 1) / (2 * A(j, l));
                        std::vector<Rational> xr(n - k, Rational(0));
                        xr[j - k] = x;
                        xr[l - k] = 1;
                        verdict.psd = false;
                        verdict.witness = detail::lift_witness(n, perm, k, mult, xr);
                        verdict.witness_value = Rational(-1);
                        return verdict;
                    }
            // remainder vanishes entirely
            for (std::size_t j = k; j < n; ++j) verdict.pivots.push_back(Rational(0));
            return verdict;
        }
        verdict.pivots.push_back(d);
        for (std::size_t i = k + 1; i < n; ++i) mult[k][i] = A(i, k) / d;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= mult[k][i] * d * mult[k][j];
    }
    return verdict;
}

// Float PSD decision: smallest eigenvalue against a norm-scaled tolerance.
inline GramVerdict<FloatMode> psd_check_float(const SymMatrix<FloatMode>& m, double tol) {
    const std::size_t n = m.n;
    GramVerdict<FloatMode> verdict;
    if (n == 0) return verdict;
    Eigen::MatrixXd A(n, n);
    double max_row_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double sym = 0.5 * (m.at(i, j) + m.at(j, i));
            if (std::abs(m.at(i, j) - m.at(j, i)) > tol * (1.0 + std::abs(sym)))
                throw DomainError("matrix not symmetric within tolerance");
            A(i, j) = sym;
            row += std::abs(sym);
        }
        max_row_sum = std::max(max_row_sum, row);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    double lam = es.eigenvalues()(0);
    verdict.min_eigenvalue = lam;
    if (lam < -tol * (1.0 + max_row_sum)) {
        verdict.psd = false;
        Eigen::VectorXd v = es.eigenvectors().col(0);
        verdict.witness = std::vector<double>(v.data(), v.data() + n);
        verdict.witness_value = v.dot(A * v);
    }
    return verdict;
}

template <class M>
GramVerdict<M> psd_check(const SymMatrix<M>& m, double tol) {
    if constexpr (M::is_exact) {
        (void)tol;
        return psd_check_exact(m);
    } else {
        return psd_check_float(m, tol);
    }
}

// re-evaluate a witness quadratic form independently of the factorization
template <class M>
typename M::Real quadratic_form(const SymMatrix<M>& m, const std::vector<typename M::Real>& v) {
    typename M::Real acc{};
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) acc += v[i] * m.at(i, j) * v[j];
    return acc;
}

} // namespace fracmom

#endif

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtfock/combinatorics.hpp"

namespace qtfock {

/// Raised by the strict vacuum-moment evaluator when a word climbs above the
/// retained level.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <class S>
S abs_value(const S& x) {
    if constexpr (std::is_same_v<S, mpq_class>) {
        return abs(x);
    } else {
        return std::abs(x);
    }
}

/// Parameters of a finite truncation of the deformed Fock space.  The strict
/// regime |q| < t <= 1 guarantees a positive definite inner product; the
/// relaxed flag admits the |q| = t boundary (positive semi-definite), which
/// the degenerate-vector checks need.  q = t = 1 is always rejected: the
/// operators there are unbounded.
template <class S>
struct FockParams {
    S q{};
    S t{};
    int d = 1;  // one-particle dimension, orthonormal basis e_1..e_d
    int L = 1;  // highest retained tensor level
    bool allow_semidefinite = false;

    void validate() const {
        if (d < 1) throw std::invalid_argument("FockParams: d must be >= 1");
        if (L < 1) throw std::invalid_argument("FockParams: L must be >= 1");
        if (!(t > S(0))) throw std::invalid_argument("FockParams: t must be > 0");
        if (!(t <= S(1))) throw std::invalid_argument("FockParams: t must be <= 1");
        if (q == S(1) && t == S(1))
            throw std::invalid_argument("FockParams: q = t = 1 (Bosonic case) is rejected");
        const S aq = abs_value(q);
        if (allow_semidefinite ? !(aq <= t) : !(aq < t))
            throw std::invalid_argument(allow_semidefinite
                                            ? "FockParams: |q| <= t required"
                                            : "FockParams: |q| < t required for positivity");
    }
};

/// A basis tensor word: letters in 1..d, empty word = vacuum.
using TensorWord = std::vector<std::uint8_t>;

inline std::string word_label(const TensorWord& w) {
    if (w.empty()) return "vac";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += 'e';
        s += std::to_string(static_cast<int>(w[i]));
    }
    return s;
}

/// Finitely supported vector in the truncated space.
template <class S>
using FockVector = std::map<TensorWord, S>;

/// Minimal dense matrix; Eigen handles the double-precision spectral work,
/// this container carries the exact-rational mode as well.
template <class S>
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    S& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    std::vector<S> apply(const std::vector<S>& x) const {
        std::vector<S> y(rows_, S(0));
        for (size_t i = 0; i < rows_; ++i) {
            S acc(0);
            for (size_t j = 0; j < cols_; ++j) acc += a_[i * cols_ + j] * x[j];
            y[i] = acc;
        }
        return y;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

/// Enumeration of all tensor words up to level L, level-major and
/// lexicographic within a level.  Index 0 is the vacuum.
class FockBasis {
  public:
    FockBasis(int d, int L) : d_(d), L_(L) {
        offsets_.push_back(0);
        size_t level_size = 1;
        for (int n = 0; n <= L; ++n) {
            offsets_.push_back(offsets_.back() + level_size);
            level_size *= static_cast<size_t>(d);
        }
        words_.reserve(offsets_.back());
        TensorWord w;
        build(w);
    }

    int d() const { return d_; }
    int L() const { return L_; }
    size_t size() const { return offsets_.back(); }
    size_t level_offset(int n) const { return offsets_[static_cast<size_t>(n)]; }
    size_t level_size(int n) const {
        return offsets_[static_cast<size_t>(n) + 1] - offsets_[static_cast<size_t>(n)];
    }
    const TensorWord& word(size_t idx) const { return words_[idx]; }

    size_t index(const TensorWord& w) const {
        size_t v = 0;
        for (std::uint8_t c : w) v = v * static_cast<size_t>(d_) + static_cast<size_t>(c - 1);
        return offsets_[w.size()] + v;
    }

  private:
    void build(TensorWord& w) {
        if (static_cast<int>(w.size()) <= L_) words_.push_back(w);
        if (static_cast<int>(w.size()) == L_) return;
        for (int c = 1; c <= d_; ++c) {
            w.push_back(static_cast<std::uint8_t>(c));
            build(w);
            w.pop_back();
        }
    }

    int d_, L_;
    std::vector<size_t> offsets_;
    std::vector<TensorWord> words_;
};

template <class S>
struct LevelGram {
    int level = 0;
    std::vector<TensorWord> basis;
    DenseMatrix<S> entries;
};

namespace detail {

template <class S>
std::vector<S> power_table(const S& x, int n) {
    std::vector<S> p(static_cast<size_t>(n) + 1, S(1));
    for (int i = 1; i <= n; ++i) p[static_cast<size_t>(i)] = p[static_cast<size_t>(i - 1)] * x;
    return p;
}

}  // namespace detail

/// Gram matrix of level n via the permutation sum
///   <w, v> = sum_{pi in S_n} q^inv(pi) t^coinv(pi) prod_k [w_k == v_{pi(k)}].
/// This is one of the two independent routes to the inner product (the other
/// is the deletion recursion in word_inner_product).
template <class S>
LevelGram<S> gram_matrix(const FockParams<S>& params, int n) {
    params.validate();
    if (n < 0 || n > params.L) throw std::invalid_argument("gram_matrix: level out of range");
    FockBasis basis(params.d, n);
    const size_t off = basis.level_offset(n);
    const size_t m = basis.level_size(n);

    LevelGram<S> g;
    g.level = n;
    g.basis.reserve(m);
    for (size_t i = 0; i < m; ++i) g.basis.push_back(basis.word(off + i));
    g.entries = DenseMatrix<S>(m, m);
    if (n == 0) {
        g.entries(0, 0) = S(1);
        return g;
    }

    const auto qp = detail::power_table(params.q, n * (n - 1) / 2);
    const auto tp = detail::power_table(params.t, n * (n - 1) / 2);
    for_each_permutation(n, [&](const Permutation& pi) {
        const S weight = qp[static_cast<size_t>(inversions(pi))] *
                         tp[static_cast<size_t>(coinversions(pi))];
        TensorWord v(static_cast<size_t>(n));
        for (size_t wi = 0; wi < m; ++wi) {
            const TensorWord& w = g.basis[wi];
            // the permutation contributes to exactly one column per row:
            // v[pi(k)] = w[k]
            for (int k = 0; k < n; ++k)
                v[static_cast<size_t>(pi.images[static_cast<size_t>(k)] - 1)] =
                    w[static_cast<size_t>(k)];
            size_t vi = 0;
            for (std::uint8_t c : v) vi = vi * static_cast<size_t>(params.d) +
                                          static_cast<size_t>(c - 1);
            g.entries(wi, vi) += weight;
        }
    });
    return g;
}

/// <g, h>_{q,t} for basis words by the defining deletion recursion.
template <class S>
S word_inner_product(const TensorWord& g, const TensorWord& h, const S& q, const S& t) {
    if (g.size() != h.size()) return S(0);
    const size_t n = g.size();
    if (n == 0) return S(1);
    S acc(0);
    S qp(1);
    const auto tp = detail::power_table(t, static_cast<int>(n) - 1);
    TensorWord rest_g(g.begin() + 1, g.end());
    for (size_t k = 0; k < n; ++k) {
        if (h[k] == g[0]) {
            TensorWord rest_h;
            rest_h.reserve(n - 1);
            for (size_t j = 0; j < n; ++j)
                if (j != k) rest_h.push_back(h[j]);
            acc += qp * tp[n - 1 - k] * word_inner_product(rest_g, rest_h, q, t);
        }
        qp = qp * q;
    }
    return acc;
}

/// Sesquilinear inner product of finitely supported vectors, built on the
/// recursion (words of different lengths are orthogonal).  Scalars here are
/// real, so the conjugation on the first slot is trivial.
template <class S>
S inner_product(const FockParams<S>& params, const FockVector<S>& x, const FockVector<S>& y) {
    params.validate();
    S acc(0);
    for (const auto& [w, xw] : x) {
        if (static_cast<int>(w.size()) > params.L)
            throw std::invalid_argument("inner_product: vector exceeds truncation level");
        for (const auto& [v, yv] : y) {
            if (w.size() != v.size()) continue;
            acc += xw * yv * word_inner_product(w, v, params.q, params.t);
        }
    }
    for (const auto& [v, yv] : y)
        if (static_cast<int>(v.size()) > params.L)
            throw std::invalid_argument("inner_product: vector exceeds truncation level");
    return acc;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// a(f) w = sum_k q^{k-1} t^{n-k} <f, w_k>  w with w_k deleted.
template <class S>
FockVector<S> apply_annihilation(const std::vector<S>& f, const TensorWord& w, const S& q,
                                 const S& t) {
    FockVector<S> out;
    const size_t n = w.size();
    if (n == 0) return out;
    S qp(1);
    const auto tp = detail::power_table(t, static_cast<int>(n) - 1);
    for (size_t k = 0; k < n; ++k) {
        const S& fk = f[static_cast<size_t>(w[k] - 1)];
        if (!(fk == S(0))) {
            TensorWord rest;
            rest.reserve(n - 1);
            for (size_t j = 0; j < n; ++j)
                if (j != k) rest.push_back(w[j]);
            out[rest] += qp * tp[n - 1 - k] * fk;
        }
        qp = qp * q;
    }
    return out;
}

/// a(f)* w = f (x) w; words that would leave the truncation are dropped.
template <class S>
FockVector<S> apply_creation(const std::vector<S>& f, const TensorWord& w, int L) {
    FockVector<S> out;
    if (static_cast<int>(w.size()) == L) return out;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == S(0)) continue;
        TensorWord nw;
        nw.reserve(w.size() + 1);
        nw.push_back(static_cast<std::uint8_t>(i + 1));
        nw.insert(nw.end(), w.begin(), w.end());
        out[nw] += f[i];
    }
    return out;
}

template <class S>
DenseMatrix<S> annihilation_matrix(const FockParams<S>& params, const std::vector<S>& f) {
    params.validate();
    FockBasis basis(params.d, params.L);
    DenseMatrix<S> m(basis.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        for (const auto& [w, c] : apply_annihilation(f, basis.word(j), params.q, params.t))
            m(basis.index(w), j) += c;
    }
    return m;
}

template <class S>
DenseMatrix<S> creation_matrix(const FockParams<S>& params, const std::vector<S>& f) {
    params.validate();
    FockBasis basis(params.d, params.L);
    DenseMatrix<S> m(basis.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        for (const auto& [w, c] : apply_creation(f, basis.word(j), params.L))
            m(basis.index(w), j) += c;
    }
    return m;
}

/// Diagonal matrix of t^{|word|}.
template <class S>
DenseMatrix<S> number_weight_matrix(const FockParams<S>& params) {
    params.validate();
    FockBasis basis(params.d, params.L);
    DenseMatrix<S> m(basis.size(), basis.size());
    const auto tp = detail::power_table(params.t, params.L);
    for (size_t j = 0; j < basis.size(); ++j) m(j, j) = tp[basis.word(j).size()];
    return m;
}

/// Standard basis vector e_i as a coefficient vector.
template <class S>
std::vector<S> basis_vector(int d, int i) {
    std::vector<S> f(static_cast<size_t>(d), S(0));
    f[static_cast<size_t>(i - 1)] = S(1);
    return f;
}

// ---------------------------------------------------------------------------
// Relation checks
// ---------------------------------------------------------------------------

/// max over f in {e_i}, basis xi with |xi| < L and basis eta of
/// |<a(f)* xi, eta> - <xi, a(f) eta>|.  Exactly 0 in rational mode.
template <class S>
S check_adjoint(const FockParams<S>& params) {
    params.validate();
    FockBasis basis(params.d, params.L);
    std::vector<LevelGram<S>> grams;
    for (int n = 0; n <= params.L; ++n) grams.push_back(gram_matrix(params, n));

    auto sparse_inner = [&](const FockVector<S>& a, const FockVector<S>& b) {
        S acc(0);
        for (const auto& [w, cw] : a)
            for (const auto& [v, cv] : b) {
                if (w.size() != v.size()) continue;
                const auto& g = grams[w.size()];
                FockBasis lvl(params.d, static_cast<int>(w.size()));
                acc += cw * cv *
                       g.entries(lvl.index(w) - lvl.level_offset(static_cast<int>(w.size())),
                                 lvl.index(v) - lvl.level_offset(static_cast<int>(v.size())));
            }
        return acc;
    };

    S worst(0);
    for (int fi = 1; fi <= params.d; ++fi) {
        const auto f = basis_vector<S>(params.d, fi);
        for (size_t xi = 0; xi < basis.size(); ++xi) {
            const TensorWord& x = basis.word(xi);
            if (static_cast<int>(x.size()) >= params.L) continue;
            const FockVector<S> ax = apply_creation(f, x, params.L);
            const FockVector<S> xv{{x, S(1)}};
            for (size_t ei = basis.level_offset(static_cast<int>(x.size()) + 1);
                 ei < basis.level_offset(static_cast<int>(x.size()) + 2); ++ei) {
                const TensorWord& e = basis.word(ei);
                const FockVector<S> ev{{e, S(1)}};
                const FockVector<S> ae = apply_annihilation(f, e, params.q, params.t);
                const S lhs = sparse_inner(ax, ev);
                const S rhs = sparse_inner(xv, ae);
                const S r = abs_value<S>(lhs - rhs);
                if (r > worst) worst = r;
            }
        }
    }
    return worst;
}

/// Entrywise max of |(a(f) a(g)* - q a(g)* a(f) - <f,g> t^N) x| over basis
/// words x of length <= L-1 (creation at the top level is truncated, so the
/// identity is only meaningful below it).
template <class S>
S check_commutation(const FockParams<S>& params, const std::vector<S>& f,
                    const std::vector<S>& g) {
    params.validate();
    FockBasis basis(params.d, params.L);
    S fg(0);
    for (size_t i = 0; i < f.size(); ++i) fg += f[i] * g[i];
    const auto tp = detail::power_table(params.t, params.L);

    S worst(0);
    for (size_t xi = 0; xi < basis.size(); ++xi) {
        const TensorWord& x = basis.word(xi);
        if (static_cast<int>(x.size()) > params.L - 1) continue;
        FockVector<S> acc;
        for (const auto& [w, c] : apply_creation(g, x, params.L))
            for (const auto& [v, cv] : apply_annihilation(f, w, params.q, params.t))
                acc[v] += c * cv;
        for (const auto& [w, c] : apply_annihilation(f, x, params.q, params.t))
            for (const auto& [v, cv] : apply_creation(g, w, params.L))
                acc[v] -= params.q * c * cv;
        acc[x] -= fg * tp[x.size()];
        for (const auto& [w, c] : acc) {
            const S r = abs_value<S>(c);
            if (r > worst) worst = r;
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Vacuum moments
// ---------------------------------------------------------------------------

template <class S>
struct OperatorLetter {
    std::vector<S> f;      // one-particle vector over e_1..e_d
    bool creation = false;  // false: a(f), true: a(f)*
};

/// <Omega, op_1 op_2 ... op_k Omega>_{q,t}, applied right to left.  Strict:
/// a word that climbs above level L raises TruncationError, and words longer
/// than 2L are rejected outright.
template <class S>
S vacuum_moment(const FockParams<S>& params, const std::vector<OperatorLetter<S>>& word) {
    params.validate();
    if (static_cast<int>(word.size()) > 2 * params.L)
        throw GuardError("vacuum_moment: word longer than 2L");
    FockVector<S> state{{TensorWord{}, S(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        FockVector<S> next;
        for (const auto& [w, c] : state) {
            if (it->creation) {
                if (static_cast<int>(w.size()) == params.L)
                    throw TruncationError("vacuum_moment: word climbs above level L");
                for (const auto& [v, cv] : apply_creation(it->f, w, params.L))
                    next[v] += c * cv;
            } else {
                for (const auto& [v, cv] : apply_annihilation(it->f, w, params.q, params.t))
                    next[v] += c * cv;
            }
        }
        state = std::move(next);
    }
    auto it = state.find(TensorWord{});
    return it == state.end() ? S(0) : it->second;
}

/// <Omega, (a(f) + a(f)*)^power Omega>_{q,t} through the truncating matrices.
/// Requires ceil(power/2) <= L: a path contributing to the vacuum amplitude
/// never climbs above half its length, so truncation cannot reach it.
template <class S>
S field_vacuum_moment(const FockParams<S>& params, const std::vector<S>& f, int power) {
    params.validate();
    if (power < 0) throw std::invalid_argument("field_vacuum_moment: power must be >= 0");
    if ((power + 1) / 2 > params.L)
        throw GuardError("field_vacuum_moment: power/2 exceeds truncation level L");
    FockBasis basis(params.d, params.L);
    DenseMatrix<S> s = annihilation_matrix(params, f);
    const DenseMatrix<S> c = creation_matrix(params, f);
    for (size_t i = 0; i < s.rows(); ++i)
        for (size_t j = 0; j < s.cols(); ++j) s(i, j) += c(i, j);
    std::vector<S> x(basis.size(), S(0));
    x[0] = S(1);
    for (int k = 0; k < power; ++k) x = s.apply(x);
    return x[0];
}

// ---------------------------------------------------------------------------
// Numeric spectral layer (double precision only; see fock_spectral.cpp)
// ---------------------------------------------------------------------------

struct PositivityReport {
    double min_eigenvalue = 0.0;
    double max_abs_eigenvalue = 0.0;
    bool positive_definite = false;
};

/// Smallest eigenvalue of the level-n Gram with the spec'd tolerance
/// (1e-10 * spectral radius); |q| = t reports semi-definite, not an error.
PositivityReport positivity_report(const FockParams<double>& params, int n);

/// n* = ceil((log(1-q) - log(1-t)) / (log t - log q)), the maximizer of
/// t^n - q^n.  Domain 0 < q < t < 1.
int n_star(double q, double t);

/// Three-case closed form for ||a(f)||; `case_label` receives which branch
/// applied when non-null.
double theoretical_norm(double q, double t, double f_norm, std::string* case_label = nullptr);

/// Largest singular value of the annihilation matrix in the deformed
/// geometry, i.e. of G^{1/2} A G^{-1/2} over the truncated basis.
double operator_norm(const FockParams<double>& params, const std::vector<double>& f);

}  // namespace qtfock

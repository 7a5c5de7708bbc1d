#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtfock {

/// Exact polynomial in the two formal variables q and t.
///
/// Terms are keyed by (q-exponent, t-exponent); zero coefficients are never
/// stored, so the zero polynomial has an empty term map.  The coefficient
/// type is a template parameter because the same arithmetic is used with
/// arbitrary-precision integers (counting polynomials) and with rationals.
template <class Coef>
class BasicBivarPoly {
  public:
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, Coef>;

    BasicBivarPoly() = default;
    BasicBivarPoly(int c) {  // NOLINT: implicit by design, rings need literals
        if (c != 0) terms_[{0, 0}] = Coef(c);
    }
    explicit BasicBivarPoly(Coef c) {
        if (c != 0) terms_[{0, 0}] = std::move(c);
    }

    static BasicBivarPoly monomial(int q_exp, int t_exp, Coef c) {
        BasicBivarPoly p;
        if (q_exp < 0 || t_exp < 0) throw std::invalid_argument("negative exponent");
        if (c != 0) p.terms_[{q_exp, t_exp}] = std::move(c);
        return p;
    }
    static BasicBivarPoly var_q() { return monomial(1, 0, Coef(1)); }
    static BasicBivarPoly var_t() { return monomial(0, 1, Coef(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Coef coefficient(int q_exp, int t_exp) const {
        auto it = terms_.find({q_exp, t_exp});
        return it == terms_.end() ? Coef(0) : it->second;
    }

    void add_term(int q_exp, int t_exp, const Coef& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace({q_exp, t_exp}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BasicBivarPoly& operator+=(const BasicBivarPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    BasicBivarPoly& operator-=(const BasicBivarPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, Coef(-c));
        return *this;
    }
    friend BasicBivarPoly operator+(BasicBivarPoly a, const BasicBivarPoly& b) { return a += b; }
    friend BasicBivarPoly operator-(BasicBivarPoly a, const BasicBivarPoly& b) { return a -= b; }
    BasicBivarPoly operator-() const {
        BasicBivarPoly r;
        for (const auto& [k, c] : terms_) r.terms_[k] = Coef(-c);
        return r;
    }

    friend BasicBivarPoly operator*(const BasicBivarPoly& a, const BasicBivarPoly& b) {
        BasicBivarPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    BasicBivarPoly& operator*=(const BasicBivarPoly& o) { return *this = *this * o; }

    friend bool operator==(const BasicBivarPoly& a, const BasicBivarPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicBivarPoly& a, const BasicBivarPoly& b) {
        return !(a == b);
    }

    /// Substitute numeric values for q and t.  R must be a ring that Coef
    /// converts into (double, mpq_class, ...).
    template <class R>
    R eval(const R& q, const R& t) const {
        R acc(0);
        for (const auto& [k, c] : terms_) {
            R term(coef_to<R>(c));
            for (int i = 0; i < k.first; ++i) term *= q;
            for (int i = 0; i < k.second; ++i) term *= t;
            acc += term;
        }
        return acc;
    }

    /// Exchange the roles of q and t.
    BasicBivarPoly swap_vars() const {
        BasicBivarPoly r;
        for (const auto& [k, c] : terms_) r.terms_[{k.second, k.first}] = c;
        return r;
    }

    /// Specialize t = 1 (polynomial in q alone).
    BasicBivarPoly at_t_one() const {
        BasicBivarPoly r;
        for (const auto& [k, c] : terms_) r.add_term(k.first, 0, c);
        return r;
    }

    /// Specialize q = 0 (polynomial in t alone).
    BasicBivarPoly at_q_zero() const {
        BasicBivarPoly r;
        for (const auto& [k, c] : terms_)
            if (k.first == 0) r.terms_[k] = c;
        return r;
    }

    Coef coefficient_sum() const {
        Coef s(0);
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

    int q_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int t_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    /// Dense coefficient list in one variable, for polynomials supported on a
    /// single axis (used by the t-Catalan / Touchard-Riordan CLI output).
    std::vector<Coef> dense_coefficients_t() const {
        std::vector<Coef> out(static_cast<size_t>(t_degree()) + 1, Coef(0));
        for (const auto& [k, c] : terms_) {
            if (k.first != 0) throw std::logic_error("polynomial is not univariate in t");
            out[static_cast<size_t>(k.second)] = c;
        }
        return out;
    }
    std::vector<Coef> dense_coefficients_q() const {
        std::vector<Coef> out(static_cast<size_t>(q_degree()) + 1, Coef(0));
        for (const auto& [k, c] : terms_) {
            if (k.second != 0) throw std::logic_error("polynomial is not univariate in q");
            out[static_cast<size_t>(k.first)] = c;
        }
        return out;
    }

  private:
    template <class R>
    static R coef_to(const Coef& c) {
        if constexpr (std::is_same_v<R, double> && std::is_same_v<Coef, mpz_class>) {
            return c.get_d();
        } else if constexpr (std::is_same_v<R, double> && std::is_same_v<Coef, mpq_class>) {
            return c.get_d();
        } else {
            return R(c);
        }
    }

    TermMap terms_;
};

using BivarPoly = BasicBivarPoly<mpz_class>;

/// [n]_{q,t} = t^{n-1} + q t^{n-2} + ... + q^{n-1}.  The summation form is
/// used so that q == t is handled without a 0/0.
template <class R>
R qt_integer(int n, const R& q, const R& t) {
    if (n < 0) throw std::invalid_argument("qt_integer: n must be >= 0");
    std::vector<R> t_pow;
    t_pow.reserve(static_cast<size_t>(n));
    R tp(1);
    for (int i = 0; i < n; ++i) {
        t_pow.push_back(tp);
        tp = tp * t;
    }
    R acc(0);
    R qp(1);
    for (int i = 1; i <= n; ++i) {
        acc += qp * t_pow[static_cast<size_t>(n - i)];
        qp = qp * q;
    }
    return acc;
}

/// [n]_{q,t} as an exact polynomial.
inline BivarPoly qt_integer_poly(int n) {
    return qt_integer<BivarPoly>(n, BivarPoly::var_q(), BivarPoly::var_t());
}

}  // namespace qtfock

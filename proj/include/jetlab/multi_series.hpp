#ifndef JETLAB_MULTI_SERIES_HPP
#define JETLAB_MULTI_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <jetlab/gauss_rat.hpp>

namespace jetlab
{

/// 0-based position of an indeterminate within a MultiSeries.
struct VarIndex {
    std::size_t index;
};

/// Sparse formal power series over Q(i) in a fixed number of variables,
/// truncated by total degree.
///
/// Terms of total degree above `trunc_degree()` are never stored, and no
/// stored coefficient is zero. Terms are kept in ascending graded-lex order:
/// by total degree, then lexicographically with variable 0 most significant.
///
/// Monomials are packed into a single 64-bit key: the top byte holds the
/// total degree and byte 6-i holds the exponent of variable i. Multiplying
/// monomials is then integer addition on keys, and key order is exactly the
/// graded-lex order.
class MultiSeries
{
public:
    static constexpr std::size_t max_vars = 7;
    static constexpr unsigned max_degree = 255;

    using Exponents = std::vector<unsigned>;
    using Key = std::uint64_t;

    struct Term {
        Key key;
        GaussRat coeff;
    };

    MultiSeries(std::size_t nvars, unsigned trunc_degree) : nvars_(nvars), degree_(trunc_degree)
    {
        if (nvars == 0 || nvars > max_vars) {
            throw std::invalid_argument("MultiSeries supports between 1 and " + std::to_string(max_vars)
                                        + " variables, got " + std::to_string(nvars));
        }
        if (trunc_degree > max_degree) {
            throw std::invalid_argument("truncation degree " + std::to_string(trunc_degree) + " exceeds "
                                        + std::to_string(max_degree));
        }
    }

    static MultiSeries constant(std::size_t nvars, unsigned D, const GaussRat &c)
    {
        MultiSeries r(nvars, D);
        if (!c.is_zero()) {
            r.terms_.push_back({0, c});
        }
        return r;
    }

    static MultiSeries variable(std::size_t nvars, unsigned D, VarIndex v)
    {
        return monomial(nvars, D, unit_exponents(nvars, v), GaussRat(1));
    }

    static MultiSeries monomial(std::size_t nvars, unsigned D, const Exponents &e, const GaussRat &c)
    {
        MultiSeries r(nvars, D);
        const Key k = r.encode(e);
        if (!c.is_zero() && key_degree(k) <= D) {
            r.terms_.push_back({k, c});
        }
        return r;
    }

    /// Builds a series from (exponents, coefficient) pairs. Repeated
    /// exponents accumulate; terms above the truncation degree are dropped.
    static MultiSeries from_terms(std::size_t nvars, unsigned D,
                                  const std::vector<std::pair<Exponents, GaussRat>> &terms)
    {
        MultiSeries r(nvars, D);
        std::unordered_map<Key, GaussRat> acc;
        for (const auto &[e, c] : terms) {
            const Key k = r.encode(e);
            if (key_degree(k) <= D) {
                acc[k] += c;
            }
        }
        r.adopt(std::move(acc));
        return r;
    }

    std::size_t nvars() const noexcept
    {
        return nvars_;
    }
    unsigned trunc_degree() const noexcept
    {
        return degree_;
    }
    const std::vector<Term> &terms() const noexcept
    {
        return terms_;
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    static unsigned key_degree(Key k) noexcept
    {
        return static_cast<unsigned>(k >> 56);
    }

    unsigned exponent(Key k, VarIndex v) const noexcept
    {
        return static_cast<unsigned>((k >> (8 * (6 - v.index))) & 0xffU);
    }

    Exponents exponents(Key k) const
    {
        Exponents e(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            e[i] = exponent(k, VarIndex{i});
        }
        return e;
    }

    Key encode(const Exponents &e) const
    {
        if (e.size() != nvars_) {
            throw std::invalid_argument("exponent tuple has length " + std::to_string(e.size()) + ", expected "
                                        + std::to_string(nvars_));
        }
        unsigned total = 0;
        Key k = 0;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] > max_degree) {
                throw std::invalid_argument("exponent exceeds " + std::to_string(max_degree));
            }
            total += e[i];
            k |= static_cast<Key>(e[i]) << (8 * (6 - i));
        }
        if (total > max_degree) {
            throw std::invalid_argument("monomial degree exceeds " + std::to_string(max_degree));
        }
        return k | (static_cast<Key>(total) << 56);
    }

    static Key var_key(VarIndex v, unsigned power = 1)
    {
        return (static_cast<Key>(power) << (8 * (6 - v.index))) | (static_cast<Key>(power) << 56);
    }

    /// Coefficient of the monomial with the given exponents (exact zero when
    /// absent).
    GaussRat coeff(const Exponents &e) const
    {
        const Key k = encode(e);
        if (key_degree(k) > degree_) {
            throw std::out_of_range("monomial of degree " + std::to_string(key_degree(k))
                                    + " is beyond the truncation degree " + std::to_string(degree_));
        }
        return coeff_by_key(k);
    }

    GaussRat coeff_by_key(Key k) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term &t, Key key) { return t.key < key; });
        if (it != terms_.end() && it->key == k) {
            return it->coeff;
        }
        return GaussRat();
    }

    GaussRat constant_term() const
    {
        if (!terms_.empty() && terms_.front().key == 0) {
            return terms_.front().coeff;
        }
        return GaussRat();
    }

    /// Lowest total degree carrying a nonzero coefficient; D + 1 for zero.
    unsigned valuation() const noexcept
    {
        return terms_.empty() ? degree_ + 1 : key_degree(terms_.front().key);
    }

    /// Highest total degree carrying a nonzero coefficient; 0 for zero.
    unsigned max_term_degree() const noexcept
    {
        return terms_.empty() ? 0 : key_degree(terms_.back().key);
    }

    /// Drops terms above D' (which must not exceed the current degree).
    MultiSeries truncated(unsigned D) const
    {
        if (D > degree_) {
            throw std::invalid_argument("cannot raise truncation degree from " + std::to_string(degree_) + " to "
                                        + std::to_string(D));
        }
        MultiSeries r(nvars_, D);
        for (const auto &t : terms_) {
            if (key_degree(t.key) > D) {
                break;
            }
            r.terms_.push_back(t);
        }
        return r;
    }

    /// Reinterprets the stored terms at a higher truncation degree, treating
    /// the unknown terms as zero. Only valid where the caller knows the
    /// extra terms cannot influence the degrees it reads back.
    MultiSeries padded(unsigned D) const
    {
        if (D < degree_) {
            return truncated(D);
        }
        MultiSeries r(nvars_, D);
        r.terms_ = terms_;
        return r;
    }

    MultiSeries operator-() const
    {
        MultiSeries r(*this);
        for (auto &t : r.terms_) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    MultiSeries &operator+=(const MultiSeries &o)
    {
        check_compatible(o);
        merge(o, false);
        return *this;
    }
    MultiSeries &operator-=(const MultiSeries &o)
    {
        check_compatible(o);
        merge(o, true);
        return *this;
    }
    MultiSeries &operator*=(const GaussRat &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &t : terms_) {
            t.coeff = t.coeff * c;
        }
        return *this;
    }

    friend MultiSeries operator+(MultiSeries a, const MultiSeries &b)
    {
        a += b;
        return a;
    }
    friend MultiSeries operator-(MultiSeries a, const MultiSeries &b)
    {
        a -= b;
        return a;
    }
    friend MultiSeries operator*(MultiSeries a, const GaussRat &c)
    {
        a *= c;
        return a;
    }
    friend MultiSeries operator*(const GaussRat &c, MultiSeries a)
    {
        a *= c;
        return a;
    }
    friend MultiSeries operator*(const MultiSeries &a, const MultiSeries &b)
    {
        a.check_compatible(b);
        return multiply(a, b, a.degree_);
    }

    /// Product truncated at `D`. The operands may carry different
    /// truncation degrees; the caller is responsible for `D` not exceeding
    /// the degree through which the product is actually determined,
    /// min(a.valuation() + b.D, b.valuation() + a.D).
    static MultiSeries multiply(const MultiSeries &a, const MultiSeries &b, unsigned D)
    {
        if (a.nvars_ != b.nvars_) {
            throw std::invalid_argument("incompatible series");
        }
        MultiSeries r(a.nvars_, D);
        if (a.terms_.empty() || b.terms_.empty()) {
            return r;
        }
        const MultiSeries &big = a.size() >= b.size() ? a : b;
        const MultiSeries &small = a.size() >= b.size() ? b : a;
        if (small.size() == 1) {
            const auto &[sk, sc] = small.terms_.front();
            const unsigned sd = key_degree(sk);
            for (const auto &t : big.terms_) {
                if (key_degree(t.key) + sd > D) {
                    break;
                }
                r.terms_.push_back({t.key + sk, t.coeff * sc});
            }
            return r;
        }
        std::unordered_map<Key, GaussRat> acc;
        acc.reserve(big.size() * 2);
        for (const auto &ts : small.terms_) {
            const unsigned ds = key_degree(ts.key);
            if (ds > D) {
                break;
            }
            const unsigned limit = D - ds;
            for (const auto &tb : big.terms_) {
                if (key_degree(tb.key) > limit) {
                    break;
                }
                acc[ts.key + tb.key].add_product(ts.coeff, tb.coeff);
            }
        }
        r.adopt(std::move(acc));
        return r;
    }

    friend bool operator==(const MultiSeries &a, const MultiSeries &b)
    {
        if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) {
                return false;
            }
        }
        return true;
    }
    friend bool operator!=(const MultiSeries &a, const MultiSeries &b)
    {
        return !(a == b);
    }

    /// Applies `fn` to every coefficient, keeping exponents.
    template <typename Fn>
    MultiSeries map_coefficients(Fn &&fn) const
    {
        MultiSeries r(nvars_, degree_);
        for (const auto &t : terms_) {
            GaussRat c = fn(t.coeff);
            if (!c.is_zero()) {
                r.terms_.push_back({t.key, std::move(c)});
            }
        }
        return r;
    }

    /// Rewrites every term through `fn(exponents) -> exponents` into a series
    /// with `nvars` variables at degree D. Terms landing above D are dropped.
    template <typename Fn>
    MultiSeries remap_exponents(std::size_t nvars, unsigned D, Fn &&fn) const
    {
        MultiSeries r(nvars, D);
        std::unordered_map<Key, GaussRat> acc;
        for (const auto &t : terms_) {
            const Key k = r.encode(fn(exponents(t.key)));
            if (key_degree(k) <= D) {
                acc[k] += t.coeff;
            }
        }
        r.adopt(std::move(acc));
        return r;
    }

    std::string to_string(const std::vector<std::string> &names = {}) const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &t : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += t.coeff.to_string();
            for (std::size_t i = 0; i < nvars_; ++i) {
                const unsigned e = exponent(t.key, VarIndex{i});
                if (e == 0) {
                    continue;
                }
                s += "*" + (i < names.size() ? names[i] : "x" + std::to_string(i));
                if (e > 1) {
                    s += "^" + std::to_string(e);
                }
            }
        }
        return s + " + O(" + std::to_string(degree_ + 1) + ")";
    }

    friend std::ostream &operator<<(std::ostream &os, const MultiSeries &s)
    {
        return os << s.to_string();
    }

    static Exponents unit_exponents(std::size_t nvars, VarIndex v)
    {
        if (v.index >= nvars) {
            throw std::out_of_range("variable index " + std::to_string(v.index) + " out of range for "
                                    + std::to_string(nvars) + " variables");
        }
        Exponents e(nvars, 0);
        e[v.index] = 1;
        return e;
    }

    // Takes ownership of accumulated terms, dropping zeros and sorting.
    void adopt(std::unordered_map<Key, GaussRat> &&acc)
    {
        terms_.clear();
        terms_.reserve(acc.size());
        for (auto &[k, c] : acc) {
            if (!c.is_zero()) {
                terms_.push_back({k, std::move(c)});
            }
        }
        std::sort(terms_.begin(), terms_.end(), [](const Term &x, const Term &y) { return x.key < y.key; });
    }

private:
    void check_compatible(const MultiSeries &o) const
    {
        if (nvars_ != o.nvars_ || degree_ != o.degree_) {
            throw std::invalid_argument("incompatible series");
        }
    }

    void merge(const MultiSeries &o, bool subtract)
    {
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            if (j == o.terms_.end() || (i != terms_.end() && i->key < j->key)) {
                out.push_back(std::move(*i));
                ++i;
            } else if (i == terms_.end() || j->key < i->key) {
                out.push_back({j->key, subtract ? -j->coeff : j->coeff});
                ++j;
            } else {
                GaussRat c = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
                if (!c.is_zero()) {
                    out.push_back({i->key, std::move(c)});
                }
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
    }

    std::size_t nvars_;
    unsigned degree_;
    std::vector<Term> terms_;
};

/// Coefficient-wise complex conjugation.
inline MultiSeries conjugate_series(const MultiSeries &f)
{
    return f.map_coefficients([](const GaussRat &c) { return c.conj(); });
}

/// Formal partial derivative; the result is exact through degree D - 1.
inline MultiSeries partial_derivative(const MultiSeries &f, VarIndex v)
{
    if (v.index >= f.nvars()) {
        throw std::out_of_range("variable index out of range");
    }
    if (f.trunc_degree() == 0) {
        throw std::domain_error("cannot differentiate a series truncated at degree 0");
    }
    MultiSeries r(f.nvars(), f.trunc_degree() - 1);
    std::unordered_map<MultiSeries::Key, GaussRat> acc;
    const auto step = MultiSeries::var_key(v);
    for (const auto &t : f.terms()) {
        const unsigned e = f.exponent(t.key, v);
        if (e == 0) {
            continue;
        }
        acc[t.key - step] = t.coeff * GaussRat(static_cast<long>(e));
    }
    r.adopt(std::move(acc));
    return r;
}

namespace detail
{

// Powers of one substituted series, truncated at a fixed degree, computed
// lazily.
class PowerCache
{
public:
    PowerCache(const MultiSeries &base, unsigned D) : base_(base.truncated(std::min(D, base.trunc_degree()))), degree_(D)
    {
        powers_.push_back(MultiSeries::constant(base.nvars(), D, GaussRat(1)));
    }

    const MultiSeries &get(unsigned e)
    {
        while (powers_.size() <= e) {
            powers_.push_back(MultiSeries::multiply(powers_.back(), base_, degree_));
        }
        return powers_[e];
    }

private:
    MultiSeries base_;
    unsigned degree_;
    std::vector<MultiSeries> powers_;
};

} // namespace detail

/// Substitutes args[i] for variable i of f.
///
/// Every substituted series must have zero constant term. The result lives
/// in the variables of the arguments and is exact through degree
/// min(f.D, args D).
inline MultiSeries compose(const MultiSeries &f, std::span<const MultiSeries> args)
{
    if (args.size() != f.nvars()) {
        throw std::invalid_argument("compose: expected " + std::to_string(f.nvars()) + " substitutions, got "
                                    + std::to_string(args.size()));
    }
    const std::size_t nv = args.front().nvars();
    const unsigned Da = args.front().trunc_degree();
    for (const auto &a : args) {
        if (a.nvars() != nv || a.trunc_degree() != Da) {
            throw std::invalid_argument("incompatible series");
        }
        if (!a.constant_term().is_zero()) {
            throw std::domain_error("nonzero constant term in substitution");
        }
    }
    const unsigned D = std::min(f.trunc_degree(), Da);
    std::vector<detail::PowerCache> powers;
    powers.reserve(args.size());
    std::vector<unsigned> vals;
    for (const auto &a : args) {
        powers.emplace_back(a, D);
        vals.push_back(a.valuation());
    }

    // Horner over the last variable: f = sum_e x_last^e * f_e(x_0..), with
    // the inner compositions needed only through D - e * val(arg_last).
    struct Rec {
        const MultiSeries &f;
        std::vector<detail::PowerCache> &powers;
        const std::vector<unsigned> &vals;
        std::size_t nv;

        // Terms of f are given as (exponents, coeff) restricted to vars [0, level].
        MultiSeries run(const std::vector<const MultiSeries::Term *> &terms, std::size_t level, unsigned deg)
        {
            MultiSeries out(nv, deg);
            if (terms.empty()) {
                return out;
            }
            std::vector<std::vector<const MultiSeries::Term *>> by_exp;
            for (const auto *t : terms) {
                const unsigned e = f.exponent(t->key, VarIndex{level});
                if (by_exp.size() <= e) {
                    by_exp.resize(e + 1);
                }
                by_exp[e].push_back(t);
            }
            for (unsigned e = 0; e < by_exp.size(); ++e) {
                if (by_exp[e].empty()) {
                    continue;
                }
                const unsigned lift = e * vals[level];
                if (lift > deg) {
                    break;
                }
                const MultiSeries &p = powers[level].get(e);
                if (level == 0) {
                    GaussRat c;
                    for (const auto *t : by_exp[e]) {
                        c += t->coeff;
                    }
                    out += p.truncated(deg) * c;
                    continue;
                }
                MultiSeries inner = run(by_exp[e], level - 1, deg - lift);
                if (e == 0) {
                    out += inner;
                } else {
                    out += MultiSeries::multiply(p, inner, deg);
                }
            }
            return out;
        }
    };

    std::vector<const MultiSeries::Term *> all;
    all.reserve(f.size());
    for (const auto &t : f.terms()) {
        if (MultiSeries::key_degree(t.key) <= D) {
            all.push_back(&t);
        }
    }
    Rec rec{f, powers, vals, nv};
    return rec.run(all, f.nvars() - 1, D);
}

inline MultiSeries compose(const MultiSeries &f, std::initializer_list<MultiSeries> args)
{
    std::vector<MultiSeries> v(args);
    return compose(f, std::span<const MultiSeries>(v));
}

/// Multiplicative inverse through degree D, by Newton iteration
/// y <- y (2 - f y) with precision doubling.
inline MultiSeries reciprocal(const MultiSeries &f)
{
    const GaussRat c0 = f.constant_term();
    if (c0.is_zero()) {
        throw std::domain_error("not a unit");
    }
    const unsigned D = f.trunc_degree();
    MultiSeries y = MultiSeries::constant(f.nvars(), 0, inverse(c0));
    unsigned p = 0;
    while (p < D) {
        p = std::min(D, 2 * p + 1);
        y = y.padded(p);
        const MultiSeries fp = f.truncated(p);
        const MultiSeries two = MultiSeries::constant(f.nvars(), p, GaussRat(2));
        y = y * (two - fp * y);
    }
    return y;
}

/// Principal square root of a series with constant term exactly 1.
///
/// Computes the inverse root y ~ f^{-1/2} by the division-free Newton step
/// y <- y (3 - f y^2) / 2 with precision doubling, then returns f * y.
inline MultiSeries sqrt_principal(const MultiSeries &f)
{
    if (f.constant_term() != GaussRat(1)) {
        throw std::domain_error("sqrt requires unit constant term");
    }
    const unsigned D = f.trunc_degree();
    const GaussRat half = GaussRat(Rational(1, 2));
    MultiSeries y = MultiSeries::constant(f.nvars(), 0, GaussRat(1));
    unsigned p = 0;
    while (p < D) {
        p = std::min(D, 2 * p + 1);
        y = y.padded(p);
        const MultiSeries fp = f.truncated(p);
        const MultiSeries three = MultiSeries::constant(f.nvars(), p, GaussRat(3));
        y = (y * (three - fp * (y * y))) * half;
    }
    return f * y;
}

/// f_n(z) = n! * [w^n] f(z, w), as a univariate series at degree D - n.
inline MultiSeries w_slice(const MultiSeries &f, unsigned n)
{
    if (f.nvars() != 2) {
        throw std::invalid_argument("w_slice expects a bivariate series in (z, w)");
    }
    if (n > f.trunc_degree()) {
        throw std::out_of_range("w_slice order " + std::to_string(n) + " exceeds truncation degree "
                                + std::to_string(f.trunc_degree()));
    }
    mpz_class fact = 1;
    for (unsigned k = 2; k <= n; ++k) {
        fact *= k;
    }
    const GaussRat scale{Rational(fact)};
    MultiSeries r(1, f.trunc_degree() - n);
    std::unordered_map<MultiSeries::Key, GaussRat> acc;
    for (const auto &t : f.terms()) {
        if (f.exponent(t.key, VarIndex{1}) != n) {
            continue;
        }
        const unsigned j = f.exponent(t.key, VarIndex{0});
        acc[r.encode({j})] = t.coeff * scale;
    }
    r.adopt(std::move(acc));
    return r;
}

} // namespace jetlab

#endif

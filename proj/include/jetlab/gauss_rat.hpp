#ifndef JETLAB_GAUSS_RAT_HPP
#define JETLAB_GAUSS_RAT_HPP

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace jetlab
{

/// Arbitrary-precision rational. GMP keeps it canonical (positive
/// denominator, lowest terms) after every arithmetic operation.
using Rational = mpq_class;

namespace detail
{

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        if (t.empty()) {
            return false;
        }
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') {
                return false;
            }
        }
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) {
            throw std::invalid_argument("malformed rational literal '" + s + "'");
        }
        return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
    }
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    mpz_class d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in rational literal '" + s + "'");
    }
    Rational q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational &q)
{
    return q.get_str();
}

// Exact square root of a non-negative rational, if it is a perfect square.
inline bool rational_sqrt(const Rational &q, Rational &out)
{
    if (sgn(q) < 0) {
        return false;
    }
    mpz_class n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
        return false;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

} // namespace detail

/// Element of Q(i): a complex number with exact rational real and
/// imaginary parts.
class GaussRat
{
public:
    GaussRat() = default;
    GaussRat(long re) : re_(re) {}
    GaussRat(Rational re) : re_(std::move(re)) {}
    GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i()
    {
        return GaussRat(Rational(0), Rational(1));
    }

    /// Parses "p/q" strings for both parts.
    static GaussRat parse(std::string_view re, std::string_view im = "0")
    {
        return GaussRat(detail::parse_rational(re), detail::parse_rational(im));
    }

    const Rational &re() const noexcept
    {
        return re_;
    }
    const Rational &im() const noexcept
    {
        return im_;
    }

    bool is_zero() const noexcept
    {
        return sgn(re_) == 0 && sgn(im_) == 0;
    }
    bool is_real() const noexcept
    {
        return sgn(im_) == 0;
    }

    /// |x|^2 = x * conj(x), exact.
    Rational norm() const
    {
        return re_ * re_ + im_ * im_;
    }

    GaussRat conj() const
    {
        return GaussRat(re_, -im_);
    }

    GaussRat operator-() const
    {
        return GaussRat(-re_, -im_);
    }

    GaussRat &operator+=(const GaussRat &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRat &operator-=(const GaussRat &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRat &operator*=(const GaussRat &o)
    {
        *this = *this * o;
        return *this;
    }
    GaussRat &operator/=(const GaussRat &o)
    {
        *this = *this / o;
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat &b)
    {
        a += b;
        return a;
    }
    friend GaussRat operator-(GaussRat a, const GaussRat &b)
    {
        a -= b;
        return a;
    }
    friend GaussRat operator*(const GaussRat &a, const GaussRat &b)
    {
        const bool ar = a.is_real(), br = b.is_real();
        if (ar && br) {
            return GaussRat(a.re_ * b.re_);
        }
        if (ar) {
            return GaussRat(a.re_ * b.re_, a.re_ * b.im_);
        }
        if (br) {
            return GaussRat(a.re_ * b.re_, a.im_ * b.re_);
        }
        return GaussRat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussRat operator/(const GaussRat &a, const GaussRat &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("zero divisor");
        }
        if (b.is_real()) {
            return GaussRat(a.re_ / b.re_, a.im_ / b.re_);
        }
        const Rational n = b.norm();
        const GaussRat p = a * b.conj();
        return GaussRat(p.re_ / n, p.im_ / n);
    }

    /// this += a * b without materializing the product.
    void add_product(const GaussRat &a, const GaussRat &b)
    {
        const bool ar = a.is_real(), br = b.is_real();
        if (ar && br) {
            re_ += a.re_ * b.re_;
            return;
        }
        if (ar) {
            re_ += a.re_ * b.re_;
            im_ += a.re_ * b.im_;
            return;
        }
        if (br) {
            re_ += a.re_ * b.re_;
            im_ += a.im_ * b.re_;
            return;
        }
        re_ += a.re_ * b.re_;
        re_ -= a.im_ * b.im_;
        im_ += a.re_ * b.im_;
        im_ += a.im_ * b.re_;
    }

    friend bool operator==(const GaussRat &a, const GaussRat &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat &a, const GaussRat &b)
    {
        return !(a == b);
    }

    std::string to_string() const
    {
        if (is_real()) {
            return re_.get_str();
        }
        if (sgn(re_) == 0) {
            return im_.get_str() + "*i";
        }
        std::string s = "(" + re_.get_str();
        s += sgn(im_) < 0 ? " - " : " + ";
        s += Rational(abs(im_)).get_str() + "*i)";
        return s;
    }

    friend std::ostream &operator<<(std::ostream &os, const GaussRat &x)
    {
        return os << x.to_string();
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussRat conj(const GaussRat &x)
{
    return x.conj();
}

inline GaussRat inverse(const GaussRat &x)
{
    return GaussRat(1) / x;
}

} // namespace jetlab

#endif

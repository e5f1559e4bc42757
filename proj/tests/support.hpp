#ifndef JETLAB_TESTS_SUPPORT_HPP
#define JETLAB_TESTS_SUPPORT_HPP

#include <ostream>
#include <random>

#include <jetlab/automorphisms.hpp>
#include <jetlab/multi_series.hpp>

namespace jetlab
{

inline void PrintTo(const GaussRat &x, std::ostream *os)
{
    *os << x.to_string();
}

inline void PrintTo(const MultiSeries &s, std::ostream *os)
{
    *os << s.to_string();
}

inline void PrintTo(const AutParams &p, std::ostream *os)
{
    *os << p.to_string();
}

} // namespace jetlab

namespace testing_support
{

using jetlab::AutParams;
using jetlab::GaussRat;
using jetlab::MultiSeries;
using jetlab::Rational;

class Gen
{
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi)
    {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }

    Rational rational(long num = 5, long den = 4)
    {
        Rational q(integer(-num, num), integer(1, den));
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational(long num = 5, long den = 4)
    {
        Rational q;
        do {
            q = rational(num, den);
        } while (sgn(q) == 0);
        return q;
    }

    GaussRat gauss(long num = 5, long den = 4)
    {
        return {rational(num, den), rational(num, den)};
    }

    /// Unimodular point of Q(i) from a Pythagorean parametrization.
    GaussRat unimodular()
    {
        const long a = integer(0, 4), b = integer(1, 4);
        Rational re(a * a - b * b, a * a + b * b), im(2 * a * b, a * a + b * b);
        re.canonicalize();
        im.canonicalize();
        const GaussRat u{re, im};
        static const GaussRat units[] = {GaussRat(1), GaussRat::i(), GaussRat(-1), -GaussRat::i()};
        return u * units[integer(0, 3)];
    }

    AutParams params()
    {
        return {unimodular(), nonzero_rational(), gauss(3, 3), rational(8, 3)};
    }

    /// Random series with about `terms` nonzero coefficients.
    MultiSeries series(std::size_t nvars, unsigned D, unsigned terms, bool zero_constant = false)
    {
        std::vector<std::pair<MultiSeries::Exponents, GaussRat>> t;
        for (unsigned k = 0; k < terms; ++k) {
            MultiSeries::Exponents e(nvars, 0);
            const unsigned deg = static_cast<unsigned>(integer(zero_constant ? 1 : 0, D));
            for (unsigned d = 0; d < deg; ++d) {
                ++e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))];
            }
            t.emplace_back(e, gauss(4, 3));
        }
        return MultiSeries::from_terms(nvars, D, t);
    }

    std::mt19937 &engine()
    {
        return rng_;
    }

private:
    std::mt19937 rng_;
};

} // namespace testing_support

#endif

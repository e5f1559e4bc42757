#ifndef JETLAB_HYPERSURFACE_HPP
#define JETLAB_HYPERSURFACE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <jetlab/gauss_rat.hpp>
#include <jetlab/multi_series.hpp>

// The hypersurface M = { Im w = Re w * (1 - sqrt(1 - |z|^4)) / |z|^2 } is
// handled through its complexified form w = conj(w) * S(z conj(z)) with
// S(t) = i t + sqrt(1 - t^2). Residual series live in the variables
// (z, chi, tau) standing for (z, conj(z), conj(w)).

namespace jetlab
{

inline constexpr VarIndex var_z{0};
inline constexpr VarIndex var_w{1};
inline constexpr VarIndex var_chi{1};
inline constexpr VarIndex var_tau{2};

inline const std::vector<std::string> &map_var_names()
{
    static const std::vector<std::string> names{"z", "w"};
    return names;
}

inline const std::vector<std::string> &residual_var_names()
{
    static const std::vector<std::string> names{"z", "chi", "tau"};
    return names;
}

/// S(t) = i t + sqrt(1 - t^2) through degree D, univariate in t.
inline MultiSeries s_series(unsigned D)
{
    const auto t = MultiSeries::variable(1, D, VarIndex{0});
    const auto one = MultiSeries::constant(1, D, GaussRat(1));
    return GaussRat::i() * t + sqrt_principal(one - t * t);
}

/// A map H = (f, w g) in normal form, both components bivariate in (z, w)
/// at a common truncation degree.
struct MapFG {
    MultiSeries f;
    MultiSeries g;

    unsigned trunc_degree() const noexcept
    {
        return f.trunc_degree();
    }

    friend bool operator==(const MapFG &a, const MapFG &b)
    {
        return a.f == b.f && a.g == b.g;
    }
};

inline MapFG identity_map(unsigned D)
{
    return {MultiSeries::variable(2, D, var_z), MultiSeries::constant(2, D, GaussRat(1))};
}

/// Checks f(0,0) = 0 and f_z(0,0) g(0,0) != 0.
inline void validate_normal_form(const MapFG &H)
{
    const bool shape_ok = H.f.nvars() == 2 && H.g.nvars() == 2 && H.f.trunc_degree() == H.g.trunc_degree()
                          && H.f.trunc_degree() >= 1;
    if (!shape_ok || !H.f.constant_term().is_zero() || H.f.coeff({1, 0}).is_zero()
        || H.g.constant_term().is_zero()) {
        throw std::domain_error("not an invertible normal-form map");
    }
}

namespace detail
{

// Series in (z, chi, tau) from a series in (z, w) with w -> tau, z -> chi.
inline MultiSeries bar_lift(const MultiSeries &h, unsigned D)
{
    return conjugate_series(h).remap_exponents(3, D, [](const MultiSeries::Exponents &e) {
        return MultiSeries::Exponents{0, e[0], e[1]};
    });
}

// S(z chi) as a trivariate series.
inline MultiSeries s_of_z_chi(unsigned D)
{
    return s_series(D).remap_exponents(3, D, [](const MultiSeries::Exponents &e) {
        return MultiSeries::Exponents{e[0], e[0], 0};
    });
}

struct ResidualPieces {
    MultiSeries sz;   // S(z chi)
    MultiSeries s;    // S(t), univariate
    std::vector<MultiSeries> subst; // [z, tau S(z chi)]
};

inline ResidualPieces residual_pieces(unsigned D)
{
    ResidualPieces p{s_of_z_chi(D), s_series(D), {}};
    const auto tau = MultiSeries::variable(3, D, var_tau);
    p.subst.push_back(MultiSeries::variable(3, D, var_z));
    p.subst.push_back(tau * p.sz);
    return p;
}

} // namespace detail

/// Phi^H(z, chi, tau) = -S(z chi) g(z, tau S(z chi))
///                      + gbar(chi, tau) S(f(z, tau S(z chi)) fbar(chi, tau)),
/// exact through the map's truncation degree. H is a formal automorphism
/// of (M, 0) through that degree iff the result is zero.
inline MultiSeries phi_residual(const MapFG &H)
{
    validate_normal_form(H);
    const unsigned D = H.trunc_degree();
    const auto pieces = detail::residual_pieces(D);
    const auto F = compose(H.f, pieces.subst);
    const auto G = compose(H.g, pieces.subst);
    const auto Fb = detail::bar_lift(H.f, D);
    const auto Gb = detail::bar_lift(H.g, D);
    const MultiSeries X = F * Fb;
    const MultiSeries SX = compose(pieces.s, {X});
    return Gb * SX - pieces.sz * G;
}

/// Residual of the uncancelled identity
///   H2(z, tau S(z chi)) - conj(H2)(chi, tau) S(H1(z, tau S(z chi)) conj(H1)(chi, tau))
/// with H = (f, w g). It is computed one degree higher than the map, which
/// is exactly the range the data determines since f and w g both vanish at
/// the origin.
inline MultiSeries defining_residual(const MapFG &H)
{
    validate_normal_form(H);
    const unsigned D = H.trunc_degree() + 1;
    const auto f = H.f.padded(D);
    const auto h2 = MultiSeries::multiply(MultiSeries::variable(2, D, var_w), H.g, D);
    const auto pieces = detail::residual_pieces(D);
    const auto H1 = compose(f, pieces.subst);
    const auto H2 = compose(h2, pieces.subst);
    const auto H1b = detail::bar_lift(f, D);
    const auto H2b = detail::bar_lift(h2, D);
    const MultiSeries SX = compose(pieces.s, {H1 * H1b});
    return H2 - H2b * SX;
}

inline bool full_defining_check(const MapFG &H)
{
    return defining_residual(H).is_zero();
}

/// A map written as a full pair (H1, H2), used for the sphere model.
struct FullMap {
    MultiSeries h1;
    MultiSeries h2;
};

/// Residual of the sphere model Im w = |z|^2 complexified as
/// w = tau + 2 i z chi:
///   H2(z, tau + 2i z chi) - conj(H2)(chi, tau) - 2i H1(z, tau + 2i z chi) conj(H1)(chi, tau).
inline MultiSeries sphere_residual(const FullMap &H)
{
    if (H.h1.nvars() != 2 || H.h2.nvars() != 2 || H.h1.trunc_degree() != H.h2.trunc_degree()) {
        throw std::invalid_argument("sphere map components must be bivariate at a common degree");
    }
    if (!H.h1.constant_term().is_zero() || !H.h2.constant_term().is_zero()) {
        throw std::domain_error("sphere map must vanish at the origin");
    }
    const unsigned D = H.h1.trunc_degree();
    const auto z = MultiSeries::variable(3, D, var_z);
    const auto chi = MultiSeries::variable(3, D, var_chi);
    const auto tau = MultiSeries::variable(3, D, var_tau);
    const GaussRat two_i(Rational(0), Rational(2));
    const std::vector<MultiSeries> subst{z, tau + two_i * (z * chi)};
    const auto A1 = compose(H.h1, subst);
    const auto A2 = compose(H.h2, subst);
    const auto B1 = detail::bar_lift(H.h1, D);
    const auto B2 = detail::bar_lift(H.h2, D);
    return A2 - B2 - two_i * (A1 * B1);
}

/// Lowest graded-lex term of a nonzero series, for diagnostics.
inline std::optional<std::pair<MultiSeries::Exponents, GaussRat>> first_nonzero(const MultiSeries &s)
{
    if (s.is_zero()) {
        return std::nullopt;
    }
    const auto &t = s.terms().front();
    return std::make_pair(s.exponents(t.key), t.coeff);
}

} // namespace jetlab

#endif

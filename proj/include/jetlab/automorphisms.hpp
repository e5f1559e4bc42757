#ifndef JETLAB_AUTOMORPHISMS_HPP
#define JETLAB_AUTOMORPHISMS_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <jetlab/gauss_rat.hpp>
#include <jetlab/hypersurface.hpp>
#include <jetlab/multi_series.hpp>

namespace jetlab
{

/// Parameters (eps, r, alpha, s) of the stability group element
///   H(z, w) = ( eps (z + alpha w) / theta, r w / theta ),
///   theta   = (1 - 2i conj(alpha) z w - (s + i |alpha|^2) w^2)^{1/2},
/// with |eps| = 1, r real nonzero, s real.
struct AutParams {
    GaussRat eps{1};
    Rational r{1};
    GaussRat alpha{};
    Rational s{0};

    friend bool operator==(const AutParams &a, const AutParams &b)
    {
        return a.eps == b.eps && a.r == b.r && a.alpha == b.alpha && a.s == b.s;
    }

    std::string to_string() const
    {
        return "(eps=" + eps.to_string() + ", r=" + r.get_str() + ", alpha=" + alpha.to_string()
               + ", s=" + s.get_str() + ")";
    }
};

inline void validate(const AutParams &p)
{
    if (p.eps.norm() != 1 || sgn(p.r) == 0) {
        throw std::invalid_argument("invalid parameters");
    }
}

/// theta_{alpha,s} through degree D, the principal root with theta(0) = 1.
inline MultiSeries theta_series(const GaussRat &alpha, const Rational &s, unsigned D)
{
    const auto z = MultiSeries::variable(2, D, var_z);
    const auto w = MultiSeries::variable(2, D, var_w);
    const GaussRat zw_coeff = GaussRat(Rational(0), Rational(2)) * alpha.conj();
    const GaussRat ww_coeff(s, alpha.norm());
    const auto radicand = MultiSeries::constant(2, D, GaussRat(1)) - zw_coeff * (z * w) - ww_coeff * (w * w);
    return sqrt_principal(radicand);
}

inline MapFG build_automorphism(const AutParams &p, unsigned D)
{
    validate(p);
    const auto z = MultiSeries::variable(2, D, var_z);
    const auto w = MultiSeries::variable(2, D, var_w);
    const auto inv_theta = reciprocal(theta_series(p.alpha, p.s, D));
    return {p.eps * ((z + p.alpha * w) * inv_theta), GaussRat(p.r) * inv_theta};
}

/// Normal form of H1 o H2. With H = (f, w g):
///   f = f1(f2, w g2),  g = g2 * g1(f2, w g2).
inline MapFG compose_maps(const MapFG &H1, const MapFG &H2)
{
    validate_normal_form(H1);
    validate_normal_form(H2);
    if (H1.trunc_degree() != H2.trunc_degree()) {
        throw std::invalid_argument("compose_maps: degree mismatch");
    }
    const unsigned D = H1.trunc_degree();
    const std::vector<MultiSeries> inner{H2.f, MultiSeries::variable(2, D, var_w) * H2.g};
    return {compose(H1.f, inner), H2.g * compose(H1.g, inner)};
}

/// Sphere-model automorphism fixing 0 for Im w = |z|^2:
///   ( r eps (z + alpha w), r^2 w ) / (1 - 2i conj(alpha) z - (s + i |alpha|^2) w).
inline FullMap build_sphere_automorphism(const AutParams &p, unsigned D)
{
    validate(p);
    const auto z = MultiSeries::variable(2, D, var_z);
    const auto w = MultiSeries::variable(2, D, var_w);
    const auto den = MultiSeries::constant(2, D, GaussRat(1)) - GaussRat(Rational(0), Rational(2)) * p.alpha.conj() * z
                     - GaussRat(p.s, p.alpha.norm()) * w;
    const auto inv = reciprocal(den);
    return {GaussRat(p.r) * p.eps * ((z + p.alpha * w) * inv), GaussRat(p.r * p.r) * (w * inv)};
}

// Abstract group coordinates.
//
// The coordinates are zeta = r * conj(eps), alpha, s, and the product is
//   (zeta, alpha, s) . (zeta', alpha', s')
//     = (zeta zeta', alpha + zeta alpha', s + |zeta|^2 s' - 2 Im(alpha conj(zeta) conj(alpha')))
// which models composition in the order  H_{e . e'} = H_{e'} o H_{e}.
// On |zeta| = 1 (in particular on the Heisenberg subgroup zeta = 1) the
// |zeta|^2 factor is 1. Without it the product is not associative.
//
// The map (eps, r) -> zeta is two-to-one: (eps, r) and (-eps, -r) share
// zeta while their maps differ by the central element -id. The sign of r
// is carried separately when going back to parameters.

struct GroupElem {
    GaussRat zeta{1};
    GaussRat alpha{};
    Rational s{0};

    friend bool operator==(const GroupElem &a, const GroupElem &b)
    {
        return a.zeta == b.zeta && a.alpha == b.alpha && a.s == b.s;
    }

    std::string to_string() const
    {
        return "(zeta=" + zeta.to_string() + ", alpha=" + alpha.to_string() + ", s=" + s.get_str() + ")";
    }
};

inline void validate(const GroupElem &e)
{
    if (e.zeta.is_zero()) {
        throw std::invalid_argument("group element needs nonzero zeta");
    }
}

inline GroupElem group_compose(const GroupElem &a, const GroupElem &b)
{
    validate(a);
    validate(b);
    const GaussRat twist = a.alpha * a.zeta.conj() * b.alpha.conj();
    return {a.zeta * b.zeta, a.alpha + a.zeta * b.alpha, a.s + a.zeta.norm() * b.s - 2 * twist.im()};
}

/// The product exactly as it is usually displayed, without the |zeta|^2
/// factor. Agrees with group_compose whenever |zeta| = 1.
inline GroupElem group_compose_unscaled(const GroupElem &a, const GroupElem &b)
{
    validate(a);
    validate(b);
    const GaussRat twist = a.alpha * a.zeta.conj() * b.alpha.conj();
    return {a.zeta * b.zeta, a.alpha + a.zeta * b.alpha, a.s + b.s - 2 * twist.im()};
}

inline GroupElem group_identity()
{
    return {};
}

inline GroupElem group_inverse(const GroupElem &e)
{
    validate(e);
    const GaussRat zi = inverse(e.zeta);
    return {zi, -(zi * e.alpha), -e.s / e.zeta.norm()};
}

inline GroupElem params_to_group(const AutParams &p)
{
    validate(p);
    return {GaussRat(p.r) * p.eps.conj(), p.alpha, p.s};
}

/// Inverse of params_to_group on the branch sign(r) = r_sign. Requires
/// |zeta| rational, which holds for every zeta coming from parameters.
inline AutParams group_to_params(const GroupElem &e, int r_sign = 1)
{
    validate(e);
    if (r_sign != 1 && r_sign != -1) {
        throw std::invalid_argument("r_sign must be +1 or -1");
    }
    Rational modulus;
    if (!detail::rational_sqrt(e.zeta.norm(), modulus)) {
        throw std::domain_error("|zeta| is not rational; no Gaussian-rational parameters exist");
    }
    const Rational r = r_sign * modulus;
    return {e.zeta.conj() / GaussRat(r), r, e.alpha, e.s};
}

inline int r_sign(const AutParams &p)
{
    return sgn(p.r) < 0 ? -1 : 1;
}

/// Parameters of H_{p1} o H_{p2} predicted by the group law.
inline AutParams predicted_composition(const AutParams &p1, const AutParams &p2)
{
    const GroupElem e = group_compose(params_to_group(p2), params_to_group(p1));
    return group_to_params(e, r_sign(p1) * r_sign(p2));
}

inline AutParams inverse_params(const AutParams &p)
{
    return group_to_params(group_inverse(params_to_group(p)), r_sign(p));
}

struct RadiusEstimate {
    double value;      // ratio form, |c_{2k-2} / c_{2k}|^{1/2}
    double root_test;  // |c_{2k}|^{-1/(2k)}
    unsigned k;        // index of the highest coefficient used, w^{2k}
};

/// Radius of convergence in w of g = (1 - s w^2)^{-1/2}, the second
/// normal-form factor of the map (1, 1, 0, s), estimated from the exact
/// coefficients through w^order. Only the final step leaves exact
/// arithmetic.
inline RadiusEstimate radius_estimate(const AutParams &p, unsigned order)
{
    validate(p);
    if (p.eps != GaussRat(1) || p.r != 1 || !p.alpha.is_zero()) {
        throw std::invalid_argument("radius_estimate expects parameters of the form (1, 1, 0, s)");
    }
    if (sgn(p.s) == 0) {
        throw std::domain_error("infinite radius");
    }
    if (order < 10) {
        throw std::invalid_argument("radius_estimate needs order >= 10");
    }
    const auto w = MultiSeries::variable(1, order, VarIndex{0});
    const auto one = MultiSeries::constant(1, order, GaussRat(1));
    const auto g = reciprocal(sqrt_principal(one - GaussRat(p.s) * (w * w)));
    const unsigned k = order / 2;
    const Rational hi = g.coeff({2 * k}).re();
    const Rational lo = g.coeff({2 * k - 2}).re();
    const double ratio = std::sqrt(std::fabs(Rational(lo / hi).get_d()));
    // |c|^{-1/(2k)} via logarithms, since c itself can overflow a double.
    const Rational ahi = abs(hi);
    auto log_z = [](const mpz_class &z) {
        long e = 0;
        const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
        return std::log(m) + static_cast<double>(e) * std::log(2.0);
    };
    const double log_c = log_z(ahi.get_num()) - log_z(ahi.get_den());
    const double root = std::exp(-log_c / (2.0 * k));
    return {ratio, root, k};
}

} // namespace jetlab

#endif

#include <cmath>

#include <gtest/gtest.h>

#include <jetlab/automorphisms.hpp>
#include <jetlab/hypersurface.hpp>

#include "support.hpp"

using namespace jetlab;
using testing_support::Gen;

namespace
{

const GaussRat I = GaussRat::i();

AutParams sample_a()
{
    return {GaussRat(Rational(3, 5), Rational(4, 5)), Rational(2), GaussRat(1, 1), Rational(7)};
}

AutParams sample_b()
{
    return {I, Rational(-3, 7), GaussRat(Rational(0), Rational(-2, 3)), Rational(-5, 2)};
}

MultiSeries w_coefficient(const MultiSeries &f)
{
    return w_slice(f, 1);
}

} // namespace

TEST(Theta, LowOrderTerms)
{
    const MultiSeries th = theta_series(GaussRat(1), Rational(0), 2);
    const MultiSeries expected = MultiSeries::from_terms(
        2, 2, {{{0, 0}, GaussRat(1)}, {{1, 1}, -I}, {{0, 2}, GaussRat(Rational(0), Rational(-1, 2))}});
    EXPECT_EQ(th, expected);
}

TEST(Theta, SquaresToRadicand)
{
    Gen g(301);
    for (int k = 0; k < 10; ++k) {
        const AutParams p = g.params();
        const unsigned D = 8;
        const MultiSeries th = theta_series(p.alpha, p.s, D);
        const MultiSeries z = MultiSeries::variable(2, D, var_z), w = MultiSeries::variable(2, D, var_w);
        const MultiSeries rad = MultiSeries::constant(2, D, GaussRat(1)) - GaussRat(0, 2) * p.alpha.conj() * z * w
                                - GaussRat(p.s, p.alpha.norm()) * w * w;
        EXPECT_EQ(th * th, rad);
    }
}

TEST(Automorphism, FirstOrderInW)
{
    // f_1 = eps alpha + i eps conj(alpha) z^2, g_1 = i r conj(alpha) z.
    const AutParams p = sample_a();
    const MapFG H = build_automorphism(p, 6);
    const MultiSeries f1 = w_coefficient(H.f).truncated(2);
    const MultiSeries g1 = w_coefficient(H.g).truncated(2);
    EXPECT_EQ(f1, MultiSeries::from_terms(1, 2, {{{0}, p.eps * p.alpha}, {{2}, I * p.eps * p.alpha.conj()}}));
    EXPECT_EQ(g1, MultiSeries::from_terms(1, 2, {{{1}, I * GaussRat(p.r) * p.alpha.conj()}}));
}

TEST(Automorphism, RandomParametersPreserveM)
{
    Gen g(302);
    for (int k = 0; k < 8; ++k) {
        const MapFG H = build_automorphism(g.params(), 8);
        EXPECT_TRUE(phi_residual(H).is_zero());
    }
}

TEST(Automorphism, InvalidParameters)
{
    EXPECT_THROW(build_automorphism({GaussRat(2), Rational(1), GaussRat(), Rational(0)}, 4), std::invalid_argument);
    EXPECT_THROW(build_automorphism({GaussRat(1), Rational(0), GaussRat(), Rational(0)}, 4), std::invalid_argument);
}

TEST(Automorphism, FactorizationThroughHeisenbergPart)
{
    Gen g(303);
    for (int k = 0; k < 6; ++k) {
        AutParams p = g.params();
        const unsigned D = 7;
        const MapFG lhs = build_automorphism(p, D);
        const MapFG linear = build_automorphism({p.eps, p.r, GaussRat(), Rational(0)}, D);
        const MapFG heis = build_automorphism({GaussRat(1), Rational(1), p.alpha, p.s}, D);
        EXPECT_EQ(lhs, compose_maps(linear, heis));
    }
}

TEST(Automorphism, FactorizationWithRInPlaceOfSFails)
{
    const AutParams p = sample_a();
    const unsigned D = 5;
    const MapFG linear = build_automorphism({p.eps, p.r, GaussRat(), Rational(0)}, D);
    const MapFG wrong = build_automorphism({GaussRat(1), Rational(1), p.alpha, p.r}, D);
    EXPECT_NE(build_automorphism(p, D), compose_maps(linear, wrong));
}

TEST(GroupLaw, WorkedProduct)
{
    const GroupElem a{GaussRat(2), GaussRat(1), Rational(0)};
    const GroupElem b{GaussRat(3), I, Rational(0)};
    EXPECT_EQ(group_compose(a, b), (GroupElem{GaussRat(6), GaussRat(1, 2), Rational(4)}));
}

TEST(GroupLaw, AssociativeWithIdentityAndInverse)
{
    Gen g(304);
    for (int k = 0; k < 50; ++k) {
        const GroupElem a = params_to_group(g.params()), b = params_to_group(g.params()), c = params_to_group(g.params());
        EXPECT_EQ(group_compose(group_compose(a, b), c), group_compose(a, group_compose(b, c)));
        EXPECT_EQ(group_compose(a, group_identity()), a);
        EXPECT_EQ(group_compose(group_identity(), a), a);
        EXPECT_EQ(group_compose(a, group_inverse(a)), group_identity());
        EXPECT_EQ(group_compose(group_inverse(a), a), group_identity());
    }
}

TEST(GroupLaw, UnscaledProductIsNotAssociative)
{
    const GroupElem a{GaussRat(2), GaussRat(), Rational(0)};
    const GroupElem b{GaussRat(1), GaussRat(1), Rational(0)};
    const GroupElem c{GaussRat(1), I, Rational(0)};
    EXPECT_NE(group_compose_unscaled(group_compose_unscaled(a, b), c),
              group_compose_unscaled(a, group_compose_unscaled(b, c)));
}

TEST(GroupLaw, MatchesSeriesComposition)
{
    Gen g(305);
    const unsigned D = 7;
    for (int k = 0; k < 8; ++k) {
        const AutParams p1 = g.params(), p2 = g.params();
        const MapFG composed = compose_maps(build_automorphism(p1, D), build_automorphism(p2, D));
        EXPECT_EQ(composed, build_automorphism(predicted_composition(p1, p2), D)) << p1.to_string() << " o " << p2.to_string();
    }
}

TEST(GroupLaw, KnownComposition)
{
    const AutParams expected{GaussRat(Rational(-4, 5), Rational(3, 5)), Rational(-6, 7),
                             GaussRat(Rational(-3, 7), Rational(-5, 21)), Rational(-25, 14)};
    EXPECT_EQ(predicted_composition(sample_a(), sample_b()), expected);
    EXPECT_EQ(compose_maps(build_automorphism(sample_a(), 6), build_automorphism(sample_b(), 6)),
              build_automorphism(expected, 6));
}

TEST(GroupLaw, AlternativesDisagreeWithSeries)
{
    const unsigned D = 6;
    const AutParams p1 = sample_a(), p2 = sample_b();
    const MapFG composed = compose_maps(build_automorphism(p1, D), build_automorphism(p2, D));
    const int sign = r_sign(p1) * r_sign(p2);
    // The unscaled law.
    const AutParams unscaled = group_to_params(group_compose_unscaled(params_to_group(p2), params_to_group(p1)), sign);
    EXPECT_NE(composed, build_automorphism(unscaled, D));
    // The opposite orientation.
    const AutParams flipped = group_to_params(group_compose(params_to_group(p1), params_to_group(p2)), sign);
    EXPECT_NE(composed, build_automorphism(flipped, D));
    // zeta = eps r instead of r conj(eps).
    const GroupElem e1{p1.eps * GaussRat(p1.r), p1.alpha, p1.s}, e2{p2.eps * GaussRat(p2.r), p2.alpha, p2.s};
    const GroupElem e = group_compose(e2, e1);
    Rational m;
    ASSERT_TRUE(detail::rational_sqrt(e.zeta.norm(), m));
    const AutParams naive{e.zeta / GaussRat(sign * m), sign * m, e.alpha, e.s};
    EXPECT_NE(composed, build_automorphism(naive, D));
}

TEST(GroupLaw, HeisenbergSubgroup)
{
    Gen g(306);
    const unsigned D = 7;
    for (int k = 0; k < 6; ++k) {
        const AutParams p1{GaussRat(1), Rational(1), g.gauss(), g.rational()};
        const AutParams p2{GaussRat(1), Rational(1), g.gauss(), g.rational()};
        const GroupElem e = group_compose_unscaled(params_to_group(p2), params_to_group(p1));
        EXPECT_EQ(e, group_compose(params_to_group(p2), params_to_group(p1)));
        const GaussRat twist = p2.alpha * p1.alpha.conj();
        EXPECT_EQ(e, (GroupElem{GaussRat(1), p1.alpha + p2.alpha, p1.s + p2.s - 2 * twist.im()}));
        EXPECT_EQ(compose_maps(build_automorphism(p1, D), build_automorphism(p2, D)),
                  build_automorphism(group_to_params(e), D));
    }
}

TEST(GroupLaw, InverseComposesToIdentity)
{
    Gen g(307);
    for (int k = 0; k < 6; ++k) {
        const AutParams p = g.params();
        const MapFG H = build_automorphism(p, 7), Hi = build_automorphism(inverse_params(p), 7);
        EXPECT_EQ(compose_maps(H, Hi), identity_map(7));
        EXPECT_EQ(compose_maps(Hi, H), identity_map(7));
    }
}

TEST(GroupLaw, SignPairSharesZeta)
{
    const AutParams minus{GaussRat(-1), Rational(-1), GaussRat(), Rational(0)};
    EXPECT_EQ(params_to_group(minus), group_identity());
    EXPECT_NE(build_automorphism(minus, 4), identity_map(4));
    EXPECT_EQ(group_to_params(group_identity(), -1), minus);
    EXPECT_EQ(group_to_params(group_identity(), 1), AutParams{});
    EXPECT_THROW(group_to_params(GroupElem{GaussRat(2, 1), GaussRat(), Rational(0)}), std::domain_error);
}

TEST(Sphere, AutomorphismsPreserveSphere)
{
    Gen g(308);
    EXPECT_TRUE(sphere_residual(build_sphere_automorphism({GaussRat(1), Rational(1), GaussRat(Rational(0), Rational(1, 2)), Rational(1)}, 10)).is_zero());
    for (int k = 0; k < 6; ++k) {
        AutParams p = g.params();
        p.r = abs(p.r);
        EXPECT_TRUE(sphere_residual(build_sphere_automorphism(p, 8)).is_zero()) << p.to_string();
    }
}

TEST(Radius, RatioEstimateWithinFivePercent)
{
    for (const Rational &s : {Rational(4), Rational(1), Rational(1, 4), Rational(-9)}) {
        const RadiusEstimate est = radius_estimate({GaussRat(1), Rational(1), GaussRat(), s}, 40);
        const double expected = 1.0 / std::sqrt(std::fabs(s.get_d()));
        EXPECT_LT(std::fabs(est.value - expected) / expected, 0.05) << s.get_str();
        EXPECT_EQ(est.k, 20U);
        EXPECT_GT(est.root_test, expected);
    }
}

TEST(Radius, Preconditions)
{
    EXPECT_THROW(radius_estimate({GaussRat(1), Rational(1), GaussRat(), Rational(0)}, 40), std::domain_error);
    EXPECT_THROW(radius_estimate({GaussRat(1), Rational(1), GaussRat(), Rational(1)}, 8), std::invalid_argument);
    EXPECT_THROW(radius_estimate({I, Rational(1), GaussRat(), Rational(1)}, 40), std::invalid_argument);
}

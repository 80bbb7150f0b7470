// Spatial fields, absorption and scattering models, sampled checks
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rte/core/errors.hpp"
#include "rte/core/sampling.hpp"
#include "rte/gauge/gauge.hpp"
#include "rte/media/medium.hpp"

using namespace rte;

namespace
{
template<int D>
Vec<D> fd_gradient(SpatialField<D> const& f, Vec<D> x, double h = 1e-5)
{
    Vec<D> g;
    for (int i = 0; i < D; ++i)
    {
        Vec<D> e = Vec<D>::axis(i);
        g[i] = (f(x + h * e) - f(x - h * e)) / (2 * h);
    }
    return g;
}
}  // namespace

TEST(SpatialField, GradientsMatchFiniteDifferences)
{
    std::vector<SpatialField<3>> fields{
        SpatialField<3>::gaussian({{0.1, 0.2, -0.1}}, 0.5, 1.3),
        SpatialField<3>::bump({{0, 0.1, 0}}, 0.8, 2.0),
        SpatialField<3>::polynomial({{0.5, {1, 2, 0}}, {-1.0, {0, 0, 3}}}),
        SpatialField<3>::radius_squared(),
    };
    Halton h(5);
    for (auto const& f : fields)
    {
        for (int i = 0; i < 40; ++i)
        {
            Vec<3> x = uniform_ball_point<3>(h(i, 0), h(i, 1), h(i, 2));
            Vec<3> g = f.gradient(x);
            Vec<3> r = fd_gradient(f, x);
            for (int c = 0; c < 3; ++c)
                EXPECT_NEAR(g[c], r[c], 1e-7);
        }
    }
}

TEST(SpatialField, BumpIsCompactlySupported)
{
    auto b = SpatialField<2>::bump({{0.2, 0}}, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(b({{0.2, 0}}), 1.0);
    EXPECT_EQ(b({{0.8, 0}}), 0.0);
    EXPECT_EQ(b({{0.71, 0}}), 0.0);
    EXPECT_GT(b({{0.6, 0}}), 0.0);
}

TEST(Absorption, KindsAndSymmetry)
{
    auto c = make_constant_absorption<2>(0.7);
    EXPECT_DOUBLE_EQ(c({{0.1, 0.2}}, {{1, 0}}), 0.7);
    EXPECT_TRUE(c.isotropic());

    auto ls = make_line_symmetric_absorption<3>(SpatialField<3>::constant(0.5),
                                                SpatialField<3>::radius_squared(),
                                                {{0, 0, 1}});
    Vec<3> x{{0.3, 0.1, -0.2}};
    Vec<3> t = Direction<3>(Vec<3>{{1, 2, 2}}).vec();
    EXPECT_DOUBLE_EQ(ls(x, t), ls(x, -t));
    EXPECT_NEAR(ls(x, t), 0.5 + 0.14 * 4.0 / 9.0, 1e-14);
    EXPECT_TRUE(ls.line_symmetric());

    // an odd angular factor breaks line symmetry
    auto odd = make_general_sum_absorption<2>(
        {SeparableTerm<2>{SpatialField<2>::constant(1.0), {Vec<2>::axis(0), {0.5, 0.2}}}});
    EXPECT_FALSE(odd.line_symmetric());
    EXPECT_NEAR(odd({}, {{1, 0}}) - odd({}, {{-1, 0}}), 0.4, 1e-15);
}

TEST(Scattering, SphereMomentsMatchQuadrature)
{
    for (int j = 0; j <= 6; ++j)
    {
        EXPECT_NEAR(sphere_moment<2>(j),
                    oracle::sphere_average_2d([j](double m) { return std::pow(m, j); }),
                    1e-12);
        EXPECT_NEAR(sphere_moment<3>(j),
                    oracle::sphere_average_3d([j](double m) { return std::pow(m, j); }),
                    1e-12);
    }
}

TEST(Scattering, TotalClosedFormAgreesWithQuadrature)
{
    auto k = ScatteringKernel<3>::dot_product(SpatialField<3>::constant(0.4),
                                              {1.0, 0.6, 0.3});
    auto q = make_sphere_quadrature<3>(1024);
    Vec<3> t = Direction<3>(Vec<3>{{0.3, -0.4, 0.5}}).vec();
    double quad = q.integrate([&](Direction<3> const& tp) { return k({}, t, tp.vec()); });
    EXPECT_NEAR(*k.total_closed_form({}), 0.4 * (1 + 0.3 / 3), 1e-15);
    EXPECT_NEAR(quad, *k.total_closed_form({}), 2e-3);
}

TEST(Scattering, SkewAndGaugeBreakSymmetry)
{
    auto dom = ConvexDomain<2>::unit_ball();
    auto s = ScatteringKernel<2>::separable(SpatialField<2>::constant(0.2), {1.0},
                                            Vec<2>::axis(0), 0.5);
    EXPECT_FALSE(s.symmetric_by_construction());
    Vec<2> a{{1, 0}}, b{{0, 1}};
    EXPECT_NEAR(s({}, a, b) / s({}, b, a), std::exp(-1.0), 1e-14);

    auto g = make_boundary_poly_gauge<2>(
        dom, {SeparableTerm<2>{SpatialField<2>::constant(0.3), {Vec<2>::axis(0), {0, 1}}}});
    auto kg = ScatteringKernel<2>::constant(0.2).gauged(g);
    EXPECT_FALSE(kg.symmetric_by_construction());
    Vec<2> x{{0.2, 0.1}};
    double ratio = kg(x, a, b) / 0.2;
    EXPECT_NEAR(std::log(ratio), g.v(x, b) - g.v(x, a), 1e-14);
}

TEST(Medium, PointwiseEvaluationRejectsOutside)
{
    MediumPair<2> p(ConvexDomain<2>::unit_ball(), make_constant_absorption<2>(1.0),
                    ScatteringKernel<2>::constant(0.1));
    EXPECT_THROW(eval_a(p, {{1.2, 0}}, Direction<2>::axis(0)), DomainError);
    EXPECT_THROW(eval_k(p, {{0, 2}}, Direction<2>::axis(0), Direction<2>::axis(1)),
                 DomainError);
    EXPECT_DOUBLE_EQ(eval_k(p, {{0, 0.5}}, Direction<2>::axis(0), Direction<2>::axis(1)), 0.1);
    EXPECT_THROW(MediumPair<2>(ConvexDomain<2>::unit_ball(), AbsorptionField<2>{},
                               ScatteringKernel<2>::zero()),
                 ConfigError);
}

// Unit disk, a = 0.5, constant sigma: the sup of tau*sigma is 2 sigma on
// the diameter and the margin a - sigma is uniform.
TEST(Medium, SubcriticalityChecks)
{
    auto dom = ConvexDomain<2>::unit_ball();
    MediumPair<2> sub(dom, make_constant_absorption<2>(0.5), ScatteringKernel<2>::constant(0.3));
    auto cs = check_subcritical_cs(sub, 500);
    EXPECT_TRUE(cs.satisfied);
    EXPECT_NEAR(cs.worst_value, 0.6, 1e-12);
    auto dl = check_subcritical_dl(sub, 500);
    EXPECT_TRUE(dl.satisfied);
    EXPECT_NEAR(dl.worst_value, 0.2, 1e-12);

    MediumPair<2> sup(dom, make_constant_absorption<2>(0.5), ScatteringKernel<2>::constant(0.6));
    auto cs2 = check_subcritical_cs(sup, 500);
    EXPECT_FALSE(cs2.satisfied);
    EXPECT_NEAR(cs2.worst_value, 1.2, 1e-12);
    EXPECT_FALSE(check_subcritical_dl(sup, 500).satisfied);
    EXPECT_TRUE(check_admissible(sup, 200).satisfied);
}

TEST(Medium, SymmetryReport)
{
    auto dom = ConvexDomain<3>::unit_ball();
    MediumPair<3> sym(dom, make_constant_absorption<3>(0.5),
                      ScatteringKernel<3>::dot_product(SpatialField<3>::constant(0.2), {1, 0.5}));
    auto r = check_symmetries(sym, 300);
    EXPECT_TRUE(r.sym_atten);
    EXPECT_TRUE(r.sym_scat);
    EXPECT_TRUE(r.k_positive);

    MediumPair<3> skew(dom, make_constant_absorption<3>(0.5),
                       ScatteringKernel<3>::separable(SpatialField<3>::constant(0.2), {1},
                                                      Vec<3>::axis(2), 0.4));
    EXPECT_FALSE(check_symmetries(skew, 300).sym_scat);

    auto gauged = apply_gauge(sym, make_boundary_poly_gauge<3>(
        dom, {SeparableTerm<3>{SpatialField<3>::constant(0.5), {Vec<3>::axis(0), {0, 0, 1}}}}));
    EXPECT_FALSE(check_symmetries(gauged, 300).sym_atten);
}

TEST(Medium, PhaseSpaceSampleStartsWithAxes)
{
    auto dom = ConvexDomain<3>::ellipsoid({{0.1, 0, 0}}, {{1, 2, 1}});
    auto pts = sample_phase_space(dom, 100, 3);
    ASSERT_EQ(pts.size(), 106u);
    EXPECT_EQ(pts[0].x, dom.center());
    for (auto const& p : pts)
        EXPECT_TRUE(dom.contains(p.x));
}

// Reconstruction of k and a, gauge-class verification, X-ray inversion
#include <cmath>

#include <gtest/gtest.h>

#include "rte/core/errors.hpp"
#include "rte/core/sampling.hpp"
#include "rte/extraction/exact.hpp"
#include "rte/inversion/recover.hpp"
#include "rte/inversion/xray.hpp"

using namespace rte;

namespace
{
std::vector<Direction<3>> test_directions()
{
    std::vector<Direction<3>> d;
    Halton h(31);
    for (int i = 0; i < 6; ++i)
        d.emplace_back(uniform_sphere_point<3>(h(i, 0), h(i, 1)));
    return d;
}

std::vector<Vec<3>> test_points()
{
    std::vector<Vec<3>> p;
    Halton h(37);
    for (int i = 0; i < 5; ++i)
        p.push_back(0.7 * uniform_ball_point<3>(h(i, 0), h(i, 1), h(i, 2)));
    return p;
}

MediumPair<3> smooth_symmetric_pair()
{
    auto dom = ConvexDomain<3>::unit_ball();
    auto a = make_line_symmetric_absorption<3>(
        SpatialField<3>::gaussian({{0.2, 0.1, 0}}, 0.6, 0.7),
        SpatialField<3>::constant(0.3), {{1, 0, 0}});
    auto k = ScatteringKernel<3>::dot_product(
        SpatialField<3>::gaussian({{-0.1, 0, 0.1}}, 0.8, 0.3), {1.0, 0.5, 0.2});
    return MediumPair<3>(dom, a, k);
}

// Kernel-only perturbation: line-symmetric a and symmetric k on both sides
MediumPair<2> disk(double a, double k)
{
    return MediumPair<2>(ConvexDomain<2>::unit_ball(), make_constant_absorption<2>(a),
                         ScatteringKernel<2>::constant(k));
}
}  // namespace

//---------------------------------------------------------------------------//
// RECOVERY OF k
//---------------------------------------------------------------------------//
TEST(RecoverK, ExactForConstantAbsorption)
{
    MediumPair<3> p(ConvexDomain<3>::unit_ball(), make_constant_absorption<3>(0.5),
                    ScatteringKernel<3>::dot_product(SpatialField<3>::gaussian({}, 0.5, 0.4),
                                                     {1.0, 0.3}));
    auto rep = recover_k_symmetric(extract_exact(p, test_points(), test_directions(), 1e-2));
    rep.set_truth(k_truth(rep, p.scattering()));
    EXPECT_LT(rep.sup_error, 1e-12);
}

TEST(RecoverK, SmoothMediumAtFineRayStep)
{
    auto p = smooth_symmetric_pair();
    auto rep = recover_k_symmetric(extract_exact(p, test_points(), test_directions(), 1e-3));
    rep.set_truth(k_truth(rep, p.scattering()));
    EXPECT_EQ(rep.recovered.size(), 5u * 30u);
    EXPECT_LT(rep.sup_error, 1e-6);
}

// Gauge-equivalent inputs give the same k
TEST(RecoverK, GaugeInvariant)
{
    auto p = smooth_symmetric_pair();
    auto g = make_boundary_poly_gauge<3>(
        p.domain(), {SeparableTerm<3>{SpatialField<3>::constant(0.6), {Vec<3>::axis(1), {0.2, 1.0}}}});
    auto q = apply_gauge(p, g);
    auto r1 = recover_k_symmetric(extract_exact(p, test_points(), test_directions(), 1e-3));
    auto r2 = recover_k_symmetric(extract_exact(q, test_points(), test_directions(), 1e-3));
    ASSERT_EQ(r1.recovered.size(), r2.recovered.size());
    for (std::size_t i = 0; i < r1.recovered.size(); ++i)
        EXPECT_NEAR(r1.recovered[i], r2.recovered[i], 1e-9);
}

TEST(RecoverK, DataErrors)
{
    auto p = smooth_symmetric_pair();
    auto recs = extract_exact(p, {Vec<3>{}}, test_directions(), 1e-2);
    auto missing = recs;
    missing.pop_back();
    EXPECT_THROW(recover_k_symmetric(missing), DataError);

    auto bad_j = recs;
    bad_j[0].j0_theta = 0;
    EXPECT_THROW(recover_k_symmetric(bad_j), DataError);

    auto negative = recs;
    negative[0].i00 = -1e-3;
    EXPECT_THROW(recover_k_symmetric(negative), InconsistencyError);

    auto tiny = recs;
    tiny[0].i00 = -1e-14;
    auto rep = recover_k_symmetric(tiny);
    EXPECT_EQ(rep.recovered[0], 0.0);
}

//---------------------------------------------------------------------------//
// RECOVERY OF a
//---------------------------------------------------------------------------//
TEST(RecoverA, ConstantAbsorption)
{
    MediumPair<3> p(ConvexDomain<3>::unit_ball(), make_constant_absorption<3>(0.5),
                    ScatteringKernel<3>::constant(0.2));
    ExactExtraction<3> data(p, 1e-3);
    Direction<3> t(Vec<3>{{0.3, -0.5, 0.8}});
    EXPECT_NEAR(recover_a_line_symmetric(data, {{0.1, 0.2, -0.1}}, t, 1e-3), 0.5, 1e-6);

    ExactExtraction<3> zero(p.with_absorption(make_constant_absorption<3>(0.0)), 1e-3);
    EXPECT_NEAR(recover_a_line_symmetric(zero, {{0.1, 0.2, -0.1}}, t, 1e-3), 0.0, 1e-9);
}

TEST(RecoverA, Errors)
{
    ExactExtraction<3> data(smooth_symmetric_pair(), 1e-3);
    EXPECT_THROW(recover_a_line_symmetric(data, {{0.999, 0, 0}}, Direction<3>::axis(0), 0.01),
                 DomainError);
    EXPECT_THROW(recover_a_line_symmetric(data, {}, Direction<3>::axis(0), 0.0), ConfigError);
    MediumPair<3> no_scatter(ConvexDomain<3>::unit_ball(), make_constant_absorption<3>(0.5),
                             ScatteringKernel<3>::zero());
    ExactExtraction<3> dead(no_scatter, 1e-3);
    EXPECT_THROW(recover_a_line_symmetric(dead, {}, Direction<3>::axis(0), 0.01), DataError);
}

TEST(RecoverA, SecondOrderInFiniteDifferenceStep)
{
    auto p = smooth_symmetric_pair();
    ExactExtraction<3> data(p, 2e-4);
    Vec<3> x{{0.1, -0.2, 0.15}};
    Direction<3> t(Vec<3>{{0.8, 0.3, -0.2}});
    double truth = p.absorption()(x, t.vec());
    std::vector<double> err;
    for (double h : {0.08, 0.04, 0.02})
        err.push_back(std::abs(recover_a_line_symmetric(data, x, t, h) - truth));
    EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.2);
    EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.2);
}

// Without line symmetry the formula yields the even part of a
TEST(RecoverA, EvenPartForAsymmetricAbsorption)
{
    auto base = smooth_symmetric_pair();
    auto odd = make_general_sum_absorption<3>(
        {SeparableTerm<3>{SpatialField<3>::constant(0.2), {Vec<3>::axis(2), {0, 1}}}},
        {{1.0, base.absorption()}});
    auto p = base.with_absorption(odd);
    ExactExtraction<3> data(p, 2e-4);
    Vec<3> x{{0.1, -0.2, 0.15}};
    Direction<3> t(Vec<3>{{0.3, 0.3, 0.9}});
    double even = 0.5 * (odd(x, t.vec()) + odd(x, -t.vec()));
    EXPECT_GT(std::abs(odd(x, t.vec()) - even), 0.1);
    EXPECT_NEAR(recover_a_line_symmetric(data, x, t, 0.005), even, 1e-4);
}

// The backscatter half-line sum equals the depth of the half-line behind x
// for theta plus the same for -theta
TEST(RecoverA, SymmetrizationIdentity)
{
    auto base = smooth_symmetric_pair();
    auto odd = make_general_sum_absorption<3>(
        {SeparableTerm<3>{SpatialField<3>::constant(0.2), {Vec<3>::axis(2), {0, 1}}}},
        {{1.0, base.absorption()}});
    auto p = base.with_absorption(odd);
    ExactExtraction<3> data(p, 1e-3);
    Halton h(43);
    for (int i = 0; i < 20; ++i)
    {
        Vec<3> x = 0.8 * uniform_ball_point<3>(h(i, 0), h(i, 1), h(i, 2));
        Direction<3> t(uniform_sphere_point<3>(h(i, 3), h(i, 4)));
        double back = p.domain().exit_time(x, -t);
        double along = attenuation_integral(p, x, t, 0.0, back, 1e-3);
        double against = attenuation_integral(p, x, -t, -back, 0.0, 1e-3);
        EXPECT_NEAR(backscatter_half_line_sum(data, x, t), along + against, 1e-8);
    }
}

//---------------------------------------------------------------------------//
// GAUGE CLASS
//---------------------------------------------------------------------------//
TEST(GaugeClass, RoundTripRecoversGauge)
{
    auto p = disk(0.5, 0.3);
    auto g = make_scaled_boundary_gauge<2>(p.domain(), 0.8);
    auto res = verify_gauge_class(p, apply_gauge(p, g));
    EXPECT_TRUE(res.report.equivalent) << res.report.message;
    Halton h(47);
    for (int i = 0; i < 50; ++i)
    {
        Vec<2> x = 0.95 * uniform_ball_point<2>(h(i, 0), h(i, 1), 0);
        Vec<2> t = uniform_sphere_point<2>(h(i, 2), 0);
        EXPECT_NEAR(res.v_field.v(x, t), g.v(x, t), 1e-6);
    }
}

TEST(GaugeClass, BumpedAbsorptionNotEquivalent)
{
    auto p = disk(0.5, 0.3);
    auto res = verify_gauge_class(p, disk(0.6, 0.3));
    EXPECT_FALSE(res.report.equivalent);
    EXPECT_NEAR(res.report.worst_line_integral, 0.1, 1e-9);
    EXPECT_TRUE(res.v_field.is_identity());
}

// Both pairs have symmetric positive k and line-symmetric a with a != a~.
// The difference has vanishing line integrals (it is theta.grad v for the
// direction-dependent v = -b(x) theta_1) but k is not transformed by that
// gauge, so the pairs are not equivalent.
TEST(GaugeClass, LineSymmetricCounterexampleRejected)
{
    auto p = disk(0.5, 0.3);
    auto const& dom = p.domain();
    auto v = make_boundary_poly_gauge<2>(
        dom, {SeparableTerm<2>{SpatialField<2>::constant(-1.0), {Vec<2>::axis(0), {0, 1}}}});
    using Sum = GeneralSumAbsorption<2>;
    auto at = make_general_sum_absorption<2>({}, {typename Sum::Part{1.0, p.absorption()}},
                                             {typename Sum::GaugePart{-1.0, v}});
    auto q = p.with_absorption(at);
    Halton h(53);
    for (int i = 0; i < 50; ++i)
    {
        Vec<2> x = 0.9 * uniform_ball_point<2>(h(i, 0), h(i, 1), 0);
        Vec<2> t = uniform_sphere_point<2>(h(i, 2), 0);
        EXPECT_NEAR(at(x, t), at(x, -t), 1e-12);
    }
    EXPECT_GT(std::abs(at({{0.5, 0}}, {{1, 0}}) - 0.5), 0.1);
    auto res = verify_gauge_class(p, q);
    EXPECT_FALSE(res.report.equivalent);
    EXPECT_GT(res.report.max_k_ratio_violation, 1e-3);
}

// Symmetric k on both sides forces phi(x, theta) = phi(x, theta')
TEST(GaugeClass, SymmetryObstruction)
{
    auto p = disk(0.5, 0.3);
    auto const& dom = p.domain();
    auto gx = make_scaled_boundary_gauge<2>(dom, 0.8);
    auto gt = make_boundary_poly_gauge<2>(
        dom, {SeparableTerm<2>{SpatialField<2>::constant(0.5), {Vec<2>::axis(0), {0, 1}}}});
    auto qx = apply_gauge(p, gx);
    auto qt = apply_gauge(p, gt);
    Halton h(59);
    double x_asym = 0, t_asym = 0;
    for (int i = 0; i < 50; ++i)
    {
        Vec<2> x = 0.9 * uniform_ball_point<2>(h(i, 0), h(i, 1), 0);
        Vec<2> t = uniform_sphere_point<2>(h(i, 2), 0);
        Vec<2> tp = uniform_sphere_point<2>(h(i, 3), 0);
        x_asym = std::max(x_asym, std::abs(qx.scattering()(x, t, tp) - qx.scattering()(x, tp, t)));
        t_asym = std::max(t_asym, std::abs(qt.scattering()(x, t, tp) - qt.scattering()(x, tp, t)));
        EXPECT_NEAR(gx.v(x, t), gx.v(x, tp), 1e-9);
    }
    EXPECT_LT(x_asym, 1e-12);
    EXPECT_GT(t_asym, 1e-3);
}

TEST(TotalAbsorption, ClosedFormsAndGaugeInvariance)
{
    auto quad = make_sphere_quadrature<3>(256);
    std::vector<Vec<3>> pts{{{0, 0, 0}}, {{0.3, -0.2, 0.1}}};
    auto c = total_absorption(make_constant_absorption<3>(0.7), quad, pts);
    EXPECT_NEAR(c[0], 0.7, 1e-14);

    auto p = smooth_symmetric_pair();
    auto tot = total_absorption(p.absorption(), quad, pts);
    auto pf = SpatialField<3>::gaussian({{0.2, 0.1, 0}}, 0.6, 0.7);
    EXPECT_NEAR(tot[1], pf(pts[1]) + 0.3 * sphere_moment<3>(2), 2e-3);

    auto g = make_scaled_boundary_gauge<3>(p.domain(), 0.8);
    auto q = apply_gauge(p, g);
    auto tq = total_absorption(q.absorption(), quad, pts);
    auto back = recover_total_absorption(g, q, quad, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        EXPECT_NEAR(tq[i], tot[i], 1e-12);
        EXPECT_NEAR(back[i], tot[i], 1e-12);
    }
}

//---------------------------------------------------------------------------//
// X-RAY INVERSION
//---------------------------------------------------------------------------//
TEST(Kaczmarz, ZeroDataGivesZero)
{
    auto dom = ConvexDomain<2>::unit_ball();
    auto data = make_parallel_beam_data([](Vec<2> const&) { return 0.0; }, dom, 12, 12, 0.01);
    auto rep = kaczmarz_xray_invert(data, PixelGrid(dom, 8), 5, 1.0);
    for (double v : rep.recovered)
        EXPECT_EQ(v, 0.0);
}

TEST(Kaczmarz, Errors)
{
    auto dom = ConvexDomain<2>::unit_ball();
    PixelGrid grid(dom, 8);
    EXPECT_THROW(kaczmarz_xray_invert(LineIntegralData{}, grid, 5, 1.0), ConfigError);
    auto data = make_parallel_beam_data([](Vec<2> const&) { return 1.0; }, dom, 4, 4, 0.01);
    EXPECT_THROW(kaczmarz_xray_invert(data, grid, 0, 1.0), ConfigError);
    EXPECT_THROW(kaczmarz_xray_invert(data, grid, 5, 2.5), ConfigError);
    EXPECT_THROW(PixelGrid(dom, 0), ConfigError);
}

// Ray rows hold exact chord-pixel intersection lengths
TEST(Kaczmarz, RayRowLengthsSumToChord)
{
    auto dom = ConvexDomain<2>::unit_ball();
    PixelGrid grid(dom, 16);
    Halton h(61);
    for (int i = 0; i < 50; ++i)
    {
        Vec<2> x = 0.9 * uniform_ball_point<2>(h(i, 0), h(i, 1), 0);
        Direction<2> d(uniform_sphere_point<2>(h(i, 2), 0));
        double s = 0;
        for (auto const& e : grid.ray_row(x, d))
            s += e.length;
        EXPECT_NEAR(s, dom.chord(x, d).length(), 1e-12);
    }
}

// Single-pixel phantom on a small grid; data generated from exact rows
TEST(Kaczmarz, SinglePixelPhantom)
{
    auto dom = ConvexDomain<2>::unit_ball();
    PixelGrid grid(dom, 8);
    std::size_t target = 3 * 8 + 4;
    LineIntegralData data;
    for (int i = 0; i < 60; ++i)
    {
        double phi = std::numbers::pi * i / 60;
        Direction<2> d(Vec<2>{{std::cos(phi), std::sin(phi)}});
        Vec<2> n{{-std::sin(phi), std::cos(phi)}};
        for (int j = 0; j < 40; ++j)
        {
            Vec<2> x = (-0.95 + 1.9 * (j + 0.5) / 40) * n;
            double v = 0;
            for (auto const& e : grid.ray_row(x, d))
                if (e.pixel == target)
                    v += 2.0 * e.length;
            data.rays.push_back({x, d, v});
        }
    }
    auto rep = kaczmarz_xray_invert(data, grid, 50, 1.0);
    Vec<2> c = grid.center(target);
    bool found = false;
    for (std::size_t i = 0; i < rep.points.size(); ++i)
    {
        if (norm(rep.points[i] - c) < 1e-12)
        {
            EXPECT_NEAR(rep.recovered[i], 2.0, 0.02);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Kaczmarz, SmoothPhantom)
{
    auto dom = ConvexDomain<2>::unit_ball();
    auto phantom = SpatialField<2>::bump({{0.1, -0.1}}, 0.6, 1.0);
    auto data = make_parallel_beam_data([&](Vec<2> const& y) { return phantom(y); }, dom, 90,
                                        48, 2e-3);
    auto rep = kaczmarz_xray_invert(data, PixelGrid(dom, 32), 20, 1.0);
    std::vector<double> truth;
    for (auto const& x : rep.points)
        truth.push_back(phantom(x));
    rep.set_truth(truth);
    EXPECT_LT(rep.relative_l2_error, 0.08);
    EXPECT_LT(rep.residual_history.back(), rep.residual_history.front());
}

// Data consistent with the pixel model: the residual never increases
TEST(Kaczmarz, ResidualMonotoneForConsistentData)
{
    auto dom = ConvexDomain<2>::unit_ball();
    PixelGrid grid(dom, 24);
    auto phantom = SpatialField<2>::bump({{0.1, -0.1}}, 0.6, 1.0);
    auto shape = make_parallel_beam_data([](Vec<2> const&) { return 0.0; }, dom, 60, 36, 0.1);
    for (auto& r : shape.rays)
    {
        r.value = 0;
        for (auto const& e : grid.ray_row(r.point, r.direction))
            r.value += e.length * phantom(grid.center(e.pixel));
    }
    for (double relax : {1.0, 0.5})
    {
        auto rep = kaczmarz_xray_invert(shape, grid, 25, relax);
        for (std::size_t i = 1; i < rep.residual_history.size(); ++i)
            EXPECT_LE(rep.residual_history[i], rep.residual_history[i - 1]);
    }
}

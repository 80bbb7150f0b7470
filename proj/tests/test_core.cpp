// Core utilities: vectors, quadrature rules, samplers, parallel loops
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rte/core/errors.hpp"
#include "rte/core/parallel.hpp"
#include "rte/core/quadrature.hpp"
#include "rte/core/sampling.hpp"
#include "rte/core/vector.hpp"

using namespace rte;

TEST(Direction, NormalizesInput)
{
    Direction<3> d(Vec<3>{{3, 0, 4}});
    EXPECT_NEAR(norm(d.vec()), 1.0, 1e-15);
    EXPECT_NEAR(d[0], 0.6, 1e-15);
    EXPECT_NEAR(d[2], 0.8, 1e-15);
    EXPECT_EQ((-d)[0], -d[0]);
}

TEST(Direction, RejectsZeroAndNonFinite)
{
    EXPECT_THROW(Direction<2>(Vec<2>{{0, 0}}), DomainError);
    EXPECT_THROW(Direction<3>(Vec<3>{{NAN, 0, 1}}), DomainError);
}

TEST(Vec, CrossProductIsOrthogonal)
{
    Vec<3> a{{1, 2, 3}}, b{{-2, 0.5, 4}};
    Vec<3> c = cross(a, b);
    EXPECT_NEAR(dot(c, a), 0, 1e-14);
    EXPECT_NEAR(dot(c, b), 0, 1e-14);
}

TEST(Quadrature, CompositeSimpsonExactForCubics)
{
    auto f = [](double t) { return 1 - 2 * t + 3 * t * t - t * t * t; };
    double ref = oracle::gk(f, -0.3, 1.7);
    EXPECT_NEAR(composite_simpson(f, -0.3, 1.7, 0.1), ref, 1e-13);
}

TEST(Quadrature, CompositeSimpsonFourthOrder)
{
    auto f = [](double t) { return std::exp(std::sin(3 * t)); };
    double ref = oracle::gk(f, 0, 2);
    double e1 = std::abs(composite_simpson(f, 0, 2, 0.04) - ref);
    double e2 = std::abs(composite_simpson(f, 0, 2, 0.02) - ref);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
}

TEST(Quadrature, AdaptiveSimpsonMatchesKronrod)
{
    auto f = [](double t) { return 1 / (1 + 25 * t * t); };
    EXPECT_NEAR(adaptive_simpson(f, -1, 1, 1e-12), oracle::gk(f, -1, 1),
                1e-10);
}

TEST(Quadrature, GaussLegendreExactForDegree2nMinus1)
{
    GaussLegendre gl(6);
    auto f = [](double t) { return std::pow(t, 11) + 2 * std::pow(t, 10) - t; };
    EXPECT_NEAR(gl.integrate(f, -1, 2), oracle::gk(f, -1, 2), 1e-10);
    double wsum = 0;
    for (double w : gl.weights)
        wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    EXPECT_THROW(GaussLegendre(0), ConfigError);
}

TEST(Sampling, HaltonInUnitInterval)
{
    Halton h;
    for (int i = 0; i < 1000; ++i)
    {
        for (int c = 0; c < 4; ++c)
        {
            double v = h(i, c);
            EXPECT_GT(v, 0.0);
            EXPECT_LT(v, 1.0);
        }
    }
    EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
    EXPECT_DOUBLE_EQ(radical_inverse(3, 2), 0.75);
}

TEST(Sampling, BallAndSpherePoints)
{
    Halton h;
    for (int i = 0; i < 200; ++i)
    {
        auto s = uniform_sphere_point<3>(h(i, 0), h(i, 1));
        EXPECT_NEAR(norm(s), 1.0, 1e-14);
        auto b = uniform_ball_point<2>(h(i, 2), h(i, 0), h(i, 1));
        EXPECT_LE(norm(b), 1.0 + 1e-14);
    }
}

TEST(Parallel, VisitsEveryIndexOnce)
{
    for (int threads : {1, 3, 8})
    {
        std::vector<std::atomic<int>> hits(101);
        parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
        for (auto const& h : hits)
            EXPECT_EQ(h.load(), 1);
    }
}

TEST(Parallel, RethrowsWorkerError)
{
    EXPECT_THROW(parallel_for(50, 4,
                              [](std::size_t i) {
                                  if (i == 37)
                                      throw DataError("boom");
                              }),
                 DataError);
}

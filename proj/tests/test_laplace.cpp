#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace fflt;
using fflt::testing::adjoint_mismatch;
using fflt::testing::random_vector;

TEST(LaplacePlan, OrderFromAccuracy)
{
    const auto d = gen_testdata(256, 8, 0);
    const auto plan = make_plan(1e-4, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    EXPECT_EQ(plan.order(), 8);
    EXPECT_EQ(plan.levels(), static_cast<int>(std::ceil(std::log2(d.y[0] * d.xi[0] / 1e-4))) + 1);
}

TEST(LaplacePlan, BesselOrderFromClosedForm)
{
    // smallest q with 2 pi sqrt(2) (1024 / 1e-6) 3^-q <= 1e-6
    const auto nodes = fflt::testing::quasi_uniform(1024);
    const auto plan = make_plan(1e-6, bessel_half_kernel(), nodes, nodes, LaplaceVariant::general);
    int expected = 2;
    while (2 * std::numbers::pi * std::sqrt(2.0) * (1024 / 1e-6) * std::pow(3.0, -expected) > 1e-6)
        ++expected;
    EXPECT_EQ(expected, 34);
    EXPECT_EQ(plan.order(), expected);
}

TEST(LaplacePlan, TinyProductIsAllNearField)
{
    const std::vector<real> y{1e-4, 5e-5}, xi{1e-3, 2e-4};
    const std::vector<complex> fhat{{1, 2}, {3, -1}};
    const auto plan = make_plan(1e-2, exp_kernel(), y, xi, LaplaceVariant::exp);
    EXPECT_EQ(plan.levels(), 2);
    const auto exact = naive_apply(exp_kernel(), y, xi, fhat);
    EXPECT_LE(relative_error(exact, plan.apply(fhat), fhat), 1e-2);
    EXPECT_LE(max_abs_diff(exact, plan.apply(fhat)), 1e-6);
}

TEST(LaplacePlan, ZeroInZeroOut)
{
    const auto d = gen_testdata(500, 6, 1);
    const auto plan = make_plan(1e-3, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    const std::vector<complex> zero(500);
    for (const auto& v : plan.apply(zero))
        EXPECT_EQ(v, complex{});
    for (const auto& v : plan.apply_adjoint(zero))
        EXPECT_EQ(v, complex{});
}

TEST(LaplacePlan, RejectsBadInput)
{
    const std::vector<real> good{2, 1}, bad{1, -1}, zero{1, 0};
    EXPECT_THROW(make_plan(1e-3, exp_kernel(), bad, good, LaplaceVariant::exp), std::invalid_argument);
    EXPECT_THROW(make_plan(1e-3, exp_kernel(), good, zero, LaplaceVariant::exp), std::invalid_argument);
    EXPECT_THROW(make_plan(1.0, exp_kernel(), good, good, LaplaceVariant::exp), std::invalid_argument);
    EXPECT_THROW(make_plan(1e-3, bessel_half_kernel(), good, good, LaplaceVariant::exp), std::invalid_argument);
    const auto plan = make_plan(1e-3, exp_kernel(), good, good, LaplaceVariant::exp);
    const std::vector<complex> three(3);
    EXPECT_THROW(plan.apply(three), std::invalid_argument);
    EXPECT_THROW(plan.apply_adjoint(three), std::invalid_argument);
}

TEST(LaplacePlan, StructureInvariants)
{
    const auto d = gen_testdata(4096, 11, 2);
    const auto plan = make_plan(1e-6, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    const auto& part = plan.partition();
    const int M = plan.levels();
    std::size_t covered_y = 0, covered_xi = 0;
    for (int m = 1; m <= M; ++m)
    {
        const auto r = plan.y_band(m);
        EXPECT_EQ(r.begin, covered_y);
        covered_y = r.end;
        for (std::size_t i = r.begin; i < r.end; ++i)
            EXPECT_EQ(band_index(plan.sorted_y()[i], part.y1, M), m);
        const auto c = plan.xi_band(m);
        EXPECT_EQ(c.begin, covered_xi);
        covered_xi = c.end;
        for (std::size_t j = c.begin; j < c.end; ++j)
            EXPECT_EQ(band_index(plan.sorted_xi()[j], part.xi1, M), m);
    }
    EXPECT_EQ(covered_y, 4096u);
    EXPECT_EQ(covered_xi, 4096u);

    for (int m = 1; m < M; ++m)
    {
        for (int l = 1; l < M; ++l)
        {
            const bool wanted = l >= part.first_far(m) && l <= part.last_far(m) && !plan.y_band(m).empty()
                             && !plan.xi_band(l).empty();
            EXPECT_EQ(plan.block(m, l) != nullptr, wanted) << m << "," << l;
        }
        for (const auto& l : {plan.lagrange_y(m), plan.lagrange_xi(m)})
            for (std::size_t i = 0; i < l.rows(); ++i)
            {
                real s = 0;
                for (real v : l.row(i))
                    s += v;
                EXPECT_NEAR(s, 1.0, 1e-12);
            }
    }
}

TEST(LaplacePlan, GeneralVariantStoresAllFarBlocks)
{
    const auto nodes = fflt::testing::quasi_uniform(256);
    const auto plan = make_plan(1e-3, bessel_half_kernel(), nodes, nodes, LaplaceVariant::general);
    const int M = plan.levels();
    for (int m = 1; m < M; ++m)
        for (int l = 1; l < M; ++l)
            EXPECT_EQ(plan.block(m, l) != nullptr, !plan.y_band(m).empty() && !plan.xi_band(l).empty());
}

TEST(NaiveApply, Examples)
{
    const std::vector<real> y{1}, xi{1};
    const std::vector<complex> fhat{2};
    EXPECT_NEAR(naive_apply(exp_kernel(), y, xi, fhat)[0].real(), 0.7357588823428847, 1e-15);

    const std::vector<real> ys{0.5, 3}, xis{1, 2, 7};
    const std::vector<complex> c{1, {2, 1}, -4};
    auto one = [](real, real) { return 1.0; };
    for (const auto& v : naive_apply(one, ys, xis, c))
        EXPECT_EQ(v, c[0] + c[1] + c[2]);
    const auto adj = naive_apply_adjoint(exp_kernel(), ys, xis, std::vector<complex>{1, 1});
    EXPECT_NEAR(adj[1].real(), std::exp(-1.0) + std::exp(-6.0), 1e-15);
}

TEST(LaplaceApply, AccuracyAgainstDirectSum)
{
    for (real eps : {1e-2, 1e-4, 1e-6, 1e-8})
    {
        const auto d = gen_testdata(4096, order_for_accuracy(eps), 3);
        const auto plan = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
        const auto exact = naive_apply(exp_kernel(), d.y, d.xi, d.fhat);
        EXPECT_LE(relative_error(exact, plan.apply(d.fhat), d.fhat), eps) << eps;
    }
}

TEST(LaplaceApply, NodesOnInterpolationNodes)
{
    // move some nodes exactly onto the Chebyshev nodes of their bands, keeping y1
    const real eps = 1e-8;
    auto d = gen_testdata(2048, order_for_accuracy(eps), 21);
    const auto probe = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    const auto& part = probe.partition();
    for (int m = 1; m < part.M; ++m)
    {
        Interval band = part.y_band(m);
        band.closure = Closure::closed;
        const auto b = make_basis(part.q, band);
        const auto range = probe.y_band(m);
        for (std::size_t i = range.begin + 1, r = 0; i < range.end && r < b.nodes().size(); ++i, ++r)
            d.y[probe.y_permutation()[i]] = b.nodes()[r];
    }
    const auto plan = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    const auto exact = naive_apply(exp_kernel(), d.y, d.xi, d.fhat);
    EXPECT_LE(relative_error(exact, plan.apply(d.fhat), d.fhat), eps);
    Random rng(22);
    const auto g = fflt::testing::random_vector(rng, 2048);
    EXPECT_LE(relative_error(naive_apply_adjoint(exp_kernel(), d.y, d.xi, g), plan.apply_adjoint(g), g), eps);
}

TEST(LaplaceApply, ComplexCoefficients)
{
    const auto d = gen_testdata(1024, 8, 4, true);
    const auto plan = make_plan(1e-4, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    EXPECT_LE(relative_error(naive_apply(exp_kernel(), d.y, d.xi, d.fhat), plan.apply(d.fhat), d.fhat), 1e-4);
}

TEST(LaplaceApply, Linearity)
{
    const auto d = gen_testdata(1024, 8, 5);
    const auto plan = make_plan(1e-4, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
    Random rng(6);
    const auto f = random_vector(rng, 1024);
    const auto g = random_vector(rng, 1024);
    const complex a{0.3, -1.2}, b{2.5, 0.7};
    std::vector<complex> mix(1024);
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = a * f[i] + b * g[i];
    const auto lhs = plan.apply(mix);
    const auto pf = plan.apply(f);
    const auto pg = plan.apply(g);
    real scale = 0, diff = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
    {
        scale = max_nan(scale, std::abs(lhs[i]));
        diff = max_nan(diff, std::abs(lhs[i] - (a * pf[i] + b * pg[i])));
    }
    EXPECT_LE(diff, 1e-12 * scale);
}

TEST(LaplaceApply, UnsortedInputKeepsCallerOrder)
{
    const auto d = gen_testdata(777, 6, 7);
    std::vector<std::size_t> py(777), px(777);
    std::iota(py.begin(), py.end(), 0);
    std::iota(px.begin(), px.end(), 0);
    Random rng(8);
    std::shuffle(py.begin(), py.end(), std::mt19937_64(1));
    std::shuffle(px.begin(), px.end(), std::mt19937_64(2));
    std::vector<real> y(777), xi(777);
    std::vector<complex> fhat(777);
    for (std::size_t i = 0; i < 777; ++i)
    {
        y[i] = d.y[py[i]];
        xi[i] = d.xi[px[i]];
        fhat[i] = d.fhat[px[i]];
    }
    const auto sorted = make_plan(1e-3, exp_kernel(), d.y, d.xi, LaplaceVariant::exp).apply(d.fhat);
    const auto shuffled = make_plan(1e-3, exp_kernel(), y, xi, LaplaceVariant::exp).apply(fhat);
    for (std::size_t i = 0; i < 777; ++i)
        EXPECT_NEAR(std::abs(shuffled[i] - sorted[py[i]]), 0.0, 1e-12 * fflt::norm1(d.fhat));
}

TEST(LaplaceAdjoint, InnerProductIdentity)
{
    Random rng(9);
    {
        const auto d = gen_testdata(1024, 8, 10);
        const auto plan = make_plan(1e-4, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
        const auto f = random_vector(rng, 1024), g = random_vector(rng, 1024);
        EXPECT_LE(adjoint_mismatch([&](auto v) { return plan.apply(v); }, [&](auto v) { return plan.apply_adjoint(v); },
                                   f, g),
                  1e-12);
    }
    {
        const auto nodes = fflt::testing::quasi_uniform(1024);
        const auto plan = make_plan(1e-3, bessel_half_kernel(), nodes, nodes, LaplaceVariant::general);
        const auto f = random_vector(rng, 1024), g = random_vector(rng, 1024);
        EXPECT_LE(adjoint_mismatch([&](auto v) { return plan.apply(v); }, [&](auto v) { return plan.apply_adjoint(v); },
                                   f, g),
                  1e-12);
    }
}

TEST(LaplaceAdjoint, AccuracyAgainstDirectSum)
{
    Random rng(11);
    for (real eps : {1e-3, 1e-7})
    {
        const auto d = gen_testdata(1024, order_for_accuracy(eps), 12);
        const auto plan = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
        const auto g = random_vector(rng, 1024);
        const auto exact = naive_apply_adjoint(exp_kernel(), d.y, d.xi, g);
        EXPECT_LE(relative_error(exact, plan.apply_adjoint(g), g), eps);
    }
}

TEST(GeneralVariant, BesselAccuracy)
{
    const auto nodes = fflt::testing::quasi_uniform(1024);
    Random rng(13);
    std::vector<complex> fhat(1024);
    for (auto& c : fhat)
        c = rng.uniform();
    const auto exact = naive_apply(bessel_half_kernel(), nodes, nodes, fhat);
    for (real eps : {1e-3, 1e-6})
    {
        const auto plan = make_plan(eps, bessel_half_kernel(), nodes, nodes, LaplaceVariant::general);
        EXPECT_LE(relative_error(exact, plan.apply(fhat), fhat), eps);
        const auto adj = naive_apply_adjoint(bessel_half_kernel(), nodes, nodes, fhat);
        EXPECT_LE(relative_error(adj, plan.apply_adjoint(fhat), fhat), eps);
    }
}

TEST(GeneralVariant, ExponentialKernelAlsoWorks)
{
    const auto d = gen_testdata(1024, 6, 14);
    const auto plan = make_plan(1e-3, exp_kernel(), d.y, d.xi, LaplaceVariant::general);
    EXPECT_LE(relative_error(naive_apply(exp_kernel(), d.y, d.xi, d.fhat), plan.apply(d.fhat), d.fhat), 1e-3);
}

TEST(ExpRegions, AllFourCases)
{
    for (real eps : {1e-3, 1e-6})
    {
        const auto rep = fflt::testing::check_exp_regions(eps, 300, 15);
        for (int c = 0; c < 4; ++c)
        {
            EXPECT_EQ(rep.samples[c], 300) << "case " << c;
            EXPECT_EQ(rep.violations[c], 0) << "case " << c;
        }
    }
}

TEST(FlopCount, DeterministicAndNearLinear)
{
    auto count = [](std::size_t n) {
        const auto d = gen_testdata(n, 8, 0);
        const auto plan = make_plan(std::pow(4.0, -7.5), exp_kernel(), d.y, d.xi, LaplaceVariant::exp);
        FlopCounter c;
        (void)plan.apply(d.fhat, &c);
        return c.count;
    };
    const auto a = count(8192);
    EXPECT_EQ(a, count(8192));
    const auto b = count(16384);
    EXPECT_GT(a, 0u);
    EXPECT_LE(static_cast<real>(b) / static_cast<real>(a), 2.3);
}

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace fflt;
using fflt::testing::adjoint_mismatch;
using fflt::testing::random_vector;

TEST(PolarSplit, Examples)
{
    const std::vector<complex> z{1.0, -std::exp(-1.0), 0.0, {0, 0.5}};
    const auto s = polar_split(z, 1e-3);
    ASSERT_EQ(s.zero_set, std::vector<std::size_t>{2});
    ASSERT_EQ(s.retained, (std::vector<std::size_t>{0, 1, 3}));
    EXPECT_EQ(s.y[0], 0.0);
    EXPECT_EQ(s.x[0], 0.0);
    EXPECT_NEAR(s.y[1], 1.0, 1e-15);
    EXPECT_NEAR(s.x[1], 0.5, 1e-15);
    EXPECT_NEAR(s.y[2], std::log(2.0), 1e-15);
    EXPECT_NEAR(s.x[2], 0.25, 1e-15);
}

TEST(PolarSplit, ToleranceAndRejection)
{
    const std::vector<complex> rounding{{1 + 1e-13, 0}}, outside{{0.8, 0.7}};
    const auto s = polar_split(rounding, 0.1);
    EXPECT_EQ(s.y[0], 0.0);
    EXPECT_THROW(polar_split(outside, 0.1), std::domain_error);
}

TEST(PolarSplit, ZeroSetIsStrict)
{
    const real eps = 0.125;
    const std::vector<complex> z{eps, 0.99 * eps, {0, eps}};
    const auto s = polar_split(z, eps);
    EXPECT_EQ(s.zero_set, std::vector<std::size_t>{1});
}

TEST(PolarSplit, ArgumentInUnitInterval)
{
    Random rng(1);
    for (int i = 0; i < 1000; ++i)
    {
        const complex z = rng.unit_box() * 0.7;
        const real x = normalized_argument(z);
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
        EXPECT_NEAR(std::abs(std::polar(std::abs(z), 2 * std::numbers::pi * x) - z), 0, 1e-15);
    }
}

TEST(DiskPlan, OrderAndCutoff)
{
    const auto d = gen_testdata(512, 8, 0);
    const auto plan = make_disk_plan(1e-4, d.disk_nodes(), d.xi, FourierKind::nfft);
    EXPECT_EQ(plan.order(), 8);
    EXPECT_EQ(plan.fourier().cutoff(), 3);
    EXPECT_EQ(plan.levels(), static_cast<int>(std::ceil(std::log2(512 * std::log(1e4) / 1e-4))) + 1);
}

TEST(DiskPlan, BandsPartitionNodes)
{
    const auto d = gen_testdata(2000, 11, 1);
    auto z = d.disk_nodes();
    z[5] = 0;
    z[6] = 1e-9;
    const auto plan = make_disk_plan(1e-6, z, d.xi, FourierKind::direct);
    std::multiset<std::size_t> seen(plan.zero_set().begin(), plan.zero_set().end());
    EXPECT_TRUE(seen.count(5) && seen.count(6));
    for (int m = 1; m <= plan.levels(); ++m)
        for (auto j : plan.band_nodes(m))
        {
            seen.insert(j);
            const real y = -std::log(std::abs(z[j]));
            EXPECT_LE(y, std::log(1e6) * (1 + 1e-15));
        }
    EXPECT_EQ(seen.size(), 2000u);
    EXPECT_EQ(std::set<std::size_t>(seen.begin(), seen.end()).size(), 2000u);
}

TEST(DiskPlan, RejectsBadInput)
{
    const std::vector<complex> z{{0.5, 0.1}, {-0.3, 0}};
    const std::vector<real> ints{3, 1}, frac{2.5, 1}, small{0.5, 1};
    EXPECT_THROW(make_disk_plan(1e-3, z, frac, FourierKind::direct), std::domain_error);
    const std::vector<complex> z_ok{{0.5, 0.1}, {0.3, 0}};
    EXPECT_THROW(make_disk_plan(1e-3, z_ok, frac, FourierKind::nfft), std::invalid_argument);
    EXPECT_NO_THROW(make_disk_plan(1e-3, z_ok, frac, FourierKind::direct));
    EXPECT_NO_THROW(make_disk_plan(1e-3, z, ints, FourierKind::nfft));
    EXPECT_THROW(make_disk_plan(1e-3, z, small, FourierKind::direct), std::invalid_argument);
    EXPECT_THROW(make_disk_plan(2.0, z, ints, FourierKind::direct), std::invalid_argument);
    const std::vector<complex> outside{{1.5, 0}};
    EXPECT_THROW(make_disk_plan(1e-3, outside, ints, FourierKind::direct), std::domain_error);

    const auto plan = make_disk_plan(1e-3, z, ints, FourierKind::direct);
    const std::vector<complex> three(3);
    EXPECT_THROW(plan.apply(three), std::invalid_argument);
    EXPECT_THROW(plan.apply_adjoint(three), std::invalid_argument);
}

TEST(DiskApply, TinyNodesGiveZero)
{
    Random rng(2);
    std::vector<complex> z(100);
    for (auto& v : z)
        v = rng.unit_box() * 1e-5;
    const auto d = gen_testdata(100, 6, 3);
    const auto plan = make_disk_plan(1e-3, z, d.xi, FourierKind::nfft);
    EXPECT_EQ(plan.zero_set().size(), 100u);
    for (const auto& v : plan.apply(d.fhat))
        EXPECT_EQ(v, complex{});
}

TEST(DiskApply, ZeroCoefficients)
{
    const auto d = gen_testdata(300, 6, 4);
    const auto plan = make_disk_plan(1e-3, d.disk_nodes(), d.xi, FourierKind::nfft);
    const std::vector<complex> zero(300);
    for (const auto& v : plan.apply(zero))
        EXPECT_EQ(v, complex{});
    for (const auto& v : plan.apply_adjoint(zero))
        EXPECT_EQ(v, complex{});
}

TEST(DiskApply, UnitCircleIsFourierOnly)
{
    Random rng(5);
    const std::size_t n = 700;
    std::vector<complex> z(n);
    std::vector<real> x(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        x[j] = rng.uniform();
        z[j] = std::polar(1.0, 2 * std::numbers::pi * x[j]);
    }
    const auto d = gen_testdata(n, 8, 6, true);
    const auto plan = make_disk_plan(1e-6, z, d.xi, FourierKind::direct);
    EXPECT_EQ(plan.band_nodes(plan.levels()).size(), n);
    const auto fourier = make_direct_backend(plan.sorted_x(), d.xi);
    const auto fast = plan.apply(d.fhat);
    const auto exact = naive_disk_apply(z, d.xi, d.fhat);
    EXPECT_LE(relative_error(exact, fast, d.fhat), 1e-12);
}

TEST(DiskApply, PositiveRealNodesMatchLaplace)
{
    const real eps = 1e-6;
    const auto d = gen_testdata(1024, order_for_accuracy(eps), 7);
    std::vector<complex> z(d.y.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        z[j] = std::exp(-d.y[j]);
    const auto plan = make_disk_plan(eps, z, d.xi, FourierKind::direct);
    const auto laplace = naive_apply(exp_kernel(), d.y, d.xi, d.fhat);
    EXPECT_LE(relative_error(laplace, plan.apply(d.fhat), d.fhat), eps);

    // single term: z^{xi_1}
    std::vector<complex> e1(d.xi.size());
    e1[0] = 1;
    const auto single = plan.apply(e1);
    for (std::size_t j = 0; j < z.size(); ++j)
        EXPECT_NEAR(std::abs(single[j] - std::pow(z[j].real(), d.xi[0])), 0, eps);
}

TEST(DiskApply, AccuracyBothBackends)
{
    for (real eps : {1e-2, 1e-6})
    {
        const auto d = gen_testdata(4096, order_for_accuracy(eps), 8);
        const auto z = d.disk_nodes();
        const auto exact = naive_disk_apply(z, d.xi, d.fhat);
        const auto direct = make_disk_plan(eps, z, d.xi, FourierKind::direct).apply(d.fhat);
        const auto nfft = make_disk_plan(eps, z, d.xi, FourierKind::nfft).apply(d.fhat);
        EXPECT_LE(relative_error(exact, direct, d.fhat), eps);
        EXPECT_LE(relative_error(exact, nfft, d.fhat), eps);
        EXPECT_LE(relative_error(direct, nfft, d.fhat), eps / 3);
    }
}

TEST(DiskApply, NonintegerExponents)
{
    Random rng(9);
    const std::size_t n = 600;
    std::vector<real> xi(n);
    for (auto& v : xi)
        v = rng.uniform(1, static_cast<real>(n));
    const auto d = gen_testdata(n, 8, 10);
    const auto z = d.disk_nodes();
    const auto plan = make_disk_plan(1e-4, z, xi, FourierKind::direct);
    EXPECT_FALSE(plan.integer_exponents());
    EXPECT_LE(relative_error(naive_disk_apply(z, xi, d.fhat), plan.apply(d.fhat), d.fhat), 1e-4);
}

TEST(DiskAdjoint, InnerProductIdentity)
{
    Random rng(11);
    const auto d = gen_testdata(1024, 8, 12);
    const auto plan = make_disk_plan(1e-4, d.disk_nodes(), d.xi, FourierKind::direct);
    const auto f = random_vector(rng, 1024), g = random_vector(rng, 1024);
    EXPECT_LE(adjoint_mismatch([&](auto v) { return plan.apply(v); }, [&](auto v) { return plan.apply_adjoint(v); }, f, g),
              1e-12);
}

TEST(DiskAdjoint, AccuracyAgainstDirectSum)
{
    Random rng(13);
    for (auto kind : {FourierKind::direct, FourierKind::nfft})
        for (real eps : {1e-3, 1e-6})
        {
            const auto d = gen_testdata(1024, order_for_accuracy(eps), 14);
            const auto z = d.disk_nodes();
            const auto plan = make_disk_plan(eps, z, d.xi, kind);
            const auto g = random_vector(rng, 1024);
            EXPECT_LE(relative_error(naive_disk_apply_adjoint(z, d.xi, g), plan.apply_adjoint(g), g), eps);
        }
}

TEST(BranchPower, Examples)
{
    EXPECT_EQ(branch_power(0.0, 2.5), complex{});
    EXPECT_NEAR(std::abs(branch_power({0, 1}, 2) - complex(-1, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(branch_power(0.25, 0.5) - complex(0.5, 0)), 0, 1e-15);
    // the branch has argument in [0, 2 pi)
    EXPECT_NEAR(std::abs(branch_power({0, -1}, 0.5) - std::polar(1.0, 0.75 * std::numbers::pi)), 0, 1e-15);
}

TEST(HadamardIdentity, Examples)
{
    EXPECT_TRUE(hadamard_block_identity_check(4, 16, 16, 7));
    EXPECT_LE(hadamard_block_identity_deviation(1, 20, 30, 3), 1e-12);
    EXPECT_EQ(hadamard_block_identity_deviation(5, 10, 10, 1, true), 0.0);
    EXPECT_THROW(hadamard_block_identity_check(9, 10, 10, 1), std::invalid_argument);
    EXPECT_THROW(hadamard_block_identity_check(4, 65, 10, 1), std::invalid_argument);
}

TEST(HadamardIdentity, RandomConfigurations)
{
    Random rng(15);
    for (int i = 0; i < 100; ++i)
    {
        const int q = 1 + static_cast<int>(rng.below(8));
        const auto ny = 1 + rng.below(64), nx = 1 + rng.below(64);
        EXPECT_TRUE(hadamard_block_identity_check(q, ny, nx, rng.below(1u << 31)));
    }
}

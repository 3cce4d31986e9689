// Discrete Laplace transform f(y) = sum_j c_j exp(-y xi_j) for sorted random data.

#include <fflt/fflt.hpp>

#include <cstdio>

int main()
{
    using namespace fflt;
    const real eps = 1e-6;
    const TestData data = gen_testdata(1 << 14, order_for_accuracy(eps), 1);

    const LaplacePlan plan = make_plan(eps, exp_kernel(), data.y, data.xi, LaplaceVariant::exp);
    FlopCounter flops;
    const auto fast = plan.apply(data.fhat, &flops);
    const auto exact = naive_apply(exp_kernel(), data.y, data.xi, data.fhat);

    std::printf("n=%zu q=%d M=%d blocks=%zu flops=%llu\n", plan.rows(), plan.order(), plan.levels(),
                plan.block_count(), static_cast<unsigned long long>(flops.count));
    std::printf("relative error %.3e (target %.1e)\n", relative_error(exact, fast, data.fhat), eps);
}

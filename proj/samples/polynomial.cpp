// Evaluate p(z) = sum_{k=1}^{n} c_k z^k at random points of the unit disk
// and compare a few values with Horner's rule.

#include <fflt/fflt.hpp>

#include <cstdio>
#include <vector>

int main()
{
    using namespace fflt;
    const std::size_t n = 2000;
    const real eps = 1e-8;

    Random rng(42);
    std::vector<complex> coeff(n), nodes(n);
    std::vector<real> powers(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        coeff[k] = rng.unit_box();
        powers[k] = static_cast<real>(k + 1);
    }
    for (auto& z : nodes)
        z = std::polar(std::sqrt(rng.uniform()), 2 * std::numbers::pi * rng.uniform());

    const DiskPlan plan = make_disk_plan(eps, nodes, powers, FourierKind::nfft);
    const auto values = plan.apply(coeff);

    std::printf("q=%d M=%d nfft cutoff=%d\n", plan.order(), plan.levels(), plan.fourier().cutoff());
    for (std::size_t j = 0; j < 5; ++j)
    {
        // Horner on c_n z^{n-1} + ... + c_1, times z
        complex h = 0;
        for (std::size_t k = n; k-- > 0;)
            h = h * nodes[j] + coeff[k];
        h *= nodes[j];
        std::printf("z=(% .4f,% .4f)  fast=(% .10f,% .10f)  horner=(% .10f,% .10f)\n", nodes[j].real(),
                    nodes[j].imag(), values[j].real(), values[j].imag(), h.real(), h.imag());
    }
}

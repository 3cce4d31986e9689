// fflt command line: single transforms on generated or file data, and the
// error-decay / timing sweeps.

#include <fflt/fflt.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace fflt;

// Exit status for a failed --check.
constexpr int check_failed_status = 2;

struct Sink
{
    explicit Sink(const std::string& path)
    {
        if (!path.empty())
        {
            file = std::make_unique<std::ofstream>(path);
            if (!*file)
                throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file ? *file : std::cout; }

    std::unique_ptr<std::ofstream> file;
};

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file " + path);
    return in;
}

void write_values(const std::string& path, std::span<const complex> values)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open values file " + path);
    out << "index,re,im\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << ',' << format_real(values[i].real()) << ',' << format_real(values[i].imag()) << '\n';
}

// ---- laplace ----

struct LaplaceArgs
{
    real          epsilon = 1e-6;
    std::size_t   n = 1024;
    std::string   kernel = "exp";
    std::uint64_t seed = 0;
    std::string   input, output, values, write_input;
    bool          check = false;
    bool          complex_coefficients = false;
    int           repeats = 1;
};

// Test problem: the usual random data for the exponential kernel; for the
// singular Bessel kernel quasi-uniform nodes j/n on (0, 1].
LaplaceInput laplace_problem(const LaplaceArgs& a)
{
    if (!a.input.empty())
    {
        auto in = open_input(a.input);
        return read_laplace_csv(in);
    }
    detail::check_epsilon(a.epsilon);
    const TestData d = gen_testdata(a.n, order_for_accuracy(a.epsilon), a.seed, a.complex_coefficients);
    LaplaceInput p{d.y, d.xi, d.fhat};
    if (a.kernel == "bessel")
        for (std::size_t j = 0; j < a.n; ++j)
        {
            p.y[j] = static_cast<real>(a.n - j) / static_cast<real>(a.n);
            p.xi[j] = p.y[j];
        }
    return p;
}

int run_laplace(const LaplaceArgs& a)
{
    const LaplaceInput p = laplace_problem(a);
    if (!a.write_input.empty())
    {
        std::ofstream out(a.write_input);
        write_laplace_csv(out, p);
    }
    const Kernel kernel = kernel_by_name(a.kernel);
    const auto variant = kernel.kind() == KernelKind::exponential ? LaplaceVariant::exp : LaplaceVariant::general;
    const LaplacePlan plan = make_plan(a.epsilon, kernel, p.y, p.xi, variant);

    std::vector<complex> ftilde;
    BenchRecord rec;
    rec.n = plan.rows();
    rec.epsilon = a.epsilon;
    rec.q = plan.order();
    rec.M = plan.levels();
    rec.time_fast_s = median_seconds([&] { ftilde = plan.apply(p.fhat); }, a.repeats);

    bool ok = true;
    if (a.check)
    {
        std::vector<complex> f;
        rec.time_naive_s = median_seconds([&] { f = naive_apply(kernel, p.y, p.xi, p.fhat); }, 1);
        rec.E = relative_error(f, ftilde, p.fhat);
        ok = *rec.E <= a.epsilon;
    }
    if (!a.values.empty())
        write_values(a.values, ftilde);

    Sink sink(a.output);
    sink.stream() << BenchRecord::csv_header() << '\n' << rec.csv_row() << '\n';
    if (!ok)
    {
        std::cerr << "error: relative error " << format_real(*rec.E) << " exceeds epsilon\n";
        return check_failed_status;
    }
    return 0;
}

// ---- disk ----

struct DiskArgs
{
    real          epsilon = 1e-6;
    std::size_t   n = 1024;
    std::string   backend = "direct";
    std::uint64_t seed = 0;
    std::string   input, output, values, write_input;
    bool          check = false;
    bool          complex_coefficients = false;
    int           repeats = 1;
};

DiskInput disk_problem(const DiskArgs& a)
{
    if (!a.input.empty())
    {
        auto in = open_input(a.input);
        return read_disk_csv(in);
    }
    detail::check_epsilon(a.epsilon);
    const TestData d = gen_testdata(a.n, order_for_accuracy(a.epsilon), a.seed, a.complex_coefficients);
    return {d.disk_nodes(), d.xi, d.fhat};
}

int run_disk(const DiskArgs& a)
{
    const DiskInput p = disk_problem(a);
    if (!a.write_input.empty())
    {
        std::ofstream out(a.write_input);
        write_disk_csv(out, p);
    }
    const DiskPlan plan = make_disk_plan(a.epsilon, p.nodes, p.exponents, fourier_kind_by_name(a.backend));

    std::vector<complex> ftilde;
    BenchRecord rec;
    rec.n = plan.node_count();
    rec.epsilon = a.epsilon;
    rec.q = plan.order();
    rec.M = plan.levels();
    rec.time_fast_s = median_seconds([&] { ftilde = plan.apply(p.fhat); }, a.repeats);

    bool ok = true;
    if (a.check)
    {
        std::vector<complex> f;
        rec.time_naive_s = median_seconds([&] { f = naive_disk_apply(p.nodes, p.exponents, p.fhat); }, 1);
        rec.E = relative_error(f, ftilde, p.fhat);
        ok = *rec.E <= a.epsilon;
    }
    if (!a.values.empty())
        write_values(a.values, ftilde);

    Sink sink(a.output);
    sink.stream() << BenchRecord::csv_header() << '\n' << rec.csv_row() << '\n';
    if (!ok)
    {
        std::cerr << "error: relative error " << format_real(*rec.E) << " exceeds epsilon\n";
        return check_failed_status;
    }
    return 0;
}

// ---- bench-error ----

struct ErrorSweepArgs
{
    std::size_t   n = 16384;
    int           q_min = 1;
    int           q_max = 14;
    std::string   algo = "laplace";
    std::uint64_t seed = 0;
    std::string   output;
};

// eps = 4^{1/2 - q}, the accuracy whose order formula gives back q
real epsilon_for_order(int q)
{
    return std::ldexp(1.0, 1 - 2 * q);
}

int run_bench_error(const ErrorSweepArgs& a)
{
    if (a.q_min < 1 || a.q_max < a.q_min)
        throw std::invalid_argument("need 1 <= q-min <= q-max");
    Sink sink(a.output);
    auto& out = sink.stream();
    out << "q,epsilon,E,bound\n";
    for (int q = a.q_min; q <= a.q_max; ++q)
    {
        const real eps = epsilon_for_order(q);
        const TestData d = gen_testdata(a.n, q, a.seed);
        real e = 0;
        if (a.algo == "laplace")
        {
            const LaplacePlan plan = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp, {.order = q});
            e = relative_error(naive_apply(exp_kernel(), d.y, d.xi, d.fhat), plan.apply(d.fhat), d.fhat);
        }
        else
        {
            const auto kind = a.algo == "disk-nfft" ? FourierKind::nfft : FourierKind::direct;
            const auto z = d.disk_nodes();
            const DiskPlan plan = make_disk_plan(eps, z, d.xi, kind, {.order = q, .nfft_cutoff = std::nullopt});
            e = relative_error(naive_disk_apply(z, d.xi, d.fhat), plan.apply(d.fhat), d.fhat);
        }
        out << q << ',' << format_real(eps) << ',' << format_real(e) << ',' << format_real(eps) << '\n';
        out.flush();
    }
    return 0;
}

// ---- bench-time ----

struct TimeSweepArgs
{
    int           q = 8;
    std::size_t   n_min = 1024;
    std::size_t   n_max = 262144;
    std::size_t   naive_max = 16384;
    std::string   algo = "laplace";
    int           repeats = 5;
    std::uint64_t seed = 0;
    std::string   output;
};

int run_bench_time(const TimeSweepArgs& a)
{
    if (a.q < 1 || a.n_min < 1 || a.n_max < a.n_min)
        throw std::invalid_argument("need q >= 1 and 1 <= n-min <= n-max");
    const real eps = epsilon_for_order(a.q);
    Sink sink(a.output);
    auto& out = sink.stream();
    out << "n,time_fast_s,time_naive_s\n";
    for (std::size_t n = a.n_min; n <= a.n_max; n *= 2)
    {
        const TestData d = gen_testdata(n, a.q, a.seed);
        const bool naive = n <= a.naive_max;
        real fast = 0;
        std::optional<real> slow;
        if (a.algo == "laplace")
        {
            const LaplacePlan plan = make_plan(eps, exp_kernel(), d.y, d.xi, LaplaceVariant::exp, {.order = a.q});
            fast = median_seconds([&] { (void)plan.apply(d.fhat); }, a.repeats);
            if (naive)
                slow = median_seconds([&] { (void)naive_apply(exp_kernel(), d.y, d.xi, d.fhat); }, 1);
        }
        else
        {
            const auto z = d.disk_nodes();
            const DiskPlan plan = make_disk_plan(eps, z, d.xi, FourierKind::nfft, {.order = a.q, .nfft_cutoff = std::nullopt});
            fast = median_seconds([&] { (void)plan.apply(d.fhat); }, a.repeats);
            if (naive)
                slow = median_seconds([&] { (void)naive_disk_apply(z, d.xi, d.fhat); }, 1);
        }
        out << n << ',' << format_real(fast) << ',' << (slow ? format_real(*slow) : "") << '\n';
        out.flush();
    }
    return 0;
}

template <typename Args>
void add_io_flags(CLI::App* cmd, Args& a)
{
    cmd->add_option("--seed", a.seed, "PRNG seed for generated data");
    cmd->add_option("--input", a.input, "read nodes and coefficients from a CSV file")->check(CLI::ExistingFile);
    cmd->add_option("--output", a.output, "write the result row here instead of stdout");
    cmd->add_option("--values", a.values, "write the computed values as CSV");
    cmd->add_option("--write-input", a.write_input, "write the problem data as an input CSV");
    cmd->add_flag("--check", a.check, "compare against the direct sum and fill E");
    cmd->add_flag("--complex", a.complex_coefficients, "draw complex coefficients");
    cmd->add_option("--repeats", a.repeats, "timing repeats (median)")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fast Laplace and Fourier-Laplace transforms"};
    app.require_subcommand(1);

    LaplaceArgs la;
    auto* laplace = app.add_subcommand("laplace", "Laplace-type transform with the exp or bessel kernel");
    laplace->add_option("--epsilon", la.epsilon, "target accuracy in (0, 1)")->required();
    laplace->add_option("--n", la.n, "problem size for generated data")->check(CLI::PositiveNumber);
    laplace->add_option("--kernel", la.kernel, "kernel")->check(CLI::IsMember({"exp", "bessel"}));
    add_io_flags(laplace, la);

    DiskArgs da;
    auto* disk = app.add_subcommand("disk", "polynomial evaluation in the unit disk");
    disk->add_option("--epsilon", da.epsilon, "target accuracy in (0, 1)")->required();
    disk->add_option("--n", da.n, "problem size for generated data")->check(CLI::PositiveNumber);
    disk->add_option("--backend", da.backend, "Fourier backend")->check(CLI::IsMember({"direct", "nfft"}));
    add_io_flags(disk, da);

    ErrorSweepArgs ea;
    auto* bench_error = app.add_subcommand(
        "bench-error",
        "error against the direct sum for orders q-min..q-max, with epsilon = bound = 2^(1 - 2q)");
    bench_error->add_option("--n", ea.n, "problem size")->check(CLI::PositiveNumber);
    bench_error->add_option("--q-min", ea.q_min, "first order")->check(CLI::Range(1, 30));
    bench_error->add_option("--q-max", ea.q_max, "last order")->check(CLI::Range(1, 30));
    bench_error->add_option("--algo", ea.algo, "transform")
        ->check(CLI::IsMember({"laplace", "disk-direct", "disk-nfft"}));
    bench_error->add_option("--seed", ea.seed, "PRNG seed");
    bench_error->add_option("--output", ea.output, "write CSV here instead of stdout");

    TimeSweepArgs ta;
    auto* bench_time = app.add_subcommand("bench-time", "apply time for doubling n at fixed order");
    bench_time->add_option("--q", ta.q, "interpolation order")->check(CLI::Range(1, 30));
    bench_time->add_option("--n-min", ta.n_min, "first size")->check(CLI::PositiveNumber);
    bench_time->add_option("--n-max", ta.n_max, "last size")->check(CLI::PositiveNumber);
    bench_time->add_option("--naive-max", ta.naive_max, "largest size timed with the direct sum");
    bench_time->add_option("--algo", ta.algo, "transform")->check(CLI::IsMember({"laplace", "disk-nfft"}));
    bench_time->add_option("--repeats", ta.repeats, "timing repeats (median)")->check(CLI::PositiveNumber);
    bench_time->add_option("--seed", ta.seed, "PRNG seed");
    bench_time->add_option("--output", ta.output, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (laplace->parsed())
            return run_laplace(la);
        if (disk->parsed())
            return run_disk(da);
        if (bench_error->parsed())
            return run_bench_error(ea);
        return run_bench_time(ta);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

// Timing harness comparing the serial reference kernels against the OpenMP
// ones: sine transforms and the per-mode Poisson map. The two paths must be
// bitwise identical; this tool reports throughput only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "blowuplab/elliptic.hpp"
#include "blowuplab/grid.hpp"
#include "blowuplab/parallel.hpp"
#include "blowuplab/transform.hpp"

using namespace blowuplab;

namespace {

double seconds_per_call(const std::function<void()>& fn, int min_calls = 3) {
    using clock = std::chrono::steady_clock;
    fn();  // warm up
    int calls = 0;
    const auto start = clock::now();
    do {
        fn();
        ++calls;
    } while (calls < min_calls ||
             std::chrono::duration<double>(clock::now() - start).count() < 0.5);
    return std::chrono::duration<double>(clock::now() - start).count() / calls;
}

}  // namespace

int main() {
    std::printf("threads capped at %d (BLOWUPLAB_THREADS to change)\n\n", thread_cap());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    for (int nz : {256, 512}) {
        Grid g{semi_infinite_domain(std::acos(-1.0), 18.0), 32, nz};
        ScalarField f = ScalarField::sample(g, [](double x1, double x2, double z) {
            return std::sin(x1) * std::sin(x2) * std::exp(-z) +
                   0.3 * std::sin(2 * x1) * std::sin(3 * x2) * z * std::exp(-1.5 * z);
        });

        const double ts = seconds_per_call([&] { dst_forward(f, Exec::Serial); });
        const double tp = seconds_per_call([&] { dst_forward(f, Exec::OpenMP); });
        std::printf("%-28s %10.4f %10.4f %8.2f\n",
                    ("dst_forward nx=32 nz=" + std::to_string(nz)).c_str(), ts, tp,
                    ts / tp);

        const ZBoundary bc = robin_bottom(1.8, ZBoundary::Top::Decay);
        EllipticOptions serial_opt, omp_opt;
        serial_opt.exec = Exec::Serial;
        omp_opt.exec = Exec::OpenMP;
        const double es = seconds_per_call([&] { solve_poisson(f, bc, OperatorSign::Standard, serial_opt); });
        const double ep = seconds_per_call([&] { solve_poisson(f, bc, OperatorSign::Standard, omp_opt); });
        std::printf("%-28s %10.4f %10.4f %8.2f\n",
                    ("solve_poisson nx=32 nz=" + std::to_string(nz)).c_str(), es, ep,
                    es / ep);

        // bitwise agreement of the two paths
        ScalarField vs = solve_poisson(f, bc, OperatorSign::Standard, serial_opt);
        ScalarField vp = solve_poisson(f, bc, OperatorSign::Standard, omp_opt);
        bool same = true;
        for (long i = 0; i < vs.size() && same; ++i)
            same = vs.data()[i] == vp.data()[i];
        std::printf("%-28s %s\n", "serial == openmp (bitwise)", same ? "yes" : "NO");
    }
    return 0;
}

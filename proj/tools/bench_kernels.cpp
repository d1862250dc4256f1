// Throughput benchmark of the Monte Carlo order-statistics kernel: OpenMP
// distribution over replications against the serial reference. Both paths
// produce bit-identical output, so the speedup is the whole story.
//
//   bench_kernels [reps] [N]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "subfpt/extreme_stats.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 2000;
    const std::int64_t n = argc > 2 ? std::atoll(argv[2]) : 1000;
    if (reps < 1 || n < 1) {
        std::fprintf(stderr, "usage: bench_kernels [reps >= 1] [N >= 1]\n");
        return 2;
    }
    const auto model = subfpt::FptModel::half_line(1.0, 1.0);
    const double alpha = 0.5;
    const std::uint64_t seed = 99;

    auto t0 = std::chrono::steady_clock::now();
    const auto serial =
        subfpt::mc_order_statistics_serial(model, alpha, n, 1, reps, seed);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = subfpt::mc_order_statistics(model, alpha, n, 1, reps, seed);
    const double parallel_s = seconds_since(t0);

    for (int i = 0; i < reps; ++i) {
        if (serial.values[static_cast<std::size_t>(i)] !=
            parallel.values[static_cast<std::size_t>(i)]) {
            std::fprintf(stderr, "mismatch at replication %d\n", i);
            return 1;
        }
    }

    const double draws = static_cast<double>(reps) * static_cast<double>(n);
    std::printf("reps=%d N=%lld draws=%.3g\n", reps, static_cast<long long>(n),
                draws);
    std::printf("serial:   %8.3f s  (%.3g draws/s)\n", serial_s, draws / serial_s);
    std::printf("parallel: %8.3f s  (%.3g draws/s)\n", parallel_s,
                draws / parallel_s);
    std::printf("speedup:  %8.2fx\n", serial_s / parallel_s);
    return 0;
}

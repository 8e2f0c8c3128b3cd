// Timing comparison between the serial reference kernels and the OpenMP
// paths: dense products at growing sizes, then the restart-parallel search.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "supersel/cmatrix.hpp"
#include "supersel/rng.hpp"
#include "supersel/schemes.hpp"
#include "supersel/verdicts.hpp"

using namespace supersel;
namespace chrono = std::chrono;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    const auto t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = chrono::steady_clock::now();
    return chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not enabled\n";
#endif

    Rng rng(20240817);
    std::cout << "\nmatmul serial vs parallel (ms per product)\n";
    for (std::size_t n : {32, 64, 128, 256}) {
        const CMatrix a = rng.hermitian(n);
        const CMatrix b = rng.hermitian(n);
        const int reps = n <= 64 ? 50 : 10;
        const double serial = time_ms([&] { kernels::matmul_serial(a, b); }, reps);
        const double parallel = time_ms([&] { kernels::matmul_parallel(a, b); }, reps);
        std::cout << "  n=" << n << "  serial " << serial << "  parallel " << parallel
                  << "  speedup " << serial / parallel << "\n";
    }

    std::cout << "\nconstrained search, 8 restarts x 600 evaluations\n";
    const CompositeSpace space{2, 4};
    const CMatrix meter = position_diag(4);
    CVector xi(4, cx{0.0, 0.0});
    xi[0] = cx{1.0, 0.0};
    CVector up{cx{1.0, 0.0}, cx{0.0, 0.0}};
    SearchOptions options;
    options.restarts = 8;

    const auto run = [&] {
        constrained_search(space, pauli_x(), pauli_z(), meter, xi, {up}, 600, 99, options);
    };
    const double parallel_ms = time_ms(run, 3);
    std::cout << "  restart-parallel " << parallel_ms << " ms\n";
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double serial_ms = time_ms(run, 3);
    omp_set_num_threads(saved);
    std::cout << "  single-thread    " << serial_ms << " ms  (speedup " << serial_ms / parallel_ms
              << ")\n";
#endif
    return 0;
}

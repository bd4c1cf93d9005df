// Benchmark comparing the serial reference kernels against their OpenMP
// counterparts: the direction sweep, the multistart extremum search, and the
// far-field audit.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chordex/chord_scan.hpp"
#include "chordex/nd_search.hpp"
#include "chordex/polytope_analysis.hpp"

using namespace chordex;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif

    // Sweep over a fine grid of directions.
    Body ell(Ellipse2D{Point{0, 0}, 12.0, 1.6, 0.0});
    Point O{-1.0, 1.4};
    const int grid = 2'000'000;
    double sweep_serial = timed([&] { sweep(ell, O, grid, {}, Exec::Serial); });
    double sweep_parallel = timed([&] { sweep(ell, O, grid, {}, Exec::Parallel); });
    report("sweep (2e6 samples)", sweep_serial, sweep_parallel);

    // Multistart direction search on the worked tetrahedron.
    Body tetra(SimplexV{{Point{1, -1, 0}, Point{1, 1, 0}, Point{-1, 0, 1}, Point{-1, 0, -1}}});
    NdSearchOptions nd;
    nd.multistart = 256;
    nd.seed = 42;
    nd.exec = Exec::Serial;
    double nd_serial = timed([&] { find_local_extrema_nd(tetra, Point{0, 0, 0}, nd); });
    nd.exec = Exec::Parallel;
    double nd_parallel = timed([&] { find_local_extrema_nd(tetra, Point{0, 0, 0}, nd); });
    report("nd search (256 starts)", nd_serial, nd_parallel);

    // Far-field audit over independent pivots.
    AuditOptions audit;
    audit.pivot_samples = 24;
    audit.multistart = 32;
    audit.seed = 7;
    audit.exec = Exec::Serial;
    double audit_serial = timed([&] { far_field_audit(tetra, audit); });
    audit.exec = Exec::Parallel;
    double audit_parallel = timed([&] { far_field_audit(tetra, audit); });
    report("far-field audit (24 pivots)", audit_serial, audit_parallel);

    return 0;
}

// Compares the serial reference kernel against the OpenMP kernel on the
// Delta-surface sweep and on a batch of independent spin transports, checking
// that the parallel results are bit-identical while reporting the speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grspin/analysis.hpp"

using namespace grspin;

namespace {

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both kernels run serially\n");
#endif

    SurfaceGrid grid;
    grid.n_rho = 1501;
    grid.n_v = 1501;
    grid.rho_max = 0.999;
    grid.v_max = 0.999;

    DeltaSurface ser, par;
    const double t_ser = timed([&] { ser = delta_surface_serial(grid); });
    const double t_par = timed([&] { par = delta_surface(grid); });

    bool identical = ser.delta_over_phi.size() == par.delta_over_phi.size();
    for (size_t i = 0; identical && i < ser.delta_over_phi.size(); ++i)
        identical = ser.delta_over_phi[i] == par.delta_over_phi[i];

    std::printf("delta-surface %dx%d: serial %.3f s, parallel %.3f s, speedup %.2fx, "
                "bit-identical: %s\n",
                grid.n_rho, grid.n_v, t_ser, t_par, t_ser / t_par,
                identical ? "yes" : "NO");

    // Batch of independent transports (one worldline per tuple).
    const int tuples = 24;
    const long steps = 20000;
    std::vector<double> angles_ser(tuples), angles_par(tuples);
    auto tuple_angle = [&](int i) {
        const double rho = 0.02 + 0.9 * i / tuples;
        const double xi = std::atanh(0.1 + 0.8 * i / tuples);
        const CircularOrbit orbit{rho, 1.0, xi, +1};
        const double tau_f = 1.0 * 1.0 / std::sinh(xi);
        return transport_wigner(orbit, 0.0, tau_f, steps).angle;
    };
    const double t_tser = timed([&] {
        for (int i = 0; i < tuples; ++i) angles_ser[i] = tuple_angle(i);
    });
    const double t_tpar = timed([&] {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < tuples; ++i) angles_par[i] = tuple_angle(i);
    });
    bool same = true;
    for (int i = 0; i < tuples; ++i) same = same && angles_ser[i] == angles_par[i];
    std::printf("transport batch %d x %ld steps: serial %.3f s, parallel %.3f s, "
                "speedup %.2fx, bit-identical: %s\n",
                tuples, steps, t_tser, t_tpar, t_tser / t_tpar, same ? "yes" : "NO");

    return (identical && same) ? 0 : 1;
}

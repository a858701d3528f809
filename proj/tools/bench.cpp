// Timing comparison of the OpenMP kernels against the serial reference on the
// two sweep-heavy workloads: generic section profiles and the degree scan.
#include <chrono>
#include <cstdio>

#include "psf/integrability.hpp"
#include "psf/parallel.hpp"
#include "psf/sections.hpp"
#include "psf/sphere.hpp"

using Clock = std::chrono::steady_clock;

template <class F>
static double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main() {
  const psf::Body superell = psf::Body::superellipsoid(3, 4);
  const psf::Body ellipsoid = psf::Body::ellipsoid(
      Eigen::Vector3d(1.0, 0.25, 1.0 / 9.0).asDiagonal(), Eigen::Vector3d::Zero());
  const psf::Direction xi = psf::Direction::normalized(Eigen::Vector3d(1, 2, 3));

  std::vector<psf::Direction> dirs;
  for (const auto& v : psf::sphere_directions(3, 32, 0)) dirs.emplace_back(v);

  struct Row {
    const char* name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
  };
  Row rows[] = {{"generic section profile, l4 ball, 65 nodes"},
                {"degree scan, ellipsoid, 32 directions"}};

  for (bool parallel : {false, true}) {
    psf::set_parallel(parallel);
    double* slot0 = parallel ? &rows[0].parallel_ms : &rows[0].serial_ms;
    double* slot1 = parallel ? &rows[1].parallel_ms : &rows[1].serial_ms;
    *slot0 = time_ms([&] { psf::section_profile_generic(superell, xi, 65); });
    *slot1 = time_ms([&] { psf::integrability_report(ellipsoid, dirs, 10, 1e-7); });
  }

  std::printf("%-46s %12s %12s %8s\n", "workload", "serial (ms)", "openmp (ms)", "speedup");
  for (const auto& r : rows)
    std::printf("%-46s %12.1f %12.1f %7.2fx\n", r.name, r.serial_ms, r.parallel_ms,
                r.serial_ms / r.parallel_ms);
  return 0;
}

#include <chrono>
#include <cstdio>

#include "scatter/duality.hpp"

// Compares the serial reference sweep against the OpenMP-parallel path on a
// representative Dirichlet disk scene and checks that the outputs agree
// bit-for-bit.

int main() {
  using namespace scatter;
  forward::ScatteringProblem problem;
  nearfield::DiskObstacle disk{{0.0, 0.0}, 1.0};
  auto source = geometry::make_circle({2.0, 0.0}, 0.3, 64);

  duality::FormEvaluator eval = [&](double lambda) {
    potentials::WaveContext ctx(lambda);
    auto nf = nearfield::assemble_FS_direct(problem, disk, source, ctx);
    return nearfield::form_matrix(nf, source, problem.sigma());
  };

  const double lo = 3.0, hi = 7.0, step = 0.05;
  auto run = [&](int par) {
    auto t0 = std::chrono::steady_clock::now();
    auto curve = duality::sweep(eval, problem.sigma(), lo, hi, step, par);
    auto t1 = std::chrono::steady_clock::now();
    return std::pair{std::chrono::duration<double>(t1 - t0).count(), curve};
  };

  auto [t_serial, c_serial] = run(1);
  std::printf("serial        %8.3f s  (%zu samples)\n", t_serial,
              c_serial.samples.size());
  for (int par : {2, 4, 8}) {
    auto [t_par, c_par] = run(par);
    bool same = c_par.samples.size() == c_serial.samples.size();
    for (size_t i = 0; same && i < c_par.samples.size(); ++i)
      same = c_par.samples[i].phi == c_serial.samples[i].phi &&
             c_par.samples[i].psi == c_serial.samples[i].psi;
    std::printf("parallel x%-2d  %8.3f s  speedup %.2f  identical: %s\n", par,
                t_par, t_serial / t_par, same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}

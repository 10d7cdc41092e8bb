// Timing comparison of the OpenMP kernels against their serial reference
// paths: scalability sweep, functional evaluation, and workload simulation.
#include <chrono>
#include <cstdio>
#include <random>

#include "photonsim/archmodel.hpp"
#include "photonsim/cnnworkload.hpp"
#include "photonsim/linkbudget.hpp"
#include "photonsim/mapper.hpp"
#include "photonsim/simengine.hpp"

using namespace photonsim;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = clock_type::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

int main() {
  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial (s)", "openmp (s)", "speedup");

  // 1. Scalability sweep over a dense grid.
  {
    const PhotonicParams params = default_params(Organization::MAM);
    const std::vector<int> precisions = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> brs;
    for (int br = 1; br <= 10; ++br) brs.push_back(br);
    std::vector<ScalabilityPoint> serial_pts, omp_pts;
    const double ts = time_best_of(3, [&] {
      serial_pts = scalability_sweep(Organization::MAM, precisions, brs, params,
                                     Exec::Serial);
    });
    const double tp = time_best_of(3, [&] {
      omp_pts = scalability_sweep(Organization::MAM, precisions, brs, params,
                                  Exec::OpenMP);
    });
    bool same = serial_pts.size() == omp_pts.size();
    for (size_t i = 0; same && i < serial_pts.size(); ++i)
      same = serial_pts[i].n_max == omp_pts[i].n_max;
    std::printf("%-28s %12.4f %12.4f %7.2fx %s\n", "scalability_sweep", ts, tp,
                ts / tp, same ? "" : "MISMATCH");
  }

  // 2. Functional evaluation of a large Case2 schedule.
  {
    DkvMatrix m;
    m.h = 256;
    m.s = 40;
    m.div_count = 512;
    ReconfigurableVdpe vdpe = make_vdpe(43, 9, Organization::RMAM);
    const PassSchedule sch = plan_mapping(m, 16, vdpe);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-8, 8);
    IntMatrix kernel(m.h, std::vector<long long>(m.s));
    IntMatrix divs(m.div_count, std::vector<long long>(m.s));
    for (auto& row : kernel)
      for (auto& v : row) v = dist(rng);
    for (auto& row : divs)
      for (auto& v : row) v = dist(rng);
    IntMatrix rs, rp;
    const double ts =
        time_best_of(3, [&] { rs = functional_eval(sch, kernel, divs, Exec::Serial); });
    const double tp =
        time_best_of(3, [&] { rp = functional_eval(sch, kernel, divs, Exec::OpenMP); });
    std::printf("%-28s %12.4f %12.4f %7.2fx %s\n", "functional_eval", ts, tp,
                ts / tp, rs == rp ? "" : "MISMATCH");
  }

  // 3. Whole-workload simulation.
  {
    ArchConfig cfg;
    cfg.organization = Organization::RMAM;
    cfg.bit_rate_gbps = 1;
    cfg.tiles = 128;
    cfg.tpcs_per_tile = 4;
    cfg.m = 1;
    const ValidatedArchConfig arch = validate_config(cfg);
    const Workload wl = load_workload(WORKLOAD_DIR "/dsc_mobile.csv");
    Workload big;
    for (int i = 0; i < 16; ++i)
      big.layers.insert(big.layers.end(), wl.layers.begin(), wl.layers.end());
    SimReport rs, rp;
    const double ts = time_best_of(3, [&] { rs = simulate(big, arch, Exec::Serial); });
    const double tp = time_best_of(3, [&] { rp = simulate(big, arch, Exec::OpenMP); });
    std::printf("%-28s %12.4f %12.4f %7.2fx %s\n", "simulate", ts, tp, ts / tp,
                rs.total_latency_s == rp.total_latency_s ? "" : "MISMATCH");
  }
  return 0;
}

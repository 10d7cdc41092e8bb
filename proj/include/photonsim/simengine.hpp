// Transaction-level weight-stationary performance, power, and area model,
// plus the area-proportionate normalization across accelerators.
#pragma once

#include <stdexcept>
#include <vector>

#include "photonsim/archmodel.hpp"
#include "photonsim/cnnworkload.hpp"
#include "photonsim/mapper.hpp"

namespace photonsim {

class NoWork : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatencyModel {
  double symbol_time_ns = 1.0;  // 1/BR
  double dac_ns = 0.78;
  double adc_conversion_ns = 1.0;  // one symbol
  double pd_ns = 0.0058;
  double tia_ns = 150.0;
  double reduction_step_ns = 3.125;
  double eo_tuning_ns = 20.0;
  double to_tuning_ns = 4000.0;
  int pipeline_depth = 5;
};

LatencyModel latency_model_for(const ValidatedArchConfig& arch);

// Per pass: weight programming (EO) + streaming + pipeline drain with the
// psum-reduction tail; concurrent VDPEs share the wave, waves accumulate.
// Thermal bias (TO) is charged once per layer.
double layer_latency_ns(const PassSchedule& schedule, const LatencyModel& lat);

struct PowerBreakdown {
  double laser_w = 0.0;
  double tuning_w = 0.0;
  double dac_w = 0.0;
  double adc_w = 0.0;
  double pd_tia_w = 0.0;
  double peripherals_w = 0.0;
  double total_w() const {
    return laser_w + tuning_w + dac_w + adc_w + pd_tia_w + peripherals_w;
  }
};

PowerBreakdown static_power(const ValidatedArchConfig& arch);

struct AreaModel {
  double mrr_unit_area_mm2 = 0.0;  // d_MRR pitch squared
  double cs_pair_area_mm2 = 0.0;   // 6 * mrr_unit_area
  double dkv_sites_mm2 = 0.0;
  double div_sites_mm2 = 0.0;
  double cs_sites_mm2 = 0.0;
  double tile_peripherals_mm2 = 0.0;
  double total_mm2 = 0.0;
};

// MRR-equivalent site count of one VDPE: n + 6y, plus a dedicated n-MRR DIV
// element in the AMM family (the MAM-family DIV element is per TPC).
long per_vdpe_mrr_equivalents(Organization org, int n, int y);

AreaModel area(const ValidatedArchConfig& arch);

// For each candidate, the largest total_vdpes whose area does not exceed the
// reference area.
std::vector<long> area_proportionate_counts(
    const ValidatedArchConfig& reference,
    const std::vector<ValidatedArchConfig>& candidates);

struct SimReport {
  double total_latency_s = 0.0;
  double fps = 0.0;
  PowerBreakdown power;
  double total_power_w = 0.0;
  double fps_per_watt = 0.0;
  double mean_utilization = 0.0;
  double total_area_mm2 = 0.0;
  long long pass_count = 0;
};

SimReport simulate(const Workload& workload, const ValidatedArchConfig& arch,
                   Exec exec = Exec::OpenMP);

std::string to_json_text(const SimReport& report, const ValidatedArchConfig& arch);

}  // namespace photonsim

#include "photonsim/simengine.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace photonsim {

LatencyModel latency_model_for(const ValidatedArchConfig& arch) {
  const PeripheralParams& pp = arch.peripherals();
  LatencyModel lat;
  lat.symbol_time_ns = 1.0 / static_cast<double>(arch.bit_rate_gbps());
  lat.dac_ns = pp.dac.latency_ns;
  lat.adc_conversion_ns = lat.symbol_time_ns;
  lat.pd_ns = pp.photodetector.latency_ns;
  lat.tia_ns = pp.tia.latency_ns;
  lat.reduction_step_ns = pp.reduction_network.latency_ns;
  lat.eo_tuning_ns = pp.eo_tuning.latency_ns;
  lat.to_tuning_ns = pp.to_tuning.latency_ns;
  return lat;
}

double layer_latency_ns(const PassSchedule& schedule, const LatencyModel& lat) {
  const long slices = schedule.slices_per_row();
  const double red_depth =
      slices > 1 ? std::ceil(std::log2(static_cast<double>(slices))) : 0.0;
  const double drain = lat.dac_ns + lat.pd_ns + lat.tia_ns +
                       lat.adc_conversion_ns + lat.reduction_step_ns * red_depth;
  double total = lat.to_tuning_ns;  // one bias event per layer
  for (const auto& pass : schedule.passes)
    total += lat.eo_tuning_ns +
             static_cast<double>(pass.divs_streamed) * lat.symbol_time_ns + drain;
  return total;
}

namespace {

double tpcs_fractional(const ValidatedArchConfig& arch) {
  return static_cast<double>(arch.total_vdpes()) / static_cast<double>(arch.m());
}

double tiles_fractional(const ValidatedArchConfig& arch) {
  return tpcs_fractional(arch) / static_cast<double>(arch.tpcs_per_tile());
}

}  // namespace

PowerBreakdown static_power(const ValidatedArchConfig& arch) {
  const PhotonicParams& p = arch.params();
  const PeripheralParams& pp = arch.peripherals();
  const double vdpes = static_cast<double>(arch.total_vdpes());
  const double tpcs = tpcs_fractional(arch);
  const double tiles = tiles_fractional(arch);
  const double n = arch.n();
  const double y = arch.comb_switch_pairs();
  const bool amm = is_amm_family(arch.organization());

  PowerBreakdown out;
  // One laser diode per wavelength per TPC at p_laser optical output.
  out.laser_w = tpcs * n * p.p_laser_w() / p.wall_plug_eff;

  // DKV modulators always need a DAC per MRR; DIV banks are per VDPE in the
  // AMM family and per TPC in the MAM family.
  const double dkv_dacs = vdpes * n;
  const double div_dacs = amm ? vdpes * n : tpcs * n;
  out.dac_w = (dkv_dacs + div_dacs) * pp.dac.power_mw * 1e-3;

  // One ADC per summation element: the size-N element plus one per
  // comb-switch group.
  const double adcs = vdpes * (1.0 + y);
  out.adc_w = adcs * pp.adc_for(arch.bit_rate_gbps()).power_mw * 1e-3;

  // EO tuning scaled by the mean swing (half an FSR); TO bias over half a
  // channel spacing. Comb switches contribute two rings per pair.
  const double mod_mrrs = dkv_dacs + div_dacs;
  const double cs_rings = vdpes * 2.0 * y;
  out.tuning_w = (mod_mrrs + cs_rings) * pp.eo_tuning.power_mw * 0.5 * 1e-3 +
                 (mod_mrrs + cs_rings) * pp.to_tuning.power_mw /
                     (2.0 * (n + 1.0)) * 1e-3;

  // Balanced photodiode pair plus TIA per summation element.
  out.pd_tia_w = adcs * (2.0 * pp.photodetector.power_mw + pp.tia.power_mw) * 1e-3;

  out.peripherals_w =
      tiles *
      (pp.reduction_network.power_mw + pp.activation_unit.power_mw +
       pp.io_interface.power_mw + pp.pooling_unit.power_mw + pp.edram.power_mw +
       pp.bus_power_mw + pp.router_power_mw) *
      1e-3;
  return out;
}

long per_vdpe_mrr_equivalents(Organization org, int n, int y) {
  long sites = n + 6L * y;
  if (is_amm_family(org)) sites += n;
  return sites;
}

AreaModel area(const ValidatedArchConfig& arch) {
  const PhotonicParams& p = arch.params();
  const PeripheralParams& pp = arch.peripherals();
  AreaModel a;
  const double pitch_mm = p.d_mrr_um * 1e-3;
  a.mrr_unit_area_mm2 = pitch_mm * pitch_mm;
  a.cs_pair_area_mm2 = 6.0 * a.mrr_unit_area_mm2;

  const double vdpes = static_cast<double>(arch.total_vdpes());
  const double n = arch.n();
  const double y = arch.comb_switch_pairs();
  const bool amm = is_amm_family(arch.organization());

  a.dkv_sites_mm2 = vdpes * n * a.mrr_unit_area_mm2;
  a.div_sites_mm2 = (amm ? vdpes * n : tpcs_fractional(arch) * n) * a.mrr_unit_area_mm2;
  a.cs_sites_mm2 = vdpes * y * a.cs_pair_area_mm2;

  // In-tile processing units. The bus and router belong to the inter-tile
  // mesh and are excluded here; converters are carried by the power model.
  a.tile_peripherals_mm2 =
      tiles_fractional(arch) *
      (pp.reduction_network.area_mm2 + pp.activation_unit.area_mm2 +
       pp.io_interface.area_mm2 + pp.pooling_unit.area_mm2 + pp.edram.area_mm2);

  a.total_mm2 = a.dkv_sites_mm2 + a.div_sites_mm2 + a.cs_sites_mm2 +
                a.tile_peripherals_mm2;
  return a;
}

std::vector<long> area_proportionate_counts(
    const ValidatedArchConfig& reference,
    const std::vector<ValidatedArchConfig>& candidates) {
  const double budget = area(reference).total_mm2 * (1.0 + 1e-12);
  std::vector<long> out;
  out.reserve(candidates.size());
  for (const auto& cand : candidates) {
    long lo = 0, hi = 1;
    while (area(cand.with_total_vdpes(hi)).total_mm2 <= budget && hi < (1L << 40))
      hi *= 2;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      if (area(cand.with_total_vdpes(mid)).total_mm2 <= budget)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(lo);
  }
  return out;
}

SimReport simulate(const Workload& workload, const ValidatedArchConfig& arch,
                   Exec exec) {
  if (workload.layers.empty())
    throw NoWork("empty workload: latency is zero, FPS undefined");

  const LatencyModel lat = latency_model_for(arch);
  const long nlayers = static_cast<long>(workload.layers.size());
  std::vector<double> latency(nlayers, 0.0);
  std::vector<double> util(nlayers, 0.0);
  std::vector<double> util_weight(nlayers, 0.0);
  std::vector<long long> passes(nlayers, 0);

  auto run_layer = [&](long i) {
    const DkvMatrix m = decompose(workload.layers[i]);
    const PassSchedule sch = plan_mapping(m, arch);
    latency[i] = layer_latency_ns(sch, lat);
    const UtilizationReport u = utilization(sch, arch.n());
    util[i] = u.mean;
    util_weight[i] = static_cast<double>(sch.passes.size()) *
                     static_cast<double>(m.div_count);
    passes[i] = static_cast<long long>(sch.passes.size());
  };

  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nlayers; ++i) run_layer(i);
  } else {
    for (long i = 0; i < nlayers; ++i) run_layer(i);
  }

  SimReport rep;
  double total_ns = 0.0, wsum = 0.0, usum = 0.0;
  for (long i = 0; i < nlayers; ++i) {
    total_ns += latency[i];
    usum += util[i] * util_weight[i];
    wsum += util_weight[i];
    rep.pass_count += passes[i];
  }
  rep.total_latency_s = total_ns * 1e-9;
  rep.fps = 1.0 / rep.total_latency_s;
  rep.mean_utilization = wsum > 0.0 ? usum / wsum : 0.0;
  rep.power = static_power(arch);
  rep.total_power_w = rep.power.total_w();
  rep.fps_per_watt = rep.fps / rep.total_power_w;
  rep.total_area_mm2 = area(arch).total_mm2;
  return rep;
}

std::string to_json_text(const SimReport& rep, const ValidatedArchConfig& arch) {
  nlohmann::ordered_json j;
  j["total_latency_s"] = rep.total_latency_s;
  j["fps"] = rep.fps;
  nlohmann::ordered_json pw;
  pw["laser_w"] = rep.power.laser_w;
  pw["tuning_w"] = rep.power.tuning_w;
  pw["dac_w"] = rep.power.dac_w;
  pw["adc_w"] = rep.power.adc_w;
  pw["pd_tia_w"] = rep.power.pd_tia_w;
  pw["peripherals_w"] = rep.power.peripherals_w;
  j["power_breakdown"] = pw;
  j["total_power_w"] = rep.total_power_w;
  j["fps_per_watt"] = rep.fps_per_watt;
  j["mean_utilization"] = rep.mean_utilization;
  j["total_area_mm2"] = rep.total_area_mm2;
  j["pass_count"] = rep.pass_count;
  j["config"] = nlohmann::ordered_json::parse(to_json_text(arch));
  return j.dump(2);
}

}  // namespace photonsim

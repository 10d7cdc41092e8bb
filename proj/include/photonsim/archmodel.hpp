// Accelerator organizations, device parameters, and system topology.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace photonsim {

enum class Organization { AMM, MAM, RAMM, RMAM };

constexpr bool is_reconfigurable(Organization org) {
  return org == Organization::RAMM || org == Organization::RMAM;
}

// AMM/RAMM: every VDPE carries its own DIV element. MAM/RMAM: one DIV
// element is shared by all VDPEs of a TPC.
constexpr bool is_amm_family(Organization org) {
  return org == Organization::AMM || org == Organization::RAMM;
}

std::string to_string(Organization org);
Organization organization_from_string(const std::string& name);

// Device and link constants. Loss fields are in dB (linear transmission
// 10^(-dB/10)); powers in W; lengths in mm unless noted.
struct PhotonicParams {
  double p_laser_dbm = 10.0;        // emitted optical power per laser diode
  double responsivity_a_per_w = 1.2;
  double load_resistance_ohm = 50.0;
  double dark_current_a = 35e-9;
  double temperature_k = 300.0;
  double rin_db_per_hz = -140.0;
  double wall_plug_eff = 0.1;

  double il_smf_db = 0.0;
  double il_ec_db = 1.6;
  double il_wg_db_per_mm = 0.3;
  double el_splitter_db = 0.01;
  double il_mrm_db = 4.0;
  double obl_mrm_db = 0.01;
  double il_mrr_db = 0.01;
  double obl_mrr_db = 0.01;   // not tabulated separately; equals il_mrr_db
  double il_penalty_db = 4.8; // 4.8 MAM family, 5.8 AMM family
  // Aggregation-stage DWDM mux loss. Not part of the printed loss chain;
  // calibrated once so the 4-bit link budget lands on the published
  // MAM/AMM VDPE sizes. See decisions ledger.
  double il_mux_db = 2.870;

  double d_mrr_um = 20.0;     // pitch between adjacent MRRs
  double d_element_um = 0.0;  // 0 MAM family, 100 AMM family

  double electron_charge_c = 1.602176634e-19;
  double boltzmann_j_per_k = 1.380649e-23;

  double p_laser_w() const;
  double rin_per_hz() const;

  bool operator==(const PhotonicParams&) const = default;
};

PhotonicParams default_params(Organization org);

struct PeripheralRecord {
  double power_mw = 0.0;
  double area_mm2 = 0.0;
  double latency_ns = 0.0;
};

// Table-driven peripheral constants. ADC depends on the bit rate; bus and
// router latencies are in symbol-clock cycles.
struct PeripheralParams {
  PeripheralRecord dac{30.0, 0.034, 0.78};
  PeripheralRecord reduction_network{0.05, 0.03e-3, 3.125};
  PeripheralRecord activation_unit{0.52, 0.6e-3, 0.78};
  PeripheralRecord io_interface{140.18, 24.4e-3, 0.78};
  PeripheralRecord pooling_unit{0.4, 0.24e-3, 3.125};
  PeripheralRecord edram{41.1, 166e-3, 1.56};
  PeripheralRecord tia{7.2, 0.0, 150.0};
  PeripheralRecord photodetector{2.8, 0.0, 0.0058};
  PeripheralRecord eo_tuning{0.080, 0.0, 20.0};    // 80 uW/FSR
  PeripheralRecord to_tuning{27.5, 0.0, 4000.0};   // 27.5 mW/FSR
  double bus_power_mw = 7.0;
  double bus_area_mm2 = 9e-3;
  double bus_cycles = 5.0;
  double router_power_mw = 42.0;
  double router_area_mm2 = 0.151;
  double router_cycles = 2.0;

  PeripheralRecord adc_for(int bit_rate_gbps) const;

  bool operator==(const PeripheralParams&) const = default;
};

struct ArchConfig {
  Organization organization = Organization::RMAM;
  int bit_rate_gbps = 1;       // one of {1, 3, 5, 10}
  int precision_bits = 4;      // 1..8
  int n = 0;                   // VDPE size; 0 = "auto" (link-budget maximum)
  int m = 1;                   // VDPEs per TPC
  int x = 9;                   // re-aggregation size
  int tpcs_per_tile = 4;
  int tiles = 1;
  long total_vdpes = 0;        // 0 = tiles * tpcs_per_tile * m
  PhotonicParams params;       // defaults applied per organization
  PeripheralParams peripherals;
  bool params_explicit = false; // set by the config loader on overrides
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Immutable, link-budget-checked configuration.
class ValidatedArchConfig {
 public:
  const ArchConfig& raw() const { return cfg_; }
  Organization organization() const { return cfg_.organization; }
  int bit_rate_gbps() const { return cfg_.bit_rate_gbps; }
  int precision_bits() const { return cfg_.precision_bits; }
  int n() const { return cfg_.n; }
  int m() const { return cfg_.m; }
  int x() const { return cfg_.x; }
  int tpcs_per_tile() const { return cfg_.tpcs_per_tile; }
  int tiles() const { return cfg_.tiles; }
  long total_vdpes() const { return cfg_.total_vdpes; }
  const PhotonicParams& params() const { return cfg_.params; }
  const PeripheralParams& peripherals() const { return cfg_.peripherals; }
  bool reconfiguration_enabled() const { return reconfig_; }
  int comb_switch_pairs() const { return pairs_; }

  // Same validated hardware with a different VDPE count (area-proportionate
  // sizing); tile count is re-derived fractionally by the area model.
  ValidatedArchConfig with_total_vdpes(long count) const;

 private:
  friend ValidatedArchConfig validate_config(ArchConfig cfg);
  explicit ValidatedArchConfig(ArchConfig cfg, bool reconfig, int pairs)
      : cfg_(std::move(cfg)), reconfig_(reconfig), pairs_(pairs) {}
  ArchConfig cfg_;
  bool reconfig_ = false;
  int pairs_ = 0;
};

// Applies defaults, resolves n = "auto", and checks every invariant.
// Throws ConfigError listing all violations.
ValidatedArchConfig validate_config(ArchConfig cfg);

// JSON interface. Unknown keys are an error; params entries are whole-field
// replacements.
ArchConfig arch_config_from_json_text(const std::string& text);
ArchConfig load_arch_config(const std::string& path);
std::string to_json_text(const ValidatedArchConfig& cfg);

}  // namespace photonsim

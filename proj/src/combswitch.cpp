#include "photonsim/combswitch.hpp"

#include <cmath>

#include "json.hpp"
#include "photonsim/mapper.hpp"

namespace photonsim {

double channel_spacing_nm(double modulator_fsr_nm, int n) {
  return modulator_fsr_nm / static_cast<double>(n + 1);
}

double comb_fsr_nm(double delta_nm, int n, int x) {
  return static_cast<double>(n) * delta_nm / static_cast<double>(x);
}

double radius_um_from_fsr(double cs_fsr_nm, double center_wavelength_nm,
                          double group_index) {
  // lambda^2/(2*pi*n_g*FSR) in nm; /1000 for um.
  return center_wavelength_nm * center_wavelength_nm /
         (2.0 * M_PI * group_index * cs_fsr_nm * 1000.0);
}

std::optional<double> tabulated_comb_switch_loss_db(Organization org,
                                                    int bit_rate_gbps) {
  if (org == Organization::RMAM) {
    switch (bit_rate_gbps) {
      case 1: return 0.029;
      case 3: return 0.026;
      case 5: return 0.031;
      default: return std::nullopt;
    }
  }
  if (org == Organization::RAMM) {
    switch (bit_rate_gbps) {
      case 1: return 0.029;
      case 3: return 0.028;
      case 5: return 0.0;
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

double comb_switch_loss_db(Organization org, int bit_rate_gbps, int n, int x) {
  if (!is_reconfigurable(org)) return 0.0;
  if (reconfig_group_count(n, x) == 0) return 0.0;
  if (auto il = tabulated_comb_switch_loss_db(org, bit_rate_gbps)) return *il;
  return kMeanCombSwitchLossDb;
}

CombSwitchDesign design_comb_switch(int n, int x, Organization org,
                                    int bit_rate_gbps, double modulator_fsr_nm) {
  CombSwitchDesign d;
  d.n = n;
  d.x = x;
  d.delta_nm = channel_spacing_nm(modulator_fsr_nm, n);
  d.cs_fsr_nm = comb_fsr_nm(d.delta_nm, n, x);
  d.radius_um = radius_um_from_fsr(d.cs_fsr_nm, kCenterWavelengthNm, kCombGroupIndex);
  d.pairs = is_reconfigurable(org) ? reconfig_group_count(n, x) : 0;
  if (d.pairs == 0) {
    d.insertion_loss_db = 0.0;
  } else if (auto il = tabulated_comb_switch_loss_db(org, bit_rate_gbps)) {
    d.insertion_loss_db = *il;
  } else {
    d.insertion_loss_db = kMeanCombSwitchLossDb;
    d.interpolated_loss = true;
  }
  return d;
}

std::string to_json_text(const CombSwitchDesign& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n;
  j["x"] = d.x;
  j["delta_nm"] = d.delta_nm;
  j["cs_fsr_nm"] = d.cs_fsr_nm;
  j["radius_um"] = d.radius_um;
  j["pairs"] = d.pairs;
  j["insertion_loss_db"] = d.insertion_loss_db;
  j["interpolated_loss"] = d.interpolated_loss;
  return j.dump(2);
}

}  // namespace photonsim

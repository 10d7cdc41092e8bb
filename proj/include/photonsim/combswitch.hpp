// MRR comb-switch design: channel spacing, comb FSR, ring radius, pair
// counts, and the insertion-loss contribution consumed by the link budget.
#pragma once

#include <optional>
#include <string>

#include "photonsim/archmodel.hpp"

namespace photonsim {

// Single global group index calibrated by least squares against the five
// published (CS_FSR, radius) pairs at 1550 nm; see decisions ledger.
inline constexpr double kCombGroupIndex = 4.354727900265;
inline constexpr double kCenterWavelengthNm = 1550.0;
inline constexpr double kMeanCombSwitchLossDb = 0.029;

struct CombSwitchDesign {
  int n = 0;
  int x = 9;
  double delta_nm = 0.0;    // channel spacing
  double cs_fsr_nm = 0.0;
  double radius_um = 0.0;
  int pairs = 0;
  double insertion_loss_db = 0.0;
  bool interpolated_loss = false;  // true when no tabulated (org, BR) entry
};

// delta = modulator_fsr / (n + 1)
double channel_spacing_nm(double modulator_fsr_nm, int n);

// CS_FSR = n * delta / x
double comb_fsr_nm(double delta_nm, int n, int x);

// radius = lambda^2 / (2*pi*n_g*FSR), output in micrometres.
double radius_um_from_fsr(double cs_fsr_nm, double center_wavelength_nm,
                          double group_index);

// Published per-(organization, bit-rate) comb-switch insertion losses.
// Zero-pair configurations return 0.
std::optional<double> tabulated_comb_switch_loss_db(Organization org,
                                                    int bit_rate_gbps);

// Loss term the link budget adds for a reconfigurable VDPE of size n.
double comb_switch_loss_db(Organization org, int bit_rate_gbps, int n, int x);

CombSwitchDesign design_comb_switch(int n, int x, Organization org,
                                    int bit_rate_gbps, double modulator_fsr_nm);

std::string to_json_text(const CombSwitchDesign& design);

}  // namespace photonsim

// Photodetector-sensitivity and laser-power solver: maximum VDPE size N
// for a given organization, precision, and bit rate.
#pragma once

#include <stdexcept>
#include <vector>

#include "photonsim/archmodel.hpp"

namespace photonsim {

enum class Exec { Serial, OpenMP };

struct SensitivitySolution {
  int precision_bits = 0;
  double bit_rate_hz = 0.0;
  double p_pd_opt_w = 0.0;  // required optical power at the photodetector
  double beta_a = 0.0;      // noise current scale at the solution
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// No positive received power reaches the requested precision (the RIN term
// bounds the achievable SNR from above).
class NonPhysical : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Effective number of bits resolvable at received power p_pd for the given
// bit rate: (20*log10(R*P / (beta*sqrt(BR/sqrt(2)))) - 1.76) / 6.02.
// Monotone increasing in p_pd.
double effective_bits(double p_pd_w, double bit_rate_hz,
                      const PhotonicParams& params);

// Smallest positive root of effective_bits(p) = precision. Bisection on
// log-power over [1 pW, 1 W], 200 iterations. Throws NonPhysical when the
// precision is unreachable at any power.
SensitivitySolution solve_pd_sensitivity(int precision_bits, double bit_rate_hz,
                                         const PhotonicParams& params);

// Emitted optical power per laser diode needed so that p_pd_opt survives the
// loss chain: waveguide propagation over n*(d_MRR + d_element), 1:m split
// (power division m plus log2(m) excess-loss stages), modulator and filter
// insertion losses, n-1 out-of-band pass-bys of MRM and MRR, aggregation mux,
// network penalty, and optional comb-switch loss. Wall-plug efficiency is a
// property of the electrical power model, not of this optical budget.
double required_laser_power_w(int n, int m, double p_pd_opt_w, Organization org,
                              const PhotonicParams& params,
                              double comb_switch_il_db = 0.0);

// Largest n >= 1 with required power within the per-diode budget (m = n);
// 0 when nothing fits. Reconfigurable organizations include the tabulated
// comb-switch insertion loss whenever floor(n/9) pairs are present.
int max_vdpe_size(Organization org, int precision_bits, int bit_rate_gbps,
                  const PhotonicParams& params);

struct ScalabilityPoint {
  Organization organization;
  int precision_bits;
  int bit_rate_gbps;
  int n_max;
  double received_power_dbm;  // NaN when the precision is unreachable
};

std::vector<ScalabilityPoint> scalability_sweep(
    Organization org, const std::vector<int>& precisions,
    const std::vector<int>& bit_rates, const PhotonicParams& params,
    Exec exec = Exec::OpenMP);

std::string scalability_csv(const std::vector<ScalabilityPoint>& points);

}  // namespace photonsim

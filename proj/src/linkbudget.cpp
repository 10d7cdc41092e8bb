#include "photonsim/linkbudget.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "photonsim/combswitch.hpp"
#include "photonsim/mapper.hpp"

namespace photonsim {

namespace {

double transmission(double db) { return std::pow(10.0, -db / 10.0); }

}  // namespace

double effective_bits(double p_pd_w, double bit_rate_hz,
                      const PhotonicParams& params) {
  const double signal = params.responsivity_a_per_w * p_pd_w;
  const double shot = 2.0 * params.electron_charge_c *
                      (signal + params.dark_current_a);
  const double thermal = 4.0 * params.boltzmann_j_per_k * params.temperature_k /
                         params.load_resistance_ohm;
  const double rin = signal * signal * params.rin_per_hz();
  const double beta = std::sqrt(shot + thermal + rin);
  const double noise_band = std::sqrt(bit_rate_hz / std::sqrt(2.0));
  const double arg = signal / (beta * noise_band);
  if (arg <= 0.0) return -std::numeric_limits<double>::infinity();
  return (20.0 * std::log10(arg) - 1.76) / 6.02;
}

SensitivitySolution solve_pd_sensitivity(int precision_bits, double bit_rate_hz,
                                         const PhotonicParams& params) {
  if (precision_bits < 1 || precision_bits > 8)
    throw NoConvergence("precision_bits must be in [1,8]");
  if (bit_rate_hz <= 0.0) throw NoConvergence("bit_rate must be positive");

  // effective_bits is monotone increasing in power, with a RIN-set ceiling.
  double lo = -12.0, hi = 0.0;  // log10(P/W): 1 pW .. 1 W
  const double target = static_cast<double>(precision_bits);
  if (effective_bits(std::pow(10.0, hi), bit_rate_hz, params) < target) {
    std::ostringstream os;
    os << "NonPhysical: " << precision_bits << "-bit precision unreachable at "
       << bit_rate_hz * 1e-9 << " Gbps";
    throw NonPhysical(os.str());
  }
  if (effective_bits(std::pow(10.0, lo), bit_rate_hz, params) >= target)
    throw NoConvergence("lower bisection bracket is not below the target");

  for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (effective_bits(std::pow(10.0, mid), bit_rate_hz, params) < target)
      lo = mid;
    else
      hi = mid;
  }
  SensitivitySolution sol;
  sol.precision_bits = precision_bits;
  sol.bit_rate_hz = bit_rate_hz;
  sol.p_pd_opt_w = std::pow(10.0, hi);
  const double signal = params.responsivity_a_per_w * sol.p_pd_opt_w;
  sol.beta_a = std::sqrt(2.0 * params.electron_charge_c *
                             (signal + params.dark_current_a) +
                         4.0 * params.boltzmann_j_per_k * params.temperature_k /
                             params.load_resistance_ohm +
                         signal * signal * params.rin_per_hz());
  return sol;
}

double required_laser_power_w(int n, int m, double p_pd_opt_w, Organization org,
                              const PhotonicParams& params,
                              double comb_switch_il_db) {
  const double length_mm =
      static_cast<double>(n) * (params.d_mrr_um + params.d_element_um) * 1e-3;
  const double waveguide = std::pow(10.0, params.il_wg_db_per_mm * length_mm / 10.0);
  double chain = transmission(params.il_smf_db) * transmission(params.il_ec_db) *
                 transmission(params.il_mrm_db) * transmission(params.il_mrr_db) *
                 std::pow(transmission(params.obl_mrm_db), n - 1) *
                 std::pow(transmission(params.obl_mrr_db), n - 1) *
                 std::pow(transmission(params.el_splitter_db), std::log2(double(m))) *
                 transmission(params.il_penalty_db) *
                 transmission(params.il_mux_db) *
                 transmission(comb_switch_il_db);
  return p_pd_opt_w * waveguide * static_cast<double>(m) / chain;
}

int max_vdpe_size(Organization org, int precision_bits, int bit_rate_gbps,
                  const PhotonicParams& params) {
  double p_pd = 0.0;
  try {
    p_pd = solve_pd_sensitivity(precision_bits, bit_rate_gbps * 1e9, params)
               .p_pd_opt_w;
  } catch (const NonPhysical&) {
    return 0;
  }
  const double budget = params.p_laser_w();
  int best = 0;
  for (int n = 1; n <= 512; ++n) {
    double cs_db = 0.0;
    if (is_reconfigurable(org))
      cs_db = comb_switch_loss_db(org, bit_rate_gbps, n, 9);
    if (required_laser_power_w(n, n, p_pd, org, params, cs_db) <= budget)
      best = n;
  }
  return best;
}

namespace {

ScalabilityPoint sweep_point(Organization org, int bits, int br,
                             const PhotonicParams& params) {
  ScalabilityPoint pt;
  pt.organization = org;
  pt.precision_bits = bits;
  pt.bit_rate_gbps = br;
  try {
    const auto sol = solve_pd_sensitivity(bits, br * 1e9, params);
    pt.received_power_dbm = 10.0 * std::log10(sol.p_pd_opt_w * 1e3);
    pt.n_max = max_vdpe_size(org, bits, br, params);
  } catch (const NonPhysical&) {
    pt.received_power_dbm = std::numeric_limits<double>::quiet_NaN();
    pt.n_max = 0;
  }
  return pt;
}

}  // namespace

std::vector<ScalabilityPoint> scalability_sweep(
    Organization org, const std::vector<int>& precisions,
    const std::vector<int>& bit_rates, const PhotonicParams& params, Exec exec) {
  if (precisions.empty() || bit_rates.empty())
    throw NoConvergence("scalability_sweep requires nonempty axes");
  const long total = static_cast<long>(precisions.size()) *
                     static_cast<long>(bit_rates.size());
  std::vector<ScalabilityPoint> points(total);
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
      const int bits = precisions[i / bit_rates.size()];
      const int br = bit_rates[i % bit_rates.size()];
      points[i] = sweep_point(org, bits, br, params);
    }
  } else {
    for (long i = 0; i < total; ++i) {
      const int bits = precisions[i / bit_rates.size()];
      const int br = bit_rates[i % bit_rates.size()];
      points[i] = sweep_point(org, bits, br, params);
    }
  }
  return points;
}

std::string scalability_csv(const std::vector<ScalabilityPoint>& points) {
  std::ostringstream os;
  os << "organization,precision_bits,bit_rate_gbps,n_max,received_power_dbm\n";
  for (const auto& pt : points) {
    os << to_string(pt.organization) << ',' << pt.precision_bits << ','
       << pt.bit_rate_gbps << ',' << pt.n_max << ',';
    if (std::isnan(pt.received_power_dbm))
      os << "na";
    else
      os << pt.received_power_dbm;
    os << '\n';
  }
  return os.str();
}

}  // namespace photonsim

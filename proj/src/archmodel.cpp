#include "photonsim/archmodel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "photonsim/linkbudget.hpp"
#include "photonsim/mapper.hpp"

namespace photonsim {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Organization org) {
  switch (org) {
    case Organization::AMM: return "AMM";
    case Organization::MAM: return "MAM";
    case Organization::RAMM: return "RAMM";
    case Organization::RMAM: return "RMAM";
  }
  return "?";
}

Organization organization_from_string(const std::string& name) {
  if (name == "AMM") return Organization::AMM;
  if (name == "MAM") return Organization::MAM;
  if (name == "RAMM") return Organization::RAMM;
  if (name == "RMAM") return Organization::RMAM;
  throw ConfigError({"InvalidEnum: unknown organization '" + name + "'"});
}

double PhotonicParams::p_laser_w() const {
  return std::pow(10.0, p_laser_dbm / 10.0) * 1e-3;
}

double PhotonicParams::rin_per_hz() const {
  return std::pow(10.0, rin_db_per_hz / 10.0);
}

PhotonicParams default_params(Organization org) {
  PhotonicParams p;
  if (is_amm_family(org)) {
    p.il_penalty_db = 5.8;
    p.d_element_um = 100.0;
  } else {
    p.il_penalty_db = 4.8;
    p.d_element_um = 0.0;
  }
  return p;
}

PeripheralRecord PeripheralParams::adc_for(int bit_rate_gbps) const {
  switch (bit_rate_gbps) {
    case 1: return {2.55, 0.002, 1.0};
    case 3: return {11.0, 0.021, 1.0 / 3.0};
    default: return {29.0, 0.103, 0.2};  // 5 Gbps entry; reused above 5
  }
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

ValidatedArchConfig ValidatedArchConfig::with_total_vdpes(long count) const {
  ArchConfig cfg = cfg_;
  cfg.total_vdpes = count;
  return ValidatedArchConfig(std::move(cfg), reconfig_, pairs_);
}

ValidatedArchConfig validate_config(ArchConfig cfg) {
  std::vector<std::string> bad;
  if (!cfg.params_explicit) cfg.params = default_params(cfg.organization);

  if (cfg.bit_rate_gbps != 1 && cfg.bit_rate_gbps != 3 && cfg.bit_rate_gbps != 5 &&
      cfg.bit_rate_gbps != 10) {
    bad.push_back("InvalidEnum: bit_rate_gbps must be one of {1,3,5,10}, got " +
                  std::to_string(cfg.bit_rate_gbps));
  }
  if (cfg.precision_bits < 1 || cfg.precision_bits > 8) {
    bad.push_back("NonPositiveDimension: precision_bits must be in [1,8], got " +
                  std::to_string(cfg.precision_bits));
  }
  if (cfg.m < 1) bad.push_back("NonPositiveDimension: m must be >= 1");
  if (cfg.x < 1) bad.push_back("NonPositiveDimension: x must be >= 1");
  if (cfg.tpcs_per_tile < 1) bad.push_back("NonPositiveDimension: tpcs_per_tile must be >= 1");
  if (cfg.tiles < 1) bad.push_back("NonPositiveDimension: tiles must be >= 1");

  const PhotonicParams& p = cfg.params;
  for (auto [v, name] : {std::pair<double, const char*>{p.il_smf_db, "il_smf"},
                         {p.il_ec_db, "il_ec"},
                         {p.il_mrm_db, "il_mrm"},
                         {p.obl_mrm_db, "obl_mrm"},
                         {p.il_mrr_db, "il_mrr"},
                         {p.obl_mrr_db, "obl_mrr"},
                         {p.el_splitter_db, "el_splitter"},
                         {p.il_penalty_db, "il_penalty"},
                         {p.il_mux_db, "il_mux"},
                         {p.il_wg_db_per_mm, "il_wg"}}) {
    if (v < 0.0) bad.push_back(std::string("NonPositiveDimension: ") + name + " must be >= 0 dB");
  }
  if (!(p.wall_plug_eff > 0.0 && p.wall_plug_eff <= 1.0))
    bad.push_back("NonPositiveDimension: wall_plug_eff must be in (0,1]");
  if (p.responsivity_a_per_w <= 0.0) bad.push_back("NonPositiveDimension: responsivity must be > 0");
  if (p.load_resistance_ohm <= 0.0) bad.push_back("NonPositiveDimension: load_resistance must be > 0");
  if (p.temperature_k <= 0.0) bad.push_back("NonPositiveDimension: temperature must be > 0");

  if (!bad.empty()) throw ConfigError(std::move(bad));

  const int n_max = max_vdpe_size(cfg.organization, cfg.precision_bits,
                                  cfg.bit_rate_gbps, cfg.params);
  if (cfg.n == 0) cfg.n = n_max;  // "auto"
  if (cfg.n < 1) {
    bad.push_back("NonPositiveDimension: n must be >= 1 (link budget supports none)");
  } else if (cfg.n > n_max) {
    bad.push_back("InvalidN: n=" + std::to_string(cfg.n) +
                  " exceeds the link-budget maximum " + std::to_string(n_max) +
                  " for " + to_string(cfg.organization) + " at " +
                  std::to_string(cfg.precision_bits) + "-bit, " +
                  std::to_string(cfg.bit_rate_gbps) + " Gbps");
  }
  if (!bad.empty()) throw ConfigError(std::move(bad));

  if (cfg.total_vdpes == 0)
    cfg.total_vdpes = static_cast<long>(cfg.tiles) * cfg.tpcs_per_tile * cfg.m;

  const bool reconfig = is_reconfigurable(cfg.organization);
  const int pairs = reconfig ? reconfig_group_count(cfg.n, cfg.x) : 0;
  return ValidatedArchConfig(std::move(cfg), reconfig && pairs > 0, pairs);
}

namespace {

void apply_params_overrides(PhotonicParams& p, const ordered_json& j) {
  static const std::vector<std::string> keys = {
      "p_laser_dbm", "responsivity_a_per_w", "load_resistance_ohm",
      "dark_current_a", "temperature_k", "rin_db_per_hz", "wall_plug_eff",
      "il_smf_db", "il_ec_db", "il_wg_db_per_mm", "el_splitter_db", "il_mrm_db",
      "obl_mrm_db", "il_mrr_db", "obl_mrr_db", "il_penalty_db", "il_mux_db",
      "d_mrr_um", "d_element_um"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ConfigError({"unknown params key '" + k + "'"});
  }
  auto get = [&](const char* k, double& field) {
    if (j.contains(k)) field = j.at(k).get<double>();
  };
  get("p_laser_dbm", p.p_laser_dbm);
  get("responsivity_a_per_w", p.responsivity_a_per_w);
  get("load_resistance_ohm", p.load_resistance_ohm);
  get("dark_current_a", p.dark_current_a);
  get("temperature_k", p.temperature_k);
  get("rin_db_per_hz", p.rin_db_per_hz);
  get("wall_plug_eff", p.wall_plug_eff);
  get("il_smf_db", p.il_smf_db);
  get("il_ec_db", p.il_ec_db);
  get("il_wg_db_per_mm", p.il_wg_db_per_mm);
  get("el_splitter_db", p.el_splitter_db);
  get("il_mrm_db", p.il_mrm_db);
  get("obl_mrm_db", p.obl_mrm_db);
  get("il_mrr_db", p.il_mrr_db);
  get("obl_mrr_db", p.obl_mrr_db);
  get("il_penalty_db", p.il_penalty_db);
  get("il_mux_db", p.il_mux_db);
  get("d_mrr_um", p.d_mrr_um);
  get("d_element_um", p.d_element_um);
}

}  // namespace

ArchConfig arch_config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError({std::string("JSON parse failure: ") + e.what()});
  }
  static const std::vector<std::string> keys = {
      "organization", "bit_rate_gbps", "precision_bits", "n", "m", "x",
      "tiles", "tpcs_per_tile", "total_vdpes", "params"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ConfigError({"unknown config key '" + it.key() + "'"});
  }
  ArchConfig cfg;
  if (!j.contains("organization")) throw ConfigError({"missing key 'organization'"});
  cfg.organization = organization_from_string(j.at("organization").get<std::string>());
  cfg.params = default_params(cfg.organization);
  if (j.contains("bit_rate_gbps")) cfg.bit_rate_gbps = j.at("bit_rate_gbps").get<int>();
  if (j.contains("precision_bits")) cfg.precision_bits = j.at("precision_bits").get<int>();
  if (j.contains("n")) {
    const auto& n = j.at("n");
    if (n.is_string()) {
      if (n.get<std::string>() != "auto")
        throw ConfigError({"n must be an integer or \"auto\""});
      cfg.n = 0;
    } else {
      cfg.n = n.get<int>();
    }
  }
  if (j.contains("m")) cfg.m = j.at("m").get<int>();
  if (j.contains("x")) cfg.x = j.at("x").get<int>();
  if (j.contains("tiles")) cfg.tiles = j.at("tiles").get<int>();
  if (j.contains("tpcs_per_tile")) cfg.tpcs_per_tile = j.at("tpcs_per_tile").get<int>();
  if (j.contains("total_vdpes")) cfg.total_vdpes = j.at("total_vdpes").get<long>();
  if (j.contains("params")) {
    apply_params_overrides(cfg.params, j.at("params"));
  }
  cfg.params_explicit = true;  // defaults already merged above
  return cfg;
}

ArchConfig load_arch_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open arch config '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return arch_config_from_json_text(ss.str());
}

std::string to_json_text(const ValidatedArchConfig& cfg) {
  ordered_json j;
  j["organization"] = to_string(cfg.organization());
  j["bit_rate_gbps"] = cfg.bit_rate_gbps();
  j["precision_bits"] = cfg.precision_bits();
  j["n"] = cfg.n();
  j["m"] = cfg.m();
  j["x"] = cfg.x();
  j["tiles"] = cfg.tiles();
  j["tpcs_per_tile"] = cfg.tpcs_per_tile();
  j["total_vdpes"] = cfg.total_vdpes();
  j["reconfiguration_enabled"] = cfg.reconfiguration_enabled();
  j["comb_switch_pairs"] = cfg.comb_switch_pairs();
  const PhotonicParams& p = cfg.params();
  ordered_json jp;
  jp["p_laser_dbm"] = p.p_laser_dbm;
  jp["responsivity_a_per_w"] = p.responsivity_a_per_w;
  jp["load_resistance_ohm"] = p.load_resistance_ohm;
  jp["dark_current_a"] = p.dark_current_a;
  jp["temperature_k"] = p.temperature_k;
  jp["rin_db_per_hz"] = p.rin_db_per_hz;
  jp["wall_plug_eff"] = p.wall_plug_eff;
  jp["il_smf_db"] = p.il_smf_db;
  jp["il_ec_db"] = p.il_ec_db;
  jp["il_wg_db_per_mm"] = p.il_wg_db_per_mm;
  jp["el_splitter_db"] = p.el_splitter_db;
  jp["il_mrm_db"] = p.il_mrm_db;
  jp["obl_mrm_db"] = p.obl_mrm_db;
  jp["il_mrr_db"] = p.il_mrr_db;
  jp["obl_mrr_db"] = p.obl_mrr_db;
  jp["il_penalty_db"] = p.il_penalty_db;
  jp["il_mux_db"] = p.il_mux_db;
  jp["d_mrr_um"] = p.d_mrr_um;
  jp["d_element_um"] = p.d_element_um;
  j["params"] = jp;
  return j.dump(2);
}

}  // namespace photonsim

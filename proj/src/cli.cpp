#include "photonsim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "photonsim/archmodel.hpp"
#include "photonsim/cnnworkload.hpp"
#include "photonsim/combswitch.hpp"
#include "photonsim/linkbudget.hpp"
#include "photonsim/mapper.hpp"
#include "photonsim/simengine.hpp"

namespace photonsim {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_text(const std::string& path, const std::string& text) {
  if (auto dir = fs::path(path).parent_path(); !dir.empty())
    fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("IoError: cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

PhotonicParams params_with_overrides(Organization org, const std::string& params_path) {
  PhotonicParams p = default_params(org);
  if (params_path.empty()) return p;
  // Reuse the arch-config loader by wrapping the overrides file.
  std::ifstream in(params_path);
  if (!in) throw std::runtime_error("IoError: cannot open '" + params_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ordered_json wrap;
  wrap["organization"] = to_string(org);
  wrap["params"] = ordered_json::parse(ss.str());
  return arch_config_from_json_text(wrap.dump()).params;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

double gmean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += std::log(x);
  return std::exp(s / static_cast<double>(xs.size()));
}

// ---- scalability ----------------------------------------------------------

int cmd_scalability(const std::string& org_name, const std::string& precisions,
                    const std::string& bit_rates, const std::string& params_path,
                    const std::string& out_path, const std::string& format,
                    bool serial) {
  const Organization org = organization_from_string(org_name);
  const PhotonicParams params = params_with_overrides(org, params_path);
  const auto points =
      scalability_sweep(org, parse_int_list(precisions), parse_int_list(bit_rates),
                        params, serial ? Exec::Serial : Exec::OpenMP);
  if (format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& pt : points) {
      ordered_json row;
      row["organization"] = to_string(pt.organization);
      row["precision_bits"] = pt.precision_bits;
      row["bit_rate_gbps"] = pt.bit_rate_gbps;
      row["n_max"] = pt.n_max;
      if (std::isnan(pt.received_power_dbm))
        row["received_power_dbm"] = nullptr;
      else
        row["received_power_dbm"] = pt.received_power_dbm;
      j.push_back(row);
    }
    emit(out_path, j.dump(2) + "\n");
  } else {
    emit(out_path, scalability_csv(points));
  }
  return 0;
}

// ---- csdesign --------------------------------------------------------------

int cmd_csdesign(const std::string& org_name, int bit_rate, int n, int x,
                 double modulator_fsr, const std::string& out_path) {
  const Organization org = organization_from_string(org_name);
  const CombSwitchDesign d = design_comb_switch(n, x, org, bit_rate, modulator_fsr);
  ordered_json j = ordered_json::parse(to_json_text(d));
  j["organization"] = to_string(org);
  j["bit_rate_gbps"] = bit_rate;
  j["modulator_fsr_nm"] = modulator_fsr;
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

// ---- map -------------------------------------------------------------------

ordered_json utilization_histogram(const UtilizationReport& rep) {
  std::array<long, 10> bins{};
  for (double f : rep.per_pass) {
    int b = std::min(9, static_cast<int>(f * 10.0));
    bins[static_cast<size_t>(std::max(0, b))]++;
  }
  ordered_json j = ordered_json::array();
  for (size_t i = 0; i < bins.size(); ++i) {
    ordered_json bin;
    bin["lo"] = 0.1 * static_cast<double>(i);
    bin["hi"] = 0.1 * static_cast<double>(i + 1);
    bin["passes"] = bins[i];
    j.push_back(bin);
  }
  return j;
}

int cmd_map(const std::string& workload_path, const std::string& arch_path,
            const std::string& out_path, bool full_schedule) {
  const Workload wl = load_workload(workload_path);
  const ValidatedArchConfig arch = validate_config(load_arch_config(arch_path));
  ordered_json layers = ordered_json::array();
  for (const auto& layer : wl.layers) {
    const DkvMatrix m = decompose(layer);
    const PassSchedule sch = plan_mapping(m, arch);
    const UtilizationReport util = utilization(sch, arch.n());
    ordered_json j;
    j["layer"] = layer.name;
    j["kind"] = to_string(layer.kind);
    j["h"] = m.h;
    j["s"] = m.s;
    j["case"] = to_string(sch.plan.map_case);
    j["mode"] = to_string(sch.plan.mode);
    j["slice_lengths"] = sch.plan.slice_lengths;
    j["passes"] = sch.passes.size();
    j["vdpes_used"] = sch.vdpes_used;
    j["mean_utilization"] = util.mean;
    j["utilization_histogram"] = utilization_histogram(util);
    if (full_schedule) {
      ordered_json passes = ordered_json::array();
      for (const auto& pass : sch.passes) {
        ordered_json pj;
        pj["divs_streamed"] = pass.divs_streamed;
        ordered_json as = ordered_json::array();
        for (const auto& a : pass.assignments) {
          ordered_json aj;
          aj["vdpe"] = a.vdpe;
          aj["group"] = a.group;
          aj["row"] = a.row;
          aj["slice_index"] = a.slice_index;
          aj["slice_len"] = a.slice_len;
          as.push_back(aj);
        }
        pj["assignments"] = as;
        passes.push_back(pj);
      }
      j["schedule"] = passes;
    }
    layers.push_back(j);
  }
  ordered_json j;
  j["workload"] = workload_path;
  j["layers"] = layers;
  j["config"] = ordered_json::parse(to_json_text(arch));
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& workload_path, const std::string& arch_path,
                 const std::string& out_path, const std::string& csv_path,
                 bool serial) {
  const Workload wl = load_workload(workload_path);
  const ValidatedArchConfig arch = validate_config(load_arch_config(arch_path));
  const SimReport rep = simulate(wl, arch, serial ? Exec::Serial : Exec::OpenMP);
  emit(out_path, to_json_text(rep, arch) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream row;
    const bool fresh = !fs::exists(csv_path);
    std::ofstream out(csv_path, std::ios::app);
    if (!out) throw std::runtime_error("IoError: cannot write '" + csv_path + "'");
    if (fresh)
      out << "workload,organization,bit_rate_gbps,n,total_vdpes,fps,"
             "total_power_w,fps_per_watt,mean_utilization,total_area_mm2\n";
    out << fs::path(workload_path).stem().string() << ','
        << to_string(arch.organization()) << ',' << arch.bit_rate_gbps() << ','
        << arch.n() << ',' << arch.total_vdpes() << ',' << rep.fps << ','
        << rep.total_power_w << ',' << rep.fps_per_watt << ','
        << rep.mean_utilization << ',' << rep.total_area_mm2 << '\n';
  }
  return 0;
}

// ---- compare ----------------------------------------------------------------

struct CompareCell {
  SimReport report;
  long count = 0;
};

int cmd_compare(const std::string& workloads_arg, const std::string& orgs_arg,
                const std::string& bit_rates_arg, const std::string& ref_org_name,
                long ref_count, int ref_bit_rate, int m, int tpcs_per_tile,
                const std::string& params_path, const std::string& out_dir,
                bool serial) {
  std::vector<std::string> workload_paths;
  {
    std::stringstream ss(workloads_arg);
    std::string item;
    while (std::getline(ss, item, ',')) workload_paths.push_back(item);
  }
  std::vector<Organization> orgs;
  {
    std::stringstream ss(orgs_arg);
    std::string item;
    while (std::getline(ss, item, ',')) orgs.push_back(organization_from_string(item));
  }
  const std::vector<int> bit_rates = parse_int_list(bit_rates_arg);
  const Organization ref_org = organization_from_string(ref_org_name);

  std::vector<Workload> workloads;
  for (const auto& p : workload_paths) workloads.push_back(load_workload(p));

  auto make_cfg = [&](Organization org, int br, long total) {
    ArchConfig cfg;
    cfg.organization = org;
    cfg.bit_rate_gbps = br;
    cfg.precision_bits = 4;
    cfg.n = 0;  // auto
    cfg.m = m;
    cfg.tpcs_per_tile = tpcs_per_tile;
    cfg.tiles = std::max(1L, total / (static_cast<long>(tpcs_per_tile) * m));
    cfg.total_vdpes = total;
    if (!params_path.empty()) {
      cfg.params = params_with_overrides(org, params_path);
      cfg.params_explicit = true;
    }
    return validate_config(cfg);
  };

  // Area-proportionate VDPE counts per bit rate, reference fixed.
  std::map<std::pair<int, Organization>, ValidatedArchConfig> configs;
  ordered_json counts_json = ordered_json::array();
  for (int br : bit_rates) {
    const ValidatedArchConfig ref = make_cfg(ref_org, br, ref_count);
    std::vector<ValidatedArchConfig> cands;
    for (Organization org : orgs) cands.push_back(make_cfg(org, br, ref_count));
    const std::vector<long> counts = area_proportionate_counts(ref, cands);
    for (size_t i = 0; i < orgs.size(); ++i) {
      configs.emplace(std::make_pair(br, orgs[i]),
                      cands[i].with_total_vdpes(counts[i]));
      ordered_json row;
      row["bit_rate_gbps"] = br;
      row["organization"] = to_string(orgs[i]);
      row["n"] = cands[i].n();
      row["total_vdpes"] = counts[i];
      counts_json.push_back(row);
    }
  }

  // Simulations. fps/fps_per_watt normalized to the reference organization
  // at the reference bit rate, per workload.
  const Exec exec = serial ? Exec::Serial : Exec::OpenMP;
  std::map<std::tuple<size_t, int, Organization>, SimReport> cells;
  for (size_t w = 0; w < workloads.size(); ++w)
    for (int br : bit_rates)
      for (Organization org : orgs)
        cells.emplace(std::make_tuple(w, br, org),
                      simulate(workloads[w], configs.at({br, org}), exec));

  std::ostringstream csv;
  csv << "workload,organization,bit_rate_gbps,n,total_vdpes,fps,total_power_w,"
         "fps_per_watt,mean_utilization,normalized_fps,normalized_fps_per_watt\n";
  ordered_json rows = ordered_json::array();
  for (size_t w = 0; w < workloads.size(); ++w) {
    const SimReport& base = cells.at({w, ref_bit_rate, ref_org});
    for (int br : bit_rates)
      for (Organization org : orgs) {
        const SimReport& rep = cells.at({w, br, org});
        const auto& cfg = configs.at({br, org});
        const double nf = rep.fps / base.fps;
        const double nfw = rep.fps_per_watt / base.fps_per_watt;
        csv << fs::path(workload_paths[w]).stem().string() << ','
            << to_string(org) << ',' << br << ',' << cfg.n() << ','
            << cfg.total_vdpes() << ',' << rep.fps << ',' << rep.total_power_w
            << ',' << rep.fps_per_watt << ',' << rep.mean_utilization << ','
            << nf << ',' << nfw << '\n';
        ordered_json row;
        row["workload"] = fs::path(workload_paths[w]).stem().string();
        row["organization"] = to_string(org);
        row["bit_rate_gbps"] = br;
        row["fps"] = rep.fps;
        row["fps_per_watt"] = rep.fps_per_watt;
        row["normalized_fps"] = nf;
        row["normalized_fps_per_watt"] = nfw;
        rows.push_back(row);
      }
  }

  // Geometric means across workloads and the achieved-vs-published ratios.
  auto gmean_fps = [&](Organization org, int br) {
    std::vector<double> xs;
    for (size_t w = 0; w < workloads.size(); ++w)
      xs.push_back(cells.at({w, br, org}).fps);
    return gmean(xs);
  };
  auto gmean_fpw = [&](Organization org, int br) {
    std::vector<double> xs;
    for (size_t w = 0; w < workloads.size(); ++w)
      xs.push_back(cells.at({w, br, org}).fps_per_watt);
    return gmean(xs);
  };

  ordered_json ratios = ordered_json::array();
  auto add_ratio = [&](const std::string& label, double achieved, double published) {
    ordered_json r;
    r["label"] = label;
    r["achieved"] = achieved;
    r["published"] = published;
    ratios.push_back(r);
  };
  auto has = [&](Organization o, int br) {
    return configs.count({br, o}) != 0;
  };
  if (has(Organization::RMAM, 1) && has(Organization::MAM, 1))
    add_ratio("fps RMAM/MAM @1Gbps",
              gmean_fps(Organization::RMAM, 1) / gmean_fps(Organization::MAM, 1), 1.8);
  if (has(Organization::RMAM, 1) && has(Organization::AMM, 1))
    add_ratio("fps RMAM/AMM @1Gbps",
              gmean_fps(Organization::RMAM, 1) / gmean_fps(Organization::AMM, 1), 17.1);
  if (has(Organization::RMAM, 1) && has(Organization::RMAM, 3))
    add_ratio("fps RMAM 1Gbps/3Gbps",
              gmean_fps(Organization::RMAM, 1) / gmean_fps(Organization::RMAM, 3), 5.3);
  if (has(Organization::RMAM, 1) && has(Organization::RMAM, 5))
    add_ratio("fps RMAM 1Gbps/5Gbps",
              gmean_fps(Organization::RMAM, 1) / gmean_fps(Organization::RMAM, 5), 8.0);
  if (has(Organization::RMAM, 1) && has(Organization::MAM, 1))
    add_ratio("fps_per_watt RMAM/MAM @1Gbps",
              gmean_fpw(Organization::RMAM, 1) / gmean_fpw(Organization::MAM, 1), 1.5);

  ordered_json j;
  j["reference"] = {{"organization", to_string(ref_org)},
                    {"total_vdpes", ref_count},
                    {"bit_rate_gbps", ref_bit_rate}};
  j["area_proportionate_counts"] = counts_json;
  j["rows"] = rows;
  j["achieved_vs_published_ratios"] = ratios;
  ordered_json cfgs = ordered_json::array();
  for (const auto& [key, cfg] : configs)
    cfgs.push_back(ordered_json::parse(to_json_text(cfg)));
  j["configs"] = cfgs;

  const std::string dir = out_dir.empty() ? "." : out_dir;
  write_text(dir + "/compare.csv", csv.str());
  write_text(dir + "/compare.json", j.dump(2) + "\n");
  std::cout << "wrote " << dir << "/compare.csv and " << dir << "/compare.json\n";
  for (const auto& r : ratios)
    std::cout << r["label"].get<std::string>() << ": achieved "
              << r["achieved"].get<double>() << " (published "
              << r["published"].get<double>() << ")\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Simulator and analysis toolkit for MRR-based photonic CNN accelerators"};
  app.require_subcommand(1);

  std::string params_path, out_path, out_dir, format = "csv";
  long seed = 0;
  app.add_option("--params", params_path, "JSON file with photonic parameter overrides");
  app.add_option("--out-dir", out_dir, "output directory for multi-file commands");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized test harness generation");
  bool serial = false;
  app.add_flag("--serial", serial, "run single-threaded (reference path)");

  // scalability
  auto* sc = app.add_subcommand("scalability", "link-budget sweep over precision and bit rate");
  std::string sc_org = "MAM", sc_prec = "1,2,3,4,5,6,7,8", sc_br = "1,3,5,10";
  sc->add_option("--org", sc_org, "organization: AMM|MAM|RAMM|RMAM")->required();
  sc->add_option("--precisions", sc_prec, "comma-separated precision list");
  sc->add_option("--bit-rates", sc_br, "comma-separated bit-rate list (Gbps)");
  sc->add_option("--out", out_path, "output file (default stdout)");

  // csdesign
  auto* cs = app.add_subcommand("csdesign", "comb-switch design record");
  std::string cs_org = "RMAM";
  int cs_br = 1, cs_n = 0, cs_x = 9;
  double cs_fsr = 0.0;
  cs->add_option("--org", cs_org)->required();
  cs->add_option("--bit-rate", cs_br)->required();
  cs->add_option("--n", cs_n)->required();
  cs->add_option("--x", cs_x);
  cs->add_option("--modulator-fsr", cs_fsr, "modulator FSR in nm")->required();
  cs->add_option("--out", out_path);

  // map
  auto* mp = app.add_subcommand("map", "mapping schedule summary for workload x arch");
  std::string mp_workload, mp_arch;
  bool mp_full = false;
  mp->add_option("--workload", mp_workload)->required();
  mp->add_option("--arch", mp_arch)->required();
  mp->add_flag("--full-schedule", mp_full, "include the complete pass dump");
  mp->add_option("--out", out_path);

  // simulate
  auto* sim = app.add_subcommand("simulate", "performance/power/area report");
  std::string sim_workload, sim_arch, sim_csv;
  sim->add_option("--workload", sim_workload)->required();
  sim->add_option("--arch", sim_arch)->required();
  sim->add_option("--csv-append", sim_csv, "append a CSV summary row to this file");
  sim->add_option("--out", out_path);

  // compare
  auto* cmp = app.add_subcommand("compare", "area-proportionate comparison across organizations");
  std::string cmp_workloads, cmp_orgs = "RMAM,RAMM,MAM,AMM", cmp_brs = "1,3,5";
  std::string cmp_ref_org = "RMAM";
  long cmp_ref_count = 512;
  int cmp_ref_br = 1, cmp_m = 1, cmp_tpcs = 4;
  cmp->add_option("--workloads", cmp_workloads, "comma-separated workload CSVs")->required();
  cmp->add_option("--orgs", cmp_orgs);
  cmp->add_option("--bit-rates", cmp_brs);
  cmp->add_option("--reference-org", cmp_ref_org);
  cmp->add_option("--reference-count", cmp_ref_count);
  cmp->add_option("--reference-bit-rate", cmp_ref_br, "normalization baseline bit rate");
  cmp->add_option("--m", cmp_m, "VDPEs per TPC");
  cmp->add_option("--tpcs-per-tile", cmp_tpcs);

  std::vector<const char*> argv;
  argv.push_back("photonsim");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sc->parsed())
      return cmd_scalability(sc_org, sc_prec, sc_br, params_path, out_path, format,
                             serial);
    if (cs->parsed())
      return cmd_csdesign(cs_org, cs_br, cs_n, cs_x, cs_fsr, out_path);
    if (mp->parsed()) return cmd_map(mp_workload, mp_arch, out_path, mp_full);
    if (sim->parsed())
      return cmd_simulate(sim_workload, sim_arch, out_path, sim_csv, serial);
    if (cmp->parsed())
      return cmd_compare(cmp_workloads, cmp_orgs, cmp_brs, cmp_ref_org,
                         cmp_ref_count, cmp_ref_br, cmp_m, cmp_tpcs, params_path,
                         out_dir, serial);
  } catch (const ConfigError& e) {
    ordered_json err;
    err["error"] = "ConfigError";
    err["violations"] = e.violations();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace photonsim

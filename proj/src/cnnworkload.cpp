#include "photonsim/cnnworkload.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace photonsim {

std::string to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::SC: return "SC";
    case LayerKind::DC: return "DC";
    case LayerKind::PC: return "PC";
    case LayerKind::FC: return "FC";
  }
  return "?";
}

LayerKind layer_kind_from_string(const std::string& name) {
  if (name == "SC") return LayerKind::SC;
  if (name == "DC") return LayerKind::DC;
  if (name == "PC") return LayerKind::PC;
  if (name == "FC") return LayerKind::FC;
  throw InvariantViolation("unknown layer kind '" + name + "'");
}

void check_layer(const LayerSpec& layer) {
  if (layer.k < 1 || layer.d < 1 || layer.f < 1 || layer.h_out < 1 || layer.w_out < 1)
    throw InvariantViolation("layer '" + layer.name + "': dimensions must be >= 1");
  if (layer.kind == LayerKind::PC && layer.k != 1)
    throw InvariantViolation("layer '" + layer.name + "': PC implies K = 1");
  if (layer.kind == LayerKind::FC && (layer.h_out != 1 || layer.w_out != 1))
    throw InvariantViolation("layer '" + layer.name + "': FC implies H_out = W_out = 1");
}

CostReport sc_costs(const LayerSpec& layer) {
  if (layer.kind != LayerKind::SC)
    throw WrongKind("sc_costs requires an SC layer, got " + to_string(layer.kind));
  check_layer(layer);
  CostReport r;
  const long long kk = static_cast<long long>(layer.k) * layer.k;
  r.weights = kk * layer.d * layer.f;
  r.ops = static_cast<long long>(layer.h_out) * layer.w_out * r.weights;
  r.r_w = 1.0;
  r.r_o = 1.0;
  return r;
}

CostReport dsc_costs(const LayerSpec& dc_layer, long f_pc) {
  if (dc_layer.kind != LayerKind::DC)
    throw WrongKind("dsc_costs requires a DC layer, got " + to_string(dc_layer.kind));
  if (f_pc < 1) throw InvariantViolation("f_pc must be >= 1");
  check_layer(dc_layer);
  CostReport r;
  const long long kk = static_cast<long long>(dc_layer.k) * dc_layer.k;
  const long long hw = static_cast<long long>(dc_layer.h_out) * dc_layer.w_out;
  r.weights = kk * dc_layer.d + static_cast<long long>(dc_layer.d) * f_pc;
  r.ops_dc = hw * kk * dc_layer.d;
  r.ops_pc = hw * dc_layer.d * f_pc;
  r.ops = r.ops_dc + r.ops_pc;
  r.r_w = reduction_factor(dc_layer.k, f_pc);
  r.r_o = r.r_w;
  return r;
}

double reduction_factor(int k, long f) {
  if (k < 1 || f < 1) throw InvariantViolation("reduction_factor requires K,F >= 1");
  return 1.0 / static_cast<double>(f) +
         1.0 / (static_cast<double>(k) * static_cast<double>(k));
}

DkvMatrix decompose(const LayerSpec& layer) {
  check_layer(layer);
  DkvMatrix m;
  m.layer = layer;
  const long long hw = static_cast<long long>(layer.h_out) * layer.w_out;
  switch (layer.kind) {
    case LayerKind::SC:
      m.s = static_cast<long>(layer.k) * layer.k * layer.d;
      m.h = layer.f;
      m.div_count = hw;
      break;
    case LayerKind::DC:
      m.s = static_cast<long>(layer.k) * layer.k;
      m.h = layer.d;
      m.div_count = hw;
      m.channel_matched = true;
      break;
    case LayerKind::PC:
      m.s = layer.d;
      m.h = layer.f;
      m.div_count = hw;
      break;
    case LayerKind::FC:
      m.s = layer.d;
      m.h = layer.f;
      m.div_count = 1;
      break;
  }
  return m;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

long parse_long(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": not an integer: '" + s + "'");
  }
}

}  // namespace

Workload parse_workload(const std::string& text, const std::string& origin) {
  Workload wl;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto fields = split_csv(t);
    if (!header_seen) {
      const std::vector<std::string> expect = {"name", "kind", "K", "D",
                                               "F", "H_out", "W_out"};
      if (fields != expect)
        throw ParseError(where + ": expected header name,kind,K,D,F,H_out,W_out");
      header_seen = true;
      continue;
    }
    if (fields.size() != 7)
      throw ParseError(where + ": expected 7 fields, got " + std::to_string(fields.size()));
    LayerSpec layer;
    layer.name = fields[0];
    try {
      layer.kind = layer_kind_from_string(fields[1]);
    } catch (const InvariantViolation& e) {
      throw ParseError(where + ": " + e.what());
    }
    layer.k = static_cast<int>(parse_long(fields[2], where));
    layer.d = static_cast<int>(parse_long(fields[3], where));
    layer.f = parse_long(fields[4], where);
    layer.h_out = parse_long(fields[5], where);
    layer.w_out = parse_long(fields[6], where);
    try {
      check_layer(layer);
    } catch (const InvariantViolation& e) {
      throw InvariantViolation(where + ": " + e.what());
    }
    wl.layers.push_back(std::move(layer));
  }
  if (!header_seen && !wl.layers.empty())
    throw ParseError(origin + ": missing header");
  return wl;
}

Workload load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open workload '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workload(ss.str(), path);
}

}  // namespace photonsim

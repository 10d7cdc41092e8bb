// CNN layer records, cost formulas, and flattening into decomposed
// kernel-vector matrices.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace photonsim {

enum class LayerKind { SC, DC, PC, FC };

std::string to_string(LayerKind kind);
LayerKind layer_kind_from_string(const std::string& name);

struct LayerSpec {
  std::string name;
  LayerKind kind = LayerKind::SC;
  int k = 1;       // kernel side
  int d = 1;       // input channels
  long f = 1;      // kernel count (DC: occurrence count, stats only)
  long h_out = 1;
  long w_out = 1;
};

class WrongKind : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CostReport {
  long long weights = 0;  // weight points
  long long ops = 0;      // pointwise multiplications
  long long ops_dc = 0;   // DSC split, zero for SC
  long long ops_pc = 0;
  double r_w = 0.0;       // reduction ratios vs the matching SC
  double r_o = 0.0;
};

struct DkvMatrix {
  LayerSpec layer;
  long h = 0;                 // DKV rows
  long s = 0;                 // DKV length
  bool channel_matched = false;
  long long div_count = 0;    // DIVs streamed per DKV row
};

// Checks the kind-specific shape invariants; throws InvariantViolation.
void check_layer(const LayerSpec& layer);

CostReport sc_costs(const LayerSpec& layer);
CostReport dsc_costs(const LayerSpec& dc_layer, long f_pc);

// r_w = r_o = 1/F + 1/K^2.
double reduction_factor(int k, long f);

DkvMatrix decompose(const LayerSpec& layer);

struct Workload {
  std::vector<LayerSpec> layers;
};

// CSV with header name,kind,K,D,F,H_out,W_out; '#' comments; UTF-8.
Workload load_workload(const std::string& path);
Workload parse_workload(const std::string& text, const std::string& origin);

}  // namespace photonsim

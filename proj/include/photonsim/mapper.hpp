// Fixed and reconfigurable VDPE mapping: mode selection, slicing, pass
// scheduling under weight-stationary dataflow, utilization accounting, and
// an exact functional evaluator used as the correctness oracle hook.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "photonsim/archmodel.hpp"
#include "photonsim/cnnworkload.hpp"
#include "photonsim/linkbudget.hpp"

namespace photonsim {

enum class Mode { Mode1, Mode2 };
enum class MapCase { Case1, Case2, Case3, ExactFit };

std::string to_string(Mode mode);
std::string to_string(MapCase c);

// y = floor(n/x) when n >= 2x, else 0.
int reconfig_group_count(int n, int x);

struct ReconfigurableVdpe {
  int n = 1;
  int x = 9;
  int y = 0;  // comb-switch pairs; 0 forces Mode1
};

ReconfigurableVdpe make_vdpe(int n, int x, Organization org);

struct CasePick {
  MapCase map_case;
  Mode mode;
};

// Depends only on the ordering of (s, n, x, 2x).
CasePick select_case(long s, const ReconfigurableVdpe& vdpe);

struct SlicePlan {
  MapCase map_case = MapCase::ExactFit;
  Mode mode = Mode::Mode1;
  long b = 0;        // full-slice count
  long c = 0;        // remainder length, 0 when none
  std::vector<long> slice_lengths;
  std::vector<long> offsets;  // start of each slice within the DKV
};

SlicePlan make_slice_plan(long s, const ReconfigurableVdpe& vdpe);

struct PassAssignment {
  int32_t vdpe = 0;
  int32_t group = -1;  // comb-switch group in Mode2, -1 = whole VDPE
  int64_t row = 0;
  int32_t slice_index = 0;
  int64_t slice_len = 0;
};

struct Pass {
  std::vector<PassAssignment> assignments;
  long long divs_streamed = 0;
};

struct PassSchedule {
  SlicePlan plan;
  int n = 1;
  int y = 0;
  long h = 0;
  long s = 0;
  long long div_count = 0;
  bool channel_matched = false;
  long total_vdpes = 0;
  long vdpes_used = 0;
  std::vector<Pass> passes;
  // Per DKV row: (pass index, assignment index) of each partial result.
  std::vector<std::vector<std::pair<int32_t, int32_t>>> psum_edges;

  long slices_per_row() const { return static_cast<long>(plan.slice_lengths.size()); }
};

class EmptyMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PassSchedule plan_mapping(const DkvMatrix& matrix, long total_vdpes,
                          const ReconfigurableVdpe& vdpe);
PassSchedule plan_mapping(const DkvMatrix& matrix, const ValidatedArchConfig& arch);

struct UtilizationReport {
  std::vector<double> per_pass;  // active-MRR fraction per pass
  double mean = 0.0;             // weighted by divs_streamed
};

UtilizationReport utilization(const PassSchedule& schedule, int n);

using IntMatrix = std::vector<std::vector<long long>>;

// Executes the schedule slice-by-slice with exact integer arithmetic and
// accumulates via psum_edges. result[div][row] = dot(divs[div], kernel[row]).
IntMatrix functional_eval(const PassSchedule& schedule, const IntMatrix& kernel,
                          const IntMatrix& divs, Exec exec = Exec::OpenMP);

}  // namespace photonsim

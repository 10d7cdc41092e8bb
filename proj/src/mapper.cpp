#include "photonsim/mapper.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace photonsim {

std::string to_string(Mode mode) {
  return mode == Mode::Mode1 ? "Mode1" : "Mode2";
}

std::string to_string(MapCase c) {
  switch (c) {
    case MapCase::Case1: return "Case1";
    case MapCase::Case2: return "Case2";
    case MapCase::Case3: return "Case3";
    case MapCase::ExactFit: return "ExactFit";
  }
  return "?";
}

int reconfig_group_count(int n, int x) {
  if (n < 1 || x < 1) return 0;
  return n >= 2 * x ? n / x : 0;
}

ReconfigurableVdpe make_vdpe(int n, int x, Organization org) {
  ReconfigurableVdpe v;
  v.n = n;
  v.x = x;
  v.y = is_reconfigurable(org) ? reconfig_group_count(n, x) : 0;
  return v;
}

CasePick select_case(long s, const ReconfigurableVdpe& vdpe) {
  if (s == vdpe.n) return {MapCase::ExactFit, Mode::Mode1};
  if (s > vdpe.n) return {MapCase::Case1, Mode::Mode1};
  if (vdpe.y >= 1) {
    if (s > vdpe.x) return {MapCase::Case2, Mode::Mode2};
    return {MapCase::Case3, Mode::Mode2};
  }
  return {MapCase::Case3, Mode::Mode1};  // single slice on a plain VDPE
}

SlicePlan make_slice_plan(long s, const ReconfigurableVdpe& vdpe) {
  const CasePick pick = select_case(s, vdpe);
  SlicePlan plan;
  plan.map_case = pick.map_case;
  plan.mode = pick.mode;
  long unit = 0;
  switch (pick.map_case) {
    case MapCase::ExactFit:
      plan.b = 1;
      plan.slice_lengths = {s};
      break;
    case MapCase::Case1:
      unit = vdpe.n;
      break;
    case MapCase::Case2:
      unit = vdpe.x;
      break;
    case MapCase::Case3:
      plan.slice_lengths = {s};
      break;
  }
  if (unit > 0) {
    plan.b = s / unit;
    plan.c = s % unit;
    plan.slice_lengths.assign(plan.b, unit);
    if (plan.c > 0) plan.slice_lengths.push_back(plan.c);
  }
  plan.offsets.resize(plan.slice_lengths.size());
  long off = 0;
  for (size_t i = 0; i < plan.slice_lengths.size(); ++i) {
    plan.offsets[i] = off;
    off += plan.slice_lengths[i];
  }
  return plan;
}

namespace {

void record_edge(PassSchedule& sch, long row, int pass_idx, int assign_idx) {
  sch.psum_edges[row].emplace_back(pass_idx, assign_idx);
}

}  // namespace

PassSchedule plan_mapping(const DkvMatrix& matrix, long total_vdpes,
                          const ReconfigurableVdpe& vdpe) {
  if (matrix.h < 1 || matrix.s < 1)
    throw EmptyMatrix("plan_mapping requires h >= 1 and s >= 1");
  if (total_vdpes < 1) throw EmptyMatrix("plan_mapping requires at least one VDPE");

  PassSchedule sch;
  sch.plan = make_slice_plan(matrix.s, vdpe);
  sch.n = vdpe.n;
  sch.y = vdpe.y;
  sch.h = matrix.h;
  sch.s = matrix.s;
  sch.div_count = matrix.div_count;
  sch.channel_matched = matrix.channel_matched;
  sch.total_vdpes = total_vdpes;
  sch.psum_edges.resize(matrix.h);

  const long slices = sch.slices_per_row();
  const long V = total_vdpes;
  long used = 0;

  if (sch.plan.mode == Mode::Mode1) {
    // One slice per VDPE per pass; (row, slice) pairs in row-major order.
    const long total_items = matrix.h * slices;
    for (long start = 0; start < total_items; start += V) {
      const long count = std::min(V, total_items - start);
      Pass pass;
      pass.divs_streamed = matrix.div_count;
      pass.assignments.reserve(count);
      for (long i = 0; i < count; ++i) {
        const long item = start + i;
        const long row = item / slices;
        const int slice = static_cast<int>(item % slices);
        PassAssignment a;
        a.vdpe = static_cast<int32_t>(i);
        a.group = -1;
        a.row = row;
        a.slice_index = slice;
        a.slice_len = sch.plan.slice_lengths[slice];
        record_edge(sch, row, static_cast<int>(sch.passes.size()),
                    static_cast<int>(pass.assignments.size()));
        pass.assignments.push_back(a);
      }
      used = std::max(used, count);
      sch.passes.push_back(std::move(pass));
    }
  } else {
    // Mode2: each pass loads one slice index of up to y rows per VDPE; all
    // DIVs stream before the next slice index is programmed.
    const long rows_per_pass = V * vdpe.y;
    for (int slice = 0; slice < slices; ++slice) {
      for (long start = 0; start < matrix.h; start += rows_per_pass) {
        const long count = std::min(rows_per_pass, matrix.h - start);
        Pass pass;
        pass.divs_streamed = matrix.div_count;
        pass.assignments.reserve(count);
        for (long i = 0; i < count; ++i) {
          PassAssignment a;
          a.vdpe = static_cast<int32_t>(i / vdpe.y);
          a.group = static_cast<int32_t>(i % vdpe.y);
          a.row = start + i;
          a.slice_index = slice;
          a.slice_len = sch.plan.slice_lengths[slice];
          record_edge(sch, a.row, static_cast<int>(sch.passes.size()),
                      static_cast<int>(pass.assignments.size()));
          pass.assignments.push_back(a);
        }
        used = std::max(used, (count + vdpe.y - 1) / vdpe.y);
        sch.passes.push_back(std::move(pass));
      }
    }
  }
  sch.vdpes_used = used;
  return sch;
}

PassSchedule plan_mapping(const DkvMatrix& matrix, const ValidatedArchConfig& arch) {
  return plan_mapping(matrix, arch.total_vdpes(),
                      make_vdpe(arch.n(), arch.x(), arch.organization()));
}

UtilizationReport utilization(const PassSchedule& schedule, int n) {
  UtilizationReport rep;
  rep.per_pass.reserve(schedule.passes.size());
  double weighted = 0.0;
  double weight_sum = 0.0;
  for (const auto& pass : schedule.passes) {
    std::map<int32_t, long long> active;  // vdpe -> active MRR count
    for (const auto& a : pass.assignments) active[a.vdpe] += a.slice_len;
    double sum = 0.0;
    for (const auto& [vdpe, mrrs] : active)
      sum += static_cast<double>(mrrs) / static_cast<double>(n);
    const double frac = active.empty() ? 0.0 : sum / static_cast<double>(active.size());
    rep.per_pass.push_back(frac);
    const double w = static_cast<double>(pass.divs_streamed);
    weighted += frac * w;
    weight_sum += w;
  }
  rep.mean = weight_sum > 0.0 ? weighted / weight_sum : 0.0;
  return rep;
}

IntMatrix functional_eval(const PassSchedule& schedule, const IntMatrix& kernel,
                          const IntMatrix& divs, Exec exec) {
  if (static_cast<long>(kernel.size()) != schedule.h)
    throw ShapeMismatch("kernel row count must equal h");
  for (const auto& row : kernel)
    if (static_cast<long>(row.size()) != schedule.s)
      throw ShapeMismatch("kernel row length must equal s");
  if (static_cast<long long>(divs.size()) != schedule.div_count)
    throw ShapeMismatch("div count must equal the schedule div_count");
  for (const auto& row : divs)
    if (static_cast<long>(row.size()) != schedule.s)
      throw ShapeMismatch("div row length must equal s");

  const long dcount = static_cast<long>(divs.size());
  IntMatrix result(dcount, std::vector<long long>(schedule.h, 0));

  auto eval_div = [&](long d) {
    for (const auto& pass : schedule.passes) {
      for (const auto& a : pass.assignments) {
        const long off = schedule.plan.offsets[a.slice_index];
        long long partial = 0;
        const auto& krow = kernel[a.row];
        const auto& drow = divs[d];
        for (long t = 0; t < a.slice_len; ++t)
          partial += krow[off + t] * drow[off + t];
        result[d][a.row] += partial;
      }
    }
  };

  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
    for (long d = 0; d < dcount; ++d) eval_div(d);
  } else {
    for (long d = 0; d < dcount; ++d) eval_div(d);
  }
  return result;
}

}  // namespace photonsim

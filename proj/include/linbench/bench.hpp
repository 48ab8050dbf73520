#pragma once

// Task registry and the measurement loop: warmups, timed repetitions on a
// monotonic clock, per-run reseeding, and reduction to summary statistics.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"
#include "linbench/linalg.hpp"
#include "linbench/rng.hpp"

namespace linbench {

/// Sizes for one task. `size` is the primary dimension (or element count
/// for vector tasks); `secondary_size` is m for the solve experiment and
/// the product count for Balassa.
struct TaskParams {
  std::size_t size = 1;
  std::optional<std::size_t> secondary_size;
  double scale_factor = 1.0;
};

/// What a kernel run reports back: status 0 on success and a checksum of
/// its output so reruns can be compared without storing outputs.
struct KernelOutput {
  int status = 0;
  double checksum = 0.0;
};

/// The measured half of a kernel run; inputs are already built.
using PreparedRun = std::function<KernelOutput()>;

struct KernelVariant {
  std::string task_id;
  std::string variant_name;
  /// Builds inputs from the stream and returns the closure doing the work.
  std::function<PreparedRun(RngStream&, const TaskParams&)> prepare;

  KernelOutput operator()(RngStream& rng, const TaskParams& params) const {
    return prepare(rng, params)();
  }
};

/// How a base size responds to scaling.
enum class SizeRule {
  linear,              // matrix dimension
  even_linear,         // matrix dimension rounded down to even, at least 2
  count,               // element count
  power_of_two_count,  // element count rounded down to a power of two
};

struct TaskDefinition {
  std::string id;
  std::string group;
  TaskParams base;
  SizeRule rule = SizeRule::linear;
  /// Whether the local/cluster preset multiplier applies.
  bool follows_preset = true;
  std::function<std::string(const TaskParams&)> label;
  std::vector<KernelVariant> variants;
};

/// Ordered collection of tasks; (task_id, variant_name) pairs are unique.
class TaskRegistry {
 public:
  TaskDefinition& add_task(TaskDefinition task) {
    if (find(task.id) != nullptr) throw invalid_argument("duplicate task '" + task.id + "'");
    auto variants = std::move(task.variants);
    task.variants.clear();
    tasks_.push_back(std::move(task));
    for (auto& v : variants) add_variant(std::move(v));
    return tasks_.back();
  }

  void add_variant(KernelVariant v) {
    TaskDefinition* task = find(v.task_id);
    if (task == nullptr) throw invalid_argument("unknown task '" + v.task_id + "'");
    for (const auto& existing : task->variants) {
      if (existing.variant_name == v.variant_name) {
        throw invalid_argument("duplicate variant '" + v.task_id + "/" + v.variant_name + "'");
      }
    }
    task->variants.push_back(std::move(v));
  }

  const TaskDefinition* find(const std::string& id) const {
    for (const auto& t : tasks_) {
      if (t.id == id) return &t;
    }
    return nullptr;
  }

  TaskDefinition* find(const std::string& id) {
    return const_cast<TaskDefinition*>(std::as_const(*this).find(id));
  }

  const KernelVariant* find_variant(const std::string& task_id, const std::string& name) const {
    const TaskDefinition* t = find(task_id);
    if (t == nullptr) return nullptr;
    for (const auto& v : t->variants) {
      if (v.variant_name == name) return &v;
    }
    return nullptr;
  }

  const std::vector<TaskDefinition>& tasks() const noexcept { return tasks_; }
  bool empty() const noexcept { return tasks_.empty(); }
  std::size_t size() const noexcept { return tasks_.size(); }

 private:
  std::vector<TaskDefinition> tasks_;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t repetitions = 10;
  std::size_t warmups = 1;
  double scale_factor = 1.0;
  /// 1 for local sizes, 5 for cluster sizes.
  double preset_multiplier = 1.0;
  /// Variant names to run; empty means all.
  std::vector<std::string> variant_filter;
  /// Task ids to run; empty means all.
  std::vector<std::string> task_filter;
  bool include_generation_in_timing = true;
};

/// Effective sizes after scaling, plus a note when a rule coerced the size.
struct ScaledParams {
  TaskParams params;
  std::optional<std::string> coercion;
};

inline ScaledParams scale_params(const TaskDefinition& task, double scale_factor,
                                 double preset_multiplier = 1.0) {
  if (!(scale_factor > 0.0)) throw invalid_argument("scale factor must be positive");
  const double factor = scale_factor * (task.follows_preset ? preset_multiplier : 1.0);
  auto scaled = [&](std::size_t base) {
    const double v = std::round(static_cast<double>(base) * factor);
    return v < 1.0 ? std::size_t{1} : static_cast<std::size_t>(v);
  };

  ScaledParams out;
  out.params.scale_factor = factor;
  const std::size_t raw = scaled(task.base.size);
  std::size_t size = raw;
  switch (task.rule) {
    case SizeRule::linear:
    case SizeRule::count:
      break;
    case SizeRule::even_linear:
      size = std::max<std::size_t>(2, raw - raw % 2);
      break;
    case SizeRule::power_of_two_count:
      size = floor_power_of_two(raw);
      break;
  }
  if (size != raw) {
    out.coercion = task.id + ": size " + std::to_string(raw) + " coerced to " + std::to_string(size);
  }
  out.params.size = size;
  if (task.base.secondary_size) out.params.secondary_size = scaled(*task.base.secondary_size);
  return out;
}

struct TimingStats {
  std::vector<double> samples;  // seconds, in run order
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one sample
  std::size_t repetitions = 0;
  std::size_t warmups = 0;

  bool operator==(const TimingStats&) const = default;
};

/// Middle order statistic; mean of the two middle values for even counts.
inline double median_of(std::vector<double> v) {
  if (v.empty()) throw invalid_argument("median of empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

inline TimingStats summarize(std::vector<double> samples, std::size_t warmups) {
  if (samples.empty()) throw invalid_argument("summarize: no samples");
  TimingStats s;
  s.repetitions = samples.size();
  s.warmups = warmups;
  s.median = median_of(samples);
  s.min = *std::min_element(samples.begin(), samples.end());
  s.max = *std::max_element(samples.begin(), samples.end());
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  }
  s.samples = std::move(samples);
  return s;
}

/// A kernel threw; carries the task and variant that failed.
class kernel_failure : public std::runtime_error {
 public:
  kernel_failure(std::string task_id, std::string variant, const std::string& what)
      : std::runtime_error(task_id + "/" + variant + ": " + what),
        task_id_(std::move(task_id)),
        variant_(std::move(variant)) {}

  const std::string& task_id() const noexcept { return task_id_; }
  const std::string& variant() const noexcept { return variant_; }

 private:
  std::string task_id_;
  std::string variant_;
};

/// Called after every run (warmups included) with the run index and output.
using OutputHook = std::function<void(std::size_t run_index, bool warmup, const KernelOutput&)>;

/// Runs `cfg.warmups` untimed then `cfg.repetitions` timed executions, one
/// after another. Run r draws its inputs from
/// RngStream(derive_seed(cfg.seed, task_id, r)), so every variant of a task
/// sees the same inputs and reruns are reproducible.
template <class Clock = std::chrono::steady_clock>
TimingStats run_task(const KernelVariant& variant, const TaskParams& params, const SuiteConfig& cfg,
                     const OutputHook& hook = {}) {
  if (cfg.repetitions < 1) throw invalid_argument("repetitions must be >= 1");
  std::vector<double> samples;
  samples.reserve(cfg.repetitions);
  const std::size_t total = cfg.warmups + cfg.repetitions;
  for (std::size_t run = 0; run < total; ++run) {
    const bool warmup = run < cfg.warmups;
    RngStream rng(derive_seed(cfg.seed, variant.task_id, run));
    KernelOutput out;
    typename Clock::time_point start, stop;
    try {
      if (cfg.include_generation_in_timing) {
        start = Clock::now();
        out = variant.prepare(rng, params)();
        stop = Clock::now();
      } else {
        PreparedRun work = variant.prepare(rng, params);
        start = Clock::now();
        out = work();
        stop = Clock::now();
      }
    } catch (const std::exception& e) {
      throw kernel_failure(variant.task_id, variant.variant_name, e.what());
    }
    if (out.status != 0) {
      throw kernel_failure(variant.task_id, variant.variant_name,
                           "kernel returned status " + std::to_string(out.status));
    }
    if (hook) hook(run, warmup, out);
    if (!warmup) {
      const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
      samples.push_back(static_cast<double>(ns) * 1e-9);
    }
  }
  return summarize(std::move(samples), cfg.warmups);
}

/// One (task, variant) outcome of a suite run.
struct SuiteResult {
  std::string task_id;
  std::string variant;
  std::string group;
  std::string label;
  TaskParams params;
  std::optional<std::string> coercion;
  std::optional<TimingStats> stats;  // absent when the run failed
  std::string checksum;              // digest of timed-run outputs, hex
  std::optional<std::string> error;
};

/// Folds output checksums into one 64-bit digest.
class OutputDigest {
 public:
  void add(const KernelOutput& out) noexcept {
    state_ = mix64(state_ ^ std::bit_cast<std::uint64_t>(out.checksum)) + 0x9E3779B97F4A7C15ULL;
  }
  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int k = 0; k < 16; ++k) s[15 - k] = kDigits[(state_ >> (4 * k)) & 0xF];
    return s;
  }

 private:
  std::uint64_t state_ = 0;
};

inline bool passes_filter(const std::vector<std::string>& filter, const std::string& name) {
  return filter.empty() || std::find(filter.begin(), filter.end(), name) != filter.end();
}

/// Runs every selected (task, variant) in registration order. A failing
/// kernel is recorded in its result and the suite moves on.
template <class Clock = std::chrono::steady_clock>
std::vector<SuiteResult> run_suite(const TaskRegistry& registry, const SuiteConfig& cfg) {
  if (registry.empty()) throw invalid_argument("run_suite: registry is empty");
  std::vector<SuiteResult> results;
  for (const auto& task : registry.tasks()) {
    if (!passes_filter(cfg.task_filter, task.id)) continue;
    const ScaledParams scaled = scale_params(task, cfg.scale_factor, cfg.preset_multiplier);
    for (const auto& variant : task.variants) {
      if (!passes_filter(cfg.variant_filter, variant.variant_name)) continue;
      SuiteResult r{task.id, variant.variant_name, task.group,
                    task.label ? task.label(scaled.params) : task.id,
                    scaled.params, scaled.coercion, std::nullopt, {}, std::nullopt};
      OutputDigest digest;
      try {
        r.stats = run_task<Clock>(variant, scaled.params, cfg,
                                  [&](std::size_t, bool warmup, const KernelOutput& out) {
                                    if (!warmup) digest.add(out);
                                  });
        r.checksum = digest.hex();
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      results.push_back(std::move(r));
    }
  }
  return results;
}

/// Sum of entries; cheap output fingerprint for matrix kernels.
inline double checksum(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v;
  return s;
}

}  // namespace linbench

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "linbench/bench.hpp"
#include "linbench/matrix_core.hpp"
#include "test_support.hpp"

using linbench::KernelOutput;
using linbench::KernelVariant;
using linbench::PreparedRun;
using linbench::RngStream;
using linbench::SuiteConfig;
using linbench::TaskParams;

namespace {

// Manually advanced clock: kernels move it forward to simulate work.
struct FakeClock {
  using duration = std::chrono::nanoseconds;
  using rep = duration::rep;
  using period = duration::period;
  using time_point = std::chrono::time_point<FakeClock>;
  static constexpr bool is_steady = true;
  static inline duration now_value{0};
  static time_point now() { return time_point(now_value); }
  static void advance(double seconds) {
    now_value += std::chrono::duration_cast<duration>(std::chrono::duration<double>(seconds));
  }
};

// Generation costs 1000 fake seconds, the work 2 seconds.
KernelVariant instrumented(const std::string& task = "t", const std::string& name = "v") {
  return {task, name, [](RngStream& rng, const TaskParams&) -> PreparedRun {
            FakeClock::advance(1000.0);
            const double x = rng.uniform();
            return [x] {
              FakeClock::advance(2.0);
              return KernelOutput{0, x};
            };
          }};
}

KernelVariant returning(double value, int status = 0) {
  return {"t", "v", [=](RngStream&, const TaskParams&) -> PreparedRun {
            return [=] { return KernelOutput{status, value}; };
          }};
}

linbench::TaskDefinition task(const std::string& id, std::size_t size,
                              linbench::SizeRule rule = linbench::SizeRule::linear) {
  linbench::TaskDefinition t;
  t.id = id;
  t.group = "g";
  t.base = TaskParams{size, std::nullopt, 1.0};
  t.rule = rule;
  return t;
}

}  // namespace

TEST(Median, OddEvenAndSingle) {
  EXPECT_EQ(linbench::median_of({3, 1, 2}), 2.0);
  EXPECT_EQ(linbench::median_of({4, 1, 3, 2}), 2.5);
  EXPECT_EQ(linbench::median_of({7}), 7.0);
  EXPECT_THROW(linbench::median_of({}), linbench::invalid_argument);
}

TEST(Median, MatchesSortOracleOnRandomMultisets) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream r(seed);
    const std::size_t n = r.uniform_int(1, 40);
    std::vector<double> v(n);
    // Few distinct values so duplicates are common.
    for (double& x : v) x = static_cast<double>(r.uniform_int(0, 5));
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const double expected = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    EXPECT_EQ(linbench::median_of(v), expected) << "seed " << seed;
  }
}

TEST(Summarize, Statistics) {
  const auto s = linbench::summarize({1, 2, 3, 4}, 2);
  EXPECT_EQ(s.median, 2.5);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 4);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(s.repetitions, 4u);
  EXPECT_EQ(s.warmups, 2u);
  EXPECT_EQ(linbench::summarize({0.5}, 0).stddev, 0.0);
}

TEST(RunTask, SingleRepetitionMedianIsTheSample) {
  FakeClock::now_value = {};
  SuiteConfig cfg;
  cfg.repetitions = 1;
  cfg.warmups = 0;
  const auto s = linbench::run_task<FakeClock>(instrumented(), {}, cfg);
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_EQ(s.median, s.samples[0]);
}

TEST(RunTask, GenerationExcludedWhenRequested) {
  SuiteConfig cfg;
  cfg.repetitions = 5;
  cfg.warmups = 2;
  cfg.include_generation_in_timing = false;
  const auto excluded = linbench::run_task<FakeClock>(instrumented(), {}, cfg);
  for (double t : excluded.samples) EXPECT_NEAR(t, 2.0, 1e-9);
  cfg.include_generation_in_timing = true;
  const auto included = linbench::run_task<FakeClock>(instrumented(), {}, cfg);
  for (double t : included.samples) EXPECT_NEAR(t, 1002.0, 1e-9);
  EXPECT_EQ(included.samples.size(), 5u);
}

TEST(RunTask, WarmupsAreUntimedButObserved) {
  SuiteConfig cfg;
  cfg.repetitions = 3;
  cfg.warmups = 2;
  std::vector<std::pair<std::size_t, bool>> seen;
  linbench::run_task<FakeClock>(instrumented(), {}, cfg,
                                [&](std::size_t run, bool warm, const KernelOutput&) {
                                  seen.emplace_back(run, warm);
                                });
  ASSERT_EQ(seen.size(), 5u);
  EXPECT_TRUE(seen[0].second);
  EXPECT_TRUE(seen[1].second);
  EXPECT_FALSE(seen[2].second);
  EXPECT_EQ(seen[4].first, 4u);
}

TEST(RunTask, SameSeedSameOutputs) {
  SuiteConfig cfg;
  cfg.repetitions = 4;
  cfg.seed = 99;
  auto collect = [&] {
    std::vector<double> outs;
    linbench::run_task(instrumented(), {}, cfg,
                       [&](std::size_t, bool, const KernelOutput& o) { outs.push_back(o.checksum); });
    return outs;
  };
  const auto a = collect();
  EXPECT_EQ(a, collect());
  // Every run draws from its own stream.
  EXPECT_NE(a[1], a[2]);
}

TEST(RunTask, ReseedingGivesIdenticalKernelInputs) {
  const TaskParams p{30, std::nullopt, 1.0};
  auto inputs = [&](std::uint64_t seed) {
    RngStream r(linbench::derive_seed(seed, "power", 3));
    return linbench::randn_matrix(r, p.size, p.size, 1.0);
  };
  EXPECT_EQ(inputs(5), inputs(5));
  EXPECT_NE(inputs(5), inputs(6));
}

TEST(RunTask, FailuresCarryTaskAndVariant) {
  SuiteConfig cfg;
  cfg.repetitions = 2;
  try {
    linbench::run_task(returning(1.0, 3), {}, cfg);
    FAIL();
  } catch (const linbench::kernel_failure& e) {
    EXPECT_EQ(e.task_id(), "t");
    EXPECT_EQ(e.variant(), "v");
  }
  const KernelVariant throwing{"t", "boom", [](RngStream&, const TaskParams&) -> PreparedRun {
                                 throw linbench::singular_matrix_error("singular");
                               }};
  EXPECT_THROW(linbench::run_task(throwing, {}, cfg), linbench::kernel_failure);
  cfg.repetitions = 0;
  EXPECT_THROW(linbench::run_task(returning(1.0), {}, cfg), linbench::invalid_argument);
}

TEST(Registry, RejectsDuplicatesAndUnknownTasks) {
  linbench::TaskRegistry reg;
  auto t = task("a", 10);
  t.variants.push_back(returning(1.0));
  t.variants.back().task_id = "a";
  reg.add_task(t);
  EXPECT_THROW(reg.add_task(task("a", 5)), linbench::invalid_argument);
  KernelVariant dup = returning(2.0);
  dup.task_id = "a";
  EXPECT_THROW(reg.add_variant(dup), linbench::invalid_argument);
  KernelVariant orphan = returning(2.0);
  orphan.task_id = "zzz";
  EXPECT_THROW(reg.add_variant(orphan), linbench::invalid_argument);
  EXPECT_NE(reg.find_variant("a", "v"), nullptr);
  EXPECT_EQ(reg.find_variant("a", "w"), nullptr);
}

TEST(ScaleParams, RulesAndCoercionNotes) {
  auto lin = task("lin", 2400);
  EXPECT_EQ(linbench::scale_params(lin, 0.05).params.size, 120u);
  EXPECT_EQ(linbench::scale_params(lin, 1.0, 5.0).params.size, 12000u);
  EXPECT_EQ(linbench::scale_params(lin, 1e-9).params.size, 1u);
  EXPECT_FALSE(linbench::scale_params(lin, 0.05).coercion);
  auto even = task("cm", 2500, linbench::SizeRule::even_linear);
  const auto e = linbench::scale_params(even, 0.05);
  EXPECT_EQ(e.params.size, 124u);
  ASSERT_TRUE(e.coercion);
  EXPECT_EQ(*e.coercion, "cm: size 125 coerced to 124");
  EXPECT_EQ(linbench::scale_params(even, 1e-6).params.size, 2u);
  auto fft = task("fft", 2'400'000, linbench::SizeRule::power_of_two_count);
  EXPECT_EQ(linbench::scale_params(fft, 1.0).params.size, 2'097'152u);
  auto fixed = task("fixed", 100);
  fixed.follows_preset = false;
  EXPECT_EQ(linbench::scale_params(fixed, 1.0, 5.0).params.size, 100u);
  EXPECT_THROW(linbench::scale_params(lin, 0.0), linbench::invalid_argument);
  EXPECT_THROW(linbench::scale_params(lin, -1.0), linbench::invalid_argument);
}

TEST(RunSuite, EmptyRegistryIsInvalid) {
  linbench::TaskRegistry reg;
  EXPECT_THROW(linbench::run_suite(reg, SuiteConfig{}), linbench::invalid_argument);
}

TEST(RunSuite, FiltersOrderingAndFailureRecording) {
  linbench::TaskRegistry reg;
  for (const char* id : {"b", "a"}) {
    auto t = task(id, 4);
    for (const char* v : {"reference", "other"}) {
      KernelVariant kv = returning(1.0);
      kv.task_id = id;
      kv.variant_name = v;
      t.variants.push_back(kv);
    }
    reg.add_task(t);
  }
  KernelVariant bad = returning(1.0, 7);
  bad.task_id = "a";
  bad.variant_name = "broken";
  reg.add_variant(bad);

  SuiteConfig cfg;
  cfg.repetitions = 2;
  const auto all = linbench::run_suite(reg, cfg);
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[0].task_id, "b");
  EXPECT_EQ(all[1].variant, "other");
  EXPECT_TRUE(all[4].error.has_value());
  EXPECT_FALSE(all[4].stats.has_value());

  cfg.variant_filter = {"reference"};
  const auto refs = linbench::run_suite(reg, cfg);
  ASSERT_EQ(refs.size(), 2u);
  for (const auto& r : refs) EXPECT_EQ(r.variant, "reference");

  cfg.variant_filter.clear();
  cfg.task_filter = {"a"};
  EXPECT_EQ(linbench::run_suite(reg, cfg).size(), 3u);
}

TEST(RunSuite, ChecksumsReproducible) {
  linbench::TaskRegistry reg;
  auto t = task("t", 4);
  t.variants.push_back(instrumented());
  reg.add_task(t);
  SuiteConfig cfg;
  cfg.repetitions = 3;
  const auto a = linbench::run_suite(reg, cfg);
  const auto b = linbench::run_suite(reg, cfg);
  EXPECT_EQ(a[0].checksum, b[0].checksum);
  cfg.seed = 7;
  EXPECT_NE(linbench::run_suite(reg, cfg)[0].checksum, a[0].checksum);
}

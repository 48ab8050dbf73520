// linbench command-line driver: suite runs, kernel validation, the linear
// system experiment and Balassa index computation.

#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linbench/linbench.hpp"

namespace {

using namespace linbench;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 42;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --seed, then LINBENCH_SEED, then the default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("LINBENCH_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const std::string text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw usage_error("LINBENCH_SEED is not an unsigned integer: '" + text + "'");
  }
  return v;
}

// Writes to stdout, or to `path` through a temporary file renamed into place.
void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw io_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw io_error("cannot move report to '" + path + "': " + ec.message());
  }
}

std::string render(const ReportDocument& doc, const std::string& format) {
  return format == "md" ? render_markdown(doc) : render_machine(doc, format);
}

// ---- run ----

struct RunFlags {
  std::string suite = "all";
  double scale = 1.0;
  std::string preset = "local";
  std::vector<std::string> variants;
  std::size_t reps = 10;
  std::size_t warmups = 1;
  std::optional<std::uint64_t> seed;
  std::string format = "md";
  std::string out;
  bool time_generation = true;
  std::string host;
};

int cmd_run(const RunFlags& f) {
  TaskRegistry registry;
  register_builtin_suite(registry);

  std::set<std::string> known;
  for (const auto& t : registry.tasks()) {
    for (const auto& v : t.variants) known.insert(v.variant_name);
  }
  for (const auto& v : f.variants) {
    if (!known.count(v)) throw usage_error("unknown variant '" + v + "'");
  }

  SuiteConfig cfg;
  cfg.seed = resolve_seed(f.seed);
  cfg.repetitions = f.reps;
  cfg.warmups = f.warmups;
  cfg.scale_factor = f.scale;
  cfg.preset_multiplier = f.preset == "cluster" ? kClusterMultiplier : 1.0;
  cfg.variant_filter = f.variants;
  cfg.task_filter = suite_tasks(f.suite);
  cfg.include_generation_in_timing = f.time_generation;

  const auto results = run_suite(registry, cfg);

  ReportMetadata meta;
  meta.seed = cfg.seed;
  meta.scale_factor = cfg.scale_factor;
  meta.preset = f.preset;
  meta.repetitions = cfg.repetitions;
  meta.warmups = cfg.warmups;
  meta.include_generation_in_timing = cfg.include_generation_in_timing;
  meta.timestamp = utc_timestamp();
  meta.host = f.host;
  const ReportDocument doc = make_report(results, meta);
  emit(render(doc, f.format), f.out);

  for (const auto& failure : doc.failures) {
    std::cerr << "linbench: " << failure.task_id << "/" << failure.variant << " failed: "
              << failure.error << '\n';
  }
  return doc.failures.empty() ? kExitOk : kExitFailure;
}

// ---- validate ----

int cmd_validate(std::size_t seeds) {
  KernelSet kernels;
#ifdef LINBENCH_INJECT_FAULT
  // Test-only build: a determinant that is off by one part in a million.
  kernels.determinant = [](const DenseMatrix& a) { return determinant(a) * (1.0 + 1e-6); };
#endif
  const auto outcomes = run_validation(seeds, kernels);
  print_validation(outcomes, std::cout);
  const bool ok = all_passed(outcomes);
  std::cout << (ok ? "all oracles passed" : "oracle failures detected") << '\n';
  return ok ? kExitOk : kExitFailure;
}

// ---- solve ----

struct SolveFlags {
  std::size_t n = 200;
  std::size_t m = 20;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 3;
  std::size_t warmups = 1;
  std::string format = "md";
};

KernelVariant fixed_input_variant(const std::string& task, const std::string& name,
                                  std::function<double()> work) {
  return {task, name, [work](RngStream&, const TaskParams&) -> PreparedRun {
            return [work]() { return KernelOutput{0, work()}; };
          }};
}

SuiteResult timed_result(const KernelVariant& v, const std::string& group, const std::string& label,
                         const TaskParams& params, const SuiteConfig& cfg) {
  SuiteResult r{v.task_id, v.variant_name, group, label, params, std::nullopt, std::nullopt, {},
                std::nullopt};
  OutputDigest digest;
  try {
    r.stats = run_task(v, params, cfg, [&](std::size_t, bool warmup, const KernelOutput& out) {
      if (!warmup) digest.add(out);
    });
    r.checksum = digest.hex();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

int cmd_solve(const SolveFlags& f) {
  const std::uint64_t seed = resolve_seed(f.seed);
  constexpr int kRerolls = 3;
  std::optional<LinearSystem> sys;
  for (int attempt = 0; attempt <= kRerolls && !sys; ++attempt) {
    RngStream rng(derive_seed(seed, "solve", static_cast<std::uint64_t>(attempt)));
    LinearSystem candidate = make_planted_system(rng, f.n, f.m);
    try {
      (void)lu_decompose(candidate.a);
      sys = std::move(candidate);
    } catch (const singular_matrix_error&) {
      std::cerr << "linbench: singular draw on attempt " << attempt + 1 << ", re-rolling\n";
    }
  }
  if (!sys) {
    std::cerr << "linbench: no non-singular system after " << kRerolls << " re-rolls\n";
    return kExitFailure;
  }

  const DenseMatrix smart = solve_smart(*sys);
  const DenseMatrix naive = solve_naive(*sys);
  const double err_smart = relative_frobenius(smart, *sys->x_true);
  const double err_naive = relative_frobenius(naive, *sys->x_true);
  const double agreement = relative_frobenius(smart, naive);

  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.repetitions = f.reps;
  cfg.warmups = f.warmups;
  cfg.include_generation_in_timing = false;
  const TaskParams params{f.n, f.m, 1.0};
  const std::string label = "Solving AX = B, A " + square_dims(f.n) + ", B " + with_commas(f.n) +
                            " × " + with_commas(f.m);
  const LinearSystem& s = *sys;
  std::vector<SuiteResult> results;
  results.push_back(timed_result(
      fixed_input_variant("solve", "naive", [&s] { return checksum(solve_naive(s)); }),
      groups::kSolving, label, params, cfg));
  results.push_back(timed_result(
      fixed_input_variant("solve", "smart", [&s] { return checksum(solve_smart(s)); }),
      groups::kSolving, label, params, cfg));

  ReportMetadata meta;
  meta.seed = seed;
  meta.repetitions = cfg.repetitions;
  meta.warmups = cfg.warmups;
  meta.include_generation_in_timing = false;
  meta.timestamp = utc_timestamp();
  const ReportDocument doc = make_report(results, meta);

  if (f.format == "md") {
    std::cout << render_markdown(doc);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "\nRelative error vs planted solution: smart %.3e, naive %.3e\n"
                  "Smart/naive agreement: %.3e\n",
                  err_smart, err_naive, agreement);
    std::cout << buf;
  } else {
    std::cout << render_machine(doc, f.format);
    char buf[160];
    std::snprintf(buf, sizeof buf, "relative_error_smart=%.17g\nrelative_error_naive=%.17g\n",
                  err_smart, err_naive);
    std::cerr << buf;
  }
  return doc.failures.empty() ? kExitOk : kExitFailure;
}

// ---- balassa ----

struct BalassaFlags {
  std::string input;
  std::string out_b;
  std::string out_s;
  bool bench = false;
  std::size_t reps = 5;
  std::size_t warmups = 1;
};

std::string matrix_csv_text(const DenseMatrix& m, const TradeMatrix& labels) {
  return matrix_csv(m, labels.countries, labels.products);
}

int cmd_balassa(const BalassaFlags& f) {
  const TradeMatrix tm = build_trade_matrix(ingest_trade_csv(f.input));
  const BalassaResult r = balassa_matrix(tm);

  if (!f.out_b.empty()) emit(matrix_csv_text(r.b, tm), f.out_b);
  if (!f.out_s.empty()) emit(matrix_csv_text(r.s, tm), f.out_s);
  if (f.out_b.empty() && f.out_s.empty()) std::cout << matrix_csv_text(r.s, tm);

  if (!f.bench) return kExitOk;

  SuiteConfig cfg;
  cfg.repetitions = f.reps;
  cfg.warmups = f.warmups;
  cfg.include_generation_in_timing = false;
  const TaskParams params{tm.countries.size(), tm.products.size(), 1.0};
  const std::string label = "Balassa indices, " + with_commas(tm.countries.size()) +
                            " countries × " + with_commas(tm.products.size()) + " products";
  const DenseMatrix& x = tm.x;
  std::vector<SuiteResult> results;
  results.push_back(timed_result(
      fixed_input_variant("balassa", "reference", [&x] { return checksum(balassa_indices(x).s); }),
      groups::kBalassa, label, params, cfg));
  results.push_back(timed_result(
      fixed_input_variant("balassa", "cellwise",
                          [&x] { return checksum(threshold_indicator(balassa_cellwise(x))); }),
      groups::kBalassa, label, params, cfg));

  ReportMetadata meta;
  meta.seed = cfg.seed;
  meta.repetitions = cfg.repetitions;
  meta.warmups = cfg.warmups;
  meta.include_generation_in_timing = false;
  meta.timestamp = utc_timestamp();
  const ReportDocument doc = make_report(results, meta);
  (f.out_b.empty() && f.out_s.empty() ? std::cerr : std::cout) << render_markdown(doc);
  return doc.failures.empty() ? kExitOk : kExitFailure;
}

// ---- list ----

int cmd_list() {
  TaskRegistry registry;
  register_builtin_suite(registry);
  for (const auto& t : registry.tasks()) {
    std::string variants;
    for (const auto& v : t.variants) variants += (variants.empty() ? "" : ",") + v.variant_name;
    std::cout << t.id << '\t' << t.group << '\t' << variants << '\t'
              << (t.label ? t.label(t.base) : t.id) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linbench: dense linear algebra benchmark suite"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run benchmark tasks and write a ranked report");
  run_cmd->add_option("--suite", run.suite, "Task set")
      ->check(CLI::IsMember({"att", "solve", "balassa", "all"}))
      ->capture_default_str();
  run_cmd->add_option("--scale", run.scale, "Size multiplier (> 0)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--preset", run.preset, "Base sizes")
      ->check(CLI::IsMember({"local", "cluster"}))
      ->capture_default_str();
  run_cmd->add_option("--variants", run.variants, "Comma-separated variant names")->delimiter(',');
  run_cmd->add_option("--reps", run.reps, "Timed repetitions")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  run_cmd->add_option("--warmups", run.warmups, "Untimed warm-up runs")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Master seed (falls back to LINBENCH_SEED, then 42)");
  run_cmd->add_option("--format", run.format, "Report format")
      ->check(CLI::IsMember({"md", "json", "csv"}))
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output file (default stdout)");
  run_cmd->add_option("--time-generation", run.time_generation,
                      "Include input generation in timings")
      ->capture_default_str();
  run_cmd->add_option("--host", run.host, "Free-text machine description for the report");

  std::size_t seeds = 20;
  auto* validate_cmd = app.add_subcommand("validate", "Check every kernel against its oracle");
  validate_cmd->add_option("--seeds", seeds, "Seeds per oracle")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
      ->capture_default_str();

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Naive versus factor-based solution of AX = B");
  solve_cmd->add_option("--n", solve.n, "Rows and columns of A")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20))
      ->capture_default_str();
  solve_cmd->add_option("--m", solve.m, "Columns of B")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20))
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Master seed (falls back to LINBENCH_SEED, then 42)");
  solve_cmd->add_option("--reps", solve.reps, "Timed repetitions")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  solve_cmd->add_option("--warmups", solve.warmups, "Untimed warm-up runs")->capture_default_str();
  solve_cmd->add_option("--format", solve.format, "Table format")
      ->check(CLI::IsMember({"md", "json", "csv"}))
      ->capture_default_str();

  BalassaFlags balassa;
  auto* balassa_cmd = app.add_subcommand("balassa", "Balassa indices from a trade-flow CSV");
  balassa_cmd->add_option("--input", balassa.input, "CSV with header country,product,value")
      ->required();
  balassa_cmd->add_option("--out-b", balassa.out_b, "Write the index matrix here");
  balassa_cmd->add_option("--out-s", balassa.out_s, "Write the 0/1 specialization matrix here");
  balassa_cmd->add_flag("--bench", balassa.bench, "Time the kernel variants");
  balassa_cmd->add_option("--reps", balassa.reps, "Timed repetitions with --bench")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();

  auto* list_cmd = app.add_subcommand("list", "List registered tasks and variants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*validate_cmd) return cmd_validate(seeds);
    if (*solve_cmd) return cmd_solve(solve);
    if (*balassa_cmd) return cmd_balassa(balassa);
    if (*list_cmd) return cmd_list();
  } catch (const usage_error& e) {
    std::cerr << "linbench: " << e.what() << '\n' << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "linbench: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

// One PASS/FAIL line per acceptance criterion; nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "linbench/linbench.hpp"
#include "test_support.hpp"

using namespace linbench;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = true;
  std::string detail;
};

class Criteria {
 public:
  void check(const std::string& name, const std::function<Verdict()>& body) {
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.passed ? "PASS " : "FAIL ") << name;
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << std::endl;
    failed_ += v.passed ? 0 : 1;
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  }
  return worst;
}

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

DenseMatrix positive_matrix(std::uint64_t seed, std::size_t c, std::size_t p) {
  DenseMatrix x = testing_support::random_matrix(seed, c, p);
  for (double& v : x.data()) v = std::abs(v) * 1000.0 + 1e-3;
  return x;
}

// ---- kernel correctness ----

Verdict kernel_correctness() {
  const auto start = Clock::now();
  const auto outcomes = run_validation(20);
  const double elapsed = seconds_since(start);
  std::ostringstream failures;
  for (const auto& o : outcomes) {
    if (!o.passed) failures << ' ' << o.name;
  }
  Verdict v{all_passed(outcomes) && elapsed < 60.0, {}};
  v.detail = std::to_string(outcomes.size()) + " oracles, 20 seeds, " + sci(elapsed) + " s";
  if (!failures.str().empty()) v.detail += ", failed:" + failures.str();
  return v;
}

// ---- Balassa ----

Verdict balassa_suite() {
  double worst_cellwise = 0.0;
  double worst_scale = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix x = positive_matrix(seed, 20, 30);
    const DenseMatrix b = balassa_indices(x).b;
    worst_cellwise = std::max(worst_cellwise, max_abs_diff(b, balassa_cellwise(x)));
    for (double k : {1e-3, 7.0, 1e6}) {
      DenseMatrix kx = x;
      for (double& v : kx.data()) v *= k;
      worst_scale = std::max(worst_scale, max_abs_diff(b, balassa_indices(kx).b));
    }
  }
  DenseMatrix uniform(4, 6);
  for (double& v : uniform.data()) v = 3.5;
  const DenseMatrix s_uniform = balassa_indices(uniform).s;
  bool all_ones = true;
  for (double v : s_uniform.data()) all_ones = all_ones && v == 1.0;

  const DenseMatrix b_block = balassa_indices(from_rows({{10, 0}, {0, 10}})).b;
  const bool block_exact = b_block == from_rows({{2, 0}, {0, 2}});

  Verdict v;
  v.passed = worst_cellwise <= 1e-12 && worst_scale <= 1e-12 && all_ones && block_exact;
  v.detail = "cellwise " + sci(worst_cellwise) + ", scale " + sci(worst_scale) +
             ", uniform S ones " + (all_ones ? "yes" : "no") + ", block B exact " +
             (block_exact ? "yes" : "no");
  return v;
}

// ---- solve experiment ----

double relative_error(const DenseMatrix& x, const DenseMatrix& ref) {
  DenseMatrix d = x;
  for (std::size_t k = 0; k < d.data().size(); ++k) d.data()[k] -= ref.data()[k];
  return frobenius_norm(d) / frobenius_norm(ref);
}

Verdict solve_accuracy() {
  RngStream rng(derive_seed(5, "solve", 0));
  const LinearSystem sys = make_planted_system(rng, 200, 20);
  const DenseMatrix smart = solve_smart(sys);
  const DenseMatrix naive = solve_naive(sys);
  const double e_smart = relative_error(smart, *sys.x_true);
  const double e_naive = relative_error(naive, *sys.x_true);
  const double agree = relative_error(naive, smart);
  return {e_smart <= 1e-6 && e_naive <= 1e-6 && agree <= 1e-6,
          "smart " + sci(e_smart) + ", naive " + sci(e_naive) + ", agreement " + sci(agree)};
}

// Median timings of two registered variants of one task on identical
// inputs, generation excluded. One retry when the order comes out wrong.
Verdict ordinal(const std::string& task, const std::string& fast, const std::string& slow,
                const TaskParams& params) {
  TaskRegistry registry;
  register_builtin_suite(registry);
  const KernelVariant* f = registry.find_variant(task, fast);
  const KernelVariant* s = registry.find_variant(task, slow);
  if (!f || !s) return {false, "variants not registered"};
  SuiteConfig cfg;
  cfg.seed = 42;
  cfg.repetitions = 5;
  cfg.warmups = 1;
  cfg.include_generation_in_timing = false;
  std::string detail;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const double tf = run_task(*f, params, cfg).median;
    const double ts = run_task(*s, params, cfg).median;
    detail += (attempt ? "; retry " : "") + fast + " " + sci(tf) + " s, " + slow + " " + sci(ts) + " s";
    if (tf <= ts) return {true, detail};
  }
  return {false, detail};
}

// ---- reporting ----

SuiteResult synthetic(const std::string& task, const std::string& variant, double median) {
  SuiteResult r;
  r.task_id = task;
  r.variant = variant;
  r.group = groups::kMatrixCalculation;
  r.label = "Operation " + task;
  r.stats = summarize({median, median, median}, 0);
  r.checksum = "0000000000000000";
  return r;
}

Verdict reporting() {
  std::vector<std::string> problems;
  std::vector<SuiteResult> results;
  const std::vector<std::string> variants = {"armadillo", "eigen", "r"};
  for (const std::string task : {"power", "crossprod", "sort"}) {
    double m = 0.3;
    for (const auto& v : variants) results.push_back(synthetic(task, v, m -= 0.1));
  }
  // Tie on "sort": two variants share a median.
  results.back().stats = summarize({0.5, 0.5, 0.5}, 0);
  results[results.size() - 2].stats = summarize({0.5, 0.5, 0.5}, 0);

  ReportMetadata meta;
  meta.seed = 7;
  meta.repetitions = 3;
  const ReportDocument doc = make_report(results, meta);
  if (doc.tables.size() != 1) problems.push_back("expected one table");
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> per_task;
  for (const auto& row : doc.tables.at(0).rows) per_task[row.task_id].emplace_back(row.variant, row.rank);
  for (const auto& [task, rows] : per_task) {
    if (rows.size() != 3) problems.push_back(task + " lacks 3 rows");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].second != k + 1) problems.push_back(task + " ranks not 1..3");
    }
  }
  const auto& sort_rows = per_task["sort"];
  // eigen and r tie at 0.5; armadillo at 0.2 wins, then name order.
  if (sort_rows.size() != 3 || sort_rows[0].first != "armadillo" || sort_rows[1].first != "eigen" ||
      sort_rows[2].first != "r") {
    problems.push_back("tie rule");
  }
  const auto& power_rows = per_task["power"];
  if (power_rows.empty() || power_rows[0].first != "r") problems.push_back("fastest ranks first");

  if (format_median(0.188) != "0.188") problems.push_back("0.188 format");
  if (format_median(4.6e-6) != "4.6e-06") problems.push_back("4.6e-06 format");

  const std::string json = render_machine(doc, "json");
  if (render_machine(parse_report_json(json), "json") != json) problems.push_back("json round trip");

  Verdict v{problems.empty(), {}};
  for (const auto& p : problems) v.detail += (v.detail.empty() ? "" : ", ") + p;
  return v;
}

// ---- end to end ----

struct RunOutcome {
  int exit_code = -1;
  double seconds = 0.0;
  ReportDocument doc;
};

RunOutcome run_cli_suite() {
  RunOutcome r;
  const auto start = Clock::now();
  const auto result = testing_support::run_command(std::string(LINBENCH_CLI) +
                                                   " run --suite all --scale 0.05 --seed 42 --format json");
  r.seconds = seconds_since(start);
  r.exit_code = result.exit_code;
  if (r.exit_code == 0) r.doc = parse_report_json(result.out);
  return r;
}

using Structure = std::vector<std::tuple<std::string, std::string, std::string, std::string>>;

// Group, task, operation and variant of every row, in report order with
// variants sorted inside a task since ranks follow the clock.
Structure structure_of(const ReportDocument& doc) {
  Structure out;
  for (const auto& t : doc.tables) {
    std::vector<std::tuple<std::string, std::string, std::string, std::string>> rows;
    for (const auto& r : t.rows) rows.emplace_back(t.group, r.task_id, r.operation, r.variant);
    std::stable_sort(rows.begin(), rows.end());
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::map<std::pair<std::string, std::string>, std::string> checksums_of(const ReportDocument& doc) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (const auto& t : doc.tables) {
    for (const auto& r : t.rows) out[{r.task_id, r.variant}] = r.checksum;
  }
  return out;
}

Verdict end_to_end() {
  const RunOutcome a = run_cli_suite();
  const RunOutcome b = run_cli_suite();
  std::string detail = "runs " + sci(a.seconds) + " s and " + sci(b.seconds) + " s";
  if (a.exit_code != 0 || b.exit_code != 0) {
    return {false, detail + ", exit codes " + std::to_string(a.exit_code) + "/" +
                       std::to_string(b.exit_code)};
  }
  const bool fast = a.seconds < 120.0 && b.seconds < 120.0;
  const bool same_structure = structure_of(a.doc) == structure_of(b.doc) && !a.doc.tables.empty() &&
                              a.doc.failures.empty() && b.doc.failures.empty();
  const bool same_checksums = checksums_of(a.doc) == checksums_of(b.doc);
  detail += ", " + std::to_string(structure_of(a.doc).size()) + " rows";
  if (!same_structure) detail += ", structure differs";
  if (!same_checksums) detail += ", checksums differ";
  return {fast && same_structure && same_checksums, detail};
}

}  // namespace

int main() {
  Criteria c;
  c.check("kernel correctness suite", kernel_correctness);
  c.check("balassa suite", balassa_suite);
  c.check("solve experiment accuracy (n=200, m=20, seed 5)", solve_accuracy);
  c.check("solve ordinal timing (n=500, m=50): smart <= naive",
          [] { return ordinal("solve", "reference", "naive", TaskParams{500, 50, 1.0}); });
  c.check("transpose ordinal timing (n=1000): builtin <= naive-loop",
          [] { return ordinal("create_modify", "builtin", "naive-loop", TaskParams{1000, std::nullopt, 1.0}); });
  c.check("reporting", reporting);
  c.check("end-to-end run --suite all --scale 0.05 --seed 42", end_to_end);
  return c.failed() == 0 ? 0 : 1;
}

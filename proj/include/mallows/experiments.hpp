#pragma once

// Monte Carlo convergence harness.
//
// Each experiment fans (n, replicate) tasks out to a worker pool. Task k draws
// from RNG stream k of the config's master seed, writes into result slot k,
// and all aggregation happens afterwards in slot order, so reports are
// byte-identical for any thread count.
//
// Finite-n thresholds below are engineering choices: the limit theorems being
// exercised carry no convergence rates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mallows/density.hpp"
#include "mallows/errors.hpp"
#include "mallows/format.hpp"
#include "mallows/measure.hpp"
#include "mallows/oracle.hpp"
#include "mallows/parallel.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"
#include "mallows/sampler.hpp"

namespace mallows {

enum class ExperimentKind { m1_coordinate, m2_product, t1_single, covariance_decay, uniform_marginal, interval_bounds };

NLOHMANN_JSON_SERIALIZE_ENUM(ExperimentKind, {{ExperimentKind::m1_coordinate, "m1_coordinate"},
                                              {ExperimentKind::m2_product, "m2_product"},
                                              {ExperimentKind::t1_single, "t1_single"},
                                              {ExperimentKind::covariance_decay, "covariance_decay"},
                                              {ExperimentKind::uniform_marginal, "uniform_marginal"},
                                              {ExperimentKind::interval_bounds, "interval_bounds"}})

inline std::string to_string(ExperimentKind k) { return nlohmann::json(k).get<std::string>(); }

inline ExperimentKind parse_kind(const std::string& s) {
  for (auto k : {ExperimentKind::m1_coordinate, ExperimentKind::m2_product, ExperimentKind::t1_single,
                 ExperimentKind::covariance_decay, ExperimentKind::uniform_marginal, ExperimentKind::interval_bounds})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown experiment kind '" + s + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::m1_coordinate;
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<std::size_t> n_list;
  std::size_t samples = 1;
  std::size_t grid_m = 10;
  double a = 0.5;
  double y1 = 0.0;
  double y2 = 0.5;
  SeedSpec seed{0};
  std::size_t replicates = 1;
  DiscrepancyMode mode = DiscrepancyMode::all_cells;
  // Hard threshold on the median statistic at the largest n (NaN: kind default).
  double threshold = std::nan("");
  // Require the median statistic to strictly decrease along n_list.
  std::optional<bool> require_decreasing;
  // covariance_decay: n at or below this use exact enumeration.
  std::size_t exact_max_n = 7;
  // interval_bounds: multiplicative slack on the asymptotic bounds.
  double slack = 1.1;
  // t1_single: optional wrong density used as a power check.
  std::optional<double> contrast_beta;

  double default_threshold() const {
    switch (kind) {
      case ExperimentKind::m1_coordinate: return 0.02;
      case ExperimentKind::m2_product: return 0.05;
      case ExperimentKind::t1_single: return 0.05;
      case ExperimentKind::covariance_decay: return 0.02;
      case ExperimentKind::uniform_marginal: return 0.03;
      case ExperimentKind::interval_bounds: return std::nan("");
    }
    return std::nan("");
  }

  double effective_threshold() const { return std::isnan(threshold) ? default_threshold() : threshold; }

  bool effective_require_decreasing() const {
    if (require_decreasing) return *require_decreasing;
    const bool directional = kind == ExperimentKind::m1_coordinate || kind == ExperimentKind::m2_product ||
                             kind == ExperimentKind::t1_single;
    return directional && n_list.size() >= 2;
  }

  // a_n = ceil(a n), clamped to [1, n].
  std::size_t index_for(std::size_t n) const {
    const double raw = std::ceil(a * static_cast<double>(n));
    return static_cast<std::size_t>(std::clamp(raw, 1.0, static_cast<double>(n)));
  }

  void validate() const {
    detail::require(!n_list.empty(), "config: n_list must be nonempty");
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      detail::require(n_list[k] >= 1, "config: every n must be >= 1");
      if (k > 0) detail::require(n_list[k] > n_list[k - 1], "config: n_list must be strictly ascending");
    }
    detail::require(samples >= 1, "config: samples must be >= 1");
    detail::require(replicates >= 1, "config: replicates must be >= 1");
    detail::require(grid_m >= 1, "config: grid_m must be >= 1");
    detail::require(a >= 0.0 && a <= 1.0, "config: a must lie in [0,1]");
    detail::require(y1 >= 0.0 && y1 < y2 && y2 <= 1.0, "config: interval needs 0 <= y1 < y2 <= 1");
    detail::require(slack >= 1.0, "config: slack must be >= 1");
    for (std::size_t n : n_list) {
      BetaSchedule{beta}.q(n);
      if (kind == ExperimentKind::m2_product) BetaSchedule{gamma}.q(n);
    }
  }
};

// ---------------------------------------------------------------------------
// JSON form of the config (also echoed verbatim into every report)

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kind"] = c.kind;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["n_list"] = c.n_list;
  j["samples"] = c.samples;
  j["grid_m"] = c.grid_m;
  j["a"] = c.a;
  j["interval"] = {c.y1, c.y2};
  j["seed"] = c.seed.master_seed;
  j["replicates"] = c.replicates;
  j["mode"] = c.mode == DiscrepancyMode::all_cells ? "all_cells" : "anchored";
  j["threshold"] = c.effective_threshold();
  if (std::isnan(c.effective_threshold())) j["threshold"] = nullptr;
  j["require_decreasing"] = c.effective_require_decreasing();
  j["exact_max_n"] = c.exact_max_n;
  j["slack"] = c.slack;
  if (c.contrast_beta) j["contrast_beta"] = *c.contrast_beta;
  j["schedule"] = "q_n = 1 - beta/n";
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    detail::require(j.is_object(), "config: expected a JSON object");
    ExperimentConfig c;
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.beta = j.value("beta", 0.0);
    c.gamma = j.value("gamma", 0.0);
    c.n_list = j.at("n_list").get<std::vector<std::size_t>>();
    c.samples = j.value("samples", std::size_t{1});
    c.grid_m = j.value("grid_m", std::size_t{10});
    c.a = j.value("a", 0.5);
    if (j.contains("interval")) {
      const auto iv = j.at("interval").get<std::vector<double>>();
      detail::require(iv.size() == 2, "config: interval must be [y1, y2]");
      c.y1 = iv[0];
      c.y2 = iv[1];
    }
    c.seed.master_seed = j.value("seed", std::uint64_t{0});
    c.replicates = j.value("replicates", std::size_t{1});
    const std::string mode = j.value("mode", std::string("all_cells"));
    if (mode == "all_cells") {
      c.mode = DiscrepancyMode::all_cells;
    } else if (mode == "anchored") {
      c.mode = DiscrepancyMode::anchored;
    } else {
      throw InvalidArgument("config: mode must be all_cells or anchored");
    }
    if (j.contains("threshold") && !j.at("threshold").is_null()) c.threshold = j.at("threshold").get<double>();
    if (j.contains("require_decreasing")) c.require_decreasing = j.at("require_decreasing").get<bool>();
    c.exact_max_n = j.value("exact_max_n", std::size_t{7});
    c.slack = j.value("slack", 1.1);
    if (j.contains("contrast_beta") && !j.at("contrast_beta").is_null())
      c.contrast_beta = j.at("contrast_beta").get<double>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

/// One (n, replicate) measurement. replicate < 0 marks an exact row.
struct ReportRow {
  std::size_t n = 0;
  long replicate = 0;
  double statistic = 0.0;
  double stderr_ = 0.0;
  nlohmann::json extra = nlohmann::json::object();
};

struct NSummary {
  std::size_t n = 0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool exact = false;
  double threshold = std::nan("");
  std::optional<bool> pass;  // set only where a threshold applies
};

struct ReportCheck {
  std::string name;
  bool pass = true;
  bool hard = true;  // soft checks are warnings
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string statistic_name;
  std::vector<ReportRow> rows;
  std::vector<NSummary> summaries;
  std::vector<ReportCheck> checks;
  double wall_clock_seconds = 0.0;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.pass || !c.hard; });
  }
};

inline double median_of(std::vector<double> v) {
  detail::require(!v.empty(), "median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

inline nlohmann::json to_json(const ExperimentReport& r, bool include_wall_clock = true) {
  nlohmann::json j;
  j["config"] = to_json(r.config);
  j["statistic"] = r.statistic_name;
  j["threshold_note"] = "finite-n thresholds are engineering choices; the limit theorems give no rates";
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json e{{"n", row.n},
                     {"replicate", row.replicate < 0 ? nlohmann::json("exact") : nlohmann::json(row.replicate)},
                     {"statistic", row.statistic},
                     {"stderr", row.stderr_}};
    if (!row.extra.empty()) e["extra"] = row.extra;
    rows.push_back(std::move(e));
  }
  auto& sums = j["summaries"] = nlohmann::json::array();
  for (const auto& s : r.summaries) {
    nlohmann::json e{{"n", s.n}, {"median", s.median}, {"min", s.min}, {"max", s.max}, {"exact", s.exact}};
    e["threshold"] = std::isnan(s.threshold) ? nlohmann::json(nullptr) : nlohmann::json(s.threshold);
    e["pass"] = s.pass ? nlohmann::json(*s.pass) : nlohmann::json(nullptr);
    sums.push_back(std::move(e));
  }
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"hard", c.hard}, {"detail", c.detail}});
  j["pass"] = r.pass();
  if (include_wall_clock) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

/// Per-n summary CSV: kind,n,replicate,statistic,stderr,threshold,pass.
/// One row per replicate (or "exact"), then one "median" row per n.
inline std::string to_csv(const ExperimentReport& r) {
  std::string out = "kind,n,replicate,statistic,stderr,threshold,pass\n";
  const std::string kind = to_string(r.config.kind);
  auto summary_for = [&](std::size_t n) -> const NSummary* {
    for (const auto& s : r.summaries)
      if (s.n == n) return &s;
    return nullptr;
  };
  auto thr_text = [](double t) { return std::isnan(t) ? std::string() : format_real(t); };
  for (const auto& row : r.rows) {
    const NSummary* s = summary_for(row.n);
    const double thr = s ? s->threshold : std::nan("");
    std::string pass;
    if (row.extra.contains("within_bounds")) {
      pass = row.extra["within_bounds"].get<bool>() ? "true" : "false";
    } else if (!std::isnan(thr)) {
      pass = row.statistic < thr ? "true" : "false";
    }
    out += kind + "," + std::to_string(row.n) + "," + (row.replicate < 0 ? "exact" : std::to_string(row.replicate)) +
           "," + format_real(row.statistic) + "," + format_real(row.stderr_) + "," + thr_text(thr) + "," + pass + "\n";
  }
  for (const auto& s : r.summaries) {
    std::string pass = s.pass ? (*s.pass ? "true" : "false") : "";
    out += kind + "," + std::to_string(s.n) + ",median," + format_real(s.median) + ",," + thr_text(s.threshold) + "," +
           pass + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiment drivers

namespace detail {

inline ExperimentReport make_report(const ExperimentConfig& c, std::string statistic) {
  ExperimentReport rep;
  rep.config = c;
  rep.statistic_name = std::move(statistic);
  return rep;
}

struct TaskResult {
  double statistic = 0.0;
  double stderr_ = 0.0;
  nlohmann::json extra = nlohmann::json::object();
};

// Mean null KS distance ≈ sqrt(pi/2) ln 2 / sqrt(N).
inline double ks_noise_scale(std::size_t samples) {
  return 0.8687311606361592 / std::sqrt(static_cast<double>(samples));
}

// Fans out (n_index, replicate) tasks; slot k uses stream k.
template <class Task>
std::vector<TaskResult> run_replicates(const ExperimentConfig& c, std::size_t threads, Task&& task) {
  const std::size_t total = c.n_list.size() * c.replicates;
  std::vector<TaskResult> results(total);
  parallel_for(total, threads, [&](std::size_t k) {
    const std::size_t n = c.n_list[k / c.replicates];
    Engine rng = make_engine(c.seed, k);
    results[k] = task(n, rng);
  });
  return results;
}

inline void summarize(ExperimentReport& rep, const std::vector<TaskResult>& results) {
  const auto& c = rep.config;
  const double thr = c.effective_threshold();
  for (std::size_t ni = 0; ni < c.n_list.size(); ++ni) {
    std::vector<double> stats;
    for (std::size_t r = 0; r < c.replicates; ++r) {
      const auto& res = results[ni * c.replicates + r];
      rep.rows.push_back({c.n_list[ni], static_cast<long>(r), res.statistic, res.stderr_, res.extra});
      stats.push_back(res.statistic);
    }
    NSummary s;
    s.n = c.n_list[ni];
    s.median = median_of(stats);
    s.min = *std::min_element(stats.begin(), stats.end());
    s.max = *std::max_element(stats.begin(), stats.end());
    if (ni + 1 == c.n_list.size() && !std::isnan(thr)) {
      s.threshold = thr;
      s.pass = s.median < thr;
    }
    rep.summaries.push_back(s);
  }
}

inline void add_threshold_and_trend_checks(ExperimentReport& rep) {
  const auto& c = rep.config;
  std::vector<const NSummary*> mc;
  for (const auto& s : rep.summaries)
    if (!s.exact) mc.push_back(&s);
  if (!mc.empty() && mc.back()->pass) {
    rep.checks.push_back({"median_below_threshold", *mc.back()->pass, true,
                          "median " + format_short(mc.back()->median) + " < " + format_short(mc.back()->threshold) +
                              " at n=" + std::to_string(mc.back()->n)});
  }
  if (c.effective_require_decreasing() && mc.size() >= 2) {
    bool ok = true;
    std::string trail;
    for (std::size_t k = 0; k < mc.size(); ++k) {
      if (k > 0 && !(mc[k]->median < mc[k - 1]->median)) ok = false;
      trail += (k ? " -> " : "") + format_short(mc[k]->median);
    }
    rep.checks.push_back({"median_strictly_decreasing", ok, true, trail});
  }
}

inline CellMasses u_cell_masses(std::size_t m, double beta) {
  return make_cell_masses(m, [beta](const Rect& r) { return u_rect(r, {beta}); });
}

}  // namespace detail

/// π(a_n)/n under μ_{n,1-β/n} against the CDF y -> ∫_0^y u(a,t,β) dt (KS).
inline ExperimentReport run_m1(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::m1_coordinate, "run_m1: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "ks_statistic");
  auto results = detail::run_replicates(c, threads, [&](std::size_t n, Engine& rng) {
    const auto params = BetaSchedule{c.beta}.params(n);
    const std::size_t an = c.index_for(n);
    std::vector<double> values(c.samples);
    for (auto& v : values) v = static_cast<double>(sample_mallows(params, rng)(an)) / static_cast<double>(n);
    detail::TaskResult res;
    res.statistic = ks_statistic(values, [&](double y) { return u_cdf(c.a, y, {c.beta}); });
    res.stderr_ = detail::ks_noise_scale(c.samples);
    res.extra["a_n"] = an;
    res.extra["q_n"] = params.q;
    return res;
  });
  detail::summarize(rep, results);
  detail::add_threshold_and_trend_checks(rep);
  return rep;
}

/// Grid discrepancy of τ∘π (π ~ β schedule, τ ~ γ schedule) against ρ.
/// Each draw is also regridded through the relabeled pair (π^{-1}, τ); the
/// two grids must agree exactly.
inline ExperimentReport run_m2(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::m2_product, "run_m2: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "grid_discrepancy");
  const CellMasses ref =
      make_cell_masses(c.grid_m, [&](const Rect& r) { return rho_rect(r, {c.beta, c.gamma}); });
  auto results = detail::run_replicates(c, threads, [&](std::size_t n, Engine& rng) {
    const auto pp = BetaSchedule{c.beta}.params(n);
    const auto tp = BetaSchedule{c.gamma}.params(n);
    double total = 0.0;
    bool relabel_ok = true;
    for (std::size_t s = 0; s < c.samples; ++s) {
      const auto pi = sample_mallows(pp, rng);
      const auto tau = sample_mallows(tp, rng);
      const auto g = grid_counts(compose(tau, pi), c.grid_m);
      if (grid_counts(inverse(pi), tau, c.grid_m).counts != g.counts) relabel_ok = false;
      total += grid_discrepancy(g, ref, c.mode).max_abs_dev;
    }
    detail::TaskResult res;
    res.statistic = total / static_cast<double>(c.samples);
    res.stderr_ = 0.5 / std::sqrt(static_cast<double>(n));
    res.extra["relabel_identity"] = relabel_ok;
    return res;
  });
  detail::summarize(rep, results);
  const bool relabel = std::all_of(results.begin(), results.end(),
                                   [](const detail::TaskResult& r) { return r.extra["relabel_identity"].get<bool>(); });
  rep.checks.push_back({"relabel_identity", relabel, true, "grid of tau.pi equals grid of (pi^-1, tau) on every draw"});
  detail::add_threshold_and_trend_checks(rep);
  return rep;
}

/// Grid discrepancy of a single μ_{n,1-β/n} permutation against u.
inline ExperimentReport run_t1(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::t1_single, "run_t1: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "grid_discrepancy");
  const CellMasses ref = detail::u_cell_masses(c.grid_m, c.beta);
  std::optional<CellMasses> contrast;
  if (c.contrast_beta) contrast = detail::u_cell_masses(c.grid_m, *c.contrast_beta);
  auto results = detail::run_replicates(c, threads, [&](std::size_t n, Engine& rng) {
    const auto params = BetaSchedule{c.beta}.params(n);
    double total = 0.0, wrong = 0.0;
    for (std::size_t s = 0; s < c.samples; ++s) {
      const auto g = grid_counts(sample_mallows(params, rng), c.grid_m);
      total += grid_discrepancy(g, ref, c.mode).max_abs_dev;
      if (contrast) wrong += grid_discrepancy(g, *contrast, c.mode).max_abs_dev;
    }
    detail::TaskResult res;
    res.statistic = total / static_cast<double>(c.samples);
    res.stderr_ = 0.5 / std::sqrt(static_cast<double>(n));
    if (contrast) res.extra["contrast_statistic"] = wrong / static_cast<double>(c.samples);
    return res;
  });
  detail::summarize(rep, results);
  if (contrast) {
    bool ok = true;
    for (const auto& r : results)
      if (!(r.extra["contrast_statistic"].get<double>() > r.statistic)) ok = false;
    rep.checks.push_back({"contrast_density_worse", ok, true,
                          "discrepancy against beta'=" + format_short(*c.contrast_beta) +
                              " exceeds the correct one on every draw"});
  }
  detail::add_threshold_and_trend_checks(rep);
  return rep;
}

namespace detail {

// Deterministic position pairs probed by the Monte Carlo covariance estimate.
inline std::vector<std::pair<std::size_t, std::size_t>> covariance_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto add = [&](std::size_t i, std::size_t j) {
    if (i >= 1 && j >= 1 && i <= n && j <= n && i != j) {
      std::pair<std::size_t, std::size_t> p{std::min(i, j), std::max(i, j)};
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  };
  const std::size_t mid = (n + 1) / 2;
  add(1, 2);
  add(n - 1, n);
  add(1, n);
  add(1, mid);
  add(mid, n);
  add(mid, mid + 1);
  add((n + 3) / 4, (3 * n + 3) / 4);
  for (std::size_t k = 1; k <= 9; ++k) {
    const std::size_t i = (k * n + 9) / 10;
    add(i, i + 1);
  }
  return out;
}

// Covariance of two indicators from their 2x2 counts, with the standard error
// of the plug-in estimate.
inline std::pair<double, double> indicator_covariance(std::size_t n11, std::size_t n10, std::size_t n01,
                                                      std::size_t total) {
  const double N = static_cast<double>(total);
  const double px = static_cast<double>(n11 + n10) / N;
  const double py = static_cast<double>(n11 + n01) / N;
  const double cov = static_cast<double>(n11) / N - px * py;
  const double n00 = N - static_cast<double>(n11 + n10 + n01);
  // Var of (X - px)(Y - py) over the four cells.
  const double cells[4][2] = {{static_cast<double>(n11), (1 - px) * (1 - py)},
                              {static_cast<double>(n10), (1 - px) * (0 - py)},
                              {static_cast<double>(n01), (0 - px) * (1 - py)},
                              {n00, px * py}};
  double var = 0.0;
  for (const auto& cell : cells) var += cell[0] / N * (cell[1] - cov) * (cell[1] - cov);
  return {cov, std::sqrt(var / N)};
}

}  // namespace detail

/// max |Cov(1_A(π(i)/n), 1_A(π(j)/n))|: exact over all i != j for small n,
/// Monte Carlo over a fixed set of position pairs otherwise.
inline ExperimentReport run_covariance_decay(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::covariance_decay, "run_covariance_decay: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "max_abs_covariance");
  const std::size_t exact_cap = std::min(c.exact_max_n, kMaxEnumerationSize);

  std::vector<std::size_t> exact_ns, mc_ns;
  for (std::size_t n : c.n_list) (n <= exact_cap ? exact_ns : mc_ns).push_back(n);

  for (std::size_t n : exact_ns) {
    const auto d = enumerate_measure(n, BetaSchedule{c.beta}.q(n));
    const auto a = ValueInterval::from_real(c.y1, c.y2, n);
    double worst = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) worst = std::max(worst, std::abs(exact_indicator_covariance(d, a, i, j)));
    rep.rows.push_back({n, -1, worst, 0.0, {{"q_n", d.q}}});
    NSummary s;
    s.n = n;
    s.median = s.min = s.max = worst;
    s.exact = true;
    rep.summaries.push_back(s);
  }
  if (exact_ns.size() >= 2) {
    bool ok = true;
    std::string trail;
    for (std::size_t k = 0; k < exact_ns.size(); ++k) {
      if (k > 0 && !(rep.summaries[k].median < rep.summaries[k - 1].median)) ok = false;
      trail += (k ? " -> " : "") + format_short(rep.summaries[k].median);
    }
    rep.checks.push_back({"exact_strictly_decreasing", ok, true, trail});
  }

  if (!mc_ns.empty()) {
    ExperimentConfig mc = c;
    mc.n_list = mc_ns;
    auto results = detail::run_replicates(mc, threads, [&](std::size_t n, Engine& rng) {
      const auto params = BetaSchedule{c.beta}.params(n);
      const auto pairs = detail::covariance_pairs(n);
      std::vector<std::size_t> n11(pairs.size()), n10(pairs.size()), n01(pairs.size());
      const double nd = static_cast<double>(n);
      auto in_a = [&](std::uint32_t v) {
        const double y = static_cast<double>(v) / nd;
        return y >= c.y1 && y <= c.y2;
      };
      for (std::size_t s = 0; s < c.samples; ++s) {
        const auto p = sample_mallows(params, rng);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          const bool x = in_a(p(pairs[k].first)), y = in_a(p(pairs[k].second));
          n11[k] += x && y;
          n10[k] += x && !y;
          n01[k] += !x && y;
        }
      }
      detail::TaskResult res;
      res.statistic = -1.0;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [cov, se] = detail::indicator_covariance(n11[k], n10[k], n01[k], c.samples);
        if (std::abs(cov) > res.statistic) {
          res.statistic = std::abs(cov);
          res.stderr_ = se;
          res.extra["argmax_pair"] = {pairs[k].first, pairs[k].second};
        }
      }
      res.extra["pairs_probed"] = pairs.size();
      return res;
    });
    ExperimentReport part = detail::make_report(mc, rep.statistic_name);
    detail::summarize(part, results);
    rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
    rep.summaries.insert(rep.summaries.end(), part.summaries.begin(), part.summaries.end());
  }
  detail::add_threshold_and_trend_checks(rep);
  return rep;
}

/// max over the index grid {ceil(kn/20)} of |P̂(π(i)/n ∈ A) - ∫_A u(i/n, y, β) dy|.
inline ExperimentReport run_uniform_marginal(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::uniform_marginal, "run_uniform_marginal: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "max_marginal_deviation");
  auto results = detail::run_replicates(c, threads, [&](std::size_t n, Engine& rng) {
    const auto params = BetaSchedule{c.beta}.params(n);
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= 20; ++k) {
      const std::size_t i = std::max<std::size_t>(1, (k * n + 19) / 20);
      if (idx.empty() || idx.back() != i) idx.push_back(i);
    }
    std::vector<std::size_t> hits(idx.size(), 0);
    const double nd = static_cast<double>(n);
    for (std::size_t s = 0; s < c.samples; ++s) {
      const auto p = sample_mallows(params, rng);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double y = static_cast<double>(p(idx[k])) / nd;
        if (y >= c.y1 && y <= c.y2) ++hits[k];
      }
    }
    detail::TaskResult res;
    res.statistic = -1.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double x = static_cast<double>(idx[k]) / nd;
      const double target = u_cdf(x, c.y2, {c.beta}) - u_cdf(x, c.y1, {c.beta});
      const double est = static_cast<double>(hits[k]) / static_cast<double>(c.samples);
      const double dev = std::abs(est - target);
      if (dev > res.statistic) {
        res.statistic = dev;
        res.stderr_ = std::sqrt(est * (1.0 - est) / static_cast<double>(c.samples));
        res.extra["argmax_index"] = idx[k];
        res.extra["estimate"] = est;
        res.extra["limit"] = target;
      }
    }
    return res;
  });
  detail::summarize(rep, results);
  detail::add_threshold_and_trend_checks(rep);
  return rep;
}

/// P̂(π(a_n)/n ∈ [y1,y2]) against d e^{-|β|}/slack and d e^{|β|} slack.
/// The bounds are asymptotic, so violations are warnings.
inline ExperimentReport run_interval_bounds(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  detail::require(c.kind == ExperimentKind::interval_bounds, "run_interval_bounds: wrong kind");
  c.validate();
  ExperimentReport rep = detail::make_report(c, "interval_probability");
  const double d = c.y2 - c.y1;
  const double lower = d * std::exp(-std::abs(c.beta)) / c.slack;
  const double upper = std::min(1.0, d * std::exp(std::abs(c.beta)) * c.slack);
  auto results = detail::run_replicates(c, threads, [&](std::size_t n, Engine& rng) {
    const auto params = BetaSchedule{c.beta}.params(n);
    const std::size_t an = c.index_for(n);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < c.samples; ++s) {
      const double y = static_cast<double>(sample_mallows(params, rng)(an)) / static_cast<double>(n);
      if (y >= c.y1 && y <= c.y2) ++hits;
    }
    detail::TaskResult res;
    res.statistic = static_cast<double>(hits) / static_cast<double>(c.samples);
    res.stderr_ = std::sqrt(res.statistic * (1.0 - res.statistic) / static_cast<double>(c.samples));
    res.extra["lower_bound"] = lower;
    res.extra["upper_bound"] = upper;
    res.extra["within_bounds"] = res.statistic >= lower && res.statistic <= upper;
    return res;
  });
  detail::summarize(rep, results);
  std::size_t outside = 0;
  for (const auto& r : results) outside += !r.extra["within_bounds"].get<bool>();
  rep.checks.push_back({"asymptotic_interval_bounds", outside == 0, false,
                        std::to_string(outside) + " estimates outside [" + format_short(lower) + ", " +
                            format_short(upper) + "]"});
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& c, std::size_t threads = default_thread_count()) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  switch (c.kind) {
    case ExperimentKind::m1_coordinate: rep = run_m1(c, threads); break;
    case ExperimentKind::m2_product: rep = run_m2(c, threads); break;
    case ExperimentKind::t1_single: rep = run_t1(c, threads); break;
    case ExperimentKind::covariance_decay: rep = run_covariance_decay(c, threads); break;
    case ExperimentKind::uniform_marginal: rep = run_uniform_marginal(c, threads); break;
    case ExperimentKind::interval_bounds: rep = run_interval_bounds(c, threads); break;
  }
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace mallows

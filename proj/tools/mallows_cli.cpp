// mallows: sample permutations, tabulate limit densities, run experiments,
// and run the exhaustive identity checks.
//
// Exit codes: 0 success, 1 check or threshold failure, 2 usage/config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mallows/mallows.hpp"

namespace {

using namespace mallows;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
}

struct SampleArgs {
  std::size_t n = 0;
  std::optional<double> q;
  std::optional<double> beta;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
};

int cmd_sample(const SampleArgs& a) {
  if (a.q.has_value() == a.beta.has_value()) throw UsageError("sample: give exactly one of --q and --beta");
  const MallowsParams params = a.q ? MallowsParams{a.n, *a.q} : BetaSchedule{*a.beta}.params(a.n);
  params.validate();
  Engine rng = make_engine(SeedSpec{a.seed}, 0);
  if (a.format == "csv") {
    std::string text = "permutation,l\n";
    for (std::size_t k = 0; k < a.count; ++k) {
      const auto p = sample_mallows(params, rng);
      text += csv_field(p) + "," + std::to_string(inversion_number(p)) + "\n";
    }
    emit(a.out, text);
  } else {
    nlohmann::json j{{"n", a.n}, {"q", params.q}, {"seed", a.seed}};
    if (a.beta) j["beta"] = *a.beta;
    auto& rows = j["samples"] = nlohmann::json::array();
    for (std::size_t k = 0; k < a.count; ++k) {
      const auto p = sample_mallows(params, rng);
      rows.push_back({{"permutation", to_json(p)}, {"l", inversion_number(p)}});
    }
    emit(a.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

struct DensityArgs {
  std::string kind = "u";
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t grid = 101;
  std::string format = "csv";
  std::string out;
};

int cmd_density(const DensityArgs& a) {
  if (a.grid < 2) throw UsageError("density: --grid must be >= 2");
  const bool rho = a.kind == "rho";
  auto value = [&](double x, double y) {
    return rho ? rho_density(x, y, {a.beta, a.gamma}) : u_density(x, y, {a.beta});
  };
  const double step = 1.0 / static_cast<double>(a.grid - 1);
  if (a.format == "csv") {
    std::string text = rho ? "x,y,rho\n" : "x,y,u\n";
    for (std::size_t i = 0; i < a.grid; ++i)
      for (std::size_t j = 0; j < a.grid; ++j) {
        const double x = static_cast<double>(i) * step, y = static_cast<double>(j) * step;
        text += format_real(x) + "," + format_real(y) + "," + format_real(value(x, y)) + "\n";
      }
    emit(a.out, text);
  } else {
    nlohmann::json j{{"kind", a.kind}, {"beta", a.beta}, {"grid", a.grid}};
    if (rho) j["gamma"] = a.gamma;
    auto& rows = j["values"] = nlohmann::json::array();
    for (std::size_t i = 0; i < a.grid; ++i)
      for (std::size_t k = 0; k < a.grid; ++k) {
        const double x = static_cast<double>(i) * step, y = static_cast<double>(k) * step;
        rows.push_back({x, y, value(x, y)});
      }
    emit(a.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::size_t threads = default_thread_count();
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

int cmd_experiment(const ExperimentArgs& a) {
  std::ifstream in(a.config_path);
  if (!in) throw UsageError("cannot read config '" + a.config_path + "'");
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (a.seed && raw.is_object()) raw["seed"] = *a.seed;
  if (a.samples && raw.is_object()) raw["samples"] = *a.samples;
  const ExperimentConfig config = config_from_json(raw);
  const ExperimentReport rep = run_experiment(config, a.threads);
  if (a.out.empty()) {
    emit("", a.format == "csv" ? to_csv(rep) : to_json(rep).dump(2) + "\n");
  } else {
    emit(a.out + ".json", to_json(rep).dump(2) + "\n");
    emit(a.out + ".csv", to_csv(rep));
  }
  for (const auto& c : rep.checks)
    if (!c.pass) std::cerr << (c.hard ? "FAIL " : "WARN ") << c.name << ": " << c.detail << "\n";
  return rep.pass() ? kExitOk : kExitFailed;
}

struct VerifyArgs {
  std::size_t max_n = 6;
  std::vector<double> q_list{0.3, 0.8, 1.0, 1.25};
  bool corrupt_decode = false;
  bool skip_density = false;
  std::string format = "csv";
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.max_n = a.max_n;
  opt.q_list = a.q_list;
  opt.include_density = !a.skip_density;
  opt.corrupt_decode = a.corrupt_decode;
  const auto results = run_verify(opt);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.status != CheckStatus::fail;
  if (a.format == "csv") {
    std::string text = "check,status,metric,tolerance,detail\n";
    for (const auto& r : results)
      text += r.name + "," + to_string(r.status) + "," + format_real(r.metric) + "," + format_real(r.tolerance) +
              ",\"" + r.detail + "\"\n";
    emit(a.out, text);
  } else {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results)
      j.push_back({{"check", r.name}, {"status", to_string(r.status)}, {"metric", r.metric},
                   {"tolerance", r.tolerance}, {"detail", r.detail}});
    emit(a.out, nlohmann::json{{"checks", j}, {"pass", ok}}.dump(2) + "\n");
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mallows permutations: exact sampling, limit densities, convergence experiments"};
  app.require_subcommand(1, 1);
  const std::vector<std::string> formats{"csv", "json"};

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "draw permutations from the Mallows measure");
  sample->add_option("--n", sa.n, "permutation size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--q", sa.q, "Mallows parameter q > 0");
  sample->add_option("--beta", sa.beta, "use the schedule q = 1 - beta/n");
  sample->add_option("--count", sa.count, "number of permutations")->capture_default_str();
  sample->add_option("--seed", sa.seed, "master seed")->capture_default_str();
  sample->add_option("--format", sa.format)->check(CLI::IsMember(formats))->capture_default_str();
  sample->add_option("--out", sa.out, "output file (default stdout)");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "tabulate u(x,y,beta) or rho(x,y) on a square grid");
  density->add_option("kind", da.kind, "u or rho")->check(CLI::IsMember({"u", "rho"}))->capture_default_str();
  density->add_option("--beta", da.beta)->capture_default_str();
  density->add_option("--gamma", da.gamma, "second parameter of rho")->capture_default_str();
  density->add_option("--grid", da.grid, "points per axis, endpoints included")->capture_default_str();
  density->add_option("--format", da.format)->check(CLI::IsMember(formats))->capture_default_str();
  density->add_option("--out", da.out, "output file (default stdout)");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment from a JSON config");
  experiment->add_option("config", ea.config_path, "config file")->required();
  experiment->add_option("--out", ea.out, "write <out>.json and <out>.csv (default: stdout in --format)");
  experiment->add_option("--format", ea.format)->check(CLI::IsMember(formats))->capture_default_str();
  experiment->add_option("--threads", ea.threads, "worker threads; never changes results")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment->add_option("--seed", ea.seed, "override the config seed");
  experiment->add_option("--samples", ea.samples, "override the config sample count");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "exhaustive identity checks against exact enumeration");
  verify->add_option("--max-n", va.max_n, "largest n to enumerate (<= 9)")->capture_default_str();
  verify->add_option("--q", va.q_list, "q values")->delimiter(',')->capture_default_str();
  verify->add_flag("--skip-density", va.skip_density, "only the combinatorial checks");
  verify->add_flag("--corrupt-decode", va.corrupt_decode)->group("");  // negative-control hook
  verify->add_option("--format", va.format)->check(CLI::IsMember(formats))->capture_default_str();
  verify->add_option("--out", va.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*density) return cmd_density(da);
    if (*experiment) return cmd_experiment(ea);
    if (*verify) return cmd_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

// tsq: experiment runner for time-symmetric quantum measurement protocols.
//
// Exit status: 0 = all criteria pass, 1 = criterion failure, 2 = usage or
// configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsq/errors.hpp"
#include "tsq/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCriterionFail = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw tsq::ConfigError("cannot read '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw tsq::ConfigError("cannot write '" + path + "'");
  }
  out << content;
}

struct CommonFlags {
  std::string config_path;
  std::string experiment;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  int threads = 0;
  bool full = false;
};

tsq::experiments::ExperimentConfig build_config(const CommonFlags& flags) {
  tsq::experiments::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = tsq::experiments::ExperimentConfig::from_json(read_file(flags.config_path));
  }
  if (!flags.experiment.empty()) {
    cfg.experiment = flags.experiment;
  }
  if (flags.seed_set) {
    cfg.seed = flags.seed;
    cfg.seed_set = true;
  }
  if (flags.trials > 0) {
    cfg.trials = flags.trials;
  }
  if (flags.threads > 0) {
    cfg.threads = flags.threads;
  }
  if (flags.full) {
    cfg.full = true;
  }
  if (!flags.out.empty()) {
    cfg.out = flags.out;
  }
  return cfg;
}

int emit_report(const tsq::experiments::Report& report, const std::string& out) {
  std::cout << report.to_table();
  if (!out.empty()) {
    write_file(out, report.to_json(true) + "\n");
    std::cout << "report written to " << out << "\n";
  }
  return report.pass() ? kExitPass : kExitCriterionFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsq: simulator and verifier for demolition measurements of nonlocal variables "
               "with forward, backward, and mixed time directions"};
  app.require_subcommand(1);

  CommonFlags flags;

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", flags.config_path, "experiment config (JSON)");
  run->add_option("--experiment", flags.experiment, "built-in experiment id");
  auto* seed_opt = run->add_option("--seed", flags.seed, "RNG seed (mandatory)");
  run->add_option("--trials", flags.trials, "override the primary trial count");
  run->add_option("--threads", flags.threads, "parallel trial threads");
  run->add_option("--out", flags.out, "write the JSON report here");
  run->add_flag("--full", flags.full, "full-scale variant where one exists");

  CLI::App* list = app.add_subcommand("list", "list built-in experiments");

  CLI::App* verify = app.add_subcommand("verify-all", "run every acceptance experiment");
  std::uint64_t verify_seed = 0;
  bool verify_seed_set = false;
  int verify_threads = 0;
  bool verify_full = false;
  std::string verify_out;
  auto* vseed_opt = verify->add_option("--seed", verify_seed, "RNG seed (mandatory)");
  verify->add_option("--threads", verify_threads, "parallel trial threads");
  verify->add_option("--out", verify_out, "write the combined JSON report here");
  verify->add_flag("--full", verify_full, "full-scale variants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& info : tsq::experiments::list_experiments()) {
        std::cout << info.id << "\n    " << info.description << "\n";
      }
      return kExitPass;
    }
    if (run->parsed()) {
      flags.seed_set = seed_opt->count() > 0;
      auto cfg = build_config(flags);
      return emit_report(tsq::experiments::run(cfg), cfg.out);
    }
    if (verify->parsed()) {
      verify_seed_set = vseed_opt->count() > 0;
      if (!verify_seed_set) {
        throw tsq::ConfigError("seed is mandatory");
      }
      bool all_pass = true;
      std::ostringstream combined;
      combined << "[\n";
      bool first = true;
      for (const auto& info : tsq::experiments::list_experiments()) {
        if (info.id.rfind("a", 0) != 0) {
          continue;  // acceptance experiments only
        }
        tsq::experiments::ExperimentConfig cfg;
        cfg.experiment = info.id;
        cfg.seed = verify_seed;
        cfg.seed_set = true;
        cfg.full = verify_full;
        if (verify_threads > 0) {
          cfg.threads = verify_threads;
        }
        const auto report = tsq::experiments::run(cfg);
        std::cout << report.to_table() << "\n";
        all_pass = all_pass && report.pass();
        combined << (first ? "" : ",\n") << report.to_json(true);
        first = false;
      }
      combined << "\n]\n";
      if (!verify_out.empty()) {
        write_file(verify_out, combined.str());
        std::cout << "combined report written to " << verify_out << "\n";
      }
      std::cout << (all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
      return all_pass ? kExitPass : kExitCriterionFail;
    }
  } catch (const tsq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tsq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCriterionFail;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitCriterionFail;
  }
  return kExitUsage;
}

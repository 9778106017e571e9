#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tsq::experiments {

// Declarative experiment parameters. The seed is mandatory; everything else
// has per-experiment defaults. Unknown JSON fields are rejected.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;        // 0 = experiment default
  int max_rounds = 0;    // 0 = experiment default
  int max_attempts = 0;  // 0 = experiment default
  int threads = 1;
  bool full = false;  // full-scale variant where one exists
  std::string out;
  std::string transcript_out;

  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

struct Criterion {
  std::string id;
  std::string description;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string comparison;  // "|measured-expected|<=tol", ">=", "<=", "=="
  bool pass = false;
};

struct Report {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;
  std::map<std::string, double> statistics;
  std::vector<std::string> transcript_digests;
  double duration_ms = 0.0;

  bool pass() const;
  // Machine form; wall-clock excluded unless asked for, so equal configs
  // and seeds give byte-identical output.
  std::string to_json(bool include_duration = false) const;
  // Human-readable table.
  std::string to_table() const;
};

struct ExperimentInfo {
  std::string id;
  std::string description;
};

// Stable-ordered catalog; includes one experiment per acceptance criterion.
std::vector<ExperimentInfo> list_experiments();

// Executes the named experiment. Identical (config, seed) yields identical
// reports up to wall-clock fields, independent of thread count.
Report run(const ExperimentConfig& config);

}  // namespace tsq::experiments

#ifndef CHOREFAIR_EXPERIMENT_HPP_
#define CHOREFAIR_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "chorefair/generators.hpp"

namespace chorefair {

enum class ExperimentAlgorithm { roundrobin, envygraph, po_optimal };

std::string to_string(ExperimentAlgorithm algo);
ExperimentAlgorithm parse_algorithm(const std::string& name);

struct ExperimentConfig {
  std::size_t n_min = 3;
  std::size_t n_max = 10;
  std::size_t m_min = 3;
  std::size_t m_max = 20;
  std::size_t trials = 100;
  std::uint64_t p_neg = probability_units(7, 10);
  std::uint64_t seed = 0;
  std::vector<ExperimentAlgorithm> algorithms{ExperimentAlgorithm::roundrobin, ExperimentAlgorithm::envygraph,
                                              ExperimentAlgorithm::po_optimal};
  std::uint64_t solver_budget = 10'000'000;      // nodes per min_dubious
  std::uint64_t allocation_budget = 10'000'000;  // nodes per po_optimal search
  /// 0 = hardware concurrency.
  unsigned workers = 0;

  /// Throws invalid_input on empty ranges or zero trials.
  void validate() const;
};

/// Reads the JSON config. Keys (all optional): n_range [lo, hi], m_range
/// [lo, hi], trials, p_neg ("7/10"), seed, algorithms [names], solver_budget,
/// allocation_budget, workers.
ExperimentConfig parse_experiment_config(const std::string& text);

struct ExperimentRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  ExperimentAlgorithm algorithm = ExperimentAlgorithm::roundrobin;
  std::size_t min_k = 0;
  bool exact = true;
  std::uint64_t nodes = 0;
  double runtime_ms = 0.0;
};

/// Sweeps cells (n, m) with m >= n, trials 0..trials-1 and the configured
/// algorithms, calling sink in that canonical order whatever the worker count.
void run_experiment(const ExperimentConfig& cfg, const std::function<void(const ExperimentRecord&)>& sink);

/// One record for a single cell and trial.
ExperimentRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t m, std::size_t trial,
                           ExperimentAlgorithm algo);

inline constexpr const char* kCsvHeader = "n,m,trial,seed,algorithm,min_k,exact,nodes,runtime_ms";

/// runtime_ms is written as 0 unless with_timing, so that CSVs are
/// reproducible byte for byte.
void write_csv_row(std::ostream& out, const ExperimentRecord& rec, bool with_timing = false);

}  // namespace chorefair

#endif  // CHOREFAIR_EXPERIMENT_HPP_

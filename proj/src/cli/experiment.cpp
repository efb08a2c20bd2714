#include "chorefair/experiment.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <thread>

#include "chorefair/algorithms.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/solver.hpp"

namespace chorefair {

std::string to_string(ExperimentAlgorithm algo) {
  switch (algo) {
    case ExperimentAlgorithm::roundrobin:
      return "roundrobin";
    case ExperimentAlgorithm::envygraph:
      return "envygraph";
    case ExperimentAlgorithm::po_optimal:
      return "po_optimal";
  }
  return "unknown";
}

ExperimentAlgorithm parse_algorithm(const std::string& name) {
  if (name == "roundrobin") return ExperimentAlgorithm::roundrobin;
  if (name == "envygraph") return ExperimentAlgorithm::envygraph;
  if (name == "po_optimal") return ExperimentAlgorithm::po_optimal;
  throw invalid_input("unknown algorithm \"" + name + "\" (roundrobin, envygraph, po_optimal)");
}

void ExperimentConfig::validate() const {
  if (n_min == 0) throw invalid_input("n_range: agents must be at least 1");
  if (n_min > n_max) throw invalid_input("n_range: empty range");
  if (m_min > m_max) throw invalid_input("m_range: empty range");
  if (std::max(n_min, m_min) > m_max) throw invalid_input("no cell with m >= n in the configured ranges");
  if (trials == 0) throw invalid_input("trials must be at least 1");
  if (algorithms.empty()) throw invalid_input("algorithms: at least one required");
  if (p_neg > kProbabilityOne) throw invalid_input("p_neg must lie in [0, 1]");
}

namespace {

using nlohmann::json;

std::uint64_t read_count(const json& doc, const char* key, std::uint64_t fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() && it->get<std::int64_t>() < 0)) {
    throw invalid_input(std::string(key) + ": expected a nonnegative integer");
  }
  return it->get<std::uint64_t>();
}

void read_range(const json& doc, const char* key, std::size_t& lo, std::size_t& hi) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  if (!it->is_array() || it->size() != 2) throw invalid_input(std::string(key) + ": expected [lo, hi]");
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& v = (*it)[k];
    if (!v.is_number_unsigned()) throw invalid_input(std::string(key) + ": expected nonnegative integers");
  }
  lo = (*it)[0].get<std::size_t>();
  hi = (*it)[1].get<std::size_t>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw invalid_input("experiment config must be a JSON object");
  ExperimentConfig cfg;
  read_range(doc, "n_range", cfg.n_min, cfg.n_max);
  read_range(doc, "m_range", cfg.m_min, cfg.m_max);
  cfg.trials = read_count(doc, "trials", cfg.trials);
  cfg.seed = read_count(doc, "seed", cfg.seed);
  cfg.solver_budget = read_count(doc, "solver_budget", cfg.solver_budget);
  cfg.allocation_budget = read_count(doc, "allocation_budget", cfg.allocation_budget);
  cfg.workers = static_cast<unsigned>(read_count(doc, "workers", cfg.workers));
  if (const auto it = doc.find("p_neg"); it != doc.end()) {
    if (!it->is_string()) throw invalid_input("p_neg: expected a string such as \"7/10\"");
    cfg.p_neg = parse_probability(it->get<std::string>());
  }
  if (const auto it = doc.find("algorithms"); it != doc.end()) {
    if (!it->is_array()) throw invalid_input("algorithms: expected an array of names");
    cfg.algorithms.clear();
    for (const auto& name : *it) {
      if (!name.is_string()) throw invalid_input("algorithms: expected an array of names");
      cfg.algorithms.push_back(parse_algorithm(name.get<std::string>()));
    }
  }
  cfg.validate();
  return cfg;
}

namespace {

ExperimentRecord evaluate(const ExperimentConfig& cfg, const Instance& inst, std::size_t n, std::size_t m,
                          std::size_t trial, ExperimentAlgorithm algo) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec{n, m, trial, cfg.seed, algo};
  SolveOptions solve;
  solve.node_budget = cfg.solver_budget;
  SolveResult result;
  switch (algo) {
    case ExperimentAlgorithm::roundrobin:
      result = min_dubious(inst, round_robin(inst).allocation, DefVariant::def, solve);
      break;
    case ExperimentAlgorithm::envygraph:
      result = min_dubious(inst, envy_graph(inst), DefVariant::def, solve);
      break;
    case ExperimentAlgorithm::po_optimal: {
      AllocationSearchOptions opts;
      opts.po_only = true;
      opts.node_budget = cfg.allocation_budget;
      opts.inner = solve;
      auto search = min_over_allocations(inst, opts);
      result = std::move(search.result);
      result.exact = search.exact;
      break;
    }
  }
  rec.min_k = result.min_k.value_or(0);
  rec.exact = result.exact;
  rec.nodes = result.nodes;
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

SyntheticConfig synthetic_for(const ExperimentConfig& cfg, std::size_t n, std::size_t m) {
  SyntheticConfig syn;
  syn.n = n;
  syn.m = m;
  syn.trials = cfg.trials;
  syn.p_neg = cfg.p_neg;
  syn.seed = cfg.seed;
  syn.force_last_common = true;
  return syn;
}

struct Task {
  std::size_t n, m, trial;
};

}  // namespace

ExperimentRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t m, std::size_t trial,
                           ExperimentAlgorithm algo) {
  const auto inst = gen_synthetic(synthetic_for(cfg, n, m), trial);
  return evaluate(cfg, inst, n, m, trial, algo);
}

void run_experiment(const ExperimentConfig& cfg, const std::function<void(const ExperimentRecord&)>& sink) {
  cfg.validate();
  std::vector<Task> tasks;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    for (std::size_t m = std::max(n, cfg.m_min); m <= cfg.m_max; ++m) {
      for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, m, t});
    }
  }

  std::vector<std::vector<ExperimentRecord>> results(tasks.size());
  std::vector<bool> finished(tasks.size(), false);
  std::size_t flushed = 0;
  std::mutex lock;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;

  auto work = [&] {
    for (std::size_t idx = next++; idx < tasks.size() && !failed; idx = next++) {
      const auto& task = tasks[idx];
      std::vector<ExperimentRecord> recs;
      try {
        const auto inst = gen_synthetic(synthetic_for(cfg, task.n, task.m), task.trial);
        for (auto algo : cfg.algorithms) recs.push_back(evaluate(cfg, inst, task.n, task.m, task.trial, algo));
      } catch (...) {
        std::lock_guard guard(lock);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
      std::lock_guard guard(lock);
      results[idx] = std::move(recs);
      finished[idx] = true;
      while (flushed < tasks.size() && finished[flushed]) {
        for (const auto& rec : results[flushed]) sink(rec);
        results[flushed].clear();
        ++flushed;
      }
    }
  };

  unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

void write_csv_row(std::ostream& out, const ExperimentRecord& rec, bool with_timing) {
  out << rec.n << ',' << rec.m << ',' << rec.trial << ',' << rec.seed << ',' << to_string(rec.algorithm) << ','
      << rec.min_k << ',' << (rec.exact ? "true" : "false") << ',' << rec.nodes << ',';
  if (with_timing) {
    out << std::fixed << std::setprecision(3) << rec.runtime_ms << std::defaultfloat;
  } else {
    out << 0;
  }
  out << '\n';
}

}  // namespace chorefair

#include "chorefair/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "chorefair/algorithms.hpp"
#include "chorefair/equilibrium.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/experiment.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/generators.hpp"
#include "chorefair/io.hpp"
#include "chorefair/market.hpp"
#include "chorefair/solver.hpp"

namespace chorefair {

namespace {

using nlohmann::json;

std::string compact(const std::string& doc) {
  std::string out = doc;
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::vector<std::vector<std::size_t>> parse_families(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  std::stringstream sets(text);
  std::string member;
  while (std::getline(sets, member, ';')) {
    std::vector<std::size_t> elems;
    std::stringstream items(member);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        const auto v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        elems.push_back(v);
      } catch (const std::exception&) {
        throw invalid_input("--sets: malformed element \"" + item + "\"");
      }
    }
    out.push_back(std::move(elems));
  }
  return out;
}

struct GenSynthetic {
  std::size_t n = 3, m = 3, trial = 0;
  std::uint64_t seed = 0;
  std::string p_neg = "7/10";
  bool no_force_last = false;
  std::string out;
};

struct GenReduction {
  std::vector<std::int64_t> items;
  std::size_t universe = 0;
  std::string sets;
  std::size_t k = 1;
  std::string out;
  std::string allocation_out;
};

struct Allocate {
  std::string instance, algo = "rr", out;
  std::vector<std::size_t> order;
};

struct Verify {
  std::string instance, allocation, check, witness, prices, variant = "def", po_method = "auto";
  std::optional<std::size_t> k;
  std::uint64_t budget = 10'000'000;
};

struct Minimize {
  std::string instance, allocation, variant = "def", witness_out;
  bool over_allocations = false, po_only = false;
  std::uint64_t budget = 10'000'000;
};

struct Experiment {
  std::string config, out;
  std::optional<unsigned> workers;
  bool timing = false;
};

int run_gen_synthetic(const GenSynthetic& o, std::ostream& out) {
  SyntheticConfig cfg;
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.seed = o.seed;
  cfg.p_neg = parse_probability(o.p_neg);
  cfg.force_last_common = !o.no_force_last;
  emit(o.out, dump_instance(gen_synthetic(cfg, o.trial)), out);
  return kExitOk;
}

void report_reduction(const std::string& path, const Instance& inst, bool expected, std::size_t k, std::ostream& out) {
  if (path.empty() || path == "-") throw invalid_input("--out FILE is required for reductions");
  write_instance(path, inst);
  out << "expected=" << (expected ? "true" : "false") << "\nk=" << k << '\n';
}

int run_gen_partition(const GenReduction& o, std::ostream& out) {
  const auto red = gen_from_partition(o.items, o.k);
  report_reduction(o.out, red.instance, red.expected, red.k, out);
  return kExitOk;
}

int run_gen_setsplitting(const GenReduction& o, std::ostream& out) {
  const auto red = gen_from_setsplitting({o.universe, parse_families(o.sets)}, o.k);
  report_reduction(o.out, red.instance, red.expected, red.k, out);
  return kExitOk;
}

int run_gen_rx3c(const GenReduction& o, std::ostream& out) {
  std::vector<Triple> triples;
  for (const auto& s : parse_families(o.sets)) {
    if (s.size() != 3) throw invalid_input("--sets: every subset needs exactly three elements");
    triples.push_back({s[0], s[1], s[2]});
  }
  const auto red = gen_from_rx3c(o.universe, triples);
  report_reduction(o.out, red.instance, red.expected, red.k, out);
  if (!o.allocation_out.empty()) write_allocation(o.allocation_out, red.allocation);
  return kExitOk;
}

int run_allocate(const Allocate& o, std::ostream& out) {
  const auto inst = read_instance(o.instance);
  json doc;
  Allocation alloc;
  std::optional<DubiousAllocation> witness;
  std::optional<PriceVector> prices;
  if (o.algo == "rr") {
    const auto trace = round_robin(inst, o.order);
    alloc = trace.allocation;
    witness = rr_augmentation(inst, trace);
  } else if (o.algo == "envygraph") {
    alloc = envy_graph(inst, o.order);
  } else if (o.algo == "binary") {
    auto res = binary_def_po(inst);
    alloc = std::move(res.allocation);
    witness = std::move(res.witness);
  } else if (o.algo == "bivalued") {
    if (!classify_valuations(inst).bivalued) throw invalid_input("bivalued allocation requires bivalued valuations");
    const auto eq = find_pef1_equilibrium(inst);
    alloc = eq.allocation;
    prices = eq.prices;
    witness = augment_from_equilibrium(inst, eq, 1);
  } else if (o.algo == "twotypes") {
    auto res = two_types_def_po(inst);
    alloc = std::move(res.allocation);
    prices = res.equilibrium.prices;
    witness = std::move(res.witness);
  } else {
    throw invalid_input("--algo: unknown algorithm \"" + o.algo + "\"");
  }
  doc["assignment"] = alloc.owners();
  if (witness) doc["copies"] = json::parse(dump_witness(*witness))["copies"];
  if (prices) doc["prices"] = json::parse(dump_prices(*prices))["prices"];
  emit(o.out, doc.dump() + "\n", out);
  return kExitOk;
}

PoMethod parse_po_method(const std::string& name) {
  if (name == "auto") return PoMethod::automatic;
  if (name == "brute") return PoMethod::brute;
  if (name == "binary") return PoMethod::binary_fast;
  throw invalid_input("--po-method: expected auto, brute or binary");
}

int run_verify(const Verify& o, std::ostream& out) {
  const auto inst = read_instance(o.instance);
  const auto alloc = read_allocation(o.allocation, inst.agents());
  validate(inst, alloc);
  auto load_prices = [&] {
    if (o.prices.empty()) throw invalid_input("--check " + o.check + " needs --prices FILE");
    return parse_prices(read_text(o.prices));
  };
  bool holds = false;
  if (o.check == "ef") {
    holds = is_ef(inst, alloc);
  } else if (o.check == "ef1") {
    holds = is_ef1(inst, alloc);
  } else if (o.check == "po") {
    holds = is_pareto_optimal(inst, alloc, {parse_po_method(o.po_method), PoOptions{}.budget});
  } else if (o.check == "pef1") {
    holds = is_pef1(inst, alloc, load_prices());
  } else if (o.check == "equilibrium") {
    holds = is_fisher_equilibrium(inst, alloc, load_prices());
  } else if (o.check == "def") {
    const auto variant = parse_def_variant(o.variant);
    if (!o.witness.empty()) {
      const auto witness = read_witness(o.witness);
      validate(inst, witness);
      holds = check_def_witness(inst, alloc, witness, variant) && (!o.k || witness.size() <= *o.k);
    } else {
      if (!o.k) throw invalid_input("--check def needs --k K or --witness FILE");
      holds = is_def_k(inst, alloc, *o.k, variant, {o.budget});
    }
  } else {
    throw invalid_input("--check: unknown property \"" + o.check + "\"");
  }
  out << (holds ? "true" : "false") << '\n';
  return holds ? kExitOk : kExitFalse;
}

int run_minimize(const Minimize& o, std::ostream& out) {
  const auto inst = read_instance(o.instance);
  const auto variant = parse_def_variant(o.variant);
  SolveResult result;
  bool exact = true;
  std::optional<Allocation> chosen;
  if (o.over_allocations) {
    if (variant != DefVariant::def) throw invalid_input("--over-allocations supports --variant def only");
    AllocationSearchOptions opts;
    opts.po_only = o.po_only;
    opts.node_budget = o.budget;
    opts.inner.node_budget = o.budget;
    auto search = min_over_allocations(inst, opts);
    result = std::move(search.result);
    exact = search.exact;
    chosen = std::move(search.allocation);
  } else {
    if (o.allocation.empty()) throw invalid_input("minimize needs --allocation FILE or --over-allocations");
    if (o.po_only) throw invalid_input("--po-only requires --over-allocations");
    const auto alloc = read_allocation(o.allocation, inst.agents());
    validate(inst, alloc);
    result = min_dubious(inst, alloc, variant, {o.budget});
    exact = result.exact;
  }
  if (result.min_k) {
    out << "min_k=" << *result.min_k << '\n';
  } else {
    out << "min_k=infeasible\n";
  }
  out << "exact=" << (exact ? "true" : "false") << '\n';
  out << "nodes=" << result.nodes << '\n';
  if (chosen) out << "assignment=" << compact(dump_allocation(*chosen)) << '\n';
  if (result.min_k) {
    out << "witness=" << compact(dump_witness(result.witness)) << '\n';
    if (!o.witness_out.empty()) write_witness(o.witness_out, result.witness);
  }
  if (!exact) return kExitInexact;
  return result.min_k ? kExitOk : kExitFalse;
}

int run_experiment_cmd(const Experiment& o, std::ostream& out, std::ostream& err) {
  auto cfg = parse_experiment_config(read_text(o.config));
  if (const char* env = std::getenv("CHOREFAIR_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw invalid_input(std::string("CHOREFAIR_SEED: not an unsigned integer: ") + env);
    }
  }
  if (o.workers) cfg.workers = *o.workers;

  std::ofstream file;
  std::ostream* csv = &out;
  if (!o.out.empty() && o.out != "-") {
    file.open(o.out, std::ios::binary);
    if (!file) throw invalid_input("cannot write " + o.out);
    csv = &file;
  }
  *csv << kCsvHeader << '\n';
  std::size_t inexact = 0;
  run_experiment(cfg, [&](const ExperimentRecord& rec) {
    write_csv_row(*csv, rec, o.timing);
    if (!rec.exact) ++inexact;
  });
  csv->flush();
  if (inexact > 0) err << inexact << " record(s) are not certified optimal (exact=false)\n";
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chore allocation with dubious chores"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  GenSynthetic syn;
  auto* gen_syn = gen->add_subcommand("synthetic", "random binary instance");
  gen_syn->add_option("--n", syn.n, "agents")->required()->check(CLI::PositiveNumber);
  gen_syn->add_option("--m", syn.m, "chores")->required();
  gen_syn->add_option("--trial", syn.trial, "trial index");
  gen_syn->add_option("--seed", syn.seed, "64-bit seed");
  gen_syn->add_option("--p-neg", syn.p_neg, "probability of -1, e.g. 7/10");
  gen_syn->add_flag("--no-force-last", syn.no_force_last, "keep the last chore random");
  gen_syn->add_option("--out", syn.out, "instance file (default: stdout)");

  GenReduction red;
  auto* gen_red = gen->add_subcommand("reduction", "instances from hardness reductions");
  gen_red->require_subcommand(1);
  auto* red_part = gen_red->add_subcommand("partition", "from a PARTITION multiset");
  red_part->add_option("--items", red.items, "positive integers")->required()->delimiter(',');
  red_part->add_option("--k", red.k, "dubious chore budget");
  red_part->add_option("--out", red.out, "instance file")->required();
  auto* red_split = gen_red->add_subcommand("setsplitting", "from a SET SPLITTING instance");
  red_split->add_option("--universe", red.universe, "vertices 0..q-1")->required();
  red_split->add_option("--sets", red.sets, "members, e.g. 0,1;1,2")->required();
  red_split->add_option("--k", red.k, "dubious chore budget");
  red_split->add_option("--out", red.out, "instance file")->required();
  auto* red_x3c = gen_red->add_subcommand("rx3c", "from a restricted exact cover by 3-sets instance");
  red_x3c->add_option("--universe", red.universe, "elements 0..3k-1")->required();
  red_x3c->add_option("--sets", red.sets, "triples, e.g. 0,1,2;0,1,2;0,1,2")->required();
  red_x3c->add_option("--out", red.out, "instance file")->required();
  red_x3c->add_option("--allocation-out", red.allocation_out, "allocation file");

  Allocate alc;
  auto* allocate = app.add_subcommand("allocate", "compute an allocation (and witness, prices)");
  allocate->add_option("--instance", alc.instance)->required();
  allocate->add_option("--algo", alc.algo, "rr|envygraph|binary|bivalued|twotypes");
  allocate->add_option("--order", alc.order, "agent order (rr) or chore order (envygraph)")->delimiter(',');
  allocate->add_option("--out", alc.out, "output file (default: stdout)");

  Verify ver;
  auto* verify = app.add_subcommand("verify", "check a property of an allocation");
  verify->add_option("--instance", ver.instance)->required();
  verify->add_option("--allocation", ver.allocation)->required();
  verify->add_option("--check", ver.check, "ef|ef1|po|pef1|equilibrium|def")->required();
  verify->add_option("--k", ver.k, "dubious chore budget (def)");
  verify->add_option("--witness", ver.witness, "witness file (def)");
  verify->add_option("--variant", ver.variant, "def|sdef|pdef");
  verify->add_option("--prices", ver.prices, "prices file (pef1, equilibrium)");
  verify->add_option("--po-method", ver.po_method, "auto|brute|binary");
  verify->add_option("--budget", ver.budget, "solver node budget");

  Minimize min;
  auto* minimize = app.add_subcommand("minimize", "fewest dubious chores");
  minimize->add_option("--instance", min.instance)->required();
  minimize->add_option("--allocation", min.allocation);
  minimize->add_option("--variant", min.variant, "def|sdef|pdef");
  minimize->add_flag("--over-allocations", min.over_allocations, "search over all allocations");
  minimize->add_flag("--po-only", min.po_only, "restrict the search to Pareto-optimal allocations");
  minimize->add_option("--budget", min.budget, "node budget");
  minimize->add_option("--witness-out", min.witness_out, "witness file");

  Experiment exp;
  auto* experiment = app.add_subcommand("experiment", "synthetic sweep to CSV");
  experiment->add_option("--config", exp.config)->required();
  experiment->add_option("--out", exp.out, "CSV file (default: stdout)");
  experiment->add_option("--workers", exp.workers, "worker threads (default: hardware)");
  experiment->add_flag("--timing", exp.timing, "record wall-clock runtimes");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (gen_syn->parsed()) return run_gen_synthetic(syn, out);
    if (red_part->parsed()) return run_gen_partition(red, out);
    if (red_split->parsed()) return run_gen_setsplitting(red, out);
    if (red_x3c->parsed()) return run_gen_rx3c(red, out);
    if (allocate->parsed()) return run_allocate(alc, out);
    if (verify->parsed()) return run_verify(ver, out);
    if (minimize->parsed()) return run_minimize(min, out);
    if (experiment->parsed()) return run_experiment_cmd(exp, out, err);
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const budget_exceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitInexact;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalid;
}

}  // namespace chorefair

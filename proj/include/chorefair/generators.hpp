#ifndef CHOREFAIR_GENERATORS_HPP_
#define CHOREFAIR_GENERATORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair {

/// splitmix64; fully specified so streams are bit-identical everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform in [0, bound) by modulo reduction (bound > 0). Slightly biased;
  /// only used for test data.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Stream key for one synthetic trial: seed ^ mix(n, m, trial).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t n, std::uint64_t m, std::uint64_t trial);

/// Probabilities are integers in units of 2^-53.
inline constexpr std::uint64_t kProbabilityOne = std::uint64_t{1} << 53;

/// round(num / den * 2^53), num <= den.
std::uint64_t probability_units(std::uint64_t num, std::uint64_t den);
/// "7/10", "1", "0".
std::uint64_t parse_probability(const std::string& text);

/// True with probability units / 2^53, using the top 53 bits of one draw.
bool bernoulli(SplitMix64& rng, std::uint64_t units);

struct SyntheticConfig {
  std::size_t n = 3;
  std::size_t m = 3;
  std::size_t trials = 100;
  std::uint64_t p_neg = probability_units(7, 10);
  std::uint64_t seed = 0;
  bool force_last_common = true;
};

/// Binary instance: each entry is -1 with probability p_neg, else 0, filled
/// agent by agent. With force_last_common the last chore costs everyone 1.
Instance gen_synthetic(const SyntheticConfig& cfg, std::size_t trial);

/// A generated instance together with the answer of the source problem.
struct ReductionInstance {
  Instance instance;
  bool expected = false;
  std::size_t k = 0;  // the instance admits a DEF-k allocation iff expected
};

bool partition_oracle(const std::vector<Value>& items);

/// 2k+2 agents with identical valuations: one chore per item (cost x_j) and k
/// dummy chores of cost half the total. Odd totals are doubled first so the
/// dummy cost stays integral (the answer is "no" either way).
ReductionInstance gen_from_partition(const std::vector<Value>& items, std::size_t k);

/// Hypergraph over vertices 0..universe-1.
struct SetSystem {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> family;
};

/// Is there a 2-coloring of the vertices leaving no member monochromatic?
bool set_splitting_oracle(const SetSystem& sets);

/// With r' = max(q, r, k): r' edge agents, two color agents, k dummy agents;
/// q vertex chores followed by r' dummy chores. Edge agents beyond the r
/// real hyperedges are adjacent to every vertex.
ReductionInstance gen_from_setsplitting(const SetSystem& sets, std::size_t k);

using Triple = std::array<std::size_t, 3>;

struct ExactCoverInstance {
  Instance instance;
  Allocation allocation;
  bool expected = false;
  std::size_t k = 0;  // allocation is DEF-k iff expected
};

/// Does some |universe|/3 subfamily cover the universe?
bool exact_cover_oracle(std::size_t universe, const std::vector<Triple>& subsets);

/// Agents 0..n (0 is the choosing agent), 4n^2 dummy chores d^r_{i,j}
/// ordered by (i, j, r), then one chore per subset. Agent 0 holds the subset
/// chores and agent i the dummies d^r_{j,i}. Requires |U| = 3k and every
/// element in exactly three subsets.
ExactCoverInstance gen_from_rx3c(std::size_t universe, const std::vector<Triple>& subsets);

}  // namespace chorefair

#endif  // CHOREFAIR_GENERATORS_HPP_

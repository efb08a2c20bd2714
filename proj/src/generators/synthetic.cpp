#include <charconv>

#include "chorefair/errors.hpp"
#include "chorefair/generators.hpp"

namespace chorefair {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t step(std::uint64_t x) { return finalize(x + kGamma); }

std::uint64_t parse_u64(std::string_view text, const std::string& whole) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw invalid_input("malformed probability \"" + whole + "\"");
  }
  return out;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return finalize(state_);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t n, std::uint64_t m, std::uint64_t trial) {
  return seed ^ step(step(step(n) ^ m) ^ trial);
}

std::uint64_t probability_units(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw invalid_input("probability must lie in [0, 1]");
  const u128 scaled = static_cast<u128>(num) * kProbabilityOne;
  return static_cast<std::uint64_t>((scaled + den / 2) / den);
}

std::uint64_t parse_probability(const std::string& text) {
  const std::string_view view(text);
  if (const auto slash = view.find('/'); slash != std::string_view::npos) {
    return probability_units(parse_u64(view.substr(0, slash), text), parse_u64(view.substr(slash + 1), text));
  }
  if (const auto dot = view.find('.'); dot != std::string_view::npos) {
    const auto frac = view.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw invalid_input("malformed probability \"" + text + "\"");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::uint64_t whole = parse_u64(view.substr(0, dot), text);
    if (whole > 1) throw invalid_input("probability must lie in [0, 1]");
    return probability_units(whole * den + parse_u64(frac, text), den);
  }
  return probability_units(parse_u64(view, text), 1);
}

bool bernoulli(SplitMix64& rng, std::uint64_t units) { return (rng.next() >> 11) < units; }

Instance gen_synthetic(const SyntheticConfig& cfg, std::size_t trial) {
  if (cfg.n == 0) throw invalid_input("synthetic instances need at least one agent");
  if (cfg.p_neg > kProbabilityOne) throw invalid_input("probability must lie in [0, 1]");
  SplitMix64 rng(stream_key(cfg.seed, cfg.n, cfg.m, trial));
  std::vector<Value> values(cfg.n * cfg.m);
  for (auto& v : values) v = bernoulli(rng, cfg.p_neg) ? -1 : 0;
  if (cfg.force_last_common && cfg.m > 0) {
    for (std::size_t i = 0; i < cfg.n; ++i) values[i * cfg.m + cfg.m - 1] = -1;
  }
  return Instance(cfg.n, cfg.m, std::move(values));
}

}  // namespace chorefair

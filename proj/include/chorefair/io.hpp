#ifndef CHOREFAIR_IO_HPP_
#define CHOREFAIR_IO_HPP_

#include <filesystem>
#include <string>

#include "chorefair/instance.hpp"
#include "chorefair/market.hpp"

namespace chorefair {

// JSON formats:
//   instance    {"agents": [label...], "chores": [label...], "valuations": [[int...]...]}
//   allocation  {"assignment": [owner...]}
//   witness     {"copies": [{"chore": c, "agent": i, "count": k}...]}
//   prices      {"prices": ["3/2", "1", ...]}
// Label arrays may be empty or omitted. Only integers are accepted as numbers.
// Parse failures throw invalid_input naming the offending field.

Instance parse_instance(const std::string& text);
std::string dump_instance(const Instance& inst);

/// Owners are range-checked only when agents > 0.
Allocation parse_allocation(const std::string& text, std::size_t agents = 0);
std::string dump_allocation(const Allocation& alloc);

DubiousAllocation parse_witness(const std::string& text);
std::string dump_witness(const DubiousAllocation& witness);

PriceVector parse_prices(const std::string& text);
std::string dump_prices(const PriceVector& prices);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Allocation read_allocation(const std::filesystem::path& path, std::size_t agents = 0);
void write_allocation(const std::filesystem::path& path, const Allocation& alloc);
DubiousAllocation read_witness(const std::filesystem::path& path);
void write_witness(const std::filesystem::path& path, const DubiousAllocation& witness);

}  // namespace chorefair

#endif  // CHOREFAIR_IO_HPP_

#include "chorefair/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "chorefair/errors.hpp"

namespace chorefair {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object()) throw invalid_input("expected a JSON object at top level");
  const auto it = doc.find(key);
  if (it == doc.end()) throw invalid_input(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& require_array(const json& value, const std::string& path) {
  if (!value.is_array()) throw invalid_input(path + ": expected an array");
  return value;
}

std::int64_t require_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) throw invalid_input(path + ": expected an integer");
  if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw invalid_input(path + ": integer out of range");
  }
  return value.get<std::int64_t>();
}

std::size_t require_index(const json& value, const std::string& path) {
  const auto x = require_int(value, path);
  if (x < 0) throw invalid_input(path + ": expected a nonnegative index, got " + std::to_string(x));
  return static_cast<std::size_t>(x);
}

std::vector<std::string> read_labels(const json& doc, const char* key) {
  std::vector<std::string> out;
  const auto it = doc.find(key);
  if (it == doc.end()) return out;
  const auto& arr = require_array(*it, key);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = std::string(key) + "[" + std::to_string(k) + "]";
    if (arr[k].is_string()) {
      out.push_back(arr[k].get<std::string>());
    } else {
      out.push_back(std::to_string(require_int(arr[k], path)));
    }
  }
  return out;
}

std::string with_newline(const json& doc) { return doc.dump() + "\n"; }

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  const auto& rows = require_array(require(doc, "valuations"), "valuations");
  if (rows.empty()) throw invalid_input("valuations: at least one agent row required");
  std::vector<std::vector<Value>> matrix;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_path = "valuations[" + std::to_string(i) + "]";
    const auto& row = require_array(rows[i], row_path);
    std::vector<Value> parsed;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string path = row_path + "[" + std::to_string(c) + "]";
      const Value v = require_int(row[c], path);
      if (v > 0) throw invalid_input("nonpositive valuations required: " + path + " = " + std::to_string(v));
      parsed.push_back(v);
    }
    matrix.push_back(std::move(parsed));
  }
  const auto base = Instance::from_rows(matrix);
  return Instance(base.agents(), base.chores(), base.values(), read_labels(doc, "agents"), read_labels(doc, "chores"));
}

std::string dump_instance(const Instance& inst) {
  json doc;
  doc["agents"] = inst.agent_labels();
  doc["chores"] = inst.chore_labels();
  doc["valuations"] = inst.rows();
  return with_newline(doc);
}

Allocation parse_allocation(const std::string& text, std::size_t agents) {
  const json doc = parse_json(text);
  const auto& arr = require_array(require(doc, "assignment"), "assignment");
  std::vector<std::size_t> owners;
  for (std::size_t c = 0; c < arr.size(); ++c) {
    const std::string path = "assignment[" + std::to_string(c) + "]";
    const auto owner = require_index(arr[c], path);
    if (agents > 0 && owner >= agents) {
      throw invalid_input(path + ": owner " + std::to_string(owner) + " out of range for " + std::to_string(agents) +
                          " agents");
    }
    owners.push_back(owner);
  }
  return Allocation(std::move(owners));
}

std::string dump_allocation(const Allocation& alloc) {
  json doc;
  doc["assignment"] = alloc.owners();
  return with_newline(doc);
}

DubiousAllocation parse_witness(const std::string& text) {
  const json doc = parse_json(text);
  const auto& arr = require_array(require(doc, "copies"), "copies");
  DubiousAllocation out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = "copies[" + std::to_string(k) + "]";
    if (!arr[k].is_object()) throw invalid_input(path + ": expected an object");
    auto field = [&](const char* key) -> const json& {
      const auto it = arr[k].find(key);
      if (it == arr[k].end()) throw invalid_input(path + ": missing field \"" + key + "\"");
      return *it;
    };
    const auto chore = require_index(field("chore"), path + ".chore");
    const auto agent = require_index(field("agent"), path + ".agent");
    std::size_t count = 1;
    if (arr[k].contains("count")) count = require_index(arr[k]["count"], path + ".count");
    if (count == 0) throw invalid_input(path + ".count: must be at least 1");
    out.add(chore, agent, count);
  }
  return out;
}

std::string dump_witness(const DubiousAllocation& witness) {
  json copies = json::array();
  for (const auto& c : witness.copies()) copies.push_back({{"chore", c.chore}, {"agent", c.agent}, {"count", c.count}});
  json doc;
  doc["copies"] = std::move(copies);
  return with_newline(doc);
}

PriceVector parse_prices(const std::string& text) {
  const json doc = parse_json(text);
  const auto& arr = require_array(require(doc, "prices"), "prices");
  std::vector<Price> prices;
  for (std::size_t c = 0; c < arr.size(); ++c) {
    const std::string path = "prices[" + std::to_string(c) + "]";
    std::string token;
    if (arr[c].is_string()) {
      token = arr[c].get<std::string>();
    } else {
      token = std::to_string(require_int(arr[c], path));
    }
    try {
      prices.push_back(parse_price(token));
    } catch (const invalid_input& e) {
      throw invalid_input(path + ": " + e.what());
    }
  }
  return PriceVector(std::move(prices));
}

std::string dump_prices(const PriceVector& prices) {
  json arr = json::array();
  for (const auto& p : prices.prices()) arr.push_back(format_price(p));
  json doc;
  doc["prices"] = std::move(arr);
  return with_newline(doc);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot write " + path.string());
  out << text;
}

namespace {

template <typename F>
auto with_file_context(const std::filesystem::path& path, F&& parse) {
  try {
    return parse(read_text(path));
  } catch (const invalid_input& e) {
    throw invalid_input(path.string() + ": " + e.what());
  }
}

}  // namespace

Instance read_instance(const std::filesystem::path& path) {
  return with_file_context(path, [](const std::string& t) { return parse_instance(t); });
}

void write_instance(const std::filesystem::path& path, const Instance& inst) { write_text(path, dump_instance(inst)); }

Allocation read_allocation(const std::filesystem::path& path, std::size_t agents) {
  return with_file_context(path, [agents](const std::string& t) { return parse_allocation(t, agents); });
}

void write_allocation(const std::filesystem::path& path, const Allocation& alloc) {
  write_text(path, dump_allocation(alloc));
}

DubiousAllocation read_witness(const std::filesystem::path& path) {
  return with_file_context(path, [](const std::string& t) { return parse_witness(t); });
}

void write_witness(const std::filesystem::path& path, const DubiousAllocation& witness) {
  write_text(path, dump_witness(witness));
}

}  // namespace chorefair

#include "chorefair/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "chorefair/errors.hpp"

namespace chorefair {

Instance::Instance(std::size_t agents, std::size_t chores, std::vector<Value> values,
                   std::vector<std::string> agent_labels, std::vector<std::string> chore_labels)
    : agents_(agents),
      chores_(chores),
      values_(std::move(values)),
      agent_labels_(std::move(agent_labels)),
      chore_labels_(std::move(chore_labels)) {
  if (agents_ == 0) throw invalid_input("instance needs at least one agent");
  if (values_.size() != agents_ * chores_) {
    throw invalid_input("valuation matrix must have " + std::to_string(agents_) + " rows of " +
                        std::to_string(chores_) + " entries");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] > 0) {
      std::ostringstream msg;
      msg << "nonpositive valuations required: valuations[" << k / chores_ << "][" << k % chores_
          << "] = " << values_[k];
      throw invalid_input(msg.str());
    }
  }
  if (!agent_labels_.empty() && agent_labels_.size() != agents_) {
    throw invalid_input("expected " + std::to_string(agents_) + " agent labels");
  }
  if (!chore_labels_.empty() && chore_labels_.size() != chores_) {
    throw invalid_input("expected " + std::to_string(chores_) + " chore labels");
  }
}

Instance Instance::from_rows(const std::vector<std::vector<Value>>& rows) {
  if (rows.empty()) throw invalid_input("instance needs at least one agent");
  const std::size_t m = rows.front().size();
  std::vector<Value> flat;
  flat.reserve(rows.size() * m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      throw invalid_input("valuations[" + std::to_string(i) + "] has " + std::to_string(rows[i].size()) +
                          " entries, expected " + std::to_string(m));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return Instance(rows.size(), m, std::move(flat));
}

std::vector<std::vector<Value>> Instance::rows() const {
  std::vector<std::vector<Value>> out(agents_);
  for (std::size_t i = 0; i < agents_; ++i) {
    auto r = row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

Instance Instance::scaled_row(std::size_t agent, Value factor) const {
  if (factor <= 0) throw invalid_input("row scale factor must be positive");
  auto values = values_;
  for (std::size_t c = 0; c < chores_; ++c) values[agent * chores_ + c] *= factor;
  return Instance(agents_, chores_, std::move(values), agent_labels_, chore_labels_);
}

std::vector<std::vector<std::size_t>> Allocation::bundles(std::size_t agents) const {
  std::vector<std::vector<std::size_t>> out(agents);
  for (std::size_t c = 0; c < owners_.size(); ++c) out[owners_[c]].push_back(c);
  return out;
}

void validate(const Instance& inst, const Allocation& alloc) {
  if (alloc.chores() != inst.chores()) {
    throw invalid_input("allocation covers " + std::to_string(alloc.chores()) + " chores, instance has " +
                        std::to_string(inst.chores()));
  }
  for (std::size_t c = 0; c < alloc.chores(); ++c) {
    if (alloc.owner(c) >= inst.agents()) {
      throw invalid_input("assignment[" + std::to_string(c) + "] = " + std::to_string(alloc.owner(c)) +
                          " is not an agent index (n = " + std::to_string(inst.agents()) + ")");
    }
  }
}

DubiousAllocation::DubiousAllocation(const std::vector<DubiousCopy>& copies) {
  for (const auto& copy : copies) add(copy.chore, copy.agent, copy.count);
}

void DubiousAllocation::add(std::size_t chore, std::size_t agent, std::size_t count) {
  if (count == 0) return;
  auto key = [](const DubiousCopy& d) { return std::pair(d.chore, d.agent); };
  auto it = std::lower_bound(copies_.begin(), copies_.end(), std::pair(chore, agent),
                             [&](const DubiousCopy& d, const auto& k) { return key(d) < k; });
  if (it != copies_.end() && it->chore == chore && it->agent == agent) {
    it->count += count;
  } else {
    copies_.insert(it, DubiousCopy{chore, agent, count});
  }
}

void DubiousAllocation::merge(const DubiousAllocation& other) {
  for (const auto& copy : other.copies_) add(copy.chore, copy.agent, copy.count);
}

std::size_t DubiousAllocation::size() const {
  std::size_t total = 0;
  for (const auto& copy : copies_) total += copy.count;
  return total;
}

std::size_t DubiousAllocation::count(std::size_t chore, std::size_t agent) const {
  for (const auto& copy : copies_) {
    if (copy.chore == chore && copy.agent == agent) return copy.count;
  }
  return 0;
}

bool DubiousAllocation::is_subset_of(const DubiousAllocation& other) const {
  return std::all_of(copies_.begin(), copies_.end(),
                     [&](const DubiousCopy& d) { return other.count(d.chore, d.agent) >= d.count; });
}

void validate(const Instance& inst, const DubiousAllocation& witness) {
  for (const auto& copy : witness.copies()) {
    if (copy.chore >= inst.chores()) {
      throw invalid_input("copy of chore " + std::to_string(copy.chore) + " is out of range (m = " +
                          std::to_string(inst.chores()) + ")");
    }
    if (copy.agent >= inst.agents()) {
      throw invalid_input("copy targets agent " + std::to_string(copy.agent) + ", out of range (n = " +
                          std::to_string(inst.agents()) + ")");
    }
  }
}

namespace {

bool columns_equal(const Instance& inst, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (inst.value(i, a) != inst.value(i, b)) return false;
  }
  return true;
}

}  // namespace

ValuationClass classify_valuations(const Instance& inst) {
  ValuationClass out;
  const auto& values = inst.values();

  out.identical = true;
  for (std::size_t i = 1; i < inst.agents() && out.identical; ++i) {
    for (std::size_t c = 0; c < inst.chores(); ++c) {
      if (inst.value(i, c) != inst.value(0, c)) {
        out.identical = false;
        break;
      }
    }
  }

  out.binary = std::all_of(values.begin(), values.end(), [](Value v) { return v == 0 || v == -1; });

  std::set<Value> distinct(values.begin(), values.end());
  if (!distinct.empty() && distinct.size() <= 2 && *distinct.rbegin() < 0) {
    out.bivalued = BivaluedParams{*distinct.begin(), *distinct.rbegin()};
  }

  // At most two distinct columns.
  TwoTypesPartition parts;
  bool ok = true;
  for (std::size_t c = 0; c < inst.chores() && ok; ++c) {
    if (parts.x_chores.empty() || columns_equal(inst, c, parts.x_chores.front())) {
      parts.x_chores.push_back(c);
    } else if (parts.y_chores.empty() || columns_equal(inst, c, parts.y_chores.front())) {
      parts.y_chores.push_back(c);
    } else {
      ok = false;
    }
  }
  if (ok) out.two_types = std::move(parts);
  return out;
}

}  // namespace chorefair

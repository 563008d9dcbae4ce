#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "opacity/nfa.hpp"

namespace opacity::detail {

// Unique-name allocator with the fresh_name suffix policy (base, base_1, ...).
class NameBook {
 public:
  NameBook() = default;
  explicit NameBook(const std::vector<std::string>& taken) : used_(taken.begin(), taken.end()) {}

  std::string take(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (std::size_t i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
};

inline std::vector<std::string> event_names(const std::vector<Event>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(e.name);
  return out;
}

}  // namespace opacity::detail

#include <algorithm>
#include <unordered_set>

#include "opacity/nfa.hpp"

namespace opacity {

StateId Nfa::add_state(std::string name) {
  states.push_back(std::move(name));
  return static_cast<StateId>(states.size() - 1);
}

std::optional<StateId> Nfa::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

void Nfa::canonicalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

Adjacency::Adjacency(const Nfa& nfa) : events_(nfa.alphabet.size()) {
  const std::size_t slots = nfa.size() * events_;
  offsets_.assign(slots + 1, 0);
  for (const auto& t : nfa.transitions) ++offsets_[static_cast<std::size_t>(t.source) * events_ + t.event + 1];
  for (std::size_t i = 0; i < slots; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(nfa.transitions.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& t : nfa.transitions)
    targets_[fill[static_cast<std::size_t>(t.source) * events_ + t.event]++] = t.target;
}

std::vector<Diagnostic> validate(const Nfa& nfa) {
  using K = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  const std::size_t n = nfa.size();

  std::unordered_set<std::string> seen;
  for (const auto& s : nfa.states) {
    if (s.empty()) out.push_back({K::empty_state_name, "state with empty name"});
    else if (!seen.insert(s).second) out.push_back({K::duplicate_state, "duplicate state '" + s + "'"});
  }
  seen.clear();
  for (const auto& e : nfa.alphabet.events) {
    if (e.name.empty()) out.push_back({K::empty_event_name, "event with empty name"});
    else if (!seen.insert(e.name).second)
      out.push_back({K::duplicate_event, "duplicate event '" + e.name + "'"});
  }

  auto state_label = [&](StateId q) {
    return q < n ? nfa.states[q] : "#" + std::to_string(q);
  };
  for (const auto& t : nfa.transitions) {
    const std::string where = "transition (" + state_label(t.source) + ", " +
                              (t.event < nfa.alphabet.size() ? nfa.alphabet.name(t.event)
                                                              : "#" + std::to_string(t.event)) +
                              ", " + state_label(t.target) + ")";
    if (t.event >= nfa.alphabet.size()) out.push_back({K::unknown_event, "unknown event in " + where});
    if (t.source >= n) out.push_back({K::unknown_source, "undeclared source state in " + where});
    if (t.target >= n) out.push_back({K::unknown_target, "undeclared target state in " + where});
  }
  nfa.initial.for_each([&](StateId q) {
    if (q >= n) out.push_back({K::initial_not_declared, "initial state #" + std::to_string(q) + " not declared"});
  });
  nfa.marked.for_each([&](StateId q) {
    if (q >= n) out.push_back({K::marked_not_declared, "marked state #" + std::to_string(q) + " not declared"});
  });
  return out;
}

bool is_deterministic(const Nfa& nfa) {
  // Canonical transition order puts equal (source, event) pairs next to each other.
  auto sorted = nfa.transitions;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].source == sorted[i - 1].source && sorted[i].event == sorted[i - 1].event)
      return false;
  return true;
}

}  // namespace opacity

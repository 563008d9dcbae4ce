#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opacity/state_set.hpp"

namespace opacity {

struct Event {
  std::string name;
  bool observable = true;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Event universe partitioned into observable and unobservable events.
/// Identity is by name; an EventId is the index into `events`.
struct Alphabet {
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
  const std::string& name(EventId e) const { return events[e].name; }
  bool is_observable(EventId e) const { return e < events.size() && events[e].observable; }
  std::optional<EventId> find(std::string_view name) const;

  std::vector<EventId> observable() const;
  std::vector<EventId> unobservable() const;
  std::size_t observable_count() const;

  /// Observable events sorted by name; the tie-break order for witnesses.
  std::vector<EventId> observable_by_name() const;

  /// The alphabet restricted to observable events, in their original order.
  Alphabet observable_part() const;

  EventId add(std::string name, bool observable);

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Alphabet builder shorthand: observable names, then unobservable names.
Alphabet make_alphabet(std::initializer_list<std::string_view> observable,
                       std::initializer_list<std::string_view> unobservable = {});

/// Returns `base` if unused in `taken`, otherwise base_1, base_2, ...
std::string fresh_name(std::string_view base, const std::vector<std::string>& taken);

struct Transition {
  StateId source;
  EventId event;
  StateId target;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite automaton over an Alphabet: the single representation for plants,
/// observers and products. Fields are public so malformed automata can be
/// represented and diagnosed by validate(); every constructor in the library
/// leaves `transitions` sorted and duplicate-free (see canonicalize()).
struct Nfa {
  std::vector<std::string> states;
  Alphabet alphabet;
  std::vector<Transition> transitions;
  StateSet initial;
  StateSet marked;

  std::size_t size() const { return states.size(); }
  StateId add_state(std::string name);
  std::optional<StateId> find_state(std::string_view name) const;
  void add_transition(StateId from, EventId e, StateId to) { transitions.push_back({from, e, to}); }
  void canonicalize();

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

/// Compressed successor lists: successors(q, e) in O(1).
class Adjacency {
 public:
  explicit Adjacency(const Nfa& nfa);
  std::span<const StateId> successors(StateId q, EventId e) const {
    const std::size_t slot = static_cast<std::size_t>(q) * events_ + e;
    return {targets_.data() + offsets_[slot], targets_.data() + offsets_[slot + 1]};
  }

 private:
  std::size_t events_;
  std::vector<std::size_t> offsets_;
  std::vector<StateId> targets_;
};

struct Diagnostic {
  enum class Kind {
    duplicate_state,
    empty_state_name,
    duplicate_event,
    empty_event_name,
    unknown_event,
    unknown_source,
    unknown_target,
    initial_not_declared,
    marked_not_declared,
    instance,  // opacity-instance level (see validate_instance)
  };
  Kind kind;
  std::string message;
};

std::vector<Diagnostic> validate(const Nfa& nfa);

/// At most one successor per (state, event). |I| is not constrained.
bool is_deterministic(const Nfa& nfa);

}  // namespace opacity

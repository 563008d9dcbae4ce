#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opacity/nfa.hpp"

namespace opacity {

/// A sequence of observable events, as EventIds of the owning alphabet.
using Observation = std::vector<EventId>;

std::string format_observation(const Alphabet& alphabet, const Observation& obs);

/// Precomputed unobservable closures and per-event successor rows, stored as
/// flat bit rows so a macro-step is an OR over the rows of the members.
class Stepper {
 public:
  explicit Stepper(const Nfa& nfa);

  std::size_t size() const { return n_; }
  const Alphabet& alphabet() const { return alphabet_; }

  StateSet closure(const StateSet& s) const;
  /// Closure of the e-successors of closure(s). Throws unknown_event unless
  /// e is observable.
  StateSet step(const StateSet& s, EventId e) const;
  /// As step(), for an `s` already closed under unobservable events.
  StateSet step_closed(const StateSet& s, EventId e) const;
  /// closure(I)
  const StateSet& initial_estimate() const { return initial_; }
  const StateSet& closure_of(StateId q) const { return closure_rows_[q]; }

  /// Observable events sorted by name (the witness tie-break order).
  const std::vector<EventId>& observable_order() const { return order_; }

 private:
  std::size_t slot_of(EventId e) const;

  std::size_t n_;
  std::size_t stride_;
  Alphabet alphabet_;
  std::vector<std::int32_t> slot_;       // event -> observable slot or -1
  std::vector<StateSet> closure_rows_;   // q -> closure({q})
  std::vector<bits::Word> direct_rows_;  // [slot][q] -> closure(delta(q, e))
  StateSet initial_;
  std::vector<EventId> order_;
};

/// Reachable part of the subset construction, explored breadth-first with
/// events in name order so every state's BFS-tree path is its
/// lexicographically least shortest observation.
struct SubsetGraph {
  static constexpr std::int32_t kDead = -1;

  std::vector<StateSet> subsets;                 // discovery order, [0] = closure(I)
  std::vector<EventId> events;                   // exploration order (by name)
  std::vector<std::vector<std::int32_t>> next;   // [state][event index] -> state | kDead
  std::vector<std::int32_t> parent;              // BFS tree; -1 for the root
  std::vector<std::uint32_t> parent_event;       // event index into `events`

  std::size_t transition_count() const;
  Observation path_to(std::size_t state) const;
};

/// Empty graph when closure(I) is empty (the empty estimate is never a state).
SubsetGraph explore_subsets(const Stepper& stepper);

StateSet unobservable_closure(const Nfa& nfa, const StateSet& s);
StateSet step(const Nfa& nfa, const StateSet& s, EventId e);
StateSet estimate(const Nfa& nfa, const Observation& obs);

/// Projected automaton over the observable events: same states, initial set
/// closure(I), transitions p -e-> q for q in step({p}, e), marking kept.
Nfa project(const Nfa& nfa);

/// Determinized projection. States are named by their estimate, e.g. "{0,2}";
/// a state is marked iff its estimate contains a marked state.
Nfa observer(const Nfa& nfa);
Nfa observer_from(const Nfa& nfa, const SubsetGraph& graph);

/// Totalize over the observable events (adding the sink "{}" only when some
/// pair is undefined or there is no initial state) and complement `marking`.
Nfa complete_and_complement(const Nfa& det, const StateSet& marking);

/// Synchronous product of two automata without unobservable events.
Nfa product(const Nfa& a, const Nfa& b);

struct Restriction {
  Nfa nfa;
  std::vector<StateId> kept;  // output state -> input state
};

/// Restriction to states that are reachable and co-reachable.
Restriction trim_keep(const Nfa& nfa);
Nfa trim(const Nfa& nfa);

/// Restriction to `keep`, preserving order.
Restriction restrict_to(const Nfa& nfa, const StateSet& keep);

StateSet reachable_from(const Nfa& nfa, const StateSet& from);
StateSet coreachable_to(const Nfa& nfa, const StateSet& to);

/// Shortest word (length, then event-name lexicographic) leading from an
/// initial state to a marked state, if any.
std::optional<std::vector<EventId>> shortest_accepted(const Nfa& nfa);

}  // namespace opacity

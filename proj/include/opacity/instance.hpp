#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "opacity/automata.hpp"

namespace opacity {

enum class Notion { cso, iso, ifo, lbo, kso, inso };

std::string_view to_string(Notion n);
std::optional<Notion> parse_notion(std::string_view s);

/// Current-state opacity. Every state of `system` counts as marked.
struct CsoInstance {
  Nfa system;
  StateSet secret;
  StateSet nonsecret;
  friend bool operator==(const CsoInstance&, const CsoInstance&) = default;
};

/// Initial-state opacity; both sets lie within system.initial.
struct IsoInstance {
  Nfa system;
  StateSet secret_initial;
  StateSet nonsecret_initial;
  friend bool operator==(const IsoInstance&, const IsoInstance&) = default;
};

/// (initial state, final state)
using StatePair = std::pair<StateId, StateId>;

struct IfoInstance {
  Nfa system;
  std::vector<StatePair> secret_pairs;
  std::vector<StatePair> nonsecret_pairs;
  friend bool operator==(const IfoInstance&, const IfoInstance&) = default;
};

/// Language-based opacity: P(L_m(secret_aut)) must be contained in
/// P(L_m(nonsecret_aut)). Both automata share one alphabet.
struct LboInstance {
  Nfa secret_aut;
  Nfa nonsecret_aut;

  const Alphabet& alphabet() const { return secret_aut.alphabet; }
  friend bool operator==(const LboInstance&, const LboInstance&) = default;
};

/// Trims both automata; the usual way to build an LboInstance.
LboInstance make_lbo(const Nfa& secret_aut, const Nfa& nonsecret_aut);

struct KsoInstance {
  Nfa system;
  StateSet secret;
  StateSet nonsecret;
  std::uint64_t k = 0;
  friend bool operator==(const KsoInstance&, const KsoInstance&) = default;
};

struct InsoInstance {
  Nfa system;
  StateSet secret;
  StateSet nonsecret;
  friend bool operator==(const InsoInstance&, const InsoInstance&) = default;
};

using OpacityInstance =
    std::variant<CsoInstance, IsoInstance, IfoInstance, LboInstance, KsoInstance, InsoInstance>;

Notion notion_of(const OpacityInstance& inst);

/// The automata of an instance: one, or two for LBO (secret first).
std::vector<const Nfa*> automata_of(const OpacityInstance& inst);

std::vector<Diagnostic> validate_instance(const OpacityInstance& inst);

/// Throws invalid_instance with the first diagnostic if any.
void require_valid(const OpacityInstance& inst);

struct Witness {
  Notion kind;
  Observation prefix;                 // P(s), or the violating observation
  std::optional<Observation> suffix;  // P(t) for K-SO / INSO
  std::string note;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
  bool opaque = true;
  std::optional<Witness> witness;  // present iff !opaque

  static Verdict holds() { return {}; }
  static Verdict violated(Witness w) { return {false, std::move(w)}; }
};

/// Sizes of the input and of the structures a verifier built.
struct Metrics {
  std::size_t n = 0;    // states of the input system
  std::size_t ell = 0;  // observable events
  std::size_t m = 0;    // transitions of the projected automaton
  std::size_t constructed_states = 0;
  std::size_t constructed_transitions = 0;
};

// ------------------------------------------------------------ provenance

enum class StateOriginKind { original, plus, minus, chain, encoding, fresh };

/// Where an output state of a transformation came from.
///   original/plus/minus: `state` of input automaton `automaton`, `copy`
///     distinguishes the per-pair copies of ifo_to_lbo.
///   chain: position `index` of a counter chain; `state` is the chain's
///     source state when `has_source` (unary gadgets).
///   encoding: intermediate of binary_encode for output state `state` and
///     bit prefix `label`.
///   fresh: a named constructed state (x_S, q*, new initial state).
struct StateOrigin {
  StateOriginKind kind = StateOriginKind::original;
  std::uint32_t automaton = 0;
  std::uint32_t copy = 0;
  StateId state = 0;
  std::uint64_t index = 0;
  bool has_source = false;
  std::string label;
  friend bool operator==(const StateOrigin&, const StateOrigin&) = default;
};

enum class EventOriginKind { original, fresh_at, fresh_u, bit };

struct EventOrigin {
  EventOriginKind kind = EventOriginKind::original;
  EventId event = 0;  // input event for `original`, bit value for `bit`
  friend bool operator==(const EventOrigin&, const EventOrigin&) = default;
};

std::string describe(const StateOrigin& o);
std::string describe(const EventOrigin& o);

struct TransformOutput {
  OpacityInstance instance;
  /// One list per output automaton (two for LBO outputs), indexed by state.
  std::vector<std::vector<StateOrigin>> state_provenance;
  /// Indexed by output event id (LBO outputs share one alphabet).
  std::vector<EventOrigin> event_provenance;
  /// binary_encode was applied to restore the observable-event count.
  bool encoded = false;
};

}  // namespace opacity

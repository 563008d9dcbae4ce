#pragma once

#include <string>
#include <string_view>

#include "opacity/instance.hpp"

namespace opacity {

/// Line-oriented instance format, '#' starts a comment:
///
///   notion: cso|iso|ifo|lbo|kso|inso
///   k: 3                      (kso only)
///   automaton G
///   states: s0 s1 s2
///   observable: a b
///   unobservable: u
///   initial: s0
///   marked: s2
///   s0 a s1                   (one transition per line)
///   end
///   secret: s1                (ifo: "q0,qf; q0,qf"; lbo: an automaton name)
///   nonsecret: s2
///
/// Throws syntax_error or semantic_error, both with a line number.
OpacityInstance parse_instance(std::string_view text);

/// Inverse of parse_instance. Events are written observable first, so an
/// alphabet that interleaves the two kinds comes back renumbered. Throws
/// semantic_error for names the grammar cannot carry.
std::string serialize_instance(const OpacityInstance& inst);

/// DOT with states and transitions in canonical (id) order. Unobservable
/// transitions are dashed; marked states are double circles.
std::string to_dot(const Nfa& nfa, std::string_view name = "G");

/// All automata of the instance, secret states filled red and non-secret
/// states filled blue.
std::string instance_to_dot(const OpacityInstance& inst);

/// The verification structure: the observer for state-based notions, the
/// product P(A_S) x co-observer(A_NS) for LBO-like ones (ISO and IFO go
/// through their LBO form).
std::string structure_to_dot(const OpacityInstance& inst);

/// One line per output state and event, naming its origin.
std::string serialize_provenance(const TransformOutput& out);

}  // namespace opacity

#pragma once

#include <cstdint>
#include <optional>

#include "opacity/instance.hpp"

namespace opacity {

/// Result of a bounded definitional check. `bound` limits the observable
/// length of every enumerated string (prefix and suffix separately for
/// K-SO / INSO); unobservable runs between observable events are enumerated
/// up to n-1 events, which loses no reachable state.
struct BoundedVerdict {
  bool opaque = true;  // opaque up to `bound` unless a witness was found
  std::optional<Witness> witness;
  std::uint64_t bound = 0;
  bool complete = false;
};

/// Documented length beyond which no shortest counterexample can lie
/// (saturates at UINT64_MAX).
std::uint64_t completeness_bound(const OpacityInstance& inst);

/// Brute-force decision straight from the definitions. Observations are
/// visited by length, then lexicographically by event name; the first
/// violation found is the witness. complete = bound >= completeness_bound
/// or every reachable configuration was visited within the bound.
BoundedVerdict oracle_verify(const OpacityInstance& inst, std::uint64_t bound);

/// Replays a witness definitionally. Throws malformed_witness if its kind
/// does not match the instance, an event is not observable, or the suffix is
/// missing (K-SO / INSO) or unexpected (other notions).
bool witness_check(const OpacityInstance& inst, const Witness& w);

}  // namespace opacity

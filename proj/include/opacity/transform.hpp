#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opacity/instance.hpp"

namespace opacity {

struct TransformOptions {
  /// Re-encode the fresh @ so the output keeps |Σo| (needs |Σo| >= 2).
  bool preserve_events = false;
};

/// Bit codes over Γ_o, assigned in the given event order, MSB first.
struct EncodingPlan {
  std::vector<EventId> encoded_events;
  std::size_t code_length = 0;
  std::vector<std::string> code;  // parallel to encoded_events, e.g. "01"
};

/// Throws too_few_events if fewer than 3 events, unknown_event if one is
/// not observable.
EncodingPlan make_encoding_plan(const Alphabet& alphabet, std::vector<EventId> events);

/// Replaces each Γ_o-labelled transition by a path over fresh observable
/// events "0" and "1". Intermediates are shared per (source, prefix) and are
/// neither secret nor non-secret. Original states keep their ids. The result
/// is returned as a CSO instance over the two given sets.
TransformOutput binary_encode(const Nfa& nfa, const EncodingPlan& plan, const StateSet& secret,
                              const StateSet& nonsecret);

/// φ(q) = min(cap, max observable steps from q); cycles with an observable
/// step saturate to cap.
struct UnaryDepthMap {
  std::uint64_t cap = 0;
  std::vector<std::uint64_t> phi;
};

UnaryDepthMap unary_depths(const Nfa& nfa, std::uint64_t cap);

struct NfaTransform {
  Nfa nfa;
  std::vector<StateOrigin> state_provenance;
  std::vector<EventOrigin> event_provenance;
  bool no_op = false;
};

/// Fresh initial state with one fresh unobservable event per original
/// initial state. Throws empty_initial.
NfaTransform single_initial(const Nfa& nfa);

TransformOutput lbo_to_iso(const LboInstance& inst, TransformOptions opts = {});
TransformOutput cso_to_lbo(const CsoInstance& inst);
TransformOutput lbo_to_cso(const LboInstance& inst);
TransformOutput iso_to_lbo(const IsoInstance& inst);
TransformOutput iso_to_ifo(const IsoInstance& inst);
TransformOutput cso_to_ifo(const CsoInstance& inst);
TransformOutput ifo_to_lbo(const IfoInstance& inst);
TransformOutput cso_to_inso(const CsoInstance& inst);
TransformOutput inso_to_cso(const InsoInstance& inst, TransformOptions opts = {});
TransformOutput inso_to_cso_unary(const InsoInstance& inst);
TransformOutput cso_to_kso(const CsoInstance& inst, std::uint64_t k);
TransformOutput kso_to_cso(const KsoInstance& inst, TransformOptions opts = {});
TransformOutput kso_to_cso_unary(const KsoInstance& inst);

}  // namespace opacity

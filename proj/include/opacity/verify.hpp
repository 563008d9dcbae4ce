#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opacity/instance.hpp"

namespace opacity {

struct VerifyResult {
  Verdict verdict;
  Metrics metrics;
};

/// (x, X_NS): a secret state of an observer state X and the non-secret part
/// of X, where the post-split search starts.
struct SplitState {
  std::uint32_t observer_state = 0;
  StateId secret_state = 0;
  StateSet nonsecret_estimate;
};

/// A state (a, Z, d) of the post-split structure; d is the counter for K-SO
/// and the suffix length for INSO.
struct StructureState {
  StateId state = 0;
  StateSet estimate;
  std::uint64_t counter = 0;
};

struct VerificationCertificate {
  std::vector<StateSet> observer_states;
  std::vector<SplitState> split_states;
  std::optional<StructureState> reached_violation;
};

struct StructuredResult {
  Verdict verdict;
  Metrics metrics;
  VerificationCertificate certificate;
};

struct KsoOptions {
  /// Answer K >= 2^n - 2 with verify_inso.
  bool allow_inso_shortcut = true;
};

VerifyResult verify_cso(const CsoInstance& inst);
VerifyResult verify_lbo(const LboInstance& inst);
VerifyResult verify_iso(const IsoInstance& inst);
/// Throws not_unary unless exactly one observable event.
VerifyResult verify_iso_unary(const IsoInstance& inst);
VerifyResult verify_ifo(const IfoInstance& inst);
StructuredResult verify_inso(const InsoInstance& inst);
StructuredResult verify_kso(const KsoInstance& inst, KsoOptions opts = {});

/// Dispatch on the notion with the default algorithm of each.
VerifyResult verify(const OpacityInstance& inst);

/// Transition count of the projected automaton, without building it.
std::size_t projected_transition_count(const Nfa& nfa);

}  // namespace opacity

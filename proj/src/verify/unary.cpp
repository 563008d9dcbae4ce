#include <algorithm>

#include "opacity/error.hpp"
#include "opacity/transform.hpp"
#include "opacity/verify.hpp"

namespace opacity {

// Longest observable-weighted path from every state: Tarjan SCCs (iterative,
// components come out sinks first), then one pass over the condensation.
UnaryDepthMap unary_depths(const Nfa& nfa, std::uint64_t cap) {
  const std::size_t n = nfa.size();
  std::vector<std::vector<std::pair<StateId, bool>>> out(n);
  for (const auto& t : nfa.transitions)
    if (t.source < n && t.target < n) out[t.source].emplace_back(t.target, nfa.alphabet.is_observable(t.event));

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<StateId> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint64_t> comp_depth;
  std::uint32_t counter = 0;

  struct Frame {
    StateId v;
    std::size_t next;
  };
  std::vector<Frame> frames;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      if (f.next < out[f.v].size()) {
        const StateId w = out[f.v][f.next++].first;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const StateId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] != index[v]) continue;

      const auto c = static_cast<std::uint32_t>(comp_depth.size());
      std::vector<StateId> members;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = c;
        members.push_back(w);
      } while (w != v);

      std::uint64_t d = 0;
      for (StateId p : members)
        for (auto [q, observable] : out[p]) {
          if (comp[q] == c) {
            if (observable) d = cap;
          } else {
            const std::uint64_t via = comp_depth[comp[q]] + (observable ? 1 : 0);
            d = std::max(d, std::min(cap, via));
          }
        }
      comp_depth.push_back(std::min(cap, d));
    }
  }

  UnaryDepthMap map;
  map.cap = cap;
  map.phi.resize(n);
  for (StateId q = 0; q < n; ++q) map.phi[q] = comp_depth[comp[q]];
  return map;
}

VerifyResult verify_iso_unary(const IsoInstance& inst) {
  if (inst.system.alphabet.observable_count() != 1)
    throw Error(ErrorCode::not_unary, "verify_iso_unary needs exactly one observable event");
  require_valid(inst);
  const std::size_t n = inst.system.size();
  const EventId a = inst.system.alphabet.observable().front();

  // Finite depths are at most n-1, so cap n stands for unbounded.
  const auto depths = unary_depths(inst.system, n);
  auto max_depth = [&](const StateSet& from) {
    std::int64_t d = -1;
    from.for_each([&](StateId q) { d = std::max(d, static_cast<std::int64_t>(depths.phi[q])); });
    return d;
  };
  const std::int64_t d_s = max_depth(inst.secret_initial);
  const std::int64_t d_ns = max_depth(inst.nonsecret_initial);

  VerifyResult r;
  r.metrics.n = n;
  r.metrics.ell = 1;
  r.metrics.m = projected_transition_count(inst.system);
  r.metrics.constructed_states = n;
  r.metrics.constructed_transitions = inst.system.transitions.size();
  if (d_s > d_ns) {
    auto word = Observation(static_cast<std::size_t>(d_ns + 1), a);
    auto depth_label = [&](std::int64_t d) {
      return d == static_cast<std::int64_t>(n) ? std::string("unbounded") : std::to_string(d);
    };
    r.verdict = Verdict::violated({Notion::iso, std::move(word), std::nullopt,
                                   "secret depth " + depth_label(d_s) + " exceeds non-secret depth " +
                                       depth_label(d_ns)});
  }
  return r;
}

}  // namespace opacity

#include "names.hpp"
#include "opacity/error.hpp"
#include "opacity/transform.hpp"

namespace opacity {

namespace {

void require_unary(const Nfa& g, const char* what) {
  if (g.alphabet.observable_count() != 1)
    throw Error(ErrorCode::not_unary, std::string(what) + " needs exactly one observable event");
}

// Every state p with φ(p) > 0 gets a chain p~1 .. p~cap entered by a from p;
// p's observable out-edges leave from p~cap instead. p~1 .. p~φ(p) inherit
// p's secret / non-secret membership.
TransformOutput chain_gadget(const Nfa& system, const StateSet& secret, const StateSet& nonsecret,
                             std::uint64_t cap) {
  const EventId a = system.alphabet.observable().front();
  const auto depths = unary_depths(system, cap);
  const auto n = static_cast<StateId>(system.size());

  Nfa g;
  g.alphabet = system.alphabet;
  g.states = system.states;
  g.initial = system.initial;
  g.marked = system.marked;
  std::vector<StateOrigin> prov;
  for (StateId q = 0; q < n; ++q) prov.push_back({StateOriginKind::original, 0, 0, q, 0, false, {}});

  detail::NameBook names(system.states);
  std::vector<StateId> chain_end(n);
  StateSet s = secret, ns = nonsecret;
  for (StateId p = 0; p < n; ++p) {
    chain_end[p] = p;
    if (depths.phi[p] == 0) continue;
    StateId prev = p;
    for (std::uint64_t j = 1; j <= cap; ++j) {
      const StateId q = g.add_state(names.take(system.states[p] + "~" + std::to_string(j)));
      prov.push_back({StateOriginKind::chain, 0, 0, p, j, true, {}});
      g.add_transition(prev, a, q);
      if (j <= depths.phi[p]) {
        if (secret.contains(p)) s.insert(q);
        if (nonsecret.contains(p)) ns.insert(q);
      }
      prev = q;
    }
    chain_end[p] = prev;
  }
  for (const auto& t : system.transitions)
    g.add_transition(t.event == a ? chain_end[t.source] : t.source, t.event, t.target);
  g.canonicalize();

  TransformOutput out;
  out.state_provenance.push_back(std::move(prov));
  for (EventId e = 0; e < system.alphabet.size(); ++e) out.event_provenance.push_back({EventOriginKind::original, e});
  out.instance = CsoInstance{std::move(g), std::move(s), std::move(ns)};
  return out;
}

}  // namespace

TransformOutput inso_to_cso_unary(const InsoInstance& inst) {
  require_unary(inst.system, "inso_to_cso_unary");
  require_valid(inst);
  return chain_gadget(inst.system, inst.secret, inst.nonsecret, inst.system.size());
}

TransformOutput kso_to_cso_unary(const KsoInstance& inst) {
  require_unary(inst.system, "kso_to_cso_unary");
  require_valid(inst);
  // Beyond n-1 steps K-step and infinite-step opacity coincide.
  if (inst.k + 1 > inst.system.size()) return inso_to_cso_unary({inst.system, inst.secret, inst.nonsecret});
  return chain_gadget(inst.system, inst.secret, inst.nonsecret, inst.k);
}

}  // namespace opacity

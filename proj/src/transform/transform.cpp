#include "opacity/transform.hpp"

#include "names.hpp"
#include "opacity/error.hpp"

namespace opacity {

namespace {

constexpr std::uint64_t kMaxChain = std::uint64_t{1} << 24;

StateOrigin tag(StateOriginKind kind, StateId q, std::uint32_t automaton = 0, std::uint32_t copy = 0) {
  return {kind, automaton, copy, q, 0, false, {}};
}

StateOrigin fresh_tag(std::string label) { return {StateOriginKind::fresh, 0, 0, 0, 0, false, std::move(label)}; }

StateOrigin chain_tag(std::uint64_t i) { return {StateOriginKind::chain, 0, 0, 0, i, false, {}}; }

std::vector<EventOrigin> original_events(const Alphabet& a) {
  std::vector<EventOrigin> out;
  for (EventId e = 0; e < a.size(); ++e) out.push_back({EventOriginKind::original, e});
  return out;
}

std::vector<StateOrigin> originals(const std::vector<StateId>& kept, std::uint32_t copy = 0) {
  std::vector<StateOrigin> out;
  for (StateId q : kept) out.push_back(tag(StateOriginKind::original, q, 0, copy));
  return out;
}

std::vector<StateOrigin> originals(std::size_t n) {
  std::vector<StateOrigin> out;
  for (StateId q = 0; q < n; ++q) out.push_back(tag(StateOriginKind::original, q));
  return out;
}

StateSet shifted(const StateSet& s, StateId offset) {
  StateSet out;
  s.for_each([&](StateId q) { out.insert(q + offset); });
  return out;
}

// Appends `part` to `into` under a name prefix; returns the state offset.
StateId append(Nfa& into, const Nfa& part, const std::string& prefix, detail::NameBook& names) {
  const auto offset = static_cast<StateId>(into.size());
  for (const auto& s : part.states) into.add_state(names.take(prefix + s));
  for (const auto& t : part.transitions) into.add_transition(t.source + offset, t.event, t.target + offset);
  into.initial |= shifted(part.initial, offset);
  into.marked |= shifted(part.marked, offset);
  return offset;
}

EventId add_fresh_event(Alphabet& alphabet, const char* base, bool observable) {
  return alphabet.add(fresh_name(base, detail::event_names(alphabet.events)), observable);
}

// binary_encode over the first two original observable events plus @, with
// provenance composed back to the transform's input.
TransformOutput encode_at(const Nfa& g, EventId at, const StateSet& secret, const StateSet& nonsecret,
                          const std::vector<StateOrigin>& state_prov, const std::vector<EventOrigin>& event_prov) {
  std::vector<EventId> gamma;
  for (EventId e : g.alphabet.observable())
    if (e != at && gamma.size() < 2) gamma.push_back(e);
  gamma.push_back(at);
  TransformOutput enc = binary_encode(g, make_encoding_plan(g.alphabet, gamma), secret, nonsecret);
  for (auto& o : enc.state_provenance.front())
    if (o.kind == StateOriginKind::original) o = state_prov[o.state];
  for (auto& o : enc.event_provenance)
    if (o.kind == EventOriginKind::original) o = event_prov[o.event];
  return enc;
}

void require_events_for_encoding(const Alphabet& sigma, const char* what) {
  const std::size_t obs = sigma.observable_count();
  if (obs == 1)
    throw Error(ErrorCode::unary, std::string(what) +
                                      ": a single observable event cannot be preserved (unary case; use the "
                                      "unary construction or drop --preserve-events)");
  if (obs == 0)
    throw Error(ErrorCode::too_few_events, std::string(what) + ": no observable events to encode @ with");
}

// G, G+, G- with @-edges from the secret (resp. non-secret) states into the
// plus (resp. minus) copy.
struct ThreeCopies {
  Nfa g;
  std::vector<StateOrigin> prov;
  EventId at;
  std::size_t n;
};

ThreeCopies three_copies(const Nfa& system, const StateSet& secret, const StateSet& nonsecret) {
  ThreeCopies c;
  c.n = system.size();
  const auto n = static_cast<StateId>(c.n);
  c.g.alphabet = system.alphabet;
  c.at = add_fresh_event(c.g.alphabet, "@", true);
  detail::NameBook names;
  for (StateId q = 0; q < n; ++q) {
    c.g.add_state(names.take(system.states[q]));
    c.prov.push_back(tag(StateOriginKind::original, q));
  }
  for (StateId q = 0; q < n; ++q) {
    c.g.add_state(names.take(system.states[q] + "+"));
    c.prov.push_back(tag(StateOriginKind::plus, q));
  }
  for (StateId q = 0; q < n; ++q) {
    c.g.add_state(names.take(system.states[q] + "-"));
    c.prov.push_back(tag(StateOriginKind::minus, q));
  }
  for (const auto& t : system.transitions)
    for (StateId copy = 0; copy < 3; ++copy) c.g.add_transition(t.source + copy * n, t.event, t.target + copy * n);
  // A state in both sets would get two @-successors. Its minus image shadows
  // the plus image step for step, so the plus edge is dropped.
  secret.for_each([&](StateId q) {
    if (!nonsecret.contains(q)) c.g.add_transition(q, c.at, q + n);
  });
  nonsecret.for_each([&](StateId q) { c.g.add_transition(q, c.at, q + 2 * n); });
  c.g.initial = system.initial;
  c.g.marked = system.marked;
  return c;
}

}  // namespace

NfaTransform single_initial(const Nfa& nfa) {
  if (nfa.initial.empty()) throw Error(ErrorCode::empty_initial, "automaton has no initial state");
  NfaTransform r;
  r.nfa = nfa;
  r.state_provenance = originals(nfa.size());
  r.event_provenance = original_events(nfa.alphabet);
  if (nfa.initial.count() == 1) {
    r.no_op = true;
    return r;
  }
  const StateId q0 = r.nfa.add_state(fresh_name("init", nfa.states));
  r.state_provenance.push_back(fresh_tag("init"));
  nfa.initial.for_each([&](StateId q) {
    const EventId u = add_fresh_event(r.nfa.alphabet, "u", false);
    r.event_provenance.push_back({EventOriginKind::fresh_u, 0});
    r.nfa.add_transition(q0, u, q);
  });
  r.nfa.initial = StateSet(r.nfa.size(), {q0});
  r.nfa.canonicalize();
  return r;
}

TransformOutput lbo_to_iso(const LboInstance& inst, TransformOptions opts) {
  require_valid(inst);
  if (opts.preserve_events) require_events_for_encoding(inst.alphabet(), "lbo_to_iso");

  Nfa g;
  g.alphabet = inst.alphabet();
  const EventId at = add_fresh_event(g.alphabet, "@", true);
  std::vector<StateOrigin> prov;
  detail::NameBook names;

  const StateId off_s = append(g, inst.secret_aut, "S/", names);
  for (StateId q = 0; q < inst.secret_aut.size(); ++q) prov.push_back(tag(StateOriginKind::original, q, 0));
  const StateId x_s = g.add_state(names.take("x_S"));
  prov.push_back(fresh_tag("x_S"));
  const StateId off_ns = append(g, inst.nonsecret_aut, "NS/", names);
  for (StateId q = 0; q < inst.nonsecret_aut.size(); ++q) prov.push_back(tag(StateOriginKind::original, q, 1));
  const StateId x_ns = g.add_state(names.take("x_NS"));
  prov.push_back(fresh_tag("x_NS"));

  inst.secret_aut.marked.for_each([&](StateId q) { g.add_transition(q + off_s, at, x_s); });
  inst.nonsecret_aut.marked.for_each([&](StateId q) { g.add_transition(q + off_ns, at, x_ns); });
  g.marked = StateSet::full(g.size());
  g.canonicalize();

  const StateSet secret = shifted(inst.secret_aut.initial, off_s);
  const StateSet nonsecret = shifted(inst.nonsecret_aut.initial, off_ns);
  auto events = original_events(inst.alphabet());
  events.push_back({EventOriginKind::fresh_at, 0});

  TransformOutput out;
  if (opts.preserve_events) {
    out = encode_at(g, at, secret, nonsecret, prov, events);
    auto& cso = std::get<CsoInstance>(out.instance);
    cso.system.marked = StateSet::full(cso.system.size());
    out.instance = IsoInstance{std::move(cso.system), secret, nonsecret};
    return out;
  }
  out.instance = IsoInstance{std::move(g), secret, nonsecret};
  out.state_provenance.push_back(std::move(prov));
  out.event_provenance = std::move(events);
  return out;
}

TransformOutput cso_to_lbo(const CsoInstance& inst) {
  require_valid(inst);
  Nfa s = inst.system, ns = inst.system;
  s.marked = inst.secret;
  ns.marked = inst.nonsecret;
  auto ts = trim_keep(s);
  auto tn = trim_keep(ns);
  TransformOutput out;
  out.state_provenance = {originals(ts.kept), originals(tn.kept)};
  out.event_provenance = original_events(inst.system.alphabet);
  out.instance = LboInstance{std::move(ts.nfa), std::move(tn.nfa)};
  return out;
}

TransformOutput lbo_to_cso(const LboInstance& inst) {
  require_valid(inst);
  Nfa g;
  g.alphabet = inst.alphabet();
  std::vector<StateOrigin> prov;
  detail::NameBook names;
  const StateId off_s = append(g, inst.secret_aut, "S/", names);
  for (StateId q = 0; q < inst.secret_aut.size(); ++q) prov.push_back(tag(StateOriginKind::original, q, 0));
  const StateId off_ns = append(g, inst.nonsecret_aut, "NS/", names);
  for (StateId q = 0; q < inst.nonsecret_aut.size(); ++q) prov.push_back(tag(StateOriginKind::original, q, 1));
  const StateSet secret = shifted(inst.secret_aut.marked, off_s);
  const StateSet nonsecret = shifted(inst.nonsecret_aut.marked, off_ns);
  g.marked = StateSet(g.size());
  g.canonicalize();

  TransformOutput out;
  out.event_provenance = original_events(inst.alphabet());
  if (!g.initial.empty()) {
    NfaTransform one = single_initial(g);
    for (auto& o : one.state_provenance)
      if (o.kind == StateOriginKind::original) o = prov[o.state];
    prov = std::move(one.state_provenance);
    out.event_provenance = std::move(one.event_provenance);
    g = std::move(one.nfa);
  }
  out.state_provenance.push_back(std::move(prov));
  out.instance = CsoInstance{std::move(g), secret, nonsecret};
  return out;
}

TransformOutput iso_to_lbo(const IsoInstance& inst) {
  require_valid(inst);
  Nfa s = inst.system, ns = inst.system;
  s.initial = inst.secret_initial;
  ns.initial = inst.nonsecret_initial;
  s.marked = ns.marked = StateSet::full(inst.system.size());
  auto ts = trim_keep(s);
  auto tn = trim_keep(ns);
  TransformOutput out;
  out.state_provenance = {originals(ts.kept), originals(tn.kept)};
  out.event_provenance = original_events(inst.system.alphabet);
  out.instance = LboInstance{std::move(ts.nfa), std::move(tn.nfa)};
  return out;
}

TransformOutput iso_to_ifo(const IsoInstance& inst) {
  require_valid(inst);
  const auto n = static_cast<StateId>(inst.system.size());
  IfoInstance ifo{inst.system, {}, {}};
  inst.secret_initial.for_each([&](StateId q0) {
    for (StateId qf = 0; qf < n; ++qf) ifo.secret_pairs.emplace_back(q0, qf);
  });
  inst.nonsecret_initial.for_each([&](StateId q0) {
    for (StateId qf = 0; qf < n; ++qf) ifo.nonsecret_pairs.emplace_back(q0, qf);
  });
  TransformOutput out;
  out.state_provenance = {originals(n)};
  out.event_provenance = original_events(inst.system.alphabet);
  out.instance = std::move(ifo);
  return out;
}

TransformOutput cso_to_ifo(const CsoInstance& inst) {
  require_valid(inst);
  IfoInstance ifo{inst.system, {}, {}};
  inst.system.initial.for_each([&](StateId q0) {
    inst.secret.for_each([&](StateId qf) { ifo.secret_pairs.emplace_back(q0, qf); });
    inst.nonsecret.for_each([&](StateId qf) { ifo.nonsecret_pairs.emplace_back(q0, qf); });
  });
  TransformOutput out;
  out.state_provenance = {originals(inst.system.size())};
  out.event_provenance = original_events(inst.system.alphabet);
  out.instance = std::move(ifo);
  return out;
}

TransformOutput ifo_to_lbo(const IfoInstance& inst) {
  require_valid(inst);
  auto side = [&](const std::vector<StatePair>& pairs, std::vector<StateOrigin>& prov) {
    Nfa u;
    u.alphabet = inst.system.alphabet;
    detail::NameBook names;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      Nfa copy = inst.system;
      copy.initial = StateSet(copy.size(), {pairs[c].first});
      copy.marked = StateSet(copy.size(), {pairs[c].second});
      auto t = trim_keep(copy);
      append(u, t.nfa, "c" + std::to_string(c) + "/", names);
      for (StateId q : t.kept) prov.push_back(tag(StateOriginKind::original, q, 0, static_cast<std::uint32_t>(c)));
    }
    u.canonicalize();
    return u;
  };
  TransformOutput out;
  out.state_provenance.resize(2);
  Nfa s = side(inst.secret_pairs, out.state_provenance[0]);
  Nfa ns = side(inst.nonsecret_pairs, out.state_provenance[1]);
  out.event_provenance = original_events(inst.system.alphabet);
  out.instance = LboInstance{std::move(s), std::move(ns)};
  return out;
}

TransformOutput cso_to_inso(const CsoInstance& inst) {
  require_valid(inst);
  Nfa g = inst.system;
  auto prov = originals(g.size());
  auto events = original_events(g.alphabet);
  const std::size_t sigma = g.alphabet.size();
  const EventId u = add_fresh_event(g.alphabet, "u", false);
  events.push_back({EventOriginKind::fresh_u, 0});
  const StateId star = g.add_state(fresh_name("q*", g.states));
  prov.push_back(fresh_tag("q*"));
  inst.nonsecret.for_each([&](StateId q) { g.add_transition(q, u, star); });
  for (EventId a = 0; a < sigma; ++a) g.add_transition(star, a, star);
  g.canonicalize();

  TransformOutput out;
  out.state_provenance.push_back(std::move(prov));
  out.event_provenance = std::move(events);
  out.instance = InsoInstance{std::move(g), inst.secret, inst.nonsecret};
  return out;
}

TransformOutput inso_to_cso(const InsoInstance& inst, TransformOptions opts) {
  require_valid(inst);
  if (opts.preserve_events) require_events_for_encoding(inst.system.alphabet, "inso_to_cso");
  ThreeCopies c = three_copies(inst.system, inst.secret, inst.nonsecret);
  c.g.canonicalize();
  const auto n = static_cast<StateId>(c.n);
  StateSet secret, nonsecret;
  for (StateId q = 0; q < n; ++q) {
    secret.insert(q + n);
    nonsecret.insert(q + 2 * n);
  }
  auto events = original_events(inst.system.alphabet);
  events.push_back({EventOriginKind::fresh_at, 0});

  if (opts.preserve_events) return encode_at(c.g, c.at, secret, nonsecret, c.prov, events);
  TransformOutput out;
  out.state_provenance.push_back(std::move(c.prov));
  out.event_provenance = std::move(events);
  out.instance = CsoInstance{std::move(c.g), secret, nonsecret};
  return out;
}

TransformOutput cso_to_kso(const CsoInstance& inst, std::uint64_t k) {
  require_valid(inst);
  if (k >= kMaxChain) throw Error(ErrorCode::invalid_params, "K too large for an explicit chain");
  Nfa g = inst.system;
  auto prov = originals(g.size());
  auto events = original_events(g.alphabet);
  const auto observable = g.alphabet.observable();
  const EventId u = add_fresh_event(g.alphabet, "u", false);
  events.push_back({EventOriginKind::fresh_u, 0});

  detail::NameBook names(g.states);
  const auto first = static_cast<StateId>(g.size());
  for (std::uint64_t i = 0; i <= k; ++i) {
    g.add_state(names.take("q" + std::to_string(i) + "*"));
    prov.push_back(chain_tag(i));
  }
  inst.nonsecret.for_each([&](StateId q) { g.add_transition(q, u, first); });
  for (std::uint64_t i = 0; i < k; ++i)
    for (EventId a : observable)
      g.add_transition(first + static_cast<StateId>(i), a, first + static_cast<StateId>(i + 1));
  g.canonicalize();

  TransformOutput out;
  out.state_provenance.push_back(std::move(prov));
  out.event_provenance = std::move(events);
  out.instance = KsoInstance{std::move(g), inst.secret, inst.nonsecret, k};
  return out;
}

TransformOutput kso_to_cso(const KsoInstance& inst, TransformOptions opts) {
  require_valid(inst);
  if (inst.k >= kMaxChain) throw Error(ErrorCode::invalid_params, "K too large for an explicit chain");
  if (opts.preserve_events) require_events_for_encoding(inst.system.alphabet, "kso_to_cso");
  ThreeCopies c = three_copies(inst.system, inst.secret, inst.nonsecret);
  const auto n = static_cast<StateId>(c.n);
  const auto observable = inst.system.alphabet.observable();
  const EventId u = add_fresh_event(c.g.alphabet, "u", false);

  detail::NameBook names(c.g.states);
  const auto first = static_cast<StateId>(c.g.size());
  for (std::uint64_t i = 0; i <= inst.k + 1; ++i) {
    c.g.add_state(names.take("q" + std::to_string(i) + "*"));
    c.prov.push_back(chain_tag(i));
  }
  const StateId last = first + static_cast<StateId>(inst.k + 1);
  for (StateId q = 0; q < n; ++q) c.g.add_transition(q + 2 * n, u, first);
  for (std::uint64_t i = 0; i <= inst.k; ++i)
    for (EventId a : observable)
      c.g.add_transition(first + static_cast<StateId>(i), a, first + static_cast<StateId>(i + 1));
  for (EventId a : observable) c.g.add_transition(last, a, last);
  c.g.canonicalize();

  StateSet secret, nonsecret;
  for (StateId q = 0; q < n; ++q) secret.insert(q + n);
  nonsecret.insert(first);
  nonsecret.insert(last);
  auto events = original_events(inst.system.alphabet);
  events.push_back({EventOriginKind::fresh_at, 0});
  events.push_back({EventOriginKind::fresh_u, 0});

  if (opts.preserve_events) return encode_at(c.g, c.at, secret, nonsecret, c.prov, events);
  TransformOutput out;
  out.state_provenance.push_back(std::move(c.prov));
  out.event_provenance = std::move(events);
  out.instance = CsoInstance{std::move(c.g), secret, nonsecret};
  return out;
}

}  // namespace opacity

#include <map>

#include "names.hpp"
#include "opacity/error.hpp"
#include "opacity/transform.hpp"

namespace opacity {

EncodingPlan make_encoding_plan(const Alphabet& alphabet, std::vector<EventId> events) {
  if (events.size() < 3)
    throw Error(ErrorCode::too_few_events,
                "binary encoding needs at least 3 events, got " + std::to_string(events.size()));
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!alphabet.is_observable(events[i]))
      throw Error(ErrorCode::unknown_event, "encoded events must be observable events of the alphabet");
    for (std::size_t j = 0; j < i; ++j)
      if (events[j] == events[i]) throw Error(ErrorCode::invalid_params, "event listed twice in encoding plan");
  }
  EncodingPlan plan;
  plan.encoded_events = std::move(events);
  while ((std::size_t{1} << plan.code_length) < plan.encoded_events.size()) ++plan.code_length;
  for (std::size_t i = 0; i < plan.encoded_events.size(); ++i) {
    std::string bits(plan.code_length, '0');
    for (std::size_t b = 0; b < plan.code_length; ++b)
      if ((i >> (plan.code_length - 1 - b)) & 1) bits[b] = '1';
    plan.code.push_back(std::move(bits));
  }
  return plan;
}

TransformOutput binary_encode(const Nfa& nfa, const EncodingPlan& plan, const StateSet& secret,
                              const StateSet& nonsecret) {
  const Alphabet& sigma = nfa.alphabet;
  if (plan.encoded_events.size() < 3)
    throw Error(ErrorCode::too_few_events, "binary encoding needs at least 3 events");
  if (plan.code.size() != plan.encoded_events.size())
    throw Error(ErrorCode::invalid_params, "encoding plan has no code for some event");
  for (EventId e : plan.encoded_events)
    if (!sigma.is_observable(e)) throw Error(ErrorCode::unknown_event, "encoded events must be observable");
  for (const auto& c : plan.code)
    if (c.size() != plan.code_length || c.find_first_not_of("01") != std::string::npos)
      throw Error(ErrorCode::invalid_params, "malformed code word '" + c + "'");
  for (std::size_t i = 0; i < plan.code.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (plan.code[i] == plan.code[j]) throw Error(ErrorCode::invalid_params, "code is not injective");
  if (sigma.find("0") || sigma.find("1"))
    throw Error(ErrorCode::name_clash, "events named 0 or 1 already exist");

  TransformOutput out;
  std::vector<std::int64_t> code_of(sigma.size(), -1);
  for (std::size_t i = 0; i < plan.encoded_events.size(); ++i) code_of[plan.encoded_events[i]] = static_cast<std::int64_t>(i);

  Nfa g;
  std::vector<EventId> remap(sigma.size(), 0);
  for (EventId e = 0; e < sigma.size(); ++e) {
    if (code_of[e] >= 0) continue;
    remap[e] = g.alphabet.add(sigma.events[e].name, sigma.events[e].observable);
    out.event_provenance.push_back({EventOriginKind::original, e});
  }
  const EventId bit[2] = {g.alphabet.add("0", true), g.alphabet.add("1", true)};
  out.event_provenance.push_back({EventOriginKind::bit, 0});
  out.event_provenance.push_back({EventOriginKind::bit, 1});

  std::vector<StateOrigin> prov;
  g.states = nfa.states;
  for (StateId q = 0; q < nfa.size(); ++q) prov.push_back({StateOriginKind::original, 0, 0, q, 0, false, {}});

  detail::NameBook names(nfa.states);
  std::map<std::pair<StateId, std::string>, StateId> intermediate;
  auto via = [&](StateId p, const std::string& prefix) {
    auto [it, inserted] = intermediate.try_emplace({p, prefix}, 0);
    if (inserted) {
      it->second = g.add_state(names.take(nfa.states[p] + "." + prefix));
      prov.push_back({StateOriginKind::encoding, 0, 0, p, 0, false, prefix});
    }
    return it->second;
  };

  for (const auto& t : nfa.transitions) {
    if (code_of[t.event] < 0) {
      g.add_transition(t.source, remap[t.event], t.target);
      continue;
    }
    const std::string& word = plan.code[static_cast<std::size_t>(code_of[t.event])];
    StateId at = t.source;
    for (std::size_t j = 1; j < word.size(); ++j) {
      const StateId next = via(t.source, word.substr(0, j));
      g.add_transition(at, bit[word[j - 1] - '0'], next);
      at = next;
    }
    g.add_transition(at, bit[word.back() - '0'], t.target);
  }
  g.initial = nfa.initial;
  g.marked = nfa.marked;
  g.canonicalize();

  out.state_provenance.push_back(std::move(prov));
  out.instance = CsoInstance{std::move(g), secret, nonsecret};
  out.encoded = true;
  return out;
}

}  // namespace opacity

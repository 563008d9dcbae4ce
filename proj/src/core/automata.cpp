#include "opacity/automata.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_map>

#include "opacity/error.hpp"

namespace opacity {

std::string format_observation(const Alphabet& alphabet, const Observation& obs) {
  std::string out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (i) out += ' ';
    out += obs[i] < alphabet.size() ? alphabet.name(obs[i]) : "#" + std::to_string(obs[i]);
  }
  return out;
}

// ---------------------------------------------------------------- Stepper

Stepper::Stepper(const Nfa& nfa)
    : n_(nfa.size()), stride_((nfa.size() + 63) / 64), alphabet_(nfa.alphabet) {
  const Adjacency adj(nfa);
  const auto observable = alphabet_.observable();
  const auto unobservable = alphabet_.unobservable();

  slot_.assign(alphabet_.size(), -1);
  for (std::size_t i = 0; i < observable.size(); ++i) slot_[observable[i]] = static_cast<std::int32_t>(i);

  closure_rows_.reserve(n_);
  std::vector<StateId> stack;
  for (StateId q = 0; q < n_; ++q) {
    StateSet row(n_);
    row.insert(q);
    stack.assign(1, q);
    while (!stack.empty()) {
      const StateId p = stack.back();
      stack.pop_back();
      for (EventId u : unobservable)
        for (StateId r : adj.successors(p, u))
          if (!row.contains(r)) {
            row.insert(r);
            stack.push_back(r);
          }
    }
    row.words_for(n_);
    closure_rows_.push_back(std::move(row));
  }

  direct_rows_.assign(observable.size() * n_ * stride_, 0);
  const auto& k = bits::active();
  for (const auto& t : nfa.transitions) {
    const auto s = slot_[t.event];
    if (s < 0) continue;
    bits::Word* row = direct_rows_.data() + (static_cast<std::size_t>(s) * n_ + t.source) * stride_;
    k.or_into(row, closure_rows_[t.target].words().data(), stride_);
  }

  initial_ = closure(nfa.initial);
  initial_.words_for(n_);
  order_ = alphabet_.observable_by_name();
}

std::size_t Stepper::slot_of(EventId e) const {
  if (e >= slot_.size() || slot_[e] < 0)
    throw Error(ErrorCode::unknown_event,
                "event " + (e < alphabet_.size() ? "'" + alphabet_.name(e) + "'" : "#" + std::to_string(e)) +
                    " is not an observable event");
  return static_cast<std::size_t>(slot_[e]);
}

StateSet Stepper::closure(const StateSet& s) const {
  StateSet out(n_);
  s.for_each([&](StateId q) {
    if (q < n_) out |= closure_rows_[q];
  });
  return out;
}

StateSet Stepper::step_closed(const StateSet& s, EventId e) const {
  const std::size_t slot = slot_of(e);
  StateSet out(n_);
  auto words = out.words_for(n_);
  const auto& k = bits::active();
  const bits::Word* base = direct_rows_.data() + slot * n_ * stride_;
  s.for_each([&](StateId q) {
    if (q < n_) k.or_into(words.data(), base + static_cast<std::size_t>(q) * stride_, stride_);
  });
  return out;
}

StateSet Stepper::step(const StateSet& s, EventId e) const {
  slot_of(e);
  return step_closed(closure(s), e);
}

// ------------------------------------------------------------ SubsetGraph

std::size_t SubsetGraph::transition_count() const {
  std::size_t total = 0;
  for (const auto& row : next)
    total += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](auto v) { return v != kDead; }));
  return total;
}

Observation SubsetGraph::path_to(std::size_t state) const {
  Observation out;
  for (auto s = static_cast<std::int32_t>(state); parent[s] >= 0; s = parent[s])
    out.push_back(events[parent_event[s]]);
  std::reverse(out.begin(), out.end());
  return out;
}

SubsetGraph explore_subsets(const Stepper& stepper) {
  SubsetGraph g;
  g.events = stepper.observable_order();
  if (stepper.initial_estimate().empty()) return g;

  std::unordered_map<StateSet, std::int32_t, StateSetHash> index;
  auto intern = [&](StateSet s, std::int32_t parent, std::uint32_t via) {
    auto [it, inserted] = index.try_emplace(s, static_cast<std::int32_t>(g.subsets.size()));
    if (inserted) {
      g.subsets.push_back(std::move(s));
      g.parent.push_back(parent);
      g.parent_event.push_back(via);
    }
    return it->second;
  };

  intern(stepper.initial_estimate(), -1, 0);
  for (std::size_t i = 0; i < g.subsets.size(); ++i) {
    std::vector<std::int32_t> row(g.events.size(), SubsetGraph::kDead);
    for (std::size_t e = 0; e < g.events.size(); ++e) {
      StateSet succ = stepper.step_closed(g.subsets[i], g.events[e]);
      if (!succ.empty())
        row[e] = intern(std::move(succ), static_cast<std::int32_t>(i), static_cast<std::uint32_t>(e));
    }
    g.next.push_back(std::move(row));
  }
  return g;
}

// ------------------------------------------------------- free operations

StateSet unobservable_closure(const Nfa& nfa, const StateSet& s) { return Stepper(nfa).closure(s); }

StateSet step(const Nfa& nfa, const StateSet& s, EventId e) { return Stepper(nfa).step(s, e); }

StateSet estimate(const Nfa& nfa, const Observation& obs) {
  const Stepper stepper(nfa);
  StateSet current = stepper.initial_estimate();
  for (EventId e : obs) current = stepper.step_closed(current, e);
  return current;
}

namespace {

// Original event id -> id within alphabet.observable_part().
std::vector<std::int32_t> observable_renumbering(const Alphabet& alphabet) {
  std::vector<std::int32_t> out(alphabet.size(), -1);
  std::int32_t next = 0;
  for (std::size_t e = 0; e < alphabet.size(); ++e)
    if (alphabet.events[e].observable) out[e] = next++;
  return out;
}

}  // namespace

Nfa project(const Nfa& nfa) {
  const Stepper stepper(nfa);
  const auto renumber = observable_renumbering(nfa.alphabet);
  Nfa out;
  out.states = nfa.states;
  out.alphabet = nfa.alphabet.observable_part();
  for (StateId p = 0; p < nfa.size(); ++p)
    for (EventId e : nfa.alphabet.observable()) {
      const StateSet succ = stepper.step_closed(stepper.closure_of(p), e);
      succ.for_each([&](StateId q) { out.add_transition(p, static_cast<EventId>(renumber[e]), q); });
    }
  out.initial = stepper.initial_estimate();
  out.marked = nfa.marked;
  out.canonicalize();
  return out;
}

Nfa observer_from(const Nfa& nfa, const SubsetGraph& g) {
  const auto renumber = observable_renumbering(nfa.alphabet);
  Nfa out;
  out.alphabet = nfa.alphabet.observable_part();
  out.initial = StateSet(g.subsets.size());
  out.marked = StateSet(g.subsets.size());
  for (std::size_t i = 0; i < g.subsets.size(); ++i) {
    out.add_state(format_set(g.subsets[i], nfa.states));
    if (g.subsets[i].intersects(nfa.marked)) out.marked.insert(static_cast<StateId>(i));
    for (std::size_t e = 0; e < g.events.size(); ++e)
      if (g.next[i][e] != SubsetGraph::kDead)
        out.add_transition(static_cast<StateId>(i), static_cast<EventId>(renumber[g.events[e]]),
                           static_cast<StateId>(g.next[i][e]));
  }
  if (!g.subsets.empty()) out.initial.insert(0);
  out.canonicalize();
  return out;
}

Nfa observer(const Nfa& nfa) {
  const Stepper stepper(nfa);
  return observer_from(nfa, explore_subsets(stepper));
}

Nfa complete_and_complement(const Nfa& det, const StateSet& marking) {
  if (!is_deterministic(det) || det.initial.count() > 1)
    throw Error(ErrorCode::not_deterministic, "complete_and_complement requires a deterministic automaton");

  const Adjacency adj(det);
  const auto observable = det.alphabet.observable();
  std::vector<std::pair<StateId, EventId>> missing;
  for (StateId q = 0; q < det.size(); ++q)
    for (EventId e : observable)
      if (adj.successors(q, e).empty()) missing.emplace_back(q, e);

  Nfa out = det;
  const bool need_sink = !missing.empty() || det.initial.empty();
  std::optional<StateId> sink;
  if (need_sink) {
    sink = out.add_state(fresh_name("{}", out.states));
    for (auto [q, e] : missing) out.add_transition(q, e, *sink);
    for (EventId e : observable) out.add_transition(*sink, e, *sink);
    if (det.initial.empty()) out.initial.insert(*sink);
  }
  out.marked = StateSet(out.size());
  for (StateId q = 0; q < out.size(); ++q)
    if (!marking.contains(q) || q == sink) out.marked.insert(q);
  out.canonicalize();
  return out;
}

Nfa product(const Nfa& a, const Nfa& b) {
  auto names = [](const Alphabet& al) {
    std::vector<std::string> out;
    for (const auto& e : al.events) out.push_back(e.name);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (!a.alphabet.unobservable().empty() || !b.alphabet.unobservable().empty())
    throw Error(ErrorCode::alphabet_mismatch, "product requires automata without unobservable events");
  if (names(a.alphabet) != names(b.alphabet))
    throw Error(ErrorCode::alphabet_mismatch, "product requires the same observable alphabet");

  std::vector<EventId> to_b(a.alphabet.size());
  for (EventId e = 0; e < a.alphabet.size(); ++e) to_b[e] = *b.alphabet.find(a.alphabet.name(e));

  const Adjacency adj_a(a), adj_b(b);
  Nfa out;
  out.alphabet = a.alphabet;
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId p, StateId q) {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p, q);
      out.add_state("(" + a.states[p] + "," + b.states[q] + ")");
    }
    return it->second;
  };

  a.initial.for_each([&](StateId p) {
    b.initial.for_each([&](StateId q) {
      if (p < a.size() && q < b.size()) out.initial.insert(intern(p, q));
    });
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (EventId e = 0; e < a.alphabet.size(); ++e)
      for (StateId p2 : adj_a.successors(p, e))
        for (StateId q2 : adj_b.successors(q, to_b[e]))
          out.add_transition(static_cast<StateId>(i), e, intern(p2, q2));
  }
  out.marked = StateSet(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (a.marked.contains(pairs[i].first) && b.marked.contains(pairs[i].second))
      out.marked.insert(static_cast<StateId>(i));
  out.canonicalize();
  return out;
}

StateSet reachable_from(const Nfa& nfa, const StateSet& from) {
  const Adjacency adj(nfa);
  StateSet seen(nfa.size());
  std::vector<StateId> stack;
  from.for_each([&](StateId q) {
    if (q < nfa.size() && !seen.contains(q)) {
      seen.insert(q);
      stack.push_back(q);
    }
  });
  while (!stack.empty()) {
    const StateId p = stack.back();
    stack.pop_back();
    for (EventId e = 0; e < nfa.alphabet.size(); ++e)
      for (StateId r : adj.successors(p, e))
        if (!seen.contains(r)) {
          seen.insert(r);
          stack.push_back(r);
        }
  }
  return seen;
}

StateSet coreachable_to(const Nfa& nfa, const StateSet& to) {
  std::vector<std::vector<StateId>> preds(nfa.size());
  for (const auto& t : nfa.transitions)
    if (t.source < nfa.size() && t.target < nfa.size()) preds[t.target].push_back(t.source);
  StateSet seen(nfa.size());
  std::vector<StateId> stack;
  to.for_each([&](StateId q) {
    if (q < nfa.size() && !seen.contains(q)) {
      seen.insert(q);
      stack.push_back(q);
    }
  });
  while (!stack.empty()) {
    const StateId p = stack.back();
    stack.pop_back();
    for (StateId r : preds[p])
      if (!seen.contains(r)) {
        seen.insert(r);
        stack.push_back(r);
      }
  }
  return seen;
}

Restriction restrict_to(const Nfa& nfa, const StateSet& keep) {
  Restriction r;
  std::vector<std::int64_t> renumber(nfa.size(), -1);
  r.nfa.alphabet = nfa.alphabet;
  for (StateId q = 0; q < nfa.size(); ++q)
    if (keep.contains(q)) {
      renumber[q] = static_cast<std::int64_t>(r.kept.size());
      r.kept.push_back(q);
      r.nfa.add_state(nfa.states[q]);
    }
  r.nfa.initial = StateSet(r.kept.size());
  r.nfa.marked = StateSet(r.kept.size());
  for (std::size_t i = 0; i < r.kept.size(); ++i) {
    if (nfa.initial.contains(r.kept[i])) r.nfa.initial.insert(static_cast<StateId>(i));
    if (nfa.marked.contains(r.kept[i])) r.nfa.marked.insert(static_cast<StateId>(i));
  }
  for (const auto& t : nfa.transitions)
    if (t.source < nfa.size() && t.target < nfa.size() && renumber[t.source] >= 0 && renumber[t.target] >= 0)
      r.nfa.add_transition(static_cast<StateId>(renumber[t.source]), t.event,
                           static_cast<StateId>(renumber[t.target]));
  r.nfa.canonicalize();
  return r;
}

Restriction trim_keep(const Nfa& nfa) {
  return restrict_to(nfa, reachable_from(nfa, nfa.initial) & coreachable_to(nfa, nfa.marked));
}

Nfa trim(const Nfa& nfa) { return trim_keep(nfa).nfa; }

std::optional<std::vector<EventId>> shortest_accepted(const Nfa& nfa) {
  std::vector<EventId> order(nfa.alphabet.size());
  for (EventId e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(),
                   [&](EventId x, EventId y) { return nfa.alphabet.name(x) < nfa.alphabet.name(y); });

  // Layered search. Nodes of a layer carry the rank of their (least) word
  // within the layer; equal words share a rank, so sorting candidates by
  // (parent rank, event) enumerates the next layer in word order.
  const Adjacency adj(nfa);
  std::vector<std::int64_t> parent(nfa.size(), -2);  // -2 unseen, -1 root
  std::vector<EventId> via(nfa.size(), 0);
  auto path = [&](StateId q) {
    std::vector<EventId> out;
    for (auto s = static_cast<std::int64_t>(q); parent[s] >= 0; s = parent[s]) out.push_back(via[s]);
    std::reverse(out.begin(), out.end());
    return out;
  };

  struct Ranked {
    StateId state;
    std::size_t rank;
  };
  std::vector<Ranked> layer;
  std::optional<StateId> hit;
  nfa.initial.for_each([&](StateId q) {
    if (q >= nfa.size()) return;
    parent[q] = -1;
    layer.push_back({q, 0});
    if (!hit && nfa.marked.contains(q)) hit = q;
  });
  if (hit) return path(*hit);

  struct Candidate {
    std::size_t rank;
    std::size_t event_index;
    StateId from;
    StateId to;
  };
  std::vector<Candidate> candidates;
  while (!layer.empty()) {
    candidates.clear();
    for (const auto& node : layer)
      for (std::size_t ei = 0; ei < order.size(); ++ei)
        for (StateId r : adj.successors(node.state, order[ei]))
          if (parent[r] == -2) candidates.push_back({node.rank, ei, node.state, r});
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.rank, x.event_index) < std::tie(y.rank, y.event_index);
    });
    std::vector<Ranked> next;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      if (i > 0 && std::tie(c.rank, c.event_index) != std::tie(candidates[i - 1].rank, candidates[i - 1].event_index))
        ++rank;
      if (parent[c.to] != -2) continue;
      parent[c.to] = c.from;
      via[c.to] = order[c.event_index];
      if (nfa.marked.contains(c.to)) return path(c.to);
      next.push_back({c.to, rank});
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace opacity

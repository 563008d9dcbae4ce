#include "opacity/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "opacity/error.hpp"

// Deliberately standalone: nothing here goes through Stepper, the subset
// graph or the projected automaton.

namespace opacity {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kInf / b) return kInf;
  return a * b;
}

std::uint64_t pow2(std::uint64_t e) { return e >= 64 ? kInf : std::uint64_t{1} << e; }

std::uint64_t minus_one(std::uint64_t v) { return v == kInf ? kInf : (v == 0 ? 0 : v - 1); }

// Strings over the raw alphabet, one event at a time.
class Raw {
 public:
  explicit Raw(const Nfa& g) : g_(g), succ_(g.size() * g.alphabet.size()) {
    for (const auto& t : g.transitions) succ_[t.source * g.alphabet.size() + t.event].push_back(t.target);
    for (EventId e = 0; e < g.alphabet.size(); ++e)
      if (!g.alphabet.events[e].observable) unobservable_.push_back(e);
  }

  StateSet delta(const StateSet& s, EventId e) const {
    StateSet out;
    s.for_each([&](StateId q) {
      for (StateId r : succ_[q * g_.alphabet.size() + e]) out.insert(r);
    });
    return out;
  }

  // States reached from s by some unobservable string of length <= n-1.
  StateSet gap(const StateSet& s) const {
    StateSet all = s, layer = s;
    for (std::size_t len = 1; len < g_.size() && !layer.empty(); ++len) {
      StateSet next;
      for (EventId u : unobservable_) next |= delta(layer, u);
      layer = next;
      all |= layer;
    }
    return all;
  }

  StateSet step(const StateSet& s, EventId e) const { return gap(delta(gap(s), e)); }

 private:
  const Nfa& g_;
  std::vector<std::vector<StateId>> succ_;
  std::vector<EventId> unobservable_;
};

std::vector<EventId> observable_in_name_order(const Alphabet& a) {
  std::vector<EventId> out;
  for (EventId e = 0; e < a.size(); ++e)
    if (a.events[e].observable) out.push_back(e);
  std::stable_sort(out.begin(), out.end(), [&](EventId x, EventId y) { return a.events[x].name < a.events[y].name; });
  return out;
}

// Breadth-first walk over observations; a configuration is a tuple of state
// sets, component i evolving under raws[i]. A configuration already met at an
// earlier observation has the same future and is not expanded again.
using Config = std::vector<StateSet>;

struct WalkResult {
  bool found = false;
  bool truncated = false;
};

WalkResult walk(const std::vector<const Raw*>& raws, const std::vector<EventId>& events, Config start,
                std::uint64_t bound, const std::function<bool(const Config&, const Observation&)>& visit) {
  WalkResult r;
  std::set<Config> seen{start};
  std::deque<std::pair<Config, Observation>> queue;
  queue.emplace_back(std::move(start), Observation{});
  while (!queue.empty()) {
    auto [config, obs] = std::move(queue.front());
    queue.pop_front();
    if (visit(config, obs)) {
      r.found = true;
      return r;
    }
    if (obs.size() >= bound) {
      r.truncated = true;
      continue;
    }
    for (EventId e : events) {
      Config next(config.size());
      for (std::size_t i = 0; i < config.size(); ++i) next[i] = raws[i]->step(config[i], e);
      if (!seen.insert(next).second) continue;
      Observation longer = obs;
      longer.push_back(e);
      queue.emplace_back(std::move(next), std::move(longer));
    }
  }
  return r;
}

BoundedVerdict finish(BoundedVerdict v, const OpacityInstance& inst, bool exhausted) {
  v.complete = exhausted || v.bound >= completeness_bound(inst);
  return v;
}

BoundedVerdict split_oracle(const Nfa& g, const StateSet& secret, const StateSet& nonsecret,
                            std::optional<std::uint64_t> k, Notion kind, std::uint64_t bound,
                            const OpacityInstance& inst) {
  const Raw raw(g);
  const auto events = observable_in_name_order(g.alphabet);
  const std::uint64_t inner_bound = k ? std::min(*k, bound) : bound;
  const bool inner_cut_is_k = k && *k <= bound;

  BoundedVerdict v;
  v.bound = bound;
  bool inner_truncated = false;
  Witness found;
  auto outer = walk({&raw}, events, {raw.gap(g.initial)}, bound, [&](const Config& c, const Observation& o1) {
    const StateSet& d = c[0];
    const StateSet d_ns = d & nonsecret;
    bool hit = false;
    (d & secret).for_each([&](StateId x) {
      if (hit) return;
      auto inner = walk({&raw, &raw}, events, {StateSet(g.size(), {x}), d_ns}, inner_bound,
                        [&](const Config& rz, const Observation& o2) {
                          if (rz[0].empty() || !rz[1].empty()) return false;
                          found = {kind, o1, o2, "run through secret state " + g.states[x] +
                                                     " continues; no run through a non-secret state does"};
                          return true;
                        });
      hit = inner.found;
      if (inner.truncated && !inner_cut_is_k) inner_truncated = true;
    });
    return hit;
  });
  if (outer.found) {
    v.opaque = false;
    v.witness = found;
  }
  return finish(v, inst, !outer.found && !outer.truncated && !inner_truncated);
}

StateSet pair_firsts(const std::vector<StatePair>& pairs) {
  StateSet out;
  for (auto [q0, qf] : pairs) out.insert(q0);
  return out;
}

}  // namespace

std::uint64_t completeness_bound(const OpacityInstance& inst) {
  return std::visit(
      [](const auto& i) -> std::uint64_t {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LboInstance>) {
          return minus_one(sat_mul(i.secret_aut.size(), pow2(i.nonsecret_aut.size())));
        } else {
          const std::uint64_t n = i.system.size();
          if constexpr (std::is_same_v<T, CsoInstance>) return minus_one(pow2(n));
          else if constexpr (std::is_same_v<T, IsoInstance>) return minus_one(sat_mul(n, pow2(n)));
          else if constexpr (std::is_same_v<T, IfoInstance>) {
            const std::uint64_t tracked = sat_mul(n, i.system.initial.count());
            return minus_one(sat_mul(tracked, pow2(tracked)));
          } else {
            return minus_one(sat_mul(n, pow2(n)));
          }
        }
      },
      inst);
}

BoundedVerdict oracle_verify(const OpacityInstance& inst, std::uint64_t bound) {
  require_valid(inst);
  BoundedVerdict v;
  v.bound = bound;

  auto single = [&](const Nfa& g, const std::vector<StateSet>& starts, Notion kind,
                    const std::function<bool(const Config&)>& violated, const char* note) {
    const Raw raw(g);
    Config start;
    for (const auto& s : starts) start.push_back(raw.gap(s));
    std::vector<const Raw*> raws(start.size(), &raw);
    auto r = walk(raws, observable_in_name_order(g.alphabet), start, bound, [&](const Config& c, const Observation& o) {
      if (!violated(c)) return false;
      v.opaque = false;
      v.witness = Witness{kind, o, std::nullopt, note};
      return true;
    });
    return finish(v, inst, !r.found && !r.truncated);
  };

  return std::visit(
      [&](const auto& i) -> BoundedVerdict {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, CsoInstance>) {
          return single(i.system, {i.system.initial}, Notion::cso, [&](const Config& c) {
            return c[0].intersects(i.secret) && !c[0].intersects(i.nonsecret);
          }, "estimate has a secret state and no non-secret state");
        } else if constexpr (std::is_same_v<T, IsoInstance>) {
          return single(i.system, {i.secret_initial, i.nonsecret_initial}, Notion::iso, [](const Config& c) {
            return !c[0].empty() && c[1].empty();
          }, "generated from a secret initial state only");
        } else if constexpr (std::is_same_v<T, IfoInstance>) {
          const auto firsts = pair_firsts(i.secret_pairs) | pair_firsts(i.nonsecret_pairs);
          const auto initials = firsts.members();
          std::vector<StateSet> starts;
          for (StateId q0 : initials) starts.push_back(StateSet(i.system.size(), {q0}));
          auto slot = [&](StateId q0) {
            return static_cast<std::size_t>(std::find(initials.begin(), initials.end(), q0) - initials.begin());
          };
          return single(i.system, starts, Notion::ifo, [&](const Config& c) {
            auto any = [&](const std::vector<StatePair>& pairs) {
              return std::any_of(pairs.begin(), pairs.end(),
                                 [&](const StatePair& p) { return c[slot(p.first)].contains(p.second); });
            };
            return any(i.secret_pairs) && !any(i.nonsecret_pairs);
          }, "realized by a secret pair and by no non-secret pair");
        } else if constexpr (std::is_same_v<T, LboInstance>) {
          const Raw rs(i.secret_aut), rn(i.nonsecret_aut);
          auto r = walk({&rs, &rn}, observable_in_name_order(i.alphabet()),
                        {rs.gap(i.secret_aut.initial), rn.gap(i.nonsecret_aut.initial)}, bound,
                        [&](const Config& c, const Observation& o) {
                          if (!c[0].intersects(i.secret_aut.marked) || c[1].intersects(i.nonsecret_aut.marked))
                            return false;
                          v.opaque = false;
                          v.witness = Witness{Notion::lbo, o, std::nullopt, "secret string with no non-secret match"};
                          return true;
                        });
          return finish(v, inst, !r.found && !r.truncated);
        } else if constexpr (std::is_same_v<T, KsoInstance>) {
          return split_oracle(i.system, i.secret, i.nonsecret, i.k, Notion::kso, bound, inst);
        } else {
          return split_oracle(i.system, i.secret, i.nonsecret, std::nullopt, Notion::inso, bound, inst);
        }
      },
      inst);
}

bool witness_check(const OpacityInstance& inst, const Witness& w) {
  if (w.kind != notion_of(inst))
    throw Error(ErrorCode::malformed_witness, "witness kind does not match the instance");
  const bool split = w.kind == Notion::kso || w.kind == Notion::inso;
  if (split != w.suffix.has_value())
    throw Error(ErrorCode::malformed_witness,
                split ? "K-step / infinite-step witness needs a suffix" : "unexpected suffix in witness");
  const Alphabet& sigma = automata_of(inst).front()->alphabet;
  auto check_events = [&](const Observation& o) {
    for (EventId e : o)
      if (e >= sigma.size() || !sigma.events[e].observable)
        throw Error(ErrorCode::malformed_witness, "witness contains a non-observable event");
  };
  check_events(w.prefix);
  if (w.suffix) check_events(*w.suffix);
  require_valid(inst);

  auto run = [](const Raw& raw, StateSet s, const Observation& o) {
    s = raw.gap(s);
    for (EventId e : o) s = raw.step(s, e);
    return s;
  };

  return std::visit(
      [&](const auto& i) -> bool {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LboInstance>) {
          const Raw rs(i.secret_aut), rn(i.nonsecret_aut);
          return run(rs, i.secret_aut.initial, w.prefix).intersects(i.secret_aut.marked) &&
                 !run(rn, i.nonsecret_aut.initial, w.prefix).intersects(i.nonsecret_aut.marked);
        } else {
          const Raw raw(i.system);
          if constexpr (std::is_same_v<T, CsoInstance>) {
            const StateSet d = run(raw, i.system.initial, w.prefix);
            return d.intersects(i.secret) && !d.intersects(i.nonsecret);
          } else if constexpr (std::is_same_v<T, IsoInstance>) {
            return !run(raw, i.secret_initial, w.prefix).empty() && run(raw, i.nonsecret_initial, w.prefix).empty();
          } else if constexpr (std::is_same_v<T, IfoInstance>) {
            auto any = [&](const std::vector<StatePair>& pairs) {
              return std::any_of(pairs.begin(), pairs.end(), [&](const StatePair& p) {
                return run(raw, StateSet(i.system.size(), {p.first}), w.prefix).contains(p.second);
              });
            };
            return any(i.secret_pairs) && !any(i.nonsecret_pairs);
          } else {
            if constexpr (std::is_same_v<T, KsoInstance>)
              if (w.suffix->size() > i.k) return false;
            const StateSet d = run(raw, i.system.initial, w.prefix);
            const StateSet z = run(raw, d & i.nonsecret, *w.suffix);
            if (!z.empty()) return false;
            bool hit = false;
            (d & i.secret).for_each([&](StateId x) {
              if (!run(raw, StateSet(i.system.size(), {x}), *w.suffix).empty()) hit = true;
            });
            return hit;
          }
        }
      },
      inst);
}

}  // namespace opacity

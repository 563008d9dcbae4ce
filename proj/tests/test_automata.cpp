#include <doctest.h>

#include <algorithm>

#include "opacity/automata.hpp"
#include "opacity/error.hpp"
#include "opacity/fixtures.hpp"
#include "opacity/testkit.hpp"
#include "reference.hpp"

using namespace opacity;

namespace {

Nfa f1() { return fixtures::f1().system; }
Nfa f2() { return fixtures::f2().system; }

std::vector<std::string> state_names(const Nfa& g) { return g.states; }

std::set<std::tuple<std::string, std::string, std::string>> edges(const Nfa& g) {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& t : g.transitions) out.emplace(g.states[t.source], g.alphabet.name(t.event), g.states[t.target]);
  return out;
}

std::vector<Nfa> corpus(std::size_t count, std::uint64_t seed, bool det = false) {
  std::vector<Nfa> out;
  for (std::size_t i = 0; i < count; ++i) {
    GenParams p;
    p.n = 1 + i % 5;
    p.ell = 1 + i % 2;
    p.uo = i % 3 == 0 ? 0 : 1;
    p.density = 0.2 + 0.1 * static_cast<double>(i % 5);
    p.deterministic = det;
    p.seed = seed + i;
    Nfa g = random_nfa(p);
    for (StateId q = 0; q < g.size(); ++q)
      if ((q + i) % 3 == 0) g.marked.insert(q);
    out.push_back(std::move(g));
  }
  return out;
}

ref::States all_states(const Nfa& g) {
  ref::States s;
  for (StateId q = 0; q < g.size(); ++q) s.insert(q);
  return s;
}

}  // namespace

TEST_CASE("validate reports one diagnostic per violation") {
  CHECK(validate(f1()).empty());

  Nfa bad = f1();
  bad.transitions.push_back({0, 7, 1});
  auto d = validate(bad);
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == Diagnostic::Kind::unknown_event);

  bad = f1();
  bad.initial = StateSet(10, {9});
  d = validate(bad);
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == Diagnostic::Kind::initial_not_declared);

  bad = f1();
  bad.states[2] = "0";
  bad.alphabet.events.push_back({"", true});
  bad.transitions.push_back({5, 0, 6});
  bad.marked.insert(4);
  d = validate(bad);
  std::vector<Diagnostic::Kind> kinds;
  for (const auto& x : d) kinds.push_back(x.kind);
  CHECK(kinds == std::vector<Diagnostic::Kind>{Diagnostic::Kind::duplicate_state, Diagnostic::Kind::empty_event_name,
                                               Diagnostic::Kind::unknown_source, Diagnostic::Kind::unknown_target,
                                               Diagnostic::Kind::marked_not_declared});
}

TEST_CASE("unobservable closure on F1") {
  const Nfa g = f1();
  const auto expected = ref::closure(g, {0});
  CHECK(expected == ref::States{0, 2});
  CHECK(ref::to_set(unobservable_closure(g, StateSet(3, {0}))) == expected);
  CHECK(unobservable_closure(g, StateSet()).empty());

  const Nfa f3 = fixtures::f3().system;  // no unobservable events
  const StateSet s(5, {1, 4});
  CHECK(unobservable_closure(f3, s) == s);
}

TEST_CASE("step and estimate on F1") {
  const Nfa g = f1();
  const EventId a = *g.alphabet.find("a");
  const EventId u = *g.alphabet.find("u");
  for (auto [from, want] : std::vector<std::pair<ref::States, ref::States>>{{{0}, {1, 2}}, {{1}, {}}, {{2}, {2}}}) {
    CHECK(ref::step(g, from, "a") == want);
    CHECK(ref::to_set(step(g, StateSet::from(3, std::vector<StateId>(from.begin(), from.end())), a)) == want);
  }
  CHECK_THROWS_AS(step(g, StateSet(3, {0}), u), Error);
  try {
    step(g, StateSet(3, {0}), u);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_event);
  }

  const std::vector<std::pair<Observation, ref::States>> table{{{}, {0, 2}}, {{a}, {1, 2}}, {{a, a}, {2}}};
  for (const auto& [obs, want] : table) {
    CHECK(ref::estimate(g, {0}, ref::names_of(g.alphabet, obs)) == want);
    CHECK(ref::to_set(estimate(g, obs)) == want);
  }
  CHECK_THROWS_AS(estimate(g, {u}), Error);
}

TEST_CASE("project") {
  const Nfa p = project(f1());
  CHECK(p.states == f1().states);
  CHECK(p.alphabet.size() == 1);
  CHECK(edges(p) == std::set<std::tuple<std::string, std::string, std::string>>{
                        {"0", "a", "1"}, {"0", "a", "2"}, {"2", "a", "2"}});
  CHECK(ref::to_set(p.initial) == ref::States{0, 2});

  const Nfa f3 = fixtures::f3().system;
  CHECK(project(f3).transitions == f3.transitions);

  Nfa loop;
  loop.add_state("s");
  loop.alphabet = make_alphabet({}, {"u"});
  loop.add_transition(0, 0, 0);
  loop.initial = StateSet(1, {0});
  const Nfa pl = project(loop);
  CHECK(pl.transitions.empty());
  CHECK(pl.initial == StateSet(1, {0}));
}

TEST_CASE("observer") {
  const Nfa o1 = observer(f1());
  CHECK(state_names(o1) == std::vector<std::string>{"{0,2}", "{1,2}", "{2}"});
  CHECK(edges(o1) == std::set<std::tuple<std::string, std::string, std::string>>{
                         {"{0,2}", "a", "{1,2}"}, {"{1,2}", "a", "{2}"}, {"{2}", "a", "{2}"}});
  const Nfa o2 = observer(f2());
  CHECK(state_names(o2) == std::vector<std::string>{"{0,2}", "{1}"});
  CHECK(edges(o2) == std::set<std::tuple<std::string, std::string, std::string>>{{"{0,2}", "a", "{1}"}});

  // A deterministic automaton without unobservable events: observer is its
  // reachable part.
  const Nfa f4 = fixtures::f4o().system;
  Nfa one = f4;
  one.initial = StateSet(2, {0});
  CHECK(observer(one).size() == 1);
}

TEST_CASE("complete_and_complement") {
  const Nfa o1 = observer(f1());
  const Nfa c1 = complete_and_complement(o1, StateSet(3, {1}));
  CHECK(c1.size() == 3);  // every state already has an a-successor
  CHECK(ref::to_set(c1.marked) == ref::States{0, 2});

  const Nfa o2 = observer(f2());
  const Nfa c2 = complete_and_complement(o2, StateSet(2, {1}));
  REQUIRE(c2.size() == 3);
  CHECK(c2.states[2] == "{}");
  CHECK(ref::to_set(c2.marked) == ref::States{0, 2});
  CHECK(edges(c2).count({"{1}", "a", "{}"}));
  CHECK(edges(c2).count({"{}", "a", "{}"}));

  Nfa total;
  total.add_state("x");
  total.alphabet = make_alphabet({"a"});
  total.add_transition(0, 0, 0);
  total.initial = StateSet(1, {0});
  CHECK(complete_and_complement(total, StateSet(1, {0})).marked.empty());

  CHECK_THROWS_AS(complete_and_complement(fixtures::f3().system, StateSet()), Error);
  CHECK_THROWS_AS(complete_and_complement(fixtures::f4o().system, StateSet()), Error);  // two initial states
}

TEST_CASE("product") {
  const Nfa c = product(project(f1()), observer(f1()));
  std::set<std::string> names(c.states.begin(), c.states.end());
  CHECK(names == std::set<std::string>{"(0,{0,2})", "(2,{0,2})", "(1,{1,2})", "(2,{1,2})", "(2,{2})"});

  Nfa total;
  total.add_state("x");
  total.alphabet = make_alphabet({"a"});
  total.add_transition(0, 0, 0);
  total.initial = StateSet(1, {0});
  total.marked = StateSet(1, {0});
  const Nfa pa = project(f1());
  const Nfa id = product(pa, total);
  CHECK(id.size() == pa.size());
  CHECK(id.transitions.size() == pa.transitions.size());

  Nfa empty_init = total;
  empty_init.initial = StateSet();
  CHECK(product(pa, empty_init).size() == 0);

  CHECK_THROWS_AS(product(f1(), total), Error);  // unobservable events
  CHECK_THROWS_AS(product(project(fixtures::f3().system), total), Error);
}

TEST_CASE("is_deterministic") {
  CHECK(is_deterministic(f1()));
  CHECK_FALSE(is_deterministic(fixtures::f3().system));
  Nfa bare;
  bare.add_state("x");
  CHECK(is_deterministic(bare));
}

TEST_CASE("trim") {
  // State 1 of F1 is a dead end, so it cannot survive a trim to {2}.
  Nfa g = f1();
  g.marked = StateSet(3, {2});
  std::vector<std::string> kept;
  for (StateId q = 0; q < g.size(); ++q)
    if (ref::reaches(g, ref::initial(g), q) && ref::reaches(g, {q}, 2)) kept.push_back(g.states[q]);
  CHECK(kept == std::vector<std::string>{"0", "2"});
  CHECK(trim(g).states == kept);
  Nfa h = f2();
  h.marked = StateSet(3, {2});
  CHECK(trim(h).states == std::vector<std::string>{"0", "2"});
  Nfa none = f1();
  none.initial = StateSet();
  CHECK(trim(none).size() == 0);
}

TEST_CASE("shortest_accepted picks the shortest then name-least word") {
  Nfa g;
  for (const char* s : {"0", "1", "2", "3"}) g.add_state(s);
  g.alphabet = make_alphabet({"b", "a"});
  const EventId a = 1, b = 0;
  g.add_transition(0, b, 1);
  g.add_transition(0, a, 2);
  g.add_transition(1, a, 3);
  g.add_transition(2, b, 3);
  g.initial = StateSet(4, {0});
  g.marked = StateSet(4, {3});
  g.canonicalize();
  CHECK(ref::names_of(g.alphabet, *shortest_accepted(g)) == ref::Names{"a", "b"});
  g.marked = StateSet();
  CHECK_FALSE(shortest_accepted(g));
}

TEST_CASE("property: estimate equals the observer run") {
  for (const auto& g : corpus(60, 100)) {
    const Nfa obs = observer(g);
    const Adjacency adj(obs);
    const auto events = ref::observable_names(g.alphabet);
    for (const auto& w : ref::words(events, 4)) {
      Observation o;
      for (const auto& e : w) o.push_back(*g.alphabet.find(e));
      const StateSet est = estimate(g, o);
      CHECK(ref::to_set(est) == ref::estimate(g, ref::initial(g), w));
      // Walk the observer by name.
      std::optional<StateId> at;
      if (!obs.initial.empty()) at = obs.initial.members().front();
      for (const auto& e : w) {
        if (!at) break;
        auto next = adj.successors(*at, *obs.alphabet.find(e));
        at = next.empty() ? std::nullopt : std::optional<StateId>(next.front());
      }
      CHECK((at ? obs.states[*at] : std::string("{}")) == format_set(est, g.states));
    }
  }
}

TEST_CASE("property: projected automaton generates P(L(G))") {
  for (const auto& g : corpus(60, 200)) {
    const Nfa p = project(g);
    CHECK(ref::language(p, ref::initial(p), nullptr, 6) == ref::language(g, ref::initial(g), nullptr, 6));
    CHECK(p.transitions.size() <= p.alphabet.size() * g.size() * g.size());
  }
}

TEST_CASE("property: observer is deterministic with at most 2^n states") {
  for (const auto& g : corpus(80, 300)) {
    const Nfa o = observer(g);
    CHECK(is_deterministic(o));
    CHECK(o.initial.count() <= 1);
    CHECK(o.size() <= (std::size_t{1} << g.size()));
  }
}

TEST_CASE("property: complement accepts exactly the non-accepted observations") {
  for (const auto& g : corpus(60, 400)) {
    const Nfa o = observer(g);
    const Nfa c = complete_and_complement(o, o.marked);
    const auto all = ref::words(ref::observable_names(g.alphabet), 6);
    const auto acc = ref::marked(o);
    const auto cacc = ref::marked(c);
    const auto lo = ref::language(o, ref::initial(o), &acc, 6);
    const auto lc = ref::language(c, ref::initial(c), &cacc, 6);
    for (const auto& w : all) CHECK(lo.count(w) != lc.count(w));
  }
}

TEST_CASE("property: product language is the intersection") {
  const auto gs = corpus(40, 500);
  for (std::size_t i = 0; i + 1 < gs.size(); i += 2) {
    const Nfa a = project(gs[i]);
    Nfa b = project(gs[i + 1]);
    if (a.alphabet.size() != b.alphabet.size()) continue;
    b.alphabet = a.alphabet;  // same names by construction
    const Nfa c = product(a, b);
    const auto fa = ref::marked(a), fb = ref::marked(b), fc = ref::marked(c);
    const auto la = ref::language(a, ref::initial(a), &fa, 6);
    const auto lb = ref::language(b, ref::initial(b), &fb, 6);
    const auto lc = ref::language(c, ref::initial(c), &fc, 6);
    std::set<ref::Names> both;
    std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::inserter(both, both.begin()));
    CHECK(lc == both);
  }
}

TEST_CASE("property: trim output is non-blocking and keeps the marked language") {
  for (const auto& g : corpus(80, 600)) {
    const Nfa t = trim(g);
    for (StateId q = 0; q < t.size(); ++q) {
      CHECK(reachable_from(t, t.initial).contains(q));
      CHECK(coreachable_to(t, t.marked).contains(q));
    }
    const auto fg = ref::marked(g), ft = ref::marked(t);
    CHECK(ref::language(g, ref::initial(g), &fg, 5) == ref::language(t, ref::initial(t), &ft, 5));
  }
}

TEST_CASE("property: shortest_accepted matches enumeration order") {
  for (const auto& g0 : corpus(80, 700)) {
    const Nfa g = project(g0);
    const auto f = ref::marked(g);
    // words() lists by length, then in alphabet order; sort names to get
    // the name order per length.
    auto names = ref::observable_names(g.alphabet);
    std::sort(names.begin(), names.end());
    std::optional<ref::Names> first;
    for (const auto& w : ref::words(names, 5)) {
      if (ref::language(g, ref::initial(g), &f, 5).count(w)) {
        first = w;
        break;
      }
    }
    const auto got = shortest_accepted(g);
    if (first) {
      REQUIRE(got);
      CHECK(ref::names_of(g.alphabet, *got) == *first);
    } else if (got) {
      CHECK(got->size() > 5);
    }
  }
}

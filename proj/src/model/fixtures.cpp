#include "opacity/fixtures.hpp"

namespace opacity::fixtures {

namespace {

Nfa numbered(std::size_t n, Alphabet alphabet, std::initializer_list<StateId> initial) {
  Nfa g;
  for (std::size_t i = 0; i < n; ++i) g.add_state(std::to_string(i));
  g.alphabet = std::move(alphabet);
  g.initial = StateSet(n, initial);
  g.marked = StateSet(n);
  return g;
}

}  // namespace

CsoInstance f1() {
  Nfa g = numbered(3, make_alphabet({"a"}, {"u"}), {0});
  g.add_transition(0, 0, 1);
  g.add_transition(0, 1, 2);
  g.add_transition(2, 0, 2);
  g.canonicalize();
  return {g, StateSet(3, {1}), StateSet(3, {2})};
}

CsoInstance f2() {
  Nfa g = numbered(3, make_alphabet({"a"}, {"u"}), {0});
  g.add_transition(0, 0, 1);
  g.add_transition(0, 1, 2);
  g.canonicalize();
  return {g, StateSet(3, {1}), StateSet(3, {2})};
}

CsoInstance f3() {
  Nfa g = numbered(5, make_alphabet({"a", "b"}), {0});
  g.add_transition(0, 0, 1);
  g.add_transition(0, 0, 2);
  g.add_transition(1, 0, 3);
  g.add_transition(2, 1, 4);
  g.canonicalize();
  return {g, StateSet(5, {1}), StateSet(5, {2})};
}

IsoInstance f4o() {
  Nfa g = numbered(2, make_alphabet({"a"}), {0, 1});
  g.add_transition(0, 0, 0);
  g.add_transition(1, 0, 1);
  g.canonicalize();
  return {g, StateSet(2, {1}), StateSet(2, {0})};
}

IsoInstance f4x() {
  Nfa g = numbered(2, make_alphabet({"a"}), {0, 1});
  g.add_transition(1, 0, 1);
  g.canonicalize();
  return {g, StateSet(2, {1}), StateSet(2, {0})};
}

LboInstance f5() {
  const Alphabet sigma = make_alphabet({"a", "b"}, {"u"});
  Nfa s;
  s.alphabet = sigma;
  for (const char* q : {"s0", "s1", "s2"}) s.add_state(q);
  s.add_transition(0, 0, 1);
  s.add_transition(1, 1, 2);
  s.initial = StateSet(3, {0});
  s.marked = StateSet(3, {2});
  s.canonicalize();

  Nfa ns;
  ns.alphabet = sigma;
  for (const char* q : {"n0", "n1", "n2", "n3"}) ns.add_state(q);
  ns.add_transition(0, 2, 1);
  ns.add_transition(1, 0, 2);
  ns.add_transition(2, 1, 3);
  ns.initial = StateSet(4, {0});
  ns.marked = StateSet(4, {3});
  ns.canonicalize();
  return make_lbo(s, ns);
}

InsoInstance as_inso(const CsoInstance& c) { return {c.system, c.secret, c.nonsecret}; }

KsoInstance as_kso(const CsoInstance& c, std::uint64_t k) { return {c.system, c.secret, c.nonsecret, k}; }

std::optional<OpacityInstance> by_name(std::string_view name) {
  if (name == "F1") return f1();
  if (name == "F2") return f2();
  if (name == "F3") return f3();
  if (name == "F4" || name == "F4o") return f4o();
  if (name == "F4x") return f4x();
  if (name == "F5") return f5();
  return std::nullopt;
}

std::vector<std::string> names() { return {"F1", "F2", "F3", "F4o", "F4x", "F5"}; }

}  // namespace opacity::fixtures

#include <doctest.h>

#include "opacity/error.hpp"
#include "opacity/io.hpp"
#include "opacity/testkit.hpp"

using namespace opacity;

namespace {

constexpr Notion kNotions[] = {Notion::cso, Notion::iso, Notion::ifo, Notion::lbo, Notion::kso, Notion::inso};

}

TEST_CASE("same seed gives the same automaton and instance") {
  GenParams p;
  p.seed = 42;
  CHECK(random_nfa(p) == random_nfa(p));
  for (Notion n : kNotions) CHECK(serialize_instance(random_instance(n, p)) == serialize_instance(random_instance(n, p)));
  GenParams q = p;
  q.seed = 43;
  CHECK_FALSE(random_nfa(p) == random_nfa(q));
}

TEST_CASE("generator shape") {
  GenParams p;
  p.n = 7;
  p.ell = 3;
  p.uo = 2;
  p.seed = 5;
  const Nfa g = random_nfa(p);
  CHECK(g.size() == 7);
  CHECK(g.states.front() == "0");
  CHECK(g.alphabet.observable_count() == 3);
  CHECK(g.alphabet.events.size() == 5);
  CHECK(g.alphabet.name(0) == "a");
  CHECK(*g.alphabet.find("u") == 3);
  CHECK_FALSE(g.initial.empty());
  CHECK(validate(g).empty());

  p.density = 0;
  CHECK(random_nfa(p).transitions.empty());

  p.density = 1;
  p.deterministic = true;
  for (std::uint64_t s = 0; s < 50; ++s) {
    p.seed = s;
    const Nfa d = random_nfa(p);
    CHECK(is_deterministic(d));
    CHECK(d.transitions.size() == 7 * 5);
  }
}

TEST_CASE("invalid parameters") {
  auto bad = [](auto mutate) {
    GenParams p;
    mutate(p);
    try {
      random_nfa(p);
    } catch (const Error& e) {
      return e.code() == ErrorCode::invalid_params;
    }
    return false;
  };
  CHECK(bad([](GenParams& p) { p.n = 0; }));
  CHECK(bad([](GenParams& p) { p.ell = 0; }));
  CHECK(bad([](GenParams& p) { p.density = 1.5; }));
  CHECK(bad([](GenParams& p) { p.secret_fraction = -0.1; }));
  CHECK(bad([](GenParams& p) { p.initial_probability = 2; }));
}

TEST_CASE("10,000 generated instances are valid") {
  std::size_t invalid = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    GenParams p;
    p.n = 1 + i % 6;
    p.ell = 1 + i % 3;
    p.uo = i % 3;
    p.density = static_cast<double>(i % 11) / 10.0;
    p.secret_fraction = static_cast<double>(i % 7) / 6.0;
    p.nonsecret_fraction = static_cast<double>(i % 5) / 4.0;
    p.deterministic = i % 2 == 0;
    p.k = i % 5;
    p.seed = i;
    const Notion n = kNotions[i % 6];
    const auto inst = random_instance(n, p);
    if (notion_of(inst) != n || !validate_instance(inst).empty()) ++invalid;
    if (n == Notion::iso) {
      const auto& iso = std::get<IsoInstance>(inst);
      CHECK(iso.secret_initial.is_subset_of(iso.system.initial));
    }
  }
  CHECK(invalid == 0);
}

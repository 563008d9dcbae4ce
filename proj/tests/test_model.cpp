#include <doctest.h>

#include <set>

#include "opacity/error.hpp"
#include "opacity/fixtures.hpp"
#include "opacity/instance.hpp"

using namespace opacity;

TEST_CASE("fixtures validate") {
  for (const auto& name : fixtures::names()) {
    CAPTURE(name);
    const auto inst = fixtures::by_name(name);
    REQUIRE(inst);
    CHECK(validate_instance(*inst).empty());
  }
  CHECK(fixtures::by_name("F4") == fixtures::by_name("F4o"));
  CHECK_FALSE(fixtures::by_name("F6"));
  CHECK(notion_of(*fixtures::by_name("F5")) == Notion::lbo);
  CHECK(automata_of(*fixtures::by_name("F5")).size() == 2);
}

TEST_CASE("ISO secret set outside I gives one diagnostic") {
  IsoInstance inst = fixtures::f4o();
  inst.system.initial = StateSet(2, {0});
  const auto d = validate_instance(inst);
  CHECK(d.size() == 1);
  CHECK_THROWS_AS(require_valid(inst), Error);
}

TEST_CASE("LBO with mismatched alphabets gives one diagnostic") {
  LboInstance inst = fixtures::f5();
  inst.nonsecret_aut.alphabet.events[2].observable = true;
  CHECK(validate_instance(inst).size() == 1);
  inst = fixtures::f5();
  inst.nonsecret_aut.alphabet.events.push_back({"c", true});
  CHECK(validate_instance(inst).size() == 1);
}

TEST_CASE("LBO automata must be non-blocking") {
  LboInstance inst = fixtures::f5();
  inst.secret_aut.add_state("dead");
  inst.secret_aut.initial.insert(3);
  CHECK_FALSE(validate_instance(inst).empty());
  CHECK(validate_instance(make_lbo(inst.secret_aut, inst.nonsecret_aut)).empty());
}

TEST_CASE("other instance diagnostics") {
  CsoInstance c = fixtures::f1();
  c.secret.insert(5);
  CHECK(validate_instance(c).size() == 1);

  IfoInstance f{fixtures::f1().system, {{1, 2}}, {{0, 7}}};
  CHECK(validate_instance(f).size() == 2);  // 1 is not initial, 7 is not a state

  // Overlap is legal.
  CsoInstance o = fixtures::f1();
  o.nonsecret.insert(1);
  CHECK(validate_instance(o).empty());

  CsoInstance broken = fixtures::f1();
  broken.system.transitions.push_back({0, 9, 0});
  CHECK_FALSE(validate_instance(broken).empty());
  try {
    require_valid(broken);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_instance);
  }
}

TEST_CASE("notion names") {
  for (Notion n : {Notion::cso, Notion::iso, Notion::ifo, Notion::lbo, Notion::kso, Notion::inso})
    CHECK(parse_notion(to_string(n)) == n);
  CHECK_FALSE(parse_notion("CSO"));
  CHECK(std::string(to_string(ErrorCode::not_unary)) == "NotUnary");
}

TEST_CASE("provenance descriptions are distinct per role") {
  std::set<std::string> seen;
  for (auto k : {StateOriginKind::original, StateOriginKind::plus, StateOriginKind::minus, StateOriginKind::chain,
                 StateOriginKind::encoding, StateOriginKind::fresh})
    seen.insert(describe(StateOrigin{k, 0, 0, 1, 2, true, "01"}));
  CHECK(seen.size() == 6);
  seen.clear();
  for (auto k : {EventOriginKind::original, EventOriginKind::fresh_at, EventOriginKind::fresh_u, EventOriginKind::bit})
    seen.insert(describe(EventOrigin{k, 1}));
  CHECK(seen.size() == 4);
}

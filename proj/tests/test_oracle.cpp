#include <doctest.h>

#include "opacity/error.hpp"
#include "opacity/fixtures.hpp"
#include "opacity/oracle.hpp"
#include "opacity/testkit.hpp"

using namespace opacity;

namespace {

Observation obs(const Alphabet& a, std::initializer_list<const char*> names) {
  Observation o;
  for (const char* n : names) o.push_back(*a.find(n));
  return o;
}

}  // namespace

TEST_CASE("oracle on fixtures") {
  const auto b1 = oracle_verify(fixtures::f1(), 8);
  CHECK(b1.opaque);
  CHECK(b1.complete);
  CHECK(b1.bound == 8);

  const auto b2 = oracle_verify(fixtures::f2(), 2);
  REQUIRE_FALSE(b2.opaque);
  CHECK(b2.witness->prefix == obs(fixtures::f2().system.alphabet, {"a"}));

  const auto f3 = fixtures::f3();
  const auto b3 = oracle_verify(fixtures::as_kso(f3, 1), 4);
  REQUIRE_FALSE(b3.opaque);
  CHECK(b3.witness->prefix == obs(f3.system.alphabet, {"a"}));
  CHECK(b3.witness->suffix == obs(f3.system.alphabet, {"a"}));

  // Bound 0 sees only the empty observation.
  const auto b0 = oracle_verify(fixtures::f2(), 0);
  CHECK(b0.opaque);
}

TEST_CASE("completeness bounds") {
  CHECK(completeness_bound(fixtures::f1()) <= 8);
  CHECK(completeness_bound(fixtures::as_kso(fixtures::f1(), 1)) >= 7);
  CHECK(oracle_verify(fixtures::f3(), completeness_bound(fixtures::f3())).complete);
}

TEST_CASE("witness_check") {
  const Alphabet& a = fixtures::f1().system.alphabet;
  CHECK(witness_check(fixtures::f2(), {Notion::cso, obs(a, {"a"}), std::nullopt, ""}));
  CHECK_FALSE(witness_check(fixtures::f1(), {Notion::cso, obs(a, {"a"}), std::nullopt, ""}));
  const auto f3 = fixtures::f3();
  const Alphabet& b = f3.system.alphabet;
  CHECK(witness_check(fixtures::as_kso(f3, 1), {Notion::kso, obs(b, {"a"}), obs(b, {"a"}), ""}));
  CHECK_FALSE(witness_check(fixtures::as_kso(f3, 0), {Notion::kso, obs(b, {"a"}), obs(b, {"a"}), ""}));
  CHECK(witness_check(fixtures::as_inso(f3), {Notion::inso, obs(b, {"a"}), obs(b, {"a"}), ""}));
  CHECK(witness_check(fixtures::f4x(), {Notion::iso, obs(fixtures::f4x().system.alphabet, {"a"}), std::nullopt, ""}));
}

TEST_CASE("malformed witnesses") {
  const Alphabet& a = fixtures::f1().system.alphabet;
  const auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::usage;
  };
  CHECK(code([&] { witness_check(fixtures::f2(), {Notion::iso, obs(a, {"a"}), std::nullopt, ""}); }) ==
        ErrorCode::malformed_witness);
  CHECK(code([&] { witness_check(fixtures::f2(), {Notion::cso, obs(a, {"u"}), std::nullopt, ""}); }) ==
        ErrorCode::malformed_witness);
  CHECK(code([&] { witness_check(fixtures::f2(), {Notion::cso, {}, Observation{}, ""}); }) ==
        ErrorCode::malformed_witness);
  CHECK(code([&] { witness_check(fixtures::as_inso(fixtures::f2()), {Notion::inso, {}, std::nullopt, ""}); }) ==
        ErrorCode::malformed_witness);
  CHECK(code([&] { witness_check(fixtures::f2(), {Notion::cso, {7}, std::nullopt, ""}); }) ==
        ErrorCode::malformed_witness);
}

TEST_CASE("oracle self-consistency") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GenParams p;
    p.n = 1 + seed % 3;
    p.ell = 1 + seed % 2;
    p.uo = seed % 2;
    p.seed = seed;
    const auto c = std::get<CsoInstance>(random_instance(Notion::cso, p));
    const auto cso = oracle_verify(c, completeness_bound(c));
    const std::uint64_t bk = completeness_bound(fixtures::as_kso(c, 0));
    CHECK(oracle_verify(fixtures::as_kso(c, 0), bk).opaque == cso.opaque);
    bool prev = true;
    for (std::uint64_t k = 0; k <= 3; ++k) {
      const auto r = oracle_verify(fixtures::as_kso(c, k), bk);
      CHECK(r.complete);
      CHECK((prev || !r.opaque));
      prev = r.opaque;
      if (!r.opaque) CHECK(witness_check(fixtures::as_kso(c, k), *r.witness));
    }
  }
}

TEST_CASE("oracle iteration order is deterministic") {
  const auto inst = random_instance(Notion::inso, GenParams{4, 2, 1, 0.5, 0.3, 0.5, false, 9});
  const auto a = oracle_verify(inst, 5);
  const auto b = oracle_verify(inst, 5);
  CHECK(a.opaque == b.opaque);
  CHECK(a.witness == b.witness);
}

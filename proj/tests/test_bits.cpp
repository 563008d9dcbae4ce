#include <doctest.h>

#include <random>
#include <tuple>

#include "opacity/bits.hpp"
#include "opacity/state_set.hpp"

using namespace opacity;

namespace {

std::vector<bits::Word> random_words(std::mt19937_64& rng, std::size_t n, double sparsity) {
  std::vector<bits::Word> out(n);
  for (auto& w : out) {
    w = rng();
    if (std::uniform_real_distribution<double>(0, 1)(rng) < sparsity) w &= rng() & rng();
    if (std::uniform_real_distribution<double>(0, 1)(rng) < sparsity) w = 0;
  }
  return out;
}

}  // namespace

TEST_CASE("every available backend matches the scalar kernels") {
  const auto& ref = bits::scalar_kernels();
  std::mt19937_64 rng(7);
  for (auto backend : bits::available_backends()) {
    CAPTURE(bits::name(backend));
    const bits::Kernels* k = backend == bits::Backend::avx2   ? bits::avx2_kernels()
                             : backend == bits::Backend::neon ? bits::neon_kernels()
                                                              : &bits::scalar_kernels();
    REQUIRE(k != nullptr);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 33u, 100u}) {
      for (int trial = 0; trial < 50; ++trial) {
        auto a = random_words(rng, n, 0.5), b = random_words(rng, n, 0.5);
        auto x = a, y = a;
        ref.or_into(x.data(), b.data(), n);
        k->or_into(y.data(), b.data(), n);
        CHECK(x == y);
        CHECK(ref.intersects(a.data(), b.data(), n) == k->intersects(a.data(), b.data(), n));
        CHECK(ref.any_and_not(a.data(), b.data(), n) == k->any_and_not(a.data(), b.data(), n));
        CHECK(ref.any_and_not(a.data(), x.data(), n) == k->any_and_not(a.data(), x.data(), n));
        CHECK(ref.popcount(a.data(), n) == k->popcount(a.data(), n));
      }
    }
  }
}

TEST_CASE("scalar kernels agree with bit-by-bit definitions") {
  std::mt19937_64 rng(11);
  const auto& k = bits::scalar_kernels();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = trial % 6;
    auto a = random_words(rng, n, 0.7), b = random_words(rng, n, 0.7);
    bool inter = false, not_sub = false;
    std::size_t pop = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (int bit = 0; bit < 64; ++bit) {
        const bool x = (a[i] >> bit) & 1, y = (b[i] >> bit) & 1;
        inter |= x && y;
        not_sub |= x && !y;
        pop += x;
      }
    CHECK(k.intersects(a.data(), b.data(), n) == inter);
    CHECK(k.any_and_not(a.data(), b.data(), n) == not_sub);
    CHECK(k.popcount(a.data(), n) == pop);
  }
}

TEST_CASE("select switches the active backend and StateSet results do not change") {
  const auto original = bits::active().backend;
  std::mt19937_64 rng(3);
  std::vector<StateId> xs, ys;
  for (int i = 0; i < 300; ++i) {
    if (rng() % 3 == 0) xs.push_back(static_cast<StateId>(rng() % 700));
    if (rng() % 4 == 0) ys.push_back(static_cast<StateId>(rng() % 700));
  }
  std::vector<std::tuple<bool, bool, std::size_t, std::vector<StateId>>> results;
  for (auto backend : bits::available_backends()) {
    REQUIRE(bits::select(backend));
    CHECK(bits::active().backend == backend);
    const auto a = StateSet::from(700, xs), b = StateSet::from(700, ys);
    results.emplace_back(a.intersects(b), a.is_subset_of(a | b), a.count(), (a | b).members());
  }
  for (const auto& r : results) CHECK(r == results.front());
  bits::select(original);
  CHECK_FALSE(bits::select(static_cast<bits::Backend>(99)));
}

TEST_CASE("StateSet basics") {
  StateSet s(10, {1, 3});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK_FALSE(s.contains(1000));
  s.insert(130);
  CHECK(s.count() == 3);
  CHECK(s.max_member() == StateId{130});
  s.erase(130);
  CHECK(s == StateSet(500, {1, 3}));
  CHECK(s.hash() == StateSet(500, {1, 3}).hash());
  CHECK(StateSet(3, {0, 2}) < StateSet(3, {1}));
  CHECK(StateSet(3, {0}) < StateSet(3, {0, 1}));
  CHECK(StateSet().empty());
  CHECK_FALSE(StateSet().max_member());
  const std::vector<std::string> names{"x", "y", "z"};
  CHECK(format_set(StateSet(3, {0, 2}), names) == "{x,z}");
  CHECK(format_set(StateSet(), names) == "{}");
  StateSet t(3, {0, 1, 2});
  t.subtract(StateSet(3, {1}));
  CHECK(t.members() == std::vector<StateId>{0, 2});
  CHECK(StateSet::full(65).count() == 65);
}

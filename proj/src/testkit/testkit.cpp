#include "opacity/testkit.hpp"

#include <random>

#include "opacity/error.hpp"

namespace opacity {

namespace {

// std distributions differ between standard libraries; only the engine's raw
// output is specified, so the mappings below are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

std::string observable_name(std::size_t i) {
  static const char* letters = "abcdefghijklmnopqrst";
  return i < 20 ? std::string(1, letters[i]) : "a" + std::to_string(i);
}

std::string unobservable_name(std::size_t i) {
  static const char* letters = "uvwxyz";
  return i < 6 ? std::string(1, letters[i]) : "u" + std::to_string(i);
}

Nfa generate(const GenParams& p, Rng& rng) {
  Nfa g;
  for (std::size_t i = 0; i < p.ell; ++i) g.alphabet.add(observable_name(i), true);
  for (std::size_t i = 0; i < p.uo; ++i) g.alphabet.add(unobservable_name(i), false);
  for (std::size_t q = 0; q < p.n; ++q) g.add_state(std::to_string(q));

  for (StateId q = 0; q < p.n; ++q)
    for (EventId e = 0; e < g.alphabet.size(); ++e) {
      if (!rng.chance(p.density)) continue;
      if (p.deterministic) {
        g.add_transition(q, e, static_cast<StateId>(rng.below(p.n)));
        continue;
      }
      do g.add_transition(q, e, static_cast<StateId>(rng.below(p.n)));
      while (rng.chance(0.5));
    }

  g.initial = StateSet(p.n);
  for (StateId q = 0; q < p.n; ++q)
    if (rng.chance(p.initial_probability)) g.initial.insert(q);
  if (g.initial.empty()) g.initial.insert(static_cast<StateId>(rng.below(p.n)));
  g.marked = StateSet(p.n);
  g.canonicalize();
  return g;
}

StateSet sample(Rng& rng, const StateSet& from, double fraction) {
  StateSet out;
  from.for_each([&](StateId q) {
    if (rng.chance(fraction)) out.insert(q);
  });
  return out;
}

}  // namespace

void check_params(const GenParams& p) {
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (p.n < 1) throw Error(ErrorCode::invalid_params, "n must be at least 1");
  if (p.ell < 1) throw Error(ErrorCode::invalid_params, "ell must be at least 1");
  if (!prob(p.density) || !prob(p.secret_fraction) || !prob(p.nonsecret_fraction) || !prob(p.initial_probability))
    throw Error(ErrorCode::invalid_params, "probabilities must lie in [0, 1]");
}

Nfa random_nfa(const GenParams& p) {
  check_params(p);
  Rng rng(p.seed);
  return generate(p, rng);
}

OpacityInstance random_instance(Notion notion, const GenParams& p) {
  check_params(p);
  Rng rng(p.seed);
  Nfa g = generate(p, rng);
  const StateSet all = StateSet::full(p.n);
  switch (notion) {
    case Notion::cso: {
      StateSet s = sample(rng, all, p.secret_fraction);
      return CsoInstance{std::move(g), s, sample(rng, all, p.nonsecret_fraction)};
    }
    case Notion::kso: {
      StateSet s = sample(rng, all, p.secret_fraction);
      return KsoInstance{std::move(g), s, sample(rng, all, p.nonsecret_fraction), p.k};
    }
    case Notion::inso: {
      StateSet s = sample(rng, all, p.secret_fraction);
      return InsoInstance{std::move(g), s, sample(rng, all, p.nonsecret_fraction)};
    }
    case Notion::iso: {
      StateSet s = sample(rng, g.initial, p.secret_fraction);
      StateSet ns = sample(rng, g.initial, p.nonsecret_fraction);
      return IsoInstance{std::move(g), s, ns};
    }
    case Notion::ifo: {
      IfoInstance ifo{std::move(g), {}, {}};
      ifo.system.initial.for_each([&](StateId q0) {
        for (StateId qf = 0; qf < p.n; ++qf) {
          if (rng.chance(p.secret_fraction)) ifo.secret_pairs.emplace_back(q0, qf);
          if (rng.chance(p.nonsecret_fraction)) ifo.nonsecret_pairs.emplace_back(q0, qf);
        }
      });
      return ifo;
    }
    case Notion::lbo: {
      Nfa other = generate(p, rng);
      g.marked = sample(rng, all, p.secret_fraction);
      other.marked = sample(rng, all, p.nonsecret_fraction);
      return make_lbo(g, other);
    }
  }
  throw Error(ErrorCode::invalid_params, "unknown notion");
}

}  // namespace opacity

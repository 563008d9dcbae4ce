#pragma once

#include <cstdint>

#include "opacity/instance.hpp"

namespace opacity {

struct GenParams {
  std::size_t n = 4;
  std::size_t ell = 2;
  std::size_t uo = 1;
  double density = 0.4;  // probability that a (state, event) slot is filled
  double secret_fraction = 0.3;
  double nonsecret_fraction = 0.5;
  bool deterministic = false;
  std::uint64_t seed = 1;
  std::uint64_t k = 1;                // K for K-SO instances
  double initial_probability = 0.25;  // per state; one initial state is forced
};

/// Throws invalid_params unless n >= 1, ell >= 1 and all probabilities lie
/// in [0, 1].
void check_params(const GenParams& p);

/// Observable events a, b, c, ..., unobservable u, v, w, ...; states "0".."n-1".
/// Reproducible from p.seed on every platform (mt19937_64 raw output).
Nfa random_nfa(const GenParams& p);

/// Always passes validate_instance.
OpacityInstance random_instance(Notion notion, const GenParams& p);

}  // namespace opacity

#pragma once

// Seeded random metrics, states and small triples for property checks.

#include <random>

#include "specdist/triples.hpp"

namespace specdist {

using Rng = std::mt19937_64;

/// Shortest-path metric of the complete graph with edge weights in [lo, hi].
MetricSpace random_metric(int n, Rng& rng, double lo = 0.5, double hi = 2.0);

RVector random_probability(int n, Rng& rng);
RVector random_bloch(Rng& rng, bool pure = false);
CVector random_unit_vector(int n, Rng& rng);
CMatrix random_hermitian(int n, Rng& rng);
/// Ginibre density of the given rank (full rank when rank <= 0).
CMatrix random_density(int n, Rng& rng, int rank = 0);

/// Random even unital triple with representation dimension <= 4.
Triple random_even_triple(Rng& rng);
/// Random unital triple (even or not) with representation dimension <= 4.
Triple random_triple(Rng& rng);

/// Random density state of the triple's state size.
State random_state(const Triple& t, Rng& rng);

}  // namespace specdist

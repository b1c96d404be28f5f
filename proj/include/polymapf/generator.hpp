#pragma once

#include <cstdint>
#include <random>

#include "polymapf/instance.hpp"

namespace polymapf {

// Grows a connected, hole-free polyomino inside a width-by-height box until
// it reaches round(fill * width * height) cells (at least one). Frontier
// cells whose addition would enclose a hole are set aside until growth
// reaches them from another side; if the frontier empties before the target
// size, growth restarts from a fresh random cell. fill = 1 yields the full
// rectangle. Raises Error(ResourceCap, "GenerationExhausted") after 64
// failed restarts. Deterministic for a given generator state.
DiscretizedPolygon random_polyomino(std::mt19937_64& rng, int width,
                                    int height, double fill);

// Seeded end-to-end generation: one random polyomino plus k robots with
// pairwise-distinct starts, pairwise-distinct targets, default parameters,
// and no budget. Raises Error(ResourceCap, "GenerationExhausted") when the
// polyomino has fewer than k vertices.
Instance generate_random(uint64_t seed, int width, int height, double fill,
                         int k);

// One property-campaign fixture: bounding box sampled up to
// max_size x max_size, fill in [0.4, 1], and between 1 and max_terminals
// distinct terminals (clamped to the vertex count). Fully determined by the
// seed.
std::pair<DiscretizedPolygon, std::vector<GridVertex>> campaign_fixture(
    uint64_t seed, int max_size, int max_terminals);

}  // namespace polymapf

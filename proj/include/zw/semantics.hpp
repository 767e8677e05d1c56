#pragma once

#include "zw/diagram.hpp"
#include "zw/tensor.hpp"

#include <cstdint>
#include <optional>

namespace zw {

inline constexpr int kDefaultLegCap = 16;

struct EvalOptions {
  int leg_cap = kDefaultLegCap;
  // When set, pairs are contracted in a seeded random order instead of greedily.
  std::optional<std::uint64_t> shuffle_seed;
};

// All-legs-out tensor of a single generator, legs in port order.
Tensor generator_tensor(const VertexKind& kind, const Ring& ring = Ring::integers());

// The cup/cap metric |00> + |11>.
Tensor wire_tensor(const Ring& ring = Ring::integers());

Tensor eval(const Diagram& g, const Ring& ring = Ring::integers(), const EvalOptions& opts = {});

} // namespace zw

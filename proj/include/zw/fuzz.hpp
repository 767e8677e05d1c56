#pragma once

#include "zw/diagram.hpp"
#include "zw/tensor.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace zw {

struct RandomDiagramOptions {
  int max_vertices = 10;
  int max_arity = 4;
  int max_legs = 6;
  bool crossings = true;
  bool bare_wires = true;
  bool loops = true;
};

// Uniform vertex count in [0, max_vertices], kinds among White/Black/Crossing,
// arities in [0, max_arity], a random perfect matching of the non-boundary
// ports, shuffled boundary order and random directions.
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts = {});

struct FuzzConfig {
  int count = 1000;
  std::uint64_t seed = 0;
  RandomDiagramOptions shape;
  Ring ring = Ring::integers();
};

struct FuzzFailure {
  int index = 0;
  std::string input;  // JSON graph
  std::string reason;
};

struct FuzzReport {
  int total = 0;
  int normalized = 0;
  int oracle_equal = 0;
  std::vector<FuzzFailure> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
  [[nodiscard]] std::string summary() const;
};

// Diagram i is drawn from a generator seeded with (seed, i), so results are
// independent of evaluation order.
Diagram fuzz_diagram(const FuzzConfig& cfg, int index);

FuzzReport run_fuzz(const FuzzConfig& cfg);

} // namespace zw

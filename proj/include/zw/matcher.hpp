#pragma once

#include "zw/diagram.hpp"
#include "zw/rules.hpp"

#include <vector>

namespace zw {

inline constexpr int kMaxPatternVertices = 6;

struct Match {
  // lhs vertex (by position in lhs.vertices()) -> host vertex id.
  std::vector<int> vertex_map;
  // lhs vertex position -> (lhs port -> host port index).
  std::vector<std::vector<int>> port_map;
  // lhs boundary position -> host port playing that leg.
  std::vector<Port> boundary_image;

  bool operator==(const Match&) const = default;
};

// All boundary-respecting embeddings of rule.lhs into host, one per image
// (deduplicated up to lhs automorphism). Throws InvalidArgument when the lhs is
// empty, disconnected, larger than kMaxPatternVertices or has a bare wire.
std::vector<Match> find_matches(const Rule& rule, const Diagram& host);

// Excise the matched lhs image and glue in the rhs. Throws InvalidArgument on a
// stale match.
Diagram apply(const Rule& rule, const Diagram& host, const Match& match);

// Image key used for deduplication: sorted host vertex ids then sorted leg ports.
std::pair<std::vector<int>, std::vector<Port>> match_key(const Match& m);

} // namespace zw

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace zw {

enum class Color : std::uint8_t { White, Black, Crossing };

using Strand = std::pair<int, int>;

struct VertexKind {
  Color color = Color::Black;
  int arity = 0;
  // Only meaningful for crossings. Kept as given so that serialization is
  // bit-exact; use same_shape() for structural comparison.
  std::array<Strand, 2> strands{{{0, 1}, {2, 3}}};

  static VertexKind white(int arity) { return {Color::White, arity, {}}; }
  static VertexKind black(int arity) { return {Color::Black, arity, {}}; }
  static VertexKind crossing(std::array<Strand, 2> s = {{{0, 1}, {2, 3}}}) {
    return {Color::Crossing, 4, s};
  }

  // Ports of the crossing strand carrying port p.
  [[nodiscard]] int strand_of(int port) const;
  [[nodiscard]] int strand_partner(int port) const;
  [[nodiscard]] bool same_shape(const VertexKind& o) const;
  [[nodiscard]] std::string describe() const;

  bool operator==(const VertexKind&) const = default;
};

struct Vertex {
  int id = 0;
  VertexKind kind;
  bool operator==(const Vertex&) const = default;
};

inline constexpr int kBoundary = -1;

// A port is either (vertex id, port index) or (kBoundary, boundary position).
struct Port {
  int vertex = kBoundary;
  int index = 0;

  static Port boundary(int position) { return {kBoundary, position}; }
  [[nodiscard]] bool is_boundary() const noexcept { return vertex == kBoundary; }

  auto operator<=>(const Port&) const = default;
};

struct Edge {
  Port a;
  Port b;
  bool operator==(const Edge&) const = default;
};

enum class Direction : std::uint8_t { In, Out };

class Diagram {
public:
  Diagram() = default;

  int add_vertex(VertexKind kind);
  void add_vertex_with_id(int id, VertexKind kind);
  int add_boundary(Direction dir);
  void connect(Port a, Port b);
  void add_loops(int n) { loops_ += n; }
  void set_directions(const std::vector<Direction>& dirs);

  [[nodiscard]] const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<Direction>& boundary() const noexcept { return boundary_; }
  [[nodiscard]] int loops() const noexcept { return loops_; }
  [[nodiscard]] int legs() const noexcept { return static_cast<int>(boundary_.size()); }
  [[nodiscard]] int next_id() const noexcept { return next_id_; }

  [[nodiscard]] const Vertex* find(int id) const;
  [[nodiscard]] std::optional<std::size_t> index_of(int id) const;
  [[nodiscard]] std::size_t count(Color c) const;

  bool operator==(const Diagram&) const = default;

private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Direction> boundary_;
  int loops_ = 0;
  int next_id_ = 0;
};

// Partner lookup over the edges of a diagram.
class Wiring {
public:
  explicit Wiring(const Diagram& g);

  [[nodiscard]] std::optional<Port> find_partner(Port p) const;
  [[nodiscard]] Port partner(Port p) const;

private:
  static std::int64_t key(Port p) {
    return (static_cast<std::int64_t>(p.vertex) << 32) ^ static_cast<std::uint32_t>(p.index);
  }
  std::unordered_map<std::int64_t, Port> partner_;
};

// Builds edges by chaining pass-through junctions between real port ends.
// Each junction must end up with exactly two links; closed chains of
// junctions become loops.
class WireBuilder {
public:
  int terminal(Port p);
  int junction();
  void link(int a, int b);
  void resolve_into(Diagram& g) const;

private:
  struct Node {
    bool is_terminal = false;
    Port port;
  };
  std::vector<Node> nodes_;
  std::vector<std::array<int, 2>> links_;
};

std::vector<std::string> validate(const Diagram& g);

// Throws ValidationError when validate() reports anything.
void require_valid(const Diagram& g);

// g's residual boundary first, then h's. h's vertex ids are shifted past g's.
Diagram plug(const Diagram& g, const Diagram& h, const std::vector<std::pair<int, int>>& pairing);

// Replace vertex `id` by `replacement`, whose boundary position i is glued to
// port i of the vertex. Replacement vertices receive fresh ids.
Diagram substitute(const Diagram& g, int id, const Diagram& replacement);

// Same diagram with every edge oriented (smaller port first) and edges sorted.
Diagram with_sorted_edges(const Diagram& g);

// Vertex-disjoint diagram with the same boundary but ids renumbered 0..n-1 in order.
Diagram renumbered(const Diagram& g);

} // namespace zw

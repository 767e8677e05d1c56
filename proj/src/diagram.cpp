#include "zw/diagram.hpp"

#include "zw/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace zw {

int VertexKind::strand_of(int port) const {
  if (strands[0].first == port || strands[0].second == port) {
    return 0;
  }
  return 1;
}

int VertexKind::strand_partner(int port) const {
  const auto& s = strands[static_cast<std::size_t>(strand_of(port))];
  return s.first == port ? s.second : s.first;
}

bool VertexKind::same_shape(const VertexKind& o) const {
  if (color != o.color || arity != o.arity) {
    return false;
  }
  if (color != Color::Crossing) {
    return true;
  }
  auto norm = [](std::array<Strand, 2> s) {
    for (auto& p : s) {
      if (p.first > p.second) {
        std::swap(p.first, p.second);
      }
    }
    std::sort(s.begin(), s.end());
    return s;
  };
  return norm(strands) == norm(o.strands);
}

std::string VertexKind::describe() const {
  switch (color) {
  case Color::White:
    return "White-" + std::to_string(arity);
  case Color::Black:
    return "Black-" + std::to_string(arity);
  case Color::Crossing:
    break;
  }
  return "Crossing";
}

int Diagram::add_vertex(VertexKind kind) {
  const int id = next_id_;
  add_vertex_with_id(id, kind);
  return id;
}

void Diagram::add_vertex_with_id(int id, VertexKind kind) {
  vertices_.push_back({id, kind});
  next_id_ = std::max(next_id_, id + 1);
}

int Diagram::add_boundary(Direction dir) {
  boundary_.push_back(dir);
  return static_cast<int>(boundary_.size()) - 1;
}

void Diagram::connect(Port a, Port b) { edges_.push_back({a, b}); }

void Diagram::set_directions(const std::vector<Direction>& dirs) {
  if (dirs.size() != boundary_.size()) {
    throw InvalidArgument("direction list does not match boundary size");
  }
  boundary_ = dirs;
}

const Vertex* Diagram::find(int id) const {
  for (const auto& v : vertices_) {
    if (v.id == id) {
      return &v;
    }
  }
  return nullptr;
}

std::optional<std::size_t> Diagram::index_of(int id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Diagram::count(Color c) const {
  return static_cast<std::size_t>(std::count_if(
      vertices_.begin(), vertices_.end(), [c](const Vertex& v) { return v.kind.color == c; }));
}

Wiring::Wiring(const Diagram& g) {
  for (const auto& e : g.edges()) {
    partner_[key(e.a)] = e.b;
    partner_[key(e.b)] = e.a;
  }
}

std::optional<Port> Wiring::find_partner(Port p) const {
  auto it = partner_.find(key(p));
  if (it == partner_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Port Wiring::partner(Port p) const {
  auto q = find_partner(p);
  if (!q) {
    throw InvalidArgument("port has no edge");
  }
  return *q;
}

int WireBuilder::terminal(Port p) {
  nodes_.push_back({true, p});
  return static_cast<int>(nodes_.size()) - 1;
}

int WireBuilder::junction() {
  nodes_.push_back({false, {}});
  return static_cast<int>(nodes_.size()) - 1;
}

void WireBuilder::link(int a, int b) { links_.push_back({a, b}); }

void WireBuilder::resolve_into(Diagram& g) const {
  // Half-edge h = 2 * link + side sits at node links_[link][side].
  std::vector<std::vector<int>> at(nodes_.size());
  for (std::size_t l = 0; l < links_.size(); ++l) {
    at[static_cast<std::size_t>(links_[l][0])].push_back(static_cast<int>(2 * l));
    at[static_cast<std::size_t>(links_[l][1])].push_back(static_cast<int>(2 * l + 1));
  }
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const std::size_t want = nodes_[n].is_terminal ? 1 : 2;
    if (at[n].size() != want) {
      throw InvalidArgument(nodes_[n].is_terminal ? "port is not wired exactly once"
                                                  : "wire junction is not a pass-through");
    }
  }
  auto node_of = [&](int h) {
    return links_[static_cast<std::size_t>(h / 2)][static_cast<std::size_t>(h % 2)];
  };
  std::vector<bool> used(links_.size(), false);
  // Follow from half-edge h (leaving its node) to the far terminal, or back to start.
  auto walk = [&](int h) {
    for (;;) {
      used[static_cast<std::size_t>(h / 2)] = true;
      const int far = h ^ 1;
      const int n = node_of(far);
      if (nodes_[static_cast<std::size_t>(n)].is_terminal) {
        return n;
      }
      const auto& hs = at[static_cast<std::size_t>(n)];
      const int next = hs[0] == far ? hs[1] : hs[0];
      if (used[static_cast<std::size_t>(next / 2)]) {
        return -1;
      }
      h = next;
    }
  };
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!nodes_[n].is_terminal) {
      continue;
    }
    const int h = at[n][0];
    if (used[static_cast<std::size_t>(h / 2)]) {
      continue;
    }
    const int end = walk(h);
    g.connect(nodes_[n].port, nodes_[static_cast<std::size_t>(end)].port);
  }
  for (std::size_t l = 0; l < links_.size(); ++l) {
    if (!used[l]) {
      walk(static_cast<int>(2 * l));
      g.add_loops(1);
    }
  }
}

std::vector<std::string> validate(const Diagram& g) {
  std::vector<std::string> out;
  std::set<int> ids;
  for (const auto& v : g.vertices()) {
    if (!ids.insert(v.id).second) {
      out.push_back("duplicate vertex id " + std::to_string(v.id));
    }
    if (v.id < 0) {
      out.push_back("negative vertex id " + std::to_string(v.id));
    }
    if (v.kind.arity < 0) {
      out.push_back("negative arity on vertex " + std::to_string(v.id));
    }
    if (v.kind.color == Color::Crossing) {
      if (v.kind.arity != 4) {
        out.push_back("crossing must have 4 ports (vertex " + std::to_string(v.id) + ")");
      } else {
        std::set<int> seen;
        for (const auto& s : v.kind.strands) {
          seen.insert(s.first);
          seen.insert(s.second);
        }
        if (seen != std::set<int>{0, 1, 2, 3}) {
          out.push_back("crossing strands must partition ports 0-3 (vertex " +
                        std::to_string(v.id) + ")");
        }
      }
    }
  }
  if (g.loops() < 0) {
    out.push_back("negative loop count");
  }

  std::map<Port, int> uses;
  auto describe = [](Port p) {
    return p.is_boundary() ? "boundary " + std::to_string(p.index)
                           : std::to_string(p.vertex) + ":" + std::to_string(p.index);
  };
  for (const auto& e : g.edges()) {
    for (Port p : {e.a, e.b}) {
      if (p.is_boundary()) {
        if (p.index < 0 || p.index >= g.legs()) {
          out.push_back("unknown boundary position " + std::to_string(p.index));
          continue;
        }
      } else {
        const Vertex* v = g.find(p.vertex);
        if (v == nullptr) {
          out.push_back("edge references unknown vertex " + std::to_string(p.vertex));
          continue;
        }
        if (p.index < 0 || p.index >= v->kind.arity) {
          out.push_back("port index out of range " + describe(p));
          continue;
        }
      }
      if (++uses[p] == 2) {
        out.push_back("port used by more than one edge " + describe(p));
      }
    }
  }
  for (const auto& v : g.vertices()) {
    for (int i = 0; i < v.kind.arity; ++i) {
      if (!uses.contains(Port{v.id, i})) {
        out.push_back("dangling port " + describe(Port{v.id, i}));
      }
    }
  }
  for (int i = 0; i < g.legs(); ++i) {
    if (!uses.contains(Port::boundary(i))) {
      out.push_back("unattached boundary port " + std::to_string(i));
    }
  }
  return out;
}

void require_valid(const Diagram& g) {
  auto report = validate(g);
  if (!report.empty()) {
    throw ValidationError(std::move(report));
  }
}

namespace {

void check_pairing(const Diagram& g, const Diagram& h,
                   const std::vector<std::pair<int, int>>& pairing) {
  std::set<int> ga;
  std::set<int> hb;
  for (auto [a, b] : pairing) {
    if (a < 0 || a >= g.legs() || b < 0 || b >= h.legs()) {
      throw InvalidArgument("plug pairing references an unknown boundary port");
    }
    if (!ga.insert(a).second || !hb.insert(b).second) {
      throw InvalidArgument("plug pairing uses a boundary port twice");
    }
  }
}

} // namespace

Diagram plug(const Diagram& g, const Diagram& h, const std::vector<std::pair<int, int>>& pairing) {
  check_pairing(g, h, pairing);
  const int offset = g.next_id();
  Diagram out;
  for (const auto& v : g.vertices()) {
    out.add_vertex_with_id(v.id, v.kind);
  }
  for (const auto& v : h.vertices()) {
    out.add_vertex_with_id(v.id + offset, v.kind);
  }

  std::vector<int> g_pair(static_cast<std::size_t>(g.legs()), -1);
  std::vector<int> h_pair(static_cast<std::size_t>(h.legs()), -1);
  for (auto [a, b] : pairing) {
    g_pair[static_cast<std::size_t>(a)] = b;
    h_pair[static_cast<std::size_t>(b)] = a;
  }
  std::vector<int> g_pos(g_pair.size(), -1);
  std::vector<int> h_pos(h_pair.size(), -1);
  for (std::size_t i = 0; i < g_pair.size(); ++i) {
    if (g_pair[i] < 0) {
      g_pos[i] = out.add_boundary(g.boundary()[i]);
    }
  }
  for (std::size_t i = 0; i < h_pair.size(); ++i) {
    if (h_pair[i] < 0) {
      h_pos[i] = out.add_boundary(h.boundary()[i]);
    }
  }

  WireBuilder wb;
  std::vector<int> g_junction(g_pair.size());
  std::vector<int> h_junction(h_pair.size());
  for (auto& j : g_junction) {
    j = wb.junction();
  }
  for (auto& j : h_junction) {
    j = wb.junction();
  }
  auto end_of = [&](Port p, int shift, const std::vector<int>& pair, const std::vector<int>& pos,
                    const std::vector<int>& junction) {
    if (!p.is_boundary()) {
      return wb.terminal({p.vertex + shift, p.index});
    }
    const auto i = static_cast<std::size_t>(p.index);
    if (pair[i] >= 0) {
      return junction[i];
    }
    const int j = junction[i];
    wb.link(j, wb.terminal(Port::boundary(pos[i])));
    return j;
  };
  for (const auto& e : g.edges()) {
    wb.link(end_of(e.a, 0, g_pair, g_pos, g_junction), end_of(e.b, 0, g_pair, g_pos, g_junction));
  }
  for (const auto& e : h.edges()) {
    wb.link(end_of(e.a, offset, h_pair, h_pos, h_junction),
            end_of(e.b, offset, h_pair, h_pos, h_junction));
  }
  for (auto [a, b] : pairing) {
    wb.link(g_junction[static_cast<std::size_t>(a)], h_junction[static_cast<std::size_t>(b)]);
  }
  wb.resolve_into(out);
  out.add_loops(g.loops() + h.loops());
  return out;
}

Diagram substitute(const Diagram& g, int id, const Diagram& replacement) {
  const Vertex* target = g.find(id);
  if (target == nullptr) {
    throw InvalidArgument("substitute: unknown vertex " + std::to_string(id));
  }
  if (target->kind.arity != replacement.legs()) {
    throw InvalidArgument("substitute: replacement boundary does not match vertex arity");
  }
  const int offset = g.next_id();
  Diagram out;
  for (const auto& v : g.vertices()) {
    if (v.id != id) {
      out.add_vertex_with_id(v.id, v.kind);
    }
  }
  for (const auto& v : replacement.vertices()) {
    out.add_vertex_with_id(v.id + offset, v.kind);
  }
  for (auto dir : g.boundary()) {
    out.add_boundary(dir);
  }

  WireBuilder wb;
  std::vector<int> socket(static_cast<std::size_t>(replacement.legs()));
  std::vector<int> plug_end(socket.size());
  for (std::size_t i = 0; i < socket.size(); ++i) {
    socket[i] = wb.junction();
    plug_end[i] = wb.junction();
    wb.link(socket[i], plug_end[i]);
  }
  for (const auto& e : g.edges()) {
    auto end = [&](Port p) {
      return p.vertex == id ? socket[static_cast<std::size_t>(p.index)] : wb.terminal(p);
    };
    wb.link(end(e.a), end(e.b));
  }
  for (const auto& e : replacement.edges()) {
    auto end = [&](Port p) {
      return p.is_boundary() ? plug_end[static_cast<std::size_t>(p.index)]
                             : wb.terminal({p.vertex + offset, p.index});
    };
    wb.link(end(e.a), end(e.b));
  }
  wb.resolve_into(out);
  out.add_loops(g.loops() + replacement.loops());
  return out;
}

Diagram with_sorted_edges(const Diagram& g) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) {
    if (e.b < e.a) {
      std::swap(e.a, e.b);
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  Diagram out;
  for (const auto& v : g.vertices()) {
    out.add_vertex_with_id(v.id, v.kind);
  }
  for (auto d : g.boundary()) {
    out.add_boundary(d);
  }
  for (const auto& e : edges) {
    out.connect(e.a, e.b);
  }
  out.add_loops(g.loops());
  return out;
}

Diagram renumbered(const Diagram& g) {
  std::map<int, int> fresh;
  Diagram out;
  for (const auto& v : g.vertices()) {
    fresh[v.id] = out.add_vertex(v.kind);
  }
  for (auto dir : g.boundary()) {
    out.add_boundary(dir);
  }
  auto map = [&](Port p) { return p.is_boundary() ? p : Port{fresh.at(p.vertex), p.index}; };
  for (const auto& e : g.edges()) {
    out.connect(map(e.a), map(e.b));
  }
  out.add_loops(g.loops());
  return out;
}

} // namespace zw

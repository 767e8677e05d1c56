#include "zw/normalizer.hpp"

#include "zw/error.hpp"
#include "zw/io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zw {

namespace {

constexpr int kMaxOpenEnds = 40;

// Ports of a bare boundary-to-boundary wire treated as a pseudo-generator.
constexpr int kWirePortBase = -1000000;

struct Item {
  bool is_vertex = true;
  int id = 0; // vertex id, or edge index for a bare wire
  std::vector<Port> ports;
};

struct Block {
  NormalForm nf;
  std::vector<Port> near; // ports of processed items carried by the block's legs
};

void record(RewriteTrace* trace, const std::string& name, Diagram before, Diagram after) {
  if (trace != nullptr) {
    trace->steps.push_back({name, std::move(before), std::move(after)});
  }
}

NormalForm generator_nf_in(const VertexKind& kind, const Ring& ring) {
  return canonical(generator_nf(kind), ring);
}

// Constructive completeness: fold generator normal forms along the wiring.
class Folder {
public:
  Folder(const Diagram& g, const Ring& ring, RewriteTrace* trace)
      : g_(g), ring_(ring), trace_(trace), wiring_(g) {
    for (const auto& v : g.vertices()) {
      Item it{true, v.id, {}};
      for (int i = 0; i < v.kind.arity; ++i) {
        it.ports.push_back({v.id, i});
      }
      items_.push_back(std::move(it));
    }
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const auto& edge = g.edges()[e];
      if (edge.a.is_boundary() && edge.b.is_boundary()) {
        const int pseudo = kWirePortBase - static_cast<int>(e);
        items_.push_back({false, static_cast<int>(e), {{pseudo, 0}, {pseudo, 1}}});
      }
    }
    done_.assign(items_.size(), false);
    loops_ = g.loops();
  }

  NormalForm run() {
    if (loops_ > 0) {
      Diagram before = snapshot();
      BigInt factor = 1;
      factor <<= loops_;
      blocks_.push_back({canonical(NormalForm{0, {{false, factor, ""}}}, ring_), {}});
      loops_ = 0;
      record(trace_, "trace", std::move(before), snapshot());
    }
    for (std::size_t n = 0; n < items_.size(); ++n) {
      const std::size_t x = pick();
      const Item& item = items_[x];
      Diagram before = snapshot();
      NormalForm gen = item.is_vertex ? generator_nf_in(g_.find(item.id)->kind, ring_)
                                      : canonical(wire_nf(), ring_);
      done_[x] = true;
      if (item.is_vertex) {
        processed_.insert(item.id);
      }
      blocks_.push_back({std::move(gen), item.ports});
      record(trace_, "generator-nf", std::move(before), snapshot());
      if (blocks_.size() == 2) {
        merge();
      }
      trace_internal();
      if (blocks_[0].nf.legs > kMaxOpenEnds) {
        throw ResourceError("normalization exceeded " + std::to_string(kMaxOpenEnds) + " open ends");
      }
    }
    if (blocks_.empty()) {
      blocks_.push_back({canonical(NormalForm{0, {{false, 1, ""}}}, ring_), {}});
    }
    const Block& last = blocks_[0];
    std::vector<int> order(static_cast<std::size_t>(g_.legs()), -1);
    for (std::size_t k = 0; k < last.near.size(); ++k) {
      order[static_cast<std::size_t>(partner(last.near[k]).index)] = static_cast<int>(k);
    }
    return canonical(permute_legs(last.nf, order), ring_);
  }

  // Diagram for the current state: unprocessed vertices plus one normal-form
  // subdiagram per block.
  Diagram snapshot() const {
    if (trace_ == nullptr) {
      return {};
    }
    const bool finished = std::all_of(done_.begin(), done_.end(), [](bool b) { return b; });
    if (finished && loops_ == 0 && blocks_.size() == 1 &&
        std::all_of(blocks_[0].near.begin(), blocks_[0].near.end(),
                    [&](Port p) { return partner(p).is_boundary(); })) {
      return nf_to_diagram_with(sorted_block(blocks_[0]).nf, g_.boundary());
    }
    Diagram out;
    for (const auto& v : g_.vertices()) {
      if (!processed_.contains(v.id)) {
        out.add_vertex_with_id(v.id, v.kind);
      }
    }
    for (auto d : g_.boundary()) {
      out.add_boundary(d);
    }
    WireBuilder wb;
    std::map<Port, int> leg_junction;
    int base = g_.next_id();
    for (const auto& raw : blocks_) {
      const Block b = sorted_block(raw);
      const Diagram d = nf_to_diagram(b.nf);
      for (const auto& v : d.vertices()) {
        out.add_vertex_with_id(v.id + base, v.kind);
      }
      std::vector<int> junction(b.near.size());
      for (std::size_t k = 0; k < b.near.size(); ++k) {
        junction[k] = wb.junction();
        leg_junction[b.near[k]] = junction[k];
      }
      for (const auto& e : d.edges()) {
        auto end = [&](Port p) {
          return p.is_boundary() ? junction[static_cast<std::size_t>(p.index)]
                                 : wb.terminal({p.vertex + base, p.index});
        };
        wb.link(end(e.a), end(e.b));
      }
      base += d.next_id();
    }
    for (const auto& [near, j] : leg_junction) {
      const Port far = partner(near);
      auto other = leg_junction.find(far);
      if (other == leg_junction.end()) {
        wb.link(j, wb.terminal(far));
      } else if (near < far) {
        wb.link(j, other->second);
      }
    }
    for (std::size_t e = 0; e < g_.edges().size(); ++e) {
      const auto& edge = g_.edges()[e];
      auto processed = [&](Port p) { return !p.is_boundary() && processed_.contains(p.vertex); };
      if (processed(edge.a) || processed(edge.b)) {
        continue;
      }
      if (edge.a.is_boundary() && edge.b.is_boundary() && wire_done(static_cast<int>(e))) {
        continue;
      }
      wb.link(wb.terminal(edge.a), wb.terminal(edge.b));
    }
    wb.resolve_into(out);
    out.add_loops(loops_);
    return with_sorted_edges(out);
  }

private:
  Port partner(Port p) const {
    if (p.vertex <= kWirePortBase) {
      const auto& e = g_.edges()[static_cast<std::size_t>(kWirePortBase - p.vertex)];
      return p.index == 0 ? e.a : e.b;
    }
    return wiring_.partner(p);
  }

  bool wire_done(int edge) const {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (!items_[i].is_vertex && items_[i].id == edge) {
        return done_[i];
      }
    }
    return false;
  }

  Block sorted_block(const Block& b) const {
    std::vector<int> order(b.near.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      order[k] = static_cast<int>(k);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return partner(b.near[static_cast<std::size_t>(x)]) < partner(b.near[static_cast<std::size_t>(y)]);
    });
    Block out{permute_legs(b.nf, order), {}};
    for (int k : order) {
      out.near.push_back(b.near[static_cast<std::size_t>(k)]);
    }
    return out;
  }

  // Next item: the one whose absorption leaves the fewest open ends.
  std::size_t pick() const {
    std::set<Port> open;
    for (const auto& b : blocks_) {
      open.insert(b.near.begin(), b.near.end());
    }
    std::size_t best = items_.size();
    std::tuple<int, int> best_score{};
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (done_[i]) {
        continue;
      }
      int conn = 0;
      int self = 0;
      for (const Port p : items_[i].ports) {
        const Port q = partner(p);
        if (open.contains(q)) {
          ++conn;
        } else if (!q.is_boundary() && q.vertex == p.vertex) {
          ++self;
        }
      }
      const int fresh = static_cast<int>(items_[i].ports.size()) - conn - self;
      const std::tuple<int, int> score{fresh - conn, conn > 0 ? 0 : 1};
      if (best == items_.size() || score < best_score) {
        best = i;
        best_score = score;
      }
    }
    return best;
  }

  void merge() {
    Block a = std::move(blocks_[0]);
    Block b = std::move(blocks_[1]);
    blocks_.clear();
    Diagram before;
    std::optional<std::pair<int, int>> first;
    for (std::size_t k = 0; k < a.near.size() && !first; ++k) {
      const Port far = partner(a.near[k]);
      auto it = std::find(b.near.begin(), b.near.end(), far);
      if (it != b.near.end()) {
        first = {static_cast<int>(k), static_cast<int>(it - b.near.begin())};
      }
    }
    blocks_.push_back(std::move(a));
    blocks_.push_back(std::move(b));
    before = snapshot();
    Block& x = blocks_[0];
    Block& y = blocks_[1];
    Block merged;
    if (!first) {
      merged.nf = canonical(juxtapose(x.nf, y.nf), ring_);
      merged.near = x.near;
      merged.near.insert(merged.near.end(), y.near.begin(), y.near.end());
    } else {
      merged.nf = plug_normal_forms(x.nf, y.nf, {*first}, ring_);
      for (std::size_t k = 0; k < x.near.size(); ++k) {
        if (static_cast<int>(k) != first->first) {
          merged.near.push_back(x.near[k]);
        }
      }
      for (std::size_t k = 0; k < y.near.size(); ++k) {
        if (static_cast<int>(k) != first->second) {
          merged.near.push_back(y.near[k]);
        }
      }
    }
    const bool zero = merged.nf.terms.empty();
    blocks_.clear();
    blocks_.push_back(std::move(merged));
    record(trace_, zero ? "absorption" : "plugging", std::move(before), snapshot());
  }

  void trace_internal() {
    for (;;) {
      Block& b = blocks_[0];
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      for (std::size_t k = 0; k < b.near.size() && !pair; ++k) {
        const Port far = partner(b.near[k]);
        for (std::size_t l = k + 1; l < b.near.size(); ++l) {
          if (b.near[l] == far) {
            pair = {k, l};
            break;
          }
        }
      }
      if (!pair) {
        return;
      }
      Diagram before = snapshot();
      b.nf = trace_ends(b.nf, static_cast<int>(pair->first), static_cast<int>(pair->second), ring_);
      b.near.erase(b.near.begin() + static_cast<long>(pair->second));
      b.near.erase(b.near.begin() + static_cast<long>(pair->first));
      record(trace_, "trace", std::move(before), snapshot());
    }
  }

  const Diagram& g_;
  Ring ring_;
  RewriteTrace* trace_;
  Wiring wiring_;
  std::vector<Item> items_;
  std::vector<bool> done_;
  std::set<int> processed_;
  std::vector<Block> blocks_;
  int loops_ = 0;
};

} // namespace

Diagram nf_to_diagram_with(const NormalForm& nf, const std::vector<Direction>& dirs) {
  Diagram d = nf_to_diagram(nf);
  d.set_directions(dirs);
  return d;
}

Diagram eliminate_crossings(const Diagram& g, RewriteTrace* trace) {
  Diagram cur = g;
  for (;;) {
    auto it = std::find_if(cur.vertices().begin(), cur.vertices().end(),
                           [](const Vertex& v) { return v.kind.color == Color::Crossing; });
    if (it == cur.vertices().end()) {
      return cur;
    }
    const Diagram replacement = nf_to_diagram(generator_nf(it->kind));
    Diagram next = substitute(cur, it->id, replacement);
    if (trace != nullptr) {
      record(trace, "crossing-elim", with_sorted_edges(cur), with_sorted_edges(next));
    }
    cur = std::move(next);
  }
}

Diagram expand_spiders(const Diagram& g, RewriteTrace* trace) {
  Diagram cur = g;
  for (;;) {
    auto it = std::find_if(cur.vertices().begin(), cur.vertices().end(), [](const Vertex& v) {
      return v.kind.color != Color::Crossing && v.kind.arity > 3;
    });
    if (it == cur.vertices().end()) {
      return cur;
    }
    const int k = it->kind.arity;
    const bool black = it->kind.color == Color::Black;
    auto kind = [black](int a) { return black ? VertexKind::black(a) : VertexKind::white(a); };
    Diagram r;
    const int a = r.add_vertex(kind(3));
    const int mid = r.add_vertex(kind(2));
    const int b = r.add_vertex(kind(k - 1));
    r.connect({a, 2}, {mid, 0});
    r.connect({mid, 1}, {b, 0});
    for (int i = 0; i < k; ++i) {
      r.add_boundary(Direction::Out);
    }
    r.connect({a, 0}, Port::boundary(0));
    r.connect({a, 1}, Port::boundary(1));
    for (int i = 2; i < k; ++i) {
      r.connect({b, i - 1}, Port::boundary(i));
    }
    Diagram next = substitute(cur, it->id, r);
    if (trace != nullptr) {
      record(trace,
             std::string(black ? "sp_W" : "sp_Z") + "(2," + std::to_string(k - 2) + ")",
             with_sorted_edges(cur), with_sorted_edges(next));
    }
    cur = std::move(next);
  }
}

NormalizeResult normalize(const Diagram& g, const Ring& ring, const NormalizeOptions& opts) {
  require_valid(g);
  if (g.legs() > opts.leg_cap) {
    throw ResourceError("diagram has " + std::to_string(g.legs()) + " open legs, cap is " +
                        std::to_string(opts.leg_cap));
  }
  NormalizeResult result;
  RewriteTrace trace;
  RewriteTrace* tp = opts.want_trace ? &trace : nullptr;
  const Diagram crossing_free = eliminate_crossings(g, tp);
  const Diagram expanded = expand_spiders(crossing_free, tp);
  Folder folder(expanded, ring, tp);
  result.form = folder.run();
  result.diagram = nf_to_diagram_with(result.form, g.boundary());
  if (opts.want_trace) {
    result.trace = std::move(trace);
  }
  return result;
}

std::string trace_to_jsonl(const RewriteTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    Json j;
    j["step"] = s.step;
    j["before"] = diagram_to_json_value(s.before);
    j["after"] = diagram_to_json_value(s.after);
    out += j.dump();
    out += '\n';
  }
  return out;
}

} // namespace zw

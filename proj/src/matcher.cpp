#include "zw/matcher.hpp"

#include "zw/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zw {

namespace {

struct Step {
  int u;
  int p;
  int v;
  int q;
};

bool compatible(const VertexKind& a, const VertexKind& b) {
  return a.color == b.color && a.arity == b.arity;
}

// The 8 strand-preserving bijections from the ports of crossing `a` to those of `b`.
std::vector<std::vector<int>> crossing_maps(const VertexKind& a, const VertexKind& b) {
  std::vector<std::vector<int>> out;
  for (int t = 0; t < 2; ++t) {
    for (int o0 = 0; o0 < 2; ++o0) {
      for (int o1 = 0; o1 < 2; ++o1) {
        std::vector<int> m(4, -1);
        const auto& s0 = a.strands[0];
        const auto& s1 = a.strands[1];
        const auto& t0 = b.strands[static_cast<std::size_t>(t)];
        const auto& t1 = b.strands[static_cast<std::size_t>(1 - t)];
        m[static_cast<std::size_t>(s0.first)] = o0 == 0 ? t0.first : t0.second;
        m[static_cast<std::size_t>(s0.second)] = o0 == 0 ? t0.second : t0.first;
        m[static_cast<std::size_t>(s1.first)] = o1 == 0 ? t1.first : t1.second;
        m[static_cast<std::size_t>(s1.second)] = o1 == 0 ? t1.second : t1.first;
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

class Matcher {
public:
  Matcher(const Rule& rule, const Diagram& host)
      : lhs_(rule.lhs), host_(host), lw_(rule.lhs), hw_(host) {
    const auto& lv = lhs_.vertices();
    const int k = static_cast<int>(lv.size());
    if (k == 0) {
      throw InvalidArgument("rule `" + rule.name + "` has an empty left-hand side");
    }
    if (k > kMaxPatternVertices) {
      throw InvalidArgument("rule `" + rule.name + "` is outside matcher scope (more than " +
                            std::to_string(kMaxPatternVertices) + " vertices)");
    }
    for (int i = 0; i < k; ++i) {
      lpos_[lv[static_cast<std::size_t>(i)].id] = i;
    }
    for (int b = 0; b < lhs_.legs(); ++b) {
      if (lw_.partner(Port::boundary(b)).is_boundary()) {
        throw InvalidArgument("rule `" + rule.name + "` has a bare wire in its left-hand side");
      }
    }
    // Breadth-first edge order so every step starts at an already mapped vertex.
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::set<std::pair<Port, Port>> recorded;
    std::vector<int> queue{0};
    seen[0] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      const auto& vu = lv[static_cast<std::size_t>(u)];
      for (int p = 0; p < vu.kind.arity; ++p) {
        const Port other = lw_.partner({vu.id, p});
        if (other.is_boundary()) {
          continue;
        }
        const Port self{vu.id, p};
        const auto key = std::minmax(self, other);
        if (!recorded.insert({key.first, key.second}).second) {
          continue;
        }
        const int v = lpos_.at(other.vertex);
        steps_.push_back({u, p, v, other.index});
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          queue.push_back(v);
        }
      }
    }
    if (static_cast<int>(queue.size()) != k) {
      throw InvalidArgument("rule `" + rule.name + "` has a disconnected left-hand side");
    }
    for (std::size_t i = 0; i < host_.vertices().size(); ++i) {
      hpos_[host_.vertices()[i].id] = static_cast<int>(i);
    }
  }

  std::vector<Match> run() {
    const auto& lv = lhs_.vertices();
    const auto& hv = host_.vertices();
    vmap_.assign(lv.size(), -1);
    pmap_.assign(lv.size(), {});
    for (std::size_t i = 0; i < lv.size(); ++i) {
      pmap_[i].assign(static_cast<std::size_t>(lv[i].kind.arity), -1);
    }
    used_v_.assign(hv.size(), false);
    used_p_.assign(hv.size(), {});
    for (std::size_t i = 0; i < hv.size(); ++i) {
      used_p_[i].assign(static_cast<std::size_t>(std::max(hv[i].kind.arity, 0)), false);
    }
    for (std::size_t w = 0; w < hv.size(); ++w) {
      map_vertex(0, static_cast<int>(w), -1, -1, [&] { extend(0); });
    }
    return std::move(found_);
  }

private:
  template <typename F>
  void map_vertex(int v, int w, int q, int qh, F&& next) {
    const auto& lk = lhs_.vertices()[static_cast<std::size_t>(v)].kind;
    const auto& hk = host_.vertices()[static_cast<std::size_t>(w)].kind;
    if (used_v_[static_cast<std::size_t>(w)] || !compatible(lk, hk)) {
      return;
    }
    used_v_[static_cast<std::size_t>(w)] = true;
    vmap_[static_cast<std::size_t>(v)] = w;
    auto& pm = pmap_[static_cast<std::size_t>(v)];
    auto& up = used_p_[static_cast<std::size_t>(w)];
    if (lk.color == Color::Crossing) {
      for (const auto& sigma : crossing_maps(lk, hk)) {
        if (q >= 0 && sigma[static_cast<std::size_t>(q)] != qh) {
          continue;
        }
        for (int i = 0; i < 4; ++i) {
          pm[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)];
          up[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = true;
        }
        next();
        std::fill(pm.begin(), pm.end(), -1);
        std::fill(up.begin(), up.end(), false);
      }
    } else if (q >= 0) {
      pm[static_cast<std::size_t>(q)] = qh;
      up[static_cast<std::size_t>(qh)] = true;
      next();
      pm[static_cast<std::size_t>(q)] = -1;
      up[static_cast<std::size_t>(qh)] = false;
    } else {
      next();
    }
    vmap_[static_cast<std::size_t>(v)] = -1;
    used_v_[static_cast<std::size_t>(w)] = false;
  }

  void extend(std::size_t idx) {
    if (idx == steps_.size()) {
      finish();
      return;
    }
    const Step& s = steps_[idx];
    const int uh = vmap_[static_cast<std::size_t>(s.u)];
    auto& pu = pmap_[static_cast<std::size_t>(s.u)];
    auto& upu = used_p_[static_cast<std::size_t>(uh)];
    const int fixed = pu[static_cast<std::size_t>(s.p)];
    const int arity = static_cast<int>(upu.size());
    for (int ph = 0; ph < arity; ++ph) {
      if (fixed >= 0 ? ph != fixed : upu[static_cast<std::size_t>(ph)]) {
        continue;
      }
      if (fixed < 0) {
        pu[static_cast<std::size_t>(s.p)] = ph;
        upu[static_cast<std::size_t>(ph)] = true;
      }
      const Port hp = hw_.partner({host_.vertices()[static_cast<std::size_t>(uh)].id, ph});
      if (!hp.is_boundary()) {
        const int wh = hpos_.at(hp.vertex);
        const int vh = vmap_[static_cast<std::size_t>(s.v)];
        if (vh >= 0) {
          if (vh == wh) {
            auto& pv = pmap_[static_cast<std::size_t>(s.v)];
            auto& upv = used_p_[static_cast<std::size_t>(wh)];
            const int fv = pv[static_cast<std::size_t>(s.q)];
            if (fv >= 0) {
              if (fv == hp.index) {
                extend(idx + 1);
              }
            } else if (!upv[static_cast<std::size_t>(hp.index)]) {
              pv[static_cast<std::size_t>(s.q)] = hp.index;
              upv[static_cast<std::size_t>(hp.index)] = true;
              extend(idx + 1);
              pv[static_cast<std::size_t>(s.q)] = -1;
              upv[static_cast<std::size_t>(hp.index)] = false;
            }
          }
        } else {
          map_vertex(s.v, wh, s.q, hp.index, [&] { extend(idx + 1); });
        }
      }
      if (fixed < 0) {
        pu[static_cast<std::size_t>(s.p)] = -1;
        upu[static_cast<std::size_t>(ph)] = false;
      }
    }
  }

  void finish() {
    const auto& lv = lhs_.vertices();
    const auto& hv = host_.vertices();
    Match m;
    m.port_map = pmap_;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const auto w = static_cast<std::size_t>(vmap_[i]);
      m.vertex_map.push_back(hv[w].id);
      // Remaining ports carry legs; any assignment is equivalent up to the
      // vertex's port symmetry, so take them in order.
      auto& pm = m.port_map[i];
      std::vector<int> free_ports;
      for (std::size_t h = 0; h < used_p_[w].size(); ++h) {
        if (!used_p_[w][h]) {
          free_ports.push_back(static_cast<int>(h));
        }
      }
      std::size_t next = 0;
      for (auto& x : pm) {
        if (x < 0) {
          x = free_ports[next++];
        }
      }
    }
    for (int b = 0; b < lhs_.legs(); ++b) {
      const Port lp = lw_.partner(Port::boundary(b));
      const auto k = static_cast<std::size_t>(lpos_.at(lp.vertex));
      m.boundary_image.push_back({m.vertex_map[k], m.port_map[k][static_cast<std::size_t>(lp.index)]});
    }
    if (keys_.insert(match_key(m)).second) {
      found_.push_back(std::move(m));
    }
  }

  const Diagram& lhs_;
  const Diagram& host_;
  Wiring lw_;
  Wiring hw_;
  std::map<int, int> lpos_;
  std::map<int, int> hpos_;
  std::vector<Step> steps_;
  std::vector<int> vmap_;
  std::vector<std::vector<int>> pmap_;
  std::vector<bool> used_v_;
  std::vector<std::vector<bool>> used_p_;
  std::set<std::pair<std::vector<int>, std::vector<Port>>> keys_;
  std::vector<Match> found_;
};

} // namespace

std::pair<std::vector<int>, std::vector<Port>> match_key(const Match& m) {
  auto vs = m.vertex_map;
  auto ps = m.boundary_image;
  std::sort(vs.begin(), vs.end());
  std::sort(ps.begin(), ps.end());
  return {vs, ps};
}

std::vector<Match> find_matches(const Rule& rule, const Diagram& host) {
  Matcher matcher(rule, host);
  if (host.vertices().empty()) {
    return {};
  }
  return matcher.run();
}

Diagram apply(const Rule& rule, const Diagram& host, const Match& match) {
  const auto& lv = rule.lhs.vertices();
  auto stale = [](const std::string& why) { return InvalidArgument("stale or invalid match: " + why); };
  if (match.vertex_map.size() != lv.size() || match.port_map.size() != lv.size() ||
      static_cast<int>(match.boundary_image.size()) != rule.lhs.legs()) {
    throw stale("shape does not fit the rule");
  }
  std::map<int, std::size_t> lpos;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    lpos[lv[i].id] = i;
  }
  std::set<int> matched;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const Vertex* hv = host.find(match.vertex_map[i]);
    if (hv == nullptr || !compatible(hv->kind, lv[i].kind) || !matched.insert(hv->id).second) {
      throw stale("vertex " + std::to_string(match.vertex_map[i]));
    }
    auto ports = match.port_map[i];
    std::sort(ports.begin(), ports.end());
    for (int p = 0; p < static_cast<int>(ports.size()); ++p) {
      if (ports[static_cast<std::size_t>(p)] != p || static_cast<int>(ports.size()) != hv->kind.arity) {
        throw stale("port map is not a bijection");
      }
    }
  }
  const Wiring lw(rule.lhs);
  const Wiring hw(host);
  auto image = [&](Port lp) {
    const auto k = lpos.at(lp.vertex);
    return Port{match.vertex_map[k], match.port_map[k][static_cast<std::size_t>(lp.index)]};
  };
  for (const auto& e : rule.lhs.edges()) {
    if (e.a.is_boundary() || e.b.is_boundary()) {
      continue;
    }
    if (hw.find_partner(image(e.a)) != image(e.b)) {
      throw stale("edge missing in host");
    }
  }
  std::map<Port, int> leg_of;
  for (int b = 0; b < rule.lhs.legs(); ++b) {
    const Port expected = image(lw.partner(Port::boundary(b)));
    if (match.boundary_image[static_cast<std::size_t>(b)] != expected) {
      throw stale("boundary image inconsistent");
    }
    leg_of[expected] = b;
  }

  const int offset = host.next_id();
  Diagram out;
  for (const auto& v : host.vertices()) {
    if (!matched.contains(v.id)) {
      out.add_vertex_with_id(v.id, v.kind);
    }
  }
  for (const auto& v : rule.rhs.vertices()) {
    out.add_vertex_with_id(v.id + offset, v.kind);
  }
  for (auto d : host.boundary()) {
    out.add_boundary(d);
  }

  WireBuilder wb;
  std::vector<int> lhs_leg(static_cast<std::size_t>(rule.lhs.legs()));
  std::vector<int> rhs_leg(static_cast<std::size_t>(rule.rhs.legs()));
  for (auto& j : lhs_leg) {
    j = wb.junction();
  }
  for (auto& j : rhs_leg) {
    j = wb.junction();
  }
  for (const auto& e : host.edges()) {
    const bool ia = !e.a.is_boundary() && matched.contains(e.a.vertex) && !leg_of.contains(e.a);
    const bool ib = !e.b.is_boundary() && matched.contains(e.b.vertex) && !leg_of.contains(e.b);
    if (ia || ib) {
      continue;
    }
    auto end = [&](Port p) {
      auto it = leg_of.find(p);
      return it != leg_of.end() ? lhs_leg[static_cast<std::size_t>(it->second)] : wb.terminal(p);
    };
    wb.link(end(e.a), end(e.b));
  }
  for (const auto& e : rule.rhs.edges()) {
    auto end = [&](Port p) {
      return p.is_boundary() ? rhs_leg[static_cast<std::size_t>(p.index)]
                             : wb.terminal({p.vertex + offset, p.index});
    };
    wb.link(end(e.a), end(e.b));
  }
  for (std::size_t b = 0; b < lhs_leg.size(); ++b) {
    wb.link(lhs_leg[b], rhs_leg[static_cast<std::size_t>(rule.boundary_map[b])]);
  }
  wb.resolve_into(out);
  out.add_loops(host.loops() + rule.rhs.loops());
  return out;
}

} // namespace zw

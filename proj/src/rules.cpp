#include "zw/rules.hpp"

#include "zw/error.hpp"

#include <algorithm>
#include <string_view>

namespace zw {

namespace data {
extern const std::vector<std::string_view> kRuleFiles;
}

namespace {

std::string params_name(const std::string& base, std::initializer_list<int> ps) {
  std::string out = base + "(";
  bool first = true;
  for (int p : ps) {
    out += (first ? "" : ",") + std::to_string(p);
    first = false;
  }
  return out + ")";
}

Rule make_rule(std::string name, Diagram lhs, Diagram rhs, std::vector<int> params, bool derived) {
  Rule r;
  r.name = std::move(name);
  r.boundary_map.resize(static_cast<std::size_t>(lhs.legs()));
  for (int i = 0; i < lhs.legs(); ++i) {
    r.boundary_map[static_cast<std::size_t>(i)] = i;
  }
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.params = std::move(params);
  r.derived = derived;
  return r;
}

void leg(Diagram& g, Port p, Direction d) {
  g.connect(p, Port::boundary(g.add_boundary(d)));
}

// Single vertex with legs 0..in-1 as inputs and the rest as outputs.
Diagram single(VertexKind k, int in) {
  Diagram g;
  const int v = g.add_vertex(k);
  for (int i = 0; i < k.arity; ++i) {
    leg(g, {v, i}, i < in ? Direction::In : Direction::Out);
  }
  return g;
}

Diagram fused_pair(Color c, int n, int m) {
  auto kind = [c](int a) { return c == Color::Black ? VertexKind::black(a) : VertexKind::white(a); };
  Diagram g;
  const int a = g.add_vertex(kind(n + 1));
  const int mid = g.add_vertex(kind(2));
  const int b = g.add_vertex(kind(m + 1));
  g.connect({a, n}, {mid, 0});
  g.connect({mid, 1}, {b, 0});
  for (int i = 0; i < n; ++i) {
    leg(g, {a, i}, Direction::In);
  }
  for (int j = 1; j <= m; ++j) {
    leg(g, {b, j}, Direction::Out);
  }
  return g;
}

// Unit of the black monoid: unary black followed by binary black. Returns the free end.
Port black_unit(Diagram& g) {
  const int u = g.add_vertex(VertexKind::black(1));
  const int c = g.add_vertex(VertexKind::black(2));
  g.connect({u, 0}, {c, 0});
  return {c, 1};
}

} // namespace

Rule spider_w(int n, int m) {
  return make_rule(params_name("sp_W", {n, m}), fused_pair(Color::Black, n, m),
                   single(VertexKind::black(n + m), n), {n, m}, false);
}

Rule spider_z(int n, int m) {
  return make_rule(params_name("sp_Z", {n, m}), fused_pair(Color::White, n, m),
                   single(VertexKind::white(n + m), n), {n, m}, false);
}

Rule phase(int n) {
  Diagram lhs;
  {
    const int w = lhs.add_vertex(VertexKind::white(n));
    const int s = lhs.add_vertex(VertexKind::white(2));
    lhs.connect({s, 1}, {w, 0});
    leg(lhs, {s, 0}, Direction::In);
    for (int k = 1; k < n; ++k) {
      leg(lhs, {w, k}, k == 1 ? Direction::In : Direction::Out);
    }
  }
  Diagram rhs;
  {
    const int w = rhs.add_vertex(VertexKind::white(n));
    const int s = rhs.add_vertex(VertexKind::white(2));
    rhs.connect({s, 1}, {w, 1});
    leg(rhs, {w, 0}, Direction::In);
    leg(rhs, {s, 0}, Direction::In);
    for (int k = 2; k < n; ++k) {
      leg(rhs, {w, k}, Direction::Out);
    }
  }
  return make_rule(params_name("ph", {n}), lhs, rhs, {n}, true);
}

// Binary `outer` after binary `inner` on leg 0 of an n-ary `body`, versus
// `inner` on leg 0 and `outer` on every other leg.
static Rule automorphism(const std::string& name, VertexKind body, VertexKind inner, VertexKind outer,
                         int n) {
  Diagram lhs;
  {
    const int v = lhs.add_vertex(body);
    const int a = lhs.add_vertex(inner);
    const int b = lhs.add_vertex(outer);
    lhs.connect({v, 0}, {a, 0});
    lhs.connect({a, 1}, {b, 0});
    for (int k = 1; k < n; ++k) {
      leg(lhs, {v, k}, Direction::In);
    }
    leg(lhs, {b, 1}, Direction::Out);
  }
  Diagram rhs;
  {
    const int v = rhs.add_vertex(body);
    const int a = rhs.add_vertex(inner);
    rhs.connect({v, 0}, {a, 0});
    for (int k = 1; k < n; ++k) {
      const int c = rhs.add_vertex(outer);
      rhs.connect({c, 1}, {v, k});
      leg(rhs, {c, 0}, Direction::In);
    }
    leg(rhs, {a, 1}, Direction::Out);
  }
  return make_rule(params_name(name, {n}), lhs, rhs, {n}, true);
}

Rule automorphism_z(int n) {
  return automorphism("am_Z", VertexKind::white(n), VertexKind::white(2), VertexKind::black(2), n);
}

Rule automorphism_w(int n) {
  return automorphism("am_W", VertexKind::black(n), VertexKind::black(2), VertexKind::white(2), n);
}

Rule bialgebra_w(int n, int m) {
  Diagram lhs;
  {
    const int a = lhs.add_vertex(VertexKind::black(n + 1));
    const int b = lhs.add_vertex(VertexKind::black(m + 1));
    lhs.connect({a, n}, {b, 0});
    for (int i = 0; i < n; ++i) {
      leg(lhs, {a, i}, Direction::In);
    }
    for (int j = 1; j <= m; ++j) {
      leg(lhs, {b, j}, Direction::Out);
    }
  }
  Diagram rhs;
  std::vector<int> entry(static_cast<std::size_t>(n));
  std::vector<int> bottom(static_cast<std::size_t>(n));
  std::vector<int> top(static_cast<std::size_t>(m));
  std::vector<int> exit(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    entry[static_cast<std::size_t>(i)] = rhs.add_vertex(VertexKind::black(2));
    bottom[static_cast<std::size_t>(i)] = rhs.add_vertex(VertexKind::black(m + 1));
    rhs.connect({entry[static_cast<std::size_t>(i)], 1}, {bottom[static_cast<std::size_t>(i)], 0});
  }
  for (int j = 0; j < m; ++j) {
    top[static_cast<std::size_t>(j)] = rhs.add_vertex(VertexKind::black(n + 1));
    exit[static_cast<std::size_t>(j)] = rhs.add_vertex(VertexKind::black(2));
    rhs.connect({top[static_cast<std::size_t>(j)], n}, {exit[static_cast<std::size_t>(j)], 0});
  }
  // Wire (i, j) joins bottom i to top j; two wires intersect when their
  // endpoints are in opposite order, and each intersection is a crossing.
  std::vector<std::vector<Port>> path(static_cast<std::size_t>(n * m));
  auto wire = [m](int i, int j) { return static_cast<std::size_t>(i * m + j); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int i2 = i + 1; i2 < n; ++i2) {
        for (int j2 = 0; j2 < j; ++j2) {
          const int x = rhs.add_vertex(VertexKind::crossing());
          path[wire(i, j)].push_back({x, 0});
          path[wire(i, j)].push_back({x, 1});
          path[wire(i2, j2)].push_back({x, 2});
          path[wire(i2, j2)].push_back({x, 3});
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      Port cur{bottom[static_cast<std::size_t>(i)], 1 + j};
      const auto& hops = path[wire(i, j)];
      for (std::size_t h = 0; h < hops.size(); h += 2) {
        rhs.connect(cur, hops[h]);
        cur = hops[h + 1];
      }
      rhs.connect(cur, {top[static_cast<std::size_t>(j)], i});
    }
  }
  for (int i = 0; i < n; ++i) {
    leg(rhs, {entry[static_cast<std::size_t>(i)], 0}, Direction::In);
  }
  for (int j = 0; j < m; ++j) {
    leg(rhs, {exit[static_cast<std::size_t>(j)], 1}, Direction::Out);
  }
  return make_rule(params_name("ba_W", {n, m}), lhs, rhs, {n, m}, true);
}

Rule bialgebra(int n, int m) {
  Diagram lhs;
  {
    const int a = lhs.add_vertex(VertexKind::black(n + 1));
    const int c = lhs.add_vertex(VertexKind::black(2));
    const int w = lhs.add_vertex(VertexKind::white(m + 1));
    lhs.connect({a, n}, {c, 0});
    lhs.connect({c, 1}, {w, 0});
    for (int i = 0; i < n; ++i) {
      leg(lhs, {a, i}, Direction::In);
    }
    for (int j = 1; j <= m; ++j) {
      leg(lhs, {w, j}, Direction::Out);
    }
  }
  Diagram rhs;
  std::vector<int> whites;
  std::vector<int> tops;
  std::vector<int> exits;
  for (int i = 0; i < n; ++i) {
    whites.push_back(rhs.add_vertex(VertexKind::white(m + 1)));
  }
  for (int j = 0; j < m; ++j) {
    tops.push_back(rhs.add_vertex(VertexKind::black(n + 1)));
    exits.push_back(rhs.add_vertex(VertexKind::black(2)));
    rhs.connect({tops.back(), n}, {exits.back(), 0});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      rhs.connect({whites[static_cast<std::size_t>(i)], 1 + j}, {tops[static_cast<std::size_t>(j)], i});
    }
  }
  for (int i = 0; i < n; ++i) {
    leg(rhs, {whites[static_cast<std::size_t>(i)], 0}, Direction::In);
  }
  for (int j = 0; j < m; ++j) {
    leg(rhs, {exits[static_cast<std::size_t>(j)], 1}, Direction::Out);
  }
  return make_rule(params_name("ba", {n, m}), lhs, rhs, {n, m}, true);
}

Rule loop_w(int n, int m) {
  Diagram lhs;
  const int a = lhs.add_vertex(VertexKind::black(n + 2));
  const int b = lhs.add_vertex(VertexKind::black(m + 2));
  const int c = lhs.add_vertex(VertexKind::black(2));
  lhs.connect({a, n}, {b, m});
  lhs.connect({a, n + 1}, {c, 0});
  lhs.connect({c, 1}, {b, m + 1});
  for (int i = 0; i < n; ++i) {
    leg(lhs, {a, i}, Direction::In);
  }
  for (int j = 0; j < m; ++j) {
    leg(lhs, {b, j}, Direction::Out);
  }
  return make_rule(params_name("lp_W", {n, m}), lhs, single(VertexKind::black(n + m), n), {n, m},
                   true);
}

Rule loop(int n) {
  Diagram lhs;
  const int w = lhs.add_vertex(VertexKind::white(n + 1));
  const int b = lhs.add_vertex(VertexKind::black(n + 1));
  for (int k = 1; k <= n; ++k) {
    lhs.connect({w, k}, {b, k});
  }
  leg(lhs, {w, 0}, Direction::In);
  leg(lhs, {b, 0}, Direction::Out);
  Diagram rhs;
  leg(rhs, black_unit(rhs), Direction::In);
  const int u = rhs.add_vertex(VertexKind::black(1));
  leg(rhs, {u, 0}, Direction::Out);
  return make_rule(params_name("lp", {n}), lhs, rhs, {n}, true);
}

Rule order(int n) {
  Diagram lhs;
  const int c1 = lhs.add_vertex(VertexKind::black(2));
  const int f = lhs.add_vertex(VertexKind::black(n + 1));
  const int h = lhs.add_vertex(VertexKind::black(n + 1));
  const int c2 = lhs.add_vertex(VertexKind::black(2));
  lhs.connect({c1, 1}, {f, 0});
  for (int k = 1; k <= n; ++k) {
    lhs.connect({f, k}, {h, k});
  }
  lhs.connect({h, 0}, {c2, 0});
  leg(lhs, {c1, 0}, Direction::In);
  leg(lhs, {c2, 1}, Direction::Out);
  Diagram rhs;
  leg(rhs, black_unit(rhs), Direction::In);
  leg(rhs, black_unit(rhs), Direction::Out);
  return make_rule(params_name("or", {n}), lhs, rhs, {n}, false);
}

Json rule_to_json_value(const Rule& rule) {
  Json j;
  j["name"] = rule.name;
  j["lhs"] = diagram_to_json_value(rule.lhs);
  j["rhs"] = diagram_to_json_value(rule.rhs);
  j["boundaryMap"] = rule.boundary_map;
  j["params"] = rule.params;
  j["derived"] = rule.derived;
  return j;
}

Rule rule_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("rule file: ") + e.what(), 1, 1);
  }
  try {
    Rule r;
    r.name = j.at("name").get<std::string>();
    r.lhs = diagram_from_json_value(j.at("lhs"));
    r.rhs = diagram_from_json_value(j.at("rhs"));
    r.boundary_map = j.at("boundaryMap").get<std::vector<int>>();
    r.params = j.value("params", std::vector<int>{});
    r.derived = j.value("derived", false);
    require_valid(r.lhs);
    require_valid(r.rhs);
    if (r.lhs.legs() != r.rhs.legs() ||
        static_cast<int>(r.boundary_map.size()) != r.lhs.legs()) {
      throw InvalidArgument("rule `" + r.name + "`: boundary arities do not match");
    }
    auto sorted = r.boundary_map;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
      if (sorted[static_cast<std::size_t>(i)] != i) {
        throw InvalidArgument("rule `" + r.name + "`: boundaryMap is not a bijection");
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rule file: ") + e.what(), 1, 1);
  }
}

std::vector<Rule> fixed_rules() {
  std::vector<Rule> out;
  out.reserve(data::kRuleFiles.size());
  for (auto text : data::kRuleFiles) {
    out.push_back(rule_from_json(text));
  }
  return out;
}

const Rule* find_rule(const std::vector<Rule>& rules, const std::string& name) {
  for (const auto& r : rules) {
    if (r.name == name) {
      return &r;
    }
  }
  return nullptr;
}

std::vector<Rule> catalog(const CatalogOptions& opts) {
  const int k = opts.max_arity;
  if (k < 2) {
    throw InvalidArgument("catalog needs max_arity >= 2");
  }
  std::vector<Rule> out = fixed_rules();
  for (int n = 0; n <= k; ++n) {
    for (int m = 0; m <= k; ++m) {
      out.push_back(spider_w(n, m));
      out.push_back(spider_z(n, m));
    }
  }
  for (int n = 2; n <= k; ++n) {
    out.push_back(phase(n));
  }
  for (int n = 1; n <= k; ++n) {
    out.push_back(automorphism_w(n));
    out.push_back(automorphism_z(n));
  }
  for (int n = 0; n <= k; ++n) {
    for (int m = 0; m <= k; ++m) {
      out.push_back(bialgebra_w(n, m));
    }
  }
  out.push_back(bialgebra(0, 0));
  for (int n = 0; n <= k; ++n) {
    for (int m = 1; m <= k; ++m) {
      out.push_back(bialgebra(n, m));
    }
  }
  for (int n = 0; n <= k; ++n) {
    for (int m = 0; m <= n; ++m) {
      out.push_back(loop_w(n, m));
    }
  }
  for (int n = 2; n <= k; ++n) {
    out.push_back(loop(n));
  }
  if (opts.modulus) {
    if (*opts.modulus < 1) {
      throw InvalidArgument("modulus must be at least 1");
    }
    out.push_back(order(*opts.modulus));
  }
  return out;
}

bool verify_soundness(const Rule& rule, const Ring& ring, const EvalOptions& opts) {
  const Tensor l = eval(rule.lhs, ring, opts);
  const Tensor r = eval(rule.rhs, ring, opts).permuted(rule.boundary_map);
  return tensor_equal(l, r);
}

} // namespace zw

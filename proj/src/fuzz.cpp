#include "zw/fuzz.hpp"

#include "zw/error.hpp"
#include "zw/io.hpp"
#include "zw/normal_form.hpp"
#include "zw/normalizer.hpp"
#include "zw/semantics.hpp"

#include <algorithm>

namespace zw {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

VertexKind random_kind(std::mt19937_64& rng, const RandomDiagramOptions& opts) {
  const int colors = opts.crossings && opts.max_arity >= 4 ? 3 : 2;
  switch (uniform(rng, 0, colors - 1)) {
  case 0:
    return VertexKind::black(uniform(rng, 0, opts.max_arity));
  case 1:
    return VertexKind::white(uniform(rng, 0, opts.max_arity));
  default: {
    std::array<int, 4> p{0, 1, 2, 3};
    std::shuffle(p.begin(), p.end(), rng);
    std::array<Strand, 2> s{{{std::min(p[0], p[1]), std::max(p[0], p[1])},
                             {std::min(p[2], p[3]), std::max(p[2], p[3])}}};
    std::sort(s.begin(), s.end());
    return VertexKind::crossing(s);
  }
  }
}

} // namespace

Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& opts) {
  Diagram g;
  std::vector<Port> ports;
  const int n = uniform(rng, 0, opts.max_vertices);
  for (int i = 0; i < n; ++i) {
    const VertexKind kind = random_kind(rng, opts);
    const int id = g.add_vertex(kind);
    for (int p = 0; p < kind.arity; ++p) {
      ports.push_back({id, p});
    }
  }
  const int total = static_cast<int>(ports.size());
  int legs = uniform(rng, 0, std::min(opts.max_legs, total));
  if ((total - legs) % 2 != 0) {
    legs += legs < std::min(opts.max_legs, total) ? 1 : -1;
  }
  int wires = 0;
  if (opts.bare_wires && legs + 2 <= opts.max_legs && uniform(rng, 0, 7) == 0) {
    wires = 1;
  }
  std::shuffle(ports.begin(), ports.end(), rng);

  std::vector<Port> ends(ports.begin(), ports.begin() + legs);
  for (int w = 0; w < wires; ++w) {
    ends.push_back({kBoundary, -1 - w});
    ends.push_back({kBoundary, -1 - w});
  }
  std::shuffle(ends.begin(), ends.end(), rng);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    g.add_boundary(uniform(rng, 0, 1) == 0 ? Direction::In : Direction::Out);
  }
  std::vector<std::vector<int>> wire_positions(static_cast<std::size_t>(wires));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i].is_boundary()) {
      wire_positions[static_cast<std::size_t>(-1 - ends[i].index)].push_back(static_cast<int>(i));
    } else {
      g.connect(ends[i], Port::boundary(static_cast<int>(i)));
    }
  }
  for (const auto& w : wire_positions) {
    g.connect(Port::boundary(w[0]), Port::boundary(w[1]));
  }
  for (int i = legs; i + 1 < total; i += 2) {
    g.connect(ports[static_cast<std::size_t>(i)], ports[static_cast<std::size_t>(i + 1)]);
  }
  if (opts.loops && uniform(rng, 0, 15) == 0) {
    g.add_loops(1);
  }
  return g;
}

std::string FuzzReport::summary() const {
  const std::string n = std::to_string(total);
  if (oracle_equal == total && normalized == total) {
    return n + "/" + n + " normalized, oracle-equal";
  }
  return std::to_string(normalized) + "/" + n + " normalized, " + std::to_string(oracle_equal) +
         "/" + n + " oracle-equal";
}

Diagram fuzz_diagram(const FuzzConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  return random_diagram(rng, cfg.shape);
}

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  FuzzReport report;
  for (int i = 0; i < cfg.count; ++i) {
    ++report.total;
    const Diagram g = fuzz_diagram(cfg, i);
    auto fail = [&](const std::string& why) {
      report.failures.push_back({i, diagram_to_json(g), why});
    };
    NormalizeResult r;
    try {
      r = normalize(g, cfg.ring);
    } catch (const Error& e) {
      fail(std::string("normalize failed: ") + e.what());
      continue;
    }
    const auto parsed = is_normal_form(r.diagram);
    if (!parsed || canonical(*parsed, cfg.ring) != r.form) {
      fail("output is not in normal form");
      continue;
    }
    ++report.normalized;
    const NormalForm expected = canonical(nf_of_tensor(eval(g, cfg.ring)), cfg.ring);
    if (r.form != expected) {
      fail("normal form differs from the tensor oracle");
      continue;
    }
    if (r.diagram != nf_to_diagram_with(expected, g.boundary())) {
      fail("normal-form diagram differs from the canonical template");
      continue;
    }
    ++report.oracle_equal;
  }
  return report;
}

} // namespace zw

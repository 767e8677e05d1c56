#include "zw/error.hpp"
#include "zw/fuzz.hpp"
#include "zw/io.hpp"
#include "zw/normalizer.hpp"
#include "zw/term.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

namespace {

using namespace zw;

Diagram term(const char* s) { return from_term(parse_term(s)); }

Diagram triangle() {
  Diagram g;
  std::vector<int> v;
  for (int i = 0; i < 3; ++i) {
    v.push_back(g.add_vertex(VertexKind::black(3)));
    g.add_boundary(Direction::Out);
  }
  for (int i = 0; i < 3; ++i) {
    g.connect({v[static_cast<std::size_t>(i)], 0}, Port::boundary(i));
    g.connect({v[static_cast<std::size_t>(i)], 1}, {v[static_cast<std::size_t>((i + 1) % 3)], 2});
  }
  return g;
}

RandomDiagramOptions with_crossings() {
  RandomDiagramOptions o;
  o.max_vertices = 8;
  return o;
}

TEST(EliminateCrossings, CrossingFreeInputUnchanged) {
  std::mt19937_64 rng(83);
  RandomDiagramOptions o;
  o.crossings = false;
  for (int i = 0; i < 100; ++i) {
    const Diagram g = random_diagram(rng, o);
    RewriteTrace t;
    EXPECT_EQ(eliminate_crossings(g, &t), g);
    EXPECT_TRUE(t.steps.empty());
  }
}

TEST(EliminateCrossings, RemovesEveryCrossing) {
  std::mt19937_64 rng(89);
  int with = 0;
  while (with < 200) {
    const Diagram g = random_diagram(rng, with_crossings());
    if (g.count(Color::Crossing) == 0) {
      continue;
    }
    ++with;
    RewriteTrace t;
    const Diagram out = eliminate_crossings(g, &t);
    EXPECT_EQ(out.count(Color::Crossing), 0U);
    EXPECT_TRUE(validate(out).empty());
    EXPECT_EQ(oracle::eval(out), oracle::eval(g)) << diagram_to_json(g);
    EXPECT_EQ(t.steps.size(), g.count(Color::Crossing));
  }
}

TEST(EliminateCrossings, SelfCrossedWireBecomesBinaryWhite) {
  Diagram g;
  const int x = g.add_vertex(VertexKind::crossing());
  g.add_boundary(Direction::In);
  g.add_boundary(Direction::Out);
  g.connect({x, 0}, Port::boundary(0));
  g.connect({x, 1}, {x, 2});
  g.connect({x, 3}, Port::boundary(1));
  EXPECT_EQ(oracle::eval(eliminate_crossings(g)), oracle::eval(term("z(1,1)")));
  EXPECT_EQ(normalize(g).diagram, normalize(term("z(1,1)")).diagram);
}

TEST(ExpandSpiders, ArityAtMostThree) {
  std::mt19937_64 rng(97);
  RandomDiagramOptions o;
  o.max_arity = 6;
  o.crossings = false;
  for (int i = 0; i < 150; ++i) {
    const Diagram g = random_diagram(rng, o);
    const Diagram out = expand_spiders(g);
    for (const auto& v : out.vertices()) {
      EXPECT_LE(v.kind.arity, 3);
    }
    EXPECT_EQ(oracle::eval(out), oracle::eval(g));
  }
}

TEST(Normalize, InvolutionOfBinaryWhite) {
  const Diagram g = term("z(1,1) ; z(1,1)");
  const auto r = normalize(g);
  EXPECT_EQ(r.form, wire_nf());
  EXPECT_EQ(r.diagram, nf_to_diagram_with(wire_nf(), g.boundary()));
  EXPECT_EQ(r.diagram, normalize(term("id")).diagram);
}

TEST(Normalize, ZigzagIsIdentityWire) {
  EXPECT_EQ(normalize(term("(cup * id) ; (id * cap)")).diagram, normalize(term("id")).diagram);
}

TEST(Normalize, TriangleGivesPhaseSpiderForm) {
  const auto r = normalize(triangle());
  const NormalForm expected{3, {{false, 1, "001"}, {false, 1, "010"}, {false, 1, "100"}, {false, 1, "111"}}};
  EXPECT_EQ(r.form, expected);
  EXPECT_EQ(r.diagram, nf_to_diagram(expected));
  ASSERT_TRUE(is_normal_form(r.diagram).has_value());
  EXPECT_EQ(*is_normal_form(r.diagram), expected);
}

TEST(Normalize, ClosedDiagrams) {
  EXPECT_EQ(normalize(term("cup ; cap")).form, (NormalForm{0, {{false, 2, ""}}}));
  EXPECT_EQ(normalize(term("w(0,0)")).form, (NormalForm{0, {}}));
  EXPECT_EQ(normalize(Diagram{}).form, (NormalForm{0, {{false, 1, ""}}}));
}

TEST(Normalize, MatchesOracleNormalForm) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    const Diagram g = random_diagram(rng);
    const auto r = normalize(g);
    const NormalForm expected = canonical(nf_of_tensor(oracle::to_tensor(oracle::eval(g))));
    EXPECT_EQ(r.form, expected) << diagram_to_json(g);
    EXPECT_EQ(r.diagram, nf_to_diagram_with(expected, g.boundary()));
    EXPECT_EQ(is_normal_form(r.diagram), expected);
  }
}

TEST(Normalize, ModularRings) {
  std::mt19937_64 rng(103);
  for (long long n : {2LL, 3LL, 5LL}) {
    for (int i = 0; i < 100; ++i) {
      const Diagram g = random_diagram(rng);
      const auto r = normalize(g, Ring::modulo(n));
      EXPECT_EQ(oracle::from_nf(r.form), oracle::reduce(oracle::eval(g), n));
      for (const auto& t : r.form.terms) {
        EXPECT_FALSE(t.p);
      }
      EXPECT_EQ(r.form, reduce_mod(normalize(g).form, n));
    }
  }
}

TEST(Normalize, Deterministic) {
  std::mt19937_64 rng(107);
  NormalizeOptions o;
  o.want_trace = true;
  for (int i = 0; i < 50; ++i) {
    const Diagram g = random_diagram(rng);
    const auto a = normalize(g, Ring::integers(), o);
    const auto b = normalize(g, Ring::integers(), o);
    EXPECT_EQ(diagram_to_json(a.diagram), diagram_to_json(b.diagram));
    EXPECT_EQ(trace_to_jsonl(*a.trace), trace_to_jsonl(*b.trace));
  }
}

TEST(Normalize, TraceChainsAndPreservesEvaluation) {
  std::mt19937_64 rng(109);
  NormalizeOptions o;
  o.want_trace = true;
  RandomDiagramOptions shape;
  shape.max_vertices = 6;
  for (int i = 0; i < 60; ++i) {
    const Diagram g = random_diagram(rng, shape);
    const auto r = normalize(g, Ring::integers(), o);
    ASSERT_TRUE(r.trace.has_value());
    const auto& steps = r.trace->steps;
    if (steps.empty()) {
      continue;
    }
    EXPECT_EQ(steps.front().before, with_sorted_edges(g));
    EXPECT_EQ(steps.back().after, r.diagram);
    const auto target = oracle::eval(g);
    for (std::size_t s = 0; s < steps.size(); ++s) {
      if (s + 1 < steps.size()) {
        EXPECT_EQ(steps[s].after, steps[s + 1].before) << "step " << s << " of " << diagram_to_json(g);
      }
      EXPECT_TRUE(validate(steps[s].after).empty());
      EXPECT_EQ(oracle::eval(steps[s].after), target) << steps[s].step << " in " << diagram_to_json(g);
    }
  }
}

TEST(Normalize, CrossingFreeTraceUsesNoCrossingRule) {
  std::mt19937_64 rng(113);
  RandomDiagramOptions shape;
  shape.crossings = false;
  NormalizeOptions o;
  o.want_trace = true;
  for (int i = 0; i < 100; ++i) {
    const auto r = normalize(random_diagram(rng, shape), Ring::integers(), o);
    for (const auto& s : r.trace->steps) {
      EXPECT_NE(s.step, "7b");
      EXPECT_NE(s.step, "crossing-elim");
    }
  }
}

TEST(Normalize, TraceJsonLines) {
  NormalizeOptions o;
  o.want_trace = true;
  const auto r = normalize(term("x"), Ring::integers(), o);
  const std::string text = trace_to_jsonl(*r.trace);
  std::size_t lines = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    ASSERT_NE(end, std::string::npos);
    const Json j = Json::parse(text.substr(start, end - start));
    EXPECT_TRUE(j.contains("step") && j.contains("before") && j.contains("after"));
    EXPECT_EQ(diagram_from_json_value(j["after"]), r.trace->steps[lines].after);
    start = end + 1;
    ++lines;
  }
  EXPECT_EQ(lines, r.trace->steps.size());
  EXPECT_EQ(r.trace->steps.front().step, "crossing-elim");
}

TEST(Normalize, LegCap) {
  NormalizeOptions o;
  o.leg_cap = 2;
  EXPECT_THROW(normalize(term("w(0,3)"), Ring::integers(), o), ResourceError);
}

TEST(Fuzz, ReportIsReproducible) {
  FuzzConfig c;
  c.count = 200;
  c.seed = 7;
  const auto a = run_fuzz(c);
  const auto b = run_fuzz(c);
  EXPECT_EQ(a.summary(), b.summary());
  EXPECT_EQ(a.summary(), "200/200 normalized, oracle-equal");
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(fuzz_diagram(c, i), fuzz_diagram(c, i));
  }
  FuzzConfig d = c;
  d.seed = 8;
  int differ = 0;
  for (int i = 0; i < 20; ++i) {
    differ += fuzz_diagram(c, i) == fuzz_diagram(d, i) ? 0 : 1;
  }
  EXPECT_GT(differ, 0);
}

TEST(Fuzz, RespectsBounds) {
  FuzzConfig c;
  c.seed = 11;
  for (int i = 0; i < 500; ++i) {
    const Diagram g = fuzz_diagram(c, i);
    EXPECT_LE(g.vertices().size(), 10U);
    EXPECT_LE(g.legs(), 6);
    for (const auto& v : g.vertices()) {
      EXPECT_LE(v.kind.arity, 4);
    }
  }
}

} // namespace

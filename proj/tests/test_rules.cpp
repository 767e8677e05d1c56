#include "zw/error.hpp"
#include "zw/fuzz.hpp"
#include "zw/io.hpp"
#include "zw/matcher.hpp"
#include "zw/rules.hpp"
#include "zw/semantics.hpp"
#include "zw/term.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace zw;

Diagram term(const char* s) { return from_term(parse_term(s)); }

const std::vector<Rule>& catalog4() {
  static const std::vector<Rule> rules = catalog();
  return rules;
}

const Rule& named(const std::string& name) {
  const Rule* r = find_rule(catalog4(), name);
  if (r == nullptr) {
    throw std::runtime_error("missing rule " + name);
  }
  return *r;
}

// lhs and rhs agree on every boundary assignment, checked with the dense oracle.
bool oracle_sound(const Rule& r, long long modulus = 0) {
  oracle::Dense l = oracle::eval(r.lhs);
  oracle::Dense rh = oracle::eval(r.rhs);
  if (modulus != 0) {
    l = oracle::reduce(l, modulus);
    rh = oracle::reduce(rh, modulus);
  }
  oracle::Dense moved{rh.legs, {}};
  for (const auto& [k, v] : l.v) {
    std::uint64_t nk = 0;
    for (std::size_t i = 0; i < r.boundary_map.size(); ++i) {
      nk |= ((k >> i) & 1U) << r.boundary_map[i];
    }
    moved.v[nk] = v;
  }
  return moved == rh;
}

TEST(Catalog, ContainsFixedRulesAndSchemata) {
  for (const char* name : {"0a", "0b", "0c", "1a", "1b", "1c", "1d", "2a", "2b", "3a", "3b", "4", "5a", "5b",
                           "5c", "5d", "6a", "6b", "6c", "7a", "7b", "X"}) {
    EXPECT_NE(find_rule(catalog4(), name), nullptr) << name;
  }
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m <= 4; ++m) {
      EXPECT_NE(find_rule(catalog4(), "sp_W(" + std::to_string(n) + "," + std::to_string(m) + ")"), nullptr);
      EXPECT_NE(find_rule(catalog4(), "sp_Z(" + std::to_string(n) + "," + std::to_string(m) + ")"), nullptr);
    }
  }
  EXPECT_EQ(find_rule(catalog4(), "or(3)"), nullptr);
  CatalogOptions o;
  o.modulus = 3;
  const auto mod3 = catalog(o);
  EXPECT_NE(find_rule(mod3, "or(3)"), nullptr);
  std::set<std::string> names;
  for (const auto& r : catalog4()) {
    EXPECT_TRUE(names.insert(r.name).second) << "duplicate " << r.name;
  }
}

TEST(Catalog, EveryRuleIsSoundOverIntegers) {
  for (const auto& r : catalog4()) {
    EXPECT_TRUE(verify_soundness(r)) << r.name;
    EXPECT_TRUE(oracle_sound(r)) << r.name;
  }
}

TEST(Catalog, RuleSidesAreValidAndBoundariesAgree) {
  for (const auto& r : catalog4()) {
    EXPECT_TRUE(validate(r.lhs).empty()) << r.name;
    EXPECT_TRUE(validate(r.rhs).empty()) << r.name;
    ASSERT_EQ(r.lhs.legs(), r.rhs.legs()) << r.name;
    std::vector<int> sorted = r.boundary_map;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
      EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i) << r.name;
    }
  }
}

TEST(Catalog, RuleJsonRoundTrip) {
  for (const auto& r : catalog4()) {
    const Rule back = rule_from_json(rule_to_json_value(r).dump());
    EXPECT_EQ(back.name, r.name);
    EXPECT_EQ(back.lhs, r.lhs);
    EXPECT_EQ(back.rhs, r.rhs);
    EXPECT_EQ(back.boundary_map, r.boundary_map);
    EXPECT_EQ(back.params, r.params);
    EXPECT_EQ(back.derived, r.derived);
  }
  EXPECT_THROW(rule_from_json("{\"name\": 3}"), ParseError);
}

TEST(Verify, InvolutionRule) { EXPECT_TRUE(verify_soundness(named("2a"))); }

TEST(Verify, CrossingWithoutSignIsUnsound) {
  Rule braided = named("5a");
  const Vertex* x = nullptr;
  for (const auto& v : braided.rhs.vertices()) {
    if (v.kind.color == Color::Crossing) {
      x = &v;
    }
  }
  ASSERT_NE(x, nullptr);
  Diagram swap;
  for (int i = 0; i < 4; ++i) {
    swap.add_boundary(Direction::Out);
  }
  for (const auto& [a, b] : x->kind.strands) {
    swap.connect(Port::boundary(a), Port::boundary(b));
  }
  braided.rhs = substitute(braided.rhs, x->id, swap);
  EXPECT_FALSE(verify_soundness(braided));
  EXPECT_FALSE(oracle_sound(braided));
}

TEST(Verify, OrderRuleHoldsOnlyModuloItsParameter) {
  for (int n : {2, 3, 5}) {
    const Rule r = order(n);
    EXPECT_FALSE(verify_soundness(r)) << n;
    EXPECT_TRUE(verify_soundness(r, Ring::modulo(n))) << n;
    EXPECT_FALSE(oracle_sound(r));
    EXPECT_TRUE(oracle_sound(r, n));
  }
}

TEST(Verify, SoundOverEveryModulus) {
  for (int n : {2, 3, 5}) {
    CatalogOptions o;
    o.modulus = n;
    for (const auto& r : catalog(o)) {
      EXPECT_TRUE(verify_soundness(r, Ring::modulo(n))) << r.name << " mod " << n;
    }
  }
}

std::set<std::pair<std::vector<int>, std::vector<Port>>> keys(const std::vector<Match>& ms) {
  std::set<std::pair<std::vector<int>, std::vector<Port>>> out;
  for (const auto& m : ms) {
    EXPECT_TRUE(out.insert(match_key(m)).second) << "duplicate match";
  }
  return out;
}

TEST(Matcher, InvolutionHasOneMatch) {
  const Diagram host = term("w(1,1) ; w(1,1)");
  const auto ms = find_matches(named("2a"), host);
  EXPECT_EQ(ms.size(), 1U);
  EXPECT_EQ(keys(ms), oracle::brute_force_matches(named("2a"), host));
}

TEST(Matcher, EmptyHostHasNoMatches) { EXPECT_TRUE(find_matches(named("2a"), Diagram{}).empty()); }

TEST(Matcher, SpiderMatchesAgreeWithBruteForce) {
  Diagram host;
  const int a = host.add_vertex(VertexKind::black(3));
  const int m = host.add_vertex(VertexKind::black(2));
  const int b = host.add_vertex(VertexKind::black(3));
  host.connect({a, 2}, {m, 0});
  host.connect({m, 1}, {b, 0});
  for (int i = 0; i < 4; ++i) {
    host.add_boundary(Direction::Out);
  }
  host.connect({a, 0}, Port::boundary(0));
  host.connect({a, 1}, Port::boundary(1));
  host.connect({b, 1}, Port::boundary(2));
  host.connect({b, 2}, Port::boundary(3));
  for (const char* name : {"sp_W(1,1)", "sp_W(2,2)", "sp_W(1,2)", "2a"}) {
    const auto ms = find_matches(named(name), host);
    EXPECT_EQ(keys(ms), oracle::brute_force_matches(named(name), host)) << name;
  }
  EXPECT_FALSE(find_matches(named("sp_W(2,2)"), host).empty());
}

std::vector<const Rule*> matchable_rules() {
  std::vector<const Rule*> out;
  for (const auto& r : catalog4()) {
    try {
      (void)find_matches(r, Diagram{});
      if (!r.lhs.vertices().empty()) {
        out.push_back(&r);
      }
    } catch (const InvalidArgument&) {
    }
  }
  return out;
}

TEST(Matcher, AgreesWithBruteForceOnRandomHosts) {
  const auto rules = matchable_rules();
  ASSERT_FALSE(rules.empty());
  std::mt19937_64 rng(73);
  RandomDiagramOptions shape;
  shape.max_vertices = 6;
  for (int i = 0; i < 120; ++i) {
    const Diagram host = random_diagram(rng, shape);
    const Rule& r = *rules[std::uniform_int_distribution<std::size_t>(0, rules.size() - 1)(rng)];
    if (r.lhs.vertices().size() > 3) {
      continue;
    }
    EXPECT_EQ(keys(find_matches(r, host)), oracle::brute_force_matches(r, host)) << r.name << " in "
                                                                                 << diagram_to_json(host);
  }
}

TEST(Matcher, OutOfScopePatternsAreRejected) {
  Rule r = named("2a");
  r.lhs = Diagram{};
  EXPECT_THROW(find_matches(r, term("w(1,1)")), InvalidArgument);
}

TEST(Apply, InvolutionGivesIdentityWire) {
  const Diagram host = term("w(1,1) ; w(1,1)");
  const auto ms = find_matches(named("2a"), host);
  ASSERT_EQ(ms.size(), 1U);
  const Diagram out = apply(named("2a"), host, ms[0]);
  EXPECT_TRUE(out.vertices().empty());
  ASSERT_EQ(out.edges().size(), 1U);
  EXPECT_TRUE(out.edges()[0].a.is_boundary() && out.edges()[0].b.is_boundary());
  EXPECT_EQ(out.boundary(), host.boundary());
}

TEST(Apply, SpiderFusionMerges) {
  const Diagram host = term("w(2,1) ; w(1,1) ; w(1,2)");
  const auto ms = find_matches(named("sp_W(2,2)"), host);
  ASSERT_FALSE(ms.empty());
  const Diagram out = apply(named("sp_W(2,2)"), host, ms[0]);
  ASSERT_EQ(out.vertices().size(), 1U);
  EXPECT_EQ(out.vertices()[0].kind, VertexKind::black(4));
  EXPECT_EQ(oracle::eval(out), oracle::eval(host));
}

TEST(Apply, StaleMatchIsRejected) {
  const Diagram host = term("w(1,1) ; w(1,1)");
  const auto ms = find_matches(named("2a"), host);
  ASSERT_EQ(ms.size(), 1U);
  EXPECT_THROW(apply(named("2a"), term("z(1,1) ; z(1,1)"), ms[0]), InvalidArgument);
}

TEST(Apply, PreservesEvaluation) {
  const auto rules = matchable_rules();
  std::mt19937_64 rng(79);
  int applied = 0;
  for (int attempt = 0; attempt < 20000 && applied < 200; ++attempt) {
    const Diagram host = random_diagram(rng);
    const Rule& r = *rules[std::uniform_int_distribution<std::size_t>(0, rules.size() - 1)(rng)];
    const auto ms = find_matches(r, host);
    if (ms.empty()) {
      continue;
    }
    const Match& m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
    const Diagram out = apply(r, host, m);
    ASSERT_TRUE(validate(out).empty()) << r.name;
    EXPECT_EQ(oracle::eval(out), oracle::eval(host)) << r.name << " on " << diagram_to_json(host);
    ++applied;
  }
  EXPECT_GE(applied, 200);
}

} // namespace

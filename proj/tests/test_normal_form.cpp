#include "zw/error.hpp"
#include "zw/normal_form.hpp"
#include "zw/semantics.hpp"
#include "zw/term.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace {

using namespace zw;

NormalForm nf(int legs, std::vector<NfTerm> terms) { return {legs, std::move(terms)}; }

Diagram term(const char* s) { return from_term(parse_term(s)); }

NormalForm random_canonical_nf(std::mt19937_64& rng, int legs) {
  return canonical(oracle::random_nf(rng, legs));
}

TEST(NfOfTensor, Examples) {
  Tensor a(2);
  a.add(0b11, 1);
  EXPECT_EQ(nf_of_tensor(a), nf(2, {{false, 1, "11"}}));
  Tensor b(2);
  b.add(0b00, 2);
  b.add(0b11, -1);
  EXPECT_EQ(nf_of_tensor(b), nf(2, {{false, 2, "00"}, {true, 1, "11"}}));
  EXPECT_EQ(nf_of_tensor(Tensor(3)), nf(3, {}));
}

TEST(NfOfTensor, BitOrderIsLegOrder) {
  Tensor t(3);
  t.add(0b001, 5);
  EXPECT_EQ(nf_of_tensor(t), nf(3, {{false, 5, "100"}}));
}

TEST(NfOfTensor, ModularCoefficientsAreLeastPositiveResidues) {
  Tensor t(1, Ring::modulo(3));
  t.add(1, -1);
  EXPECT_EQ(canonical(nf_of_tensor(t), Ring::modulo(3)), nf(1, {{false, 2, "1"}}));
}

TEST(NfToDiagram, RoundTripsThroughEval) {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int legs = 1; legs <= 4; ++legs) {
    for (int i = 0; i < 150; ++i, ++checked) {
      const auto psi = oracle::random_dense(rng, legs);
      const Diagram d = nf_to_diagram(nf_of_tensor(oracle::to_tensor(psi)));
      EXPECT_EQ(oracle::eval(d), psi);
    }
  }
  EXPECT_GE(checked, 500);
}

TEST(NfToDiagram, BlackStateHasThreeUnitTerms) {
  const NormalForm w3 = nf_of_tensor(generator_tensor(VertexKind::black(3)));
  ASSERT_EQ(w3.terms.size(), 3U);
  for (const auto& t : w3.terms) {
    EXPECT_FALSE(t.p);
    EXPECT_EQ(t.m, 1);
    EXPECT_EQ(std::count(t.b.begin(), t.b.end(), '1'), 1);
  }
  EXPECT_EQ(oracle::eval(nf_to_diagram(w3)), oracle::from_nf(w3));
}

TEST(NfToDiagram, ZeroTemplate) {
  const Diagram d = nf_to_diagram(nf(3, {}));
  EXPECT_EQ(d.legs(), 3);
  EXPECT_EQ(d.count(Color::White), 0U);
  std::vector<int> arities;
  for (const auto& v : d.vertices()) {
    arities.push_back(v.kind.arity);
  }
  std::sort(arities.begin(), arities.end());
  EXPECT_EQ(arities, (std::vector<int>{0, 1, 1, 1}));
  EXPECT_TRUE(oracle::eval(d).v.empty());
}

TEST(NfToDiagram, SignIsCarriedByOneBinaryWhite) {
  const Diagram neg = nf_to_diagram(nf(1, {{true, 1, "1"}}));
  const Diagram pos = nf_to_diagram(nf(1, {{false, 1, "1"}}));
  EXPECT_EQ(oracle::eval(neg), (oracle::Dense{1, {{1, -1}}}));
  EXPECT_EQ(oracle::eval(pos), (oracle::Dense{1, {{1, 1}}}));
  auto binary_whites = [](const Diagram& d) {
    return std::count_if(d.vertices().begin(), d.vertices().end(),
                         [](const Vertex& v) { return v.kind == VertexKind::white(2); });
  };
  EXPECT_EQ(std::abs(binary_whites(pos) - binary_whites(neg)), 1);
}

TEST(IsNormalForm, InvertsNfToDiagram) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 250; ++i) {
    const int legs = std::uniform_int_distribution<int>(0, 4)(rng);
    const NormalForm n = random_canonical_nf(rng, legs);
    const auto parsed = is_normal_form(nf_to_diagram(n));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, n);
  }
}

TEST(IsNormalForm, ZeroTemplate) {
  Diagram g;
  g.add_vertex(VertexKind::black(0));
  for (int i = 0; i < 2; ++i) {
    const int v = g.add_vertex(VertexKind::black(1));
    g.add_boundary(Direction::Out);
    g.connect({v, 0}, Port::boundary(i));
  }
  EXPECT_EQ(is_normal_form(g), nf(2, {}));
}

TEST(IsNormalForm, RejectsOtherDiagrams) {
  EXPECT_FALSE(is_normal_form(term("x")).has_value());
  EXPECT_FALSE(is_normal_form(term("w(1,1) ; w(1,1)")).has_value());
  EXPECT_FALSE(is_normal_form(term("cup ; cap")).has_value());
  EXPECT_FALSE(is_normal_form(deloop(nf(2, {{false, 2, "00"}}))).has_value());
}

TEST(Deloop, SplitsMultiplicities) {
  const Diagram d = deloop(nf(2, {{false, 2, "00"}}));
  EXPECT_EQ(d.loops(), 0);
  int term_whites = 0;
  for (const auto& v : d.vertices()) {
    term_whites += v.kind == VertexKind::white(3) ? 1 : 0;
  }
  EXPECT_EQ(term_whites, 2);
  EXPECT_EQ(oracle::eval(d), (oracle::Dense{2, {{0, 2}}}));
}

TEST(Deloop, AgreesWithOracle) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const int legs = std::uniform_int_distribution<int>(0, 4)(rng);
    const NormalForm n = random_canonical_nf(rng, legs);
    const Diagram d = deloop(n);
    EXPECT_TRUE(validate(d).empty());
    EXPECT_EQ(oracle::eval(d), oracle::from_nf(n));
    EXPECT_EQ(oracle::eval(d), oracle::eval(nf_to_diagram(n)));
  }
}

oracle::Dense black2() { return {2, {{0b01, 1}, {0b10, 1}}}; }

TEST(NegateEnd, Examples) {
  EXPECT_EQ(negate_end(nf(2, {{false, 1, "10"}}), 0), nf(2, {{false, 1, "00"}}));
  EXPECT_EQ(negate_end(nf(2, {}), 1), nf(2, {}));
  EXPECT_THROW(negate_end(nf(2, {}), 2), InvalidArgument);
}

TEST(NegateEnd, AgreesWithOracleAndIsInvolution) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    const int legs = std::uniform_int_distribution<int>(1, 4)(rng);
    const NormalForm n = random_canonical_nf(rng, legs);
    const int j = std::uniform_int_distribution<int>(0, legs - 1)(rng);
    const NormalForm r = negate_end(n, j);
    // Plugging Black-2 onto leg j, then moving the new leg back to position j.
    oracle::Dense c = oracle::contract(oracle::from_nf(n), black2(), {{j, 0}});
    std::vector<int> order(static_cast<std::size_t>(legs - 1));
    std::iota(order.begin(), order.end(), 0);
    order.insert(order.begin() + j, legs - 1);
    oracle::Dense expected{legs, {}};
    for (const auto& [k, v] : c.v) {
      std::uint64_t nk = 0;
      for (int p = 0; p < legs; ++p) {
        nk |= ((k >> order[static_cast<std::size_t>(p)]) & 1U) << p;
      }
      expected.v[nk] = v;
    }
    EXPECT_EQ(oracle::from_nf(r), expected);
    EXPECT_EQ(negate_end(r, j), n);
  }
}

TEST(TraceEnds, Examples) {
  EXPECT_EQ(trace_ends(nf(2, {{false, 1, "00"}, {false, 1, "11"}}), 0, 1), nf(0, {{false, 2, ""}}));
  EXPECT_EQ(trace_ends(nf(2, {{false, 1, "01"}}), 0, 1), nf(0, {}));
  EXPECT_THROW(trace_ends(nf(2, {}), 0, 0), InvalidArgument);
  EXPECT_THROW(trace_ends(nf(2, {}), 0, 2), InvalidArgument);
}

TEST(TraceEnds, AgreesWithOracle) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 250; ++i) {
    const int legs = std::uniform_int_distribution<int>(2, 5)(rng);
    const NormalForm n = random_canonical_nf(rng, legs);
    int j = std::uniform_int_distribution<int>(0, legs - 1)(rng);
    int k = std::uniform_int_distribution<int>(0, legs - 2)(rng);
    if (k >= j) {
      ++k;
    }
    EXPECT_EQ(oracle::from_nf(trace_ends(n, j, k)), oracle::trace(oracle::from_nf(n), std::min(j, k), std::max(j, k)));
  }
}

TEST(AbsorbZero, Examples) {
  EXPECT_EQ(absorb_zero(nf(2, {{false, 3, "01"}})), nf(2, {}));
  EXPECT_EQ(absorb_zero(nf(1, {})), nf(1, {}));
}

TEST(PlugNormalForms, Examples) {
  const NormalForm ket0 = nf(1, {{false, 1, "0"}});
  const NormalForm ket1 = nf(1, {{false, 1, "1"}});
  EXPECT_EQ(plug_normal_forms(ket0, ket1, {}), nf(2, {{false, 1, "01"}}));
  const NormalForm b2 = generator_nf(VertexKind::black(2));
  EXPECT_EQ(plug_normal_forms(b2, b2, {{1, 0}}), wire_nf());
  EXPECT_THROW(plug_normal_forms(b2, b2, {{1, 0}, {1, 1}}), InvalidArgument);
}

TEST(PlugNormalForms, AgreesWithOracle) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 250; ++i) {
    const int la = std::uniform_int_distribution<int>(0, 4)(rng);
    const int lb = std::uniform_int_distribution<int>(0, 4)(rng);
    const NormalForm a = random_canonical_nf(rng, la);
    const NormalForm b = random_canonical_nf(rng, lb);
    std::vector<int> ia(static_cast<std::size_t>(la));
    std::vector<int> ib(static_cast<std::size_t>(lb));
    std::iota(ia.begin(), ia.end(), 0);
    std::iota(ib.begin(), ib.end(), 0);
    std::shuffle(ia.begin(), ia.end(), rng);
    std::shuffle(ib.begin(), ib.end(), rng);
    const int k = std::uniform_int_distribution<int>(0, std::min(la, lb))(rng);
    std::vector<std::pair<int, int>> pairing;
    for (int j = 0; j < k; ++j) {
      pairing.emplace_back(ia[static_cast<std::size_t>(j)], ib[static_cast<std::size_t>(j)]);
    }
    const NormalForm r = plug_normal_forms(a, b, pairing);
    EXPECT_EQ(oracle::from_nf(r), oracle::contract(oracle::from_nf(a), oracle::from_nf(b), pairing));
    EXPECT_EQ(r, canonical(r));
  }
}

TEST(GeneratorNf, Examples) {
  EXPECT_EQ(generator_nf(VertexKind::black(3)).terms.size(), 3U);
  EXPECT_EQ(wire_nf(), nf(2, {{false, 1, "00"}, {false, 1, "11"}}));
  const NormalForm x = generator_nf(VertexKind::crossing());
  ASSERT_EQ(x.terms.size(), 4U);
  EXPECT_EQ(std::count_if(x.terms.begin(), x.terms.end(), [](const NfTerm& t) { return t.p; }), 1);
  for (const auto& kind : {VertexKind::black(0), VertexKind::black(4), VertexKind::white(0), VertexKind::white(3),
                           VertexKind::crossing({{{0, 2}, {1, 3}}})}) {
    EXPECT_EQ(oracle::from_nf(generator_nf(kind)), oracle::from_tensor(generator_tensor(kind))) << kind.describe();
  }
}

TEST(ReduceMod, Examples) {
  EXPECT_EQ(reduce_mod(nf(1, {{false, 2, "0"}}), 2), nf(1, {}));
  EXPECT_EQ(reduce_mod(nf(1, {{true, 1, "1"}}), 3), nf(1, {{false, 2, "1"}}));
  for (int n = 2; n <= 5; ++n) {
    EXPECT_EQ(reduce_mod(nf(2, {{false, 1, "10"}}), n), nf(2, {{false, 1, "10"}}));
  }
  EXPECT_THROW(reduce_mod(nf(1, {}), 0), InvalidArgument);
}

TEST(ReduceMod, AgreesWithOracle) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 250; ++i) {
    const int legs = std::uniform_int_distribution<int>(0, 4)(rng);
    const NormalForm n = random_canonical_nf(rng, legs);
    const int m = std::uniform_int_distribution<int>(1, 7)(rng);
    const NormalForm r = reduce_mod(n, m);
    EXPECT_EQ(oracle::from_nf(r), oracle::reduce(oracle::from_nf(n), m));
    for (const auto& t : r.terms) {
      EXPECT_FALSE(t.p);
    }
  }
}

TEST(PermuteLegs, MovesBits) {
  EXPECT_EQ(permute_legs(nf(3, {{false, 1, "100"}}), {2, 0, 1}), nf(3, {{false, 1, "010"}}));
}

} // namespace

#include "zw/error.hpp"
#include "zw/io.hpp"
#include "zw/normal_form.hpp"
#include "zw/semantics.hpp"
#include "zw/term.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace {

using namespace zw;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) {
    ++n;
  }
  return n;
}

TEST(Dot, BlackSpider) {
  const std::string dot = render_dot(from_term(parse_term("w(0,3)")));
  EXPECT_EQ(occurrences(dot, "fillcolor=black"), 1U);
  EXPECT_EQ(occurrences(dot, "shape=plaintext"), 3U);
  EXPECT_NE(dot.find("rank=sink"), std::string::npos);
}

TEST(Dot, CrossingIsLabelledDiamond) {
  const std::string dot = render_dot(from_term(parse_term("x")));
  EXPECT_NE(dot.find("shape=diamond, label=\"x 01|23\""), std::string::npos);
  EXPECT_NE(dot.find("rank=source"), std::string::npos);
}

TEST(Dot, Deterministic) {
  const char* t = "(cup * id) ; (id * x) ; (z(2,1) * w(0,1) * id)";
  EXPECT_EQ(render_dot(from_term(parse_term(t))), render_dot(from_term(parse_term(t))));
}

TEST(Dot, NormalFormGolden) {
  const NormalForm nf = nf_of_tensor(generator_tensor(VertexKind::black(3)));
  EXPECT_EQ(render_dot(nf_to_diagram(nf)), slurp(std::string(ZW_TEST_DATA_DIR) + "/golden/nf_black3.dot"));
}

TEST(NormalFormJson, RoundTrip) {
  std::mt19937_64 rng(127);
  for (int i = 0; i < 200; ++i) {
    const NormalForm nf = canonical(oracle::random_nf(rng, std::uniform_int_distribution<int>(0, 5)(rng)));
    EXPECT_EQ(nf_from_json(nf_to_json(nf)), nf);
  }
  NormalForm big{1, {{true, BigInt(1) << 100, "1"}}};
  EXPECT_EQ(nf_from_json(nf_to_json(big)), big);
}

TEST(NormalFormJson, Layout) {
  const NormalForm nf{2, {{false, 2, "00"}, {true, 1, "11"}}};
  EXPECT_EQ(nf_to_json(nf), R"({"legs":2,"terms":[{"p":0,"m":2,"b":"00"},{"p":1,"m":1,"b":"11"}]})");
}

TEST(ParseDiagram, ErrorsCarryPositions) {
  try {
    parse_diagram("{\n  \"vertices\": [,]\n}", Format::Json);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

} // namespace

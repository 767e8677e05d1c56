#include "zw/term.hpp"

#include "zw/error.hpp"

#include <cctype>
#include <charconv>

namespace zw {

Term Term::generator(Kind k, int line, int column) {
  Term t;
  t.kind = k;
  t.line = line;
  t.column = column;
  return t;
}

Term Term::spider(Kind k, int in, int out, int line, int column) {
  Term t = generator(k, line, column);
  t.in = in;
  t.out = out;
  return t;
}

Term Term::seq(Term lower, Term upper) {
  Term t = generator(Kind::Seq, lower.line, lower.column);
  t.children.push_back(std::move(lower));
  t.children.push_back(std::move(upper));
  return t;
}

Term Term::tensor(Term left, Term right) {
  Term t = generator(Kind::Tensor, left.line, left.column);
  t.children.push_back(std::move(left));
  t.children.push_back(std::move(right));
  return t;
}

TermType type_of(const Term& t) {
  switch (t.kind) {
  case Term::Kind::Id:
    return {1, 1};
  case Term::Kind::Swap:
  case Term::Kind::Cross:
    return {2, 2};
  case Term::Kind::Cup:
    return {0, 2};
  case Term::Kind::Cap:
    return {2, 0};
  case Term::Kind::W:
  case Term::Kind::Z:
    return {t.in, t.out};
  case Term::Kind::Tensor: {
    auto a = type_of(t.children[0]);
    auto b = type_of(t.children[1]);
    return {a.inputs + b.inputs, a.outputs + b.outputs};
  }
  case Term::Kind::Seq:
    break;
  }
  auto lower = type_of(t.children[0]);
  auto upper = type_of(t.children[1]);
  if (lower.outputs != upper.inputs) {
    throw TypeError("type mismatch in composition `" + to_string(t) + "` at line " +
                    std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " +
                    std::to_string(lower.outputs) + " outputs feed " +
                    std::to_string(upper.inputs) + " inputs");
  }
  return {lower.inputs, upper.outputs};
}

std::string to_string(const Term& t) {
  switch (t.kind) {
  case Term::Kind::Id:
    return "id";
  case Term::Kind::Swap:
    return "swap";
  case Term::Kind::Cup:
    return "cup";
  case Term::Kind::Cap:
    return "cap";
  case Term::Kind::Cross:
    return "x";
  case Term::Kind::W:
    return "w(" + std::to_string(t.in) + "," + std::to_string(t.out) + ")";
  case Term::Kind::Z:
    return "z(" + std::to_string(t.in) + "," + std::to_string(t.out) + ")";
  case Term::Kind::Tensor:
    return "(" + to_string(t.children[0]) + " * " + to_string(t.children[1]) + ")";
  case Term::Kind::Seq:
    break;
  }
  return "(" + to_string(t.children[0]) + " ; " + to_string(t.children[1]) + ")";
}

namespace {

class Parser {
public:
  explicit Parser(std::string_view s) : src_(s) {}

  Term parse() {
    skip_space();
    Term t = seq();
    skip_space();
    if (pos_ < src_.size()) {
      fail("unexpected `" + std::string(1, src_[pos_]) + "`");
    }
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
      advance();
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      fail(pos_ < src_.size() ? "expected `" + std::string(1, c) + "`, found `" +
                                    std::string(1, src_[pos_]) + "`"
                              : "expected `" + std::string(1, c) + "`, found end of input");
    }
    advance();
  }

  Term seq() {
    Term t = tensor();
    while (peek(';')) {
      advance();
      Term rhs = tensor();
      const int line = t.line;
      const int col = t.column;
      t = Term::seq(std::move(t), std::move(rhs));
      t.line = line;
      t.column = col;
    }
    return t;
  }

  Term tensor() {
    Term t = atom();
    while (peek('*')) {
      advance();
      t = Term::tensor(std::move(t), atom());
    }
    return t;
  }

  int integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
      ++pos_;
    }
    if (start == pos_) {
      if (pos_ < src_.size()) {
        fail("expected integer, found `" + std::string(1, src_[pos_]) + "`");
      }
      fail("expected integer, found end of input");
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || v > 64) {
      pos_ = start;
      fail("arity out of range");
    }
    col_ += static_cast<int>(pos_ - start);
    return v;
  }

  Term atom() {
    skip_space();
    if (pos_ >= src_.size()) {
      fail("expected term, found end of input");
    }
    const int line = line_;
    const int col = col_;
    if (src_[pos_] == '(') {
      advance();
      Term t = seq();
      expect(')');
      return t;
    }
    std::string word;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0 ||
                                  src_[pos_] == '_')) {
      word += src_[pos_];
      advance();
    }
    if (word.empty()) {
      fail("expected term, found `" + std::string(1, src_[pos_]) + "`");
    }
    if (word == "id") {
      return Term::generator(Term::Kind::Id, line, col);
    }
    if (word == "swap") {
      return Term::generator(Term::Kind::Swap, line, col);
    }
    if (word == "cup") {
      return Term::generator(Term::Kind::Cup, line, col);
    }
    if (word == "cap") {
      return Term::generator(Term::Kind::Cap, line, col);
    }
    if (word == "x") {
      return Term::generator(Term::Kind::Cross, line, col);
    }
    if (word == "w" || word == "z") {
      expect('(');
      const int in = integer();
      expect(',');
      const int out = integer();
      expect(')');
      return Term::spider(word == "w" ? Term::Kind::W : Term::Kind::Z, in, out, line, col);
    }
    throw ParseError("unknown generator `" + word + "`", line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Fragment {
  std::vector<int> ins;
  std::vector<int> outs;
};

Fragment build(const Term& t, Diagram& g, WireBuilder& wb) {
  switch (t.kind) {
  case Term::Kind::Id: {
    const int j = wb.junction();
    return {{j}, {j}};
  }
  case Term::Kind::Swap: {
    const int a = wb.junction();
    const int b = wb.junction();
    return {{a, b}, {b, a}};
  }
  case Term::Kind::Cup: {
    const int j = wb.junction();
    return {{}, {j, j}};
  }
  case Term::Kind::Cap: {
    const int j = wb.junction();
    return {{j, j}, {}};
  }
  case Term::Kind::Cross: {
    // Ports: 0 = lower left, 1 = upper right, 2 = lower right, 3 = upper left.
    const int v = g.add_vertex(VertexKind::crossing());
    return {{wb.terminal({v, 0}), wb.terminal({v, 2})}, {wb.terminal({v, 3}), wb.terminal({v, 1})}};
  }
  case Term::Kind::W:
  case Term::Kind::Z: {
    const int n = t.in + t.out;
    const int v = g.add_vertex(t.kind == Term::Kind::W ? VertexKind::black(n) : VertexKind::white(n));
    Fragment f;
    for (int i = 0; i < t.in; ++i) {
      f.ins.push_back(wb.terminal({v, i}));
    }
    for (int i = 0; i < t.out; ++i) {
      f.outs.push_back(wb.terminal({v, t.in + i}));
    }
    return f;
  }
  case Term::Kind::Tensor: {
    Fragment a = build(t.children[0], g, wb);
    Fragment b = build(t.children[1], g, wb);
    a.ins.insert(a.ins.end(), b.ins.begin(), b.ins.end());
    a.outs.insert(a.outs.end(), b.outs.begin(), b.outs.end());
    return a;
  }
  case Term::Kind::Seq:
    break;
  }
  Fragment lower = build(t.children[0], g, wb);
  Fragment upper = build(t.children[1], g, wb);
  for (std::size_t i = 0; i < lower.outs.size(); ++i) {
    wb.link(lower.outs[i], upper.ins[i]);
  }
  return {std::move(lower.ins), std::move(upper.outs)};
}

} // namespace

Term parse_term(std::string_view text) { return Parser(text).parse(); }

Diagram from_term(const Term& t) {
  type_of(t);
  Diagram g;
  WireBuilder wb;
  Fragment f = build(t, g, wb);
  for (int end : f.ins) {
    wb.link(end, wb.terminal(Port::boundary(g.add_boundary(Direction::In))));
  }
  for (int end : f.outs) {
    wb.link(end, wb.terminal(Port::boundary(g.add_boundary(Direction::Out))));
  }
  wb.resolve_into(g);
  return g;
}

} // namespace zw

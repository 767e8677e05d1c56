#include "zw/normal_form.hpp"

#include "zw/error.hpp"
#include "zw/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zw {

namespace {

constexpr long kMaxExpandedTerms = 4096;
constexpr long kMaxMultiplicity = 1L << 16;

BigInt signed_value(const NfTerm& t) { return t.p ? BigInt(-t.m) : t.m; }

void check_leg(const NormalForm& nf, int leg) {
  if (leg < 0 || leg >= nf.legs) {
    throw InvalidArgument("leg " + std::to_string(leg) + " out of range for " +
                          std::to_string(nf.legs) + " legs");
  }
}

struct Template {
  Diagram g;
  std::vector<int> tops;
  std::vector<int> top_port;
};

Template tops_for(int legs, const std::vector<int>& degree) {
  Template t;
  for (int j = 0; j < legs; ++j) {
    t.tops.push_back(t.g.add_vertex(VertexKind::black(1 + degree[static_cast<std::size_t>(j)])));
    t.top_port.push_back(1);
    t.g.add_boundary(Direction::Out);
  }
  return t;
}

void attach_boundary(Template& t) {
  for (std::size_t j = 0; j < t.tops.size(); ++j) {
    t.g.connect({t.tops[j], 0}, Port::boundary(static_cast<int>(j)));
  }
}

// White vertex for one term, wired to the top of every leg whose bit is 0.
Port term_white(Template& t, const std::string& b, int& white) {
  int k = static_cast<int>(std::count(b.begin(), b.end(), '0'));
  white = t.g.add_vertex(VertexKind::white(1 + k));
  return {white, 0};
}

void wire_white(Template& t, int white, const std::string& b) {
  int port = 1;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == '0') {
      t.g.connect({white, port++}, {t.tops[j], t.top_port[j]++});
    }
  }
}

std::vector<int> zero_degrees(int legs, const std::vector<std::pair<const NfTerm*, long>>& terms) {
  std::vector<int> degree(static_cast<std::size_t>(legs), 0);
  for (const auto& [t, copies] : terms) {
    for (std::size_t j = 0; j < t->b.size(); ++j) {
      if (t->b[j] == '0') {
        degree[j] += static_cast<int>(copies);
      }
    }
  }
  return degree;
}

Diagram zero_template(int legs) {
  Template t = tops_for(legs, std::vector<int>(static_cast<std::size_t>(legs), 0));
  t.g.add_vertex(VertexKind::black(0));
  attach_boundary(t);
  return t.g;
}

void check_nf(const NormalForm& nf) {
  std::set<std::string> seen;
  for (const auto& t : nf.terms) {
    if (static_cast<int>(t.b.size()) != nf.legs) {
      throw InvalidArgument("normal form term bitstring length does not match legs");
    }
    if (t.m < 1) {
      throw InvalidArgument("normal form multiplicity must be positive");
    }
    if (!seen.insert(t.b).second) {
      throw InvalidArgument("normal form bitstrings must be distinct");
    }
  }
}

} // namespace

NormalForm canonical(NormalForm nf, const Ring& ring) {
  std::map<std::string, BigInt> sums;
  for (const auto& t : nf.terms) {
    if (static_cast<int>(t.b.size()) != nf.legs) {
      throw InvalidArgument("normal form term bitstring length does not match legs");
    }
    sums[t.b] += signed_value(t);
  }
  NormalForm out{nf.legs, {}};
  for (auto& [b, v] : sums) {
    BigInt r = ring.reduce(v);
    if (r == 0) {
      continue;
    }
    out.terms.push_back({r < 0, abs(r), b});
  }
  return out;
}

NormalForm nf_of_tensor(const Tensor& t) {
  NormalForm nf{t.legs(), {}};
  for (const auto& [k, v] : t.entries()) {
    nf.terms.push_back({v < 0, abs(v), t.legs() == 0 ? std::string() : bitstring(k, t.legs())});
  }
  return canonical(std::move(nf), t.ring());
}

Tensor nf_to_tensor(const NormalForm& nf, const Ring& ring) {
  Tensor t(nf.legs, ring);
  for (const auto& term : nf.terms) {
    Tensor::Key k = 0;
    for (std::size_t j = 0; j < term.b.size(); ++j) {
      if (term.b[j] == '1') {
        k |= Tensor::Key{1} << j;
      }
    }
    t.add(k, signed_value(term));
  }
  return t;
}

Diagram nf_to_diagram(const NormalForm& nf) {
  check_nf(nf);
  if (nf.terms.empty()) {
    return with_sorted_edges(zero_template(nf.legs));
  }
  std::vector<std::pair<const NfTerm*, long>> once;
  for (const auto& t : nf.terms) {
    once.emplace_back(&t, 1);
  }
  Template t = tops_for(nf.legs, zero_degrees(nf.legs, once));
  const int q = static_cast<int>(nf.terms.size());
  const int bottom = t.g.add_vertex(VertexKind::black(q));
  attach_boundary(t);
  std::vector<int> whites;
  for (int i = 0; i < q; ++i) {
    const auto& term = nf.terms[static_cast<std::size_t>(i)];
    Port cur{bottom, i};
    if (term.m > 1) {
      if (term.m > kMaxMultiplicity) {
        throw ResourceError("multiplicity too large for a diagram: " + term.m.str());
      }
      const int m = static_cast<int>(term.m);
      const int c1 = t.g.add_vertex(VertexKind::black(2));
      const int f = t.g.add_vertex(VertexKind::black(m + 1));
      const int h = t.g.add_vertex(VertexKind::black(m + 1));
      const int c2 = t.g.add_vertex(VertexKind::black(2));
      t.g.connect(cur, {c1, 0});
      t.g.connect({c1, 1}, {f, 0});
      for (int k = 1; k <= m; ++k) {
        t.g.connect({f, k}, {h, k});
      }
      t.g.connect({h, 0}, {c2, 0});
      cur = {c2, 1};
    }
    if (!term.p) {
      const int s = t.g.add_vertex(VertexKind::white(2));
      t.g.connect(cur, {s, 0});
      cur = {s, 1};
    }
    int white = 0;
    t.g.connect(cur, term_white(t, term.b, white));
    whites.push_back(white);
  }
  for (int i = 0; i < q; ++i) {
    wire_white(t, whites[static_cast<std::size_t>(i)], nf.terms[static_cast<std::size_t>(i)].b);
  }
  return with_sorted_edges(t.g);
}

Diagram deloop(const NormalForm& nf) {
  check_nf(nf);
  if (nf.terms.empty()) {
    return zero_template(nf.legs);
  }
  std::vector<std::pair<const NfTerm*, long>> copies;
  long total = 0;
  for (const auto& t : nf.terms) {
    if (t.m > kMaxExpandedTerms || total + static_cast<long>(t.m) > kMaxExpandedTerms) {
      throw ResourceError("multiplicities too large to deloop");
    }
    copies.emplace_back(&t, static_cast<long>(t.m));
    total += static_cast<long>(t.m);
  }
  Template t = tops_for(nf.legs, zero_degrees(nf.legs, copies));
  const int bottom = t.g.add_vertex(VertexKind::black(static_cast<int>(total)));
  attach_boundary(t);
  std::vector<std::pair<int, const std::string*>> whites;
  int port = 0;
  for (const auto& [term, count] : copies) {
    for (long c = 0; c < count; ++c) {
      Port cur{bottom, port++};
      if (!term->p) {
        const int s = t.g.add_vertex(VertexKind::white(2));
        t.g.connect(cur, {s, 0});
        cur = {s, 1};
      }
      int white = 0;
      t.g.connect(cur, term_white(t, term->b, white));
      whites.emplace_back(white, &term->b);
    }
  }
  for (const auto& [w, b] : whites) {
    wire_white(t, w, *b);
  }
  return t.g;
}

std::optional<NormalForm> is_normal_form(const Diagram& g) {
  if (g.loops() != 0 || g.count(Color::Crossing) != 0 || !validate(g).empty()) {
    return std::nullopt;
  }
  const Wiring wiring(g);
  const int n = g.legs();
  auto kind = [&](int id) { return g.find(id)->kind; };
  auto is_black = [&](int id, int arity) {
    const auto k = kind(id);
    return k.color == Color::Black && (arity < 0 || k.arity == arity);
  };

  std::vector<int> tops;
  std::map<int, int> leg_of_top;
  std::map<int, int> boundary_port_of_top;
  for (int j = 0; j < n; ++j) {
    const Port p = wiring.partner(Port::boundary(j));
    if (p.is_boundary() || !is_black(p.vertex, -1) || leg_of_top.contains(p.vertex)) {
      return std::nullopt;
    }
    tops.push_back(p.vertex);
    leg_of_top[p.vertex] = j;
    boundary_port_of_top[p.vertex] = p.index;
  }

  std::vector<int> rest;
  for (const auto& v : g.vertices()) {
    if (!leg_of_top.contains(v.id)) {
      rest.push_back(v.id);
    }
  }

  if (rest.size() == 1 && is_black(rest[0], 0)) {
    for (int top : tops) {
      if (kind(top).arity != 1) {
        return std::nullopt;
      }
    }
    return NormalForm{n, {}};
  }

  auto parse_from = [&](int bottom) -> std::optional<NormalForm> {
    std::set<int> visited(tops.begin(), tops.end());
    visited.insert(bottom);
    auto fresh = [&](Port p) { return !p.is_boundary() && !visited.contains(p.vertex); };
    auto other_end = [&](int binary, int entered) {
      return wiring.partner({binary, 1 - entered});
    };
    const int q = kind(bottom).arity;
    NormalForm nf{n, {}};
    std::vector<int> top_degree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < q; ++i) {
      NfTerm term{true, 1, std::string(static_cast<std::size_t>(n), '1')};
      Port cur = wiring.partner({bottom, i});
      if (!fresh(cur)) {
        return std::nullopt;
      }
      if (is_black(cur.vertex, 2)) {
        const int c1 = cur.vertex;
        visited.insert(c1);
        const Port fp = other_end(c1, cur.index);
        if (!fresh(fp) || !is_black(fp.vertex, -1) || kind(fp.vertex).arity < 3) {
          return std::nullopt;
        }
        const int f = fp.vertex;
        const int m = kind(f).arity - 1;
        visited.insert(f);
        int h = -1;
        std::set<int> h_ports;
        for (int k = 0; k <= m; ++k) {
          if (k == fp.index) {
            continue;
          }
          const Port hp = wiring.partner({f, k});
          if (!fresh(hp) || (h >= 0 && hp.vertex != h)) {
            return std::nullopt;
          }
          h = hp.vertex;
          h_ports.insert(hp.index);
        }
        if (!is_black(h, m + 1)) {
          return std::nullopt;
        }
        visited.insert(h);
        int h_exit = -1;
        for (int k = 0; k <= m; ++k) {
          if (!h_ports.contains(k)) {
            h_exit = k;
          }
        }
        const Port c2p = wiring.partner({h, h_exit});
        if (!fresh(c2p) || !is_black(c2p.vertex, 2)) {
          return std::nullopt;
        }
        visited.insert(c2p.vertex);
        cur = other_end(c2p.vertex, c2p.index);
        if (!fresh(cur)) {
          return std::nullopt;
        }
        term.m = m;
      }
      auto white = [&](int id) { return kind(id).color == Color::White; };
      if (white(cur.vertex) && kind(cur.vertex).arity == 2) {
        const Port next = other_end(cur.vertex, cur.index);
        if (!next.is_boundary() && !leg_of_top.contains(next.vertex)) {
          if (!fresh(next) || !white(next.vertex)) {
            return std::nullopt;
          }
          visited.insert(cur.vertex);
          term.p = false;
          cur = next;
        }
      }
      if (!white(cur.vertex)) {
        return std::nullopt;
      }
      visited.insert(cur.vertex);
      for (int k = 0; k < kind(cur.vertex).arity; ++k) {
        if (k == cur.index) {
          continue;
        }
        const Port tp = wiring.partner({cur.vertex, k});
        if (tp.is_boundary() || !leg_of_top.contains(tp.vertex)) {
          return std::nullopt;
        }
        const int j = leg_of_top[tp.vertex];
        if (term.b[static_cast<std::size_t>(j)] == '0') {
          return std::nullopt;
        }
        term.b[static_cast<std::size_t>(j)] = '0';
        ++top_degree[static_cast<std::size_t>(j)];
      }
      nf.terms.push_back(std::move(term));
    }
    if (visited.size() != g.vertices().size()) {
      return std::nullopt;
    }
    for (int j = 0; j < n; ++j) {
      if (kind(tops[static_cast<std::size_t>(j)]).arity != 1 + top_degree[static_cast<std::size_t>(j)]) {
        return std::nullopt;
      }
    }
    std::set<std::string> distinct;
    for (const auto& t : nf.terms) {
      if (!distinct.insert(t.b).second) {
        return std::nullopt;
      }
    }
    std::sort(nf.terms.begin(), nf.terms.end(),
              [](const NfTerm& a, const NfTerm& b) { return std::tie(a.b, a.p) < std::tie(b.b, b.p); });
    return nf;
  };

  for (int id : rest) {
    if (is_black(id, -1) && kind(id).arity >= 1) {
      if (auto nf = parse_from(id)) {
        return nf;
      }
    }
  }
  return std::nullopt;
}

NormalForm negate_end(const NormalForm& nf, int leg) {
  check_leg(nf, leg);
  NormalForm out = nf;
  for (auto& t : out.terms) {
    auto& bit = t.b[static_cast<std::size_t>(leg)];
    bit = bit == '0' ? '1' : '0';
  }
  return canonical(std::move(out));
}

NormalForm trace_ends(const NormalForm& nf, int j, int k, const Ring& ring) {
  check_leg(nf, j);
  check_leg(nf, k);
  if (j == k) {
    throw InvalidArgument("trace_ends needs two distinct legs");
  }
  // Group (i): b_j = b_k = 1 and group (iv): b_j = b_k = 0 survive with both
  // coordinates deleted; groups (ii) and (iii) with b_j != b_k are annihilated.
  NormalForm out{nf.legs - 2, {}};
  for (const auto& t : nf.terms) {
    const char bj = t.b[static_cast<std::size_t>(j)];
    const char bk = t.b[static_cast<std::size_t>(k)];
    if (bj != bk) {
      continue;
    }
    std::string b;
    for (int i = 0; i < nf.legs; ++i) {
      if (i != j && i != k) {
        b += t.b[static_cast<std::size_t>(i)];
      }
    }
    out.terms.push_back({t.p, t.m, std::move(b)});
  }
  return canonical(std::move(out), ring);
}

NormalForm absorb_zero(const NormalForm& nf) { return NormalForm{nf.legs, {}}; }

NormalForm juxtapose(const NormalForm& a, const NormalForm& b) {
  NormalForm out{a.legs + b.legs, {}};
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      out.terms.push_back({x.p != y.p, x.m * y.m, x.b + y.b});
    }
  }
  return canonical(std::move(out));
}

NormalForm plug_normal_forms(const NormalForm& a, const NormalForm& b,
                             const std::vector<std::pair<int, int>>& pairing, const Ring& ring) {
  std::set<int> sa;
  std::set<int> sb;
  for (auto [x, y] : pairing) {
    check_leg(a, x);
    check_leg(b, y);
    if (!sa.insert(x).second || !sb.insert(y).second) {
      throw InvalidArgument("plug pairing uses a leg twice");
    }
  }
  const int result_legs = a.legs + b.legs - 2 * static_cast<int>(pairing.size());
  if (pairing.empty()) {
    return canonical(juxtapose(a, b), ring);
  }
  if (a.terms.empty() || b.terms.empty()) {
    return absorb_zero(NormalForm{result_legs, {}});
  }
  // An end wired to no white (all bits 1) plugged into an end wired to every
  // white (all bits 0), or the reverse, yields zero.
  auto column = [](const NormalForm& nf, int leg) {
    std::set<char> bits;
    for (const auto& t : nf.terms) {
      bits.insert(t.b[static_cast<std::size_t>(leg)]);
    }
    return bits;
  };
  const auto ca = column(a, pairing[0].first);
  const auto cb = column(b, pairing[0].second);
  if (ca.size() == 1 && cb.size() == 1 && *ca.begin() != *cb.begin()) {
    return absorb_zero(NormalForm{result_legs, {}});
  }

  NormalForm acc = juxtapose(a, b);
  std::vector<int> ids(static_cast<std::size_t>(acc.legs));
  for (int i = 0; i < acc.legs; ++i) {
    ids[static_cast<std::size_t>(i)] = i;
  }
  auto pos = [&](int id) {
    return static_cast<int>(std::find(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (auto [x, y] : pairing) {
    const int pj = pos(x);
    const int pk = pos(a.legs + y);
    acc = trace_ends(acc, pj, pk, ring);
    ids.erase(ids.begin() + std::max(pj, pk));
    ids.erase(ids.begin() + std::min(pj, pk));
  }
  return acc;
}

NormalForm generator_nf(const VertexKind& kind) { return nf_of_tensor(generator_tensor(kind)); }

NormalForm wire_nf() { return nf_of_tensor(wire_tensor()); }

NormalForm reduce_mod(const NormalForm& nf, const BigInt& n) {
  return canonical(nf, Ring::modulo(n));
}

NormalForm permute_legs(const NormalForm& nf, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != nf.legs) {
    throw InvalidArgument("permutation size does not match leg count");
  }
  NormalForm out{nf.legs, {}};
  for (const auto& t : nf.terms) {
    std::string b(static_cast<std::size_t>(nf.legs), '0');
    for (int i = 0; i < nf.legs; ++i) {
      b[static_cast<std::size_t>(i)] = t.b[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    }
    out.terms.push_back({t.p, t.m, std::move(b)});
  }
  return canonical(std::move(out));
}

} // namespace zw

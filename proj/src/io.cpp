#include "zw/io.hpp"

#include "zw/error.hpp"
#include "zw/term.hpp"

#include <limits>
#include <sstream>

namespace zw {

namespace {

Json port_json(Port p) {
  if (p.is_boundary()) {
    return Json::array({"boundary", p.index});
  }
  return Json::array({p.vertex, p.index});
}

[[noreturn]] void schema_error(const std::string& what) {
  throw ParseError("invalid graph JSON: " + what, 1, 1);
}

Port port_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[1].is_number_integer()) {
    schema_error("port reference must be [vertexId, port] or [\"boundary\", position]");
  }
  if (j[0].is_string()) {
    if (j[0].get<std::string>() != "boundary") {
      schema_error("unknown port owner " + j[0].dump());
    }
    return Port::boundary(j[1].get<int>());
  }
  if (!j[0].is_number_integer()) {
    schema_error("vertex id must be an integer");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    int col = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) {
      msg = msg.substr(p);
    }
    throw ParseError(msg, line, col);
  }
}

} // namespace

Json diagram_to_json_value(const Diagram& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) {
    Json jv;
    jv["id"] = v.id;
    switch (v.kind.color) {
    case Color::Black:
      jv["kind"] = "W";
      jv["arity"] = v.kind.arity;
      break;
    case Color::White:
      jv["kind"] = "Z";
      jv["arity"] = v.kind.arity;
      break;
    case Color::Crossing:
      jv["kind"] = "X";
      if (v.kind.arity != 4) {
        jv["arity"] = v.kind.arity;
      }
      jv["strands"] = Json::array({Json::array({v.kind.strands[0].first, v.kind.strands[0].second}),
                                   Json::array({v.kind.strands[1].first, v.kind.strands[1].second})});
      break;
    }
    vertices.push_back(std::move(jv));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(Json::array({port_json(e.a), port_json(e.b)}));
  }
  Json boundary = Json::array();
  for (auto d : g.boundary()) {
    boundary.push_back(Json{{"dir", d == Direction::In ? "in" : "out"}});
  }
  Json out;
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  out["boundary"] = std::move(boundary);
  if (g.loops() != 0) {
    out["loops"] = g.loops();
  }
  return out;
}

std::string diagram_to_json(const Diagram& g) { return diagram_to_json_value(g).dump(); }

static Diagram decode_diagram(const Json& j) {
  if (!j.is_object()) {
    schema_error("top level must be an object");
  }
  for (const char* key : {"vertices", "edges", "boundary"}) {
    if (!j.contains(key) || !j[key].is_array()) {
      schema_error(std::string("missing array `") + key + "`");
    }
  }
  Diagram g;
  for (const auto& jv : j["vertices"]) {
    if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_number_integer() ||
        !jv.contains("kind") || !jv["kind"].is_string()) {
      schema_error("vertex needs integer `id` and string `kind`");
    }
    const auto kind = jv["kind"].get<std::string>();
    VertexKind k;
    if (kind == "W" || kind == "Z") {
      if (!jv.contains("arity") || !jv["arity"].is_number_integer()) {
        schema_error("W/Z vertex needs integer `arity`");
      }
      const int arity = jv["arity"].get<int>();
      k = kind == "W" ? VertexKind::black(arity) : VertexKind::white(arity);
    } else if (kind == "X") {
      if (!jv.contains("strands")) {
        schema_error("X vertex needs `strands`");
      }
      const auto& s = jv["strands"];
      if (!s.is_array() || s.size() != 2 || !s[0].is_array() || !s[1].is_array() ||
          s[0].size() != 2 || s[1].size() != 2) {
        schema_error("`strands` must be two port pairs");
      }
      k = VertexKind::crossing({{{s[0][0].get<int>(), s[0][1].get<int>()},
                                 {s[1][0].get<int>(), s[1][1].get<int>()}}});
      if (jv.contains("arity")) {
        k.arity = jv["arity"].get<int>();
      }
    } else {
      schema_error("unknown vertex kind `" + kind + "`");
    }
    g.add_vertex_with_id(jv["id"].get<int>(), k);
  }
  for (const auto& jb : j["boundary"]) {
    if (!jb.is_object() || !jb.contains("dir") || !jb["dir"].is_string()) {
      schema_error("boundary entry needs `dir`");
    }
    const auto dir = jb["dir"].get<std::string>();
    if (dir != "in" && dir != "out") {
      schema_error("boundary `dir` must be \"in\" or \"out\"");
    }
    g.add_boundary(dir == "in" ? Direction::In : Direction::Out);
  }
  for (const auto& je : j["edges"]) {
    if (!je.is_array() || je.size() != 2) {
      schema_error("edge must be a pair of port references");
    }
    g.connect(port_from_json(je[0]), port_from_json(je[1]));
  }
  if (j.contains("loops")) {
    if (!j["loops"].is_number_integer()) {
      schema_error("`loops` must be an integer");
    }
    g.add_loops(j["loops"].get<int>());
  }
  return g;
}

Diagram diagram_from_json_value(const Json& j) {
  try {
    return decode_diagram(j);
  } catch (const nlohmann::json::exception& e) {
    schema_error(e.what());
  }
}

Diagram diagram_from_json(std::string_view text) { return diagram_from_json_value(parse_json(text)); }

Diagram parse_diagram(std::string_view text, Format format) {
  Diagram g = format == Format::Term ? from_term(parse_term(text)) : diagram_from_json(text);
  require_valid(g);
  return g;
}

Json nf_to_json_value(const NormalForm& nf) {
  Json terms = Json::array();
  for (const auto& t : nf.terms) {
    Json jt;
    jt["p"] = t.p ? 1 : 0;
    if (t.m <= std::numeric_limits<std::int64_t>::max()) {
      jt["m"] = static_cast<std::int64_t>(t.m);
    } else {
      jt["m"] = t.m.str();
    }
    jt["b"] = t.b;
    terms.push_back(std::move(jt));
  }
  Json out;
  out["legs"] = nf.legs;
  out["terms"] = std::move(terms);
  return out;
}

std::string nf_to_json(const NormalForm& nf) { return nf_to_json_value(nf).dump(); }

NormalForm nf_from_json(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object() || !j.contains("legs") || !j["legs"].is_number_integer() ||
      !j.contains("terms") || !j["terms"].is_array()) {
    throw ParseError("normal form needs integer `legs` and array `terms`", 1, 1);
  }
  NormalForm nf{j["legs"].get<int>(), {}};
  for (const auto& jt : j["terms"]) {
    if (!jt.is_object() || !jt.contains("p") || !jt.contains("m") || !jt.contains("b") ||
        !jt["b"].is_string()) {
      throw ParseError("term needs `p`, `m`, `b`", 1, 1);
    }
    NfTerm t;
    t.p = jt["p"].is_boolean() ? jt["p"].get<bool>() : jt["p"].get<int>() != 0;
    t.m = jt["m"].is_string() ? BigInt(jt["m"].get<std::string>()) : BigInt(jt["m"].get<std::int64_t>());
    t.b = jt["b"].get<std::string>();
    nf.terms.push_back(std::move(t));
  }
  return nf;
}

std::string render_dot(const Diagram& g) {
  std::ostringstream out;
  out << "graph zw {\n";
  out << "  rankdir=BT;\n";
  out << "  node [fontname=\"Helvetica\", fontsize=10];\n";
  auto terminals = [&](Direction dir, const char* rank) {
    bool any = false;
    for (int i = 0; i < g.legs(); ++i) {
      if (g.boundary()[static_cast<std::size_t>(i)] == dir) {
        any = true;
      }
    }
    if (!any) {
      return;
    }
    out << "  { rank=" << rank << ";";
    for (int i = 0; i < g.legs(); ++i) {
      if (g.boundary()[static_cast<std::size_t>(i)] == dir) {
        out << " b" << i << " [shape=plaintext, label=\"" << (dir == Direction::In ? "in " : "out ")
            << i << "\"];";
      }
    }
    out << " }\n";
  };
  terminals(Direction::In, "source");
  terminals(Direction::Out, "sink");
  for (const auto& v : g.vertices()) {
    out << "  v" << v.id;
    switch (v.kind.color) {
    case Color::Black:
      out << " [shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.3, label=\""
          << v.kind.arity << "\"];\n";
      break;
    case Color::White:
      out << " [shape=circle, style=filled, fillcolor=white, width=0.3, label=\"" << v.kind.arity
          << "\"];\n";
      break;
    case Color::Crossing:
      out << " [shape=diamond, label=\"x " << v.kind.strands[0].first << v.kind.strands[0].second
          << "|" << v.kind.strands[1].first << v.kind.strands[1].second << "\"];\n";
      break;
    }
  }
  auto name = [](Port p) {
    return p.is_boundary() ? "b" + std::to_string(p.index) : "v" + std::to_string(p.vertex);
  };
  for (const auto& e : g.edges()) {
    out << "  " << name(e.a) << " -- " << name(e.b);
    std::string attrs;
    if (!e.a.is_boundary()) {
      attrs += "taillabel=\"" + std::to_string(e.a.index) + "\"";
    }
    if (!e.b.is_boundary()) {
      attrs += std::string(attrs.empty() ? "" : ", ") + "headlabel=\"" + std::to_string(e.b.index) + "\"";
    }
    if (!attrs.empty()) {
      out << " [" << attrs << "]";
    }
    out << ";\n";
  }
  for (int i = 0; i < g.loops(); ++i) {
    out << "  loop" << i << " [shape=point];\n";
    out << "  loop" << i << " -- loop" << i << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace zw

#include "zw/zw.h"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct UsageError {
  std::string message;
};

int exit_code(zw_status s) {
  switch (s) {
  case ZW_OK:
    return 0;
  case ZW_ERR_CHECK_FAILED:
    return kExitCheck;
  case ZW_ERR_PARSE:
  case ZW_ERR_INVALID_ARGUMENT:
    return kExitUsage;
  case ZW_ERR_RESOURCE:
    return kExitResource;
  default:
    return kExitInternal;
  }
}

int report(zw_status s) {
  if (s != ZW_OK && s != ZW_ERR_CHECK_FAILED) {
    std::cerr << "zw: " << zw_last_error() << "\n";
  }
  return exit_code(s);
}

// Owns a string returned by the library.
class Text {
public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { zw_string_free(p_); }
  char** out() { return &p_; }
  [[nodiscard]] std::string str() const { return p_ == nullptr ? std::string() : p_; }

private:
  char* p_ = nullptr;
};

class Graph {
public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  ~Graph() { zw_diagram_free(g_); }
  zw_diagram** out() { return &g_; }
  [[nodiscard]] const zw_diagram* get() const { return g_; }

private:
  zw_diagram* g_ = nullptr;
};

std::string read_source(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError{"cannot read " + path};
  }
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw UsageError{"cannot write " + path};
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Input {
  std::string file;
  std::string expr;
  std::string format;

  void attach(CLI::App* cmd) {
    cmd->add_option("input", file, "Diagram file (term or JSON graph), - for stdin");
    cmd->add_option("-e,--expr", expr, "Diagram given as a term on the command line");
    cmd->add_option("--format", format, "Input format")->check(CLI::IsMember({"term", "json"}));
  }

  zw_status load(Graph& g) const {
    if (file.empty() == expr.empty()) {
      throw UsageError{"exactly one of INPUT or --expr is required"};
    }
    const std::string text = expr.empty() ? read_source(file) : expr;
    zw_format fmt = ZW_FORMAT_TERM;
    if (format == "json" || (format.empty() && expr.empty() && ends_with(file, ".json"))) {
      fmt = ZW_FORMAT_JSON;
    }
    return zw_diagram_parse(text.c_str(), fmt, g.out());
  }
};

struct RingFlags {
  std::uint64_t modulus = 0;
  int leg_cap = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mod", modulus, "Evaluate over the integers modulo N")->check(CLI::PositiveNumber);
    cmd->add_option("--leg-cap", leg_cap, "Maximum number of open legs")->check(CLI::PositiveNumber);
  }

  [[nodiscard]] zw_options options() const {
    zw_options o;
    zw_options_init(&o);
    o.modulus = modulus;
    if (leg_cap > 0) {
      o.leg_cap = leg_cap;
    }
    return o;
  }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"ZW calculus toolkit"};
  app.require_subcommand(1);

  Input eval_in;
  RingFlags eval_ring;
  auto* eval_cmd = app.add_subcommand("eval", "Print the tensor of a diagram");
  eval_in.attach(eval_cmd);
  eval_ring.attach(eval_cmd);

  Input norm_in;
  RingFlags norm_ring;
  std::string trace_path;
  std::string form_path;
  auto* norm_cmd = app.add_subcommand("normalize", "Rewrite a diagram into normal form");
  norm_in.attach(norm_cmd);
  norm_ring.attach(norm_cmd);
  norm_cmd->add_option("--trace", trace_path, "Write the rewrite trace as JSON lines");
  norm_cmd->add_option("--form", form_path, "Write the NormalForm file");

  int max_arity = 4;
  RingFlags verify_ring;
  auto* verify_cmd = app.add_subcommand("verify-rules", "Check every catalog rule for soundness");
  verify_cmd->add_option("--max-arity", max_arity, "Largest schema parameter")->check(CLI::NonNegativeNumber);
  verify_ring.attach(verify_cmd);
  std::vector<std::string> extra_rule_files;
  verify_cmd->add_option("--rule", extra_rule_files, "Additional rule file to verify");

  zw_fuzz_config fuzz_cfg;
  zw_fuzz_config_init(&fuzz_cfg);
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Normalize random diagrams against the tensor oracle");
  fuzz_cmd->add_option("--count", fuzz_cfg.count, "Number of diagrams")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--seed", fuzz_cfg.seed, "Random seed")->required();
  fuzz_cmd->add_option("--max-vertices", fuzz_cfg.max_vertices)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-arity", fuzz_cfg.max_arity)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-legs", fuzz_cfg.max_legs)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--mod", fuzz_cfg.modulus, "Work over the integers modulo N")->check(CLI::PositiveNumber);

  Input render_in;
  std::string render_out = "dot";
  auto* render_cmd = app.add_subcommand("render", "Render a diagram");
  render_in.attach(render_cmd);
  render_cmd->add_option("--to", render_out, "Output format")->check(CLI::IsMember({"dot", "json"}));

  std::string tensor_path;
  RingFlags nf_ring;
  auto* nf_cmd = app.add_subcommand("nf-of-tensor", "Print the normal form of a tensor file");
  nf_cmd->add_option("tensor", tensor_path, "Tensor text file, - for stdin")->required();
  nf_ring.attach(nf_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval_cmd) {
      Graph g;
      if (auto s = eval_in.load(g); s != ZW_OK) {
        return report(s);
      }
      const zw_options o = eval_ring.options();
      Text out;
      if (auto s = zw_eval(g.get(), &o, out.out()); s != ZW_OK) {
        return report(s);
      }
      std::cout << out.str();
      return 0;
    }
    if (*norm_cmd) {
      Graph g;
      if (auto s = norm_in.load(g); s != ZW_OK) {
        return report(s);
      }
      const zw_options o = norm_ring.options();
      Text graph;
      Text form;
      Text trace;
      const auto s = zw_normalize(g.get(), &o, graph.out(), form.out(),
                                  trace_path.empty() ? nullptr : trace.out());
      if (s != ZW_OK) {
        return report(s);
      }
      if (!trace_path.empty()) {
        write_file(trace_path, trace.str());
      }
      if (!form_path.empty()) {
        write_file(form_path, form.str() + "\n");
      }
      std::cout << graph.str() << "\n";
      return 0;
    }
    if (*verify_cmd) {
      const zw_options o = verify_ring.options();
      std::vector<std::string> texts;
      for (const auto& f : extra_rule_files) {
        texts.push_back(read_source(f));
      }
      std::vector<const char*> ptrs;
      for (const auto& t : texts) {
        ptrs.push_back(t.c_str());
      }
      Text out;
      const auto s = zw_verify_rules(max_arity, &o, ptrs.data(), static_cast<int>(ptrs.size()), out.out());
      std::cout << out.str();
      return report(s);
    }
    if (*fuzz_cmd) {
      Text out;
      const auto s = zw_fuzz(&fuzz_cfg, out.out());
      std::cout << out.str();
      return report(s);
    }
    if (*render_cmd) {
      Graph g;
      if (auto s = render_in.load(g); s != ZW_OK) {
        return report(s);
      }
      Text out;
      const auto s = render_out == "dot" ? zw_diagram_to_dot(g.get(), out.out())
                                         : zw_diagram_to_json(g.get(), out.out());
      if (s != ZW_OK) {
        return report(s);
      }
      std::cout << out.str();
      if (render_out == "json") {
        std::cout << "\n";
      }
      return 0;
    }
    if (*nf_cmd) {
      const std::string text = read_source(tensor_path);
      const zw_options o = nf_ring.options();
      Text out;
      if (auto s = zw_nf_of_tensor(text.c_str(), &o, out.out()); s != ZW_OK) {
        return report(s);
      }
      std::cout << out.str() << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "zw: " << e.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

#include "zw/zw.h"

#include "zw/error.hpp"
#include "zw/fuzz.hpp"
#include "zw/io.hpp"
#include "zw/normal_form.hpp"
#include "zw/normalizer.hpp"
#include "zw/rules.hpp"
#include "zw/semantics.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct zw_diagram {
  zw::Diagram g;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

zw_status fail(zw_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

template <class F>
zw_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const zw::ParseError& e) {
    return fail(ZW_ERR_PARSE, e.what());
  } catch (const zw::TypeError& e) {
    return fail(ZW_ERR_PARSE, e.what());
  } catch (const zw::ValidationError& e) {
    return fail(ZW_ERR_PARSE, e.what());
  } catch (const zw::ResourceError& e) {
    return fail(ZW_ERR_RESOURCE, e.what());
  } catch (const zw::InvalidArgument& e) {
    return fail(ZW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ZW_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(ZW_ERR_INTERNAL, e.what());
  }
}

zw::Ring ring_of(std::uint64_t modulus) {
  return modulus == 0 ? zw::Ring::integers() : zw::Ring::modulo(modulus);
}

zw::Ring ring_of(const zw_options* opts) { return ring_of(opts == nullptr ? 0 : opts->modulus); }

int leg_cap_of(const zw_options* opts) {
  return opts == nullptr || opts->leg_cap <= 0 ? zw::kDefaultLegCap : opts->leg_cap;
}

#define ZW_REQUIRE(cond)                                                                           \
  do {                                                                                             \
    if (!(cond)) {                                                                                 \
      return fail(ZW_ERR_INVALID_ARGUMENT, "null argument: " #cond);                               \
    }                                                                                              \
  } while (0)

} // namespace

extern "C" {

void zw_options_init(zw_options* opts) {
  if (opts != nullptr) {
    opts->modulus = 0;
    opts->leg_cap = zw::kDefaultLegCap;
  }
}

void zw_fuzz_config_init(zw_fuzz_config* cfg) {
  if (cfg != nullptr) {
    const zw::FuzzConfig d;
    cfg->count = d.count;
    cfg->seed = d.seed;
    cfg->max_vertices = d.shape.max_vertices;
    cfg->max_arity = d.shape.max_arity;
    cfg->max_legs = d.shape.max_legs;
    cfg->modulus = 0;
  }
}

const char* zw_last_error(void) { return last_error.c_str(); }

void zw_string_free(char* s) { std::free(s); }

zw_status zw_diagram_parse(const char* text, zw_format format, zw_diagram** out) {
  return guarded([&] {
    ZW_REQUIRE(text != nullptr && out != nullptr);
    *out = nullptr;
    const auto fmt = format == ZW_FORMAT_JSON ? zw::Format::Json : zw::Format::Term;
    *out = new zw_diagram{zw::parse_diagram(text, fmt)};
    return ZW_OK;
  });
}

void zw_diagram_free(zw_diagram* g) { delete g; }

int zw_diagram_legs(const zw_diagram* g) { return g == nullptr ? -1 : g->g.legs(); }

zw_status zw_diagram_to_json(const zw_diagram* g, char** out) {
  return guarded([&] {
    ZW_REQUIRE(g != nullptr && out != nullptr);
    *out = dup(zw::diagram_to_json(g->g));
    return ZW_OK;
  });
}

zw_status zw_diagram_to_dot(const zw_diagram* g, char** out) {
  return guarded([&] {
    ZW_REQUIRE(g != nullptr && out != nullptr);
    *out = dup(zw::render_dot(g->g));
    return ZW_OK;
  });
}

zw_status zw_eval(const zw_diagram* g, const zw_options* opts, char** out) {
  return guarded([&] {
    ZW_REQUIRE(g != nullptr && out != nullptr);
    zw::EvalOptions eo;
    eo.leg_cap = leg_cap_of(opts);
    *out = dup(zw::to_text(zw::eval(g->g, ring_of(opts), eo)));
    return ZW_OK;
  });
}

zw_status zw_normalize(const zw_diagram* g, const zw_options* opts, char** out_graph,
                       char** out_form, char** out_trace) {
  return guarded([&] {
    ZW_REQUIRE(g != nullptr && out_graph != nullptr && out_form != nullptr);
    zw::NormalizeOptions no;
    no.leg_cap = leg_cap_of(opts);
    no.want_trace = out_trace != nullptr;
    const auto r = zw::normalize(g->g, ring_of(opts), no);
    const std::string graph = zw::diagram_to_json(r.diagram);
    const std::string form = zw::nf_to_json(r.form);
    const std::string trace = r.trace ? zw::trace_to_jsonl(*r.trace) : std::string();
    *out_graph = dup(graph);
    *out_form = dup(form);
    if (out_trace != nullptr) {
      *out_trace = dup(trace);
    }
    return ZW_OK;
  });
}

zw_status zw_nf_of_tensor(const char* tensor_text, const zw_options* opts, char** out) {
  return guarded([&] {
    ZW_REQUIRE(tensor_text != nullptr && out != nullptr);
    const zw::Ring ring = ring_of(opts);
    const zw::Tensor t = zw::tensor_from_text(tensor_text, ring);
    *out = dup(zw::nf_to_json(zw::canonical(zw::nf_of_tensor(t), ring)));
    return ZW_OK;
  });
}

zw_status zw_verify_rules(int max_arity, const zw_options* opts, const char* const* extra_rules,
                          int extra_count, char** out) {
  return guarded([&] {
    ZW_REQUIRE(out != nullptr && extra_count >= 0 && (extra_count == 0 || extra_rules != nullptr));
    if (max_arity < 0) {
      return fail(ZW_ERR_INVALID_ARGUMENT, "max arity must be non-negative");
    }
    zw::CatalogOptions co;
    co.max_arity = max_arity;
    if (opts != nullptr && opts->modulus != 0) {
      co.modulus = static_cast<int>(opts->modulus);
    }
    zw::EvalOptions eo;
    eo.leg_cap = leg_cap_of(opts);
    const zw::Ring ring = ring_of(opts);
    auto rules = zw::catalog(co);
    for (int i = 0; i < extra_count; ++i) {
      ZW_REQUIRE(extra_rules[i] != nullptr);
      rules.push_back(zw::rule_from_json(extra_rules[i]));
    }
    std::string report;
    bool all = true;
    for (const auto& rule : rules) {
      const bool ok = zw::verify_soundness(rule, ring, eo);
      all = all && ok;
      report += (ok ? "PASS " : "FAIL ") + rule.name + "\n";
    }
    *out = dup(report);
    return all ? ZW_OK : fail(ZW_ERR_CHECK_FAILED, "some rules are unsound");
  });
}

zw_status zw_fuzz(const zw_fuzz_config* cfg, char** out) {
  return guarded([&] {
    ZW_REQUIRE(cfg != nullptr && out != nullptr);
    if (cfg->count < 0 || cfg->max_vertices < 0 || cfg->max_arity < 0 || cfg->max_legs < 0) {
      return fail(ZW_ERR_INVALID_ARGUMENT, "fuzz bounds must be non-negative");
    }
    zw::FuzzConfig fc;
    fc.count = cfg->count;
    fc.seed = cfg->seed;
    fc.shape.max_vertices = cfg->max_vertices;
    fc.shape.max_arity = cfg->max_arity;
    fc.shape.max_legs = cfg->max_legs;
    fc.ring = ring_of(cfg->modulus);
    const zw::FuzzReport report = zw::run_fuzz(fc);
    std::string text = report.summary() + "\n";
    for (const auto& f : report.failures) {
      text += "diagram " + std::to_string(f.index) + ": " + f.reason + ": " + f.input + "\n";
    }
    *out = dup(text);
    return report.ok() ? ZW_OK : fail(ZW_ERR_CHECK_FAILED, "fuzz found mismatches");
  });
}

} // extern "C"

#pragma once

#include "zw/diagram.hpp"
#include "zw/normal_form.hpp"
#include "zw/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zw {

struct TraceStep {
  std::string step;
  Diagram before;
  Diagram after;
};

struct RewriteTrace {
  std::vector<TraceStep> steps;
};

struct NormalizeResult {
  Diagram diagram;
  NormalForm form;
  std::optional<RewriteTrace> trace;
};

struct NormalizeOptions {
  int leg_cap = kDefaultLegCap;
  bool want_trace = false;
};

// Replaces every crossing by the normal-form diagram of its tensor. Crossing-free
// input is returned unchanged. Appends one "crossing-elim" step per crossing.
Diagram eliminate_crossings(const Diagram& g, RewriteTrace* trace = nullptr);

// Splits White/Black vertices of arity > 3 into ternary ones joined through a
// binary vertex of the same colour (spider rules read right to left).
Diagram expand_spiders(const Diagram& g, RewriteTrace* trace = nullptr);

NormalizeResult normalize(const Diagram& g, const Ring& ring = Ring::integers(),
                          const NormalizeOptions& opts = {});

// Normal-form diagram for nf carrying the given boundary directions.
Diagram nf_to_diagram_with(const NormalForm& nf, const std::vector<Direction>& dirs);

std::string trace_to_jsonl(const RewriteTrace& trace);

} // namespace zw

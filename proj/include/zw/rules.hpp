#pragma once

#include "zw/diagram.hpp"
#include "zw/io.hpp"
#include "zw/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zw {

struct Rule {
  std::string name;
  Diagram lhs;
  Diagram rhs;
  // lhs boundary position i corresponds to rhs boundary position boundary_map[i].
  std::vector<int> boundary_map;
  std::vector<int> params;
  bool derived = false;
};

struct CatalogOptions {
  int max_arity = 4;
  std::optional<int> modulus;
};

std::vector<Rule> catalog(const CatalogOptions& opts = {});

// Fixed rules shipped as JSON data files.
std::vector<Rule> fixed_rules();
const Rule* find_rule(const std::vector<Rule>& rules, const std::string& name);

// Schema instances.
Rule spider_w(int n, int m);
Rule spider_z(int n, int m);
Rule phase(int n);
Rule automorphism_w(int n);
Rule automorphism_z(int n);
Rule bialgebra_w(int n, int m);
Rule bialgebra(int n, int m);
Rule loop_w(int n, int m);
Rule loop(int n);
Rule order(int n);

bool verify_soundness(const Rule& rule, const Ring& ring = Ring::integers(), const EvalOptions& opts = {});

Json rule_to_json_value(const Rule& rule);
Rule rule_from_json(std::string_view text);

} // namespace zw

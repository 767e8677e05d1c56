#pragma once

#include "zw/diagram.hpp"
#include "zw/normal_form.hpp"
#include "zw/rules.hpp"
#include "zw/tensor.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// Dense reference values keyed by leg bits (bit i = leg i). Zero entries absent.
using Values = std::map<std::uint64_t, long long>;

struct Dense {
  int legs = 0;
  Values v;
  bool operator==(const Dense&) const = default;
};

// Readable failure messages.
void PrintTo(const Dense& d, std::ostream* os);

// Sum over edge assignments of the product of generator values, computed
// directly from the generator definitions.
Dense eval(const zw::Diagram& g);

Dense from_nf(const zw::NormalForm& nf);
Dense from_tensor(const zw::Tensor& t);
Dense reduce(const Dense& d, long long n);

Dense contract(const Dense& a, const Dense& b, const std::vector<std::pair<int, int>>& pairing);
Dense trace(const Dense& d, int j, int k);

zw::NormalForm random_nf(std::mt19937_64& rng, int legs, int max_terms = 4, int max_coef = 3);
Dense random_dense(std::mt19937_64& rng, int legs, int lo = -3, int hi = 3);
zw::Tensor to_tensor(const Dense& d);

// Vertex bijection preserving kinds, port indices, edges, boundary and loops.
bool isomorphic(const zw::Diagram& g, const zw::Diagram& h);

// Every embedding of rule.lhs into host by exhaustive search over injective
// vertex maps and shape-preserving port bijections, keyed by image.
std::set<std::pair<std::vector<int>, std::vector<zw::Port>>> brute_force_matches(const zw::Rule& rule,
                                                                                 const zw::Diagram& host);

} // namespace oracle

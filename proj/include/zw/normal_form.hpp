#pragma once

#include "zw/diagram.hpp"
#include "zw/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zw {

// One summand (-1)^p * m * |b>.
struct NfTerm {
  bool p = false;
  BigInt m = 1;
  std::string b;

  bool operator==(const NfTerm&) const = default;
};

struct NormalForm {
  int legs = 0;
  std::vector<NfTerm> terms;

  bool operator==(const NormalForm&) const = default;
};

// Merges terms with equal bitstrings (signed sum), drops zeros, reduces in the
// ring and sorts by (b, p). Over IntegersMod n every sign ends up as p = 0.
NormalForm canonical(NormalForm nf, const Ring& ring = Ring::integers());

NormalForm nf_of_tensor(const Tensor& t);
Tensor nf_to_tensor(const NormalForm& nf, const Ring& ring = Ring::integers());

Diagram nf_to_diagram(const NormalForm& nf);
std::optional<NormalForm> is_normal_form(const Diagram& g);

Diagram deloop(const NormalForm& nf);
NormalForm negate_end(const NormalForm& nf, int leg);
NormalForm trace_ends(const NormalForm& nf, int j, int k, const Ring& ring = Ring::integers());
NormalForm absorb_zero(const NormalForm& nf);
NormalForm juxtapose(const NormalForm& a, const NormalForm& b);
NormalForm plug_normal_forms(const NormalForm& a, const NormalForm& b,
                             const std::vector<std::pair<int, int>>& pairing,
                             const Ring& ring = Ring::integers());
NormalForm generator_nf(const VertexKind& kind);
NormalForm wire_nf();
NormalForm reduce_mod(const NormalForm& nf, const BigInt& n);

// Leg i of the result is leg order[i] of nf.
NormalForm permute_legs(const NormalForm& nf, const std::vector<int>& order);

} // namespace zw

#include "zw/tensor.hpp"

#include "zw/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace zw {

Ring Ring::modulo(const BigInt& n) {
  if (n < 1) {
    throw InvalidArgument("modulus must be at least 1");
  }
  Ring r;
  r.modulus_ = n;
  return r;
}

BigInt Ring::reduce(BigInt v) const {
  if (modulus_ == 0) {
    return v;
  }
  v %= modulus_;
  if (v < 0) {
    v += modulus_;
  }
  return v;
}

std::string Ring::name() const {
  return modulus_ == 0 ? "Integers" : "IntegersMod " + modulus_.str();
}

Tensor::Tensor(int legs, Ring ring) : legs_(legs), ring_(std::move(ring)) {
  if (legs < 0 || legs > kMaxTensorLegs) {
    throw ResourceError("tensor with " + std::to_string(legs) + " legs is not representable");
  }
}

Tensor Tensor::scalar(const BigInt& v, Ring ring) {
  Tensor t(0, std::move(ring));
  t.add(0, v);
  return t;
}

BigInt Tensor::at(Key k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? BigInt(0) : it->second;
}

void Tensor::add(Key k, const BigInt& v) {
  auto it = entries_.find(k);
  if (it == entries_.end()) {
    BigInt r = ring_.reduce(v);
    if (r != 0) {
      entries_.emplace(k, std::move(r));
    }
    return;
  }
  it->second = ring_.reduce(it->second + v);
  if (it->second == 0) {
    entries_.erase(it);
  }
}

Tensor Tensor::permuted(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != legs_) {
    throw InvalidArgument("permutation size does not match leg count");
  }
  Tensor out(legs_, ring_);
  for (const auto& [k, v] : entries_) {
    Key nk = 0;
    for (int i = 0; i < legs_; ++i) {
      nk |= ((k >> order[static_cast<std::size_t>(i)]) & 1U) << i;
    }
    out.entries_.emplace(nk, v);
  }
  return out;
}

Tensor Tensor::reduced(const Ring& ring) const {
  Tensor out(legs_, ring);
  for (const auto& [k, v] : entries_) {
    out.add(k, v);
  }
  return out;
}

bool tensor_equal(const Tensor& a, const Tensor& b) {
  return a.legs() == b.legs() && a.entries() == b.entries();
}

namespace {

Tensor::Key gather(Tensor::Key k, const std::vector<int>& legs) {
  Tensor::Key out = 0;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    out |= ((k >> legs[i]) & 1U) << i;
  }
  return out;
}

} // namespace

Tensor contract(const Tensor& a, const Tensor& b, const std::vector<std::pair<int, int>>& pairing) {
  std::set<int> sa;
  std::set<int> sb;
  for (auto [i, j] : pairing) {
    if (i < 0 || i >= a.legs() || j < 0 || j >= b.legs()) {
      throw InvalidArgument("contract: leg out of range");
    }
    if (!sa.insert(i).second || !sb.insert(j).second) {
      throw InvalidArgument("contract: leg paired twice");
    }
  }
  std::vector<int> a_shared;
  std::vector<int> b_shared;
  for (auto [i, j] : pairing) {
    a_shared.push_back(i);
    b_shared.push_back(j);
  }
  std::vector<int> a_rest;
  std::vector<int> b_rest;
  for (int i = 0; i < a.legs(); ++i) {
    if (!sa.contains(i)) {
      a_rest.push_back(i);
    }
  }
  for (int j = 0; j < b.legs(); ++j) {
    if (!sb.contains(j)) {
      b_rest.push_back(j);
    }
  }
  const int legs = static_cast<int>(a_rest.size() + b_rest.size());
  if (legs > kMaxTensorLegs) {
    throw ResourceError("contraction result exceeds representable leg count");
  }
  Ring ring = a.ring();
  Tensor out(legs, ring);

  std::unordered_map<Tensor::Key, std::vector<std::pair<Tensor::Key, const BigInt*>>> index;
  for (const auto& [k, v] : b.entries()) {
    index[gather(k, b_shared)].emplace_back(gather(k, b_rest), &v);
  }
  const int shift = static_cast<int>(a_rest.size());
  for (const auto& [k, v] : a.entries()) {
    auto it = index.find(gather(k, a_shared));
    if (it == index.end()) {
      continue;
    }
    const Tensor::Key lo = gather(k, a_rest);
    for (const auto& [hi, w] : it->second) {
      out.add(lo | (hi << shift), v * *w);
    }
  }
  return out;
}

Tensor trace(const Tensor& t, int j, int k) {
  if (j < 0 || k < 0 || j >= t.legs() || k >= t.legs() || j == k) {
    throw InvalidArgument("trace: legs must be distinct and in range");
  }
  std::vector<int> rest;
  for (int i = 0; i < t.legs(); ++i) {
    if (i != j && i != k) {
      rest.push_back(i);
    }
  }
  Tensor out(t.legs() - 2, t.ring());
  for (const auto& [key, v] : t.entries()) {
    if (((key >> j) & 1U) == ((key >> k) & 1U)) {
      out.add(gather(key, rest), v);
    }
  }
  return out;
}

std::string bitstring(Tensor::Key k, int legs) {
  if (legs == 0) {
    return "-";
  }
  std::string s(static_cast<std::size_t>(legs), '0');
  for (int i = 0; i < legs; ++i) {
    if (((k >> i) & 1U) != 0) {
      s[static_cast<std::size_t>(i)] = '1';
    }
  }
  return s;
}

std::string to_text(const Tensor& t) {
  std::vector<std::pair<std::string, const BigInt*>> rows;
  rows.reserve(t.entries().size());
  for (const auto& [k, v] : t.entries()) {
    rows.emplace_back(bitstring(k, t.legs()), &v);
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [b, v] : rows) {
    out += b;
    out += ' ';
    out += v->str();
    out += '\n';
  }
  return out;
}

Tensor tensor_from_text(std::string_view text, Ring ring, int legs) {
  std::istringstream in{std::string(text)};
  if (legs < 0) {
    std::istringstream probe{std::string(text)};
    std::string first;
    if (!(probe >> first)) {
      throw ParseError("empty tensor text needs an explicit leg count", 1, 1);
    }
    legs = first == "-" ? 0 : static_cast<int>(first.size());
  }
  Tensor t(legs, std::move(ring));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string bits;
    std::string coef;
    if (!(ls >> bits)) {
      continue;
    }
    if (!(ls >> coef)) {
      throw ParseError("missing coefficient", lineno, static_cast<int>(bits.size()) + 1);
    }
    Tensor::Key k = 0;
    if (bits == "-") {
      if (legs != 0) {
        throw ParseError("scalar entry in a tensor with legs", lineno, 1);
      }
    } else {
      if (static_cast<int>(bits.size()) != legs) {
        throw ParseError("bitstring length does not match leg count", lineno, 1);
      }
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') {
          throw ParseError("bitstring must contain only 0 and 1", lineno, static_cast<int>(i) + 1);
        }
        if (bits[i] == '1') {
          k |= Tensor::Key{1} << i;
        }
      }
    }
    BigInt v;
    try {
      v = BigInt(coef);
    } catch (const std::exception&) {
      throw ParseError("malformed coefficient `" + coef + "`", lineno,
                       static_cast<int>(line.find(coef)) + 1);
    }
    t.add(k, v);
  }
  return t;
}

} // namespace zw

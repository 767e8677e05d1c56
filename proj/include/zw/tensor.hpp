#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zw {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxTensorLegs = 62;

class Ring {
public:
  static Ring integers() { return Ring{}; }
  static Ring modulo(const BigInt& n);

  [[nodiscard]] bool is_integers() const noexcept { return modulus_ == 0; }
  [[nodiscard]] const BigInt& modulus() const noexcept { return modulus_; }
  [[nodiscard]] BigInt reduce(BigInt v) const;
  [[nodiscard]] std::string name() const;

  bool operator==(const Ring&) const = default;

private:
  BigInt modulus_ = 0;
};

// Sparse tensor over a ring. Bit i of an entry key is the value on leg i.
class Tensor {
public:
  using Key = std::uint64_t;

  explicit Tensor(int legs = 0, Ring ring = Ring::integers());

  static Tensor scalar(const BigInt& v, Ring ring = Ring::integers());

  [[nodiscard]] int legs() const noexcept { return legs_; }
  [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
  [[nodiscard]] const std::map<Key, BigInt>& entries() const noexcept { return entries_; }
  [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }
  [[nodiscard]] BigInt at(Key k) const;

  // Accumulates v into entry k, reducing in the ring and dropping zeros.
  void add(Key k, const BigInt& v);

  // Leg i of the result is leg order[i] of this tensor.
  [[nodiscard]] Tensor permuted(const std::vector<int>& order) const;
  [[nodiscard]] Tensor reduced(const Ring& ring) const;

private:
  int legs_;
  Ring ring_;
  std::map<Key, BigInt> entries_;
};

bool tensor_equal(const Tensor& a, const Tensor& b);

// Sum over paired legs with the delta metric; remaining legs a-then-b.
Tensor contract(const Tensor& a, const Tensor& b, const std::vector<std::pair<int, int>>& pairing);

// Delta-contraction of two legs of one tensor.
Tensor trace(const Tensor& t, int j, int k);

// `<bitstring> <coefficient>` lines, sorted by bitstring (leg 0 first); `-` for scalars.
std::string to_text(const Tensor& t);
// legs < 0 infers the leg count from the first entry; an empty text then needs legs >= 0.
Tensor tensor_from_text(std::string_view text, Ring ring = Ring::integers(), int legs = -1);

std::string bitstring(Tensor::Key k, int legs);

} // namespace zw

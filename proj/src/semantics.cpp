#include "zw/semantics.hpp"

#include "zw/error.hpp"

#include <algorithm>
#include <random>

namespace zw {

Tensor generator_tensor(const VertexKind& kind, const Ring& ring) {
  const int n = kind.arity;
  Tensor t(n, ring);
  switch (kind.color) {
  case Color::Black:
    for (int i = 0; i < n; ++i) {
      t.add(Tensor::Key{1} << i, 1);
    }
    break;
  case Color::White:
    t.add(0, 1);
    t.add(n == 0 ? 0 : (Tensor::Key{1} << n) - 1, -1);
    break;
  case Color::Crossing:
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        Tensor::Key k = 0;
        const auto& [a, b] = kind.strands[0];
        const auto& [c, d] = kind.strands[1];
        if (x == 1) {
          k |= (Tensor::Key{1} << a) | (Tensor::Key{1} << b);
        }
        if (y == 1) {
          k |= (Tensor::Key{1} << c) | (Tensor::Key{1} << d);
        }
        t.add(k, (x == 1 && y == 1) ? -1 : 1);
      }
    }
    break;
  }
  return t;
}

Tensor wire_tensor(const Ring& ring) {
  Tensor t(2, ring);
  t.add(0, 1);
  t.add(3, 1);
  return t;
}

namespace {

constexpr long kOpen = 1L << 40;

struct Item {
  Tensor t;
  std::vector<long> labels;
};

// Contract any label repeated inside a single item.
void self_trace(Item& it) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < it.labels.size() && !again; ++i) {
      for (std::size_t j = i + 1; j < it.labels.size(); ++j) {
        if (it.labels[i] == it.labels[j]) {
          it.t = trace(it.t, static_cast<int>(i), static_cast<int>(j));
          it.labels.erase(it.labels.begin() + static_cast<long>(j));
          it.labels.erase(it.labels.begin() + static_cast<long>(i));
          again = true;
          break;
        }
      }
    }
  }
}

std::vector<std::pair<int, int>> shared_legs(const Item& a, const Item& b) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    for (std::size_t j = 0; j < b.labels.size(); ++j) {
      if (a.labels[i] == b.labels[j]) {
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return out;
}

Item merge(const Item& a, const Item& b) {
  auto pairs = shared_legs(a, b);
  Item out{contract(a.t, b.t, pairs), {}};
  for (long l : a.labels) {
    if (std::find(b.labels.begin(), b.labels.end(), l) == b.labels.end()) {
      out.labels.push_back(l);
    }
  }
  for (long l : b.labels) {
    if (std::find(a.labels.begin(), a.labels.end(), l) == a.labels.end()) {
      out.labels.push_back(l);
    }
  }
  return out;
}

} // namespace

Tensor eval(const Diagram& g, const Ring& ring, const EvalOptions& opts) {
  require_valid(g);
  if (g.legs() > opts.leg_cap) {
    throw ResourceError("diagram has " + std::to_string(g.legs()) + " open legs, cap is " +
                        std::to_string(opts.leg_cap));
  }

  std::vector<Item> items;
  std::vector<std::vector<long>> port_labels;
  std::vector<int> vertex_index(static_cast<std::size_t>(g.next_id()), -1);
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const auto& v = g.vertices()[i];
    vertex_index[static_cast<std::size_t>(v.id)] = static_cast<int>(i);
    items.push_back({generator_tensor(v.kind, ring), std::vector<long>(static_cast<std::size_t>(v.kind.arity))});
  }
  auto slot = [&](Port p) -> long& {
    return items[static_cast<std::size_t>(vertex_index[static_cast<std::size_t>(p.vertex)])]
        .labels[static_cast<std::size_t>(p.index)];
  };
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& [a, b] = g.edges()[e];
    if (a.is_boundary() && b.is_boundary()) {
      items.push_back({wire_tensor(ring), {kOpen + a.index, kOpen + b.index}});
    } else if (a.is_boundary()) {
      slot(b) = kOpen + a.index;
    } else if (b.is_boundary()) {
      slot(a) = kOpen + b.index;
    } else {
      slot(a) = static_cast<long>(e);
      slot(b) = static_cast<long>(e);
    }
  }
  for (auto& it : items) {
    if (it.t.is_zero()) {
      return Tensor(g.legs(), ring);
    }
    self_trace(it);
  }

  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
  while (items.size() > 1) {
    std::size_t bi = 0;
    std::size_t bj = 1;
    if (opts.shuffle_seed) {
      std::vector<std::pair<std::size_t, std::size_t>> candidates;
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
          if (!shared_legs(items[i], items[j]).empty()) {
            candidates.emplace_back(i, j);
          }
        }
      }
      if (!candidates.empty()) {
        std::tie(bi, bj) = candidates[rng() % candidates.size()];
      } else {
        bi = rng() % items.size();
        bj = rng() % (items.size() - 1);
        if (bj >= bi) {
          ++bj;
        }
        if (bi > bj) {
          std::swap(bi, bj);
        }
      }
    } else {
      long best = -1;
      bool best_shares = false;
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
          const auto shared = static_cast<long>(shared_legs(items[i], items[j]).size());
          const bool shares = shared > 0;
          const long result =
              static_cast<long>(items[i].labels.size() + items[j].labels.size()) - 2 * shared;
          if (best < 0 || (shares && !best_shares) || (shares == best_shares && result < best)) {
            best = result;
            best_shares = shares;
            bi = i;
            bj = j;
          }
        }
      }
    }
    Item merged = merge(items[bi], items[bj]);
    items.erase(items.begin() + static_cast<long>(bj));
    items[bi] = std::move(merged);
    if (items[bi].t.is_zero()) {
      return Tensor(g.legs(), ring);
    }
  }

  Tensor result = Tensor::scalar(1, ring);
  std::vector<long> labels;
  if (!items.empty()) {
    result = std::move(items[0].t);
    labels = std::move(items[0].labels);
  }
  std::vector<int> order(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto pos = std::find(labels.begin(), labels.end(), kOpen + static_cast<long>(i));
    order[i] = static_cast<int>(pos - labels.begin());
  }
  result = result.permuted(order);
  if (g.loops() > 0) {
    BigInt factor = 1;
    factor <<= g.loops();
    result = contract(result, Tensor::scalar(factor, ring), {});
  }
  return result;
}

} // namespace zw

#pragma once
// Signed block collections and the inclusion-counting operator: a collection
// f maps k-blocks to integer coefficients, and apply_w(t, f) counts, for each
// t-subset, the signed number of blocks containing it.  f is a trade when
// that vector vanishes and a design with index lambda when it is constant.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "combinatorics.hpp"

namespace tradeforge {

class SignedCollection {
 public:
  SignedCollection(int v, int k) : v_(v), k_(k) {
    if (v < 1 || k < 1 || k > v) throw std::invalid_argument("SignedCollection: need 1 <= k <= v");
  }

  int v() const { return v_; }
  int k() const { return k_; }

  /// Adds coef copies of a block; entries cancelling to zero are erased.
  void add(const Block& b, std::int64_t coef) {
    if (b.size() != k_) throw std::invalid_argument("SignedCollection::add: wrong block size");
    if (!b.valid_for(v_)) throw std::invalid_argument("SignedCollection::add: block not within [0, v)");
    if (coef == 0) return;
    auto it = entries_.find(b);
    if (it == entries_.end()) {
      entries_.emplace(b, coef);
    } else {
      it->second = checked_add(it->second, coef);
      if (it->second == 0) entries_.erase(it);
    }
  }

  std::int64_t coeff(const Block& b) const {
    auto it = entries_.find(b);
    return it == entries_.end() ? 0 : it->second;
  }

  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<Block, std::int64_t>& entries() const { return entries_; }

  SignedCollection& operator+=(const SignedCollection& o) {
    if (o.v_ != v_ || o.k_ != k_) throw std::invalid_argument("SignedCollection: mismatched (v, k)");
    for (const auto& [b, c] : o.entries_) add(b, c);
    return *this;
  }
  SignedCollection& operator-=(const SignedCollection& o) {
    if (o.v_ != v_ || o.k_ != k_) throw std::invalid_argument("SignedCollection: mismatched (v, k)");
    for (const auto& [b, c] : o.entries_) add(b, -c);
    return *this;
  }

  friend SignedCollection operator+(SignedCollection lhs, const SignedCollection& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend SignedCollection operator-(SignedCollection lhs, const SignedCollection& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend SignedCollection operator-(SignedCollection f) {
    for (auto& [b, c] : f.entries_) c = -c;
    return f;
  }

  friend bool operator==(const SignedCollection& x, const SignedCollection& y) {
    return x.v_ == y.v_ && x.k_ == y.k_ && x.entries_ == y.entries_;
  }

 private:
  int v_, k_;
  std::map<Block, std::int64_t> entries_;
};

namespace detail {

/// Calls fn(sub) for every t-subset of elems, in lexicographic index order.
template <typename F>
void for_each_subset(const std::vector<int>& elems, int t, F&& fn) {
  const int k = static_cast<int>(elems.size());
  if (t < 0 || t > k) return;
  std::vector<int> idx(static_cast<std::size_t>(t));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> sub(static_cast<std::size_t>(t));
  for (;;) {
    for (int i = 0; i < t; ++i) sub[static_cast<std::size_t>(i)] = elems[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    fn(sub);
    int i = t - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - t + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline void check_w_params(int t, const SignedCollection& f) {
  if (t < 0 || t > f.k() || f.k() > f.v() - t) {
    throw std::invalid_argument("apply_w: need 0 <= t <= k <= v - t");
  }
}

}  // namespace detail

/// Dense vector of t-subset counts, indexed by lexicographic rank.
struct TSubsetVector {
  int v = 0;
  int t = 0;
  std::vector<std::int64_t> counts;
};

/// Computes W_{t,k}(v) * f without materializing the matrix.
inline TSubsetVector apply_w(int t, const SignedCollection& f) {
  detail::check_w_params(t, f);
  TSubsetVector out{f.v(), t, std::vector<std::int64_t>(static_cast<std::size_t>(binomial(f.v(), t)), 0)};
  for (const auto& [block, coef] : f.entries()) {
    detail::for_each_subset(block.elements(), t, [&](const std::vector<int>& sub) {
      const auto r = static_cast<std::size_t>(rank_lex(Block(sub), f.v()));
      out.counts[r] = checked_add(out.counts[r], coef);
    });
  }
  return out;
}

/// Same result as the sequential overload; blocks are fanned out over `jobs`
/// threads and the per-thread count vectors summed (addition commutes, so the
/// schedule cannot change the outcome).
inline TSubsetVector apply_w(int t, const SignedCollection& f, int jobs) {
  detail::check_w_params(t, f);
  if (jobs < 1) throw std::invalid_argument("apply_w: jobs must be >= 1");
  if (jobs == 1 || f.support_size() < 2) return apply_w(t, f);

  std::vector<std::pair<const Block*, std::int64_t>> work;
  work.reserve(f.support_size());
  for (const auto& [b, c] : f.entries()) work.emplace_back(&b, c);

  const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(jobs), work.size()));
  const auto n_counts = static_cast<std::size_t>(binomial(f.v(), t));
  std::vector<std::vector<std::int64_t>> partial(n_threads, std::vector<std::int64_t>(n_counts, 0));
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t s = 0; s < n_threads; ++s) {
    threads.emplace_back([&, s] {
      auto& mine = partial[s];
      for (std::size_t i = s; i < work.size(); i += n_threads) {
        detail::for_each_subset(work[i].first->elements(), t, [&](const std::vector<int>& sub) {
          const auto r = static_cast<std::size_t>(rank_lex(Block(sub), f.v()));
          mine[r] = checked_add(mine[r], work[i].second);
        });
      }
    });
  }
  for (auto& th : threads) th.join();

  TSubsetVector out{f.v(), t, std::vector<std::int64_t>(n_counts, 0)};
  for (const auto& p : partial) {
    for (std::size_t r = 0; r < n_counts; ++r) out.counts[r] = checked_add(out.counts[r], p[r]);
  }
  return out;
}

inline bool is_trade(int t, const SignedCollection& f) {
  const auto w = apply_w(t, f);
  for (auto c : w.counts) {
    if (c != 0) return false;
  }
  return true;
}

/// Design with index lambda: every coefficient nonnegative and every
/// t-subset covered exactly lambda times.
inline bool is_design(int t, std::int64_t lambda, const SignedCollection& f) {
  if (lambda < 1) throw std::invalid_argument("is_design: lambda must be positive");
  for (const auto& [b, c] : f.entries()) {
    if (c < 0) return false;
  }
  const auto w = apply_w(t, f);
  for (auto c : w.counts) {
    if (c != lambda) return false;
  }
  return true;
}

/// First t-subset whose count differs from lambda, if any.
inline std::optional<std::pair<Block, std::int64_t>> first_violation(int t, std::int64_t lambda,
                                                                     const SignedCollection& f) {
  const auto w = apply_w(t, f);
  for (std::size_t r = 0; r < w.counts.size(); ++r) {
    if (w.counts[r] != lambda) {
      return std::make_pair(unrank_lex(static_cast<std::int64_t>(r), f.v(), t), w.counts[r]);
    }
  }
  return std::nullopt;
}

/// Splits f into its positive and negative legs (both with positive coefficients).
inline std::pair<SignedCollection, SignedCollection> legs(const SignedCollection& f) {
  SignedCollection pos(f.v(), f.k()), neg(f.v(), f.k());
  for (const auto& [b, c] : f.entries()) {
    if (c > 0) {
      pos.add(b, c);
    } else {
      neg.add(b, -c);
    }
  }
  return {std::move(pos), std::move(neg)};
}

struct VolumeReport {
  std::int64_t value = 0;  // size of the larger leg; the common size when balanced
  bool balanced = false;   // legs equal in size
};

inline VolumeReport volume(const SignedCollection& f) {
  std::int64_t pos = 0, neg = 0;
  for (const auto& [b, c] : f.entries()) {
    if (c > 0) {
      pos = checked_add(pos, c);
    } else {
      neg = checked_add(neg, -c);
    }
  }
  return {std::max(pos, neg), pos == neg};
}

inline std::set<int> foundation(const SignedCollection& f) {
  std::set<int> out;
  for (const auto& [b, c] : f.entries()) out.insert(b.begin(), b.end());
  return out;
}

/// All coefficients in {-1, +1}.
inline bool is_simple(const SignedCollection& f) {
  for (const auto& [b, c] : f.entries()) {
    if (c != 1 && c != -1) return false;
  }
  return true;
}

/// Simple 2-trade whose support is all of C([0,v), k), split half and half.
inline bool is_halving(const SignedCollection& f) {
  const std::int64_t total = binomial(f.v(), f.k());
  if (static_cast<std::int64_t>(f.support_size()) != total) return false;
  if (!is_simple(f)) return false;
  const auto vol = volume(f);
  if (!vol.balanced || vol.value * 2 != total) return false;
  return is_trade(2, f);
}

/// Parity condition necessary for a (t,k,v)-halving to exist:
/// binomial(v-i, k-i) even for every 0 <= i <= t.
inline bool halving_admissible(int t, int k, int v) {
  if (t < 0 || t > k || k > v - t) throw std::invalid_argument("halving_admissible: need 0 <= t <= k <= v - t");
  for (int i = 0; i <= t; ++i) {
    if (binomial(v - i, k - i) % 2 != 0) return false;
  }
  return true;
}

}  // namespace tradeforge

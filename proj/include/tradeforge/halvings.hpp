#pragma once
// Halving builders.  Four routes to a simple 2-trade supported on all of
// C(X, 3) with half the blocks in each leg:
//   * an incremental greedy search that grows a trade until it halves,
//   * a signed sum of overlapping ten-block trades,
//   * a partition into minimal trades plus one Eulerian edge-bundle trade,
//   * a partition routed through a Steiner triple system (with a matching
//     of leftover pair indices when the congruence requires it),
// plus a randomized hill climb that assembles a fifteen-piece partition of
// C(X, 3) at v = 10 from minimal trades alone.

#include <array>
#include <atomic>
#include <bitset>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "combinatorics.hpp"
#include "sts.hpp"
#include "trades.hpp"

namespace tradeforge {

/// Thrown when an iteration or restart cap is exhausted.
struct search_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TradeKind {
  minimal,       // eight-block product trade
  cycle6,        // triangle edge bundle (six blocks)
  cycle8,        // 4-cycle edge bundle (eight blocks)
  v10,           // ten-block overlapping-foundation trade
  ak_companion,  // greedy companion trade absorbed during the incremental search
  cycle,         // edge bundle on a longer closed walk
};

inline const char* to_string(TradeKind k) {
  switch (k) {
    case TradeKind::minimal: return "minimal";
    case TradeKind::cycle6: return "cycle6";
    case TradeKind::cycle8: return "cycle8";
    case TradeKind::v10: return "v10";
    case TradeKind::ak_companion: return "ak-companion";
    case TradeKind::cycle: return "cycle";
  }
  throw std::invalid_argument("to_string: unknown trade kind");
}

inline TradeKind trade_kind_from_string(const std::string& s) {
  if (s == "minimal") return TradeKind::minimal;
  if (s == "cycle6") return TradeKind::cycle6;
  if (s == "cycle8") return TradeKind::cycle8;
  if (s == "v10") return TradeKind::v10;
  if (s == "ak-companion") return TradeKind::ak_companion;
  if (s == "cycle") return TradeKind::cycle;
  throw std::invalid_argument("trade_kind_from_string: unknown kind '" + s + "'");
}

struct TradeDecomposition {
  struct Constituent {
    TradeKind kind;
    SignedCollection trade;
  };

  int v = 0;
  int k = 3;
  std::vector<Constituent> constituents;
};

/// Plain sum of the constituents (they are stored already signed).
inline SignedCollection sum_decomposition(const TradeDecomposition& d) {
  SignedCollection f(d.v, d.k);
  for (const auto& c : d.constituents) f += c.trade;
  return f;
}

namespace detail {

/// Uniform integer in [0, n) by rejection, identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  if (n == 0) throw std::logic_error("uniform_below: empty range");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

inline ClosedWalk euler_on_complete(int m, std::mt19937_64* rng) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("eulerian_circuit: need odd m >= 3");
  std::vector<std::set<int>> adj(static_cast<std::size_t>(m));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x != y) adj[static_cast<std::size_t>(x)].insert(y);
    }
  }
  // Walk greedily until stuck; every vertex has even degree, so the walk can
  // only stall back at its starting vertex.
  auto extend = [&](int start) {
    std::vector<int> path{start};
    int cur = start;
    while (!adj[static_cast<std::size_t>(cur)].empty()) {
      auto& nbrs = adj[static_cast<std::size_t>(cur)];
      auto it = nbrs.begin();
      if (rng != nullptr) std::advance(it, static_cast<std::ptrdiff_t>(uniform_below(*rng, nbrs.size())));
      const int nxt = *it;
      nbrs.erase(it);
      adj[static_cast<std::size_t>(nxt)].erase(cur);
      path.push_back(nxt);
      cur = nxt;
    }
    if (cur != start) throw std::logic_error("eulerian_circuit: walk stalled away from its start");
    return path;
  };
  std::vector<int> tour = extend(0);
  for (;;) {
    // Splice a subtour at the first position with unused edges.
    std::size_t pos = 0;
    while (pos < tour.size() && adj[static_cast<std::size_t>(tour[pos])].empty()) ++pos;
    if (pos == tour.size()) break;
    const std::vector<int> sub = extend(tour[pos]);
    std::vector<int> merged;
    merged.reserve(tour.size() + sub.size() - 1);
    merged.insert(merged.end(), tour.begin(), tour.begin() + static_cast<std::ptrdiff_t>(pos));
    merged.insert(merged.end(), sub.begin(), sub.end());
    merged.insert(merged.end(), tour.begin() + static_cast<std::ptrdiff_t>(pos) + 1, tour.end());
    tour = std::move(merged);
  }
  ClosedWalk w;
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) w.edges.emplace_back(tour[i], tour[i + 1]);
  if (static_cast<std::int64_t>(w.edges.size()) != binomial(m, 2)) {
    throw std::logic_error("eulerian_circuit: circuit does not cover every edge");
  }
  return w;
}

inline void require_split_v(int v, const char* who) {
  if (v < 6 || v % 4 != 2) {
    throw std::invalid_argument(std::string(who) + ": v must be congruent to 2 mod 4 and at least 6");
  }
}

inline void require_matching_labelling(int v, const Labelling& lab, const char* who) {
  if (lab.v() != v) throw std::invalid_argument(std::string(who) + ": labelling is for a different v");
}

}  // namespace detail

/// Deterministic Eulerian circuit of the complete graph on {0..m-1}:
/// Hierholzer from vertex 0, always taking the lowest-index unused neighbor.
inline ClosedWalk eulerian_circuit(int m) { return detail::euler_on_complete(m, nullptr); }

/// Randomized variant: neighbor choices are drawn from rng.
inline ClosedWalk eulerian_circuit(int m, std::mt19937_64& rng) {
  return detail::euler_on_complete(m, &rng);
}

/// Partition of C(X, 3) into one minimal trade per 3-subset of pair indices
/// plus a single edge-bundle trade on an Eulerian circuit of the complete
/// graph on pair indices.  The sum is a halving; the constituent supports
/// are pairwise disjoint and cover every block.
inline std::pair<SignedCollection, TradeDecomposition> partition_halving(
    int v, const Labelling& lab, std::mt19937_64* circuit_rng = nullptr) {
  detail::require_split_v(v, "partition_halving");
  detail::require_matching_labelling(v, lab, "partition_halving");
  const int h = v / 2;
  TradeDecomposition d{v, 3, {}};
  std::vector<int> idx(static_cast<std::size_t>(h));
  std::iota(idx.begin(), idx.end(), 0);
  detail::for_each_subset(idx, 3, [&](const std::vector<int>& alpha) {
    const OrderedTriple a{lab.a(alpha[0]), lab.a(alpha[1]), lab.a(alpha[2])};
    const OrderedTriple b{lab.b(alpha[0]), lab.b(alpha[1]), lab.b(alpha[2])};
    d.constituents.push_back({TradeKind::minimal, minimal_trade(v, a, b)});
  });
  const ClosedWalk walk = circuit_rng ? eulerian_circuit(h, *circuit_rng) : eulerian_circuit(h);
  d.constituents.push_back({TradeKind::cycle, cycle_trade(walk, lab)});
  SignedCollection f = sum_decomposition(d);
  if (!is_halving(f)) throw std::logic_error("partition_halving: aggregate failed verification");
  return {std::move(f), std::move(d)};
}

inline std::pair<SignedCollection, TradeDecomposition> partition_halving(int v) {
  return partition_halving(v, default_labelling(v));
}

/// Signed constituents of the overlapping-sum halving: one ten-block trade
/// per 3-subset alpha of pair indices, signed by the parity of
/// alpha_0 + alpha_1 + alpha_2 (+ parity_base flips the whole sign).
inline TradeDecomposition v10_constituents(int v, const Labelling& lab, int parity_base = 0) {
  detail::require_split_v(v, "v10_halving");
  detail::require_matching_labelling(v, lab, "v10_halving");
  if (parity_base != 0 && parity_base != 1) {
    throw std::invalid_argument("v10_halving: parity_base must be 0 or 1");
  }
  const int h = v / 2;
  TradeDecomposition d{v, 3, {}};
  std::vector<int> idx(static_cast<std::size_t>(h));
  std::iota(idx.begin(), idx.end(), 0);
  detail::for_each_subset(idx, 3, [&](const std::vector<int>& alpha) {
    SignedCollection t = v10_trade(OrderedTriple{alpha[0], alpha[1], alpha[2]}, lab);
    // parity of the index sum, with all three indices shifted by parity_base
    const int parity = (alpha[0] + alpha[1] + alpha[2] + 3 * parity_base) % 2;
    d.constituents.push_back({TradeKind::v10, parity ? -std::move(t) : std::move(t)});
  });
  return d;
}

/// Halving as a signed sum of overlapping ten-block trades.
inline SignedCollection v10_halving(int v, const Labelling& lab, int parity_base = 0) {
  SignedCollection f = sum_decomposition(v10_constituents(v, lab, parity_base));
  if (!is_halving(f)) throw std::logic_error("v10_halving: aggregate failed verification");
  return f;
}

inline SignedCollection v10_halving(int v) { return v10_halving(v, default_labelling(v)); }

/// Partition of C(X, 3) whose cycle part is routed through a Steiner triple
/// system on the pair indices.  With h = v/2:
///   * h = 1, 3 mod 6: one triangle per triple of an STS(h);
///   * h = 5 mod 6: triangles of an STS(h-2), a fixed triangle on the last
///     three indices, and one 4-cycle (h-2, i, h-1, j) per matched pair
///     {i, j} of the remaining indices.
inline std::pair<SignedCollection, TradeDecomposition> structured_partition(
    int v, const Labelling& lab, const TripleSystem& sts, const PairPartition& matching = {}) {
  detail::require_split_v(v, "structured_partition");
  detail::require_matching_labelling(v, lab, "structured_partition");
  const int h = v / 2;
  const bool direct = (h % 6 == 1 || h % 6 == 3);
  const int want_order = direct ? h : h - 2;
  if (sts.order != want_order) {
    throw std::invalid_argument("structured_partition: triple system has order " +
                                std::to_string(sts.order) + ", need " + std::to_string(want_order));
  }
  if (!verify_sts(sts)) {
    throw std::invalid_argument("structured_partition: triple system failed verification");
  }

  TradeDecomposition d{v, 3, {}};
  std::vector<int> idx(static_cast<std::size_t>(h));
  std::iota(idx.begin(), idx.end(), 0);
  detail::for_each_subset(idx, 3, [&](const std::vector<int>& alpha) {
    const OrderedTriple a{lab.a(alpha[0]), lab.a(alpha[1]), lab.a(alpha[2])};
    const OrderedTriple b{lab.b(alpha[0]), lab.b(alpha[1]), lab.b(alpha[2])};
    d.constituents.push_back({TradeKind::minimal, minimal_trade(v, a, b)});
  });

  for (const auto& tr : sts.triples) {
    d.constituents.push_back(
        {TradeKind::cycle6, cycle_trade(IndexCycle{{tr[0], tr[1], tr[2]}}, lab)});
  }
  if (!direct) {
    d.constituents.push_back(
        {TradeKind::cycle6, cycle_trade(IndexCycle{{h - 3, h - 2, h - 1}}, lab)});
    validate_pair_partition(matching, h - 3);
    for (const auto& [i, j] : matching.pairs) {
      d.constituents.push_back(
          {TradeKind::cycle8, cycle_trade(IndexCycle{{h - 2, i, h - 1, j}}, lab)});
    }
  }

  SignedCollection f = sum_decomposition(d);
  if (!is_halving(f)) throw std::logic_error("structured_partition: aggregate failed verification");
  return {std::move(f), std::move(d)};
}

/// Defaults: the classical 7- and 9-point systems where they fit, generated
/// systems otherwise, and the matching {{0,1}, {2,3}, ...}.
inline std::pair<SignedCollection, TradeDecomposition> structured_partition(int v, const Labelling& lab) {
  detail::require_split_v(v, "structured_partition");
  const int h = v / 2;
  const bool direct = (h % 6 == 1 || h % 6 == 3);
  const int order = direct ? h : h - 2;
  TripleSystem sts;
  if (order == 7) {
    sts = reference_sts7();
  } else if (order == 9) {
    sts = reference_sts9();
  } else {
    sts = sts_generate(order);
  }
  return structured_partition(v, lab, sts, direct ? PairPartition{} : default_pair_partition(h - 3));
}

inline std::pair<SignedCollection, TradeDecomposition> structured_partition(int v) {
  return structured_partition(v, default_labelling(v));
}

struct AkRun {
  SignedCollection halving;
  TradeDecomposition decomposition;  // signed companion trades, in absorption order
  std::uint64_t iterations = 0;      // absorption steps after the seed trade
};

/// Incremental greedy construction: seed with the companion trade of the
/// first block, then repeatedly take the first block missing from the
/// support and add its companion trade, or subtract it when adding breaks
/// simplicity.  Terminates when the running sum is a halving.
inline AkRun ak_halving_run(int v, std::int64_t max_iterations = 1'000'000) {
  detail::require_split_v(v, "ak_halving");
  if (max_iterations < 0) throw std::invalid_argument("ak_halving: negative iteration cap");
  const std::int64_t total = binomial(v, 3);
  AkRun run{SignedCollection(v, 3), TradeDecomposition{v, 3, {}}, 0};
  SignedCollection t = ak_companion(Block::of({0, 1, 2}), v);
  run.decomposition.constituents.push_back({TradeKind::ak_companion, t});
  while (!is_halving(t)) {
    if (static_cast<std::int64_t>(run.iterations) >= max_iterations) {
      throw search_limit_error("ak_halving: iteration cap of " + std::to_string(max_iterations) +
                               " exceeded at v=" + std::to_string(v));
    }
    Block missing;
    bool found = false;
    for (std::int64_t r = 0; r < total; ++r) {
      Block b = unrank_lex(r, v, 3);
      if (t.coeff(b) == 0) {
        missing = std::move(b);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("ak_halving: full support but not a halving");
    SignedCollection comp = ak_companion(missing, v);
    SignedCollection tentative = t + comp;
    if (is_simple(tentative)) {
      t = std::move(tentative);
      run.decomposition.constituents.push_back({TradeKind::ak_companion, std::move(comp)});
    } else {
      t -= comp;
      run.decomposition.constituents.push_back({TradeKind::ak_companion, -std::move(comp)});
    }
    ++run.iterations;
  }
  run.halving = std::move(t);
  return run;
}

inline SignedCollection ak_halving(int v) { return ak_halving_run(v).halving; }

struct SearchConfig {
  std::uint64_t seed = 1;
  std::int64_t max_iterations = 1000;  // per restart
  int restart_limit = 60;
};

struct HillClimbResult {
  TradeDecomposition partition;  // fifteen minimal trades on success; best partial otherwise
  bool success = false;
  std::uint64_t iterations = 0;  // summed over restarts, in sequential restart order
  int restarts_used = 0;
};

namespace detail {

struct HcCandidate {
  OrderedTriple companion;
  std::array<std::uint8_t, 8> support;  // block ranks of the resulting minimal trade
};

struct HcTables {
  std::vector<OrderedTriple> lead;                 // sorted triple per rank, 120 entries
  std::vector<std::vector<HcCandidate>> cands;     // 210 candidates per lead block
};

inline HcTables build_hc_tables() {
  constexpr int kV = 10;
  const auto total = static_cast<std::size_t>(binomial(kV, 3));
  HcTables tables;
  tables.lead.resize(total);
  tables.cands.resize(total);
  for (std::size_t r = 0; r < total; ++r) {
    const Block b = unrank_lex(static_cast<std::int64_t>(r), kV, 3);
    tables.lead[r] = {b[0], b[1], b[2]};
    std::vector<int> rest;
    for (int x = 0; x < kV; ++x) {
      if (!b.contains(x)) rest.push_back(x);
    }
    auto& out = tables.cands[r];
    out.reserve(7 * 6 * 5);
    // All ordered companion triples from the seven remaining points, in
    // lexicographic tuple order.
    for (int c0 : rest) {
      for (int c1 : rest) {
        if (c1 == c0) continue;
        for (int c2 : rest) {
          if (c2 == c0 || c2 == c1) continue;
          HcCandidate cand{{c0, c1, c2}, {}};
          const OrderedTriple a = tables.lead[r];
          const OrderedTriple bb = cand.companion;
          for (int s = 0; s < 8; ++s) {
            std::vector<int> elems(3);
            for (int i = 0; i < 3; ++i) {
              elems[static_cast<std::size_t>(i)] = ((s >> i) & 1) ? bb[static_cast<std::size_t>(i)] : a[static_cast<std::size_t>(i)];
            }
            cand.support[static_cast<std::size_t>(s)] =
                static_cast<std::uint8_t>(rank_lex(Block::of(std::move(elems)), kV));
          }
          out.push_back(cand);
        }
      }
    }
  }
  return tables;
}

inline const HcTables& hc_tables() {
  static const HcTables tables = build_hc_tables();
  return tables;
}

struct HcRestartOutcome {
  bool success = false;
  std::uint64_t iterations = 0;
  std::vector<std::pair<std::uint8_t, std::uint16_t>> best;  // (lead rank, candidate index)
};

inline std::uint64_t hc_stream_seed(std::uint64_t seed, int restart) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart);
}

inline HcRestartOutcome hc_run_restart(std::uint64_t stream_seed, std::int64_t cap) {
  const HcTables& tables = hc_tables();
  std::mt19937_64 rng(stream_seed);
  std::bitset<120> pool;
  pool.set();
  std::vector<std::pair<std::uint8_t, std::uint16_t>> held;
  held.reserve(15);
  HcRestartOutcome out;
  std::vector<std::uint16_t> fits;
  fits.reserve(210);
  while (held.size() != 15) {
    if (static_cast<std::int64_t>(out.iterations) >= cap) return out;
    ++out.iterations;
    int lead = -1;
    for (int r = 0; r < 120; ++r) {
      if (pool.test(static_cast<std::size_t>(r))) {
        lead = r;
        break;
      }
    }
    if (lead < 0) throw std::logic_error("hill climb: pool empty before the partition closed");
    const auto& cands = tables.cands[static_cast<std::size_t>(lead)];
    fits.clear();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto& sup = cands[i].support;
      bool ok = true;
      for (auto rank : sup) {
        if (!pool.test(rank)) {
          ok = false;
          break;
        }
      }
      if (ok) fits.push_back(static_cast<std::uint16_t>(i));
    }
    if (!fits.empty()) {
      const auto pick = fits[static_cast<std::size_t>(uniform_below(rng, fits.size()))];
      for (auto rank : cands[pick].support) pool.reset(rank);
      held.emplace_back(static_cast<std::uint8_t>(lead), pick);
      if (held.size() > out.best.size()) out.best = held;
    } else {
      if (held.empty()) throw std::logic_error("hill climb: nothing to remove");
      const auto victim = static_cast<std::size_t>(uniform_below(rng, held.size()));
      const auto [vlead, vpick] = held[victim];
      for (auto rank : tables.cands[vlead][vpick].support) pool.set(rank);
      held.erase(held.begin() + static_cast<std::ptrdiff_t>(victim));
    }
  }
  out.success = true;
  out.best = std::move(held);
  return out;
}

inline TradeDecomposition hc_decomposition(const std::vector<std::pair<std::uint8_t, std::uint16_t>>& held) {
  const HcTables& tables = hc_tables();
  TradeDecomposition d{10, 3, {}};
  for (const auto& [lead, pick] : held) {
    d.constituents.push_back({TradeKind::minimal,
                              minimal_trade(10, tables.lead[lead], tables.cands[lead][pick].companion)});
  }
  return d;
}

}  // namespace detail

/// Randomized partition search at v = 10: hold a shrinking pool of unused
/// blocks, repeatedly try to cover the first pooled block with a minimal
/// trade lying wholly inside the pool (uniform choice among the candidates),
/// and return a uniformly chosen held trade to the pool when stuck.
/// Several independently seeded restarts run until one closes the partition.
/// Results are reproducible from the seed regardless of `jobs`.
inline HillClimbResult hill_climb_partition(const SearchConfig& cfg = {}, int jobs = 1) {
  if (cfg.max_iterations < 1) throw std::invalid_argument("hill_climb_partition: need a positive iteration cap");
  if (cfg.restart_limit < 1) throw std::invalid_argument("hill_climb_partition: need a positive restart limit");
  if (jobs < 1) throw std::invalid_argument("hill_climb_partition: jobs must be >= 1");

  std::vector<std::optional<detail::HcRestartOutcome>> outcomes(static_cast<std::size_t>(cfg.restart_limit));
  int winner = cfg.restart_limit;

  if (jobs == 1) {
    for (int r = 0; r < cfg.restart_limit; ++r) {
      outcomes[static_cast<std::size_t>(r)] =
          detail::hc_run_restart(detail::hc_stream_seed(cfg.seed, r), cfg.max_iterations);
      if (outcomes[static_cast<std::size_t>(r)]->success) {
        winner = r;
        break;
      }
    }
  } else {
    // Streams share nothing; the winner is the least successful index, so
    // the result matches the sequential order whatever the thread timing.
    std::atomic<int> best{cfg.restart_limit};
    const int n_threads = std::min(jobs, cfg.restart_limit);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int s = 0; s < n_threads; ++s) {
      threads.emplace_back([&, s] {
        for (int r = s; r < cfg.restart_limit; r += n_threads) {
          if (r > best.load(std::memory_order_relaxed)) continue;
          auto out = detail::hc_run_restart(detail::hc_stream_seed(cfg.seed, r), cfg.max_iterations);
          if (out.success) {
            int cur = best.load(std::memory_order_relaxed);
            while (r < cur && !best.compare_exchange_weak(cur, r, std::memory_order_relaxed)) {
            }
          }
          outcomes[static_cast<std::size_t>(r)] = std::move(out);
        }
      });
    }
    for (auto& th : threads) th.join();
    winner = best.load();
  }

  HillClimbResult result;
  if (winner < cfg.restart_limit) {
    result.success = true;
    result.restarts_used = winner + 1;
    for (int r = 0; r <= winner; ++r) result.iterations += outcomes[static_cast<std::size_t>(r)]->iterations;
    result.partition = detail::hc_decomposition(outcomes[static_cast<std::size_t>(winner)]->best);
  } else {
    result.success = false;
    result.restarts_used = cfg.restart_limit;
    std::size_t best_size = 0;
    int best_at = -1;
    for (int r = 0; r < cfg.restart_limit; ++r) {
      const auto& out = outcomes[static_cast<std::size_t>(r)];
      if (!out.has_value()) continue;
      result.iterations += out->iterations;
      if (out->best.size() > best_size) {
        best_size = out->best.size();
        best_at = r;
      }
    }
    if (best_at >= 0) result.partition = detail::hc_decomposition(outcomes[static_cast<std::size_t>(best_at)]->best);
    else result.partition = TradeDecomposition{10, 3, {}};
  }
  return result;
}

}  // namespace tradeforge

// Small tour: build one halving per method at v = 10 and print a summary.

#include <iostream>

#include "tradeforge/tradeforge.hpp"

namespace tf = tradeforge;

int main() {
  const auto [pf, pd] = tf::partition_halving(10);
  std::cout << "partition:  volume " << tf::volume(pf).value << ", " << pd.constituents.size()
            << " disjoint trades\n";

  const auto [sf, sd] = tf::structured_partition(10);
  std::cout << "structured: volume " << tf::volume(sf).value << ", " << sd.constituents.size()
            << " disjoint trades\n";

  const auto vf = tf::v10_halving(10);
  std::cout << "v10 sum:    volume " << tf::volume(vf).value << ", overlapping constituents\n";

  const auto run = tf::ak_halving_run(10);
  std::cout << "greedy:     volume " << tf::volume(run.halving).value << ", " << run.iterations
            << " absorption steps\n";

  tf::SearchConfig cfg;
  cfg.seed = 1;
  const auto hc = tf::hill_climb_partition(cfg);
  std::cout << "hillclimb:  " << (hc.success ? "closed" : "did not close") << " after "
            << hc.iterations << " iterations, " << hc.restarts_used << " restart(s)\n";

  std::cout << "\nthe structured decomposition, one stanza per trade:\n\n";
  tf::write_decomposition(std::cout, sd);
  return 0;
}

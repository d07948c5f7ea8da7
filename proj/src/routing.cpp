#include "icnsim/routing.hpp"

#include <algorithm>
#include <sstream>

#include "icnsim/errors.hpp"

namespace icnsim {

std::vector<NodeId> RoutingTable::prefixes_at(NodeId node) const {
  std::vector<NodeId> out;
  out.reserve(fibs[node].size());
  for (const auto& [prefix, entries] : fibs[node]) out.push_back(prefix);
  return out;
}

std::uint32_t RoutingTable::distance_to_source(NodeId consumer, NodeId prefix) const {
  if (consumer == prefix) return 0;
  const auto& fib = fibs[consumer];
  auto it = fib.find(prefix);
  if (it == fib.end() || it->second.empty())
    throw NoRoute("node " + std::to_string(consumer) +
                  " has no route for prefix " + std::to_string(prefix));
  return it->second.front().rank;
}

std::string RoutingTable::dump() const {
  std::ostringstream out;
  for (NodeId node = 0; node < fibs.size(); ++node)
    for (const auto& [prefix, entries] : fibs[node])
      for (const FibEntry& e : entries)
        out << node << " " << prefix << " " << e.next_hop << " " << e.rank << "\n";
  return out.str();
}

RoutingTable build_fibs(const Topology& topo, const std::vector<NodeId>& producers) {
  RoutingTable rt;
  rt.fibs.resize(topo.node_count());
  for (NodeId producer : producers) {
    if (producer >= topo.node_count())
      throw TopologyError("producer id " + std::to_string(producer) +
                          " outside topology");
    auto dist = topo.distances_from(producer);
    for (NodeId v = 0; v < topo.node_count(); ++v) {
      if (v == producer || dist[v] == UINT32_MAX) continue;
      std::vector<FibEntry> entries;
      for (NodeId w : topo.neighbors(v)) {
        // neighbors one step closer to the producer carry the advertisement
        if (dist[w] + 1 == dist[v])
          entries.push_back(FibEntry{producer, w, dist[w] + 1});
      }
      std::sort(entries.begin(), entries.end(), [](const FibEntry& a, const FibEntry& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.next_hop < b.next_hop;
      });
      rt.fibs[v][producer] = std::move(entries);
    }
  }
  return rt;
}

} // namespace icnsim

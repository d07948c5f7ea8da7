#pragma once

#include <map>
#include <string>
#include <vector>

#include "icnsim/node.hpp"
#include "icnsim/topology.hpp"

namespace icnsim {

// Rank-tree routing state for a whole network.  Producers advertise their
// prefix at rank 0; every other node learns, per prefix, all neighbors that
// lie on a shortest path plus the hop count via them.  The preferred entry
// is the lowest rank with ties broken toward the lowest next-hop id, which
// makes forwarding fully deterministic.
class RoutingTable {
public:
  // One FIB per node: prefix -> entries sorted by (rank, next_hop).
  std::vector<std::map<NodeId, std::vector<FibEntry>>> fibs;

  // Prefixes a node can reach, ascending.  The node's own prefix never
  // appears: a producer satisfies its own namespace directly.
  std::vector<NodeId> prefixes_at(NodeId node) const;

  // Hop distance from `consumer` to the producer of `prefix` along the rank
  // tree (the preferred entry's rank).  Zero for the producer itself.
  // Throws NoRoute when the prefix is not in the consumer's FIB.
  std::uint32_t distance_to_source(NodeId consumer, NodeId prefix) const;

  // "node prefix next_hop rank" per entry, sorted; for dumps and diffing.
  std::string dump() const;
};

// Floods each producer's advertisement by breadth-first search and records,
// at every node, an entry per shortest-path neighbor.  Multiple equal-cost
// entries are all retained even though forwarding only ever uses the
// preferred one.
RoutingTable build_fibs(const Topology& topo, const std::vector<NodeId>& producers);

} // namespace icnsim

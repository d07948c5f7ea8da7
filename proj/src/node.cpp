#include "icnsim/node.hpp"

#include <algorithm>

#include "icnsim/errors.hpp"

namespace icnsim {

bool cs_lookup(NodeState& node, const ChunkName& name) {
  if (node.is_producer_of(name.prefix)) return true;
  return node.cs.lookup(name);
}

std::optional<ChunkName> cs_insert(NodeState& node, const ChunkName& name) {
  if (node.is_producer_of(name.prefix)) return std::nullopt;
  return node.cs.insert(name, node.cs_rng);
}

bool cs_remove(NodeState& node, const ChunkName& name) {
  if (node.is_producer_of(name.prefix)) return false;
  return node.cs.remove(name);
}

bool pit_register(NodeState& node, const ChunkName& name, const Face& from,
                  SimTime now, SimTime timeout) {
  auto it = node.pit.find(name);
  if (it != node.pit.end()) {
    if (now - it->second.created_at < timeout) {
      it->second.downstreams.push_back(from);
      return false;
    }
    node.pit.erase(it); // expired entry, nobody upstream will answer it
  }
  PitEntry entry;
  entry.downstreams.push_back(from);
  entry.created_at = now;
  node.pit.emplace(name, std::move(entry));
  return true;
}

std::vector<Face> pit_consume(NodeState& node, const ChunkName& name) {
  auto it = node.pit.find(name);
  if (it == node.pit.end()) return {};
  std::vector<Face> faces = std::move(it->second.downstreams);
  node.pit.erase(it);
  return faces;
}

NodeId fib_next_hop(const NodeState& node, NodeId prefix) {
  auto it = node.fib.find(prefix);
  if (it == node.fib.end() || it->second.empty())
    throw NoRoute("node " + std::to_string(node.id) +
                  " has no route for prefix " + std::to_string(prefix));
  // entries are kept sorted by (rank, next_hop); front is the answer
  return it->second.front().next_hop;
}

} // namespace icnsim

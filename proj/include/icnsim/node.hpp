#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "icnsim/model.hpp"
#include "icnsim/rng.hpp"

namespace icnsim {

enum class CsPolicy { Lru, Fifo, Random };

// Fixed-capacity content store.  Names only; a cached chunk is just the fact
// that this node can answer for it.  Default policy is LRU (lookups refresh
// recency); FIFO and Random keep the same interface.
class ContentStore {
public:
  ContentStore() = default;
  ContentStore(std::uint32_t capacity, CsPolicy policy)
      : capacity_(capacity), policy_(policy) {}

  // True iff stored.  Under LRU a hit moves the entry to the front.
  bool lookup(const ChunkName& name) {
    auto it = index_.find(name);
    if (it == index_.end()) return false;
    if (policy_ == CsPolicy::Lru && it->second != order_.begin())
      order_.splice(order_.begin(), order_, it->second);
    return true;
  }

  bool contains(const ChunkName& name) const { return index_.count(name) != 0; }

  // Inserts a name, evicting per policy when full.  Returns the evicted name
  // if any.  Re-inserting an existing name refreshes it (LRU) and evicts
  // nothing.  Capacity 0 stores nothing.
  std::optional<ChunkName> insert(const ChunkName& name, RngStream& evict_rng) {
    if (capacity_ == 0) return std::nullopt;
    if (lookup(name)) return std::nullopt;
    std::optional<ChunkName> evicted;
    if (order_.size() >= capacity_) {
      auto victim = pick_victim(evict_rng);
      evicted = *victim;
      index_.erase(*victim);
      order_.erase(victim);
    }
    order_.push_front(name);
    index_[name] = order_.begin();
    return evicted;
  }

  bool remove(const ChunkName& name) {
    auto it = index_.find(name);
    if (it == index_.end()) return false;
    order_.erase(it->second);
    index_.erase(it);
    return true;
  }

  std::size_t size() const { return order_.size(); }
  std::uint32_t capacity() const { return capacity_; }

  // Contents most-recently-used first (insertion order for FIFO/Random).
  // Deterministic: backed by the recency list, never the hash index.
  std::vector<ChunkName> contents() const {
    return {order_.begin(), order_.end()};
  }

private:
  std::list<ChunkName>::iterator pick_victim(RngStream& rng) {
    if (policy_ == CsPolicy::Random) {
      auto it = order_.begin();
      std::advance(it, static_cast<long>(rng.next_below(order_.size())));
      return it;
    }
    // LRU and FIFO both evict from the back; they differ in whether lookups
    // refresh the order
    return std::prev(order_.end());
  }

  std::uint32_t capacity_ = 0;
  CsPolicy policy_ = CsPolicy::Lru;
  std::list<ChunkName> order_; // front = most recent
  std::unordered_map<ChunkName, std::list<ChunkName>::iterator, ChunkNameHash>
      index_;
};

// A PIT downstream: either a neighbor node or the local application that
// issued the request (identified by its request seq).
struct Face {
  bool local = false;
  NodeId neighbor = 0;
  std::uint64_t seq = 0; // meaningful for local faces

  static Face local_app(std::uint64_t seq) { return Face{true, 0, seq}; }
  static Face from_neighbor(NodeId n) { return Face{false, n, 0}; }

  bool operator==(const Face&) const = default;
};

struct PitEntry {
  std::vector<Face> downstreams; // in arrival order
  SimTime created_at = 0;
};

struct FibEntry {
  NodeId prefix = 0;
  NodeId next_hop = 0;
  std::uint32_t rank = 0; // hop distance to the producer via next_hop
};

// Per-node simulation state.  The producer role is implicit: every node owns
// the prefix equal to its id and can always answer for it without using
// content-store space.
struct NodeState {
  NodeId id = 0;
  std::uint32_t label = 0; // id mod k under Labels, 0 otherwise
  ContentStore cs;
  std::unordered_map<ChunkName, PitEntry, ChunkNameHash> pit;
  // prefix -> entries sorted by (rank, next_hop); front is the preferred hop.
  // An ordered map so every iteration over prefixes is deterministic.
  std::map<NodeId, std::vector<FibEntry>> fib;
  RngStream strategy_rng;
  RngStream cs_rng;

  bool is_producer_of(NodeId prefix) const { return prefix == id; }
};

// True iff the node can satisfy the name: cached (refreshes recency) or the
// node produces the prefix.  Producer hits never touch the content store.
bool cs_lookup(NodeState& node, const ChunkName& name);

// Strategy-decided insert.  No-op when the node produces the prefix.
// Returns the evicted name when the store was full.
std::optional<ChunkName> cs_insert(NodeState& node, const ChunkName& name);

bool cs_remove(NodeState& node, const ChunkName& name);

// Registers interest in a name.  Returns true when this creates a new entry
// (the caller should forward) and false when it aggregates onto a live one.
// An entry older than `timeout` counts as dead and is replaced.
bool pit_register(NodeState& node, const ChunkName& name, const Face& from,
                  SimTime now, SimTime timeout);

// Removes the entry and returns its downstreams in registration order.
// Empty result = nobody was waiting (unsolicited data).
std::vector<Face> pit_consume(NodeState& node, const ChunkName& name);

// Preferred next hop for a prefix: lowest rank, ties to the lowest node id.
// Throws NoRoute when the FIB has nothing for the prefix.
NodeId fib_next_hop(const NodeState& node, NodeId prefix);

} // namespace icnsim

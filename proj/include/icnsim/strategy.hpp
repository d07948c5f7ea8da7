#pragma once

#include "icnsim/model.hpp"
#include "icnsim/rng.hpp"

namespace icnsim {

// The caching strategies are pure decision rules.  The engine owns all
// queues, stores and timing; these functions only look at packet fields (and
// one random draw where the rule is probabilistic) and say what to do.
//
// Field handling is deliberately per-rule and order-sensitive:
//   LCD / MCD   test tsb BEFORE stepping it, so the copy lands exactly one
//               hop below the hit;
//   ProbCache   steps tsb FIRST and then weighs tsb/tsi, so the node right
//               after the hit sees weight 2/len and the consumer-adjacent
//               node sees exactly 1;
//   Intervals   caches where the counter arrives at 0 and reseeds it.
// The two hop-counter conventions disagree on purpose; they follow the
// strategies' own definitions.

struct CacheDecision {
  bool cache = false;
  // probability the rule compared against, or -1 for deterministic rules;
  // surfaced so traces can show why a coin fell the way it did
  double prob = -1.0;
};

// Builds the Data packet at the satisfying node.  tsb starts at 1, tsi is
// copied from the Interest as received (the satisfying node does not step
// it), and Intervals seeds its gap counter.
Data strategy_make_data(const StrategyParams& s, const Interest& interest,
                        NodeId hit_node);

// Applied when a node cannot satisfy an Interest and forwards it.  Only the
// ProbCache family steps tsi; everyone else forwards untouched.  The node
// that originates a request does not count as a forwarder.
void strategy_on_forward(const StrategyParams& s, Interest& interest);

// True when a non-producer hit must drop its own copy after answering (MCD).
bool strategy_deletes_at_hit(const StrategyParams& s);

// The per-hop caching decision on the Data return path.  Mutates the packet
// fields in the rule's own order and consumes exactly one draw from `rng`
// for probabilistic rules, none otherwise.
CacheDecision strategy_handle_data(const StrategyParams& s, Data& data,
                                   std::uint32_t node_label, RngStream& rng);

// Node label under Labels(k): id mod k.  Other strategies label everything 0.
std::uint32_t node_label_for(const StrategyParams& s, NodeId id);

} // namespace icnsim

#include "icnsim/engine.hpp"

#include <algorithm>
#include <queue>

#include "icnsim/errors.hpp"
#include "icnsim/strategy.hpp"

namespace icnsim {

Topology build_topology(const TopologySpec& spec, std::uint64_t run_seed) {
  switch (spec.kind) {
    case TopologySpec::Kind::Line:
      return gen_line(spec.n);
    case TopologySpec::Kind::Core:
      return gen_core(spec.branching_core, spec.branching_leaf,
                      spec.consumers_per_leaf);
    case TopologySpec::Kind::Edge:
      return gen_edge(spec.spokes, spec.spoke_len, spec.consumers_per_spoke);
    case TopologySpec::Kind::RandomGeo:
      return gen_random_geometric(spec.geo, spec.seed.value_or(run_seed));
    case TopologySpec::Kind::File:
      return load_topology(spec.path);
  }
  throw SpecError("unhandled topology kind");
}

namespace {

// ---------- events ----------

struct Event {
  enum class Kind { Interest, Data, Timeout, Snapshot };
  SimTime time = 0;
  std::uint64_t order = 0; // insertion tiebreak: equal times run FIFO
  Kind kind = Kind::Interest;
  NodeId to = 0;
  Face from;
  Interest interest;
  Data data;
  std::uint32_t data_hops = 0; // links the Data has crossed when it arrives
  std::uint64_t seq = 0;       // Timeout
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.order > b.order;
  }
};

struct PendingRequest {
  NodeId consumer = 0;
  ChunkName name;
  std::uint32_t distance = 0;
  SimTime issue_us = 0; // first issue; latency counts from here
  std::uint32_t retries_used = 0;
  bool closed = false;
};

struct Sim {
  const RunConfig& cfg;
  Topology topo;
  RoutingTable routing;
  std::vector<NodeState> nodes;
  std::vector<PendingRequest> requests;

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  std::uint64_t next_order = 0;
  std::size_t packet_events = 0; // non-snapshot events still queued
  SimTime now = 0;

  RngStream engine_rng;
  SimTime delay_us = 0;
  SimTime jitter_us = 0;
  SimTime timeout_us = 0;
  SimTime horizon_us = 0;
  SimTime snapshot_period_us = 0;

  RunResult result;

  explicit Sim(const RunConfig& c) : cfg(c) {}

  void push(Event ev) {
    ev.order = next_order++;
    if (ev.kind != Event::Kind::Snapshot) packet_events += 1;
    queue.push(std::move(ev));
  }

  // A link's configured delay is its full per-hop latency contribution, i.e.
  // the round trip across it.  The interest leg takes the floor half and the
  // data leg the rest, so interest + data across a link always sum to the
  // configured value exactly and an h-hop retrieval measures h * delay.
  SimTime link_transit(NodeId u, NodeId v, bool data_leg) {
    SimTime full = topo.link_params(u, v).delay_us.value_or(delay_us);
    SimTime base = data_leg ? full - full / 2 : full / 2;
    if (jitter_us > 0)
      base += engine_rng.next_between(-jitter_us, jitter_us);
    return std::max<SimTime>(base, 0);
  }

  bool link_drops(NodeId u, NodeId v) {
    double p = topo.link_params(u, v).loss.value_or(cfg.loss);
    if (p <= 0.0) return false;
    return engine_rng.next_unit() < p;
  }

  void send_interest(NodeId from, NodeId to, const Interest& interest) {
    if (link_drops(from, to)) {
      result.counters.lost_packets += 1;
      return;
    }
    result.counters.interest_tx += 1;
    Event ev;
    ev.time = now + link_transit(from, to, false);
    ev.kind = Event::Kind::Interest;
    ev.to = to;
    ev.from = Face::from_neighbor(from);
    ev.interest = interest;
    push(std::move(ev));
  }

  void send_data(NodeId from, NodeId to, const Data& data, std::uint32_t hops) {
    if (link_drops(from, to)) {
      result.counters.lost_packets += 1;
      return;
    }
    result.counters.data_tx += 1;
    Event ev;
    ev.time = now + link_transit(from, to, true);
    ev.kind = Event::Kind::Data;
    ev.to = to;
    ev.from = Face::from_neighbor(from);
    ev.data = data;
    ev.data_hops = hops;
    push(std::move(ev));
  }

  void close_record(std::uint64_t seq, const Data& data, std::uint32_t hops) {
    PendingRequest& req = requests[seq];
    if (req.closed) return; // a retransmission's duplicate answer
    req.closed = true;
    RetrievalRecord r;
    r.seq = seq;
    r.consumer = req.consumer;
    r.prefix = req.name.prefix;
    r.chunk_id = req.name.chunk_id;
    r.distance = req.distance;
    r.hops_to_hit = hops;
    r.hit_node = data.hit_node;
    r.issue_us = req.issue_us;
    r.satisfy_us = now;
    r.latency_us = now - req.issue_us;
    r.retries = req.retries_used;
    result.retrievals.push_back(r);
    if (hops == 0) result.counters.local_hits += 1;
  }

  void deliver_interest(NodeId at, Interest interest, const Face& from) {
    NodeState& node = nodes[at];
    if (cs_lookup(node, interest.name)) {
      bool from_cs = !node.is_producer_of(interest.name.prefix);
      if (from_cs)
        result.counters.cache_hits += 1;
      else
        result.counters.producer_hits += 1;
      Data data = strategy_make_data(cfg.strategy, interest, at);
      if (from_cs && strategy_deletes_at_hit(cfg.strategy))
        cs_remove(node, interest.name);
      if (from.local)
        close_record(from.seq, data, 0);
      else
        send_data(at, from.neighbor, data, 1);
      return;
    }

    if (!pit_register(node, interest.name, from, now, timeout_us)) {
      result.counters.aggregations += 1;
      return;
    }
    // the originating node is not a forwarder; hop-counting strategies only
    // step tsi once the interest is relayed onward from another node
    if (!from.local) strategy_on_forward(cfg.strategy, interest);
    NodeId next = fib_next_hop(node, interest.name.prefix);
    send_interest(at, next, interest);
  }

  void deliver_data(NodeId at, Data data, std::uint32_t hops) {
    NodeState& node = nodes[at];
    std::vector<Face> faces = pit_consume(node, data.name);
    if (faces.empty()) {
      result.counters.unsolicited += 1;
      return;
    }
    bool forwards = std::any_of(faces.begin(), faces.end(),
                                [](const Face& f) { return !f.local; });
    if (forwards || cfg.cache_at_consumer) {
      CacheDecision dec =
          strategy_handle_data(cfg.strategy, data, node.label, node.strategy_rng);
      if (cfg.record_decisions)
        result.decisions.push_back(
            DecisionRecord{at, data.name, dec.cache, dec.prob});
      if (dec.cache) {
        result.counters.cache_inserts += 1;
        if (cs_insert(node, data.name)) result.counters.evictions += 1;
      }
    }
    for (const Face& f : faces) {
      if (f.local)
        close_record(f.seq, data, hops);
      else
        send_data(at, f.neighbor, data, hops + 1);
    }
  }

  void issue(std::uint64_t seq) {
    const PendingRequest& req = requests[seq];
    Interest interest;
    interest.name = req.name;
    interest.tsi = 1;
    interest.origin = req.consumer;
    interest.seq = seq;
    deliver_interest(req.consumer, interest, Face::local_app(seq));
  }

  void handle_timeout(std::uint64_t seq) {
    PendingRequest& req = requests[seq];
    if (req.closed) return;
    if (req.retries_used < cfg.retries) {
      req.retries_used += 1;
      result.counters.retransmissions += 1;
      issue(seq);
      Event t;
      t.time = now + timeout_us;
      t.kind = Event::Kind::Timeout;
      t.seq = seq;
      push(std::move(t));
    } else {
      req.closed = true;
      record_failure(seq);
    }
  }

  void record_failure(std::uint64_t seq) {
    const PendingRequest& req = requests[seq];
    FailureRecord f;
    f.seq = seq;
    f.consumer = req.consumer;
    f.prefix = req.name.prefix;
    f.chunk_id = req.name.chunk_id;
    f.distance = req.distance;
    f.retries = req.retries_used;
    result.failures.push_back(f);
  }

  void take_snapshot(SimTime at) {
    CacheSnapshot snap;
    snap.time_us = at;
    snap.contents.reserve(nodes.size());
    for (const NodeState& n : nodes) snap.contents.push_back(n.cs.contents());
    result.snapshots.push_back(std::move(snap));
  }

  void run_loop() {
    while (!queue.empty()) {
      Event ev = queue.top();
      queue.pop();
      if (ev.kind != Event::Kind::Snapshot) packet_events -= 1;
      if (ev.time > horizon_us) break;
      now = ev.time;
      switch (ev.kind) {
        case Event::Kind::Interest:
          if (ev.from.local)
            issue(ev.from.seq);
          else
            deliver_interest(ev.to, ev.interest, ev.from);
          break;
        case Event::Kind::Data:
          deliver_data(ev.to, ev.data, ev.data_hops);
          break;
        case Event::Kind::Timeout:
          handle_timeout(ev.seq);
          break;
        case Event::Kind::Snapshot:
          take_snapshot(ev.time);
          if (packet_events > 0 && ev.time + snapshot_period_us <= horizon_us) {
            Event next;
            next.time = ev.time + snapshot_period_us;
            next.kind = Event::Kind::Snapshot;
            push(std::move(next));
          }
          break;
      }
    }
  }
};

std::vector<PendingRequest> build_workload(const RunConfig& cfg,
                                           const Topology& topo,
                                           const RoutingTable& routing) {
  std::vector<PendingRequest> reqs;
  RngStream rng(cfg.seed, 0, rng_tag::workload);
  const SimTime window_us = ms_to_us(cfg.workload.window_ms);
  const SimTime spacing_us = ms_to_us(cfg.workload.spacing_ms);

  if (cfg.workload.kind == WorkloadSpec::Kind::Scripted) {
    for (const ScriptedRequest& s : cfg.workload.requests) {
      if (s.consumer >= topo.node_count())
        throw SpecError("scripted request from unknown node " +
                        std::to_string(s.consumer));
      PendingRequest r;
      r.consumer = s.consumer;
      r.name = make_chunk_name(s.prefix, s.chunk_id, cfg.chunk_count);
      r.distance = routing.distance_to_source(s.consumer, s.prefix);
      r.issue_us = ms_to_us(s.time_ms);
      reqs.push_back(r);
    }
    return reqs;
  }

  std::vector<NodeId> consumers;
  if (cfg.workload.consumers == WorkloadSpec::Consumers::Leaves)
    consumers = leaf_nodes(topo);
  else
    for (NodeId v = 0; v < topo.node_count(); ++v) consumers.push_back(v);

  for (NodeId c : consumers) {
    for (NodeId prefix : routing.prefixes_at(c)) {
      // each round the consumer asks every prefix for a freshly drawn chunk id
      for (std::uint32_t i = 0; i < cfg.workload.requests_per_pair; ++i) {
        PendingRequest r;
        r.consumer = c;
        r.name = ChunkName{prefix, static_cast<std::uint32_t>(
                                       rng.next_below(cfg.chunk_count))};
        r.distance = routing.distance_to_source(c, prefix);
        r.issue_us = spacing_us > 0
                         ? static_cast<SimTime>(reqs.size()) * spacing_us
                         : static_cast<SimTime>(rng.next_below(
                               static_cast<std::uint64_t>(window_us) + 1));
        reqs.push_back(r);
      }
    }
  }
  return reqs;
}

} // namespace

RunResult run(const RunConfig& cfg) {
  if (cfg.chunk_count == 0) throw SpecError("chunk_count must be positive");
  if (cfg.loss < 0.0 || cfg.loss > 1.0)
    throw SpecError("loss must be within [0,1]");
  if (cfg.per_hop_delay_ms < 0.0) throw SpecError("per-hop delay must be >= 0");

  Sim sim(cfg);
  sim.topo = build_topology(cfg.topology, cfg.seed);

  std::vector<NodeId> producers;
  if (cfg.workload.producers == WorkloadSpec::Producers::Root)
    producers.push_back(0);
  else
    for (NodeId v = 0; v < sim.topo.node_count(); ++v) producers.push_back(v);
  sim.routing = build_fibs(sim.topo, producers);

  sim.requests = build_workload(cfg, sim.topo, sim.routing);

  sim.engine_rng = RngStream(cfg.seed, 0, rng_tag::engine);
  sim.delay_us = ms_to_us(cfg.per_hop_delay_ms);
  sim.jitter_us = ms_to_us(cfg.jitter_ms);
  sim.timeout_us = ms_to_us(cfg.pit_timeout_ms);
  sim.horizon_us = ms_to_us(cfg.max_sim_time_ms);
  sim.snapshot_period_us = ms_to_us(cfg.snapshot_period_ms);

  sim.nodes.resize(sim.topo.node_count());
  for (NodeId v = 0; v < sim.topo.node_count(); ++v) {
    NodeState& n = sim.nodes[v];
    n.id = v;
    n.label = node_label_for(cfg.strategy, v);
    n.cs = ContentStore(cfg.cache_capacity, cfg.cs_policy);
    n.fib = sim.routing.fibs[v];
    n.strategy_rng = RngStream(cfg.seed, v, rng_tag::strategy);
    n.cs_rng = RngStream(cfg.seed, v, rng_tag::cs);
    if (cfg.forced_draw) n.strategy_rng.force_unit(cfg.forced_draw);
  }

  for (std::uint64_t seq = 0; seq < sim.requests.size(); ++seq) {
    Event issue;
    issue.time = sim.requests[seq].issue_us;
    issue.kind = Event::Kind::Interest;
    issue.to = sim.requests[seq].consumer;
    issue.from = Face::local_app(seq);
    sim.push(std::move(issue));

    Event timeout;
    timeout.time = sim.requests[seq].issue_us + sim.timeout_us;
    timeout.kind = Event::Kind::Timeout;
    timeout.seq = seq;
    sim.push(std::move(timeout));
  }
  if (sim.snapshot_period_us > 0 && !sim.requests.empty()) {
    Event snap;
    snap.time = sim.snapshot_period_us;
    snap.kind = Event::Kind::Snapshot;
    sim.push(std::move(snap));
  }

  sim.run_loop();

  // anything still open at the end of the run failed
  for (std::uint64_t seq = 0; seq < sim.requests.size(); ++seq) {
    if (!sim.requests[seq].closed) {
      sim.requests[seq].closed = true;
      sim.record_failure(seq);
    }
  }

  sim.result.end_time_us = sim.now;
  sim.take_snapshot(sim.now);

  std::sort(sim.result.retrievals.begin(), sim.result.retrievals.end(),
            [](const RetrievalRecord& a, const RetrievalRecord& b) {
              return a.seq < b.seq;
            });
  std::sort(sim.result.failures.begin(), sim.result.failures.end(),
            [](const FailureRecord& a, const FailureRecord& b) {
              return a.seq < b.seq;
            });
  return sim.result;
}

} // namespace icnsim

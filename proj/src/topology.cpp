#include "icnsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "icnsim/errors.hpp"
#include "icnsim/rng.hpp"

namespace icnsim {

std::uint64_t Topology::key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void Topology::add_link(NodeId u, NodeId v) {
  if (u == v)
    throw TopologyError("self-loop at node " + std::to_string(u));
  NodeId hi = std::max(u, v);
  if (hi >= adj_.size()) adj_.resize(hi + 1);
  auto ins = [&](NodeId a, NodeId b) {
    auto& list = adj_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b);
    if (it == list.end() || *it != b) list.insert(it, b);
  };
  ins(u, v);
  ins(v, u);
}

void Topology::set_link_params(NodeId u, NodeId v, LinkParams p) {
  if (!has_link(u, v))
    throw TopologyError("no link " + std::to_string(u) + "-" + std::to_string(v));
  params_[key(u, v)] = p;
}

bool Topology::has_link(NodeId u, NodeId v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

const LinkParams& Topology::link_params(NodeId u, NodeId v) const {
  auto it = params_.find(key(u, v));
  return it == params_.end() ? defaults_ : it->second;
}

std::size_t Topology::link_count() const {
  std::size_t twice = 0;
  for (const auto& list : adj_) twice += list.size();
  return twice / 2;
}

std::vector<std::uint32_t> Topology::distances_from(NodeId src) const {
  std::vector<std::uint32_t> dist(adj_.size(), UINT32_MAX);
  std::deque<NodeId> q;
  dist[src] = 0;
  q.push_back(src);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : adj_[u]) {
      if (dist[v] == UINT32_MAX) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

bool Topology::connected() const {
  if (adj_.empty()) return false;
  auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::uint32_t d) { return d == UINT32_MAX; });
}

std::string Topology::to_edge_list() const {
  std::ostringstream out;
  for (NodeId u = 0; u < adj_.size(); ++u) {
    for (NodeId v : adj_[u]) {
      if (v < u) continue; // each link once
      out << u << " " << v;
      const LinkParams& p = link_params(u, v);
      if (p.delay_us || p.loss) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), " %.3f",
                      p.delay_us ? us_to_ms(*p.delay_us) : 10.0);
        out << buf;
        if (p.loss) {
          std::snprintf(buf, sizeof(buf), " %g", *p.loss);
          out << buf;
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

PathStats path_stats(const Topology& t) {
  PathStats s;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (NodeId u = 0; u < t.node_count(); ++u) {
    auto dist = t.distances_from(u);
    for (NodeId v = 0; v < t.node_count(); ++v) {
      if (v == u) continue;
      sum += dist[v];
      pairs += 1;
      s.diameter = std::max(s.diameter, dist[v]);
    }
  }
  s.mean = pairs ? sum / static_cast<double>(pairs) : 0.0;
  return s;
}

// ---------- generators ----------

Topology gen_line(std::uint32_t n) {
  if (n < 2) throw TopologyError("line needs at least 2 nodes");
  Topology t(n);
  for (NodeId i = 0; i + 1 < n; ++i) t.add_link(i, i + 1);
  return t;
}

Topology gen_core(std::uint32_t branching_core, std::uint32_t branching_leaf,
                  std::uint32_t consumers_per_leaf) {
  if (branching_core == 0 || branching_leaf == 0 || consumers_per_leaf == 0)
    throw TopologyError("core generator needs positive branching counts");
  std::uint32_t n = 1 + branching_core * (1 + branching_leaf * (1 + consumers_per_leaf));
  Topology t(n);
  NodeId next = 1;
  for (std::uint32_t c = 0; c < branching_core; ++c) {
    NodeId level1 = next++;
    t.add_link(0, level1);
    for (std::uint32_t l = 0; l < branching_leaf; ++l) {
      NodeId level2 = next++;
      t.add_link(level1, level2);
      for (std::uint32_t k = 0; k < consumers_per_leaf; ++k) {
        NodeId consumer = next++;
        t.add_link(level2, consumer);
      }
    }
  }
  return t;
}

Topology gen_edge(std::uint32_t spokes, std::uint32_t spoke_len,
                  std::uint32_t consumers_per_spoke) {
  if (spokes == 0 || spoke_len == 0 || consumers_per_spoke == 0)
    throw TopologyError("edge generator needs positive counts");
  std::uint32_t n = 1 + spokes * (spoke_len + consumers_per_spoke);
  Topology t(n);
  NodeId next = 1;
  for (std::uint32_t s = 0; s < spokes; ++s) {
    NodeId prev = 0;
    for (std::uint32_t h = 0; h < spoke_len; ++h) {
      NodeId router = next++;
      t.add_link(prev, router);
      prev = router;
    }
    for (std::uint32_t c = 0; c < consumers_per_spoke; ++c) {
      NodeId consumer = next++;
      t.add_link(prev, consumer);
    }
  }
  return t;
}

Topology gen_random_geometric(const RandomGeoParams& p, std::uint64_t seed) {
  if (p.n < 2) throw TopologyError("random geometric needs at least 2 nodes");
  if (p.range <= 0.0 || p.area <= 0.0)
    throw TopologyError("random geometric needs positive range and area");
  RngStream rng(seed, 0, rng_tag::topology);
  const double disk_r = std::sqrt(p.area / M_PI);
  const double range2 = p.range * p.range;

  for (std::uint32_t attempt = 0; attempt < p.max_retries; ++attempt) {
    std::vector<double> x(p.n), y(p.n);
    for (std::uint32_t i = 0; i < p.n; ++i) {
      // rejection-sample uniform points on the disk
      double px, py;
      do {
        px = (2.0 * rng.next_unit() - 1.0) * disk_r;
        py = (2.0 * rng.next_unit() - 1.0) * disk_r;
      } while (px * px + py * py > disk_r * disk_r);
      x[i] = px;
      y[i] = py;
    }
    Topology t(p.n);
    for (std::uint32_t i = 0; i < p.n; ++i)
      for (std::uint32_t j = i + 1; j < p.n; ++j) {
        double dx = x[i] - x[j], dy = y[i] - y[j];
        if (dx * dx + dy * dy <= range2) t.add_link(i, j);
      }
    if (!t.connected()) continue;
    if (p.max_diameter > 0 && path_stats(t).diameter > p.max_diameter) continue;
    return t;
  }
  throw GenerationFailed("no acceptable placement after " +
                         std::to_string(p.max_retries) + " attempts (n=" +
                         std::to_string(p.n) + ", range=" +
                         std::to_string(p.range) + ", max diameter " +
                         std::to_string(p.max_diameter) + ")");
}

// ---------- file I/O ----------

Topology parse_topology(const std::string& text) {
  Topology t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue; // blank or comment-only
    if (!(ls >> v))
      throw TopologyError("line " + std::to_string(lineno) +
                          ": expected \"u v [delay_ms] [loss]\"");
    if (u < 0 || v < 0)
      throw TopologyError("line " + std::to_string(lineno) + ": negative node id");
    if (u == v)
      throw TopologyError("line " + std::to_string(lineno) + ": self-loop at " +
                          std::to_string(u));
    t.add_link(static_cast<NodeId>(u), static_cast<NodeId>(v));
    double delay_ms, loss;
    LinkParams lp;
    if (ls >> delay_ms) {
      if (delay_ms < 0)
        throw TopologyError("line " + std::to_string(lineno) + ": negative delay");
      lp.delay_us = ms_to_us(delay_ms);
      if (ls >> loss) {
        if (loss < 0.0 || loss > 1.0)
          throw TopologyError("line " + std::to_string(lineno) +
                              ": loss outside [0,1]");
        lp.loss = loss;
      }
      t.set_link_params(static_cast<NodeId>(u), static_cast<NodeId>(v), lp);
    }
    std::string rest;
    if (ls >> rest)
      throw TopologyError("line " + std::to_string(lineno) +
                          ": trailing token \"" + rest + "\"");
    any = true;
  }
  if (!any) throw TopologyError("no links in topology input");
  if (!t.connected())
    throw TopologyError("topology is not connected");
  return t;
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_topology(buf.str());
}

std::vector<NodeId> leaf_nodes(const Topology& t) {
  std::vector<NodeId> leaves;
  for (NodeId u = 0; u < t.node_count(); ++u)
    if (t.degree(u) == 1) leaves.push_back(u);
  return leaves;
}

} // namespace icnsim

#include <doctest.h>

#include <array>
#include <vector>

#include "icnsim/model.hpp"
#include "icnsim/rng.hpp"
#include "icnsim/strategy.hpp"

using namespace icnsim;

namespace {

StrategyParams make(StrategyKind kind) {
  StrategyParams s;
  s.kind = kind;
  return s;
}

// How many unit draws a single handle_data call consumed: line the used
// stream's next value up against a reference sequence from a twin stream.
int draws_consumed(const StrategyParams& s, Data d, std::uint32_t label) {
  std::array<double, 5> ref{};
  {
    RngStream fresh(7, 7, 7);
    for (auto& v : ref) v = fresh.next_unit();
  }
  RngStream used(7, 7, 7);
  strategy_handle_data(s, d, label, used);
  double next = used.next_unit();
  for (int k = 0; k < 5; ++k)
    if (next == ref[k]) return k;
  return -1;
}

} // namespace

TEST_CASE("make_data seeds the return-path fields") {
  Interest interest;
  interest.name = ChunkName{7, 3};
  interest.tsi = 4;
  interest.origin = 9;
  interest.seq = 77;

  Data d = strategy_make_data(make(StrategyKind::LCD), interest, 2);
  CHECK(d.name == ChunkName{7, 3});
  CHECK(d.tsb == 1);          // born at the hit
  CHECK(d.tsi == 4);          // copied, not stepped, by the satisfying node
  CHECK(d.interval == 0);
  CHECK(d.hit_node == 2);

  StrategyParams iv = make(StrategyKind::Intervals);
  iv.i = 2;
  CHECK(strategy_make_data(iv, interest, 2).interval == 2);
  iv.i = 0;
  CHECK(strategy_make_data(iv, interest, 2).interval == 0);
}

TEST_CASE("only the ProbCache family steps tsi on forward") {
  for (auto kind : {StrategyKind::NoCache, StrategyKind::CEE, StrategyKind::LCD,
                    StrategyKind::MCD, StrategyKind::Prob, StrategyKind::Labels,
                    StrategyKind::Intervals}) {
    Interest i;
    strategy_on_forward(make(kind), i);
    CHECK(i.tsi == 1);
  }
  for (auto kind : {StrategyKind::ProbCache, StrategyKind::ProbCacheInv}) {
    Interest i;
    strategy_on_forward(make(kind), i);
    CHECK(i.tsi == 2);
    strategy_on_forward(make(kind), i);
    CHECK(i.tsi == 3);
  }
}

TEST_CASE("only MCD deletes the copy at a cache hit") {
  CHECK(strategy_deletes_at_hit(make(StrategyKind::MCD)));
  for (auto kind : {StrategyKind::NoCache, StrategyKind::CEE, StrategyKind::LCD,
                    StrategyKind::Prob, StrategyKind::ProbCache,
                    StrategyKind::ProbCacheInv, StrategyKind::Labels,
                    StrategyKind::Intervals})
    CHECK_FALSE(strategy_deletes_at_hit(make(kind)));
}

TEST_CASE("NoCache and CEE are constant and draw-free") {
  RngStream rng(1, 1, 1);
  Data d;
  auto none = strategy_handle_data(make(StrategyKind::NoCache), d, 0, rng);
  CHECK_FALSE(none.cache);
  CHECK(none.prob == -1.0);
  auto all = strategy_handle_data(make(StrategyKind::CEE), d, 0, rng);
  CHECK(all.cache);
  CHECK(all.prob == -1.0);
  CHECK(draws_consumed(make(StrategyKind::NoCache), Data{}, 0) == 0);
  CHECK(draws_consumed(make(StrategyKind::CEE), Data{}, 0) == 0);
}

TEST_CASE("LCD caches exactly one hop below the hit") {
  // walk a fresh packet down a 4-hop return path by hand
  RngStream rng(1, 1, 1);
  Data d; // tsb = 1 as it leaves the hit
  auto s = make(StrategyKind::LCD);

  auto first = strategy_handle_data(s, d, 0, rng);
  CHECK(first.cache);      // tsb was 1: this is the node right below the hit
  CHECK(d.tsb == 2);       // ...and the test happened before the step
  auto second = strategy_handle_data(s, d, 0, rng);
  CHECK_FALSE(second.cache);
  CHECK(d.tsb == 3);
  auto third = strategy_handle_data(s, d, 0, rng);
  CHECK_FALSE(third.cache);
  CHECK(d.tsb == 4);

  CHECK(draws_consumed(s, Data{}, 0) == 0);
}

TEST_CASE("MCD places like LCD on the return path") {
  RngStream rng(1, 1, 1);
  Data d;
  auto s = make(StrategyKind::MCD);
  CHECK(strategy_handle_data(s, d, 0, rng).cache);
  CHECK(d.tsb == 2);
  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);
  CHECK(d.tsb == 3);
}

TEST_CASE("Prob compares one draw against p, strictly") {
  StrategyParams s = make(StrategyKind::Prob);
  s.p = 0.5;
  RngStream rng(1, 1, 1);
  Data d;

  rng.force_unit(0.0);
  auto dec = strategy_handle_data(s, d, 0, rng);
  CHECK(dec.cache);
  CHECK(dec.prob == 0.5);

  rng.force_unit(0.5); // draw == p misses: the comparison is strict
  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);

  s.p = 0.0; // never caches, not even on the smallest draw
  rng.force_unit(0.0);
  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);

  s.p = 1.0; // always caches on any draw in [0, 1)
  rng.force_unit(0.999999);
  CHECK(strategy_handle_data(s, d, 0, rng).cache);

  s.p = 0.5;
  CHECK(draws_consumed(s, Data{}, 0) == 1);
}

TEST_CASE("Prob long-run frequency matches p") {
  StrategyParams s = make(StrategyKind::Prob);
  s.p = 0.3;
  RngStream rng(42, 0, rng_tag::strategy);
  int cached = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    Data d;
    if (strategy_handle_data(s, d, 0, rng).cache) ++cached;
  }
  double freq = static_cast<double>(cached) / trials;
  // +-0.01 is ~7 standard errors at n = 100k; fixed seed anyway
  CHECK(freq > 0.29);
  CHECK(freq < 0.31);
}

TEST_CASE("ProbCache steps tsb first and weighs tsb/tsi") {
  auto s = make(StrategyKind::ProbCache);
  RngStream rng(1, 1, 1);

  // 4-hop path, hit at the producer: the packet leaves with tsb=1, tsi=4
  Data d;
  d.tsb = 1;
  d.tsi = 4;

  rng.force_unit(0.49);
  auto n1 = strategy_handle_data(s, d, 0, rng); // first node below the hit
  CHECK(d.tsb == 2);
  CHECK(n1.prob == doctest::Approx(0.5)); // 2/4 after the step
  CHECK(n1.cache);                        // 0.49 < 0.5

  rng.force_unit(0.5);
  Data half;
  half.tsb = 1;
  half.tsi = 4;
  CHECK_FALSE(strategy_handle_data(s, half, 0, rng).cache); // draw == weight misses

  auto n2 = strategy_handle_data(s, d, 0, rng);
  CHECK(d.tsb == 3);
  CHECK(n2.prob == doctest::Approx(0.75)); // 3/4

  rng.force_unit(0.9999);
  auto n3 = strategy_handle_data(s, d, 0, rng); // consumer-adjacent node
  CHECK(d.tsb == 4);
  CHECK(n3.prob == doctest::Approx(1.0)); // 4/4: certain under any draw < 1
  CHECK(n3.cache);

  // weight clamps at 1 when the data has traveled further than the interest
  Data far;
  far.tsb = 5;
  far.tsi = 4;
  CHECK(strategy_handle_data(s, far, 0, rng).prob == doctest::Approx(1.0));

  CHECK(draws_consumed(s, [] { Data x; x.tsi = 4; return x; }(), 0) == 1);
}

TEST_CASE("ProbCacheInv mirrors the weight toward the producer") {
  auto s = make(StrategyKind::ProbCacheInv);
  RngStream rng(1, 1, 1);

  Data d;
  d.tsb = 1;
  d.tsi = 4;

  rng.force_unit(0.49);
  auto n1 = strategy_handle_data(s, d, 0, rng);
  CHECK(n1.prob == doctest::Approx(0.5)); // 1 - 2/4
  CHECK(n1.cache);

  auto n2 = strategy_handle_data(s, d, 0, rng);
  CHECK(n2.prob == doctest::Approx(0.25)); // 1 - 3/4
  CHECK_FALSE(n2.cache);                   // 0.49 >= 0.25

  rng.force_unit(0.0);
  auto n3 = strategy_handle_data(s, d, 0, rng); // consumer-adjacent node
  CHECK(n3.prob == 0.0);                        // exactly zero, 1 - 4/4
  CHECK_FALSE(n3.cache); // never caches here, even on a zero draw
}

TEST_CASE("ProbCache rejects a zero interest hop count") {
  RngStream rng(1, 1, 1);
  Data d;
  d.tsi = 0;
  CHECK_THROWS_AS(
      strategy_handle_data(make(StrategyKind::ProbCache), d, 0, rng),
      MalformedPacket);
  Data d2;
  d2.tsi = 0;
  CHECK_THROWS_AS(
      strategy_handle_data(make(StrategyKind::ProbCacheInv), d2, 0, rng),
      MalformedPacket);
}

TEST_CASE("ProbCache long-run frequency matches the weight") {
  auto s = make(StrategyKind::ProbCache);
  RngStream rng(43, 0, rng_tag::strategy);
  int cached = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    Data d;
    d.tsb = 2; // becomes 3; tsi 4 -> weight 0.75
    d.tsi = 4;
    if (strategy_handle_data(s, d, 0, rng).cache) ++cached;
  }
  double freq = static_cast<double>(cached) / trials;
  CHECK(freq > 0.74);
  CHECK(freq < 0.76);
}

TEST_CASE("Labels caches where chunk id mod k equals the node label") {
  StrategyParams s = make(StrategyKind::Labels);
  s.k = 4;
  RngStream rng(1, 1, 1);

  Data d;
  d.name = ChunkName{0, 10}; // 10 mod 4 == 2
  CHECK(strategy_handle_data(s, d, 2, rng).cache);
  CHECK_FALSE(strategy_handle_data(s, d, 3, rng).cache);
  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);

  d.name = ChunkName{0, 8}; // 8 mod 4 == 0
  CHECK(strategy_handle_data(s, d, 0, rng).cache);

  CHECK(draws_consumed(s, d, 0) == 0);
}

TEST_CASE("node labels are id mod k under Labels and zero elsewhere") {
  StrategyParams s = make(StrategyKind::Labels);
  s.k = 4;
  CHECK(node_label_for(s, 0) == 0);
  CHECK(node_label_for(s, 10) == 2);
  CHECK(node_label_for(s, 7) == 3);
  s.k = 1;
  CHECK(node_label_for(s, 999) == 0); // Labels(1) labels everything 0
  CHECK(node_label_for(make(StrategyKind::CEE), 10) == 0);
  CHECK(node_label_for(make(StrategyKind::ProbCache), 10) == 0);
}

TEST_CASE("Intervals caches every i+1-th hop along the return path") {
  StrategyParams s = make(StrategyKind::Intervals);
  s.i = 2;
  RngStream rng(1, 1, 1);

  // the hit seeds interval = 2; walk 9 hops and note where the copy lands
  Interest interest;
  Data d = strategy_make_data(s, interest, 0);
  CHECK(d.interval == 2);

  std::vector<int> cached_at;
  for (int hop = 1; hop <= 9; ++hop)
    if (strategy_handle_data(s, d, 0, rng).cache) cached_at.push_back(hop);
  // skip two, cache, skip two, cache...
  CHECK(cached_at == std::vector<int>{3, 6, 9});

  CHECK(draws_consumed(s, Data{}, 0) == 0);
}

TEST_CASE("Intervals counter mechanics: cache at zero, reseed, else decrement") {
  StrategyParams s = make(StrategyKind::Intervals);
  s.i = 2;
  RngStream rng(1, 1, 1);

  Data d;
  d.interval = 0;
  CHECK(strategy_handle_data(s, d, 0, rng).cache);
  CHECK(d.interval == 2); // reseeded

  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);
  CHECK(d.interval == 1);
  CHECK_FALSE(strategy_handle_data(s, d, 0, rng).cache);
  CHECK(d.interval == 0);
  CHECK(strategy_handle_data(s, d, 0, rng).cache);

  // Intervals(0) degenerates to caching at every hop
  s.i = 0;
  Data e;
  for (int hop = 0; hop < 4; ++hop) CHECK(strategy_handle_data(s, e, 0, rng).cache);
}

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "icnsim/model.hpp"

using namespace icnsim;

TEST_CASE("ms/us conversion is exact and rounds to nearest") {
  CHECK(ms_to_us(0.0) == 0);
  CHECK(ms_to_us(10.0) == 10000);
  CHECK(ms_to_us(1.5) == 1500);
  CHECK(ms_to_us(2000.0) == 2000000);
  CHECK(ms_to_us(300000.0) == 300000000);

  // sub-microsecond fractions round to the nearest tick
  CHECK(ms_to_us(0.0004) == 0);
  CHECK(ms_to_us(0.0006) == 1);
  CHECK(ms_to_us(-1.5) == -1500);

  CHECK(us_to_ms(10000) == doctest::Approx(10.0));
  CHECK(us_to_ms(1) == doctest::Approx(0.001));
  CHECK(us_to_ms(ms_to_us(12.345)) == doctest::Approx(12.345));
}

TEST_CASE("chunk names order prefix-major and pack into 64 bits") {
  ChunkName a{1, 5}, b{1, 6}, c{2, 0};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(a == ChunkName{1, 5});
  CHECK(ChunkName{2, 7}.packed() == ((std::uint64_t{2} << 32) | 7));
  CHECK(ChunkName{0, 0}.packed() == 0);
}

TEST_CASE("chunk name hash separates a realistic name population") {
  ChunkNameHash h;
  std::set<std::size_t> seen;
  std::size_t count = 0;
  for (NodeId p = 0; p < 50; ++p)
    for (std::uint32_t c = 0; c < 50; ++c) {
      seen.insert(h(ChunkName{p, c}));
      ++count;
    }
  // 2500 names across 64-bit outputs: a collision here means the mix is broken
  CHECK(seen.size() == count);
}

TEST_CASE("make_chunk_name enforces the content universe") {
  CHECK(make_chunk_name(3, 0, 50) == ChunkName{3, 0});
  CHECK(make_chunk_name(3, 49, 50) == ChunkName{3, 49});
  CHECK_THROWS_AS(make_chunk_name(3, 50, 50), InvalidChunkId);
  CHECK_THROWS_AS(make_chunk_name(3, 0, 0), InvalidChunkId);
}

TEST_CASE("packet field defaults") {
  Interest i;
  CHECK(i.tsi == 1); // hop count starts at 1 at the consumer
  Data d;
  CHECK(d.tsb == 1);
  CHECK(d.tsi == 1);
  CHECK(d.interval == 0);
  CHECK(d.hit_node == 0);
}

TEST_CASE("strategy labels round-trip through the parser") {
  const std::vector<std::string> labels = {
      "NoCache", "CEE",       "LCD",          "MCD",
      "Prob(0.5)", "Prob(0.25)", "Prob(1)",   "Prob(0)",
      "ProbCache", "ProbCacheInv", "Labels(4)", "Labels(10)",
      "Intervals(2)", "Intervals(0)"};
  for (const auto& text : labels) {
    CAPTURE(text);
    CHECK(strategy_label(parse_strategy(text)) == text);
  }
}

TEST_CASE("strategy parsing fills the right fields") {
  CHECK(parse_strategy("NoCache").kind == StrategyKind::NoCache);
  CHECK(parse_strategy("CEE").kind == StrategyKind::CEE);
  CHECK(parse_strategy("LCD").kind == StrategyKind::LCD);
  CHECK(parse_strategy("MCD").kind == StrategyKind::MCD);
  CHECK(parse_strategy("ProbCache").kind == StrategyKind::ProbCache);
  CHECK(parse_strategy("ProbCacheInv").kind == StrategyKind::ProbCacheInv);

  auto prob = parse_strategy("Prob(0.3)");
  CHECK(prob.kind == StrategyKind::Prob);
  CHECK(prob.p == doctest::Approx(0.3));

  auto labels = parse_strategy("Labels(7)");
  CHECK(labels.kind == StrategyKind::Labels);
  CHECK(labels.k == 7);

  auto intervals = parse_strategy("Intervals(3)");
  CHECK(intervals.kind == StrategyKind::Intervals);
  CHECK(intervals.i == 3);
}

TEST_CASE("strategy parsing rejects malformed input") {
  // unknown names
  CHECK_THROWS_AS(parse_strategy("LRU"), SpecError);
  CHECK_THROWS_AS(parse_strategy(""), SpecError);
  // arity mistakes
  CHECK_THROWS_AS(parse_strategy("Prob"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Prob()"), SpecError);
  CHECK_THROWS_AS(parse_strategy("CEE(3)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("ProbCache(0.5)"), SpecError);
  // bad arguments
  CHECK_THROWS_AS(parse_strategy("Prob(1.5)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Prob(-0.1)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Prob(x)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Labels(0)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Labels(2.5)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Intervals(-1)"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Intervals(1.5)"), SpecError);
  // broken syntax
  CHECK_THROWS_AS(parse_strategy("Prob(0.5"), SpecError);
  CHECK_THROWS_AS(parse_strategy("Prob(0.5)x"), SpecError);
}

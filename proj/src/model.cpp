#include "icnsim/model.hpp"

#include <cstdio>
#include <cstdlib>

namespace icnsim {

namespace {

// %g-style but stable: prints 0.5 as "0.5", 1 as "1", 0.25 as "0.25"
std::string format_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

} // namespace

std::string strategy_label(const StrategyParams& s) {
  switch (s.kind) {
    case StrategyKind::NoCache: return "NoCache";
    case StrategyKind::CEE: return "CEE";
    case StrategyKind::LCD: return "LCD";
    case StrategyKind::MCD: return "MCD";
    case StrategyKind::Prob: return "Prob(" + format_param(s.p) + ")";
    case StrategyKind::ProbCache: return "ProbCache";
    case StrategyKind::ProbCacheInv: return "ProbCacheInv";
    case StrategyKind::Labels:
      return "Labels(" + std::to_string(s.k) + ")";
    case StrategyKind::Intervals:
      return "Intervals(" + std::to_string(s.i) + ")";
  }
  return "?";
}

StrategyParams parse_strategy(const std::string& text) {
  StrategyParams s;
  auto open = text.find('(');
  std::string head = open == std::string::npos ? text : text.substr(0, open);
  std::string arg;
  if (open != std::string::npos) {
    auto close = text.find(')', open);
    if (close == std::string::npos || close + 1 != text.size())
      throw SpecError("bad strategy syntax: " + text);
    arg = text.substr(open + 1, close - open - 1);
  }

  auto need_arg = [&](const char* what) {
    if (arg.empty())
      throw SpecError(std::string("strategy ") + head + " needs a " + what +
                      " argument, e.g. " + head + "(...)");
  };
  auto no_arg = [&]() {
    if (!arg.empty()) throw SpecError("strategy " + head + " takes no argument");
  };
  auto parse_num = [&](double lo, double hi) {
    char* end = nullptr;
    double v = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || *end != '\0' || v < lo || v > hi)
      throw SpecError("bad argument for " + head + ": " + arg);
    return v;
  };

  if (head == "NoCache") { no_arg(); s.kind = StrategyKind::NoCache; }
  else if (head == "CEE") { no_arg(); s.kind = StrategyKind::CEE; }
  else if (head == "LCD") { no_arg(); s.kind = StrategyKind::LCD; }
  else if (head == "MCD") { no_arg(); s.kind = StrategyKind::MCD; }
  else if (head == "ProbCache") { no_arg(); s.kind = StrategyKind::ProbCache; }
  else if (head == "ProbCacheInv") { no_arg(); s.kind = StrategyKind::ProbCacheInv; }
  else if (head == "Prob") {
    need_arg("probability");
    s.kind = StrategyKind::Prob;
    s.p = parse_num(0.0, 1.0);
  } else if (head == "Labels") {
    need_arg("modulus");
    s.kind = StrategyKind::Labels;
    double v = parse_num(1.0, 4294967295.0);
    if (v != static_cast<std::uint32_t>(v))
      throw SpecError("Labels modulus must be a positive integer: " + arg);
    s.k = static_cast<std::uint32_t>(v);
  } else if (head == "Intervals") {
    need_arg("gap");
    s.kind = StrategyKind::Intervals;
    double v = parse_num(0.0, 4294967295.0);
    if (v != static_cast<std::uint32_t>(v))
      throw SpecError("Intervals gap must be a non-negative integer: " + arg);
    s.i = static_cast<std::uint32_t>(v);
  } else {
    throw SpecError("unknown strategy: " + text);
  }
  return s;
}

} // namespace icnsim

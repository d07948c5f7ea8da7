#pragma once

#include <stdexcept>
#include <string>

namespace icnsim {

// Base for everything the simulator throws on purpose.  Callers that only
// want a coarse "simulation input was bad" check can catch this one.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidChunkId : SimError {
  using SimError::SimError;
};

// Packet with fields that no legal run can produce (e.g. a hop counter of
// zero on a packet that must have traveled at least one hop).
struct MalformedPacket : SimError {
  using SimError::SimError;
};

// Bad topology input: parse failure, self-loop, disconnected graph.
struct TopologyError : SimError {
  using SimError::SimError;
};

// Random placement could not produce a connected graph within the retry cap.
struct GenerationFailed : SimError {
  using SimError::SimError;
};

// FIB has no entry for the requested prefix.
struct NoRoute : SimError {
  using SimError::SimError;
};

// Metrics asked of an empty retrieval log.
struct EmptyLog : SimError {
  using SimError::SimError;
};

// Experiment spec file failed validation.
struct SpecError : SimError {
  using SimError::SimError;
};

} // namespace icnsim

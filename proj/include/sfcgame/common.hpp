#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sfcgame {

using NodeId = int;
using LinkId = int;
using RequestId = int;

/// Beam width / candidate count meaning "no truncation".
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No path connects the requested endpoints.
class NoPathError : public Error {
 public:
  NoPathError(NodeId s, NodeId t)
      : Error("no path between node " + std::to_string(s) + " and node " +
              std::to_string(t)) {}
};

/// A server state machine was driven into a transition it does not allow.
class IllegalTransitionError : public Error {
 public:
  using Error::Error;
};

/// Configuration or input document failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

// SplitMix64 finalizer. Sub-seeds for slots, repetitions and streams are
// derived as mix(master ^ mix(stream) ^ mix(mix(index))) so every
// (master, stream, index) triple replays independently.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index) {
  return mix64(master ^ mix64(stream) ^ mix64(mix64(index)));
}

namespace seed_stream {
inline constexpr std::uint64_t kWorkload = 1;
inline constexpr std::uint64_t kSlotCount = 2;
inline constexpr std::uint64_t kRepetition = 3;
}  // namespace seed_stream

}  // namespace sfcgame

#pragma once

#include <stdexcept>
#include <string>

namespace recq {

/// Invalid mathematical input (violated precondition, out-of-domain value).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A retry budget or size cap was exhausted.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested parameters put an experiment outside its valid regime
/// (e.g. the sieve window (y, z] is empty at the requested scale).
class regime_error : public std::runtime_error {
 public:
  explicit regime_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace recq

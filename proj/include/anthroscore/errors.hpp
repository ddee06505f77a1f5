#pragma once

#include <stdexcept>
#include <string>

namespace anthro {

// Base class for all toolkit errors.  Every error carries a message that
// names the offending input; callers that batch over sentences catch
// ScoringError subclasses, report, and continue.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// --- scoring-core ---
class MissingPronoun : public Error {
 public:
  using Error::Error;
};
class ZeroProbabilityMass : public Error {
 public:
  using Error::Error;
};
class EmptyCollection : public Error {
 public:
  using Error::Error;
};
class InvalidThresholds : public Error {
 public:
  using Error::Error;
};

// --- mlm-backend ---
class BackendUnreachable : public Error {
 public:
  using Error::Error;
};
class MaskTokenizationError : public Error {
 public:
  using Error::Error;
};
class VocabularyMiss : public Error {
 public:
  using Error::Error;
};
class CacheCorruption : public Error {
 public:
  using Error::Error;
};

// --- text-pipeline ---
class ConlluParseError : public Error {
 public:
  using Error::Error;
};
class OverlappingMask : public Error {
 public:
  using Error::Error;
};

// --- corpus-analytics ---
class EmptyGroup : public Error {
 public:
  using Error::Error;
};
class DegenerateInput : public Error {
 public:
  using Error::Error;
};
class ZeroMarginal : public Error {
 public:
  using Error::Error;
};
class EmptyCorpus : public Error {
 public:
  using Error::Error;
};
class UnknownPronoun : public Error {
 public:
  using Error::Error;
};
class LastPronoun : public Error {
 public:
  using Error::Error;
};

}  // namespace anthro

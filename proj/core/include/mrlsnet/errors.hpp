#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrls {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A topology spec whose arithmetic cannot be satisfied (divisibility,
/// non-even radix, non-prime q, ...).
class InfeasibleSpec : public Error {
public:
  using Error::Error;
};

/// Random matching could not complete after the bounded restart budget.
class GenerationStalled : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Malformed topology or table file. Carries 1-based line/column.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Some pair of switches that must be mutually reachable is not.
class Disconnected : public Error {
public:
  using Error::Error;
};

class NoEndpoints : public Error {
public:
  using Error::Error;
};

/// Polarized routing reached a switch with no permitted next hop.
class CornerEncountered : public Error {
public:
  CornerEncountered(const std::string& what, std::uint32_t source,
                    std::uint32_t target, std::uint32_t corner)
      : Error(what), source(source), target(target), corner(corner) {}
  std::uint32_t source;
  std::uint32_t target;
  std::uint32_t corner;
};

class NotMultistage : public Error {
public:
  using Error::Error;
};

class HopBoundExceeded : public Error {
public:
  using Error::Error;
};

class InvalidK : public Error {
public:
  using Error::Error;
};

/// No flit moved for a full stall window while packets were in flight.
/// Signals a routing/VC bug, never an expected outcome.
class DeadlockDetected : public Error {
public:
  using Error::Error;
};

/// Latency measurement requested at a load the instance cannot sustain.
class SaturatedAtLoad : public Error {
public:
  using Error::Error;
};

/// Credit accounting went negative; an engine invariant was violated.
class CreditUnderflow : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace mrls

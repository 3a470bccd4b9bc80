#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace starlim {

// Byte range [begin, end) into an input string.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Base of all recoverable domain errors. kind() is a stable machine-readable
// tag used by the CLI when producing structured error payloads.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// Errors produced while reading input text (expressions, set literals, ...).
// They carry the offending byte range.
class ParseError : public Error {
public:
  ParseError(std::string kind, const std::string& msg, SourceSpan span)
      : Error(std::move(kind), msg), span_(span) {}

  SourceSpan span() const noexcept { return span_; }

private:
  SourceSpan span_;
};

class SyntaxError : public ParseError {
public:
  SyntaxError(const std::string& msg, SourceSpan span)
      : ParseError("SyntaxError", msg, span) {}
};

class ZeroModulus : public ParseError {
public:
  ZeroModulus(const std::string& msg, SourceSpan span)
      : ParseError("ZeroModulus", msg, span) {}
};

class BranchCountMismatch : public ParseError {
public:
  BranchCountMismatch(const std::string& msg, SourceSpan span)
      : ParseError("BranchCountMismatch", msg, span) {}
};

#define STARLIM_SIMPLE_ERROR(NAME)                                    \
  class NAME : public Error {                                         \
  public:                                                             \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}      \
  }

STARLIM_SIMPLE_ERROR(DivisionByZeroGerm);
STARLIM_SIMPLE_ERROR(NotFinite);
STARLIM_SIMPLE_ERROR(IncoherentConstraints);
STARLIM_SIMPLE_ERROR(EmptyBasisIntersection);
STARLIM_SIMPLE_ERROR(DomainTooSmall);
STARLIM_SIMPLE_ERROR(UniverseTooLarge);
STARLIM_SIMPLE_ERROR(NotAFilter);
STARLIM_SIMPLE_ERROR(NotUltra);
STARLIM_SIMPLE_ERROR(IsActuallyLimit);
STARLIM_SIMPLE_ERROR(PremiseFailed);
STARLIM_SIMPLE_ERROR(ThresholdOverflow);
STARLIM_SIMPLE_ERROR(ModulusOverflow);
STARLIM_SIMPLE_ERROR(ExponentTooLarge);

#undef STARLIM_SIMPLE_ERROR

// A squeeze hypothesis that does not hold; names the first failing set.
class HypothesisFailed : public Error {
public:
  HypothesisFailed(const std::string& msg, std::string set_name)
      : Error("HypothesisFailed", msg), set_name_(std::move(set_name)) {}

  const std::string& set_name() const noexcept { return set_name_; }

private:
  std::string set_name_;
};

// Raised when a "cannot happen" internal consistency check trips.
// The CLI maps this to its own exit code, distinct from domain errors.
class InternalInvariant : public std::logic_error {
public:
  explicit InternalInvariant(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace starlim

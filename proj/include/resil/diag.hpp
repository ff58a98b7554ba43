#ifndef RESIL_DIAG_HPP_
#define RESIL_DIAG_HPP_

#include <stdexcept>
#include <string>

namespace resil {

// Parse-time failure with source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Semantic model error. `kind` is a stable tag: ArityMismatch,
// UndeclaredName, UnguardedRecursion, DomainEscape, HoleCountMismatch,
// CaptureViolation, MediationMismatch, BadParams, OpenTerm, CarrierMismatch.
class ModelError : public std::runtime_error {
 public:
  ModelError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind(std::move(kind)) {}
  std::string kind;
};

// Bounded exploration ran out of budget while saturation was requested.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error("budget exceeded: " + what) {}
};

// Safety valve for the backward/forward decider loops. Not a correctness
// claim; termination is guaranteed by the wqo, the cap only bounds runaway
// misconfigured instances.
class IterationCap : public std::runtime_error {
 public:
  explicit IterationCap(const std::string& what)
      : std::runtime_error("iteration cap hit: " + what) {}
};

class PreconditionViolated : public std::runtime_error {
 public:
  explicit PreconditionViolated(const std::string& what)
      : std::runtime_error("precondition violated: " + what) {}
};

}  // namespace resil

#endif  // RESIL_DIAG_HPP_

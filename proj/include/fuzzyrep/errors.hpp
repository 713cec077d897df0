#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fuzzyrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// corpus ingestion
class UndecodableInput : public Error {
 public:
  using Error::Error;
};

class EmptyDocument : public Error {
 public:
  using Error::Error;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

// fuzzy engine
class NoRuleFired : public Error {
 public:
  using Error::Error;
};

class InvalidRuleBase : public Error {
 public:
  using Error::Error;
};

class EmptyPositions : public Error {
 public:
  using Error::Error;
};

// knowledge bases
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class CompletenessError : public Error {
 public:
  using Error::Error;
};

class EmptyProfile : public Error {
 public:
  using Error::Error;
};

// weighting
class UnknownTerm : public Error {
 public:
  using Error::Error;
};

// clustering / evaluation
class InsufficientDocs : public Error {
 public:
  using Error::Error;
};

class CategoryTooSmall : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Pipeline failure tagged with the stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace fuzzyrep

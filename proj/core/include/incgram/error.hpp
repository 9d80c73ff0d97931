#pragma once

#include <stdexcept>
#include <string>

namespace incgram {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid grammar file. `line()` is 0 when the problem is not
/// tied to a single line.
class GrammarError : public Error {
 public:
  explicit GrammarError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Values from different semiring instances were combined.
class SemiringMismatch : public Error {
 public:
  using Error::Error;
};

/// A generator was applied where its domain does not match, or a word is
/// outside the vocabulary.
class InvalidApplication : public Error {
 public:
  using Error::Error;
};

/// A closure was still producing new states when the depth bound (or a
/// state-count cap) was reached.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class MorphismError : public Error {
 public:
  using Error::Error;
};

/// Corpus file or language-model query problems (bad entries, zero mass).
class CorpusError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace incgram

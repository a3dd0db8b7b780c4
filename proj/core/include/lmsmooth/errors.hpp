// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>

namespace lmsmooth {

/// Base class for all recoverable toolkit errors. The CLI maps these to
/// exit code 2 (data error); usage errors are handled by the parser.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line tokenized to nothing.
class EmptySentence : public Error {
 public:
  using Error::Error;
};

/// split_blocks called with b = 0.
class InvalidBlockCount : public Error {
 public:
  using Error::Error;
};

/// A subtrahend count exceeded the corresponding total count.
class UnderflowError : public Error {
 public:
  using Error::Error;
};

/// Relative frequencies requested from a table with no countable tokens.
class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

/// A token outside the model vocabulary was queried.
class OovError : public Error {
 public:
  using Error::Error;
};

/// Good-Turing probability queried for a count class r with N_{r+1} = 0.
class UndefinedClass : public Error {
 public:
  using Error::Error;
};

/// Good-Turing unseen probability requested when no bigram is unseen.
class DegenerateVocabulary : public Error {
 public:
  using Error::Error;
};

/// Perplexity requested for an empty test sample (N = 0).
class EmptyTest : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmsmooth

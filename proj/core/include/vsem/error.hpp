#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsem {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid generator variant, empty chain, bad chain spelling.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// rng range with lo > hi.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data that cannot be processed: size mismatches,
/// degenerate samples, histogram totals that disagree.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. Carries the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Not a container, unknown version, truncated header.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Check block did not decrypt to the expected marker.
class AuthError : public Error {
 public:
  using Error::Error;
};

/// Decrypted content failed structural or checksum validation.
class CorruptError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsem

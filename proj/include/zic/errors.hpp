#ifndef ZIC_ERRORS_HPP
#define ZIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zic {

// Invalid argument or malformed data (empty input, negative value, NaN, ...).
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A margin whose positive part is required but empty (all mass at zero).
class DegenerateMargin : public std::runtime_error {
 public:
  explicit DegenerateMargin(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure while reading input data.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A cell of an input file could not be parsed; the message carries the row.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Ties among positive values found while the tie policy forbids them.
class TieError : public std::runtime_error {
 public:
  explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zic

#endif  // ZIC_ERRORS_HPP

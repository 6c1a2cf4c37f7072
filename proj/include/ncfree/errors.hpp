#pragma once

#include <stdexcept>
#include <string>

namespace ncfree {

// Error taxonomy used across the library. The CLI maps kinds to exit
// codes and machine-readable error records, so every throw site picks
// the category deliberately.
class error : public std::runtime_error {
public:
  error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// Malformed structural input: overlapping/gappy blocks, crossing where
// a non-crossing partition is required, mismatched ground sets.
class structural_error : public error {
public:
  explicit structural_error(const std::string& msg) : error("structural", msg) {}
};

// Valid value outside an operation's domain (n not divisible by k, ...).
class domain_error : public error {
public:
  explicit domain_error(const std::string& msg) : error("domain", msg) {}
};

// Request exceeds an enumeration ceiling.
class resource_limit_error : public error {
public:
  explicit resource_limit_error(const std::string& msg) : error("resource", msg) {}
};

// A sequence is too short for the requested truncation order.
class truncation_error : public error {
public:
  explicit truncation_error(const std::string& msg) : error("truncation", msg) {}
};

// Unparseable text (partition literals, rationals, spec files).
class parse_error : public error {
public:
  explicit parse_error(const std::string& msg) : error("parse", msg) {}
};

} // namespace ncfree

#pragma once

#include <stdexcept>
#include <string>

namespace endoalg {

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& m) : std::runtime_error("cap exceeded: " + m) {}
};

struct DepthExhausted : std::runtime_error {
  explicit DepthExhausted(const std::string& m) : std::runtime_error("depth exhausted: " + m) {}
};

struct ZeroElement : std::runtime_error {
  explicit ZeroElement(const std::string& m) : std::runtime_error("zero element: " + m) {}
};

struct NotDiagonal : std::runtime_error {
  explicit NotDiagonal(const std::string& m) : std::runtime_error("not diagonal: " + m) {}
};

struct OutOfDomain : std::runtime_error {
  explicit OutOfDomain(const std::string& m) : std::runtime_error("out of domain: " + m) {}
};

struct CompanionExhausted : std::runtime_error {
  explicit CompanionExhausted(const std::string& m)
      : std::runtime_error("companion search exhausted: " + m) {}
};

struct SaturatedValuation : std::runtime_error {
  explicit SaturatedValuation(const std::string& m)
      : std::runtime_error("valuation saturated at max depth: " + m) {}
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& m, std::size_t pos)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + m), position(pos) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error("config error: " + m) {}
};

}  // namespace endoalg

#pragma once

#include <stdexcept>
#include <string>

namespace posgeo {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- expression language ---------------------------------------------------

struct SyntaxError : Error {
  SyntaxError(std::string msg, int line, int column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct UnknownIdentifier : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// --- evaluation ------------------------------------------------------------

struct DomainError : Error {
  using Error::Error;
};

struct EvalError : Error {
  using Error::Error;
};

// --- catalog ---------------------------------------------------------------

struct UnknownCatalogEntry : Error {
  using Error::Error;
};

struct MissingParameter : Error {
  using Error::Error;
};

// --- geometry --------------------------------------------------------------

// Raised when the tangent basis loses full rank at a chart point.
struct RankDeficient : Error {
  using Error::Error;
};

struct NotNormal : Error {
  using Error::Error;
};

struct OrderTooLow : Error {
  using Error::Error;
};

// --- analysis --------------------------------------------------------------

struct TooFewPoints : Error {
  using Error::Error;
};

struct DimensionTooLow : Error {
  using Error::Error;
};

struct VanishingNormalPart : Error {
  using Error::Error;
};

// --- io / config -----------------------------------------------------------

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace posgeo

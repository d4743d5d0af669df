#pragma once

#include <stdexcept>
#include <string>

namespace flatpbd {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A requested order has no design (v = 2, 6, 8 for K = {3,4,5}; n = 2 for
// idempotent squares).
struct NoDesignExists : Error {
  explicit NoDesignExists(const std::string& what) : Error(what) {}
};

// Ingredient type not present in the catalog.
struct NotInCatalog : Error {
  explicit NotInCatalog(const std::string& what) : Error(what) {}
};

// Truncation count outside the proven reachable range.
struct OutOfRange : Error {
  explicit OutOfRange(const std::string& what) : Error(what) {}
};

// Caller violated a documented precondition.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// An invariant that should be unreachable failed; indicates a bug.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

// Malformed design file; carries a human-readable position.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace flatpbd

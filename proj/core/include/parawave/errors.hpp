#pragma once

#include <stdexcept>
#include <string>

namespace parawave {

// Base class for every error raised by the library. Each concrete type maps
// to one failure mode of the numerical contracts; the lab CLI translates
// them into exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : Error {
  explicit GridMismatch(const std::string& what) : Error(what) {}
};

struct NonHermitianMultiplier : Error {
  explicit NonHermitianMultiplier(const std::string& what) : Error(what) {}
};

struct SymbolUndefined : Error {
  explicit SymbolUndefined(const std::string& what) : Error(what) {}
};

struct EllipticityViolation : Error {
  explicit EllipticityViolation(const std::string& what) : Error(what) {}
};

struct DegenerateMap : Error {
  explicit DegenerateMap(const std::string& what) : Error(what) {}
};

struct SolverDiverged : Error {
  explicit SolverDiverged(const std::string& what) : Error(what) {}
};

struct CflViolation : Error {
  explicit CflViolation(const std::string& what) : Error(what) {}
};

struct TaylorSignViolation : Error {
  explicit TaylorSignViolation(const std::string& what) : Error(what) {}
};

struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& what) : Error(what) {}
};

struct GoldenMismatch : Error {
  explicit GoldenMismatch(const std::string& what) : Error(what) {}
};

}  // namespace parawave

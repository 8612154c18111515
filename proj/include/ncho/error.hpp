#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ncho {

/// Raised when an argument violates a documented precondition.
class DomainError : public std::domain_error
{
 public:
  using std::domain_error::domain_error;
};

/// Raised by the eigensolvers. `index()` names the eigenvalue that failed to
/// converge (or npos), `bracket()` the best interval known at failure.
class SolverError : public std::runtime_error
{
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit SolverError(const std::string& what, std::size_t index = npos,
                       std::pair<double, double> bracket = {0.0, 0.0})
      : std::runtime_error(what), index_(index), bracket_(bracket)
  {}

  std::size_t index() const noexcept { return index_; }
  std::pair<double, double> bracket() const noexcept { return bracket_; }

 private:
  std::size_t index_;
  std::pair<double, double> bracket_;
};

/// Raised when the quadrature oracle cannot reach its error target.
class OracleError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncho

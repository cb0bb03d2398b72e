#ifndef COALKIT_ERRORS_HPP
#define COALKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coalkit {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, bad rational literal, unknown player, ...
struct ParseError : Error {
  using Error::Error;
};

/// A player count exceeds a representation or enumeration limit.
struct TooManyPlayers : Error {
  using Error::Error;
};

/// The requested engine cannot handle the given representation.
struct EngineUnsupported : Error {
  using Error::Error;
};

/// The payoff vector under test is not an imputation; the message carries
/// the violated condition and player.
struct NotAnImputation : Error {
  using Error::Error;
};

/// extract_iis was called on a feasible system.
struct NotInfeasible : Error {
  using Error::Error;
};

/// An (i, j, S) query where i is outside S or j is inside it.
struct BadCoalition : Error {
  using Error::Error;
};

/// Exact treewidth was requested beyond its size limit.
struct TooLargeForExact : Error {
  using Error::Error;
};

struct MalformedCnf : Error {
  using Error::Error;
};

struct MalformedQbf : Error {
  using Error::Error;
};

/// The quantifier prefix is not a single forall block followed by a single
/// exists block.
struct Not2QBF : MalformedQbf {
  using MalformedQbf::MalformedQbf;
};

}  // namespace coalkit

#endif  // COALKIT_ERRORS_HPP

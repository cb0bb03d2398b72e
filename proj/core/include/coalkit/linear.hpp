#ifndef COALKIT_LINEAR_HPP
#define COALKIT_LINEAR_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coalkit/rational.hpp"

namespace coalkit {

enum class Relation { Ge, Le, Eq };

/// One linear constraint coeffs . x REL rhs. The tag carries provenance
/// (coalition id, "grand", ...) so infeasible-subsystem reports stay at the
/// level the caller cares about.
struct LinConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::Ge;
  Rational rhs;
  std::string tag;
};

struct LinSystem {
  int dim = 0;
  std::vector<LinConstraint> constraints;
};

struct LPFeasible {
  std::vector<Rational> point;  // an exact feasible (or optimal) vertex
};
struct LPInfeasible {};
struct LPUnbounded {
  std::vector<Rational> point;  // feasible base point
  std::vector<Rational> ray;    // feasible direction of unbounded improvement
};
using LPOutcome = std::variant<LPFeasible, LPInfeasible, LPUnbounded>;

/// Exact rational feasibility check (two-phase simplex, Bland's rule).
/// Returned points are verified against every constraint by substitution.
LPOutcome solve(const LinSystem& sys);

/// Exact optimization of objective . x over the system.
LPOutcome solve(const LinSystem& sys, const std::vector<Rational>& objective, bool maximize);

/// Inclusion-minimal infeasible subsystem containing every constraint whose
/// tag is protected, found by the deletion filter. Throws NotInfeasible on
/// feasible input. With no protected constraints the result has at most
/// dim+1 members; with exactly one (and the rest alone feasible) at most
/// dim unprotected members appear -- both Helly bounds are asserted.
LinSystem extract_iis(const LinSystem& sys, const std::set<std::string>& protected_tags);

struct OpenWitness {
  std::vector<Rational> point;
  Rational slack;  // the margin by which every strict constraint holds
};

/// Decides whether the system with the listed constraints made strict has a
/// solution: one slack variable tightens each strict constraint and is
/// maximized; a witness exists iff the optimum is positive (or unbounded
/// from a feasible point). Strict constraints must be inequalities.
std::optional<OpenWitness> open_feasible(const LinSystem& sys, const std::vector<int>& strict);

}  // namespace coalkit

#endif  // COALKIT_LINEAR_HPP

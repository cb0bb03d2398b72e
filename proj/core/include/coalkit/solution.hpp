#ifndef COALKIT_SOLUTION_HPP
#define COALKIT_SOLUTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "coalkit/game_ops.hpp"
#include "coalkit/games.hpp"
#include "coalkit/linear.hpp"

namespace coalkit {

struct CoreVerdict {
  bool member;
  /// A coalition with positive deficit v(S) - x(S) when inequality (1)
  /// fails; absent when the failure is x(N) > v(N).
  std::optional<std::pair<Coalition, Rational>> blocking;
  std::string reason;  // empty when member
};

/// Membership in the core: x(N) = v(N) and no coalition has positive excess.
CoreVerdict core_check(const Game& g, const PayoffVector& x, Engine engine = Engine::Enumerate,
                       int jobs = 1, bool force = false);

/// At most n coalition constraints which, together with x(N) <= v(N), form
/// an infeasible system. Re-verified infeasible on construction.
struct EmptinessCertificate {
  std::vector<std::pair<Coalition, Rational>> coalitions;  // with their worths
};

enum class CoreMode { FullLp, ConstraintGeneration };

struct CoreNonemptyResult {
  std::optional<PayoffVector> point;               // a verified core point
  std::optional<EmptinessCertificate> certificate; // set iff the core is empty
};

/// Decides core non-emptiness. FullLp materializes every coalition
/// constraint (n <= 30); ConstraintGeneration starts from individual
/// rationality + efficiency and adds max-excess violators found by the
/// chosen engine until a core point emerges or the working system turns
/// infeasible, in which case the IIS becomes the certificate.
CoreNonemptyResult core_nonempty(const Game& g, CoreMode mode,
                                 Engine engine = Engine::Enumerate, int jobs = 1,
                                 bool force = false);

struct KernelViolation {
  int i, j;
  Rational s_ij, s_ji;
};

struct KernelVerdict {
  bool member;
  std::optional<KernelViolation> violation;
};

/// Membership in the kernel: for every ordered pair with x_j > v({j}),
/// s_ij(x) <= s_ji(x). Surpluses are maximized exactly, so no binary
/// search over the worth range is involved. Throws NotAnImputation.
KernelVerdict kernel_check(const Game& g, const PayoffVector& x,
                           Engine engine = Engine::Enumerate, int jobs = 1, bool force = false);

/// An objection (y, S) of i against j: i in S, j outside, y is S-feasible
/// and strictly improves every member. y is stored over all players with
/// zeros outside S.
struct Objection {
  int i, j;
  Coalition coalition;
  PayoffVector y;
};

struct JustifiedObjectionResult {
  bool exists;
  std::optional<PayoffVector> y;   // verified witness when exists
  /// At most |S|+1 counter-coalitions whose constraints already make the
  /// objection region empty (empty when the region dies trivially).
  std::vector<Coalition> witness;
};

/// Decides whether i has a justified objection against j through S, via
/// the delta-slack LP over: y(S) = v(S); y_k > x_k for k in S; and
/// v(T) < y(T cap S) + x(T minus S) for every T containing j but not i.
/// The T family is enumerated exhaustively; only the dominating constraint
/// per intersection with S is materialized, tagged by its witness T.
JustifiedObjectionResult justified_objection_exists(const Game& g, const PayoffVector& x,
                                                    int i, int j, Coalition s,
                                                    bool force = false);

struct BSVerdict {
  bool member;
  std::optional<Objection> justified;
  /// Counter-coalition diagnostics are produced per objection by
  /// justified_objection_exists; the whole-set check leaves this empty.
  std::vector<Coalition> witness_system;
};

/// Membership in the bargaining set: no justified objection exists.
/// Candidate objections iterate pairs (i, j) lexicographically and
/// coalitions by increasing popcount (then increasing bitmask); the first
/// justified objection found is reported. Coalitions with v(S) <= x(S) and
/// targets with x_j = v({j}) can never carry a justified objection and are
/// skipped. Throws NotAnImputation.
BSVerdict bargaining_set_check(const Game& g, const PayoffVector& x, bool force = false);

}  // namespace coalkit

#endif  // COALKIT_SOLUTION_HPP

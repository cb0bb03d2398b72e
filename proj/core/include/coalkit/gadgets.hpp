#ifndef COALKIT_GADGETS_HPP
#define COALKIT_GADGETS_HPP

#include <utility>
#include <vector>

#include "coalkit/formulas.hpp"
#include "coalkit/games.hpp"

namespace coalkit {

/// A generated reduction instance: the graph game, its designated test
/// imputation, and the bookkeeping the weight-lemma self-checks need.
struct GadgetInstance {
  GraphGame game;
  PayoffVector imputation;
  int chall;  // player indices of the two special players
  int sat;
  std::vector<std::pair<int, int>> penalty_edges;  // endpoints, u < v
  Rational normalizer_weight;                      // w({chall, sat})
  int num_vars;                                    // n
  int num_clauses;                                 // m
};

/// Kernel-hardness instance for a 3CNF formula: variable, clause and
/// literal players plus chall and sat; clause-literal edges weigh 2^(n+3),
/// chall/sat-variable edges 2^i (sat gets an extra unit on the first
/// variable), penalties -2^(m+n+7), and the chall-sat edge normalizes
/// v(N) to 1. The designated imputation pays 1 to sat and 0 elsewhere.
/// Requires a clause with at least two literals (MalformedCnf otherwise).
GadgetInstance build_kernel_gadget(const Cnf3& phi);

/// Bargaining-set-hardness instance for a restricted forall-exists
/// formula: clause and literal players plus chall and sat; positive edges
/// weigh 1 (clause-literal, and chall to universal literals), penalties
/// -(m+1) (conflicting literals, same-clause pairs, chall to existential
/// literals and to clauses), and the chall-sat edge normalizes v(N) to
/// n-1+m. The designated imputation pays m to sat, n-1 to chall.
GadgetInstance build_bs_gadget(const Nqbf2Forall& formula);

/// Max worth over coalitions that do not contain both named players, by
/// constrained enumeration: the quantity the gadget weight lemmas bound.
Rational max_worth_avoiding_pair(const GraphGame& g, int a, int b);

}  // namespace coalkit

#endif  // COALKIT_GADGETS_HPP

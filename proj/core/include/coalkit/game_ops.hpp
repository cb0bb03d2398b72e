#ifndef COALKIT_GAME_OPS_HPP
#define COALKIT_GAME_OPS_HPP

#include <optional>
#include <string>

#include "coalkit/games.hpp"
#include "coalkit/treewidth.hpp"

namespace coalkit {

enum class Engine { Enumerate, TreewidthDp };

/// e(S, x) = v(S) - x(S), the dissatisfaction of S at x.
Rational excess(const Game& g, Coalition s, const PayoffVector& x);

struct ImputationCheck {
  bool ok;
  std::string diagnostic;  // violated condition and player, empty when ok
};

/// Efficiency (x(N) = v(N)) and individual rationality (x_i >= v({i})).
ImputationCheck is_imputation(const Game& g, const PayoffVector& x);

struct MaxExcess {
  Rational value;
  Coalition argmax;
};

/// Exact max of e(S, x) over S containing include and avoiding exclude,
/// bound to one game and engine. A treewidth-dp engine decomposes the graph
/// once and reuses it across queries; it only accepts graph games.
class ExcessEngine {
 public:
  ExcessEngine(const Game& g, Engine engine, int jobs = 1, bool force = false);

  MaxExcess max_excess(const PayoffVector& x, Coalition include, Coalition exclude) const;
  /// s_{i,j}(x) = max excess over coalitions containing i but not j.
  Rational surplus(const PayoffVector& x, int i, int j) const;

  Engine engine() const { return engine_; }

 private:
  const Game* g_;
  Engine engine_;
  int jobs_;
  bool force_;
  std::optional<TreeDecomposition> td_;
};

/// One-shot surplus; engine=TreewidthDp requires a graph-game
/// representation (EngineUnsupported otherwise).
Rational surplus(const Game& g, int i, int j, const PayoffVector& x,
                 Engine engine = Engine::Enumerate, int jobs = 1);

/// One-shot constrained max excess via exhaustive enumeration. Walks the
/// subsets in Gray-code order with incremental worth updates for graph
/// games; ties broken toward the smallest coalition bitmask, independent
/// of the number of jobs.
MaxExcess max_excess_enumerate(const Game& g, const PayoffVector& x, Coalition include,
                               Coalition exclude, int jobs = 1, bool force = false);

}  // namespace coalkit

#endif  // COALKIT_GAME_OPS_HPP

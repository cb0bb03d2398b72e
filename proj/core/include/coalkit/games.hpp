#ifndef COALKIT_GAMES_HPP
#define COALKIT_GAMES_HPP

#include <span>
#include <variant>
#include <vector>

#include "coalkit/players.hpp"
#include "coalkit/rational.hpp"

namespace coalkit {

/// Undirected weighted edge; canonical form has u < v.
struct WeightedEdge {
  int u;
  int v;
  Rational weight;
};

/// Graph game: the worth of a coalition is the sum of the weights of the
/// edges with both endpoints inside it.
class GraphGame {
 public:
  GraphGame(PlayerSet players, std::vector<WeightedEdge> edges);

  const PlayerSet& players() const { return players_; }
  std::span<const WeightedEdge> edges() const { return edges_; }
  /// (neighbor, weight) pairs of one player.
  std::span<const std::pair<int, Rational>> adjacency(int player) const {
    return adjacency_[player];
  }

  Rational worth(Coalition s) const;

 private:
  PlayerSet players_;
  std::vector<WeightedEdge> edges_;  // sorted by (u, v), duplicates rejected
  std::vector<std::vector<std::pair<int, Rational>>> adjacency_;
};

/// One marginal-contribution rule {pos literals and negated neg literals} -> value.
struct McRule {
  Coalition pos;
  Coalition neg;
  Rational value;
};

/// Marginal contribution net: a rule applies to S when pos is inside S and
/// neg is disjoint from it; the worth of S is the sum of applying rules.
class McNet {
 public:
  McNet(PlayerSet players, std::vector<McRule> rules);

  const PlayerSet& players() const { return players_; }
  std::span<const McRule> rules() const { return rules_; }

  Rational worth(Coalition s) const;

 private:
  PlayerSet players_;
  std::vector<McRule> rules_;
};

/// Explicit worth table over all 2^n coalitions. Exists as the brute-force
/// oracle representation; capped at 20 players.
class ExplicitGame {
 public:
  ExplicitGame(PlayerSet players, std::vector<Rational> worths);

  const PlayerSet& players() const { return players_; }
  const std::vector<Rational>& table() const { return worths_; }

  Rational worth(Coalition s) const { return worths_[s.bits()]; }

 private:
  PlayerSet players_;
  std::vector<Rational> worths_;  // indexed by coalition bits; [0] == 0
};

/// Any supported compact representation, each exposing the same
/// deterministic worth oracle.
using Game = std::variant<GraphGame, McNet, ExplicitGame>;

const PlayerSet& players(const Game& g);
Rational worth(const Game& g, Coalition s);
const GraphGame* as_graph(const Game& g);

/// Edge-per-rule translation: one two-positive-literal rule per edge.
/// Worth-equivalent on every coalition.
McNet gg_to_mcn(const GraphGame& g);

/// Materializes any oracle into the explicit table (n <= 20).
ExplicitGame to_explicit(const Game& g);

/// Incremental graph worth under single-player flips, for Gray-code
/// subset walks. Start from a base coalition, then flip members one at a
/// time; worth() is maintained exactly.
class GraphWorthTracker {
 public:
  GraphWorthTracker(const GraphGame& g, Coalition base);

  void flip(int player);
  const Rational& worth() const { return worth_; }
  Coalition current() const { return current_; }

 private:
  const GraphGame& g_;
  Coalition current_;
  Rational worth_;
};

}  // namespace coalkit

#endif  // COALKIT_GAMES_HPP

#include "coalkit/games.hpp"

#include <algorithm>

#include "coalkit/errors.hpp"

namespace coalkit {

GraphGame::GraphGame(PlayerSet players, std::vector<WeightedEdge> edges)
    : players_(std::move(players)), edges_(std::move(edges)) {
  int n = players_.count();
  for (auto& e : edges_) {
    if (e.u == e.v) throw ParseError("self-loop on player '" + players_.name(e.u) + "'");
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ParseError("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return std::pair(a.u, a.v) < std::pair(b.u, b.v);
            });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw ParseError("duplicate edge {" + players_.name(edges_[i].u) + "," +
                       players_.name(edges_[i].v) + "}");
  adjacency_.resize(n);
  for (const auto& e : edges_) {
    adjacency_[e.u].emplace_back(e.v, e.weight);
    adjacency_[e.v].emplace_back(e.u, e.weight);
  }
}

Rational GraphGame::worth(Coalition s) const {
  Rational sum;
  for (const auto& e : edges_)
    if (s.contains(e.u) && s.contains(e.v)) sum += e.weight;
  return sum;
}

McNet::McNet(PlayerSet players, std::vector<McRule> rules)
    : players_(std::move(players)), rules_(std::move(rules)) {
  Coalition all = players_.all();
  for (const auto& r : rules_) {
    if (r.pos.intersects(r.neg))
      throw ParseError("rule with a player both positive and negated");
    if (r.pos.empty() && r.neg.empty())
      throw ParseError("rule with an empty pattern");
    if (!r.pos.subset_of(all) || !r.neg.subset_of(all))
      throw ParseError("rule pattern mentions an out-of-range player");
  }
}

Rational McNet::worth(Coalition s) const {
  Rational sum;
  for (const auto& r : rules_)
    if (r.pos.subset_of(s) && !r.neg.intersects(s)) sum += r.value;
  return sum;
}

ExplicitGame::ExplicitGame(PlayerSet players, std::vector<Rational> worths)
    : players_(std::move(players)), worths_(std::move(worths)) {
  int n = players_.count();
  if (n > 20) throw TooManyPlayers("explicit tables are capped at 20 players");
  if (worths_.size() != (std::size_t{1} << n))
    throw ParseError("explicit table has wrong size");
  if (!worths_[0].is_zero()) throw ParseError("the empty coalition must have worth 0");
}

const PlayerSet& players(const Game& g) {
  return std::visit([](const auto& x) -> const PlayerSet& { return x.players(); }, g);
}

Rational worth(const Game& g, Coalition s) {
  return std::visit([&](const auto& x) { return x.worth(s); }, g);
}

const GraphGame* as_graph(const Game& g) { return std::get_if<GraphGame>(&g); }

McNet gg_to_mcn(const GraphGame& g) {
  std::vector<McRule> rules;
  rules.reserve(g.edges().size());
  for (const auto& e : g.edges())
    rules.push_back({Coalition::single(e.u) | Coalition::single(e.v), Coalition(), e.weight});
  return McNet(g.players(), std::move(rules));
}

ExplicitGame to_explicit(const Game& g) {
  int n = players(g).count();
  if (n > 20) throw TooManyPlayers("explicit tables are capped at 20 players");
  std::vector<Rational> table(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
    table[bits] = worth(g, Coalition(bits));
  return ExplicitGame(players(g), std::move(table));
}

GraphWorthTracker::GraphWorthTracker(const GraphGame& g, Coalition base)
    : g_(g), current_(base), worth_(g.worth(base)) {}

void GraphWorthTracker::flip(int player) {
  if (current_.contains(player)) {
    current_ = current_.without(player);
    for (const auto& [q, w] : g_.adjacency(player))
      if (current_.contains(q)) worth_ -= w;
  } else {
    for (const auto& [q, w] : g_.adjacency(player))
      if (current_.contains(q)) worth_ += w;
    current_ = current_.with(player);
  }
}

}  // namespace coalkit

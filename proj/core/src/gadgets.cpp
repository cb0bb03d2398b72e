#include "coalkit/gadgets.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "coalkit/errors.hpp"
#include "coalkit/game_ops.hpp"

namespace coalkit {

namespace {

struct EdgeSet {
  std::map<std::pair<int, int>, Rational> weights;
  std::set<std::pair<int, int>> penalties;

  void add_positive(int u, int v, Rational w) {
    if (u > v) std::swap(u, v);
    if (!weights.emplace(std::make_pair(u, v), std::move(w)).second)
      throw std::logic_error("gadget generated a duplicate positive edge");
  }

  // multiple construction steps may yield the same penalty pair; the pair
  // carries a single edge
  void add_penalty(int u, int v, const Rational& w) {
    if (u == v) throw std::logic_error("gadget generated a self-loop");
    if (u > v) std::swap(u, v);
    if (penalties.insert({u, v}).second) {
      if (!weights.emplace(std::make_pair(u, v), w).second)
        throw std::logic_error("gadget penalty collides with a positive edge");
    }
  }

  Rational total() const {
    Rational sum;
    for (const auto& [_, w] : weights) sum += w;
    return sum;
  }

  std::vector<WeightedEdge> release() && {
    std::vector<WeightedEdge> out;
    out.reserve(weights.size());
    for (auto& [uv, w] : weights) out.push_back({uv.first, uv.second, std::move(w)});
    return out;
  }
};

GadgetInstance assemble(std::vector<std::string> names, EdgeSet edges, int chall, int sat,
                        const Rational& grand_worth, PayoffVector x, int n, int m) {
  Rational normalizer = grand_worth - edges.total();
  edges.add_positive(chall, sat, normalizer);
  std::vector<std::pair<int, int>> penalties(edges.penalties.begin(), edges.penalties.end());
  GadgetInstance out{GraphGame(PlayerSet(std::move(names)), std::move(edges).release()),
                     std::move(x),
                     chall,
                     sat,
                     std::move(penalties),
                     normalizer,
                     n,
                     m};
  ImputationCheck imp = is_imputation(Game(out.game), out.imputation);
  if (!imp.ok)
    throw std::logic_error("gadget imputation failed its check: " + imp.diagnostic);
  return out;
}

}  // namespace

GadgetInstance build_kernel_gadget(const Cnf3& phi) {
  if (!phi.has_multiliteral_clause())
    throw MalformedCnf("the kernel gadget needs a clause with at least two literals");
  int n = phi.num_vars();
  int m = static_cast<int>(phi.clauses().size());

  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("alpha_" + std::to_string(i));
  for (int j = 1; j <= m; ++j) names.push_back("c_" + std::to_string(j));
  // literal players per occurrence, plus per-variable occurrence lists
  std::vector<std::vector<int>> clause_lits(m);
  std::vector<std::vector<int>> pos_occ(n + 1), neg_occ(n + 1);
  for (int j = 0; j < m; ++j) {
    for (int lit : phi.clauses()[j]) {
      int var = std::abs(lit);
      int player = static_cast<int>(names.size());
      names.push_back("lit_" + std::to_string(var) + "_" + std::to_string(j + 1) +
                      (lit > 0 ? "_pos" : "_neg"));
      clause_lits[j].push_back(player);
      (lit > 0 ? pos_occ : neg_occ)[var].push_back(player);
    }
  }
  int chall = static_cast<int>(names.size());
  names.push_back("chall");
  int sat = chall + 1;
  names.push_back("sat");

  auto alpha = [&](int var) { return var - 1; };
  auto clause_player = [&](int j) { return n + j; };

  EdgeSet edges;
  Rational clause_weight = Rational::pow2(n + 3);
  for (int j = 0; j < m; ++j)
    for (int lit_player : clause_lits[j])
      edges.add_positive(clause_player(j), lit_player, clause_weight);
  for (int i = 1; i <= n; ++i) {
    edges.add_positive(chall, alpha(i), Rational::pow2(i));
    Rational w = Rational::pow2(i);
    if (i == 1) w += Rational(1);  // 2^1 + 2^0 on the first variable
    edges.add_positive(sat, alpha(i), w);
  }
  Rational penalty = -Rational::pow2(m + n + 7);
  for (int j = 0; j < m; ++j)
    for (std::size_t a = 0; a < clause_lits[j].size(); ++a)
      for (std::size_t b = a + 1; b < clause_lits[j].size(); ++b)
        edges.add_penalty(clause_lits[j][a], clause_lits[j][b], penalty);
  for (int var = 1; var <= n; ++var) {
    for (int p : pos_occ[var])
      for (int q : neg_occ[var]) edges.add_penalty(p, q, penalty);
    for (int q : neg_occ[var]) edges.add_penalty(alpha(var), q, penalty);
  }

  std::vector<Rational> x(names.size());
  x[sat] = Rational(1);
  return assemble(std::move(names), std::move(edges), chall, sat, Rational(1),
                  PayoffVector(std::move(x)), n, m);
}

GadgetInstance build_bs_gadget(const Nqbf2Forall& formula) {
  const Qbf2& q = formula.qbf();
  int n = q.num_universals();
  int m = static_cast<int>(q.clauses().size());

  std::vector<std::string> names;
  for (int j = 1; j <= m; ++j) names.push_back("c_" + std::to_string(j));
  std::vector<std::vector<int>> clause_lits(m);
  std::vector<bool> is_universal_lit;
  int total_vars = q.num_universals() + q.num_existentials();
  std::vector<std::vector<int>> pos_occ(total_vars + 1), neg_occ(total_vars + 1);
  for (int j = 0; j < m; ++j) {
    for (int lit : q.clauses()[j]) {
      int var = std::abs(lit);
      bool universal = var <= n;
      int player = static_cast<int>(names.size()) + 0;  // adjusted below
      player = m + static_cast<int>(is_universal_lit.size());
      std::string base = universal ? "lit_a" + std::to_string(var)
                                   : "lit_b" + std::to_string(var - n);
      names.push_back(base + "_" + std::to_string(j + 1) + (lit > 0 ? "_pos" : "_neg"));
      clause_lits[j].push_back(player);
      is_universal_lit.push_back(universal);
      (lit > 0 ? pos_occ : neg_occ)[var].push_back(player);
    }
  }
  int chall = static_cast<int>(names.size());
  names.push_back("chall");
  int sat = chall + 1;
  names.push_back("sat");

  EdgeSet edges;
  for (int j = 0; j < m; ++j)
    for (int lit_player : clause_lits[j]) {
      edges.add_positive(j, lit_player, Rational(1));
      if (is_universal_lit[lit_player - m])
        edges.add_positive(chall, lit_player, Rational(1));
    }
  Rational penalty = Rational(-(m + 1));
  for (int var = 1; var <= total_vars; ++var)
    for (int p : pos_occ[var])
      for (int qn : neg_occ[var]) edges.add_penalty(p, qn, penalty);
  for (int j = 0; j < m; ++j) {
    for (std::size_t a = 0; a < clause_lits[j].size(); ++a)
      for (std::size_t b = a + 1; b < clause_lits[j].size(); ++b)
        edges.add_penalty(clause_lits[j][a], clause_lits[j][b], penalty);
    edges.add_penalty(chall, j, penalty);
  }
  for (std::size_t lp = 0; lp < is_universal_lit.size(); ++lp)
    if (!is_universal_lit[lp]) edges.add_penalty(chall, m + static_cast<int>(lp), penalty);

  std::vector<Rational> x(names.size());
  x[sat] = Rational(m);
  x[chall] = Rational(n - 1);
  return assemble(std::move(names), std::move(edges), chall, sat, Rational(n - 1 + m),
                  PayoffVector(std::move(x)), n, m);
}

Rational max_worth_avoiding_pair(const GraphGame& g, int a, int b) {
  Game game(g);
  PayoffVector zero(std::vector<Rational>(g.players().count()));
  Rational without_a =
      max_excess_enumerate(game, zero, Coalition(), Coalition::single(a)).value;
  Rational without_b =
      max_excess_enumerate(game, zero, Coalition(), Coalition::single(b)).value;
  return std::max(without_a, without_b);
}

}  // namespace coalkit

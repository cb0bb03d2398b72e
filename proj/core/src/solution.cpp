#include "coalkit/solution.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "coalkit/errors.hpp"

namespace coalkit {

namespace {

std::string coalition_tag(Coalition s) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "S:%" PRIx64, s.bits());
  return buf;
}

std::optional<Coalition> parse_coalition_tag(const std::string& tag) {
  if (tag.rfind("S:", 0) != 0) return std::nullopt;
  std::uint64_t bits = 0;
  if (std::sscanf(tag.c_str() + 2, "%" SCNx64, &bits) != 1) return std::nullopt;
  return Coalition(bits);
}

LinConstraint coalition_constraint(const Game& g, Coalition s) {
  int n = players(g).count();
  LinConstraint c;
  c.coeffs.assign(n, Rational(0));
  s.for_each([&](int i) { c.coeffs[i] = Rational(1); });
  c.rel = Relation::Ge;
  c.rhs = worth(g, s);
  c.tag = coalition_tag(s);
  return c;
}

LinConstraint grand_upper_bound(const Game& g) {
  int n = players(g).count();
  LinConstraint c;
  c.coeffs.assign(n, Rational(1));
  c.rel = Relation::Le;
  c.rhs = worth(g, players(g).all());
  c.tag = "grand";
  return c;
}

EmptinessCertificate certificate_from_iis(const Game& g, const LinSystem& iis) {
  EmptinessCertificate cert;
  for (const auto& c : iis.constraints)
    if (auto s = parse_coalition_tag(c.tag))
      cert.coalitions.emplace_back(*s, worth(g, *s));
  int n = players(g).count();
  if (static_cast<int>(cert.coalitions.size()) > n)
    throw std::logic_error("emptiness certificate exceeds n coalitions");
  // re-verify: the certified constraints plus the grand-coalition upper
  // bound must be infeasible
  LinSystem check{n, {}};
  for (const auto& [s, w] : cert.coalitions) check.constraints.push_back(coalition_constraint(g, s));
  check.constraints.push_back(grand_upper_bound(g));
  if (!std::holds_alternative<LPInfeasible>(solve(check)))
    throw std::logic_error("emptiness certificate failed re-verification");
  return cert;
}

PayoffVector to_payoff(const std::vector<Rational>& point) {
  return PayoffVector(std::vector<Rational>(point.begin(), point.end()));
}

}  // namespace

CoreVerdict core_check(const Game& g, const PayoffVector& x, Engine engine, int jobs,
                       bool force) {
  const PlayerSet& ps = players(g);
  if (x.size() != ps.count()) throw ParseError("payoff vector dimension mismatch");
  Rational vn = worth(g, ps.all());
  Rational xn = x.total(ps.all());
  if (xn > vn)
    return {false, std::nullopt,
            "inefficient: x(N) = " + xn.str() + " exceeds v(N) = " + vn.str()};
  ExcessEngine ee(g, engine, jobs, force);
  MaxExcess me = ee.max_excess(x, Coalition(), Coalition());
  if (me.value > Rational(0))
    return {false, std::make_pair(me.argmax, me.value),
            "coalition {" + ps.format_coalition(me.argmax) + "} has deficit " + me.value.str()};
  return {true, std::nullopt, ""};
}

CoreNonemptyResult core_nonempty(const Game& g, CoreMode mode, Engine engine, int jobs,
                                 bool force) {
  const PlayerSet& ps = players(g);
  int n = ps.count();

  auto finish_point = [&](const std::vector<Rational>& point) {
    PayoffVector x = to_payoff(point);
    CoreVerdict check = core_check(g, x, engine, jobs, force);
    if (!check.member) throw std::logic_error("core_nonempty point failed core_check");
    return CoreNonemptyResult{std::move(x), std::nullopt};
  };
  auto finish_certificate = [&](const LinSystem& sys) {
    LinSystem iis = extract_iis(sys, {"grand"});
    return CoreNonemptyResult{std::nullopt, certificate_from_iis(g, iis)};
  };

  if (mode == CoreMode::FullLp) {
    require_enumerable(n, force);
    LinSystem sys{n, {}};
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits)
      sys.constraints.push_back(coalition_constraint(g, Coalition(bits)));
    sys.constraints.push_back(grand_upper_bound(g));
    auto outcome = solve(sys);
    if (auto* f = std::get_if<LPFeasible>(&outcome)) return finish_point(f->point);
    return finish_certificate(sys);
  }

  ExcessEngine ee(g, engine, jobs, force);
  LinSystem sys{n, {}};
  for (int i = 0; i < n; ++i)
    sys.constraints.push_back(coalition_constraint(g, Coalition::single(i)));
  sys.constraints.push_back(coalition_constraint(g, ps.all()));
  sys.constraints.push_back(grand_upper_bound(g));

  std::vector<bool> present(n < 64 ? (std::size_t{1} << n) : 0, false);
  auto mark = [&](Coalition s) {
    if (!present.empty()) present[s.bits()] = true;
  };
  for (int i = 0; i < n; ++i) mark(Coalition::single(i));
  mark(ps.all());

  for (;;) {
    auto outcome = solve(sys);
    if (std::holds_alternative<LPInfeasible>(outcome)) return finish_certificate(sys);
    PayoffVector x = to_payoff(std::get<LPFeasible>(outcome).point);
    MaxExcess me = ee.max_excess(x, Coalition(), Coalition());
    if (me.value <= Rational(0)) return finish_point(x.values());
    if (!present.empty() && present[me.argmax.bits()])
      throw std::logic_error("constraint generation revisited a coalition");
    mark(me.argmax);
    sys.constraints.push_back(coalition_constraint(g, me.argmax));
  }
}

KernelVerdict kernel_check(const Game& g, const PayoffVector& x, Engine engine, int jobs,
                           bool force) {
  ImputationCheck imp = is_imputation(g, x);
  if (!imp.ok) throw NotAnImputation(imp.diagnostic);
  const PlayerSet& ps = players(g);
  int n = ps.count();
  ExcessEngine ee(g, engine, jobs, force);

  std::vector<Rational> singleton(n);
  for (int i = 0; i < n; ++i) singleton[i] = worth(g, Coalition::single(i));

  std::map<std::pair<int, int>, Rational> cache;
  auto surplus_of = [&](int i, int j) -> const Rational& {
    auto it = cache.find({i, j});
    if (it == cache.end()) it = cache.emplace(std::make_pair(i, j), ee.surplus(x, i, j)).first;
    return it->second;
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || x[j] == singleton[j]) continue;
      const Rational& sij = surplus_of(i, j);
      const Rational& sji = surplus_of(j, i);
      if (sij > sji) return {false, KernelViolation{i, j, sij, sji}};
    }
  return {true, std::nullopt};
}

namespace {

// One aggregated counterobjection constraint: over all T in I_{j,i} with
// T cap S = overlap, only the largest v(T) - x(T minus S) can bind.
struct CounterRow {
  std::uint64_t overlap;
  Rational bound;
  Coalition witness;
};

std::vector<CounterRow> aggregate_counters(const Game& g, const PayoffVector& x, int i,
                                           int j, Coalition s) {
  const PlayerSet& ps = players(g);
  std::unordered_map<std::uint64_t, CounterRow> agg;
  const GraphGame* graph = as_graph(g);

  Coalition base = Coalition::single(j);
  std::vector<int> free_pos = (ps.all() - Coalition::single(i) - base).members();
  std::uint64_t total = std::uint64_t{1} << free_pos.size();

  Coalition t = base;
  Rational x_outside = x[j];  // x(T minus S); j is outside S
  std::optional<GraphWorthTracker> tracker;
  if (graph) tracker.emplace(*graph, base);

  auto offer = [&](Coalition cur, const Rational& val) {
    std::uint64_t overlap = cur.bits() & s.bits();
    auto it = agg.find(overlap);
    if (it == agg.end())
      agg.emplace(overlap, CounterRow{overlap, val, cur});
    else if (val > it->second.bound ||
             (val == it->second.bound && cur.bits() < it->second.witness.bits()))
      it->second = CounterRow{overlap, val, cur};
  };

  offer(t, (graph ? tracker->worth() : worth(g, t)) - x_outside);
  for (std::uint64_t step = 1; step < total; ++step) {
    int p = free_pos[std::countr_zero(step)];
    bool added = !t.contains(p);
    t = added ? t.with(p) : t.without(p);
    if (graph) tracker->flip(p);
    if (!s.contains(p)) {
      if (added) x_outside += x[p]; else x_outside -= x[p];
    }
    offer(t, (graph ? tracker->worth() : worth(g, t)) - x_outside);
  }

  std::vector<CounterRow> rows;
  rows.reserve(agg.size());
  for (auto& [_, row] : agg) rows.push_back(std::move(row));
  std::sort(rows.begin(), rows.end(),
            [](const CounterRow& a, const CounterRow& b) { return a.overlap < b.overlap; });
  return rows;
}

}  // namespace

JustifiedObjectionResult justified_objection_exists(const Game& g, const PayoffVector& x,
                                                    int i, int j, Coalition s, bool force) {
  const PlayerSet& ps = players(g);
  int n = ps.count();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw BadCoalition("objection needs two distinct players");
  if (!s.contains(i)) throw BadCoalition("objecting player is outside the coalition");
  if (s.contains(j)) throw BadCoalition("target player is inside the coalition");
  if (!s.subset_of(ps.all())) throw BadCoalition("coalition out of range");
  if (x.size() != n) throw ParseError("payoff vector dimension mismatch");

  Rational v_s = worth(g, s);
  if (v_s <= x.total(s)) return {false, std::nullopt, {}};  // (1)+(2) force v(S) > x(S)

  require_enumerable(n, force);
  std::vector<CounterRow> counters = aggregate_counters(g, x, i, j, s);

  // T disjoint from S constrains 0 > bound; if violated nothing else matters
  for (const auto& row : counters)
    if (row.overlap == 0 && row.bound >= Rational(0))
      return {false, std::nullopt, {row.witness}};

  std::vector<int> members = s.members();
  int dim = static_cast<int>(members.size());
  std::vector<int> pos_of(n, -1);
  for (int k = 0; k < dim; ++k) pos_of[members[k]] = k;

  auto build_system = [&](const std::vector<CounterRow>& rows) {
    LinSystem sys{dim, {}};
    std::vector<int> strict;
    LinConstraint eq;
    eq.coeffs.assign(dim, Rational(1));
    eq.rel = Relation::Eq;
    eq.rhs = v_s;
    eq.tag = "feasible";
    sys.constraints.push_back(std::move(eq));
    for (int k = 0; k < dim; ++k) {
      LinConstraint c;
      c.coeffs.assign(dim, Rational(0));
      c.coeffs[k] = Rational(1);
      c.rel = Relation::Ge;
      c.rhs = x[members[k]];
      c.tag = "improve:" + ps.name(members[k]);
      strict.push_back(static_cast<int>(sys.constraints.size()));
      sys.constraints.push_back(std::move(c));
    }
    for (const auto& row : rows) {
      LinConstraint c;
      c.coeffs.assign(dim, Rational(0));
      Coalition(row.overlap).for_each([&](int p) { c.coeffs[pos_of[p]] = Rational(1); });
      c.rel = Relation::Ge;
      c.rhs = row.bound;
      c.tag = coalition_tag(row.witness);
      strict.push_back(static_cast<int>(sys.constraints.size()));
      sys.constraints.push_back(std::move(c));
    }
    return std::make_pair(std::move(sys), std::move(strict));
  };

  auto [sys, strict] = build_system(counters);
  if (auto wit = open_feasible(sys, strict)) {
    // expand to a full payoff vector and re-verify all three conditions
    // against the exhaustive T enumeration
    std::vector<Rational> y_full(n);
    for (int k = 0; k < dim; ++k) y_full[members[k]] = wit->point[k];
    PayoffVector y(std::move(y_full));
    if (y.total(s) != v_s) throw std::logic_error("objection witness is not S-feasible");
    for (int p : members)
      if (y[p] <= x[p]) throw std::logic_error("objection witness does not improve " + ps.name(p));
    std::vector<int> free_pos =
        (ps.all() - Coalition::single(i) - Coalition::single(j)).members();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_pos.size()); ++bits) {
      Coalition t = Coalition::single(j);
      for (std::size_t b = 0; b < free_pos.size(); ++b)
        if (bits >> b & 1) t = t.with(free_pos[b]);
      Rational rhs = y.total(t & s) + x.total(t - s);
      if (worth(g, t) >= rhs)
        throw std::logic_error("objection witness admits a counterobjection");
    }
    return {true, std::move(y), {}};
  }

  // deletion filter over the counter rows; the equality and improvement
  // constraints always stay. Helly in R^{|S|} bounds the survivors by |S|+1.
  std::vector<CounterRow> kept = counters;
  for (std::size_t idx = 0; idx < kept.size();) {
    std::vector<CounterRow> trial;
    for (std::size_t q = 0; q < kept.size(); ++q)
      if (q != idx) trial.push_back(kept[q]);
    auto [trial_sys, trial_strict] = build_system(trial);
    if (!open_feasible(trial_sys, trial_strict)) kept = std::move(trial);
    else ++idx;
  }
  if (static_cast<int>(kept.size()) > dim + 1)
    throw std::logic_error("counterobjection witness exceeds |S|+1 coalitions");
  std::vector<Coalition> witness;
  witness.reserve(kept.size());
  for (const auto& row : kept) witness.push_back(row.witness);
  return {false, std::nullopt, std::move(witness)};
}

BSVerdict bargaining_set_check(const Game& g, const PayoffVector& x, bool force) {
  ImputationCheck imp = is_imputation(g, x);
  if (!imp.ok) throw NotAnImputation(imp.diagnostic);
  const PlayerSet& ps = players(g);
  int n = ps.count();
  require_enumerable(n, force);

  // candidate coalitions: only v(S) > x(S) can carry an objection
  std::vector<Coalition> candidates;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    Coalition s(bits);
    if (worth(g, s) > x.total(s)) candidates.push_back(s);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](Coalition a, Coalition b) {
    return std::make_pair(a.size(), a.bits()) < std::make_pair(b.size(), b.bits());
  });

  std::vector<Rational> singleton(n);
  for (int j = 0; j < n; ++j) singleton[j] = worth(g, Coalition::single(j));

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // T = {j} always counterobjects when x_j = v({j})
      if (x[j] == singleton[j]) continue;
      for (Coalition s : candidates) {
        if (!s.contains(i) || s.contains(j)) continue;
        JustifiedObjectionResult r = justified_objection_exists(g, x, i, j, s, force);
        if (r.exists)
          return {false, Objection{i, j, s, std::move(*r.y)}, {}};
      }
    }
  }
  return {true, std::nullopt, {}};
}

}  // namespace coalkit

#include "coalkit/game_ops.hpp"

#include <thread>

#include "coalkit/errors.hpp"

namespace coalkit {

Rational excess(const Game& g, Coalition s, const PayoffVector& x) {
  return worth(g, s) - x.total(s);
}

ImputationCheck is_imputation(const Game& g, const PayoffVector& x) {
  const PlayerSet& ps = players(g);
  if (x.size() != ps.count())
    return {false, "payoff vector has " + std::to_string(x.size()) + " entries for " +
                       std::to_string(ps.count()) + " players"};
  Rational vn = worth(g, ps.all());
  Rational xn = x.total(ps.all());
  if (xn != vn)
    return {false, "inefficient: x(N) = " + xn.str() + " but v(N) = " + vn.str()};
  for (int i = 0; i < ps.count(); ++i) {
    Rational vi = worth(g, Coalition::single(i));
    if (x[i] < vi)
      return {false, "individually irrational: x(" + ps.name(i) + ") = " + x[i].str() +
                         " < v({" + ps.name(i) + "}) = " + vi.str()};
  }
  return {true, ""};
}

namespace {

// Gray-code walk over the subsets S = include | (subset of free positions),
// visiting every state in the half-open step range. Better is (value, mask)
// with larger value first, then smaller mask, so the merged result does not
// depend on how the range was split.
struct BestTracker {
  bool any = false;
  Rational value;
  std::uint64_t mask = 0;

  void offer(const Rational& v, std::uint64_t m) {
    if (!any || v > value || (v == value && m < mask)) {
      any = true;
      value = v;
      mask = m;
    }
  }
  void merge(const BestTracker& o) {
    if (o.any) offer(o.value, o.mask);
  }
};

std::uint64_t scatter(std::uint64_t small, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < positions.size(); ++b)
    if (small >> b & 1) out |= std::uint64_t{1} << positions[b];
  return out;
}

// One contiguous chunk of the walk; trackers are (re)initialized at the
// chunk's first state so chunks are independent.
BestTracker walk_chunk(const Game& g, const PayoffVector& x, Coalition include,
                       const std::vector<int>& free_pos, std::uint64_t t_begin,
                       std::uint64_t t_end) {
  BestTracker best;
  const GraphGame* graph = as_graph(g);
  std::uint64_t code = t_begin ^ (t_begin >> 1);
  Coalition state = include | Coalition(scatter(code, free_pos));

  if (graph) {
    GraphWorthTracker tracker(*graph, state);
    Rational xs = x.total(state);
    best.offer(tracker.worth() - xs, state.bits());
    for (std::uint64_t t = t_begin + 1; t < t_end; ++t) {
      int b = std::countr_zero(t);
      int p = free_pos[b];
      bool added = !tracker.current().contains(p);
      tracker.flip(p);
      if (added) xs += x[p]; else xs -= x[p];
      best.offer(tracker.worth() - xs, tracker.current().bits());
    }
  } else {
    best.offer(worth(g, state) - x.total(state), state.bits());
    for (std::uint64_t t = t_begin + 1; t < t_end; ++t) {
      int b = std::countr_zero(t);
      int p = free_pos[b];
      state = state.contains(p) ? state.without(p) : state.with(p);
      best.offer(worth(g, state) - x.total(state), state.bits());
    }
  }
  return best;
}

}  // namespace

MaxExcess max_excess_enumerate(const Game& g, const PayoffVector& x, Coalition include,
                               Coalition exclude, int jobs, bool force) {
  const PlayerSet& ps = players(g);
  if (include.intersects(exclude)) throw BadCoalition("include and exclude overlap");
  if (!include.subset_of(ps.all()) || !exclude.subset_of(ps.all()))
    throw BadCoalition("constraint mentions an out-of-range player");
  require_enumerable(ps.count(), force);

  std::vector<int> free_pos = (ps.all() - include - exclude).members();
  std::uint64_t total = std::uint64_t{1} << free_pos.size();

  BestTracker best;
  if (jobs > 1 && free_pos.size() >= 10) {
    int workers = std::min<std::uint64_t>(jobs, 64);
    std::vector<BestTracker> partial(workers);
    std::vector<std::thread> threads;
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
      if (lo >= hi) continue;
      threads.emplace_back([&, w, lo, hi] {
        partial[w] = walk_chunk(g, x, include, free_pos, lo, hi);
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partial) best.merge(p);
  } else {
    best = walk_chunk(g, x, include, free_pos, 0, total);
  }
  return {best.value, Coalition(best.mask)};
}

ExcessEngine::ExcessEngine(const Game& g, Engine engine, int jobs, bool force)
    : g_(&g), engine_(engine), jobs_(jobs), force_(force) {
  if (engine_ == Engine::TreewidthDp) {
    const GraphGame* graph = as_graph(g);
    if (!graph)
      throw EngineUnsupported("the treewidth-dp engine needs a graph-game representation");
    td_ = decompose(*graph, TdMethod::MinFill);
  }
}

MaxExcess ExcessEngine::max_excess(const PayoffVector& x, Coalition include,
                                   Coalition exclude) const {
  if (engine_ == Engine::TreewidthDp) {
    auto r = max_excess_treewidth(*as_graph(*g_), x, include, exclude, *td_);
    return {r.value, r.argmax};
  }
  return max_excess_enumerate(*g_, x, include, exclude, jobs_, force_);
}

Rational ExcessEngine::surplus(const PayoffVector& x, int i, int j) const {
  if (i == j) throw BadCoalition("surplus needs two distinct players");
  return max_excess(x, Coalition::single(i), Coalition::single(j)).value;
}

Rational surplus(const Game& g, int i, int j, const PayoffVector& x, Engine engine, int jobs) {
  return ExcessEngine(g, engine, jobs).surplus(x, i, j);
}

}  // namespace coalkit

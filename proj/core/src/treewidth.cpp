#include "coalkit/treewidth.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>

#include "coalkit/errors.hpp"

namespace coalkit {
namespace rawgraph {

namespace {

// Tree decomposition from an elimination order: eliminating v records the
// bag {v} + alive neighbors (in the fill graph) and attaches it to the bag
// of the first-eliminated such neighbor.
TreeDecomposition from_elimination_order(const Graph& g, const std::vector<int>& order) {
  int n = g.n;
  std::vector<std::set<int>> adj(n);
  for (const auto& e : g.ends) {
    if (e[0] == e[1]) continue;
    adj[e[0]].insert(e[1]);
    adj[e[1]].insert(e[0]);
  }
  std::vector<int> position(n);
  for (int t = 0; t < n; ++t) position[order[t]] = t;

  TreeDecomposition td;
  td.parent.assign(n, -1);
  td.bags.resize(n);
  std::vector<int> attach_to(n, -1);  // node index to hang each bag on
  for (int t = 0; t < n; ++t) {
    int v = order[t];
    std::vector<int> nbrs(adj[v].begin(), adj[v].end());
    td.bags[t] = nbrs;
    td.bags[t].push_back(v);
    std::sort(td.bags[t].begin(), td.bags[t].end());
    td.width = std::max(td.width, static_cast<int>(td.bags[t].size()) - 1);
    if (!nbrs.empty()) {
      int first = nbrs[0];
      for (int u : nbrs)
        if (position[u] < position[first]) first = u;
      attach_to[t] = position[first];
    }
    for (int a : nbrs) {
      adj[a].erase(v);
      for (int b : nbrs)
        if (a != b) adj[a].insert(b);
    }
  }
  int root = -1;
  for (int t = 0; t < n; ++t) {
    if (attach_to[t] >= 0) {
      td.parent[t] = attach_to[t];
    } else if (root < 0) {
      root = t;
    } else {
      td.parent[t] = root;  // disconnected component; hang on the root
    }
  }
  return td;
}

std::vector<int> greedy_order(const Graph& g, bool min_fill) {
  int n = g.n;
  std::vector<std::set<int>> adj(n);
  for (const auto& e : g.ends) {
    if (e[0] == e[1]) continue;
    adj[e[0]].insert(e[1]);
    adj[e[1]].insert(e[0]);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_score = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long score;
      if (min_fill) {
        score = 0;
        for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
          auto b = a;
          for (++b; b != adj[v].end(); ++b)
            if (!adj[*a].count(*b)) ++score;
        }
      } else {
        score = static_cast<long>(adj[v].size());
      }
      if (best < 0 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    order.push_back(best);
    gone[best] = true;
    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (int a : nbrs) {
      adj[a].erase(best);
      for (int b : nbrs)
        if (a != b) adj[a].insert(b);
    }
    adj[best].clear();
  }
  return order;
}

// Subset DP for exact treewidth (n <= 12): dp[S] = least width achievable
// when S is eliminated first; the last-eliminated vertex of S has degree
// q(S \ {v}, v), the number of vertices outside S reachable from v through S.
std::vector<int> exact_order(const Graph& g) {
  int n = g.n;
  if (n > 12) throw TooLargeForExact("exact treewidth is limited to 12 vertices");
  std::vector<std::uint32_t> nb(n, 0);
  for (const auto& e : g.ends) {
    if (e[0] == e[1]) continue;
    nb[e[0]] |= 1u << e[1];
    nb[e[1]] |= 1u << e[0];
  }
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t seen = nb[v], frontier = nb[v] & s;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t fresh = nb[u] & ~seen;
      seen |= fresh;
      frontier |= fresh & s;
    }
    return std::popcount(seen & ~s & ~(1u << v));
  };
  std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> dp(full + 1, 0), choice(full + 1, -1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int best = n + 1, bestv = -1;
    for (std::uint32_t m = mask; m;) {
      int v = std::countr_zero(m);
      m &= m - 1;
      std::uint32_t rest = mask & ~(1u << v);
      int w = std::max(dp[rest], q(rest, v));
      if (w < best) {
        best = w;
        bestv = v;
      }
    }
    dp[mask] = best;
    choice[mask] = bestv;
  }
  std::vector<int> order(n);
  std::uint32_t mask = full;
  for (int t = n - 1; t >= 0; --t) {
    order[t] = choice[mask];
    mask &= ~(1u << order[t]);
  }
  return order;
}

}  // namespace

TreeDecomposition decompose(const Graph& g, TdMethod method) {
  if (g.n <= 0) throw std::invalid_argument("decompose: empty graph");
  std::vector<int> order;
  switch (method) {
    case TdMethod::MinDegree: order = greedy_order(g, false); break;
    case TdMethod::MinFill: order = greedy_order(g, true); break;
    case TdMethod::ExactSmall: order = exact_order(g); break;
  }
  TreeDecomposition td = from_elimination_order(g, order);
  if (!valid(g, td)) throw std::logic_error("decompose produced an invalid decomposition");
  return td;
}

bool valid(const Graph& g, const TreeDecomposition& td) {
  int m = static_cast<int>(td.bags.size());
  if (static_cast<int>(td.parent.size()) != m || m == 0) return false;
  // parent array must form a single rooted tree
  int roots = 0;
  for (int t = 0; t < m; ++t) {
    if (td.parent[t] == -1) ++roots;
    else if (td.parent[t] < 0 || td.parent[t] >= m || td.parent[t] == t) return false;
  }
  if (roots != 1) return false;
  {
    std::vector<char> mark(m, 0);  // 0 fresh, 1 on current path, 2 done
    std::vector<int> path;
    for (int t = 0; t < m; ++t) {
      if (mark[t]) continue;
      path.clear();
      int u = t;
      while (u != -1 && mark[u] == 0) {
        mark[u] = 1;
        path.push_back(u);
        u = td.parent[u];
      }
      if (u != -1 && mark[u] == 1) return false;  // cycle
      for (int p : path) mark[p] = 2;
    }
  }
  // bags must be sorted member lists (part of the documented invariant)
  for (const auto& b : td.bags) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b[k] < 0 || b[k] >= g.n) return false;
      if (k > 0 && b[k] <= b[k - 1]) return false;
    }
  }
  auto in_bag = [&](int t, int v) {
    return std::binary_search(td.bags[t].begin(), td.bags[t].end(), v);
  };
  // (1) every vertex covered, (3) per-vertex bag set connected
  std::vector<int> bag_count(g.n, 0), link_count(g.n, 0);
  std::vector<int> some_bag(g.n, -1);
  for (int t = 0; t < m; ++t)
    for (int v : td.bags[t]) {
      ++bag_count[v];
      some_bag[v] = t;
    }
  for (int t = 0; t < m; ++t)
    if (td.parent[t] != -1)
      for (int v : td.bags[t])
        if (in_bag(td.parent[t], v)) ++link_count[v];
  for (int v = 0; v < g.n; ++v) {
    if (bag_count[v] == 0) return false;
    if (link_count[v] != bag_count[v] - 1) return false;
  }
  // (2) every edge inside some bag: since each endpoint's bag set is a
  // connected subtree, it suffices to search the bags containing the
  // endpoint with the fewer bags
  std::vector<std::vector<int>> bags_of(g.n);
  for (int t = 0; t < m; ++t)
    for (int v : td.bags[t]) bags_of[v].push_back(t);
  for (const auto& e : g.ends) {
    int a = e[0], b = e[1];
    if (bags_of[a].size() > bags_of[b].size()) std::swap(a, b);
    bool covered = false;
    for (int t : bags_of[a])
      if (in_bag(t, b)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  // declared width matches the bags
  int w = 0;
  for (const auto& b : td.bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w == td.width;
}

namespace {

struct NiceNode {
  enum Kind { kLeaf, kIntroduce, kForget, kJoin } kind;
  int v = -1;
  int child0 = -1, child1 = -1;
  std::vector<int> bag;  // sorted
};

int insert_bit(int mask, int p) { return ((mask >> p) << (p + 1)) | (mask & ((1 << p) - 1)); }
int drop_bit(int mask, int p) { return ((mask >> (p + 1)) << p) | (mask & ((1 << p) - 1)); }

int bag_pos(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// Nice form: leaves have empty bags, the top node has an empty bag, and
// every step is a single introduce, forget, or an equal-bag join.
struct NiceTree {
  std::vector<NiceNode> nodes;  // children precede parents
  int top = -1;

  int add(NiceNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  int chain_from_empty(const std::vector<int>& target) {
    int cur = add({NiceNode::kLeaf, -1, -1, -1, {}});
    std::vector<int> bag;
    for (int v : target) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add({NiceNode::kIntroduce, v, cur, -1, bag});
    }
    return cur;
  }

  // Forgets members of `from` missing in `to`, then introduces the rest.
  int morph(int cur, std::vector<int> from, const std::vector<int>& to) {
    for (int v : std::vector<int>(from)) {
      if (!std::binary_search(to.begin(), to.end(), v)) {
        from.erase(std::find(from.begin(), from.end(), v));
        cur = add({NiceNode::kForget, v, cur, -1, from});
      }
    }
    for (int v : to) {
      if (!std::binary_search(from.begin(), from.end(), v)) {
        from.insert(std::lower_bound(from.begin(), from.end(), v), v);
        cur = add({NiceNode::kIntroduce, v, cur, -1, from});
      }
    }
    return cur;
  }
};

NiceTree build_nice(const TreeDecomposition& td) {
  int m = static_cast<int>(td.bags.size());
  int root = 0;
  std::vector<std::vector<int>> children(m);
  for (int t = 0; t < m; ++t) {
    if (td.parent[t] == -1) root = t;
    else children[td.parent[t]].push_back(t);
  }

  NiceTree nice;
  // iterative post-order (recursion would overflow on path-shaped trees)
  std::vector<int> done(m, -1);  // nice index whose bag equals td.bags[t]
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [t, next_child] = stack.back();
    if (next_child < static_cast<int>(children[t].size())) {
      ++next_child;
      stack.push_back({children[t][next_child - 1], 0});
      continue;
    }
    int cur;
    if (children[t].empty()) {
      cur = nice.chain_from_empty(td.bags[t]);
    } else {
      cur = nice.morph(done[children[t][0]], td.bags[children[t][0]], td.bags[t]);
      for (std::size_t k = 1; k < children[t].size(); ++k) {
        int other = nice.morph(done[children[t][k]], td.bags[children[t][k]], td.bags[t]);
        cur = nice.add({NiceNode::kJoin, -1, cur, other, td.bags[t]});
      }
    }
    done[t] = cur;
    stack.pop_back();
  }
  nice.top = nice.morph(done[root], td.bags[root], {});
  return nice;
}

}  // namespace

DpResult max_induced_value(const Graph& g, const std::vector<Rational>& node_gain,
                           const std::vector<char>& state, const TreeDecomposition& td) {
  if (static_cast<int>(node_gain.size()) != g.n || static_cast<int>(state.size()) != g.n)
    throw std::invalid_argument("max_induced_value: size mismatch");
  std::vector<std::vector<std::pair<int, Rational>>> adj(g.n);
  for (std::size_t e = 0; e < g.ends.size(); ++e) {
    adj[g.ends[e][0]].emplace_back(g.ends[e][1], g.weight[e]);
    adj[g.ends[e][1]].emplace_back(g.ends[e][0], g.weight[e]);
  }

  NiceTree nice = build_nice(td);
  int count = static_cast<int>(nice.nodes.size());
  std::vector<std::vector<std::optional<Rational>>> table(count);

  for (int idx = 0; idx < count; ++idx) {
    const NiceNode& node = nice.nodes[idx];
    table[idx].assign(std::size_t{1} << node.bag.size(), std::nullopt);
    switch (node.kind) {
      case NiceNode::kLeaf:
        table[idx][0] = Rational(0);
        break;
      case NiceNode::kIntroduce: {
        const auto& child = table[node.child0];
        const auto& cbag = nice.nodes[node.child0].bag;
        int p = bag_pos(node.bag, node.v);
        // weights from the new vertex into the child bag, by bag position
        std::vector<std::pair<int, Rational>> into;
        for (const auto& [q, w] : adj[node.v])
          if (std::binary_search(cbag.begin(), cbag.end(), q))
            into.emplace_back(bag_pos(cbag, q), w);
        for (std::size_t cm = 0; cm < child.size(); ++cm) {
          if (!child[cm]) continue;
          int base = insert_bit(static_cast<int>(cm), p);
          if (state[node.v] != kForcedIn) table[idx][base] = child[cm];
          if (state[node.v] != kForcedOut) {
            Rational val = *child[cm] + node_gain[node.v];
            for (const auto& [q, w] : into)
              if (cm >> q & 1) val += w;
            table[idx][base | (1 << p)] = val;
          }
        }
        break;
      }
      case NiceNode::kForget: {
        const auto& child = table[node.child0];
        int p = bag_pos(nice.nodes[node.child0].bag, node.v);
        for (std::size_t cm = 0; cm < child.size(); ++cm) {
          if (!child[cm]) continue;
          int pm = drop_bit(static_cast<int>(cm), p);
          auto& slot = table[idx][pm];
          if (!slot || *child[cm] > *slot) slot = child[cm];
        }
        break;
      }
      case NiceNode::kJoin: {
        const auto& left = table[node.child0];
        const auto& right = table[node.child1];
        // bag-internal contribution counted by both children
        std::vector<std::tuple<int, int, Rational>> inner;
        for (std::size_t a = 0; a < node.bag.size(); ++a)
          for (const auto& [q, w] : adj[node.bag[a]])
            if (q > node.bag[a] && std::binary_search(node.bag.begin(), node.bag.end(), q))
              inner.emplace_back(static_cast<int>(a), bag_pos(node.bag, q), w);
        for (std::size_t m = 0; m < left.size(); ++m) {
          if (!left[m] || !right[m]) continue;
          Rational dup;
          for (std::size_t a = 0; a < node.bag.size(); ++a)
            if (m >> a & 1) dup += node_gain[node.bag[a]];
          for (const auto& [a, b, w] : inner)
            if ((m >> a & 1) && (m >> b & 1)) dup += w;
          table[idx][m] = *left[m] + *right[m] - dup;
        }
        break;
      }
    }
  }

  const auto& top = table[nice.top][0];
  if (!top) throw std::logic_error("max_induced_value: no admissible selection");

  DpResult out;
  out.value = *top;
  out.chosen.assign(g.n, 0);
  // walk back down; every vertex is forgotten exactly once, which is where
  // its membership is decided
  std::vector<std::pair<int, int>> walk{{nice.top, 0}};
  while (!walk.empty()) {
    auto [idx, mask] = walk.back();
    walk.pop_back();
    const NiceNode& node = nice.nodes[idx];
    switch (node.kind) {
      case NiceNode::kLeaf:
        break;
      case NiceNode::kIntroduce: {
        int p = bag_pos(node.bag, node.v);
        walk.push_back({node.child0, drop_bit(mask, p)});
        break;
      }
      case NiceNode::kForget: {
        int p = bag_pos(nice.nodes[node.child0].bag, node.v);
        int m_out = insert_bit(mask, p), m_in = m_out | (1 << p);
        const auto& child = table[node.child0];
        bool take = child[m_in] && (!child[m_out] || *child[m_in] > *child[m_out]);
        if (take) out.chosen[node.v] = 1;
        walk.push_back({node.child0, take ? m_in : m_out});
        break;
      }
      case NiceNode::kJoin:
        walk.push_back({node.child0, mask});
        walk.push_back({node.child1, mask});
        break;
    }
  }
  return out;
}

}  // namespace rawgraph

namespace {

rawgraph::Graph to_raw(const GraphGame& g) {
  rawgraph::Graph raw;
  raw.n = g.players().count();
  for (const auto& e : g.edges()) {
    raw.ends.push_back({e.u, e.v});
    raw.weight.push_back(e.weight);
  }
  return raw;
}

}  // namespace

TreeDecomposition decompose(const GraphGame& g, TdMethod method) {
  return rawgraph::decompose(to_raw(g), method);
}

bool valid_decomposition(const GraphGame& g, const TreeDecomposition& td) {
  return rawgraph::valid(to_raw(g), td);
}

ConstrainedMax max_excess_treewidth(const GraphGame& g, const PayoffVector& x,
                                    Coalition include, Coalition exclude,
                                    const TreeDecomposition& td) {
  if (include.intersects(exclude))
    throw BadCoalition("include and exclude overlap");
  int n = g.players().count();
  std::vector<Rational> gain(n);
  std::vector<char> state(n, rawgraph::kFree);
  for (int v = 0; v < n; ++v) {
    gain[v] = -x[v];
    if (include.contains(v)) state[v] = rawgraph::kForcedIn;
    else if (exclude.contains(v)) state[v] = rawgraph::kForcedOut;
  }
  auto res = rawgraph::max_induced_value(to_raw(g), gain, state, td);
  Coalition s;
  for (int v = 0; v < n; ++v)
    if (res.chosen[v]) s = s.with(v);
  return {res.value, s};
}

Rational surplus_weight_trick(const GraphGame& g, const PayoffVector& x, int i, int j,
                              const TreeDecomposition& td) {
  int n = g.players().count();
  Rational big;  // largest |edge weight|
  std::vector<int> degree(n, 0);
  for (const auto& e : g.edges()) {
    ++degree[e.u];
    ++degree[e.v];
    if (e.weight.abs() > big) big = e.weight.abs();
  }
  Rational fn_i = Rational(-1) - Rational(degree[i]) * big;
  Rational fn_j = Rational(1) + Rational(degree[j]) * big;
  std::vector<Rational> gain(n);
  for (int v = 0; v < n; ++v) gain[v] = -x[v];
  gain[i] = -fn_i;
  gain[j] = -fn_j;
  std::vector<char> state(n, rawgraph::kFree);
  auto res = rawgraph::max_induced_value(to_raw(g), gain, state, td);
  if (!res.chosen[i] || res.chosen[j])
    throw std::logic_error("weight trick failed to pin the pair");
  // res.value = -opt', and s_ij = -(opt' + x_i - fn_i)
  return res.value - x[i] + fn_i;
}

}  // namespace coalkit

#ifndef COALKIT_TREEWIDTH_HPP
#define COALKIT_TREEWIDTH_HPP

#include <array>
#include <vector>

#include "coalkit/games.hpp"

namespace coalkit {

/// Rooted tree decomposition: parent[t] = -1 marks the root, bags hold
/// sorted vertex indices. Valid decompositions cover every vertex, cover
/// every edge inside some bag, and keep each vertex's bag set connected.
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<std::vector<int>> bags;
  int width = 0;
};

enum class TdMethod { MinDegree, MinFill, ExactSmall };

namespace rawgraph {

/// Plain int-indexed weighted graph. The decomposition heuristics and the
/// dynamic program live at this layer so they scale past the 64-player cap
/// of the game types.
struct Graph {
  int n = 0;
  std::vector<std::array<int, 2>> ends;
  std::vector<Rational> weight;
};

TreeDecomposition decompose(const Graph& g, TdMethod method);
bool valid(const Graph& g, const TreeDecomposition& td);

/// Vertex selection constraints for the DP.
enum : char { kFree = 0, kForcedIn = 1, kForcedOut = 2 };

struct DpResult {
  Rational value;
  std::vector<char> chosen;  // chosen[v] = 1 iff v is in the maximizing set
};

/// Maximizes sum of weights of edges inside S plus sum of node_gain over S,
/// over all S honoring the per-vertex constraints, by bag-subset dynamic
/// programming over a nice form of td. Each edge is credited exactly once.
DpResult max_induced_value(const Graph& g, const std::vector<Rational>& node_gain,
                           const std::vector<char>& state, const TreeDecomposition& td);

}  // namespace rawgraph

/// Tree decomposition of a graph game's graph. Post-validated; ExactSmall
/// (n <= 12, else TooLargeForExact) returns a minimum-width decomposition.
TreeDecomposition decompose(const GraphGame& g, TdMethod method);

bool valid_decomposition(const GraphGame& g, const TreeDecomposition& td);

struct ConstrainedMax {
  Rational value;
  Coalition argmax;
};

/// Exact max of e(S, x) = v(S) - x(S) over S containing include and
/// avoiding exclude, via the decomposition DP.
ConstrainedMax max_excess_treewidth(const GraphGame& g, const PayoffVector& x,
                                    Coalition include, Coalition exclude,
                                    const TreeDecomposition& td);

/// Surplus s_{i,j}(x) computed with the node re-weighting device instead of
/// hard in/out constraints: nodes i and j get weights that force any
/// unconstrained optimum to take i and drop j. Kept for differential
/// testing against max_excess_treewidth. The re-weighting multiplies by the
/// largest absolute edge weight, so it is only size-friendly when weights
/// are small (unary-ish); the constrained DP has no such caveat.
Rational surplus_weight_trick(const GraphGame& g, const PayoffVector& x, int i, int j,
                              const TreeDecomposition& td);

}  // namespace coalkit

#endif  // COALKIT_TREEWIDTH_HPP

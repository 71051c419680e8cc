#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quala/rational.hpp"

namespace quala {

/// Finite directed multigraph with exact rational edge weights.  Nodes
/// carry names (for diagnostics and deterministic tie-breaking), edges
/// carry a label (the alphabet symbol that induced them, when any) and
/// a tag (index of the originating automaton transition, or -1).
struct GraphEdge {
    int from;
    int to;
    Rational weight;
    std::string label;
    int tag = -1;
};

struct Graph {
    std::vector<std::string> node_names;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<int>> out;  // edge ids by source node

    int add_node(std::string name);
    int add_edge(int from, int to, Rational weight, std::string label = "",
                 int tag = -1);
    size_t node_count() const { return node_names.size(); }
};

/// Nodes reachable from root (always includes root).
std::vector<bool> reachable_from(const Graph& g, int root);

struct SccDecomposition {
    std::vector<int> component;           // node -> component id
    std::vector<std::vector<int>> members;  // component id -> nodes
};

SccDecomposition strongly_connected_components(const Graph& g);

/// True iff the edge connects two nodes of the same component.
bool scc_internal(const SccDecomposition& scc, const GraphEdge& e);

/// Exact maximum cycle mean among cycles inside one strongly connected
/// component, with a witness cycle (edge ids, in order).  Returns
/// nullopt when the component has no internal edge.
std::optional<std::pair<Rational, std::vector<int>>> component_max_mean(
    const Graph& g, const std::vector<int>& members);

struct CycleStats {
    Rational max_mean;
    std::vector<int> max_witness;  // edge ids, cycle order
    Rational min_mean;
    std::vector<int> min_witness;
};

/// Exact max and min cycle means over cycles reachable from root, with
/// witness cycles whose means equal the reported values.  Throws
/// Acyclic when no reachable cycle exists.
CycleStats max_mean_cycle(const Graph& g, int root = 0);

struct DiscountedOptimum {
    std::vector<Rational> value;  // per node: sup of discounted sums
    std::vector<int> policy;      // per node: chosen edge id
};

/// Unique fixed point of val(s) = max over edges (s,s',w) of
/// w + lambda*val(s'), computed exactly by policy iteration.  Every
/// node must have an outgoing edge (throws DeadEnd).
DiscountedOptimum discounted_optimum(const Graph& g, const Rational& lambda);

/// Shortest (fewest edges) path of edge ids from one node to another;
/// nullopt when unreachable.  An empty path means from == to.
std::optional<std::vector<int>> shortest_edge_path(const Graph& g, int from,
                                                   int to);

/// Shortest path restricted to edges satisfying the given predicate.
std::optional<std::vector<int>> shortest_edge_path_filtered(
    const Graph& g, int from, int to, const std::vector<bool>& edge_ok);

/// Any cycle using only edges with edge_ok[e], restricted to nodes with
/// node_ok[n]; edge ids in cycle order, or nullopt.
std::optional<std::vector<int>> find_cycle(const Graph& g,
                                           const std::vector<bool>& node_ok,
                                           const std::vector<bool>& edge_ok);

}  // namespace quala

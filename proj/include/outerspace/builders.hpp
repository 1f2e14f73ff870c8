#pragma once

// Standard marked graphs used by the tools and tests.

#include <string>
#include <vector>

#include "outerspace/marked_graph.hpp"

namespace outerspace {

// Rose with one petal per generator, petal i spelling x_i.
inline MarkedGraph rose(const std::vector<double>& lengths) {
  const int n = static_cast<int>(lengths.size());
  std::vector<Edge> edges;
  std::vector<EdgePath> marking;
  for (int i = 0; i < n; ++i) {
    edges.push_back({"e" + std::to_string(i + 1), 0, 0, lengths[i], ""});
    marking.push_back({Step{i, true}});
  }
  return MarkedGraph::build(n, {"v0"}, std::move(edges), 0, std::move(marking));
}

inline MarkedGraph unit_rose(int rank) { return rose(std::vector<double>(rank, 1.0 / rank)); }

// Two vertices joined by rank + 1 parallel edges; e1 is the spanning tree
// and x_i runs out along e_{i+1} and back along e1.
inline MarkedGraph parallel_edges_graph(const std::vector<double>& lengths) {
  const int n = static_cast<int>(lengths.size()) - 1;
  std::vector<Edge> edges;
  for (int i = 0; i <= n; ++i) edges.push_back({"e" + std::to_string(i + 1), 0, 1, lengths[i], ""});
  std::vector<EdgePath> marking;
  for (int i = 1; i <= n; ++i) marking.push_back({Step{i, true}, Step{0, false}});
  return MarkedGraph::build(n, {"v0", "v1"}, std::move(edges), 0, std::move(marking));
}

// Rank-2 barbell: loop a at v0, loop b at v1, separating edge t from v0 to v1.
inline MarkedGraph barbell_graph(double a, double b, double t) {
  std::vector<Edge> edges = {{"ea", 0, 0, a, ""}, {"eb", 1, 1, b, ""}, {"et", 0, 1, t, ""}};
  std::vector<EdgePath> marking = {{Step{0, true}},
                                   {Step{2, true}, Step{1, true}, Step{2, false}}};
  return MarkedGraph::build(2, {"v0", "v1"}, std::move(edges), 0, std::move(marking));
}

// Theta graph of rank 2: three parallel edges.
inline MarkedGraph theta_graph(double a, double b, double c) { return parallel_edges_graph({a, b, c}); }

}  // namespace outerspace

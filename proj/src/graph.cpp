#include "nashseek/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "nashseek/errors.hpp"

namespace nashseek {

UndirectedGraph::UndirectedGraph(int n,
                                 const std::vector<std::pair<int, int>>& edges)
    : n_(n), neighbors_(std::max(n, 0)) {
  if (n < 1) throw ValidationError("graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i == j)
      throw ValidationError("self-loop at node " + std::to_string(i + 1));
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw IndexOutOfRange("edge endpoint outside [1, " + std::to_string(n) +
                            "]");
    if (i > j) std::swap(i, j);
    if (seen.insert({i, j}).second) {
      edges_.emplace_back(i, j);
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

bool UndirectedGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw IndexOutOfRange("node index outside the graph");
  const auto& nb = neighbors_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

const std::vector<int>& UndirectedGraph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw IndexOutOfRange("node index outside the graph");
  return neighbors_[i];
}

Eigen::MatrixXd UndirectedGraph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (auto [i, j] : edges_) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd laplacian(const UndirectedGraph& g) {
  const Eigen::MatrixXd a = g.adjacency();
  return Eigen::MatrixXd(a.rowwise().sum().asDiagonal()) - a;
}

bool is_connected(const UndirectedGraph& g) {
  std::vector<bool> seen(g.size(), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.size();
}

Eigen::MatrixXd augmented_consensus_matrix(const UndirectedGraph& g) {
  const int n = g.size();
  const Eigen::MatrixXd lap = laplacian(g);
  const Eigen::MatrixXd adj = g.adjacency();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n, n * n);
  // Cell (i, j) couples with cells (k, j) through L and carries the leader
  // weight a_ij on its own diagonal.
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m(i * n + j, k * n + j) = lap(i, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i * n + j, i * n + j) += adj(i, j);
  return m;
}

AugmentedSpectrum augmented_spectrum(const UndirectedGraph& g) {
  if (!is_connected(g))
    throw DisconnectedGraph(
        "communication graph is disconnected; distributed gain bounds do not "
        "apply");
  const Eigen::MatrixXd m = augmented_consensus_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  AugmentedSpectrum s;
  s.lambda_min = eig.eigenvalues().minCoeff();
  s.m_dim = static_cast<int>(m.rows());
  return s;
}

}  // namespace nashseek

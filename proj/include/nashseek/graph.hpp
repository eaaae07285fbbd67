#ifndef NASHSEEK_GRAPH_HPP
#define NASHSEEK_GRAPH_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace nashseek {

/// Undirected communication topology over the players. Node indices are
/// 0-based; self-loops are rejected. Immutable after construction.
class UndirectedGraph {
 public:
  UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  bool has_edge(int i, int j) const;
  const std::vector<int>& neighbors(int i) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  Eigen::MatrixXd adjacency() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;       // normalized i < j
  std::vector<std::vector<int>> neighbors_;      // sorted
};

/// L = D - A with d_ii the degree of node i; rows sum to zero.
Eigen::MatrixXd laplacian(const UndirectedGraph& g);

/// Breadth-first reachability from node 0; a single node is connected.
bool is_connected(const UndirectedGraph& g);

/// The N^2 x N^2 matrix L (x) I_N + A_0 whose smallest eigenvalue governs the
/// leader-following consensus rate. A_0 is diagonal with the adjacency
/// entries a_11, a_12, ..., a_NN in row-major order.
Eigen::MatrixXd augmented_consensus_matrix(const UndirectedGraph& g);

struct AugmentedSpectrum {
  double lambda_min = 0.0;
  int m_dim = 0;  // N^2
};

/// Smallest eigenvalue of the augmented consensus matrix. Throws
/// DisconnectedGraph when the graph is not connected (the distributed gain
/// bounds do not apply there). Note the single-node graph is connected but
/// degenerate: its matrix is [0], so lambda_min = 0.
AugmentedSpectrum augmented_spectrum(const UndirectedGraph& g);

}  // namespace nashseek

#endif  // NASHSEEK_GRAPH_HPP

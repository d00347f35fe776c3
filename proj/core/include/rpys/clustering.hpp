#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rpys/multirpys.hpp"

namespace rpys {

/// Symmetric n x n matrix of non-negative distances with a zero diagonal.
class DistanceMatrix {
public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }

private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Euclidean distances between matrix rows. Throws Error{TooFewRows} below 2 rows.
DistanceMatrix row_distances(const RpysMatrix& matrix);

/// A merge of two nodes. Nodes 0..n-1 are leaves, node n+k is merges[k].
/// `left` is the child whose smallest leaf index is smaller.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;  // Ward ESS increase
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;

  std::size_t leaf_count() const noexcept { return leaves.size(); }
  bool is_leaf(std::size_t node) const noexcept { return node < leaves.size(); }
  std::size_t root() const noexcept { return leaves.size() + merges.size() - 1; }
  double node_height(std::size_t node) const {
    return is_leaf(node) ? 0.0 : merges[node - leaves.size()].height;
  }
  std::size_t first_leaf(std::size_t node) const;

  // Throws InvariantViolation on a malformed tree.
  void check() const;
};

/// Ward minimum-variance agglomerative clustering via the Lance-Williams
/// update on ESS increases. Each step merges the pair with the smallest
/// Δ(A,B) = |A||B|/(|A|+|B|) · ‖c_A − c_B‖²; ties go to the pair with the
/// smallest (first-leaf, first-leaf) indices. Heights are the Δ values.
/// Throws Error{TooFewRows} for fewer than two items.
Dendrogram ward_cluster(const DistanceMatrix& distances, std::vector<std::string> labels);
Dendrogram ward_cluster(const RpysMatrix& matrix);

/// Cluster labels (1-based) per leaf after undoing the k-1 last merges.
/// Labels are numbered in order of each cluster's first leaf.
/// Throws Error{BadK} unless 1 <= k <= n.
std::vector<int> cut(const Dendrogram& dendrogram, std::size_t k);

/// In-order traversal with the smaller-first-leaf child visited first.
std::vector<std::size_t> leaf_order(const Dendrogram& dendrogram);

/// Rows of `matrix` permuted into `order`.
RpysMatrix reorder_rows(const RpysMatrix& matrix, std::span<const std::size_t> order);

}  // namespace rpys

#include "rpys/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rpys {

namespace {

// Relative tolerance under which two merge costs count as tied.
constexpr double kTieTolerance = 1e-12;

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= kTieTolerance * std::max(std::fabs(a), std::fabs(b));
}

std::vector<double> squared_row_distances(const RpysMatrix& matrix) {
  const std::size_t n = matrix.rows();
  std::vector<double> sq(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = matrix.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = matrix.row(j);
      double sum = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = static_cast<double>(a[c] - b[c]);
        sum += d * d;
      }
      sq[i * n + j] = sq[j * n + i] = sum;
    }
  }
  return sq;
}

// Lance-Williams Ward on ESS increases. Clusters live in the slot of their
// smallest leaf, so scanning slots in order gives the tie rule for free.
Dendrogram ward_from_squared(const std::vector<double>& sq, std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  if (n < 2) throw Error(Errc::TooFewRows, "Ward clustering needs at least two rows");

  std::vector<double> cost(n * n);
  for (std::size_t k = 0; k < n * n; ++k) cost[k] = 0.5 * sq[k];
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<std::size_t> node(active), size(n, 1);

  Dendrogram tree;
  tree.leaves = std::move(labels);
  tree.merges.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = cost[active[0] * n + active[1]];
    std::size_t bi = 0, bj = 1;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double c = cost[active[a] * n + active[b]];
        if (c < best && !nearly_equal(c, best)) {
          best = c;
          bi = a;
          bj = b;
        }
      }
    }
    const std::size_t i = active[bi], j = active[bj];
    const double ni = static_cast<double>(size[i]), nj = static_cast<double>(size[j]);
    for (std::size_t k : active) {
      if (k == i || k == j) continue;
      const double nk = static_cast<double>(size[k]);
      const double updated =
          ((ni + nk) * cost[k * n + i] + (nj + nk) * cost[k * n + j] - nk * best) / (ni + nj + nk);
      cost[k * n + i] = cost[i * n + k] = std::max(0.0, updated);
    }
    tree.merges.push_back(Merge{node[i], node[j], std::max(0.0, best), size[i] + size[j]});
    node[i] = n + step;
    size[i] += size[j];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return tree;
}

}  // namespace

DistanceMatrix row_distances(const RpysMatrix& matrix) {
  const std::size_t n = matrix.rows();
  if (n < 2) throw Error(Errc::TooFewRows, "distance matrix needs at least two rows");
  const auto sq = squared_row_distances(matrix);
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, std::sqrt(sq[i * n + j]));
  }
  return d;
}

Dendrogram ward_cluster(const DistanceMatrix& distances, std::vector<std::string> labels) {
  const std::size_t n = distances.size();
  if (labels.size() != n) throw Error(Errc::InvalidArgument, "label count does not match matrix");
  std::vector<double> sq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sq[i * n + j] = distances(i, j) * distances(i, j);
  }
  return ward_from_squared(sq, std::move(labels));
}

Dendrogram ward_cluster(const RpysMatrix& matrix) {
  if (matrix.rows() < 2) throw Error(Errc::TooFewRows, "Ward clustering needs at least two rows");
  return ward_from_squared(squared_row_distances(matrix), matrix.labels);
}

std::size_t Dendrogram::first_leaf(std::size_t node) const {
  while (!is_leaf(node)) node = merges.at(node - leaves.size()).left;
  return node;
}

void Dendrogram::check() const {
  const std::size_t n = leaves.size();
  if (n == 0) throw InvariantViolation("dendrogram without leaves");
  if (merges.size() != n - 1) throw InvariantViolation("dendrogram needs n-1 merges");
  std::vector<char> used(n + merges.size(), 0);
  std::vector<std::size_t> sizes(n + merges.size(), 1);
  for (std::size_t k = 0; k < merges.size(); ++k) {
    const auto& m = merges[k];
    for (auto child : {m.left, m.right}) {
      if (child >= n + k || used[child]) throw InvariantViolation("bad merge child reference");
      used[child] = 1;
    }
    if (first_leaf(m.left) >= first_leaf(m.right)) {
      throw InvariantViolation("merge children not ordered by first leaf");
    }
    if (!(m.height >= 0.0) || !std::isfinite(m.height)) {
      throw InvariantViolation("merge height must be finite and non-negative");
    }
    sizes[n + k] = sizes[m.left] + sizes[m.right];
    if (m.size != sizes[n + k]) throw InvariantViolation("merge size mismatch");
  }
  if (n > 1 && merges.back().size != n) throw InvariantViolation("root does not span all leaves");
}

std::vector<int> cut(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaf_count();
  if (k < 1 || k > n) {
    throw Error(Errc::BadK, "k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t m = 0; m < n - k; ++m) {
    const auto& merge = dendrogram.merges[m];
    const auto a = find(dendrogram.first_leaf(merge.left));
    const auto b = find(dendrogram.first_leaf(merge.right));
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> labels(n, 0), label_of_root(n, 0);
  int next = 0;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    auto& label = label_of_root[find(leaf)];
    if (label == 0) label = ++next;
    labels[leaf] = label;
  }
  return labels;
}

std::vector<std::size_t> leaf_order(const Dendrogram& dendrogram) {
  std::vector<std::size_t> order;
  order.reserve(dendrogram.leaf_count());
  if (dendrogram.leaf_count() == 1) return {0};
  std::vector<std::size_t> stack{dendrogram.root()};
  while (!stack.empty()) {
    const auto node = stack.back();
    stack.pop_back();
    if (dendrogram.is_leaf(node)) {
      order.push_back(node);
      continue;
    }
    const auto& m = dendrogram.merges[node - dendrogram.leaf_count()];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

RpysMatrix reorder_rows(const RpysMatrix& matrix, std::span<const std::size_t> order) {
  if (order.size() != matrix.rows()) throw Error(Errc::BadRowOrder, "row order has wrong length");
  std::vector<char> seen(matrix.rows(), 0);
  for (auto r : order) {
    if (r >= matrix.rows() || seen[r]) throw Error(Errc::BadRowOrder, "row order is not a permutation");
    seen[r] = 1;
  }
  RpysMatrix out;
  out.range = matrix.range;
  out.dropped = matrix.dropped;
  if (matrix.intervals) out.intervals.emplace();
  for (auto r : order) {
    out.labels.push_back(matrix.labels[r]);
    if (matrix.intervals) out.intervals->push_back((*matrix.intervals)[r]);
    const auto row = matrix.row(r);
    out.ranks.insert(out.ranks.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace rpys

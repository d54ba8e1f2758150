#pragma once

#include "copent/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace copent {

// BruteForce is the O(T^2 d) reference. KdTree returns bit-identical results:
// both paths evaluate every candidate pair with the same distance kernel, and
// the tree only prunes boxes whose lower bound exceeds the current k-th distance.
enum class KnnMethod { Auto, BruteForce, KdTree };

namespace detail {

template <typename Scalar>
using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Squared distance for Euclidean, plain distance for max norm. Monotone in the
// true distance, so neighbor order is decided on reduced values.
template <typename Scalar>
inline Scalar reduced_distance(const Scalar* a, const Scalar* b, Index d, Norm norm) {
  Scalar acc{0};
  if (norm == Norm::Euclidean) {
    for (Index j = 0; j < d; ++j) {
      const Scalar diff = a[j] - b[j];
      acc += diff * diff;
    }
  } else {
    for (Index j = 0; j < d; ++j) acc = std::max(acc, std::abs(a[j] - b[j]));
  }
  return acc;
}

template <typename Scalar>
inline Scalar reduced_to_distance(Scalar reduced, Norm norm) {
  return norm == Norm::Euclidean ? std::sqrt(reduced) : reduced;
}

template <typename Scalar>
inline Scalar reduced_axis_gap(Scalar gap, Norm norm) {
  return norm == Norm::Euclidean ? gap * gap : std::abs(gap);
}

template <typename Scalar>
Vector<Scalar> knn_brute_force(const RowMajor<Scalar>& pts, int k, Norm norm) {
  const Index n = pts.rows();
  const Index d = pts.cols();
  Vector<Scalar> out(n);
  std::vector<Scalar> buf(static_cast<std::size_t>(n - 1));
  for (Index i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      buf[m++] = reduced_distance(pts.row(i).data(), pts.row(j).data(), d, norm);
    }
    auto kth = buf.begin() + (k - 1);
    std::nth_element(buf.begin(), kth, buf.end());
    out(i) = reduced_to_distance(*kth, norm);
  }
  return out;
}

template <typename Scalar>
class KdTree {
 public:
  KdTree(const RowMajor<Scalar>& pts, Norm norm) : pts_(pts), norm_(norm) {
    index_.resize(static_cast<std::size_t>(pts.rows()));
    std::iota(index_.begin(), index_.end(), Index{0});
    nodes_.reserve(2 * index_.size() / kLeafSize + 1);
    build(0, static_cast<Index>(index_.size()));
  }

  // Reduced distance to the k-th nearest row other than `self`.
  Scalar kth_reduced(Index self, int k) const {
    Heap heap;
    search(0, self, k, heap);
    return heap.top().first;
  }

 private:
  static constexpr Index kLeafSize = 8;

  struct Node {
    Index begin, end;
    Index split_dim = -1;  // -1 marks a leaf
    Scalar split_value{};
    std::size_t left = 0, right = 0;
  };

  // Max-heap ordered by (distance, row index).
  using Entry = std::pair<Scalar, Index>;
  using Heap = std::priority_queue<Entry>;

  std::size_t build(Index begin, Index end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize) return id;

    Index dim = 0;
    Scalar widest{-1};
    for (Index j = 0; j < pts_.cols(); ++j) {
      Scalar lo = pts_(index_[begin], j), hi = lo;
      for (Index s = begin + 1; s < end; ++s) {
        lo = std::min(lo, pts_(index_[s], j));
        hi = std::max(hi, pts_(index_[s], j));
      }
      if (hi - lo > widest) {
        widest = hi - lo;
        dim = j;
      }
    }
    if (!(widest > Scalar(0))) return id;  // all points coincide, keep as leaf

    const Index mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](Index a, Index b) {
                       const Scalar va = pts_(a, dim), vb = pts_(b, dim);
                       return va < vb || (va == vb && a < b);
                     });
    const Scalar split = pts_(index_[mid], dim);
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    Node& node = nodes_[id];
    node.split_dim = dim;
    node.split_value = split;
    node.left = left;
    node.right = right;
    return id;
  }

  void search(std::size_t id, Index self, int k, Heap& heap) const {
    const Node& node = nodes_[id];
    const Scalar* q = pts_.row(self).data();
    if (node.split_dim < 0) {
      for (Index s = node.begin; s < node.end; ++s) {
        const Index j = index_[s];
        if (j == self) continue;
        const Entry e{reduced_distance(q, pts_.row(j).data(), pts_.cols(), norm_), j};
        if (static_cast<int>(heap.size()) < k) {
          heap.push(e);
        } else if (e < heap.top()) {
          heap.pop();
          heap.push(e);
        }
      }
      return;
    }
    const Scalar gap = q[node.split_dim] - node.split_value;
    const std::size_t near = gap <= Scalar(0) ? node.left : node.right;
    const std::size_t far = gap <= Scalar(0) ? node.right : node.left;
    search(near, self, k, heap);
    if (static_cast<int>(heap.size()) < k || reduced_axis_gap(gap, norm_) <= heap.top().first) {
      search(far, self, k, heap);
    }
  }

  const RowMajor<Scalar>& pts_;
  Norm norm_;
  std::vector<Index> index_;
  std::vector<Node> nodes_;
};

}  // namespace detail

// Distance from each row to its k-th nearest other row (self excluded).
template <typename Derived>
Vector<typename Derived::Scalar> kth_neighbor_distances(const Eigen::MatrixBase<Derived>& points,
                                                        int k, Norm norm,
                                                        KnnMethod method = KnnMethod::Auto) {
  using Scalar = typename Derived::Scalar;
  const Index n = points.rows();
  if (points.cols() < 1) throw std::invalid_argument("kth_neighbor_distances: no columns");
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("kth_neighbor_distances: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(n - 1) + "]");
  }
  const detail::RowMajor<Scalar> pts = points;
  if (method == KnnMethod::Auto) {
    method = (n >= 256 && points.cols() <= 10) ? KnnMethod::KdTree : KnnMethod::BruteForce;
  }
  if (method == KnnMethod::BruteForce) return detail::knn_brute_force(pts, k, norm);

  const detail::KdTree<Scalar> tree(pts, norm);
  Vector<Scalar> out(n);
  for (Index i = 0; i < n; ++i) {
    out(i) = detail::reduced_to_distance(tree.kth_reduced(i, k), norm);
  }
  return out;
}

}  // namespace copent

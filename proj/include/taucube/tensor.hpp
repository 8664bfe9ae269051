#pragma once

// Dense coefficient tensors for direct-product polynomial bases.
// Layout: axis 0 is fastest (column-major style), so for a 2D tensor the
// flat vector coincides with Eigen's column-major vec() of the (N0 x N1)
// coefficient matrix.

#include <Eigen/Dense>

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace taucube {

struct CoeffTensor {
  std::vector<Eigen::Index> extents;
  Eigen::VectorXd values;

  CoeffTensor() = default;

  explicit CoeffTensor(std::vector<Eigen::Index> ext)
      : extents(std::move(ext)), values(Eigen::VectorXd::Zero(total_size(extents))) {}

  CoeffTensor(std::vector<Eigen::Index> ext, Eigen::VectorXd vals)
      : extents(std::move(ext)), values(std::move(vals)) {
    if (values.size() != total_size(extents))
      throw std::invalid_argument("CoeffTensor: value count does not match extents");
  }

  static Eigen::Index total_size(const std::vector<Eigen::Index>& ext) {
    Eigen::Index n = 1;
    for (Eigen::Index e : ext) {
      if (e <= 0) throw std::invalid_argument("CoeffTensor: extents must be positive");
      n *= e;
    }
    return n;
  }

  int dim() const { return static_cast<int>(extents.size()); }
  Eigen::Index size() const { return values.size(); }

  Eigen::Index flat(const std::vector<Eigen::Index>& idx) const {
    Eigen::Index f = 0, stride = 1;
    for (int j = 0; j < dim(); ++j) {
      f += idx[j] * stride;
      stride *= extents[j];
    }
    return f;
  }

  double& at(const std::vector<Eigen::Index>& idx) { return values[flat(idx)]; }
  double at(const std::vector<Eigen::Index>& idx) const { return values[flat(idx)]; }
};

// Advances a multi-index in flat (axis-0-fastest) order; returns false after
// the last index wraps back to all zeros.
inline bool next_index(std::vector<Eigen::Index>& idx, const std::vector<Eigen::Index>& ext) {
  for (std::size_t j = 0; j < ext.size(); ++j) {
    if (++idx[j] < ext[j]) return true;
    idx[j] = 0;
  }
  return false;
}

// Contracts axis `axis` with a functional row: out(..) = sum_k row[k] t(.., k, ..).
inline CoeffTensor contract_axis(const CoeffTensor& t, int axis, const Eigen::RowVectorXd& row) {
  if (axis < 0 || axis >= t.dim()) throw std::invalid_argument("contract_axis: bad axis");
  if (row.size() != t.extents[axis]) throw std::invalid_argument("contract_axis: size mismatch");
  Eigen::Index inner = 1, outer = 1;
  for (int j = 0; j < axis; ++j) inner *= t.extents[j];
  for (int j = axis + 1; j < t.dim(); ++j) outer *= t.extents[j];
  const Eigen::Index n = t.extents[axis];

  std::vector<Eigen::Index> new_ext;
  for (int j = 0; j < t.dim(); ++j)
    if (j != axis) new_ext.push_back(t.extents[j]);
  if (new_ext.empty()) new_ext.push_back(1);

  CoeffTensor out(new_ext);
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double w = row[k];
      if (w == 0.0) continue;
      const Eigen::Index src = (o * n + k) * inner;
      out.values.segment(o * inner, inner) += w * t.values.segment(src, inner);
    }
  return out;
}

// Applies a matrix along one axis: out(.., i, ..) = sum_k M(i, k) t(.., k, ..).
inline CoeffTensor apply_matrix_axis(const CoeffTensor& t, int axis, const Eigen::MatrixXd& m) {
  if (axis < 0 || axis >= t.dim()) throw std::invalid_argument("apply_matrix_axis: bad axis");
  if (m.cols() != t.extents[axis]) throw std::invalid_argument("apply_matrix_axis: size mismatch");
  Eigen::Index inner = 1, outer = 1;
  for (int j = 0; j < axis; ++j) inner *= t.extents[j];
  for (int j = axis + 1; j < t.dim(); ++j) outer *= t.extents[j];
  const Eigen::Index n = t.extents[axis];

  std::vector<Eigen::Index> new_ext = t.extents;
  new_ext[axis] = m.rows();
  CoeffTensor out(new_ext);
  for (Eigen::Index o = 0; o < outer; ++o) {
    Eigen::Map<const Eigen::MatrixXd> src(t.values.data() + o * inner * n, inner, n);
    Eigen::Map<Eigen::MatrixXd> dst(out.values.data() + o * inner * m.rows(), inner, m.rows());
    dst = src * m.transpose();
  }
  return out;
}

}  // namespace taucube

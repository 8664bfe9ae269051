#pragma once

// Boundary-operator algebra: restriction-plus-normal-derivative functionals
// beta = I_side p(d/dn) with constant coefficients, their discrete rows, and
// cross-application to coefficient tensors for edge/corner conditions.
//
// The normal derivative uses the outward convention: d/dn = -d/dx on the Low
// side and +d/dx on the High side.

#include <Eigen/Dense>

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "taucube/basis.hpp"
#include "taucube/tensor.hpp"

namespace taucube {

struct BoundaryOperator {
  int axis = 0;
  Side side = Side::Low;
  Eigen::VectorXd normal_poly;  // c_0..c_m, p(d/dn) = sum c_k (d/dn)^k
  std::string label;

  static BoundaryOperator dirichlet(int axis, Side side) {
    return {axis, side, Eigen::VectorXd::Ones(1), "dirichlet"};
  }

  static BoundaryOperator neumann(int axis, Side side) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(2);
    p[1] = 1.0;
    return {axis, side, p, "neumann"};
  }

  static BoundaryOperator robin(int axis, Side side, double a, double b) {
    Eigen::VectorXd p(2);
    p[0] = a;
    p[1] = b;
    return {axis, side, p, "robin"};
  }

  // I_side (d/dn)^k
  static BoundaryOperator normal_derivative(int axis, Side side, int order) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(order + 1);
    p[order] = 1.0;
    return {axis, side, p, "deriv" + std::to_string(order)};
  }

  int max_order() const {
    int m = 0;
    for (Eigen::Index k = 0; k < normal_poly.size(); ++k)
      if (normal_poly[k] != 0.0) m = static_cast<int>(k);
    return m;
  }

  bool valid() const { return normal_poly.size() > 0 && normal_poly.cwiseAbs().maxCoeff() > 0.0; }

  friend bool operator==(const BoundaryOperator& a, const BoundaryOperator& b) {
    return a.axis == b.axis && a.side == b.side && a.normal_poly.size() == b.normal_poly.size() &&
           a.normal_poly == b.normal_poly;
  }
};

// Face boundary condition: the operator together with its prescribed data as
// a (d-1)-dimensional tensor of trial coefficients. An empty tensor means
// homogeneous data.
struct FaceData {
  BoundaryOperator op;
  CoeffTensor rhs;
};

// Constant-coefficient normal-derivative polynomials on distinct axes always
// commute; a pair on the same axis only counts as commuting when it is the
// same operator. Interface conditions pair distinct axes only, so a false
// return flags a non-adjacent pairing.
inline bool commutes(const BoundaryOperator& a, const BoundaryOperator& b) {
  return a.axis != b.axis || a == b;
}

// Discrete row of beta on trial coefficients along its axis.
inline Eigen::RowVectorXd functional_row(const BoundaryOperator& op, Eigen::Index n,
                                         Interval domain, BasisId trial = BasisId::chebyshev()) {
  if (!op.valid()) throw std::invalid_argument("functional_row: zero normal polynomial");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  for (Eigen::Index k = 0; k < op.normal_poly.size(); ++k) {
    const double c = op.normal_poly[k];
    if (c == 0.0) continue;
    const double sign = (op.side == Side::Low && k % 2 == 1) ? -1.0 : 1.0;
    row += c * sign * affine_deriv_scale(domain, static_cast<int>(k)) *
           endpoint_functional(trial, static_cast<int>(k), op.side, n);
  }
  return row;
}

// Contracts `data` with the functional rows of `ops` along the listed axes.
// `data_axes` names the global axis of each tensor dimension (ascending);
// the default covers a full d-dimensional tensor. Cross-applications on
// distinct axes commute, so the result is order-independent.
inline CoeffTensor cross_apply(std::span<const BoundaryOperator> ops, const CoeffTensor& data,
                               const std::vector<int>& data_axes, const std::vector<Interval>& domain) {
  if (static_cast<int>(data_axes.size()) != data.dim())
    throw std::invalid_argument("cross_apply: data_axes must label every tensor dimension");
  std::vector<int> seen;
  for (const auto& op : ops) {
    if (std::find(seen.begin(), seen.end(), op.axis) != seen.end())
      throw std::invalid_argument("cross_apply: duplicate axes");
    seen.push_back(op.axis);
  }
  // apply in descending tensor position so positions stay valid as axes drop
  std::vector<const BoundaryOperator*> order;
  for (const auto& op : ops) order.push_back(&op);
  std::sort(order.begin(), order.end(),
            [](const BoundaryOperator* a, const BoundaryOperator* b) { return a->axis > b->axis; });

  CoeffTensor out = data;
  std::vector<int> axes = data_axes;
  for (const BoundaryOperator* op : order) {
    auto it = std::find(axes.begin(), axes.end(), op->axis);
    if (it == axes.end()) throw std::invalid_argument("cross_apply: axis not present in data");
    const int pos = static_cast<int>(it - axes.begin());
    out = contract_axis(out, pos, functional_row(*op, out.extents[pos], domain[op->axis]));
    axes.erase(it);
  }
  return out;
}

inline CoeffTensor cross_apply(std::span<const BoundaryOperator> ops, const CoeffTensor& data,
                               const std::vector<Interval>& domain) {
  std::vector<int> axes(data.dim());
  for (int j = 0; j < data.dim(); ++j) axes[j] = j;
  return cross_apply(ops, data, axes, domain);
}

}  // namespace taucube

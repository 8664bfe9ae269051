#pragma once

// One-dimensional Chebyshev / ultraspherical machinery: stable evaluation,
// banded differentiation and basis-conversion operators, endpoint derivative
// functionals, and value <-> coefficient transforms on the extrema grid.
//
// Conventions (Olver-Townsend ultraspherical method):
//   d/dx T_n        = n C^(1)_{n-1}
//   d/dx C^(a)_n    = 2a C^(a+1)_{n-1}
//   T_n             = (C^(1)_n - C^(1)_{n-2}) / 2          (n >= 2)
//   C^(a)_n         = a/(a+n) (C^(a+1)_n - C^(a+1)_{n-2})  (n >= 2)
// so differentiation is a single superdiagonal and conversion raises the
// ultraspherical index by one with an upper-triangular bandwidth-3 operator.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace taucube {

enum class Side { Low, High };

enum class BasisFamily { Chebyshev, Ultraspherical };

struct BasisId {
  BasisFamily family = BasisFamily::Chebyshev;
  int alpha = 0;  // ultraspherical index, >= 1 when family == Ultraspherical

  static BasisId chebyshev() { return {BasisFamily::Chebyshev, 0}; }

  static BasisId ultraspherical(int alpha) {
    if (alpha < 1) throw std::invalid_argument("ultraspherical index must be >= 1");
    return {BasisFamily::Ultraspherical, alpha};
  }

  // T_i = C^(0)_i labeling: Chebyshev counts as index 0.
  int label() const { return family == BasisFamily::Chebyshev ? 0 : alpha; }

  // Basis reached from `label` steps of labeling, 0 meaning Chebyshev.
  static BasisId from_label(int label) {
    return label == 0 ? chebyshev() : ultraspherical(label);
  }

  BasisId raised() const { return from_label(label() + 1); }

  friend bool operator==(const BasisId&, const BasisId&) = default;
};

inline double eval_basis(BasisId basis, int n, double x) {
  if (n < 0) throw std::invalid_argument("eval_basis: negative degree");
  if (basis.family == BasisFamily::Chebyshev) {
    if (n == 0) return 1.0;
    double pm = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
      const double next = 2.0 * x * p - pm;
      pm = p;
      p = next;
    }
    return p;
  }
  const double a = basis.alpha;
  if (n == 0) return 1.0;
  double pm = 1.0, p = 2.0 * a * x;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * (k - 1 + a) * x * p - (k - 2 + 2 * a) * pm) / k;
    pm = p;
    p = next;
  }
  return p;
}

// Banded operator between coefficient spaces. Entry (i, i+offset) of band
// `offset` is stored at position i; positions mapping outside [0, cols) are
// kept as exact zeros.
class BandedOperator {
 public:
  BandedOperator(Eigen::Index rows, Eigen::Index cols, BasisId source, BasisId target)
      : rows_(rows), cols_(cols), source_(source), target_(target) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("BandedOperator: empty shape");
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  BasisId source() const { return source_; }
  BasisId target() const { return target_; }
  const std::map<int, Eigen::VectorXd>& bands() const { return bands_; }

  void set_band(int offset, Eigen::VectorXd values) {
    if (values.size() != rows_) throw std::invalid_argument("BandedOperator: band length != rows");
    for (Eigen::Index i = 0; i < rows_; ++i)
      if (i + offset < 0 || i + offset >= cols_) values[i] = 0.0;
    bands_[offset] = std::move(values);
  }

  double entry(Eigen::Index i, Eigen::Index j) const {
    auto it = bands_.find(static_cast<int>(j - i));
    return it == bands_.end() ? 0.0 : it->second[i];
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BandedOperator::apply: size mismatch");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows_);
    for (const auto& [o, v] : bands_)
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const Eigen::Index j = i + o;
        if (j >= 0 && j < cols_) y[i] += v[i] * x[j];
      }
    return y;
  }

  // row * M, for functional rows acting through the operator
  Eigen::RowVectorXd apply_left(const Eigen::RowVectorXd& r) const {
    if (r.size() != rows_) throw std::invalid_argument("BandedOperator::apply_left: size mismatch");
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(cols_);
    for (const auto& [o, v] : bands_)
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const Eigen::Index j = i + o;
        if (j >= 0 && j < cols_) y[j] += r[i] * v[i];
      }
    return y;
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
    for (const auto& [o, v] : bands_)
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const Eigen::Index j = i + o;
        if (j >= 0 && j < cols_) m(i, j) = v[i];
      }
    return m;
  }

  BandedOperator scaled(double s) const {
    BandedOperator out = *this;
    for (auto& [o, v] : out.bands_) v *= s;
    return out;
  }

  // nonzero (column, value) pairs of row i
  std::vector<std::pair<Eigen::Index, double>> row_entries(Eigen::Index i) const {
    std::vector<std::pair<Eigen::Index, double>> out;
    for (const auto& [o, v] : bands_) {
      const Eigen::Index j = i + o;
      if (j >= 0 && j < cols_ && v[i] != 0.0) out.emplace_back(j, v[i]);
    }
    return out;
  }

  // nonzero (row, value) pairs of column j
  std::vector<std::pair<Eigen::Index, double>> col_entries(Eigen::Index j) const {
    std::vector<std::pair<Eigen::Index, double>> out;
    for (const auto& [o, v] : bands_) {
      const Eigen::Index i = j - o;
      if (i >= 0 && i < rows_ && v[i] != 0.0) out.emplace_back(i, v[i]);
    }
    return out;
  }

  static BandedOperator identity(Eigen::Index n, BasisId basis) {
    BandedOperator id(n, n, basis, basis);
    id.set_band(0, Eigen::VectorXd::Ones(n));
    return id;
  }

  friend BandedOperator compose(const BandedOperator& a, const BandedOperator& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("compose: inner dimensions differ");
    if (!(a.source_ == b.target_)) throw std::invalid_argument("compose: basis chain mismatch");
    BandedOperator out(a.rows_, b.cols_, b.source_, a.target_);
    std::map<int, Eigen::VectorXd> acc;
    for (const auto& [oa, va] : a.bands_)
      for (const auto& [ob, vb] : b.bands_) {
        const int o = oa + ob;
        auto [it, fresh] = acc.try_emplace(o, Eigen::VectorXd::Zero(a.rows_));
        for (Eigen::Index i = 0; i < a.rows_; ++i) {
          const Eigen::Index k = i + oa;
          if (k >= 0 && k < b.rows_) it->second[i] += va[i] * vb[k];
        }
      }
    for (auto& [o, v] : acc) out.set_band(o, std::move(v));
    return out;
  }

  friend BandedOperator add(const BandedOperator& a, const BandedOperator& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("add: shape mismatch");
    BandedOperator out = a;
    for (const auto& [o, v] : b.bands_) {
      auto [it, fresh] = out.bands_.try_emplace(o, Eigen::VectorXd::Zero(a.rows_));
      it->second += v;
    }
    return out;
  }

 private:
  Eigen::Index rows_, cols_;
  BasisId source_, target_;
  std::map<int, Eigen::VectorXd> bands_;
};

// Coefficient-space differentiation, one index up: T -> C^(1), C^(a) -> C^(a+1).
inline BandedOperator diff_operator(BasisId source, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("diff_operator: N must be >= 1");
  BandedOperator d(n, n, source, source.raised());
  Eigen::VectorXd band(n);
  for (Eigen::Index i = 0; i < n; ++i)
    band[i] = source.family == BasisFamily::Chebyshev ? double(i + 1) : 2.0 * source.alpha;
  d.set_band(1, std::move(band));
  return d;
}

// Coefficient-space re-expansion one index up, exact on polynomials of
// degree < N.
inline BandedOperator conversion_operator(BasisId source, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("conversion_operator: N must be >= 1");
  BandedOperator s(n, n, source, source.raised());
  Eigen::VectorXd diag(n), upper(n);
  if (source.family == BasisFamily::Chebyshev) {
    for (Eigen::Index j = 0; j < n; ++j) diag[j] = j == 0 ? 1.0 : 0.5;
    upper.setConstant(-0.5);
  } else {
    const double a = source.alpha;
    for (Eigen::Index j = 0; j < n; ++j) diag[j] = a / (a + double(j));
    for (Eigen::Index i = 0; i < n; ++i) upper[i] = -a / (a + double(i + 2));
  }
  s.set_band(0, std::move(diag));
  s.set_band(2, std::move(upper));
  return s;
}

// k-fold differentiation from `source`, target index = label + k.
inline BandedOperator derivative_chain(BasisId source, int k, Eigen::Index n) {
  if (k < 0) throw std::invalid_argument("derivative_chain: negative order");
  BandedOperator op = BandedOperator::identity(n, source);
  for (int j = 0; j < k; ++j) op = compose(diff_operator(op.target(), n), op);
  return op;
}

// Conversion from `source` up to ultraspherical index `to_label` (0 = Chebyshev).
inline BandedOperator conversion_chain(BasisId source, int to_label, Eigen::Index n) {
  if (to_label < source.label())
    throw std::invalid_argument("conversion_chain: cannot lower the basis index");
  BandedOperator op = BandedOperator::identity(n, source);
  for (int j = source.label(); j < to_label; ++j) op = compose(conversion_operator(op.target(), n), op);
  return op;
}

// Row functional: dot with trial coefficients = k-th derivative at x = +-1.
inline Eigen::RowVectorXd endpoint_functional(BasisId basis, int k, Side side, Eigen::Index n) {
  if (k < 0) throw std::invalid_argument("endpoint_functional: negative derivative order");
  const BandedOperator chain = derivative_chain(basis, k, n);
  const double x = side == Side::High ? 1.0 : -1.0;
  Eigen::RowVectorXd ev(n);
  for (Eigen::Index j = 0; j < n; ++j) ev[j] = eval_basis(chain.target(), static_cast<int>(j), x);
  return chain.apply_left(ev);
}

// --- grids and transforms ---------------------------------------------------

enum class GridKind { TypeI, TypeII };

struct Grid1D {
  GridKind kind = GridKind::TypeII;
  Eigen::Index size = 0;
  Eigen::VectorXd nodes;  // strictly increasing on [-1, 1]
};

inline Grid1D chebyshev_grid(GridKind kind, Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("chebyshev_grid: N must be >= 2");
  Grid1D g{kind, n, Eigen::VectorXd(n)};
  if (kind == GridKind::TypeII) {
    for (Eigen::Index j = 0; j < n; ++j)
      g.nodes[j] = -std::cos(std::numbers::pi * double(j) / double(n - 1));
    g.nodes[0] = -1.0;
    g.nodes[n - 1] = 1.0;
  } else {
    for (Eigen::Index j = 0; j < n; ++j)
      g.nodes[j] = -std::cos(std::numbers::pi * (double(j) + 0.5) / double(n));
  }
  return g;
}

// Values on the type-II grid -> Chebyshev coefficients (DCT-I, direct O(N^2)).
inline Eigen::VectorXd to_coefficients(const Grid1D& grid, const Eigen::VectorXd& values) {
  if (grid.kind != GridKind::TypeII)
    throw std::invalid_argument("to_coefficients: type-II grid required");
  if (values.size() != grid.size) throw std::invalid_argument("to_coefficients: size mismatch");
  const Eigen::Index n = grid.size;
  const Eigen::Index m = n - 1;
  // f[j] = value at cos(pi j / m), i.e. reversed relative to increasing nodes
  Eigen::VectorXd c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.5 * (values[n - 1] + (k % 2 == 0 ? values[0] : -values[0]));
    for (Eigen::Index j = 1; j < m; ++j)
      acc += values[n - 1 - j] * std::cos(std::numbers::pi * double(j) * double(k) / double(m));
    c[k] = 2.0 * acc / double(m);
  }
  c[0] *= 0.5;
  c[n - 1] *= 0.5;
  return c;
}

// Chebyshev coefficients -> values on the type-II grid.
inline Eigen::VectorXd to_values(const Grid1D& grid, const Eigen::VectorXd& coeffs) {
  if (grid.kind != GridKind::TypeII)
    throw std::invalid_argument("to_values: type-II grid required");
  if (coeffs.size() != grid.size) throw std::invalid_argument("to_values: size mismatch");
  const Eigen::Index n = grid.size;
  const Eigen::Index m = n - 1;
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      acc += coeffs[k] * std::cos(std::numbers::pi * double(j) * double(k) / double(m));
    v[n - 1 - j] = acc;
  }
  return v;
}

// Clenshaw evaluation of a coefficient series at one point.
inline double eval_series(BasisId basis, const Eigen::VectorXd& coeffs, double x) {
  const Eigen::Index n = coeffs.size();
  if (n == 0) return 0.0;
  if (basis.family == BasisFamily::Chebyshev) {
    double b1 = 0.0, b2 = 0.0;
    for (Eigen::Index k = n - 1; k >= 1; --k) {
      const double b0 = 2.0 * x * b1 - b2 + coeffs[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + coeffs[0];
  }
  // forward recurrence accumulation for ultraspherical series
  double acc = coeffs[0];
  if (n == 1) return acc;
  const double a = basis.alpha;
  double pm = 1.0, p = 2.0 * a * x;
  acc += coeffs[1] * p;
  for (Eigen::Index k = 2; k < n; ++k) {
    const double next = (2.0 * (double(k) - 1 + a) * x * p - (double(k) - 2 + 2 * a) * pm) / double(k);
    pm = p;
    p = next;
    acc += coeffs[k] * p;
  }
  return acc;
}

// --- affine domain mapping ---------------------------------------------------

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Chain-rule factor (2/(b-a))^k for k-th derivatives mapped to [-1, 1].
inline double affine_deriv_scale(Interval domain, int k) {
  if (!(domain.hi > domain.lo)) throw std::invalid_argument("affine_deriv_scale: degenerate domain");
  return std::pow(2.0 / domain.length(), k);
}

inline double to_reference(Interval domain, double x) {
  return (2.0 * x - domain.lo - domain.hi) / domain.length();
}

inline double from_reference(Interval domain, double t) {
  return 0.5 * (domain.lo + domain.hi) + 0.5 * t * domain.length();
}

}  // namespace taucube

#pragma once

#include <vector>

namespace toric {

/// Dense symmetric matrix, packed lower triangle. Orders here are tiny
/// (<= 8), so no blocking or sparsity.
class SymMatrix {
 public:
  explicit SymMatrix(int order) : order_(order), a_(order * (order + 1) / 2, 0.0) {}

  int order() const { return order_; }

  double& at(int i, int j) { return a_[index(i, j)]; }
  double at(int i, int j) const { return a_[index(i, j)]; }

  double frobenius_norm() const;

  bool operator==(const SymMatrix& other) const {
    return order_ == other.order_ && a_ == other.a_;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < j) { int t = i; i = j; j = t; }
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

  int order_;
  std::vector<double> a_;
};

struct EigenResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

/// Jacobi eigensolver (cyclic sweeps); eigenvectors have unit length and a
/// positive leading nonzero component.
EigenResult symmetric_eigen(SymMatrix c);

/// Lower Cholesky factor; throws NumericError naming the first non-positive
/// pivot when b is not positive definite.
std::vector<double> cholesky_lower(const SymMatrix& b);

/// Solves a v = lambda b v by Cholesky reduction b = L L^T followed by a
/// Jacobi solve of L^-1 a L^-T. b-eigenvectors are mapped back through L^-T
/// and normalized to unit Euclidean length with positive leading sign.
EigenResult generalized_symmetric_eigen(const SymMatrix& a, const SymMatrix& b);

}  // namespace toric

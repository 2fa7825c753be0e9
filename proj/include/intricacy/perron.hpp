#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace intricacy {

template <typename Scalar>
struct PerronResult {
  Scalar root = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // right Perron vector, sums to 1
  int iterations = 0;
  bool converged = false;
};

/// Spectral radius of a nonnegative square matrix by power iteration on
/// A + I. The shift keeps the Perron root dominant for irreducible periodic
/// matrices, since rho(A + I) = rho(A) + 1 when A >= 0.
template <typename Derived>
PerronResult<typename Derived::Scalar> perron_root(const Eigen::MatrixBase<Derived>& a,
                                                   typename Derived::Scalar tolerance = 1e-12,
                                                   int max_iterations = 200000) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  PerronResult<Scalar> out;
  Vector v = Vector::Constant(n, Scalar(1) / Scalar(n));
  Scalar previous = -1;
  for (int it = 1; it <= max_iterations; ++it) {
    Vector w = a * v + v;
    const Scalar lambda = w.sum();  // v sums to 1
    if (!(lambda > 0)) break;
    w /= lambda;
    const Scalar change = (w - v).cwiseAbs().maxCoeff();
    v = std::move(w);
    out.iterations = it;
    if (std::abs(lambda - previous) <= tolerance * lambda && change <= tolerance) {
      out.converged = true;
      out.root = lambda - 1;
      break;
    }
    previous = lambda;
    out.root = lambda - 1;
  }
  out.vector = v;
  return out;
}

}  // namespace intricacy

#pragma once

#include "acmg/lie_algebra.hpp"

namespace acmg {

/// Connection coefficients G(i,j,k) = < nabla_{e_i} e_j, e_k > of a metric
/// connection on a Lie group with left-invariant orthonormal frame.
template <typename S>
struct ConnectionCoefficients {
  Tensor<S> gamma;  ///< rank-3, G(i;j,k)

  int dim() const { return gamma.dim(); }

  /// Metric compatibility G(i,j,k) = -G(i,k,j), entrywise residual.
  double metric_residual() const {
    double r = 0.0;
    const int m = dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          r = std::max(r, std::fabs(ScalarTraits<S>::to_double(gamma(i, j, k) + gamma(i, k, j))));
    return r;
  }

  /// Torsion-freeness G(i,j,k) - G(j,i,k) = c(i,j,k), entrywise residual.
  double torsion_residual(const LieAlgebraModel<S>& model) const {
    double r = 0.0;
    const int m = dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          r = std::max(r, std::fabs(ScalarTraits<S>::to_double(
                              gamma(i, j, k) - gamma(j, i, k) - model.c(i, j, k))));
    return r;
  }
};

/// Levi-Civita connection of the left-invariant metric via the Koszul formula
/// 2 <nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> on frame fields.
template <typename S>
ConnectionCoefficients<S> levi_civita(const LieAlgebraModel<S>& model, double eps = 1e-9) {
  if (model.jacobi_residual() >= eps) throw ModelError(model.name + ": Jacobi identity violated");
  const int m = model.m;
  ConnectionCoefficients<S> conn;
  conn.gamma = Tensor<S>(3, m);
  const S half = ScalarTraits<S>::fraction(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        conn.gamma(i, j, k) = half * (model.c(i, j, k) - model.c(j, k, i) + model.c(k, i, j));
  return conn;
}

/// Covariant derivative of a constant-component covariant tensor:
/// (nabla T)(X; Y1..Yp) = -sum_s T(Y1,..,nabla_X Ys,..,Yp).
/// Output has the derivative slot first.
template <typename S>
Tensor<S> covariant_derivative(const ConnectionCoefficients<S>& conn, const Tensor<S>& t) {
  const int m = conn.dim();
  if (t.dim() != m) throw ShapeError("covariant_derivative: dim mismatch");
  const int p = t.rank();
  Tensor<S> out(p + 1, m);
  std::vector<int> src(static_cast<std::size_t>(p));
  for_each_index(p + 1, m, [&](const std::vector<int>& idx) {
    const int x = idx[0];
    S acc = ScalarTraits<S>::zero();
    for (int s = 0; s < p; ++s) {
      std::copy(idx.begin() + 1, idx.end(), src.begin());
      for (int a = 0; a < m; ++a) {
        src[static_cast<std::size_t>(s)] = a;
        acc -= conn.gamma(x, idx[static_cast<std::size_t>(s + 1)], a) * t.at(src);
      }
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Connection (rough) Laplacian nabla*nabla T = -(nabla^2 T)_{e_i, e_i} with
/// (nabla^2 T)_{X,Y} = nabla_X (nabla_Y T) - nabla_{nabla_X Y} T.
template <typename S>
Tensor<S> rough_laplacian(const ConnectionCoefficients<S>& conn, const Tensor<S>& t) {
  Tensor<S> g1 = covariant_derivative(conn, t);
  Tensor<S> g2 = covariant_derivative(conn, g1);
  return -trace_slots(g2, 0, 1);
}

/// Exterior derivative of a p-form from its covariant gradient (derivative
/// slot first): d w (x_0..x_p) = sum_i (-1)^i (grad w)(x_i; ..x_i omitted..).
template <typename S>
Tensor<S> exterior_from_gradient(const Tensor<S>& grad) {
  const int p = grad.rank() - 1;
  const int m = grad.dim();
  Tensor<S> out(p + 1, m);
  std::vector<int> src(static_cast<std::size_t>(p + 1));
  for_each_index(p + 1, m, [&](const std::vector<int>& idx) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i <= p; ++i) {
      src[0] = idx[static_cast<std::size_t>(i)];
      int w = 1;
      for (int s = 0; s <= p; ++s)
        if (s != i) src[static_cast<std::size_t>(w++)] = idx[static_cast<std::size_t>(s)];
      if (i % 2 == 0)
        acc += grad.at(src);
      else
        acc -= grad.at(src);
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Codifferential d* w (x_2..x_p) = -sum_i (grad w)(i; i, x_2..x_p).
template <typename S>
Tensor<S> codifferential_from_gradient(const Tensor<S>& grad) {
  return -trace_slots(grad, 0, 1);
}

}  // namespace acmg

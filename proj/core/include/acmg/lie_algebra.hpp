#pragma once

#include <string>
#include <utility>

#include "acmg/tensor.hpp"

namespace acmg {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A metric Lie algebra presented in an orthonormal frame: structure
/// constants c(i,j,k) meaning [e_i, e_j] = sum_k c(i,j,k) e_k (0-based here;
/// the file format is 1-based).
template <typename S>
struct LieAlgebraModel {
  std::string name;
  int m = 0;                ///< frame dimension, odd (m = 2n+1)
  Tensor<S> c;              ///< rank-3 structure constants
  bool unimodular = false;  ///< trace(ad_X) = 0 for all X; computed, not asserted

  LieAlgebraModel() = default;
  LieAlgebraModel(std::string name_, int m_) : name(std::move(name_)), m(m_), c(3, m_) {}

  void bracket(int i, int j, int k, const S& v) {
    c(i, j, k) = v;
    c(j, i, k) = -v;
  }

  int n() const { return (m - 1) / 2; }

  /// Entrywise residual of skewness c(i,j,k) + c(j,i,k).
  double skew_residual() const {
    double r = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          r = std::max(r, std::fabs(ScalarTraits<S>::to_double(c(i, j, k) + c(j, i, k))));
    return r;
  }

  /// Entrywise residual of the Jacobi identity
  /// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0.
  double jacobi_residual() const {
    double r = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            S acc = ScalarTraits<S>::zero();
            for (int a = 0; a < m; ++a)
              acc += c(i, j, a) * c(a, k, l) + c(j, k, a) * c(a, i, l) + c(k, i, a) * c(a, j, l);
            r = std::max(r, std::fabs(ScalarTraits<S>::to_double(acc)));
          }
    return r;
  }

  bool compute_unimodular(double eps) const {
    for (int i = 0; i < m; ++i) {
      S tr = ScalarTraits<S>::zero();
      for (int k = 0; k < m; ++k) tr += c(i, k, k);
      if (!ScalarTraits<S>::is_zero(tr, eps)) return false;
    }
    return true;
  }

  /// Checks skewness and Jacobi, fills the unimodular flag; throws ModelError.
  void validate(double eps) {
    if (m < 3 || m % 2 == 0) throw ModelError(name + ": frame dimension must be odd and >= 3");
    if (skew_residual() >= eps) throw ModelError(name + ": structure constants not skew in (i,j)");
    if (jacobi_residual() >= eps) throw ModelError(name + ": Jacobi identity violated");
    unimodular = compute_unimodular(eps);
  }
};

}  // namespace acmg

#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "acmg/scalar.hpp"

namespace acmg {

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A proven identity failed to hold numerically; indicates an implementation
/// or convention bug rather than bad input.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense multilinear array over a fixed orthonormal frame at a point.
///
/// Rank-p tensors in frame dimension m hold m^p entries in row-major order
/// (first index slowest). The frame is orthonormal, so vectors and covectors
/// share components and no metric plumbing appears anywhere.
template <typename S>
class Tensor {
public:
  using scalar_type = S;

  Tensor() = default;
  Tensor(int rank, int dim)
      : rank_(rank), dim_(dim), data_(size_of(rank, dim), ScalarTraits<S>::zero()) {}

  static Tensor identity(int dim) {
    Tensor t(2, dim);
    for (int i = 0; i < dim; ++i) t(i, i) = ScalarTraits<S>::one();
    return t;
  }

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<S>& data() const { return data_; }
  std::vector<S>& data() { return data_; }

  template <typename... I>
  S& operator()(I... idx) {
    static_assert((std::is_convertible_v<I, int> && ...));
    assert(sizeof...(idx) == static_cast<std::size_t>(rank_));
    return data_[flat({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const S& operator()(I... idx) const {
    assert(sizeof...(idx) == static_cast<std::size_t>(rank_));
    return data_[flat({static_cast<int>(idx)...})];
  }

  S& at(const std::vector<int>& idx) { return data_[flat_v(idx)]; }
  const S& at(const std::vector<int>& idx) const { return data_[flat_v(idx)]; }

  Tensor operator-() const {
    Tensor r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const S& s) { return a *= s; }
  friend Tensor operator*(const S& s, Tensor a) { return a *= s; }

  void require_same_shape(const Tensor& o) const {
    if (rank_ != o.rank_ || dim_ != o.dim_)
      throw ShapeError("tensor shape mismatch: rank " + std::to_string(rank_) + "/" +
                       std::to_string(o.rank_) + ", dim " + std::to_string(dim_) + "/" +
                       std::to_string(o.dim_));
  }

  /// Largest |entry| as a double; the residual magnitude used by every check.
  /// Non-finite entries count as infinitely large, never as small.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) {
      const double v = std::fabs(ScalarTraits<S>::to_double(x));
      if (!(v <= std::numeric_limits<double>::max()))
        return std::numeric_limits<double>::infinity();
      m = std::max(m, v);
    }
    return m;
  }

  bool is_zero(double eps) const {
    for (const auto& x : data_)
      if (!ScalarTraits<S>::is_zero(x, eps)) return false;
    return true;
  }

private:
  static std::size_t size_of(int rank, int dim) {
    std::size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(dim);
    return s;
  }
  std::size_t flat(std::initializer_list<int> idx) const {
    std::size_t f = 0;
    for (int i : idx) {
      assert(i >= 0 && i < dim_);
      f = f * dim_ + static_cast<std::size_t>(i);
    }
    return f;
  }
  std::size_t flat_v(const std::vector<int>& idx) const {
    assert(idx.size() == static_cast<std::size_t>(rank_));
    std::size_t f = 0;
    for (int i : idx) f = f * dim_ + static_cast<std::size_t>(i);
    return f;
  }

  int rank_ = 0;
  int dim_ = 0;
  std::vector<S> data_;
};

/// Iterate all ordered multi-indices of a given rank; fn(const std::vector<int>&).
template <typename Fn>
void for_each_index(int rank, int dim, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (rank == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int p = rank - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == dim) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
  }
}

/// Full entrywise contraction over all ordered multi-indices, no 1/p! factor.
template <typename S>
S inner(const Tensor<S>& a, const Tensor<S>& b) {
  a.require_same_shape(b);
  S acc = ScalarTraits<S>::zero();
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += da[i] * db[i];
  return acc;
}

template <typename S>
S norm_sq(const Tensor<S>& a) {
  return inner(a, a);
}

namespace detail {

inline void permutations(int p, std::vector<std::pair<std::vector<int>, int>>& out) {
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
  // Generate in lexicographic order, tracking parity by inversion count.
  do {
    int inv = 0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
    out.emplace_back(perm, inv % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Sum over all permutations with sign, no 1/p! normalization.
/// alternate(alternate(T)) = p! alternate(T).
template <typename S>
Tensor<S> alternate(const Tensor<S>& a) {
  const int p = a.rank();
  if (p < 1) throw ShapeError("alternate: rank must be >= 1");
  std::vector<std::pair<std::vector<int>, int>> perms;
  detail::permutations(p, perms);
  Tensor<S> out(p, a.dim());
  std::vector<int> src(static_cast<std::size_t>(p));
  for_each_index(p, a.dim(), [&](const std::vector<int>& idx) {
    S acc = ScalarTraits<S>::zero();
    for (const auto& [perm, sign] : perms) {
      for (int s = 0; s < p; ++s)
        src[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
      if (sign > 0)
        acc += a.at(src);
      else
        acc -= a.at(src);
    }
    out.at(idx) = acc;
  });
  return out;
}

template <typename S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.dim() != b.dim()) throw ShapeError("tensor_product: dim mismatch");
  Tensor<S> out(a.rank() + b.rank(), a.dim());
  for_each_index(a.rank() + b.rank(), a.dim(), [&](const std::vector<int>& idx) {
    std::vector<int> ia(idx.begin(), idx.begin() + a.rank());
    std::vector<int> ib(idx.begin() + a.rank(), idx.end());
    out.at(idx) = a.at(ia) * b.at(ib);
  });
  return out;
}

/// Symmetric product a (.) b = (a (x) b + b (x) a) / 2 for equal-rank inputs.
template <typename S>
Tensor<S> sym_prod(const Tensor<S>& a, const Tensor<S>& b) {
  a.require_same_shape(b);
  Tensor<S> out = tensor_product(a, b);
  out += tensor_product(b, a);
  out *= ScalarTraits<S>::fraction(1, 2);
  return out;
}

/// Wedge of two one-forms: a /\ b = a (x) b - b (x) a.
template <typename S>
Tensor<S> wedge11(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.rank() != 1 || b.rank() != 1) throw ShapeError("wedge11: rank-1 inputs required");
  Tensor<S> out = tensor_product(a, b);
  out -= tensor_product(b, a);
  return out;
}

/// Shuffle wedge of a one-form with a two-form:
/// (a /\ w)(x,y,z) = a(x)w(y,z) - a(y)w(x,z) + a(z)w(x,y).
template <typename S>
Tensor<S> wedge12(const Tensor<S>& a, const Tensor<S>& w) {
  if (a.rank() != 1 || w.rank() != 2) throw ShapeError("wedge12: rank-1 and rank-2 required");
  const int m = a.dim();
  Tensor<S> out(3, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        out(x, y, z) = a(x) * w(y, z) - a(y) * w(x, z) + a(z) * w(x, y);
  return out;
}

/// Shuffle wedge of two two-forms (alternation over the six pair splits):
/// (a /\ b)(x,y,z,w) = a(x,y)b(z,w) - a(x,z)b(y,w) + a(x,w)b(y,z)
///                   + a(y,z)b(x,w) - a(y,w)b(x,z) + a(z,w)b(x,y).
template <typename S>
Tensor<S> wedge22(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.rank() != 2 || b.rank() != 2) throw ShapeError("wedge22: rank-2 inputs required");
  a.require_same_shape(b);
  const int m = a.dim();
  Tensor<S> out(4, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w)
          out(x, y, z, w) = a(x, y) * b(z, w) - a(x, z) * b(y, w) + a(x, w) * b(y, z) +
                            a(y, z) * b(x, w) - a(y, w) * b(x, z) + a(z, w) * b(x, y);
  return out;
}

/// Kulkarni-Nomizu product of two symmetric rank-2 tensors:
/// (a (-) b)(x,y,z,w) = a(x,z)b(y,w) - a(y,z)b(x,w) + a(y,w)b(x,z) - a(x,w)b(y,z).
template <typename S>
Tensor<S> kulkarni_nomizu(const Tensor<S>& a, const Tensor<S>& b, double eps = 1e-9) {
  if (a.rank() != 2 || b.rank() != 2) throw ShapeError("kulkarni_nomizu: rank-2 inputs required");
  a.require_same_shape(b);
  const int m = a.dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!ScalarTraits<S>::is_zero(a(i, j) - a(j, i), eps) ||
          !ScalarTraits<S>::is_zero(b(i, j) - b(j, i), eps))
        throw ShapeError("kulkarni_nomizu: inputs must be symmetric");
    }
  Tensor<S> out(4, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w)
          out(x, y, z, w) =
              a(x, z) * b(y, w) - a(y, z) * b(x, w) + a(y, w) * b(x, z) - a(x, w) * b(y, z);
  return out;
}

/// Entrywise residual of a declared skew symmetry in two slots.
template <typename S>
double skew_residual(const Tensor<S>& t, int s1, int s2) {
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank())
    throw ShapeError("skew_residual: bad slots");
  double r = 0.0;
  std::vector<int> swapped(static_cast<std::size_t>(t.rank()));
  for_each_index(t.rank(), t.dim(), [&](const std::vector<int>& idx) {
    std::copy(idx.begin(), idx.end(), swapped.begin());
    std::swap(swapped[static_cast<std::size_t>(s1)], swapped[static_cast<std::size_t>(s2)]);
    r = std::max(r, std::fabs(ScalarTraits<S>::to_double(t.at(idx) + t.at(swapped))));
  });
  return r;
}

/// Entrywise residual of a declared symmetry in two slots.
template <typename S>
double symmetric_residual(const Tensor<S>& t, int s1, int s2) {
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank())
    throw ShapeError("symmetric_residual: bad slots");
  double r = 0.0;
  std::vector<int> swapped(static_cast<std::size_t>(t.rank()));
  for_each_index(t.rank(), t.dim(), [&](const std::vector<int>& idx) {
    std::copy(idx.begin(), idx.end(), swapped.begin());
    std::swap(swapped[static_cast<std::size_t>(s1)], swapped[static_cast<std::size_t>(s2)]);
    r = std::max(r, std::fabs(ScalarTraits<S>::to_double(t.at(idx) - t.at(swapped))));
  });
  return r;
}

/// Contract the first slot with a vector: out(j,...) = sum_i v(i) T(i,j,...).
template <typename S>
Tensor<S> contract_first(const Tensor<S>& t, const Tensor<S>& v) {
  if (v.rank() != 1 || t.rank() < 1 || v.dim() != t.dim())
    throw ShapeError("contract_first: shape mismatch");
  Tensor<S> out(t.rank() - 1, t.dim());
  std::vector<int> full(static_cast<std::size_t>(t.rank()));
  for_each_index(t.rank() - 1, t.dim(), [&](const std::vector<int>& idx) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < t.dim(); ++i) {
      full[0] = i;
      std::copy(idx.begin(), idx.end(), full.begin() + 1);
      acc += v(i) * t.at(full);
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Trace two slots against each other: out = sum_i T(..., i@s1, ..., i@s2, ...).
template <typename S>
Tensor<S> trace_slots(const Tensor<S>& t, int s1, int s2) {
  if (s1 == s2 || s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank())
    throw ShapeError("trace_slots: bad slots");
  if (s1 > s2) std::swap(s1, s2);
  Tensor<S> out(t.rank() - 2, t.dim());
  std::vector<int> full(static_cast<std::size_t>(t.rank()));
  for_each_index(t.rank() - 2, t.dim(), [&](const std::vector<int>& idx) {
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < t.dim(); ++i) {
      int k = 0;
      for (int s = 0; s < t.rank(); ++s) {
        if (s == s1 || s == s2)
          full[static_cast<std::size_t>(s)] = i;
        else
          full[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(k++)];
      }
      acc += t.at(full);
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Action of a skew endomorphism A in so(m) on a covariant tensor, as the
/// derivation (A.T)(X1,...,Xp) = -sum_s T(X1,..,A Xs,..,Xp).
/// A(i,j) = <A e_i, e_j>; vectors act through their covariant components.
template <typename S>
Tensor<S> act_so(const Tensor<S>& A, const Tensor<S>& t) {
  if (A.rank() != 2 || A.dim() != t.dim()) throw ShapeError("act_so: shape mismatch");
  const int p = t.rank();
  Tensor<S> out(p, t.dim());
  std::vector<int> src(static_cast<std::size_t>(p));
  for_each_index(p, t.dim(), [&](const std::vector<int>& idx) {
    S acc = ScalarTraits<S>::zero();
    for (int s = 0; s < p; ++s) {
      std::copy(idx.begin(), idx.end(), src.begin());
      for (int j = 0; j < t.dim(); ++j) {
        src[static_cast<std::size_t>(s)] = j;
        acc -= A(idx[static_cast<std::size_t>(s)], j) * t.at(src);
      }
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Frame rotation: T'(i1..ip) = sum T(j1..jp) g(j1,i1)...g(jp,ip),
/// for g orthogonal with columns the new frame in old components.
template <typename S>
Tensor<S> rotate_frame(const Tensor<S>& t, const Tensor<S>& g) {
  if (g.rank() != 2 || g.dim() != t.dim()) throw ShapeError("rotate_frame: shape mismatch");
  const int p = t.rank();
  const int m = t.dim();
  Tensor<S> cur = t;
  // Rotate one slot at a time.
  for (int s = 0; s < p; ++s) {
    Tensor<S> next(p, m);
    std::vector<int> src(static_cast<std::size_t>(p));
    for_each_index(p, m, [&](const std::vector<int>& idx) {
      S acc = ScalarTraits<S>::zero();
      std::copy(idx.begin(), idx.end(), src.begin());
      for (int j = 0; j < m; ++j) {
        src[static_cast<std::size_t>(s)] = j;
        acc += g(j, idx[static_cast<std::size_t>(s)]) * cur.at(src);
      }
      next.at(idx) = acc;
    });
    cur = next;
  }
  return cur;
}

// Rank-2 matrix conveniences (used throughout the structure algebra).

template <typename S>
Tensor<S> mat_mul(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim() != b.dim())
    throw ShapeError("mat_mul: rank-2 same-dim inputs required");
  const int m = a.dim();
  Tensor<S> out(2, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      S acc = ScalarTraits<S>::zero();
      for (int j = 0; j < m; ++j) acc += a(i, j) * b(j, k);
      out(i, k) = acc;
    }
  return out;
}

template <typename S>
Tensor<S> transpose(const Tensor<S>& a) {
  if (a.rank() != 2) throw ShapeError("transpose: rank-2 input required");
  Tensor<S> out(2, a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out(i, j) = a(j, i);
  return out;
}

template <typename S>
S trace(const Tensor<S>& a) {
  if (a.rank() != 2) throw ShapeError("trace: rank-2 input required");
  S acc = ScalarTraits<S>::zero();
  for (int i = 0; i < a.dim(); ++i) acc += a(i, i);
  return acc;
}

/// Apply a rank-2 array to a vector: (A v)(k) = sum_j v(j) A(j,k).
template <typename S>
Tensor<S> apply_so(const Tensor<S>& A, const Tensor<S>& v) {
  if (A.rank() != 2 || v.rank() != 1 || A.dim() != v.dim()) throw ShapeError("apply_so: shape mismatch");
  Tensor<S> out(1, v.dim());
  for (int k = 0; k < v.dim(); ++k) {
    S acc = ScalarTraits<S>::zero();
    for (int j = 0; j < v.dim(); ++j) acc += v(j) * A(j, k);
    out(k) = acc;
  }
  return out;
}

}  // namespace acmg

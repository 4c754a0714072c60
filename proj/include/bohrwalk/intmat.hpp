#pragma once

// Exact integer linear algebra over Mat_d(Z): traceless matrices and their
// coordinates, SL_d(Z) elements, the adjoint (conjugation) representation and
// characteristic polynomials.  Everything is templated on the scalar so the
// same code runs on BigInt and on fixed-width integers.

#include "bohrwalk/integer.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bohrwalk {

/// Number of free coordinates of a traceless d x d matrix.
constexpr int traceless_dim(int d) { return d * d - 1; }

template <class Scalar>
Matrix<Scalar> identity_matrix(int d) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = Scalar(1);
  return m;
}

/// Fraction-free (Bareiss) elimination; every intermediate division is exact.
template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == Scalar(0)) ++p;
      if (p == n) return Scalar(0);
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

template <class Scalar>
Matrix<Scalar> minor_matrix(const Matrix<Scalar>& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  Matrix<Scalar> out(n - 1, n - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

/// Classical adjugate, adj(M) * M = det(M) * I.
template <class Scalar>
Matrix<Scalar> adjugate(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return Matrix<Scalar>::Constant(1, 1, Scalar(1));
  if (n == 2) {
    Matrix<Scalar> a(2, 2);
    a(0, 0) = m(1, 1);
    a(0, 1) = -m(0, 1);
    a(1, 0) = -m(1, 0);
    a(1, 1) = m(0, 0);
    return a;
  }
  Matrix<Scalar> adj(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar c = determinant<Scalar>(minor_matrix<Scalar>(m, i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : Scalar(-c);
    }
  }
  return adj;
}

/// Monic integer polynomial, coefficients lowest degree first.
template <class Scalar>
class Polynomial {
 public:
  explicit Polynomial(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty() || coeffs_.back() != Scalar(1)) {
      throw std::invalid_argument("Polynomial: leading coefficient must be 1");
    }
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }

  Scalar evaluate(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Scalar> coeffs_;
};

using IntPolynomial = Polynomial<BigInt>;

/// det(lambda*I - M) by Faddeev-LeVerrier.  The division by the step index is exact
/// over the integers, so no rational arithmetic is needed.
template <class Scalar>
Polynomial<Scalar> char_poly(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: matrix is not square");
  const Eigen::Index n = a.rows();
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
  c[n] = Scalar(1);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    Matrix<Scalar> am = (a * m).eval();
    Scalar tr = am.trace();
    Scalar step(static_cast<long>(k));
    if (tr % step != Scalar(0)) throw std::logic_error("char_poly: inexact Faddeev-LeVerrier step");
    c[n - k] = -(tr / step);
  }
  return Polynomial<Scalar>(std::move(c));
}

/// Element of Mat_d^0(Z).
template <class Scalar>
class TracelessMatrix {
 public:
  explicit TracelessMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw std::invalid_argument("TracelessMatrix: matrix must be square and non-empty");
    }
    if (m_.trace() != Scalar(0)) throw std::invalid_argument("TracelessMatrix: trace is not zero");
  }

  static TracelessMatrix zero(int d) { return TracelessMatrix(Matrix<Scalar>::Zero(d, d)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix<Scalar>& matrix() const { return m_; }
  const Scalar& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  friend bool operator==(const TracelessMatrix& a, const TracelessMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }
  friend TracelessMatrix operator+(const TracelessMatrix& a, const TracelessMatrix& b) {
    return TracelessMatrix(Matrix<Scalar>(a.m_ + b.m_));
  }
  friend TracelessMatrix operator-(const TracelessMatrix& a, const TracelessMatrix& b) {
    return TracelessMatrix(Matrix<Scalar>(a.m_ - b.m_));
  }

 private:
  Matrix<Scalar> m_;
};

/// Element of SL_d(Z).
template <class Scalar>
class UnimodularMatrix {
 public:
  explicit UnimodularMatrix(Matrix<Scalar> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw std::invalid_argument("UnimodularMatrix: matrix must be square and non-empty");
    }
    if (determinant<Scalar>(m_) != Scalar(1)) {
      throw std::invalid_argument("UnimodularMatrix: determinant is not 1");
    }
  }

  static UnimodularMatrix identity(int d) { return UnimodularMatrix(identity_matrix<Scalar>(d), Trusted{}); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix<Scalar>& matrix() const { return m_; }
  const Scalar& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// det = 1, so the adjugate is the inverse.
  UnimodularMatrix inverse() const { return UnimodularMatrix(adjugate<Scalar>(m_), Trusted{}); }

  friend UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("UnimodularMatrix: dimension mismatch");
    return UnimodularMatrix(Matrix<Scalar>(a.m_ * b.m_), Trusted{});
  }
  friend bool operator==(const UnimodularMatrix& a, const UnimodularMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  struct Trusted {};
  UnimodularMatrix(Matrix<Scalar> m, Trusted) : m_(std::move(m)) {}

  Matrix<Scalar> m_;
};

/// Coordinates of a traceless matrix in Z^{d^2-1}: row-major over all entries except (d,d).
template <class Scalar>
class CoordVector {
 public:
  CoordVector(int d, Vector<Scalar> coords) : d_(d), v_(std::move(coords)) {
    if (d < 1 || v_.size() != traceless_dim(d)) {
      throw std::invalid_argument("CoordVector: expected " + std::to_string(traceless_dim(d)) +
                                  " coordinates, got " + std::to_string(v_.size()));
    }
  }

  static CoordVector zero(int d) { return CoordVector(d, Vector<Scalar>::Zero(traceless_dim(d))); }
  static CoordVector basis(int d, int index) {
    Vector<Scalar> v = Vector<Scalar>::Zero(traceless_dim(d));
    v(index) = Scalar(1);
    return CoordVector(d, std::move(v));
  }

  int dim() const { return d_; }
  Eigen::Index size() const { return v_.size(); }
  const Vector<Scalar>& vector() const { return v_; }
  const Scalar& operator[](Eigen::Index i) const { return v_(i); }

  friend bool operator==(const CoordVector& a, const CoordVector& b) {
    return a.d_ == b.d_ && a.v_ == b.v_;
  }

 private:
  int d_;
  Vector<Scalar> v_;
};

template <class Scalar>
CoordVector<Scalar> coords_of(const TracelessMatrix<Scalar>& a) {
  const int d = a.dim();
  Vector<Scalar> v(traceless_dim(d));
  Eigen::Index k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      v(k++) = a(i, j);
    }
  }
  return CoordVector<Scalar>(d, std::move(v));
}

template <class Scalar>
TracelessMatrix<Scalar> coords_to(const CoordVector<Scalar>& v) {
  const int d = v.dim();
  Matrix<Scalar> m(d, d);
  Eigen::Index k = 0;
  Scalar diag(0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      m(i, j) = v[k++];
      if (i == j) diag += m(i, j);
    }
  }
  m(d - 1, d - 1) = -diag;
  return TracelessMatrix<Scalar>(std::move(m));
}

/// g^{-1} A g.
template <class Scalar>
TracelessMatrix<Scalar> conjugate(const UnimodularMatrix<Scalar>& g, const TracelessMatrix<Scalar>& a) {
  if (g.dim() != a.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
  return TracelessMatrix<Scalar>(Matrix<Scalar>(g.inverse().matrix() * a.matrix() * g.matrix()));
}

/// Matrix of h -> g^{-1} h g in the coordinates of coords_of.
template <class Scalar>
class AdjointOperator {
 public:
  AdjointOperator(int d, Matrix<Scalar> m) : d_(d), m_(std::move(m)) {
    if (m_.rows() != traceless_dim(d) || m_.cols() != traceless_dim(d)) {
      throw std::invalid_argument("AdjointOperator: wrong shape");
    }
  }

  int dim() const { return d_; }
  const Matrix<Scalar>& matrix() const { return m_; }

  CoordVector<Scalar> apply(const CoordVector<Scalar>& h) const {
    if (h.dim() != d_) throw std::invalid_argument("AdjointOperator: dimension mismatch");
    return CoordVector<Scalar>(d_, Vector<Scalar>(m_ * h.vector()));
  }

  friend bool operator==(const AdjointOperator& a, const AdjointOperator& b) {
    return a.d_ == b.d_ && a.m_ == b.m_;
  }

 private:
  int d_;
  Matrix<Scalar> m_;
};

template <class Scalar>
AdjointOperator<Scalar> adjoint_matrix(const UnimodularMatrix<Scalar>& g) {
  const int d = g.dim();
  const int n = traceless_dim(d);
  const Matrix<Scalar> ginv = g.inverse().matrix();
  Matrix<Scalar> ad(n, n);
  for (int col = 0; col < n; ++col) {
    TracelessMatrix<Scalar> e = coords_to(CoordVector<Scalar>::basis(d, col));
    TracelessMatrix<Scalar> img(Matrix<Scalar>(ginv * e.matrix() * g.matrix()));
    ad.col(col) = coords_of(img).vector();
  }
  return AdjointOperator<Scalar>(d, std::move(ad));
}

/// E_ij(s) = I + s * e_ij, i != j.
template <class Scalar>
UnimodularMatrix<Scalar> elementary(int d, int i, int j, long s) {
  if (i == j || i < 0 || j < 0 || i >= d || j >= d) {
    throw std::invalid_argument("elementary: need distinct indices in range");
  }
  Matrix<Scalar> m = identity_matrix<Scalar>(d);
  m(i, j) = Scalar(s);
  return UnimodularMatrix<Scalar>(std::move(m));
}

/// E_ij(+1), E_ij(-1) for all i != j, in row-major (i, j) order.
template <class Scalar>
std::vector<UnimodularMatrix<Scalar>> elementary_generators(int d) {
  if (d < 2) throw std::invalid_argument("elementary_generators: d must be at least 2");
  std::vector<UnimodularMatrix<Scalar>> gens;
  gens.reserve(static_cast<std::size_t>(2 * d * (d - 1)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      gens.push_back(elementary<Scalar>(d, i, j, 1));
      gens.push_back(elementary<Scalar>(d, i, j, -1));
    }
  }
  return gens;
}

/// [[1,-1],[-1,2]] in the upper-left corner, identity elsewhere.
template <class Scalar>
UnimodularMatrix<Scalar> b_matrix(int d) {
  if (d < 2) throw std::invalid_argument("b_matrix: d must be at least 2");
  Matrix<Scalar> m = identity_matrix<Scalar>(d);
  m(0, 0) = Scalar(1);
  m(0, 1) = Scalar(-1);
  m(1, 0) = Scalar(-1);
  m(1, 1) = Scalar(2);
  return UnimodularMatrix<Scalar>(std::move(m));
}

/// Companion matrix of a monic polynomial; traceless iff the subleading coefficient vanishes.
template <class Scalar>
TracelessMatrix<Scalar> traceless_companion(const Polynomial<Scalar>& p) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("traceless_companion: degree must be positive");
  if (p[d - 1] != Scalar(0)) {
    throw std::invalid_argument("traceless_companion: coefficient of lambda^(d-1) must be 0");
  }
  Matrix<Scalar> m = Matrix<Scalar>::Zero(d, d);
  for (int i = 1; i < d; ++i) m(i, i - 1) = Scalar(1);
  for (int i = 0; i < d; ++i) m(i, d - 1) = -p[i];
  return TracelessMatrix<Scalar>(std::move(m));
}

using Traceless = TracelessMatrix<BigInt>;
using Unimodular = UnimodularMatrix<BigInt>;
using Coords = CoordVector<BigInt>;
using Adjoint = AdjointOperator<BigInt>;

/// Hashable flattening of an integer matrix, used to deduplicate group elements.
struct MatrixKey {
  std::vector<BigInt> entries;

  template <class Scalar>
  static MatrixKey of(const Matrix<Scalar>& m) {
    MatrixKey key;
    key.entries.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) key.entries.emplace_back(m(i, j));
    return key;
  }

  friend bool operator==(const MatrixKey&, const MatrixKey&) = default;
};

struct MatrixKeyHash {
  std::size_t operator()(const MatrixKey& k) const {
    std::size_t h = k.entries.size();
    for (const auto& e : k.entries) h = hash_combine(h, hash_value(e));
    return h;
  }
};

}  // namespace bohrwalk

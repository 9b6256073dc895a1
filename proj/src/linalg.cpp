#include "kmlab/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace kmlab {

Vec3 Vec3::basis(std::size_t i) {
  Vec3 v;
  v[i] = 1;
  return v;
}

Vec3& Vec3::operator+=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) v_[i] += o.v_[i];
  return *this;
}

Vec3& Vec3::operator-=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) v_[i] -= o.v_[i];
  return *this;
}

Vec3& Vec3::operator*=(const Scalar& s) {
  for (auto& x : v_) x *= s;
  return *this;
}

Vec3 Vec3::operator-() const { return Vec3(-v_[0], -v_[1], -v_[2]); }

Scalar Vec3::dot(const Vec3& o) const { return v_[0] * o.v_[0] + v_[1] * o.v_[1] + v_[2] * o.v_[2]; }

bool Vec3::is_zero() const {
  for (const auto& x : v_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Scalar Vec3::max_abs() const {
  Scalar best;
  for (const auto& x : v_) {
    Scalar a = x.abs();
    if ((a - best).sign() > 0) best = a;
  }
  return best;
}

Vec3 Vec3::in_mode(Mode m) const { return Vec3(v_[0].in_mode(m), v_[1].in_mode(m), v_[2].in_mode(m)); }

Mat3::Mat3(std::initializer_list<std::initializer_list<Scalar>> rows) {
  if (rows.size() != 3) throw std::invalid_argument("Mat3 needs 3 rows");
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != 3) throw std::invalid_argument("Mat3 rows need 3 entries");
    std::size_t j = 0;
    for (const auto& x : r) m_[i][j++] = x;
    ++i;
  }
}

Mat3 Mat3::identity() { return diagonal(1, 1, 1); }

Mat3 Mat3::diagonal(const Scalar& a, const Scalar& b, const Scalar& c) {
  Mat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    m(i, 0) = c0[i];
    m(i, 1) = c1[i];
    m(i, 2) = c2[i];
  }
  return m;
}

Mat3 Mat3::outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
  return m;
}

Vec3 Mat3::column(std::size_t j) const { return Vec3(m_[0].at(j), m_[1].at(j), m_[2].at(j)); }

Vec3 Mat3::row(std::size_t i) const { return Vec3(m_.at(i)[0], m_.at(i)[1], m_.at(i)[2]); }

Mat3& Mat3::operator+=(const Mat3& o) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m_[i][j] += o.m_[i][j];
  return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m_[i][j] -= o.m_[i][j];
  return *this;
}

Mat3& Mat3::operator*=(const Scalar& s) {
  for (auto& r : m_)
    for (auto& x : r) x *= s;
  return *this;
}

Mat3 Mat3::operator-() const {
  Mat3 r = *this;
  r *= Scalar(-1);
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Scalar s;
      for (std::size_t k = 0; k < 3; ++k) s += a.m_[i][k] * b.m_[k][j];
      r.m_[i][j] = s;
    }
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = a.m_[i][0] * v[0] + a.m_[i][1] * v[1] + a.m_[i][2] * v[2];
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m_[i][j] = m_[j][i];
  return r;
}

Scalar Mat3::trace() const { return m_[0][0] + m_[1][1] + m_[2][2]; }

Scalar Mat3::determinant() const {
  const auto& m = m_;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::inverse() const {
  Scalar det = determinant();
  if (det.is_zero()) throw std::domain_error("singular matrix");
  const auto& m = m_;
  Mat3 r;
  r.m_[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  r.m_[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  r.m_[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  r.m_[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  r.m_[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  r.m_[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  r.m_[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  r.m_[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  r.m_[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  for (auto& row : r.m_)
    for (auto& x : row) x /= det;
  return r;
}

int Mat3::rank() const {
  auto a = m_;
  int rank = 0;
  for (std::size_t col = 0; col < 3 && rank < 3; ++col) {
    std::size_t pivot = 3;
    double best = -1.0;
    for (std::size_t r = static_cast<std::size_t>(rank); r < 3; ++r) {
      if (a[r][col].is_zero()) continue;
      double mag = std::fabs(a[r][col].to_double());
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot == 3) continue;
    std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
    const auto& prow = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < 3; ++r) {
      Scalar f = a[r][col] / prow[col];
      for (std::size_t c = col; c < 3; ++c) a[r][c] -= f * prow[c];
    }
    ++rank;
  }
  return rank;
}

bool Mat3::is_zero() const {
  for (const auto& r : m_)
    for (const auto& x : r)
      if (!x.is_zero()) return false;
  return true;
}

bool Mat3::is_symmetric() const { return (*this - transpose()).is_zero(); }

bool Mat3::is_antisymmetric() const { return (*this + transpose()).is_zero(); }

bool Mat3::is_diagonal() const {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && !m_[i][j].is_zero()) return false;
  return true;
}

Scalar Mat3::max_abs() const {
  Scalar best;
  for (std::size_t i = 0; i < 3; ++i) {
    Scalar r = row(i).max_abs();
    if ((r - best).sign() > 0) best = r;
  }
  return best;
}

Scalar Mat3::frobenius(const Mat3& o) const {
  Scalar s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += m_[i][j] * o.m_[i][j];
  return s;
}

Mat3 Mat3::in_mode(Mode mode) const {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m_[i][j] = m_[i][j].in_mode(mode);
  return r;
}

Vec3 Ten3::apply(const Vec3& x, const Vec3& y) const {
  Vec3 r;
  for (std::size_t k = 0; k < 3; ++k) {
    Scalar s;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s += t_[k][i][j] * x[i] * y[j];
    r[k] = s;
  }
  return r;
}

Mat3 Ten3::slice(std::size_t i) const {
  Mat3 m;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j) m(k, j) = t_[k].at(i)[j];
  return m;
}

bool Ten3::is_zero() const {
  for (const auto& a : t_)
    for (const auto& b : a)
      for (const auto& x : b)
        if (!x.is_zero()) return false;
  return true;
}

bool Ten3::is_antisymmetric_lower() const {
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j)
        if (!(t_[k][i][j] + t_[k][j][i]).is_zero()) return false;
  return true;
}

Scalar Ten3::max_abs() const {
  Scalar best;
  for (std::size_t i = 0; i < 3; ++i) {
    Scalar m = slice(i).max_abs();
    if ((m - best).sign() > 0) best = m;
  }
  return best;
}

Ten3 Ten3::in_mode(Mode m) const {
  Ten3 r;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r.t_[k][i][j] = t_[k][i][j].in_mode(m);
  return r;
}

bool Ten4::is_zero() const {
  for (const auto& a : t_)
    for (const auto& b : a)
      for (const auto& c : b)
        for (const auto& x : c)
          if (!x.is_zero()) return false;
  return true;
}

std::optional<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& a,
                                                const std::vector<Scalar>& b) {
  const std::size_t n = a.size();
  if (n == 0 || n > 3 || b.size() != n) throw std::invalid_argument("solve_linear: dimension must be 1..3");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("solve_linear: matrix must be square");
  }
  auto m = a;
  auto rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      double mag = std::fabs(m[r][col].to_double());
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Scalar f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Scalar> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Scalar s = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * x[c];
    x[i] = s / m[i][i];
  }
  return x;
}

SymEigen sym_eigen_float(const Mat3& m) {
  Mat3 f = m.in_mode(Mode::Float);
  if (!f.is_symmetric()) throw std::invalid_argument("sym_eigen_float: matrix is not symmetric");
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e(i, j) = 0.5 * (f(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double() +
                       f(static_cast<std::size_t>(j), static_cast<std::size_t>(i)).to_double());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(e);
  SymEigen out;
  for (int i = 0; i < 3; ++i) {
    out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    for (int j = 0; j < 3; ++j) {
      out.vectors(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
          Scalar::from_double(solver.eigenvectors()(j, i));
    }
  }
  return out;
}

}  // namespace kmlab

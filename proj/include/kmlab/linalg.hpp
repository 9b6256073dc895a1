#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kmlab/scalar.hpp"

namespace kmlab {

class Vec3 {
 public:
  Vec3() = default;
  Vec3(Scalar a, Scalar b, Scalar c) : v_{std::move(a), std::move(b), std::move(c)} {}

  static Vec3 basis(std::size_t i);

  Scalar& operator[](std::size_t i) { return v_.at(i); }
  const Scalar& operator[](std::size_t i) const { return v_.at(i); }

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(const Scalar& s);
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(const Scalar& s, Vec3 a) { return a *= s; }
  friend Vec3 operator*(Vec3 a, const Scalar& s) { return a *= s; }
  Vec3 operator-() const;

  /// Plain component contraction sum_i a_i b_i (covector on vector).
  Scalar dot(const Vec3& o) const;
  bool is_zero() const;
  /// Largest |component|.
  Scalar max_abs() const;
  Vec3 in_mode(Mode m) const;

  friend bool operator==(const Vec3& a, const Vec3& b) { return (a - b).is_zero(); }

 private:
  std::array<Scalar, 3> v_;
};

/// 3x3 matrix; as a (1,1)-tensor, column j holds the image of basis vector j.
class Mat3 {
 public:
  Mat3() = default;
  Mat3(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Mat3 identity();
  static Mat3 diagonal(const Scalar& a, const Scalar& b, const Scalar& c);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
  /// a ⊗ b, i.e. (a b^T)_{ij} = a_i b_j.
  static Mat3 outer(const Vec3& a, const Vec3& b);

  Scalar& operator()(std::size_t i, std::size_t j) { return m_.at(i).at(j); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return m_.at(i).at(j); }

  Vec3 column(std::size_t j) const;
  Vec3 row(std::size_t i) const;

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(const Scalar& s);
  friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend Mat3 operator*(const Scalar& s, Mat3 a) { return a *= s; }
  friend Mat3 operator*(Mat3 a, const Scalar& s) { return a *= s; }
  Mat3 operator-() const;
  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Vec3 operator*(const Mat3& a, const Vec3& v);

  Mat3 transpose() const;
  Scalar trace() const;
  Scalar determinant() const;
  /// Throws std::domain_error when singular.
  Mat3 inverse() const;
  /// Row-echelon rank (tolerance-aware in Float mode).
  int rank() const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;
  bool is_diagonal() const;
  Scalar max_abs() const;
  /// Frobenius inner product sum_ij a_ij b_ij.
  Scalar frobenius(const Mat3& o) const;
  Mat3 in_mode(Mode m) const;

  friend bool operator==(const Mat3& a, const Mat3& b) { return (a - b).is_zero(); }

 private:
  std::array<std::array<Scalar, 3>, 3> m_;
};

/// t(k, i, j) = t^k_{ij}: upper index first, then the two lower ones.
class Ten3 {
 public:
  Scalar& operator()(std::size_t k, std::size_t i, std::size_t j) { return t_.at(k).at(i).at(j); }
  const Scalar& operator()(std::size_t k, std::size_t i, std::size_t j) const { return t_.at(k).at(i).at(j); }

  /// Contract both lower slots: sum_ij t^k_{ij} x^i y^j.
  Vec3 apply(const Vec3& x, const Vec3& y) const;
  /// Matrix with entries t^k_{ij} for fixed i (k row, j column).
  Mat3 slice(std::size_t i) const;

  bool is_zero() const;
  bool is_antisymmetric_lower() const;
  Scalar max_abs() const;
  Ten3 in_mode(Mode m) const;

 private:
  std::array<std::array<std::array<Scalar, 3>, 3>, 3> t_;
};

/// r(l, i, j, k) = R^l_{ijk}.
class Ten4 {
 public:
  Scalar& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    return t_.at(l).at(i).at(j).at(k);
  }
  const Scalar& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) const {
    return t_.at(l).at(i).at(j).at(k);
  }
  bool is_zero() const;

 private:
  std::array<std::array<std::array<std::array<Scalar, 3>, 3>, 3>, 3> t_;
};

/// Dense square system of dimension 1..3.  Returns std::nullopt when the
/// matrix is singular.
std::optional<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& a,
                                                const std::vector<Scalar>& b);

struct SymEigen {
  std::array<double, 3> values;  ///< ascending
  Mat3 vectors;                  ///< orthonormal columns, Float mode
};

/// Eigen-decomposition of a symmetric matrix in Float mode.  Throws
/// std::invalid_argument when `m` is not symmetric within tolerance.
SymEigen sym_eigen_float(const Mat3& m);

}  // namespace kmlab

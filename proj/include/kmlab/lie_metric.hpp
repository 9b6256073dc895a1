#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlab/linalg.hpp"

namespace kmlab {

enum class FrameKind { Orthonormal, Artin, General };

std::string to_string(FrameKind kind);
FrameKind frame_kind_from_string(const std::string& name);

/// Left-invariant model of a 3-dimensional metric Lie algebra:
/// [e_i, e_j] = sum_k C^k_{ij} e_k and g(e_i, e_j) = G_{ij}.
class MetricLieAlgebra3 {
 public:
  MetricLieAlgebra3() : metric_(Mat3::identity()) {}
  MetricLieAlgebra3(Ten3 structure, Mat3 metric, FrameKind kind = FrameKind::General)
      : structure_(std::move(structure)), metric_(std::move(metric)), kind_(kind) {}

  const Ten3& structure() const { return structure_; }
  const Mat3& metric() const { return metric_; }
  FrameKind frame_kind() const { return kind_; }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const Vec3& v);

  Vec3 bracket(const Vec3& x, const Vec3& y) const { return structure_.apply(x, y); }
  Scalar g(const Vec3& x, const Vec3& y) const { return x.dot(metric_ * y); }
  /// Matrix of ad_x = [x, .].
  Mat3 ad(const Vec3& x) const;

  MetricLieAlgebra3 in_mode(Mode m) const;

 private:
  Ten3 structure_;
  Mat3 metric_;
  FrameKind kind_ = FrameKind::General;
};

struct Violation {
  std::string kind;             ///< "antisymmetry", "jacobi", "metric", "frame"
  std::array<int, 3> indices{-1, -1, -1};
  std::string detail;
};

std::vector<Violation> validate(const MetricLieAlgebra3& alg);

/// Thrown by operations that require a valid algebra or structure.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(std::vector<Violation> v);
  validation_error(std::string kind, std::string detail);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ConnectionCurvature {
  Ten3 christoffel;  ///< nabla_{e_i} e_j = sum_k Gamma(k, i, j) e_k
  Ten4 riemann;      ///< R(e_i, e_j) e_k = sum_l R(l, i, j, k) e_l
  Mat3 ricci;        ///< Ric(e_i, e_j)
  Scalar scalar;

  /// nabla_X as a matrix acting on component vectors.
  Mat3 nabla(const Vec3& x) const;
  Vec3 R(const Vec3& x, const Vec3& y, const Vec3& z) const;
};

/// Levi-Civita connection of the left-invariant metric from the Koszul formula.
Ten3 koszul_connection(const MetricLieAlgebra3& alg);

/// Connection, Riemann tensor, Ricci tensor Ric(X,Y) = tr(Z -> R(Z,X)Y) and
/// scalar curvature tr_g Ric.
ConnectionCurvature curvature(const MetricLieAlgebra3& alg);

/// g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2).  Throws std::domain_error on a
/// degenerate plane.
Scalar sectional_curvature(const MetricLieAlgebra3& alg, const ConnectionCurvature& cc, const Vec3& x,
                           const Vec3& y);

/// g(R(E2,E1)E1, E2), the curvature of the contact distribution in the
/// normalization used for Artin frames.
Scalar distribution_curvature(const MetricLieAlgebra3& alg, const ConnectionCurvature& cc, const Vec3& e1,
                              const Vec3& e2);

/// Traces of ad_{e_i}; all zero iff the algebra is unimodular.
Vec3 ad_traces(const MetricLieAlgebra3& alg);

/// Re-expresses the algebra in the frame f_a = sum_b P(b, a) e_b.
MetricLieAlgebra3 change_frame(const MetricLieAlgebra3& alg, const Mat3& p, FrameKind kind = FrameKind::General);

struct MilnorData {
  std::array<double, 3> lambda{};
  std::array<double, 3> mu{};
  std::array<double, 3> ricci{};  ///< r_1 = 2 mu_2 mu_3 and cyclic
  std::array<int, 3> signs{};     ///< signs of lambda, zero within 10 tau
  Mat3 frame;                     ///< columns: Milnor frame in input coordinates
  double bracket_residual = 0.0;  ///< max deviation from the Milnor bracket form
  double ricci_residual = 0.0;    ///< max |Ric(e_a, e_b) - delta_ab r_a| from curvature()
};

/// Milnor frame of a unimodular Riemannian algebra (Float mode).  The frame is
/// an eigenbasis of the self-adjoint map L with [u, v] = L(u x v).
MilnorData milnor_frame(const MetricLieAlgebra3& alg);

}  // namespace kmlab

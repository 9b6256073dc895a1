#pragma once

#include <string>
#include <vector>

#include "kmlab/lie_metric.hpp"

namespace kmlab {

/// Almost contact (epsilon = -1) or almost paracontact (epsilon = +1) metric
/// structure (phi, xi, eta) on a metric Lie algebra.
///
///   phi^2 = epsilon (Id - eta ⊗ xi),  eta(xi) = 1,
///   g(phi X, phi Y) = -epsilon (g(X,Y) - eta(X) eta(Y)).
struct StructureTensors {
  int epsilon = -1;
  Mat3 phi;  ///< column j = phi(e_j)
  Vec3 xi;
  Vec3 eta;  ///< covector components eta(e_i)
  MetricLieAlgebra3 host;

  bool is_para() const { return epsilon > 0; }
  StructureTensors in_mode(Mode m) const;
};

/// Violations of the defining identities (plus those of the host algebra).
std::vector<Violation> validate(const StructureTensors& st);

/// Re-expresses the structure in the frame f_a = sum_b P(b, a) e_b.
StructureTensors change_frame(const StructureTensors& st, const Mat3& p, FrameKind kind = FrameKind::General);

/// E1 -> f E1, E2 -> E2 / f on an Artin frame (xi, E1, E2).
StructureTensors artin_gauge(const StructureTensors& st, const Scalar& f);

/// Forms of a left-invariant structure.  Derivative terms vanish on the frame,
/// so with the alternating-sum normalizations
///   d eta(X,Y)     = -1/2 eta([X,Y])
///   d Phi(X,Y,Z)   = -1/3 (Phi([X,Y],Z) + Phi([Y,Z],X) + Phi([Z,X],Y))
///   (eta∧Phi)(X,Y,Z) = 1/3 (eta(X)Phi(Y,Z) + eta(Y)Phi(Z,X) + eta(Z)Phi(X,Y)).
/// The 3-forms are stored by their value on (e_0, e_1, e_2).
struct FormData {
  Mat3 Phi;  ///< Phi(e_i, e_j) = g(e_i, phi e_j)
  Mat3 dEta;
  Scalar dPhi;
  Scalar etaWedgePhi;
};

FormData fundamental_forms(const StructureTensors& st);

/// Evaluates a top-degree form with frame value `coeff` on (x, y, z).
Scalar eval_volume_form(const Scalar& coeff, const Vec3& x, const Vec3& y, const Vec3& z);

/// (L_xi T) = ad_xi T - T ad_xi for a (1,1)-tensor on left-invariant fields.
Mat3 lie_derivative_along(const MetricLieAlgebra3& alg, const Vec3& v, const Mat3& t);

/// h = 1/2 L_xi phi.
Mat3 compute_h(const StructureTensors& st);

/// N(k, i, j): components of N_phi(e_i, e_j).
Ten3 nijenhuis(const StructureTensors& st);

/// N_phi - 2 epsilon d eta ⊗ xi; zero iff the structure is normal.
Ten3 normality_tensor(const StructureTensors& st);

enum class StructureClass {
  ContactMetric,
  AlmostCosymplectic,
  AlmostKenmotsu,
  ParacontactMetric,
  AlmostParacosymplectic,
  AlmostParaKenmotsu,
  Other,
};

struct ClassTag {
  StructureClass kind = StructureClass::Other;
  bool normal = false;
  Scalar u;         ///< d eta = u Phi (best fit when not proportional)
  Scalar f;         ///< d Phi = 2 f eta∧Phi
  Scalar residual;  ///< max |d eta - u Phi|

  /// Stable identifier, e.g. "ContactMetric".
  std::string name() const;
  /// Human label; normal contact metric reads "Sasakian" and so on.
  std::string display() const;
};

ClassTag classify_structure(const StructureTensors& st);

}  // namespace kmlab

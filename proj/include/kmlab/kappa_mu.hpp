#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmlab/structure.hpp"

namespace kmlab {

enum class NullityKind { KappaMu, KappaOnly, None };
std::string to_string(NullityKind k);

struct KappaMuReport {
  std::optional<Scalar> kappa;
  std::optional<Scalar> mu;  ///< empty when h = 0: mu is not determined
  int h_rank = 0;
  NullityKind nullity_kind = NullityKind::None;
  /// max |R(X,Y)xi - eta(Y) J X + eta(X) J Y| over frame pairs
  Scalar pattern_residual;
  /// max |J - kappa (Id - xi⊗eta) - mu h| (zero for KappaMu / KappaOnly)
  Scalar residual;
  std::string note;
};

/// Everything the engine derives from a structure, computed once.
struct Analysis {
  StructureTensors st;
  ConnectionCurvature cc;
  FormData forms;
  Mat3 h;
  ClassTag tag;
  KappaMuReport kmu;
};

/// J_xi X = R(X, xi) xi.
Mat3 jacobi_operator(const StructureTensors& st, const ConnectionCurvature& cc);

KappaMuReport solve_kappa_mu(const StructureTensors& st, const ConnectionCurvature& cc, const Mat3& h);
KappaMuReport solve_kappa_mu(const StructureTensors& st);

/// Validates, then runs connection, curvature, forms, h, class and (kappa, mu).
Analysis analyze(const StructureTensors& st);

/// g' = alpha g + alpha(alpha-1) eta⊗eta, xi' = xi/alpha, eta' = alpha eta,
/// phi' = phi on the same frame.  Throws std::invalid_argument for alpha <= 0.
StructureTensors d_homothety(const StructureTensors& st, const Scalar& alpha);

/// D-homothety followed by the renormalized Artin frame
/// (xi/alpha, E1/sqrt(alpha), E2/sqrt(alpha)).  Exact mode needs alpha to be a
/// rational square; otherwise std::invalid_argument.
StructureTensors d_homothety_artin(const StructureTensors& st, const Scalar& alpha);

enum class InvariantKind { BoeckxI, DackoOlszakC, ParaE, ParaF };
std::string to_string(InvariantKind k);

struct InvariantReport {
  InvariantKind kind = InvariantKind::BoeckxI;
  bool defined = false;
  RootExpr value;  ///< I and C carry a square root; E and F are rational
  std::string reason;
};

/// The invariant belonging to the structure class: I (contact metric, kappa < 1),
/// C (almost cosymplectic, kappa < 0), E (paracontact, kappa != -1),
/// F (almost paracosymplectic, kappa != 0).  An undefined invariant is listed
/// with its reason; classes without an invariant yield an empty list.
std::vector<InvariantReport> invariants(const ClassTag& tag, const KappaMuReport& kmu);

enum class GroupName { SU2_or_SO3, SL2R_or_O12, E2, E11, E2_or_E11, Heisenberg, Unlisted, NotClassified };

struct GroupClass {
  GroupName group = GroupName::NotClassified;
  int table = 0;       ///< 1..4, 0 when not classified
  std::string range;   ///< invariant range of the table row
  std::string reason;  ///< why the structure is not classified

  std::string name() const;
  std::string description() const;
};

/// ad_xi restricted to D = ker eta is nilpotent and non-zero.
bool nilpotent_reeb_action(const StructureTensors& st);

GroupClass classify_group(const StructureTensors& st, const ClassTag& tag, const KappaMuReport& kmu,
                          const std::vector<InvariantReport>& inv);
GroupClass classify_group(const Analysis& a);

/// "group | description | range", e.g. "SO(3) or SU(2) | simple, compact | I>1".
std::string emit_table_row(const GroupClass& g);

}  // namespace kmlab

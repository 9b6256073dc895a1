#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlab/structure.hpp"

namespace kmlab {

/// Unknown family names, unknown or missing parameters.
class family_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FamilyKind {
  ContactType,     ///< (k, lambda, c), orthonormal frame (xi, E1, E2), phi E1 = E2
  NilpotentCase1,  ///< (k, lambda), [xi, E1] = 0
  NilpotentCase2,  ///< (k, lambda), [E2, xi] = 0
  Para,            ///< (u, a, b, c), Artin frame, d = -a, p = 0
  ParaGeneral,     ///< (p1, p2, a, b, c, d, u)
  PcmCanonical,    ///< (kappa, mu, epsilon, b)
  ApcosCanonical,  ///< (kappa, mu, epsilon, b)
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::ContactType;
  std::map<std::string, Scalar> params;

  /// Looks up a family by its CLI name ("contact", "nilpotent1", "nilpotent2",
  /// "para", "para-general", "pcm-canonical", "apcos-canonical").  Every
  /// parameter must be supplied exactly once.
  static FamilySpec make(const std::string& name, const std::map<std::string, Scalar>& params);

  const Scalar& at(const std::string& key) const;
  std::string name() const;
};

std::string family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);
/// Parameter names in canonical order.
const std::vector<std::string>& family_parameters(FamilyKind kind);
std::vector<std::string> family_names();

/// Constructs the algebra and structure.  Throws validation_error naming the
/// violated constraint (Jacobi conditions, epsilon, b = 0 requirements).
StructureTensors build(const FamilySpec& spec);

struct KappaMu {
  Scalar kappa;
  Scalar mu;
};

/// Closed-form (kappa, mu) for the family; nullopt for ParaGeneral outside the
/// p = 0, a + d = 0 setting where no closed form applies.
std::optional<KappaMu> expected_kappa_mu(const FamilySpec& spec);

struct RicciForm {
  Scalar r1, r2, r3, scalar;
};

/// Principal Ricci curvatures on (xi, E1, E2) and scalar curvature for the
/// Riemannian families (ContactType and the nilpotent cases).
RicciForm expected_ricci(const FamilySpec& spec);

}  // namespace kmlab

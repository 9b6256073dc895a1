#pragma once

#include <string>
#include <vector>

#include "kmlab/kappa_mu.hpp"

namespace kmlab {

enum class IdentityId {
  BKP_nabla_phi,
  BKP_nabla_h,
  Olszak_leaves,
  DO_lie,
  PCM_nabla_phi,
  PCM_nabla_xi,
  PCOS_nabla_phi,
  PCOS_nabla_xi,
  GENERAL_covdiv,
  DIM3_covdiv,
  H2_decomp,
  MUH_covh,
};

std::string to_string(IdentityId id);
/// Throws std::invalid_argument for unknown names.
IdentityId identity_from_string(const std::string& name);
const std::vector<IdentityId>& all_identities();

enum class IdentityStatus { Pass, Fail, Skipped };
std::string to_string(IdentityStatus s);

struct IdentityResult {
  IdentityId id = IdentityId::BKP_nabla_phi;
  IdentityStatus status = IdentityStatus::Skipped;
  Scalar residual;     ///< max |lhs - rhs| over all frame arguments
  std::string reason;  ///< set when skipped
};

/// Evaluates both sides of the identity on every frame tuple.  Identities whose
/// hypotheses do not hold for the analysed class are skipped with a reason.
IdentityResult verify_identity(const Analysis& a, IdentityId id);
std::vector<IdentityResult> verify_identities(const Analysis& a, const std::vector<IdentityId>& ids);

}  // namespace kmlab

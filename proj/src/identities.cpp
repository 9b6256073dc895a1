#include "kmlab/identities.hpp"

#include <array>
#include <stdexcept>

namespace kmlab {

namespace {

struct Entry {
  IdentityId id;
  const char* name;
};

constexpr std::array<Entry, 12> kEntries{{
    {IdentityId::BKP_nabla_phi, "BKP_nabla_phi"},
    {IdentityId::BKP_nabla_h, "BKP_nabla_h"},
    {IdentityId::Olszak_leaves, "Olszak_leaves"},
    {IdentityId::DO_lie, "DO_lie"},
    {IdentityId::PCM_nabla_phi, "PCM_nabla_phi"},
    {IdentityId::PCM_nabla_xi, "PCM_nabla_xi"},
    {IdentityId::PCOS_nabla_phi, "PCOS_nabla_phi"},
    {IdentityId::PCOS_nabla_xi, "PCOS_nabla_xi"},
    {IdentityId::GENERAL_covdiv, "GENERAL_covdiv"},
    {IdentityId::DIM3_covdiv, "DIM3_covdiv"},
    {IdentityId::H2_decomp, "H2_decomp"},
    {IdentityId::MUH_covh, "MUH_covh"},
}};

// Running maximum of absolute residuals.
class Residual {
 public:
  void add(const Scalar& s) {
    Scalar a = s.abs();
    if ((a - max_).sign() > 0) max_ = a;
  }
  void add(const Vec3& v) { add(v.max_abs()); }
  void add(const Mat3& m) { add(m.max_abs()); }
  const Scalar& value() const { return max_; }

 private:
  Scalar max_;
};

// (nabla_X T) as a matrix, for a (1,1)-tensor T.
Mat3 cov(const ConnectionCurvature& cc, const Vec3& x, const Mat3& t) {
  const Mat3 n = cc.nabla(x);
  return n * t - t * n;
}

bool has_kappa_mu(const Analysis& a) { return a.kmu.nullity_kind != NullityKind::None; }

Scalar mu_or_zero(const Analysis& a) { return a.kmu.mu ? *a.kmu.mu : Scalar(0); }

const Vec3& e(std::size_t i) {
  static const std::array<Vec3, 3> basis{Vec3::basis(0), Vec3::basis(1), Vec3::basis(2)};
  return basis[i];
}

Scalar nabla_phi_residual(const Analysis& a, Scalar sign_g, Scalar sign_h, bool cosym) {
  // contact:   (nabla_X phi)Y =  g(X, Y + hY) xi - eta(Y)(X + hX)
  // para:      (nabla_X phi)Y = -g(X, Y - hY) xi + eta(Y)(X - hX)
  // paracosym: (nabla_X phi)Y =  g(X, hY) xi - eta(Y) hX
  const auto& st = a.st;
  const auto& alg = st.host;
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Mat3 lhs = cov(a.cc, e(i), st.phi);
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec3 y = e(j);
      Vec3 rhs;
      if (cosym) {
        rhs = alg.g(e(i), a.h * y) * st.xi - st.eta[j] * (a.h * e(i));
      } else {
        rhs = sign_g * (alg.g(e(i), y + sign_h * (a.h * y)) * st.xi - st.eta[j] * (e(i) + sign_h * (a.h * e(i))));
      }
      r.add(lhs * y - rhs);
    }
  }
  return r.value();
}

Scalar bkp_nabla_h(const Analysis& a) {
  const auto& st = a.st;
  const auto& alg = st.host;
  const Scalar one_minus_k = Scalar(1) - *a.kmu.kappa;
  const Scalar mu = mu_or_zero(a);
  const Mat3 phih = st.phi * a.h;
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& x = e(i);
    const Mat3 lhs = cov(a.cc, x, a.h);
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec3& y = e(j);
      Vec3 rhs = (one_minus_k * alg.g(x, st.phi * y) - alg.g(x, phih * y)) * st.xi -
                 st.eta[j] * (one_minus_k * (st.phi * x) + phih * x) - mu * st.eta[i] * (phih * y);
      r.add(lhs * y - rhs);
    }
  }
  return r.value();
}

Scalar olszak_leaves(const Analysis& a) {
  const auto& st = a.st;
  const auto& alg = st.host;
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& x = e(i);
    const Vec3 ax = -(a.cc.nabla(x) * st.xi);
    const Vec3 phi_ax = st.phi * ax;
    const Mat3 lhs = cov(a.cc, x, st.phi);
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec3& y = e(j);
      r.add(lhs * y - (-alg.g(phi_ax, y) * st.xi + st.eta[j] * phi_ax));
    }
  }
  return r.value();
}

Scalar do_lie(const Analysis& a) {
  const auto& st = a.st;
  const Scalar kappa = *a.kmu.kappa;
  const Scalar mu = mu_or_zero(a);
  const Mat3 phih = st.phi * a.h;
  Residual r;
  r.add(lie_derivative_along(st.host, st.xi, st.phi) - Scalar(2) * a.h);
  r.add(lie_derivative_along(st.host, st.xi, a.h) + Scalar(2) * kappa * st.phi + mu * phih);
  r.add(lie_derivative_along(st.host, st.xi, phih) - mu * a.h);
  return r.value();
}

Scalar nabla_xi(const Analysis& a, bool paracosym) {
  // paracontact: nabla_X xi = -phi X + phi h X; paracosymplectic: phi h X
  const auto& st = a.st;
  const Mat3 phih = st.phi * a.h;
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    Vec3 rhs = phih * e(i);
    if (!paracosym) rhs = rhs - st.phi * e(i);
    r.add(a.cc.nabla(e(i)) * st.xi - rhs);
  }
  return r.value();
}

Scalar general_covdiv(const Analysis& a) {
  const auto& st = a.st;
  const auto& alg = st.host;
  const auto& fd = a.forms;
  const Ten3 n1 = normality_tensor(st);
  const Scalar two(2);
  const Scalar three(3);
  auto deta = [&](const Vec3& x, const Vec3& y) { return x.dot(fd.dEta * y); };
  auto n2 = [&](const Vec3& y, const Vec3& z) {
    return -st.eta.dot(alg.bracket(st.phi * y, z)) + st.eta.dot(alg.bracket(st.phi * z, y));
  };
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& x = e(i);
    const Mat3 nphi = cov(a.cc, x, st.phi);
    const Vec3 px = st.phi * x;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const Vec3& y = e(j);
        const Vec3& z = e(k);
        const Vec3 py = st.phi * y;
        const Vec3 pz = st.phi * z;
        Scalar lhs = two * alg.g(nphi * y, z);
        Scalar rhs = -three * eval_volume_form(fd.dPhi, x, py, pz) - three * eval_volume_form(fd.dPhi, x, y, z) -
                     alg.g(n1.apply(y, z), px) + n2(y, z) * st.eta[i] + two * deta(py, x) * st.eta[k] -
                     two * deta(pz, x) * st.eta[j];
        r.add(lhs - rhs);
      }
  }
  return r.value();
}

Scalar dim3_covdiv(const Analysis& a) {
  const auto& st = a.st;
  const auto& alg = st.host;
  const auto& fd = a.forms;
  const Scalar f = a.tag.f;
  auto term = [&](const Vec3& y, const Vec3& x) {
    return f * y.dot(fd.Phi * x) + (st.phi * y).dot(fd.dEta * x) + alg.g(a.h * y, x);
  };
  Residual r;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& x = e(i);
    const Mat3 nphi = cov(a.cc, x, st.phi);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const Vec3& y = e(j);
        const Vec3& z = e(k);
        r.add(alg.g(nphi * y, z) - (term(y, x) * st.eta[k] - term(z, x) * st.eta[j]));
      }
  }
  // d Phi = 2 f eta∧Phi
  r.add(fd.dPhi - Scalar(2) * f * fd.etaWedgePhi);
  return r.value();
}

Scalar h2_decomp(const Analysis& a) {
  const auto& st = a.st;
  const Mat3 proj = Mat3::identity() - Mat3::outer(st.xi, st.eta);
  Scalar c = *a.kmu.kappa;
  if (a.tag.kind == StructureClass::ParacontactMetric) c = c + Scalar(1);
  return (a.h * a.h - c * proj).max_abs();
}

Scalar muh_covh(const Analysis& a) {
  const auto& st = a.st;
  return (mu_or_zero(a) * a.h + st.phi * cov(a.cc, st.xi, a.h)).max_abs();
}

IdentityResult skipped(IdentityId id, std::string reason) {
  IdentityResult r;
  r.id = id;
  r.status = IdentityStatus::Skipped;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

std::string to_string(IdentityId id) {
  for (const auto& en : kEntries) {
    if (en.id == id) return en.name;
  }
  return "";
}

IdentityId identity_from_string(const std::string& name) {
  for (const auto& en : kEntries) {
    if (name == en.name) return en.id;
  }
  throw std::invalid_argument("unknown identity '" + name + "'");
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> v;
    for (const auto& en : kEntries) v.push_back(en.id);
    return v;
  }();
  return ids;
}

std::string to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::Pass:
      return "pass";
    case IdentityStatus::Fail:
      return "fail";
    case IdentityStatus::Skipped:
      return "skipped";
  }
  return "skipped";
}

IdentityResult verify_identity(const Analysis& a, IdentityId id) {
  const StructureClass k = a.tag.kind;
  const bool contact = k == StructureClass::ContactMetric;
  const bool acos = k == StructureClass::AlmostCosymplectic;
  const bool pcm = k == StructureClass::ParacontactMetric;
  const bool pcos = k == StructureClass::AlmostParacosymplectic;
  const char* need_km = "requires a (κ,μ)-space";

  Scalar res;
  switch (id) {
    case IdentityId::BKP_nabla_phi:
      if (!contact) return skipped(id, "contact metric only");
      res = nabla_phi_residual(a, Scalar(1), Scalar(1), false);
      break;
    case IdentityId::BKP_nabla_h:
      if (!contact) return skipped(id, "contact metric only");
      if (!has_kappa_mu(a)) return skipped(id, need_km);
      res = bkp_nabla_h(a);
      break;
    case IdentityId::Olszak_leaves:
      if (!acos) return skipped(id, "almost cosymplectic only");
      res = olszak_leaves(a);
      break;
    case IdentityId::DO_lie:
      if (!acos) return skipped(id, "almost cosymplectic only");
      if (!has_kappa_mu(a)) return skipped(id, need_km);
      res = do_lie(a);
      break;
    case IdentityId::PCM_nabla_phi:
      if (!pcm) return skipped(id, "paracontact metric only");
      res = nabla_phi_residual(a, Scalar(-1), Scalar(-1), false);
      break;
    case IdentityId::PCM_nabla_xi:
      if (!pcm) return skipped(id, "paracontact metric only");
      res = nabla_xi(a, false);
      break;
    case IdentityId::PCOS_nabla_phi:
      if (!pcos) return skipped(id, "almost paracosymplectic only");
      res = nabla_phi_residual(a, Scalar(1), Scalar(1), true);
      break;
    case IdentityId::PCOS_nabla_xi:
      if (!pcos) return skipped(id, "almost paracosymplectic only");
      res = nabla_xi(a, true);
      break;
    case IdentityId::GENERAL_covdiv:
      if (!a.st.is_para()) return skipped(id, "almost paracontact metric only");
      res = general_covdiv(a);
      break;
    case IdentityId::DIM3_covdiv:
      if (!a.st.is_para()) return skipped(id, "almost paracontact metric only");
      res = dim3_covdiv(a);
      break;
    case IdentityId::H2_decomp:
      if (!pcm && !pcos) return skipped(id, "paracontact or almost paracosymplectic only");
      if (!has_kappa_mu(a)) return skipped(id, need_km);
      res = h2_decomp(a);
      break;
    case IdentityId::MUH_covh:
      if (!pcm && !pcos) return skipped(id, "paracontact or almost paracosymplectic only");
      if (!has_kappa_mu(a)) return skipped(id, need_km);
      res = muh_covh(a);
      break;
  }
  IdentityResult r;
  r.id = id;
  r.residual = res;
  r.status = res.is_zero() ? IdentityStatus::Pass : IdentityStatus::Fail;
  return r;
}

std::vector<IdentityResult> verify_identities(const Analysis& a, const std::vector<IdentityId>& ids) {
  std::vector<IdentityResult> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(verify_identity(a, id));
  return out;
}

}  // namespace kmlab

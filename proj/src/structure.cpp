#include "kmlab/structure.hpp"

#include <sstream>

namespace kmlab {

StructureTensors StructureTensors::in_mode(Mode m) const {
  StructureTensors s = *this;
  s.phi = phi.in_mode(m);
  s.xi = xi.in_mode(m);
  s.eta = eta.in_mode(m);
  s.host = host.in_mode(m);
  return s;
}

std::vector<Violation> validate(const StructureTensors& st) {
  std::vector<Violation> out = validate(st.host);
  if (st.epsilon != -1 && st.epsilon != 1) {
    out.push_back({"structure", {-1, -1, -1}, "epsilon must be -1 (contact type) or +1 (para type)"});
    return out;
  }
  const Scalar eps(st.epsilon);
  const Mat3& g = st.host.metric();
  const Mat3 proj = Mat3::identity() - Mat3::outer(st.xi, st.eta);

  if (!(st.eta.dot(st.xi) == Scalar(1))) out.push_back({"structure", {-1, -1, -1}, "eta(xi) != 1"});
  if (!(st.phi * st.phi == eps * proj)) {
    out.push_back({"structure", {-1, -1, -1},
                   st.epsilon < 0 ? "phi^2 != -Id + eta⊗xi" : "phi^2 != Id - eta⊗xi"});
  }
  Mat3 compat = st.phi.transpose() * g * st.phi + eps * (g - Mat3::outer(st.eta, st.eta));
  if (!compat.is_zero()) {
    out.push_back({"structure", {-1, -1, -1},
                   st.epsilon < 0 ? "g(phi X, phi Y) != g(X,Y) - eta(X)eta(Y)"
                                  : "g(phi X, phi Y) != -g(X,Y) + eta(X)eta(Y)"});
  }
  if (!(st.phi * st.xi).is_zero()) out.push_back({"structure", {-1, -1, -1}, "phi xi != 0"});
  Vec3 eta_phi = st.phi.transpose() * st.eta;
  if (!eta_phi.is_zero()) out.push_back({"structure", {-1, -1, -1}, "eta o phi != 0"});
  // eta(X) = g(xi, X) for both signatures.
  if (!(g * st.xi == st.eta)) out.push_back({"structure", {-1, -1, -1}, "eta is not the metric dual of xi"});

  if (out.empty()) {
    if (fundamental_forms(st).etaWedgePhi.is_zero()) {
      out.push_back({"structure", {-1, -1, -1}, "eta∧Phi vanishes (volume condition)"});
    }
  }
  return out;
}

StructureTensors change_frame(const StructureTensors& st, const Mat3& p, FrameKind kind) {
  const Mat3 pinv = p.inverse();
  StructureTensors out;
  out.epsilon = st.epsilon;
  out.host = change_frame(st.host, p, kind);
  out.phi = pinv * st.phi * p;
  out.xi = pinv * st.xi;
  out.eta = p.transpose() * st.eta;
  return out;
}

StructureTensors artin_gauge(const StructureTensors& st, const Scalar& f) {
  if (f.is_zero()) throw std::invalid_argument("Artin gauge factor must be non-zero");
  return change_frame(st, Mat3::diagonal(1, f, Scalar(1) / f), st.host.frame_kind());
}

Scalar eval_volume_form(const Scalar& coeff, const Vec3& x, const Vec3& y, const Vec3& z) {
  return coeff * Mat3::from_columns(x, y, z).determinant();
}

FormData fundamental_forms(const StructureTensors& st) {
  FormData fd;
  const auto& alg = st.host;
  fd.Phi = alg.metric() * st.phi;

  const Scalar half(1, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      fd.dEta(i, j) = -half * st.eta.dot(alg.bracket(Vec3::basis(i), Vec3::basis(j)));
    }

  auto phi_form = [&](const Vec3& x, const Vec3& y) { return x.dot(fd.Phi * y); };
  const Vec3 e0 = Vec3::basis(0);
  const Vec3 e1 = Vec3::basis(1);
  const Vec3 e2 = Vec3::basis(2);
  const Scalar third(1, 3);
  fd.dPhi = -third * (phi_form(alg.bracket(e0, e1), e2) + phi_form(alg.bracket(e1, e2), e0) +
                      phi_form(alg.bracket(e2, e0), e1));
  fd.etaWedgePhi = third * (st.eta[0] * fd.Phi(1, 2) + st.eta[1] * fd.Phi(2, 0) + st.eta[2] * fd.Phi(0, 1));
  return fd;
}

Mat3 lie_derivative_along(const MetricLieAlgebra3& alg, const Vec3& v, const Mat3& t) {
  const Mat3 ad = alg.ad(v);
  return ad * t - t * ad;
}

Mat3 compute_h(const StructureTensors& st) {
  Mat3 h = Scalar(1, 2) * lie_derivative_along(st.host, st.xi, st.phi);
  if (!(h * st.xi).is_zero()) throw std::logic_error("h xi != 0");
  const FormData fd = fundamental_forms(st);
  if ((fd.dEta.transpose() * st.xi).is_zero() && !(h * st.phi + st.phi * h).is_zero()) {
    throw std::logic_error("h and phi fail to anticommute although xi ⌟ d eta = 0");
  }
  return h;
}

Ten3 nijenhuis(const StructureTensors& st) {
  const auto& alg = st.host;
  const Mat3 phi2 = st.phi * st.phi;
  Ten3 n;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec3 x = Vec3::basis(i);
      const Vec3 y = Vec3::basis(j);
      const Vec3 px = st.phi * x;
      const Vec3 py = st.phi * y;
      Vec3 v = phi2 * alg.bracket(x, y) + alg.bracket(px, py) - st.phi * (alg.bracket(px, y) + alg.bracket(x, py));
      for (std::size_t k = 0; k < 3; ++k) n(k, i, j) = v[k];
    }
  return n;
}

Ten3 normality_tensor(const StructureTensors& st) {
  Ten3 n = nijenhuis(st);
  const FormData fd = fundamental_forms(st);
  const Scalar two_eps(2 * st.epsilon);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) n(k, i, j) -= two_eps * fd.dEta(i, j) * st.xi[k];
  return n;
}

std::string ClassTag::name() const {
  switch (kind) {
    case StructureClass::ContactMetric:
      return "ContactMetric";
    case StructureClass::AlmostCosymplectic:
      return "AlmostCosymplectic";
    case StructureClass::AlmostKenmotsu:
      return "AlmostKenmotsu";
    case StructureClass::ParacontactMetric:
      return "ParacontactMetric";
    case StructureClass::AlmostParacosymplectic:
      return "AlmostParacosymplectic";
    case StructureClass::AlmostParaKenmotsu:
      return "AlmostParaKenmotsu";
    case StructureClass::Other:
      return "Other";
  }
  return "Other";
}

std::string ClassTag::display() const {
  switch (kind) {
    case StructureClass::ContactMetric:
      return normal ? "Sasakian" : "contact metric";
    case StructureClass::AlmostCosymplectic:
      return normal ? "cosymplectic" : "almost cosymplectic";
    case StructureClass::AlmostKenmotsu:
      return (normal ? "Kenmotsu" : "almost Kenmotsu") + std::string(" (f = ") + f.str() + ")";
    case StructureClass::ParacontactMetric:
      return normal ? "para-Sasakian" : "paracontact metric";
    case StructureClass::AlmostParacosymplectic:
      return normal ? "paracosymplectic" : "almost paracosymplectic";
    case StructureClass::AlmostParaKenmotsu:
      return (normal ? "para-Kenmotsu" : "almost para-Kenmotsu") + std::string(" (f = ") + f.str() + ")";
    case StructureClass::Other:
      return "other (u = " + u.str() + ", f = " + f.str() + ")";
  }
  return "other";
}

ClassTag classify_structure(const StructureTensors& st) {
  if (auto v = validate(st); !v.empty()) throw validation_error(std::move(v));
  const FormData fd = fundamental_forms(st);
  ClassTag tag;
  tag.normal = normality_tensor(st).is_zero();
  tag.u = fd.dEta.frobenius(fd.Phi) / fd.Phi.frobenius(fd.Phi);
  tag.residual = (fd.dEta - tag.u * fd.Phi).max_abs();
  tag.f = fd.dPhi / (Scalar(2) * fd.etaWedgePhi);

  const bool para = st.is_para();
  if (!tag.residual.is_zero()) {
    tag.kind = StructureClass::Other;
  } else if (tag.u == Scalar(1)) {
    tag.kind = para ? StructureClass::ParacontactMetric : StructureClass::ContactMetric;
  } else if (tag.u.is_zero()) {
    if (tag.f.is_zero()) {
      tag.kind = para ? StructureClass::AlmostParacosymplectic : StructureClass::AlmostCosymplectic;
    } else {
      tag.kind = para ? StructureClass::AlmostParaKenmotsu : StructureClass::AlmostKenmotsu;
    }
  } else {
    tag.kind = StructureClass::Other;
  }
  return tag;
}

}  // namespace kmlab

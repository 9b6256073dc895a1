#include "kmlab/families.hpp"

#include <algorithm>

namespace kmlab {

namespace {

struct FamilyInfo {
  FamilyKind kind;
  const char* name;
  std::vector<std::string> params;
};

const std::vector<FamilyInfo>& registry() {
  static const std::vector<FamilyInfo> r = {
      {FamilyKind::ContactType, "contact", {"k", "lambda", "c"}},
      {FamilyKind::NilpotentCase1, "nilpotent1", {"k", "lambda"}},
      {FamilyKind::NilpotentCase2, "nilpotent2", {"k", "lambda"}},
      {FamilyKind::Para, "para", {"u", "a", "b", "c"}},
      {FamilyKind::ParaGeneral, "para-general", {"p1", "p2", "a", "b", "c", "d", "u"}},
      {FamilyKind::PcmCanonical, "pcm-canonical", {"kappa", "mu", "epsilon", "b"}},
      {FamilyKind::ApcosCanonical, "apcos-canonical", {"kappa", "mu", "epsilon", "b"}},
  };
  return r;
}

const FamilyInfo& info(FamilyKind kind) {
  for (const auto& f : registry()) {
    if (f.kind == kind) return f;
  }
  throw family_error("unregistered family");
}

// Orthonormal (xi, E1, E2) with phi E1 = E2, phi E2 = -E1.
StructureTensors contact_frame_structure() {
  StructureTensors st;
  st.epsilon = -1;
  st.phi(2, 1) = 1;
  st.phi(1, 2) = -1;
  st.xi = Vec3::basis(0);
  st.eta = Vec3::basis(0);
  return st;
}

// Artin (xi, E1, E2) with phi E1 = E1, phi E2 = -E2.
StructureTensors artin_frame_structure() {
  StructureTensors st;
  st.epsilon = 1;
  st.phi(1, 1) = 1;
  st.phi(2, 2) = -1;
  st.xi = Vec3::basis(0);
  st.eta = Vec3::basis(0);
  return st;
}

StructureTensors contact_type(const Scalar& k, const Scalar& lambda, const Scalar& c) {
  StructureTensors st = contact_frame_structure();
  Ten3 t;
  MetricLieAlgebra3 alg(t, Mat3::identity(), FrameKind::Orthonormal);
  alg.set_bracket(1, 2, Vec3(Scalar(2) * k, 0, 0));        // [E1,E2] = 2k xi
  alg.set_bracket(2, 0, Vec3(0, -(lambda + c), 0));         // [E2,xi] = -(lambda+c) E1
  alg.set_bracket(0, 1, Vec3(0, 0, lambda - c));            // [xi,E1] = (lambda-c) E2
  st.host = alg;
  return st;
}

StructureTensors para_general(const Scalar& p1, const Scalar& p2, const Scalar& a, const Scalar& b,
                              const Scalar& c, const Scalar& d, const Scalar& u) {
  const Scalar tr = a + d;
  if (!(u * tr).is_zero()) {
    throw validation_error("jacobi", "u(a+d) = 0 violated: u = " + u.str() + ", a+d = " + tr.str());
  }
  // (A - (a+d) I) p with A = [[a, c], [b, d]]
  const Scalar r1 = (a - tr) * p1 + c * p2;
  const Scalar r2 = b * p1 + (d - tr) * p2;
  if (!r1.is_zero() || !r2.is_zero()) {
    throw validation_error("jacobi", "(A - (a+d)I)p = 0 violated: residual (" + r1.str() + ", " + r2.str() + ")");
  }
  StructureTensors st = artin_frame_structure();
  MetricLieAlgebra3 alg(Ten3{}, Mat3{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, FrameKind::Artin);
  alg.set_bracket(1, 2, Vec3(Scalar(2) * u, p1, p2));
  alg.set_bracket(0, 1, Vec3(0, a, b));
  alg.set_bracket(0, 2, Vec3(0, c, d));
  st.host = alg;
  return st;
}

void require_sign(const Scalar& eps) {
  if (!(eps == Scalar(1)) && !(eps == Scalar(-1))) {
    throw validation_error("family", "epsilon must be +1 or -1, got " + eps.str());
  }
}

}  // namespace

std::string family_name(FamilyKind kind) { return info(kind).name; }

FamilyKind family_from_name(const std::string& name) {
  for (const auto& f : registry()) {
    if (name == f.name) return f.kind;
  }
  throw family_error("unknown family '" + name + "'");
}

const std::vector<std::string>& family_parameters(FamilyKind kind) { return info(kind).params; }

std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (const auto& f : registry()) out.emplace_back(f.name);
  return out;
}

FamilySpec FamilySpec::make(const std::string& name, const std::map<std::string, Scalar>& params) {
  FamilySpec spec;
  spec.kind = family_from_name(name);
  const auto& expected = family_parameters(spec.kind);
  for (const auto& [key, value] : params) {
    if (std::find(expected.begin(), expected.end(), key) == expected.end()) {
      throw family_error("family '" + name + "' has no parameter '" + key + "'");
    }
    spec.params.emplace(key, value);
  }
  for (const auto& key : expected) {
    if (spec.params.count(key) == 0) throw family_error("family '" + name + "' is missing parameter '" + key + "'");
  }
  return spec;
}

const Scalar& FamilySpec::at(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw family_error("missing parameter '" + key + "'");
  return it->second;
}

std::string FamilySpec::name() const { return family_name(kind); }

StructureTensors build(const FamilySpec& spec) {
  StructureTensors st;
  switch (spec.kind) {
    case FamilyKind::ContactType:
      st = contact_type(spec.at("k"), spec.at("lambda"), spec.at("c"));
      break;
    case FamilyKind::NilpotentCase1:
      st = contact_type(spec.at("k"), spec.at("lambda"), spec.at("lambda"));
      break;
    case FamilyKind::NilpotentCase2:
      st = contact_type(spec.at("k"), spec.at("lambda"), -spec.at("lambda"));
      break;
    case FamilyKind::Para: {
      const Scalar& a = spec.at("a");
      st = para_general(0, 0, a, spec.at("b"), spec.at("c"), -a, spec.at("u"));
      break;
    }
    case FamilyKind::ParaGeneral:
      st = para_general(spec.at("p1"), spec.at("p2"), spec.at("a"), spec.at("b"), spec.at("c"), spec.at("d"),
                        spec.at("u"));
      break;
    case FamilyKind::PcmCanonical: {
      const Scalar& kappa = spec.at("kappa");
      const Scalar& eps = spec.at("epsilon");
      const Scalar& b = spec.at("b");
      require_sign(eps);
      if (!(kappa == Scalar(-1)) && !b.is_zero()) {
        throw validation_error("family", "pcm-canonical: b must vanish when kappa != -1");
      }
      const Scalar a = Scalar(1) - spec.at("mu") / Scalar(2);
      // [E1,E2] = -b E2 + 2 xi, [xi,E1] = a E1 + eps E2, [xi,E2] = -eps(kappa+1) E1 - a E2
      st = para_general(0, -b, a, eps, -eps * (kappa + Scalar(1)), -a, 1);
      break;
    }
    case FamilyKind::ApcosCanonical: {
      const Scalar& kappa = spec.at("kappa");
      const Scalar& eps = spec.at("epsilon");
      const Scalar& b = spec.at("b");
      require_sign(eps);
      if (!kappa.is_zero() && !b.is_zero()) {
        throw validation_error("family", "apcos-canonical: b must vanish when kappa != 0");
      }
      const Scalar a = -spec.at("mu") / Scalar(2);
      // [E1,E2] = -b E2, [xi,E1] = -mu/2 E1 + eps E2, [xi,E2] = -eps kappa E1 + mu/2 E2
      st = para_general(0, -b, a, eps, -eps * kappa, -a, 0);
      break;
    }
  }
  if (auto v = validate(st); !v.empty()) throw validation_error(std::move(v));
  return st;
}

std::optional<KappaMu> expected_kappa_mu(const FamilySpec& spec) {
  auto sq = [](const Scalar& x) { return x * x; };
  switch (spec.kind) {
    case FamilyKind::ContactType: {
      const Scalar &k = spec.at("k"), &l = spec.at("lambda"), &c = spec.at("c");
      return KappaMu{sq(k) - sq(l), Scalar(2) * (k + c)};
    }
    case FamilyKind::NilpotentCase1: {
      const Scalar &k = spec.at("k"), &l = spec.at("lambda");
      return KappaMu{sq(k) - sq(l), Scalar(2) * (k + l)};
    }
    case FamilyKind::NilpotentCase2: {
      const Scalar &k = spec.at("k"), &l = spec.at("lambda");
      return KappaMu{sq(k) - sq(l), Scalar(2) * (k - l)};
    }
    case FamilyKind::Para: {
      const Scalar &u = spec.at("u"), &a = spec.at("a"), &b = spec.at("b"), &c = spec.at("c");
      return KappaMu{-(sq(u) + b * c), Scalar(2) * (u - a)};
    }
    case FamilyKind::ParaGeneral: {
      const Scalar &u = spec.at("u"), &a = spec.at("a"), &b = spec.at("b"), &c = spec.at("c");
      if (!spec.at("p1").is_zero() || !spec.at("p2").is_zero() || !(a + spec.at("d")).is_zero()) return std::nullopt;
      return KappaMu{-(sq(u) + b * c), Scalar(2) * (u - a)};
    }
    case FamilyKind::PcmCanonical:
    case FamilyKind::ApcosCanonical:
      return KappaMu{spec.at("kappa"), spec.at("mu")};
  }
  return std::nullopt;
}

RicciForm expected_ricci(const FamilySpec& spec) {
  Scalar k = spec.at("k");
  Scalar l = spec.at("lambda");
  Scalar c;
  switch (spec.kind) {
    case FamilyKind::ContactType:
      c = spec.at("c");
      break;
    case FamilyKind::NilpotentCase1:
      c = l;
      break;
    case FamilyKind::NilpotentCase2:
      c = -l;
      break;
    default:
      throw family_error("expected_ricci applies to the Riemannian families only");
  }
  RicciForm r;
  r.r1 = Scalar(2) * (k * k - l * l);
  r.r2 = Scalar(-2) * (k + c) * (k - l);
  r.r3 = Scalar(-2) * (k + c) * (k + l);
  r.scalar = Scalar(-2) * (k * k + l * l) - Scalar(4) * k * c;
  return r;
}

}  // namespace kmlab

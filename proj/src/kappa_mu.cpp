#include "kmlab/kappa_mu.hpp"

#include <cmath>

namespace kmlab {

std::string to_string(NullityKind k) {
  switch (k) {
    case NullityKind::KappaMu:
      return "KappaMu";
    case NullityKind::KappaOnly:
      return "KappaOnly";
    case NullityKind::None:
      return "None";
  }
  return "None";
}

std::string to_string(InvariantKind k) {
  switch (k) {
    case InvariantKind::BoeckxI:
      return "Boeckx_I";
    case InvariantKind::DackoOlszakC:
      return "DackoOlszak_C";
    case InvariantKind::ParaE:
      return "Para_E";
    case InvariantKind::ParaF:
      return "Para_F";
  }
  return "";
}

Mat3 jacobi_operator(const StructureTensors& st, const ConnectionCurvature& cc) {
  Mat3 j;
  for (std::size_t i = 0; i < 3; ++i) {
    Vec3 col = cc.R(Vec3::basis(i), st.xi, st.xi);
    for (std::size_t k = 0; k < 3; ++k) j(k, i) = col[k];
  }
  return j;
}

KappaMuReport solve_kappa_mu(const StructureTensors& st, const ConnectionCurvature& cc, const Mat3& h) {
  KappaMuReport rep;
  const Mat3 jac = jacobi_operator(st, cc);
  const Mat3 proj = Mat3::identity() - Mat3::outer(st.xi, st.eta);

  // R(X,Y)xi must be determined by the Jacobi operator.
  Scalar pattern;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec3 x = Vec3::basis(i);
      const Vec3 y = Vec3::basis(j);
      Vec3 d = cc.R(x, y, st.xi) - st.eta[j] * (jac * x) + st.eta[i] * (jac * y);
      Scalar m = d.max_abs();
      if ((m - pattern).sign() > 0) pattern = m;
    }
  rep.pattern_residual = pattern;
  rep.h_rank = h.rank();

  if (h.is_zero()) {
    Scalar kappa = proj.frobenius(jac) / proj.frobenius(proj);
    rep.kappa = kappa;
    rep.residual = (jac - kappa * proj).max_abs();
    const bool ok = rep.residual.is_zero() && pattern.is_zero();
    rep.nullity_kind = ok ? NullityKind::KappaOnly : NullityKind::None;
    rep.note = ok ? "h = 0: mu is not determined" : "h = 0 and J is not a multiple of Id - eta⊗xi";
    return rep;
  }

  const std::vector<std::vector<Scalar>> gram = {{proj.frobenius(proj), proj.frobenius(h)},
                                                 {h.frobenius(proj), h.frobenius(h)}};
  auto sol = solve_linear(gram, {proj.frobenius(jac), h.frobenius(jac)});
  if (!sol) {
    rep.nullity_kind = NullityKind::None;
    rep.residual = jac.max_abs();
    rep.note = "h is proportional to Id - eta⊗xi; kappa and mu cannot be separated";
    return rep;
  }
  rep.kappa = (*sol)[0];
  rep.mu = (*sol)[1];
  rep.residual = (jac - *rep.kappa * proj - *rep.mu * h).max_abs();
  if (rep.residual.is_zero() && pattern.is_zero()) {
    rep.nullity_kind = NullityKind::KappaMu;
  } else {
    rep.nullity_kind = NullityKind::None;
    rep.note = "not a (kappa,mu)-space; kappa and mu are least-squares values";
  }
  return rep;
}

KappaMuReport solve_kappa_mu(const StructureTensors& st) {
  if (auto v = validate(st); !v.empty()) throw validation_error(std::move(v));
  return solve_kappa_mu(st, curvature(st.host), compute_h(st));
}

Analysis analyze(const StructureTensors& st) {
  if (auto v = validate(st); !v.empty()) throw validation_error(std::move(v));
  Analysis a;
  a.st = st;
  a.cc = curvature(st.host);
  a.forms = fundamental_forms(st);
  a.h = compute_h(st);
  a.tag = classify_structure(st);
  a.kmu = solve_kappa_mu(st, a.cc, a.h);
  return a;
}

StructureTensors d_homothety(const StructureTensors& st, const Scalar& alpha) {
  if (alpha.sign() <= 0) throw std::invalid_argument("D-homothety needs alpha > 0, got " + alpha.str());
  StructureTensors out = st;
  const Mat3& g = st.host.metric();
  Mat3 g2 = alpha * g + alpha * (alpha - Scalar(1)) * Mat3::outer(st.eta, st.eta);
  out.host = MetricLieAlgebra3(st.host.structure(), g2, FrameKind::General);
  out.xi = (Scalar(1) / alpha) * st.xi;
  out.eta = alpha * st.eta;
  if (auto v = validate(out); !v.empty()) throw validation_error(std::move(v));
  return out;
}

StructureTensors d_homothety_artin(const StructureTensors& st, const Scalar& alpha) {
  const FrameKind kind = st.host.frame_kind();
  if (kind == FrameKind::General) {
    throw std::invalid_argument("frame renormalization needs an Artin or orthonormal frame (xi, E1, E2)");
  }
  if (!(st.xi == Vec3::basis(0))) throw std::invalid_argument("frame renormalization needs xi = e_0");
  StructureTensors deformed = d_homothety(st, alpha);
  Scalar root;
  if (alpha.is_exact()) {
    mpq_class r;
    if (!rational_sqrt(alpha.rational(), r)) {
      throw std::invalid_argument("alpha = " + alpha.str() +
                                  " is not the square of a rational; use a squared alpha (e.g. 4) or float mode");
    }
    root = Scalar(r);
  } else {
    root = Scalar::from_double(std::sqrt(alpha.to_double()));
  }
  const Scalar one(1);
  return change_frame(deformed, Mat3::diagonal(one / alpha, one / root, one / root), kind);
}

std::vector<InvariantReport> invariants(const ClassTag& tag, const KappaMuReport& kmu) {
  std::vector<InvariantReport> out;
  InvariantReport r;
  const Scalar one(1);
  const Scalar two(2);
  auto undefined_for_nullity = [&](const std::string& label) -> bool {
    if (kmu.nullity_kind == NullityKind::None) {
      r.reason = "not a (κ,μ)-space, " + label + " undefined";
      return true;
    }
    if (kmu.nullity_kind == NullityKind::KappaOnly) {
      r.reason = "h = 0 (κ = " + kmu.kappa->str() + "), mu undetermined, " + label + " undefined";
      return true;
    }
    return false;
  };

  switch (tag.kind) {
    case StructureClass::ContactMetric: {
      r.kind = InvariantKind::BoeckxI;
      if (kmu.nullity_kind == NullityKind::KappaOnly && *kmu.kappa == one) {
        r.reason = "κ = 1: Sasakian, I undefined";
      } else if (undefined_for_nullity("I")) {
      } else if (!(*kmu.kappa < one)) {
        r.reason = "κ = " + kmu.kappa->str() + " ≥ 1, I undefined";
      } else {
        r.defined = true;
        r.value = RootExpr::quotient(one - *kmu.mu / two, one - *kmu.kappa);
      }
      break;
    }
    case StructureClass::AlmostCosymplectic: {
      r.kind = InvariantKind::DackoOlszakC;
      if (undefined_for_nullity("C")) {
      } else if (!(kmu.kappa->sign() < 0)) {
        r.reason = "κ = " + kmu.kappa->str() + " ≥ 0, C undefined";
      } else {
        r.defined = true;
        r.value = RootExpr::quotient(-*kmu.mu / two, -*kmu.kappa);
      }
      break;
    }
    case StructureClass::ParacontactMetric: {
      r.kind = InvariantKind::ParaE;
      if (undefined_for_nullity("E")) {
      } else if (*kmu.kappa == -one) {
        r.reason = "κ = −1, E undefined";
      } else {
        r.defined = true;
        const Scalar a = one - *kmu.mu / two;
        r.value = RootExpr(a * a / (one + *kmu.kappa), one);
      }
      break;
    }
    case StructureClass::AlmostParacosymplectic: {
      r.kind = InvariantKind::ParaF;
      if (undefined_for_nullity("F")) {
      } else if (kmu.kappa->is_zero()) {
        r.reason = "κ = 0, F undefined";
      } else {
        r.defined = true;
        const Scalar a = *kmu.mu / two;
        r.value = RootExpr(a * a / *kmu.kappa, one);
      }
      break;
    }
    default:
      return out;
  }
  out.push_back(r);
  return out;
}

bool nilpotent_reeb_action(const StructureTensors& st) {
  const Mat3 proj = Mat3::identity() - Mat3::outer(st.xi, st.eta);
  const Mat3 m = proj * st.host.ad(st.xi) * proj;
  return !m.is_zero() && (m * m).is_zero();
}

std::string GroupClass::name() const {
  switch (group) {
    case GroupName::SU2_or_SO3:
      return "SU(2)/SO(3)";
    case GroupName::SL2R_or_O12:
      return "SL(2,R)/O(1,2)";
    case GroupName::E2:
      return "E(2)";
    case GroupName::E11:
      return "E(1,1)";
    case GroupName::E2_or_E11:
      return "E(2) or E(1,1)";
    case GroupName::Heisenberg:
      return "Heisenberg";
    case GroupName::Unlisted:
      return "Unlisted";
    case GroupName::NotClassified:
      return "not classified (" + reason + ")";
  }
  return "";
}

std::string GroupClass::description() const {
  switch (group) {
    case GroupName::SU2_or_SO3:
      return "simple, compact";
    case GroupName::SL2R_or_O12:
      return "simple";
    case GroupName::E2:
    case GroupName::E11:
    case GroupName::E2_or_E11:
      return "solvable";
    case GroupName::Heisenberg:
      return "nilpotent";
    case GroupName::Unlisted:
    case GroupName::NotClassified:
      return "-";
  }
  return "-";
}

std::string emit_table_row(const GroupClass& g) {
  std::string name;
  switch (g.group) {
    case GroupName::SU2_or_SO3:
      name = "SO(3) or SU(2)";
      break;
    case GroupName::SL2R_or_O12:
      name = "SL(2,R) or O(1,2)";
      break;
    case GroupName::Heisenberg:
      name = "Heisenberg Lie group H3";
      break;
    case GroupName::Unlisted:
      name = "-";
      break;
    case GroupName::NotClassified:
      return g.name() + " | - | -";
    default:
      name = g.name();
      break;
  }
  return name + " | " + g.description() + " | " + g.range;
}

namespace {

GroupClass not_classified(std::string why) {
  GroupClass g;
  g.group = GroupName::NotClassified;
  g.reason = std::move(why);
  return g;
}

GroupClass row(GroupName name, int table, std::string range) {
  GroupClass g;
  g.group = name;
  g.table = table;
  g.range = std::move(range);
  return g;
}

}  // namespace

GroupClass classify_group(const StructureTensors& st, const ClassTag& tag, const KappaMuReport& kmu,
                          const std::vector<InvariantReport>& inv) {
  switch (tag.kind) {
    case StructureClass::ContactMetric:
      if (tag.normal) return not_classified("Sasakian");
      break;
    case StructureClass::AlmostCosymplectic:
      if (tag.normal) return not_classified("cosymplectic");
      break;
    case StructureClass::ParacontactMetric:
      if (tag.normal) return not_classified("para-Sasakian");
      break;
    case StructureClass::AlmostParacosymplectic:
      if (tag.normal) return not_classified("paracosymplectic");
      break;
    default:
      return not_classified("no table for class " + tag.name());
  }
  if (kmu.nullity_kind == NullityKind::None) return not_classified("not a (κ,μ)-space");
  if (inv.empty() || !inv.front().defined) {
    return not_classified(inv.empty() ? "invariant undefined" : inv.front().reason);
  }
  const RootExpr& v = inv.front().value;
  const Scalar one(1);
  const Scalar zero(0);
  const bool boundary = nilpotent_reeb_action(st) || (v.radicand().is_exact() && v.compare_abs(one) == 0 &&
                                                      (tag.kind == StructureClass::ContactMetric ||
                                                       tag.kind == StructureClass::AlmostCosymplectic));

  switch (tag.kind) {
    case StructureClass::ContactMetric:
      if (boundary) return v.sign() > 0 ? row(GroupName::E2, 1, "I=1") : row(GroupName::E11, 1, "I=−1");
      if (v.compare(one) > 0) return row(GroupName::SU2_or_SO3, 1, "I>1");
      return row(GroupName::SL2R_or_O12, 1, "I<1, I≠−1");
    case StructureClass::AlmostCosymplectic:
      if (boundary) return row(GroupName::Heisenberg, 3, "|C|=1");
      if (v.compare_abs(one) > 0) return row(GroupName::E2, 3, "|C|>1");
      return row(GroupName::E11, 3, "|C|<1");
    case StructureClass::ParacontactMetric: {
      const int c0 = v.compare(zero);
      const int c1 = v.compare(one);
      if (c1 == 0) return row(GroupName::E2_or_E11, 2, "E=1");
      if (c0 == 0) {
        return -one < *kmu.kappa ? row(GroupName::Unlisted, 2, "E=0 and κ>−1")
                                            : row(GroupName::Unlisted, 2, "E=0, κ<−1");
      }
      if (c0 > 0 && c1 < 0) return row(GroupName::SU2_or_SO3, 2, "0<E<1");
      return row(GroupName::SL2R_or_O12, 2, "E<0 or E>1");
    }
    case StructureClass::AlmostParacosymplectic: {
      const int c0 = v.compare(zero);
      const int c1 = v.compare(one);
      if (c1 == 0) return row(GroupName::Heisenberg, 4, "F=1");
      if (c0 == 0) {
        return kmu.kappa->sign() > 0 ? row(GroupName::Unlisted, 4, "F=0, κ>0") : row(GroupName::Unlisted, 4, "F=0, κ<0");
      }
      if (c0 > 0 && c1 < 0) return row(GroupName::E2, 4, "0<F<1");
      return row(GroupName::E11, 4, "F>1 or F<0");
    }
    default:
      break;
  }
  return not_classified("no table for class " + tag.name());
}

GroupClass classify_group(const Analysis& a) {
  return classify_group(a.st, a.tag, a.kmu, invariants(a.tag, a.kmu));
}

}  // namespace kmlab

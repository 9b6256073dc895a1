#include "doctest.h"
#include "kmlab/families.hpp"
#include "kmlab/identities.hpp"
#include "support/generators.hpp"

using namespace kmlab;

namespace {

StructureTensors make(const std::string& name, const std::map<std::string, Scalar>& p) {
  return build(FamilySpec::make(name, p));
}

StructureTensors contact(const Scalar& k, const Scalar& l, const Scalar& c) {
  return make("contact", {{"k", k}, {"lambda", l}, {"c", c}});
}

StructureTensors para(const Scalar& u, const Scalar& a, const Scalar& b, const Scalar& c) {
  return make("para", {{"u", u}, {"a", a}, {"b", b}, {"c", c}});
}

const std::vector<Scalar> kGrid = {Scalar(-2), Scalar(-1), Scalar(0),     Scalar(1),
                                   Scalar(2),  Scalar(-1, 2), Scalar(3, 2)};

std::vector<InvariantReport> invariants_of(const StructureTensors& st) {
  const Analysis a = analyze(st);
  return invariants(a.tag, a.kmu);
}

bool same_invariant(const std::vector<InvariantReport>& a, const std::vector<InvariantReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind || a[i].defined != b[i].defined) return false;
    if (a[i].defined && !(a[i].value == b[i].value)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Jacobi operator on the contact frame") {
  const auto st = contact(1, 2, 0);
  const Mat3 j = jacobi_operator(st, curvature(st.host));
  // kappa = -3, mu = 2, h = diag(0, 2, -2)
  CHECK(j * Vec3::basis(1) == Vec3::basis(1));
  CHECK(j * Vec3::basis(2) == Scalar(-7) * Vec3::basis(2));
  CHECK((j * Vec3::basis(0)).is_zero());
}

TEST_CASE("kappa and mu on the contact grid") {
  for (const auto& k : kGrid)
    for (const auto& l : kGrid)
      for (const auto& c : kGrid) {
        const auto kmu = solve_kappa_mu(contact(k, l, c));
        CHECK(kmu.pattern_residual.is_zero());
        REQUIRE(kmu.kappa);
        CHECK(*kmu.kappa == k * k - l * l);
        if (l.is_zero()) {
          CHECK(kmu.nullity_kind == NullityKind::KappaOnly);
          CHECK_FALSE(kmu.mu);
        } else {
          CHECK(kmu.nullity_kind == NullityKind::KappaMu);
          REQUIRE(kmu.mu);
          CHECK(*kmu.mu == Scalar(2) * (k + c));
        }
      }
}

TEST_CASE("kappa and mu on the nilpotent cases") {
  for (const auto& k : kGrid)
    for (const auto& l : kGrid) {
      if (l.is_zero()) continue;
      auto kmu = solve_kappa_mu(make("nilpotent1", {{"k", k}, {"lambda", l}}));
      REQUIRE(kmu.mu);
      CHECK(*kmu.kappa == k * k - l * l);
      CHECK(*kmu.mu == Scalar(2) * (k + l));
      kmu = solve_kappa_mu(make("nilpotent2", {{"k", k}, {"lambda", l}}));
      REQUIRE(kmu.mu);
      CHECK(*kmu.mu == Scalar(2) * (k - l));
    }
}

TEST_CASE("kappa and mu on the para grid") {
  for (int u : {0, 1, -1})
    for (const auto& a : kGrid)
      for (const auto& b : kGrid)
        for (const auto& c : kGrid) {
          const auto st = para(u, a, b, c);
          const auto kmu = solve_kappa_mu(st);
          REQUIRE(kmu.kappa);
          CHECK(*kmu.kappa == -(Scalar(u * u) + b * c));
          if (compute_h(st).is_zero()) {
            CHECK(kmu.nullity_kind == NullityKind::KappaOnly);
          } else {
            REQUIRE(kmu.mu);
            CHECK(*kmu.mu == Scalar(2) * (Scalar(u) - a));
          }
        }
}

TEST_CASE("para-general with a + d != 0 is surfaced as not (kappa, mu)") {
  const auto st = make("para-general", {{"p1", 0}, {"p2", 0}, {"a", -2}, {"b", 1}, {"c", -1}, {"d", -1}, {"u", 0}});
  const auto kmu = solve_kappa_mu(st);
  CHECK(kmu.nullity_kind == NullityKind::None);
  CHECK_FALSE((kmu.residual.is_zero() && kmu.pattern_residual.is_zero()));
  CHECK(classify_group(analyze(st)).group == GroupName::NotClassified);
}

TEST_CASE("invariant values") {
  auto inv = invariants_of(contact(1, 2, 0));
  REQUIRE(inv.size() == 1);
  CHECK(inv[0].kind == InvariantKind::BoeckxI);
  CHECK(inv[0].defined);
  CHECK(inv[0].value.squared().is_zero());

  inv = invariants_of(contact(1, 1, 1));  // kappa 0, mu 4: I = -1
  CHECK(inv[0].value.str() == "-1");

  inv = invariants_of(contact(1, 0, 0));
  CHECK_FALSE(inv[0].defined);
  CHECK(inv[0].reason == "κ = 1: Sasakian, I undefined");

  inv = invariants_of(contact(0, 2, 1));  // kappa -4, mu 2: C = -1/2
  REQUIRE(inv.size() == 1);
  CHECK(inv[0].kind == InvariantKind::DackoOlszakC);
  CHECK(inv[0].value.str() == "-1/2");

  inv = invariants_of(contact(0, 2, 0));  // kappa -4, mu 0
  CHECK(inv[0].value.squared().is_zero());

  inv = invariants_of(para(1, 0, 1, 1));
  CHECK(inv[0].kind == InvariantKind::ParaE);
  CHECK(inv[0].value.str() == "0");

  inv = invariants_of(para(0, 1, 2, 1));  // kappa -2, mu -2: F = 1 + mu/kappa... not at boundary
  CHECK(inv[0].kind == InvariantKind::ParaF);
  CHECK(inv[0].defined);

  inv = invariants_of(para(0, 0, 0, 0));
  CHECK_FALSE(inv[0].defined);
}

TEST_CASE("D-homothety transforms kappa and mu as expected on contact instances") {
  const auto st = contact(1, 2, 0);
  const auto moved = d_homothety(st, Scalar(4));
  CHECK(validate(moved).empty());
  const auto kmu = solve_kappa_mu(moved);
  REQUIRE(kmu.mu);
  CHECK(*kmu.kappa == Scalar(3, 4));
  CHECK(*kmu.mu == Scalar(2));
  CHECK(classify_structure(moved).kind == StructureClass::ContactMetric);

  for (const auto& alpha : {Scalar(1, 4), Scalar(4), Scalar(9), Scalar(2)}) {
    for (const auto& l : {Scalar(1), Scalar(-3, 2)})
      for (const auto& c : {Scalar(-2), Scalar(1, 2)}) {
        const auto base = solve_kappa_mu(contact(1, l, c));
        const auto def = solve_kappa_mu(d_homothety(contact(1, l, c), alpha));
        const Scalar a2 = alpha * alpha;
        CHECK(*def.kappa == (*base.kappa + a2 - Scalar(1)) / a2);
        CHECK(*def.mu == (*base.mu + Scalar(2) * alpha - Scalar(2)) / alpha);
      }
  }
}

TEST_CASE("D-homothety invariance of I, C, E, F") {
  const std::vector<Scalar> alphas = {Scalar(1, 4), Scalar(4), Scalar(9)};
  std::vector<StructureTensors> cases;
  for (const auto& l : kGrid)
    for (const auto& c : kGrid) {
      cases.push_back(contact(1, l, c));
      cases.push_back(contact(0, l, c));
    }
  for (int u : {0, 1})
    for (const auto& a : kGrid)
      for (const auto& b : {Scalar(-1), Scalar(2), Scalar(1, 2)})
        for (const auto& c : {Scalar(0), Scalar(1), Scalar(-3, 2)}) cases.push_back(para(u, a, b, c));
  int compared = 0;
  for (const auto& st : cases) {
    const auto before = invariants_of(st);
    if (before.empty() || !before.front().defined) continue;
    for (const auto& alpha : alphas) {
      CHECK(same_invariant(before, invariants_of(d_homothety(st, alpha))));
      CHECK(same_invariant(before, invariants_of(d_homothety_artin(st, alpha))));
    }
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("D-homothety rejects bad alpha") {
  const auto st = contact(1, 2, 0);
  CHECK_THROWS_AS(d_homothety(st, Scalar(0)), std::invalid_argument);
  CHECK_THROWS_AS(d_homothety(st, Scalar(-4)), std::invalid_argument);
  CHECK_THROWS_AS(d_homothety_artin(st, Scalar(2)), std::invalid_argument);
  CHECK_NOTHROW(d_homothety_artin(st.in_mode(Mode::Float), Scalar::from_double(2.0)));
  CHECK_NOTHROW(d_homothety(st, Scalar(2)));
}

TEST_CASE("invariants do not depend on the Artin gauge or the frame") {
  testing::RationalRng rng(5);
  for (const auto& a : kGrid)
    for (int u : {0, 1}) {
      const auto st = para(u, a, 2, Scalar(-1, 2));
      const auto base = invariants_of(st);
      CHECK(same_invariant(base, invariants_of(artin_gauge(st, Scalar(3)))));
      CHECK(same_invariant(base, invariants_of(change_frame(st, testing::random_invertible(rng)))));
    }
}

TEST_CASE("group classification examples") {
  auto g = classify_group(analyze(contact(1, 2, 0)));
  CHECK(g.name() == "SL(2,R)/O(1,2)");
  CHECK(g.table == 1);
  CHECK(emit_table_row(g) == "SL(2,R) or O(1,2) | simple | I<1, I≠−1");

  g = classify_group(analyze(make("nilpotent1", {{"k", 1}, {"lambda", 2}})));
  CHECK(g.group == GroupName::E11);
  CHECK(g.range == "I=−1");

  g = classify_group(analyze(make("nilpotent2", {{"k", 1}, {"lambda", 2}})));
  CHECK(g.group == GroupName::E2);
  CHECK(g.range == "I=1");

  g = classify_group(analyze(make("nilpotent1", {{"k", 0}, {"lambda", 2}})));
  CHECK(emit_table_row(g) == "Heisenberg Lie group H3 | nilpotent | |C|=1");

  g = classify_group(analyze(make("apcos-canonical", {{"kappa", 1}, {"mu", 2}, {"epsilon", 1}, {"b", 0}})));
  CHECK(g.group == GroupName::Heisenberg);
  CHECK(g.range == "F=1");

  g = classify_group(analyze(contact(1, Scalar(1, 2), 3)));  // kappa 3/4, mu 8: I = -6
  CHECK(g.group == GroupName::SL2R_or_O12);

  g = classify_group(analyze(contact(1, Scalar(1, 2), -3)));  // kappa 3/4, mu -4: I = 6
  CHECK(emit_table_row(g) == "SO(3) or SU(2) | simple, compact | I>1");

  g = classify_group(analyze(contact(0, 0, 0)));
  CHECK(g.name() == "not classified (cosymplectic)");
  CHECK(emit_table_row(g) == "not classified (cosymplectic) | - | -");
  g = classify_group(analyze(contact(1, 0, 1)));
  CHECK(g.name() == "not classified (Sasakian)");
  g = classify_group(analyze(para(1, 0, 0, 0)));
  CHECK(g.name() == "not classified (para-Sasakian)");

  g = classify_group(analyze(para(1, 0, 0, 1)));  // kappa -1, mu 2: E undefined
  CHECK(g.group == GroupName::NotClassified);

  g = classify_group(analyze(para(1, 0, 1, -3)));  // kappa 2, mu 2: E = 0, kappa > -1
  CHECK(emit_table_row(g) == "- | - | E=0 and κ>−1");
}

TEST_CASE("contact and almost cosymplectic rows agree with the Milnor sign table") {
  int checked = 0;
  for (int k : {0, 1})
    for (const auto& l : kGrid)
      for (const auto& c : kGrid) {
        const auto st = contact(k, l, c);
        const auto g = classify_group(analyze(st));
        if (g.table == 0) continue;
        const auto m = milnor_frame(st.host.in_mode(Mode::Float));
        CAPTURE(g.name());
        CAPTURE(k);
        CAPTURE(l.str());
        CAPTURE(c.str());
        CHECK(testing::milnor_group(m.signs) == g.name());
        ++checked;
      }
  CHECK(checked > 50);
}

TEST_CASE("structure theorems: kappa bounds and Ricci signature") {
  for (const auto& l : kGrid)
    for (const auto& c : kGrid) {
      CHECK(*solve_kappa_mu(contact(1, l, c)).kappa <= Scalar(1));
      const auto ac = contact(0, l, c);
      CHECK(*solve_kappa_mu(ac).kappa <= Scalar(0));
      if (classify_structure(ac).normal) continue;
      const auto r = curvature(ac.host).ricci;
      REQUIRE(r.is_diagonal());
      int pos = 0, neg = 0, zero = 0;
      for (std::size_t i = 0; i < 3; ++i) (r(i, i).sign() > 0 ? pos : r(i, i).sign() < 0 ? neg : zero)++;
      const bool allowed = (neg == 1 && zero == 2) || (neg == 2 && pos == 1);
      CAPTURE(l.str());
      CAPTURE(c.str());
      CHECK(allowed);
    }
}

TEST_CASE("identity names round trip") {
  CHECK(all_identities().size() == 12);
  for (auto id : all_identities()) CHECK(identity_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(identity_from_string("nope"), std::invalid_argument);
}

TEST_CASE("identity suite passes on all family instances") {
  testing::RationalRng rng(99);
  std::vector<StructureTensors> cases;
  for (const auto& l : kGrid)
    for (const auto& c : {Scalar(-1), Scalar(0), Scalar(3, 2)}) {
      cases.push_back(contact(1, l, c));
      cases.push_back(contact(0, l, c));
    }
  for (int u : {0, 1})
    for (const auto& a : {Scalar(0), Scalar(1), Scalar(-1, 2)})
      for (const auto& b : {Scalar(0), Scalar(2)})
        for (const auto& c : {Scalar(1), Scalar(-3)}) cases.push_back(para(u, a, b, c));
  for (int eps : {-1, 1}) {
    cases.push_back(make("pcm-canonical", {{"kappa", -3}, {"mu", 4}, {"epsilon", eps}, {"b", 0}}));
    cases.push_back(make("apcos-canonical", {{"kappa", 2}, {"mu", -1}, {"epsilon", eps}, {"b", 0}}));
  }
  cases.push_back(make("para-general", {{"p1", 0}, {"p2", 0}, {"a", 2}, {"b", 1}, {"c", 0}, {"d", 1}, {"u", 0}}));
  cases.push_back(make("para-general", {{"p1", 0}, {"p2", 0}, {"a", -1}, {"b", 0}, {"c", 0}, {"d", -1}, {"u", 0}}));
  const std::size_t native = cases.size();
  for (std::size_t i = 0; i < native; i += 3) cases.push_back(change_frame(cases[i], testing::random_invertible(rng)));

  std::map<IdentityId, int> passes;
  for (const auto& st : cases) {
    for (const auto& r : verify_identities(analyze(st), all_identities())) {
      CAPTURE(to_string(r.id));
      CHECK(r.status != IdentityStatus::Fail);
      if (r.status == IdentityStatus::Pass) {
        CHECK(r.residual.is_zero());
        ++passes[r.id];
      }
    }
  }
  for (auto id : all_identities()) {
    CAPTURE(to_string(id));
    CHECK(passes[id] > 0);
  }
}

TEST_CASE("identity hypotheses") {
  const auto ac = analyze(contact(0, 2, 1));
  auto r = verify_identity(ac, IdentityId::BKP_nabla_phi);
  CHECK(r.status == IdentityStatus::Skipped);
  CHECK(r.reason == "contact metric only");
  CHECK(verify_identity(ac, IdentityId::DO_lie).status == IdentityStatus::Pass);

  const auto pc = analyze(para(1, 0, 1, 1));
  CHECK(verify_identity(pc, IdentityId::PCM_nabla_xi).status == IdentityStatus::Pass);
  CHECK(verify_identity(pc, IdentityId::PCOS_nabla_xi).status == IdentityStatus::Skipped);
  CHECK(verify_identity(pc, IdentityId::GENERAL_covdiv).status == IdentityStatus::Pass);
  CHECK(verify_identity(pc, IdentityId::H2_decomp).status == IdentityStatus::Pass);
  CHECK(verify_identity(analyze(contact(1, 2, 0)), IdentityId::GENERAL_covdiv).status == IdentityStatus::Skipped);
}

TEST_CASE("identity residuals detect a wrong structure") {
  // a contact instance whose structure is then tilted: phi no longer matches
  // the metric, so the defining relations fail before any identity runs
  auto st = contact(1, 2, 0);
  st.phi(1, 1) = 1;
  CHECK_THROWS_AS(analyze(st), validation_error);
}

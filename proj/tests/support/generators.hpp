#pragma once

// Random rational algebras and structures shared by the property tests and
// the acceptance runner.

#include <random>
#include <string>

#include "kmlab/families.hpp"
#include "kmlab/kappa_mu.hpp"

namespace kmlab::testing {

class RationalRng {
 public:
  explicit RationalRng(std::uint64_t seed) : gen_(seed) {}

  /// p/q with |p| <= range, 1 <= q <= 3.
  Scalar small(int range = 3) {
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    return Scalar(num(gen_), den(gen_));
  }
  Scalar nonzero(int range = 3) {
    for (;;) {
      Scalar s = small(range);
      if (!s.is_zero()) return s;
    }
  }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Vec3 vec(int range = 3) { return Vec3(small(range), small(range), small(range)); }

 private:
  std::mt19937_64 gen_;
};

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

/// Bianchi-type brackets [e_i,e_j] = eps_ijm N^{mk} e_k + a_i e_j - a_j e_i
/// with N symmetric and N a = 0.  Every such algebra satisfies Jacobi.
inline Ten3 random_bianchi(RationalRng& rng, bool unimodular) {
  Vec3 a = unimodular ? Vec3() : rng.vec(2);
  Mat3 n;
  if (a.is_zero()) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) n(i, j) = n(j, i) = rng.small(2);
  } else {
    const Vec3 b = cross(a, rng.vec(2));
    const Vec3 c = cross(a, rng.vec(2));
    n = rng.small(2) * Mat3::outer(b, b) + rng.small(2) * Mat3::outer(c, c) +
        rng.small(2) * (Mat3::outer(b, c) + Mat3::outer(c, b));
  }
  MetricLieAlgebra3 alg(Ten3{}, Mat3::identity(), FrameKind::General);
  const std::size_t pairs[3][3] = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};  // (i, j, m) with eps_ijm = +1
  for (const auto& p : pairs) {
    const std::size_t i = p[0], j = p[1], m = p[2];
    Vec3 v;
    for (std::size_t k = 0; k < 3; ++k) v[k] = n(m, k);
    v[j] += a[i];
    v[i] -= a[j];
    alg.set_bracket(i, j, v);
  }
  return alg.structure();
}

/// Random positive definite rational metric L L^T.
inline Mat3 random_riemannian_metric(RationalRng& rng) {
  Mat3 l;
  for (std::size_t i = 0; i < 3; ++i) {
    l(i, i) = Scalar(rng.pick(1, 3));
    for (std::size_t j = 0; j < i; ++j) l(i, j) = rng.small(2);
  }
  return l * l.transpose();
}

/// Random invertible rational matrix.
inline Mat3 random_invertible(RationalRng& rng) {
  for (;;) {
    Mat3 p;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) p(i, j) = rng.small(2);
    if (!p.determinant().is_zero()) return p;
  }
}

/// Cayley transform (I - S)(I + S)^{-1} of a random antisymmetric S: a
/// rational orthogonal matrix.
inline Mat3 cayley_orthogonal(RationalRng& rng) {
  Mat3 s;
  s(0, 1) = rng.small(2);
  s(0, 2) = rng.small(2);
  s(1, 2) = rng.small(2);
  s(1, 0) = -s(0, 1);
  s(2, 0) = -s(0, 2);
  s(2, 1) = -s(1, 2);
  return (Mat3::identity() - s) * (Mat3::identity() + s).inverse();
}

/// Random valid metric Lie algebra: a Bianchi algebra with a random metric
/// (Riemannian or Lorentzian), seen through a random frame change.
inline MetricLieAlgebra3 random_algebra(RationalRng& rng) {
  const Ten3 c = random_bianchi(rng, rng.pick(0, 1) == 0);
  Mat3 g = random_riemannian_metric(rng);
  if (rng.pick(0, 2) == 0) g = Mat3{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  MetricLieAlgebra3 alg(c, g, FrameKind::General);
  switch (rng.pick(0, 2)) {
    case 0:
      return change_frame(alg, random_invertible(rng));
    case 1:
      return change_frame(alg, cayley_orthogonal(rng));
    default:
      return alg;
  }
}

/// First failing curvature axiom, or an empty string.
inline std::string curvature_axiom_failure(const MetricLieAlgebra3& alg) {
  const ConnectionCurvature cc = curvature(alg);
  const Mat3& g = alg.metric();
  const Ten3& c = alg.structure();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        if (!(cc.christoffel(k, i, j) - cc.christoffel(k, j, i) - c(k, i, j)).is_zero()) return "torsion";
        Scalar metric;
        for (std::size_t l = 0; l < 3; ++l) metric += g(l, k) * cc.christoffel(l, i, j) + g(j, l) * cc.christoffel(l, i, k);
        if (!metric.is_zero()) return "metric";
      }
  auto low = [&](std::size_t w, std::size_t i, std::size_t j, std::size_t k) {
    Scalar s;
    for (std::size_t l = 0; l < 3; ++l) s += g(w, l) * cc.riemann(l, i, j, k);
    return s;
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          if (!(cc.riemann(l, i, j, k) + cc.riemann(l, j, i, k)).is_zero()) return "antisymmetry";
          if (!(cc.riemann(l, i, j, k) + cc.riemann(l, j, k, i) + cc.riemann(l, k, i, j)).is_zero()) return "bianchi";
          // g(R(e_i,e_j)e_k, e_l) = g(R(e_k,e_l)e_i, e_j)
          if (!(low(l, i, j, k) - low(j, k, l, i)).is_zero()) return "pair symmetry";
        }
  if (!cc.ricci.is_symmetric()) return "ricci symmetry";
  return {};
}

/// Group from Milnor's sign table (up to permutation and overall sign).
inline std::string milnor_group(const std::array<int, 3>& signs) {
  int pos = 0, neg = 0, zero = 0;
  for (int s : signs) (s > 0 ? pos : s < 0 ? neg : zero)++;
  if (neg > pos) std::swap(pos, neg);
  if (zero == 0) return pos == 3 ? "SU(2)/SO(3)" : "SL(2,R)/O(1,2)";
  if (zero == 1) return neg == 0 ? "E(2)" : "E(1,1)";
  if (zero == 2) return "Heisenberg";
  return "abelian";
}

}  // namespace kmlab::testing

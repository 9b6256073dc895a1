#include "kmlab/lie_metric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kmlab {

namespace {

Mat3 artin_metric() { return Mat3{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}; }

std::string join_message(const std::vector<Violation>& v) {
  std::ostringstream os;
  os << "invalid input:";
  for (const auto& x : v) os << " [" << x.kind << "] " << x.detail << ";";
  return os.str();
}

double fabs_max(double a, double b) { return std::max(a, std::fabs(b)); }

}  // namespace

std::string to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::Orthonormal:
      return "orthonormal";
    case FrameKind::Artin:
      return "artin";
    case FrameKind::General:
      return "general";
  }
  return "general";
}

FrameKind frame_kind_from_string(const std::string& name) {
  if (name == "orthonormal") return FrameKind::Orthonormal;
  if (name == "artin") return FrameKind::Artin;
  if (name == "general") return FrameKind::General;
  throw std::invalid_argument("unknown frame kind '" + name + "'");
}

void MetricLieAlgebra3::set_bracket(std::size_t i, std::size_t j, const Vec3& v) {
  for (std::size_t k = 0; k < 3; ++k) {
    structure_(k, i, j) = v[k];
    structure_(k, j, i) = -v[k];
  }
}

Mat3 MetricLieAlgebra3::ad(const Vec3& x) const {
  Mat3 m;
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3 col = bracket(x, Vec3::basis(j));
    for (std::size_t k = 0; k < 3; ++k) m(k, j) = col[k];
  }
  return m;
}

MetricLieAlgebra3 MetricLieAlgebra3::in_mode(Mode m) const {
  return MetricLieAlgebra3(structure_.in_mode(m), metric_.in_mode(m), kind_);
}

validation_error::validation_error(std::vector<Violation> v)
    : std::runtime_error(join_message(v)), violations_(std::move(v)) {}

validation_error::validation_error(std::string kind, std::string detail)
    : validation_error(std::vector<Violation>{Violation{std::move(kind), {-1, -1, -1}, std::move(detail)}}) {}

std::vector<Violation> validate(const MetricLieAlgebra3& alg) {
  std::vector<Violation> out;
  const Ten3& c = alg.structure();

  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        auto ui = static_cast<std::size_t>(i);
        auto uj = static_cast<std::size_t>(j);
        auto uk = static_cast<std::size_t>(k);
        if ((c(uk, ui, uj) + c(uk, uj, ui)).is_zero()) continue;
        std::ostringstream os;
        os << "C^" << k << "_{" << i << j << "} + C^" << k << "_{" << j << i << "} != 0 at (" << i << "," << j << ")";
        out.push_back({"antisymmetry", {i, j, k}, os.str()});
      }
    }
  }

  // Jacobi: sum over cyclic (i,j,l) of [[e_i,e_j],e_l]; with antisymmetric
  // brackets in dimension 3 only the triple (0,1,2) is non-trivial.
  const std::array<std::size_t, 3> idx{0, 1, 2};
  for (std::size_t n = 0; n < 3; ++n) {
    Scalar s;
    for (int rot = 0; rot < 3; ++rot) {
      std::size_t i = idx[static_cast<std::size_t>(rot)];
      std::size_t j = idx[static_cast<std::size_t>((rot + 1) % 3)];
      std::size_t l = idx[static_cast<std::size_t>((rot + 2) % 3)];
      for (std::size_t m = 0; m < 3; ++m) s += c(m, i, j) * c(n, m, l);
    }
    if (!s.is_zero()) {
      std::ostringstream os;
      os << "Jacobi identity fails in component " << n << " of the cyclic sum over (0,1,2): " << s.str();
      out.push_back({"jacobi", {0, 1, 2}, os.str()});
    }
  }

  const Mat3& g = alg.metric();
  if (!g.is_symmetric()) out.push_back({"metric", {-1, -1, -1}, "metric matrix is not symmetric"});
  if (g.determinant().is_zero()) out.push_back({"metric", {-1, -1, -1}, "metric matrix is degenerate"});
  if (alg.frame_kind() == FrameKind::Orthonormal && !(g == Mat3::identity())) {
    out.push_back({"frame", {-1, -1, -1}, "orthonormal frame requires G = identity"});
  }
  if (alg.frame_kind() == FrameKind::Artin && !(g == artin_metric())) {
    out.push_back({"frame", {-1, -1, -1}, "Artin frame (xi,E1,E2) requires G = [[1,0,0],[0,0,1],[0,1,0]]"});
  }
  return out;
}

Mat3 ConnectionCurvature::nabla(const Vec3& x) const {
  Mat3 m;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j) {
      Scalar s;
      for (std::size_t i = 0; i < 3; ++i) s += x[i] * christoffel(k, i, j);
      m(k, j) = s;
    }
  return m;
}

Vec3 ConnectionCurvature::R(const Vec3& x, const Vec3& y, const Vec3& z) const {
  Vec3 out;
  for (std::size_t l = 0; l < 3; ++l) {
    Scalar s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        if (y[j].is_zero()) continue;
        for (std::size_t k = 0; k < 3; ++k) s += riemann(l, i, j, k) * x[i] * y[j] * z[k];
      }
    }
    out[l] = s;
  }
  return out;
}

Ten3 koszul_connection(const MetricLieAlgebra3& alg) {
  if (auto v = validate(alg); !v.empty()) throw validation_error(std::move(v));
  const Ten3& c = alg.structure();
  const Mat3& g = alg.metric();
  const Mat3 ginv = g.inverse();

  // lowered[i][j][k] = g([e_i, e_j], e_k)
  std::array<std::array<std::array<Scalar, 3>, 3>, 3> lowered;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Scalar s;
        for (std::size_t l = 0; l < 3; ++l) s += c(l, i, j) * g(l, k);
        lowered[i][j][k] = s;
      }

  const Scalar half(1, 2);
  Ten3 gamma;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::array<Scalar, 3> low;
      for (std::size_t k = 0; k < 3; ++k) low[k] = half * (lowered[i][j][k] - lowered[j][k][i] + lowered[k][i][j]);
      for (std::size_t m = 0; m < 3; ++m) {
        Scalar s;
        for (std::size_t k = 0; k < 3; ++k) s += ginv(m, k) * low[k];
        gamma(m, i, j) = s;
      }
    }
  return gamma;
}

ConnectionCurvature curvature(const MetricLieAlgebra3& alg) {
  ConnectionCurvature cc;
  cc.christoffel = koszul_connection(alg);
  const Ten3& gam = cc.christoffel;
  const Ten3& c = alg.structure();

  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          Scalar s;
          for (std::size_t m = 0; m < 3; ++m) {
            s += gam(l, i, m) * gam(m, j, k);
            s -= gam(l, j, m) * gam(m, i, k);
            s -= c(m, i, j) * gam(l, m, k);
          }
          cc.riemann(l, i, j, k) = s;
        }

  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      Scalar s;
      for (std::size_t i = 0; i < 3; ++i) s += cc.riemann(i, i, j, k);
      cc.ricci(j, k) = s;
    }

  cc.scalar = cc.ricci.frobenius(alg.metric().inverse());
  return cc;
}

Scalar sectional_curvature(const MetricLieAlgebra3& alg, const ConnectionCurvature& cc, const Vec3& x,
                           const Vec3& y) {
  Scalar denom = alg.g(x, x) * alg.g(y, y) - alg.g(x, y) * alg.g(x, y);
  if (denom.is_zero()) throw std::domain_error("sectional curvature: degenerate plane");
  return alg.g(cc.R(x, y, y), x) / denom;
}

Scalar distribution_curvature(const MetricLieAlgebra3& alg, const ConnectionCurvature& cc, const Vec3& e1,
                              const Vec3& e2) {
  Scalar denom = alg.g(e1, e1) * alg.g(e2, e2) - alg.g(e1, e2) * alg.g(e1, e2);
  if (denom.is_zero()) throw std::domain_error("distribution curvature: degenerate plane");
  return alg.g(cc.R(e2, e1, e1), e2);
}

Vec3 ad_traces(const MetricLieAlgebra3& alg) {
  Vec3 t;
  for (std::size_t i = 0; i < 3; ++i) t[i] = alg.ad(Vec3::basis(i)).trace();
  return t;
}

MetricLieAlgebra3 change_frame(const MetricLieAlgebra3& alg, const Mat3& p, FrameKind kind) {
  const Mat3 pinv = p.inverse();
  Ten3 c;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      Vec3 br = pinv * alg.bracket(p.column(a), p.column(b));
      for (std::size_t k = 0; k < 3; ++k) c(k, a, b) = br[k];
    }
  return MetricLieAlgebra3(c, p.transpose() * alg.metric() * p, kind);
}

MilnorData milnor_frame(const MetricLieAlgebra3& input) {
  if (auto v = validate(input); !v.empty()) throw validation_error(std::move(v));
  Vec3 traces = ad_traces(input);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!traces[i].is_zero()) {
      throw validation_error("unimodular", "trace(ad_e" + std::to_string(i) + ") = " + traces[i].str() +
                                               " != 0; Milnor frames need a unimodular algebra");
    }
  }
  const MetricLieAlgebra3 alg = input.in_mode(Mode::Float);

  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g(i, j) = alg.metric()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();
  Eigen::LLT<Eigen::Matrix3d> llt(g);
  if (llt.info() != Eigen::Success) {
    throw validation_error("metric", "Milnor frames need a positive definite (Riemannian) metric");
  }
  Eigen::Matrix3d f = llt.matrixL().transpose().toDenseMatrix().inverse();
  Mat3 fm;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      fm(i, j) = Scalar::from_double(f(static_cast<int>(i), static_cast<int>(j)));
  const MetricLieAlgebra3 ortho = change_frame(alg, fm);

  // L(f_0) = [f_1, f_2], L(f_1) = [f_2, f_0], L(f_2) = [f_0, f_1].
  Mat3 l = Mat3::from_columns(ortho.bracket(Vec3::basis(1), Vec3::basis(2)),
                              ortho.bracket(Vec3::basis(2), Vec3::basis(0)),
                              ortho.bracket(Vec3::basis(0), Vec3::basis(1)));
  SymEigen eig = sym_eigen_float(l);
  Mat3 v = eig.vectors;
  if (v.determinant().to_double() < 0) {
    for (std::size_t i = 0; i < 3; ++i) v(i, 2) = -v(i, 2);
  }

  MilnorData out;
  out.lambda = eig.values;
  const double half_sum = 0.5 * (out.lambda[0] + out.lambda[1] + out.lambda[2]);
  for (std::size_t i = 0; i < 3; ++i) out.mu[i] = half_sum - out.lambda[i];
  out.ricci = {2 * out.mu[1] * out.mu[2], 2 * out.mu[0] * out.mu[2], 2 * out.mu[0] * out.mu[1]};
  const double eps = 10 * tolerance();
  for (std::size_t i = 0; i < 3; ++i) {
    out.signs[i] = std::fabs(out.lambda[i]) < eps ? 0 : (out.lambda[i] < 0 ? -1 : 1);
  }
  out.frame = fm * v;

  const MetricLieAlgebra3 milnor = change_frame(alg, out.frame);
  for (std::size_t a = 0; a < 3; ++a) {
    std::size_t b = (a + 1) % 3;
    std::size_t c = (a + 2) % 3;
    Vec3 br = milnor.bracket(Vec3::basis(b), Vec3::basis(c));
    for (std::size_t k = 0; k < 3; ++k) {
      double expected = k == a ? out.lambda[a] : 0.0;
      out.bracket_residual = fabs_max(out.bracket_residual, br[k].to_double() - expected);
    }
  }
  const ConnectionCurvature cc = curvature(MetricLieAlgebra3(milnor.structure(), Mat3::identity().in_mode(Mode::Float)));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      double expected = a == b ? out.ricci[a] : 0.0;
      out.ricci_residual = fabs_max(out.ricci_residual, cc.ricci(a, b).to_double() - expected);
    }
  return out;
}

}  // namespace kmlab

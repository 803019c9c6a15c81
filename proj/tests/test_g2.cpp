#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "g2calc/algebra.hpp"
#include "g2calc/forms.hpp"
#include "g2calc/g2.hpp"

using namespace g2calc;

namespace {

KForm random_form(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  KForm f(k);
  for (int i = 0; i < f.size(); ++i) f[i] = u(rng);
  return f;
}

Matrix7 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix7 a;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) a(i, j) = scale * u(rng);
  return a;
}

Vector7 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector7 v;
  for (;;) {
    for (int i = 0; i < 7; ++i) v[i] = n(rng);
    if (v.norm() > 0.3) return v / v.norm();
  }
}

Vector7 cross_v(const G2Structure& s, const Vector7& u, const Vector7& v) {
  Vector7 w = Vector7::Zero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) w[k] += s.phi_d[i][j][k] * u[i] * v[j];
  return w;
}

}  // namespace

TEST_SUITE("g2") {

TEST_CASE("reference three-form matches the octonion product") {
  KForm phi = standard_phi();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        CHECK(phi({i, j, k}) == double(phi0_coeff(i, j, k)));
        AlgebraElement a = AlgebraElement::basis(8, i + 1);
        AlgebraElement b = AlgebraElement::basis(8, j + 1);
        AlgebraElement c = AlgebraElement::basis(8, k + 1);
        CHECK(phi({i, j, k}) == phi_form(a, b, c));
      }
  // seven terms, unit coefficients
  int nonzero = 0;
  for (int r = 0; r < phi.size(); ++r)
    if (phi[r] != 0.0) {
      ++nonzero;
      CHECK(std::abs(phi[r]) == 1.0);
    }
  CHECK(nonzero == 7);
}

TEST_CASE("reference four-form matches the associator") {
  KForm psi = standard_psi();
  KForm from_alg(4);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k)
        for (int l = k + 1; l < 7; ++l) {
          double v = psi_form(AlgebraElement::basis(8, i + 1),
                              AlgebraElement::basis(8, j + 1),
                              AlgebraElement::basis(8, k + 1),
                              AlgebraElement::basis(8, l + 1));
          from_alg.set({i, j, k, l}, v);
        }
  CHECK(max_abs(psi - from_alg) == 0.0);
  // and equals the flat Hodge dual of phi
  CHECK(max_abs(psi - hodge(standard_phi(), Metric::euclidean())) == 0.0);
  CHECK(form_norm2(psi, Metric::euclidean()) == 7.0);
}

TEST_CASE("metric recovery at the reference form") {
  KForm phi = standard_phi();
  MetricResult r = metric_from_phi(phi);
  REQUIRE(r.status == PositivityStatus::kOk);
  CHECK((r.metric.g - Matrix7::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.det_b == 1.0);
  CHECK(form_norm2(phi, r.metric) == 7.0);

  auto s = make_structure(phi);
  REQUIRE(s.has_value());
  CHECK(max_abs(s->psi - standard_psi()) == 0.0);
  CHECK(s->vol.degree() == 7);
  CHECK(s->vol[0] == 1.0);
  KForm top = wedge(phi, s->psi);
  CHECK(top[0] == 7.0);
}

TEST_CASE("metric recovery scaling") {
  KForm phi = 8.0 * standard_phi();
  MetricResult r = metric_from_phi(phi);
  REQUIRE(r.status == PositivityStatus::kOk);
  CHECK((r.metric.g - 4.0 * Matrix7::Identity()).cwiseAbs().maxCoeff() <=
        1e-11);
  auto s = make_structure(phi);
  REQUIRE(s.has_value());
  // *(8 phi) under g = 4I picks up 8 * 2
  CHECK(max_abs(s->psi - 16.0 * standard_psi()) <= 1e-10);
  KForm top = wedge(s->phi, s->psi);
  CHECK(top[0] == doctest::Approx(7.0 * s->metric.sqrt_det).epsilon(1e-12));
}

TEST_CASE("non-positive forms are rejected") {
  CHECK_FALSE(is_positive(-1.0 * standard_phi()));
  CHECK(metric_from_phi(-1.0 * standard_phi()).status ==
        PositivityStatus::kNotPositive);

  // no term touches the last axis, so the bilinear form is singular
  KForm degenerate(3);
  degenerate.set({0, 1, 2}, 1.0);
  degenerate.set({3, 4, 5}, 1.0);
  CHECK(metric_from_phi(degenerate).status == PositivityStatus::kDegenerate);
  CHECK_FALSE(is_positive(degenerate));

  CHECK(metric_from_phi(KForm(3)).status == PositivityStatus::kDegenerate);
}

TEST_CASE("positivity is stable under small perturbations") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    KForm phi = standard_phi() + 0.05 * random_form(3, rng);
    CHECK(is_positive(phi));
    MetricResult r = metric_from_phi(phi);
    REQUIRE(r.status == PositivityStatus::kOk);
    Eigen::SelfAdjointEigenSolver<Matrix7> es(r.metric.g);
    CHECK(es.eigenvalues().minCoeff() > 0.5);
    CHECK((r.metric.g - r.metric.g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pullback transforms the metric by congruence") {
  std::mt19937_64 rng(103);
  KForm phi = standard_phi();
  for (int t = 0; t < 25; ++t) {
    Matrix7 a = Matrix7::Identity() + random_matrix(rng, 0.4);
    if (a.determinant() <= 0.5) continue;
    KForm phi_a = pullback_linear(a, phi);
    MetricResult r = metric_from_phi(phi_a);
    REQUIRE(r.status == PositivityStatus::kOk);
    Matrix7 expect = a.transpose() * a;  // g = I upstream
    CHECK((r.metric.g - expect).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("contraction identities") {
  const G2Structure& s = standard_structure();
  ContractionResiduals r = verify_contractions(s);
  CHECK(r.max() == 0.0);  // integer arithmetic at the reference point

  std::mt19937_64 rng(107);
  for (int t = 0; t < 20; ++t) {
    Matrix7 a = Matrix7::Identity() + random_matrix(rng, 0.1);
    if (a.determinant() <= 0.0) continue;
    auto sa = make_structure(pullback_linear(a, standard_phi()));
    REQUIRE(sa.has_value());
    CHECK(verify_contractions(*sa).max() <= 1e-10);
  }
}

TEST_CASE("two-form operator spectrum") {
  const G2Structure& s = standard_structure();
  Eigen::Matrix<double, 21, 21> p;
  for (int c = 0; c < 21; ++c) {
    KForm basis(2);
    basis[c] = 1.0;
    KForm pb = p_operator(s, basis);
    for (int r = 0; r < 21; ++r) p(r, c) = pb[r];
  }
  // integer matrix: p^2 + p - 2 = 0 exactly
  Eigen::Matrix<double, 21, 21> residual =
      p * p + p - 2.0 * Eigen::Matrix<double, 21, 21>::Identity();
  CHECK(residual.cwiseAbs().maxCoeff() == 0.0);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 21, 21>> es(p);
  int n_m2 = 0, n_p1 = 0;
  for (int i = 0; i < 21; ++i) {
    double ev = es.eigenvalues()[i];
    if (std::abs(ev + 2.0) < 1e-12) ++n_m2;
    if (std::abs(ev - 1.0) < 1e-12) ++n_p1;
  }
  CHECK(n_m2 == 7);
  CHECK(n_p1 == 14);
}

TEST_CASE("two-form decomposition") {
  std::mt19937_64 rng(109);
  const G2Structure& flat = standard_structure();
  Matrix7 a = Matrix7::Identity() + random_matrix(rng, 0.2);
  auto curved = make_structure(pullback_linear(a, standard_phi()));
  REQUIRE(curved.has_value());

  for (const G2Structure* s : {&flat, static_cast<const G2Structure*>(&*curved)}) {
    for (int t = 0; t < 10; ++t) {
      KForm beta = random_form(2, rng);
      TwoFormSplit sp = decompose_2form(*s, beta);
      CHECK(max_abs(beta - (sp.b7 + sp.b14)) <= 1e-12);
      CHECK(max_abs(p_operator(*s, sp.b7) + 2.0 * sp.b7) <= 1e-11);
      CHECK(max_abs(p_operator(*s, sp.b14) - sp.b14) <= 1e-11);
      CHECK(form_inner(sp.b7, sp.b14, s->metric) ==
            doctest::Approx(0.0).epsilon(1e-11));
    }
    // vector recovery round trip
    for (int t = 0; t < 10; ++t) {
      Vector7 x = random_unit(rng);
      KForm beta(2);
      for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
          double v = 0;
          for (int c = 0; c < 7; ++c) v += x[c] * s->phi_d[c][i][j];
          beta.set({i, j}, v);
        }
      TwoFormSplit sp = decompose_2form(*s, beta);
      CHECK(max_abs(sp.b14) <= 1e-12);
      CHECK((vector_from_beta7(*s, beta) - x).norm() <= 1e-12);
    }
  }
}

TEST_CASE("diamond of the identity and of rotations") {
  const G2Structure& s = standard_structure();
  CHECK(max_abs(diamond(s, Matrix7::Identity()) - 3.0 * standard_phi()) ==
        0.0);

  // the 14-dimensional piece of so(7) acts trivially
  std::mt19937_64 rng(113);
  for (int t = 0; t < 10; ++t) {
    KForm beta = random_form(2, rng);
    TwoFormSplit sp = decompose_2form(s, beta);
    Matrix7 x = Matrix7::Zero();
    for (int l = 0; l < 7; ++l)
      for (int i = 0; i < 7; ++i) x(l, i) = sp.b14({l, i});
    CHECK(max_abs(diamond(s, x)) <= 1e-13);
  }
}

TEST_CASE("diamond has full image") {
  const G2Structure& s = standard_structure();
  Eigen::MatrixXd d(35, 49);
  for (int l = 0; l < 7; ++l)
    for (int i = 0; i < 7; ++i) {
      Matrix7 e = Matrix7::Zero();
      e(l, i) = 1.0;
      KForm im = diamond(s, e);
      for (int r = 0; r < 35; ++r) d(r, 7 * l + i) = im[r];
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10) ++rank;
  CHECK(rank == 35);
}

TEST_CASE("three-form decomposition") {
  std::mt19937_64 rng(127);
  const G2Structure& flat = standard_structure();
  Matrix7 a = Matrix7::Identity() + random_matrix(rng, 0.2);
  auto curved = make_structure(pullback_linear(a, standard_phi()));
  REQUIRE(curved.has_value());

  for (const G2Structure* s : {&flat, static_cast<const G2Structure*>(&*curved)}) {
    const Metric& m = s->metric;
    for (int t = 0; t < 10; ++t) {
      KForm gamma = random_form(3, rng);
      ThreeFormSplit sp = decompose_3form(*s, gamma);
      CHECK(max_abs(gamma - (sp.g1 + sp.g7 + sp.g27)) <= 1e-12);
      CHECK(max_abs(sp.g1 - sp.f * s->phi) <= 1e-13);
      CHECK(sp.f == doctest::Approx(form_inner(gamma, s->phi, m) / 7.0)
                        .epsilon(1e-12));
      // pairwise orthogonal
      CHECK(std::abs(form_inner(sp.g1, sp.g7, m)) <= 1e-11);
      CHECK(std::abs(form_inner(sp.g1, sp.g27, m)) <= 1e-11);
      CHECK(std::abs(form_inner(sp.g7, sp.g27, m)) <= 1e-11);
      // the 27 piece kills both wedge pairings
      CHECK(max_abs(wedge(sp.g27, s->phi)) <= 1e-11);
      CHECK(max_abs(wedge(sp.g27, s->psi)) <= 1e-11);
      // the 7 piece is the claimed contraction
      KForm xpsi = interior(sp.x, s->psi);
      CHECK(max_abs(sp.g7 - xpsi) <= 1e-11);
      // independent recovery of x by least squares against e_m -| psi
      Eigen::MatrixXd basis(35, 7);
      for (int c = 0; c < 7; ++c) {
        Vector7 e = Vector7::Zero();
        e[c] = 1.0;
        KForm col = interior(e, s->psi);
        for (int r = 0; r < 35; ++r) basis(r, c) = col[r];
      }
      Eigen::VectorXd rhs(35);
      for (int r = 0; r < 35; ++r) rhs[r] = sp.g7[r];
      Eigen::VectorXd x = basis.colPivHouseholderQr().solve(rhs);
      CHECK((x - Eigen::VectorXd(sp.x)).norm() <= 1e-10);
    }
    // self-adjoint traceless endomorphisms map into the 27 piece
    for (int t = 0; t < 5; ++t) {
      Matrix7 b = random_matrix(rng);
      Matrix7 h = m.ginv * 0.5 * (b + b.transpose());
      h -= (h.trace() / 7.0) * Matrix7::Identity();
      ThreeFormSplit sp = decompose_3form(*s, diamond(*s, h));
      CHECK(std::abs(sp.f) <= 1e-12);
      CHECK(sp.x.norm() <= 1e-11);
    }
  }
}

TEST_CASE("frame completion to the symmetry group") {
  Vector7 e0 = Vector7::Unit(0), e1 = Vector7::Unit(1), e3 = Vector7::Unit(3);
  auto id = g2_element_from_triple(e0, e1, e3);
  REQUIRE(id.has_value());
  CHECK((*id - Matrix7::Identity()).cwiseAbs().maxCoeff() == 0.0);

  // f4 parallel to f1 x f2 is not admissible
  CHECK_FALSE(g2_element_from_triple(e0, e1, Vector7::Unit(2)).has_value());
  // non-unit and non-orthogonal inputs are rejected
  CHECK_FALSE(g2_element_from_triple(2.0 * e0, e1, e3).has_value());
  CHECK_FALSE(
      g2_element_from_triple(e0, (e0 + e1).normalized(), e3).has_value());

  const G2Structure& s = standard_structure();
  std::mt19937_64 rng(131);
  int built = 0;
  while (built < 100) {
    Vector7 f1 = random_unit(rng);
    Vector7 f2 = random_unit(rng);
    f2 -= f2.dot(f1) * f1;
    if (f2.norm() < 0.3) continue;
    f2.normalize();
    Vector7 f3 = cross_v(s, f1, f2);
    Vector7 f4 = random_unit(rng);
    f4 -= f4.dot(f1) * f1 + f4.dot(f2) * f2 + f4.dot(f3) * f3;
    if (f4.norm() < 0.3) continue;
    f4.normalize();
    auto a = g2_element_from_triple(f1, f2, f4);
    REQUIRE(a.has_value());
    CHECK((a->transpose() * *a - Matrix7::Identity()).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(a->determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs(pullback_linear(*a, standard_phi()) - standard_phi()) <=
          1e-12);
    ++built;
  }
}

TEST_CASE("volume functional variation") {
  const G2Structure& s = standard_structure();
  KForm phi = standard_phi(), psi = standard_psi();

  CHECK(max_abs(hitchin_variation(s, phi) - (4.0 / 3.0) * psi) <= 1e-14);

  std::mt19937_64 rng(137);
  Metric e = Metric::euclidean();
  for (int t = 0; t < 5; ++t) {
    // pure pieces
    Vector7 x = random_unit(rng);
    KForm g7 = interior(x, psi);
    CHECK(max_abs(hitchin_variation(s, g7) - hodge(g7, e)) <= 1e-12);
    Matrix7 b = random_matrix(rng);
    Matrix7 h = 0.5 * (b + b.transpose());
    h -= (h.trace() / 7.0) * Matrix7::Identity();
    KForm g27 = diamond(s, h);
    CHECK(max_abs(hitchin_variation(s, g27) + hodge(g27, e)) <= 1e-11);

    // linearity
    KForm u = random_form(3, rng), v = random_form(3, rng);
    CHECK(max_abs(hitchin_variation(s, u + 2.0 * v) -
                  (hitchin_variation(s, u) + 2.0 * hitchin_variation(s, v))) <=
          1e-12);
  }

  // finite differences of t -> *(phi + t gamma), Richardson extrapolated
  for (int t = 0; t < 5; ++t) {
    KForm gamma = random_form(3, rng);
    auto star_at = [&](double tt) {
      auto st = make_structure(phi + tt * gamma);
      REQUIRE(st.has_value());
      return st->psi;
    };
    auto central = [&](double h) {
      return (1.0 / (2.0 * h)) * (star_at(h) - star_at(-h));
    };
    KForm d1 = central(1e-4), d2 = central(5e-5);
    KForm fd = (1.0 / 3.0) * (4.0 * d2 - d1);
    CHECK(max_abs(hitchin_variation(s, gamma) - fd) <= 1e-6);
  }
}

}  // TEST_SUITE

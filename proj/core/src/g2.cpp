#include "g2calc/g2.hpp"

#include <algorithm>
#include <cmath>

#include "g2calc/algebra.hpp"

namespace g2calc {

namespace {

Vector7 basis_vector(int i) {
  Vector7 v = Vector7::Zero();
  v[i] = 1.0;
  return v;
}

}  // namespace

KForm standard_phi() {
  // Same oriented triples as the cross product table.
  KForm phi(3);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k) {
        int s = phi0_coeff(i, j, k);
        if (s != 0) phi.set({i, j, k}, static_cast<double>(s));
      }
  return phi;
}

KForm standard_psi() {
  // psi0 = e4567 - e4523 - e4163 - e4127 - e2637 - e1537 - e1526 (1-based).
  KForm psi(4);
  psi.set({3, 4, 5, 6}, 1.0);
  psi.set({3, 4, 1, 2}, -1.0);
  psi.set({3, 0, 5, 2}, -1.0);
  psi.set({3, 0, 1, 6}, -1.0);
  psi.set({1, 5, 2, 6}, -1.0);
  psi.set({0, 4, 2, 6}, -1.0);
  psi.set({0, 4, 1, 5}, -1.0);
  return psi;
}

MetricResult metric_from_phi(const KForm& phi) {
  MetricResult out;
  KForm iphi[7];
  for (int i = 0; i < 7; ++i) iphi[i] = interior(basis_vector(i), phi);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      KForm top = wedge(wedge(iphi[i], iphi[j]), phi);
      double bij = top[0] / -6.0;
      out.b(i, j) = bij;
      out.b(j, i) = bij;
    }
  out.det_b = out.b.determinant();

  double n2 = 0.0;
  for (int r = 0; r < phi.size(); ++r) n2 += phi[r] * phi[r];
  const double scale9 = std::pow(std::sqrt(n2), 9);
  if (std::abs(out.det_b) <= 1e-10 * scale9) {
    out.status = PositivityStatus::kDegenerate;
    return out;
  }
  if (out.det_b < 0.0) {
    out.status = PositivityStatus::kNotPositive;
    return out;
  }
  Matrix7 g = out.b * std::pow(out.det_b, -1.0 / 9.0);
  Eigen::SelfAdjointEigenSolver<Matrix7> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10 * g.trace() / 7.0) {
    out.status = PositivityStatus::kNotPositive;
    return out;
  }
  out.status = PositivityStatus::kOk;
  out.metric = Metric::from_matrix(g);
  return out;
}

bool is_positive(const KForm& phi) {
  return metric_from_phi(phi).status == PositivityStatus::kOk;
}

std::optional<G2Structure> make_structure(const KForm& phi) {
  MetricResult mr = metric_from_phi(phi);
  if (mr.status != PositivityStatus::kOk) return std::nullopt;
  G2Structure s;
  s.phi = phi;
  s.metric = mr.metric;
  s.psi = hodge(phi, mr.metric);
  s.vol = volume_form(mr.metric);
  dense3(s.phi, s.phi_d);
  dense4(s.psi, s.psi_d);
  return s;
}

const G2Structure& standard_structure() {
  static const G2Structure s = *make_structure(standard_phi());
  return s;
}

double ContractionResiduals::max() const {
  double m = phph1;
  for (double v : {phph2, phps1, phps2, psps2, psps3})
    m = std::max(m, v);
  return m;
}

ContractionResiduals verify_contractions(const G2Structure& s) {
  ContractionResiduals r;
  const auto& ph = s.phi_d;
  const auto& ps = s.psi_d;
  const Matrix7& g = s.metric.g;
  const Matrix7& gi = s.metric.ginv;

  // phi_ijk phi_abc g^{kc} = g_ia g_jb - g_ib g_ja - psi_ijab
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
          double s1 = 0.0;
          for (int k = 0; k < 7; ++k)
            for (int c = 0; c < 7; ++c) s1 += ph[i][j][k] * ph[a][b][c] * gi(k, c);
          double rhs = g(i, a) * g(j, b) - g(i, b) * g(j, a) - ps[i][j][a][b];
          r.phph1 = std::max(r.phph1, std::abs(s1 - rhs));
        }

  // phi_ijk phi_abc g^{jb} g^{kc} = 6 g_ia
  for (int i = 0; i < 7; ++i)
    for (int a = 0; a < 7; ++a) {
      double s2 = 0.0;
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k) {
          if (ph[i][j][k] == 0.0) continue;
          for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c)
              s2 += ph[i][j][k] * ph[a][b][c] * gi(j, b) * gi(k, c);
        }
      r.phph2 = std::max(r.phph2, std::abs(s2 - 6.0 * g(i, a)));
    }

  // phi_ijk psi_abcd g^{kd} = g_ia phi_jbc + g_ib phi_ajc + g_ic phi_abj
  //                         - g_aj phi_ibc - g_bj phi_aic - g_cj phi_abi
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
          for (int c = 0; c < 7; ++c) {
            double s3 = 0.0;
            for (int k = 0; k < 7; ++k)
              for (int d = 0; d < 7; ++d)
                s3 += ph[i][j][k] * ps[a][b][c][d] * gi(k, d);
            double rhs = g(i, a) * ph[j][b][c] + g(i, b) * ph[a][j][c] +
                         g(i, c) * ph[a][b][j] - g(a, j) * ph[i][b][c] -
                         g(b, j) * ph[a][i][c] - g(c, j) * ph[a][b][i];
            r.phps1 = std::max(r.phps1, std::abs(s3 - rhs));
          }

  // phi_ijk psi_abcd g^{jc} g^{kd} = -4 phi_iab
  for (int i = 0; i < 7; ++i)
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        double s4 = 0.0;
        for (int j = 0; j < 7; ++j)
          for (int k = 0; k < 7; ++k) {
            if (ph[i][j][k] == 0.0) continue;
            for (int c = 0; c < 7; ++c)
              for (int d = 0; d < 7; ++d)
                s4 += ph[i][j][k] * ps[a][b][c][d] * gi(j, c) * gi(k, d);
          }
        r.phps2 = std::max(r.phps2, std::abs(s4 + 4.0 * ph[i][a][b]));
      }

  // half-raised psi: A_{ij,cd} = psi_ijkl g^{kc} g^{ld}
  static thread_local double araised[7][7][7][7];
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int c = 0; c < 7; ++c)
        for (int d = 0; d < 7; ++d) {
          double v = 0.0;
          for (int k = 0; k < 7; ++k)
            for (int l = 0; l < 7; ++l)
              v += ps[i][j][k][l] * gi(k, c) * gi(l, d);
          araised[i][j][c][d] = v;
        }

  // psi_ijkl psi_abcd g^{kc} g^{ld} = 4 g_ia g_jb - 4 g_ib g_ja - 2 psi_ijab
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
          double s5 = 0.0;
          for (int c = 0; c < 7; ++c)
            for (int d = 0; d < 7; ++d)
              s5 += araised[i][j][c][d] * ps[a][b][c][d];
          double rhs = 4.0 * g(i, a) * g(j, b) - 4.0 * g(i, b) * g(j, a) -
                       2.0 * ps[i][j][a][b];
          r.psps2 = std::max(r.psps2, std::abs(s5 - rhs));
        }

  // psi_ijkl psi_abcd g^{jb} g^{kc} g^{ld} = 24 g_ia
  for (int i = 0; i < 7; ++i)
    for (int a = 0; a < 7; ++a) {
      double s6 = 0.0;
      for (int j = 0; j < 7; ++j)
        for (int b = 0; b < 7; ++b) {
          double t = 0.0;
          for (int c = 0; c < 7; ++c)
            for (int d = 0; d < 7; ++d)
              t += araised[i][j][c][d] * ps[a][b][c][d];
          s6 += t * gi(j, b);
        }
      r.psps3 = std::max(r.psps3, std::abs(s6 - 24.0 * g(i, a)));
    }
  return r;
}

KForm p_operator(const G2Structure& s, const KForm& beta) {
  KForm braised = raise_indices(beta, s.metric);
  double bd[7][7];
  for (int c = 0; c < 7; ++c)
    for (int d = 0; d < 7; ++d) bd[c][d] = 0.0;
  for (int r = 0; r < braised.size(); ++r) {
    unsigned m = subset_mask(2, r);
    int c = 0, d = 0;
    for (int bit = 0, found = 0; bit < 7; ++bit)
      if (m & (1u << bit)) (found++ ? d : c) = bit;
    bd[c][d] = braised[r];
    bd[d][c] = -braised[r];
  }
  KForm out(2);
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      double v = 0.0;
      for (int c = 0; c < 7; ++c)
        for (int d = 0; d < 7; ++d) v += s.psi_d[a][b][c][d] * bd[c][d];
      out.set({a, b}, 0.5 * v);
    }
  return out;
}

TwoFormSplit decompose_2form(const G2Structure& s, const KForm& beta) {
  KForm pb = p_operator(s, beta);
  TwoFormSplit out;
  out.b7 = (1.0 / 3.0) * (beta - pb);
  out.b14 = (1.0 / 3.0) * (2.0 * beta + pb);
  return out;
}

Vector7 vector_from_beta7(const G2Structure& s, const KForm& beta7) {
  KForm braised = raise_indices(beta7, s.metric);
  Vector7 w = Vector7::Zero();
  for (int r = 0; r < braised.size(); ++r) {
    unsigned m = subset_mask(2, r);
    int a = 0, b = 0;
    for (int bit = 0, found = 0; bit < 7; ++bit)
      if (m & (1u << bit)) (found++ ? b : a) = bit;
    for (int k = 0; k < 7; ++k) w[k] += 2.0 * braised[r] * s.phi_d[a][b][k];
  }
  return (1.0 / 6.0) * (s.metric.ginv * w);
}

KForm diamond(const G2Structure& s, const Matrix7& a) {
  KForm out(3);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k) {
        double v = 0.0;
        for (int l = 0; l < 7; ++l)
          v += a(l, i) * s.phi_d[l][j][k] + a(l, j) * s.phi_d[i][l][k] +
               a(l, k) * s.phi_d[i][j][l];
        out.set({i, j, k}, v);
      }
  return out;
}

ThreeFormSplit decompose_3form(const G2Structure& s, const KForm& gamma) {
  ThreeFormSplit out;
  out.f = form_inner(gamma, s.phi, s.metric) / 7.0;
  out.g1 = out.f * s.phi;
  Vector7 c;
  for (int m = 0; m < 7; ++m)
    c[m] = form_inner(gamma, interior(basis_vector(m), s.psi), s.metric);
  out.x = 0.25 * (s.metric.ginv * c);
  out.g7 = interior(out.x, s.psi);
  out.g27 = gamma - out.g1 - out.g7;
  return out;
}

std::optional<Matrix7> g2_element_from_triple(const Vector7& f1,
                                              const Vector7& f2,
                                              const Vector7& f4, double tol) {
  auto arr = [](const Vector7& v) {
    std::array<double, 7> a;
    for (int i = 0; i < 7; ++i) a[i] = v[i];
    return a;
  };
  auto vec = [](const std::array<double, 7>& a) {
    Vector7 v;
    for (int i = 0; i < 7; ++i) v[i] = a[i];
    return v;
  };
  const Vector7 f3 = vec(cross7(arr(f1), arr(f2)));
  if (std::abs(f1.squaredNorm() - 1.0) > tol ||
      std::abs(f2.squaredNorm() - 1.0) > tol ||
      std::abs(f4.squaredNorm() - 1.0) > tol ||
      std::abs(f1.dot(f2)) > tol || std::abs(f1.dot(f4)) > tol ||
      std::abs(f2.dot(f4)) > tol || std::abs(f3.dot(f4)) > tol)
    return std::nullopt;
  const Vector7 f5 = vec(cross7(arr(f1), arr(f4)));
  const Vector7 f6 = vec(cross7(arr(f2), arr(f4)));
  const Vector7 f7 = vec(cross7(arr(f3), arr(f4)));
  Matrix7 a;
  a.col(0) = f1;
  a.col(1) = f2;
  a.col(2) = f3;
  a.col(3) = f4;
  a.col(4) = f5;
  a.col(5) = f6;
  a.col(6) = f7;
  return a;
}

KForm hitchin_variation(const G2Structure& s, const KForm& gamma) {
  ThreeFormSplit p = decompose_3form(s, gamma);
  return (4.0 / 3.0) * hodge(p.g1, s.metric) + hodge(p.g7, s.metric) -
         hodge(p.g27, s.metric);
}

}  // namespace g2calc

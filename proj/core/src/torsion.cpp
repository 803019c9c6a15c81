#include "g2calc/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace g2calc {

namespace {

struct Stage {
  PositivityStatus status = PositivityStatus::kOk;
  long long bad_site = -1;
  MetricField mf;
  Field psi;    // 35 comps
  Field gamma;  // 343 comps
  Field nphi;   // 245 comps
  bool ok() const { return status == PositivityStatus::kOk; }
};

Stage stage_of(const Field& phi) {
  Stage st;
  MetricFieldResult mr = metric_field(phi);
  st.status = mr.status;
  st.bad_site = mr.bad_site;
  if (!st.ok()) return st;
  st.mf = std::move(mr.mf);
  st.psi = hodge_field(phi, st.mf);
  st.gamma = christoffel(st.mf);
  st.nphi = covariant_d_form(phi, st.gamma);
  return st;
}

// Interior products of psi with all raised indices: the contraction dual
// that turns nabla phi back into the torsion rows.
void psi_duals(const Metric& m, const KForm& psi, double (&w)[7][35]) {
  for (int n = 0; n < 7; ++n) {
    KForm wn = raise_indices(interior(Vector7::Unit(n), psi), m);
    for (int r = 0; r < 35; ++r) w[n][r] = wn[r];
  }
}

G2Structure site_structure(const Field& phi, const Stage& st, long long s) {
  G2Structure g;
  g.phi = phi.form_at(s);
  g.metric = st.mf.m[s];
  g.psi = st.psi.form_at(s);
  g.vol = volume_form(g.metric);
  dense3(g.phi, g.phi_d);
  dense4(g.psi, g.psi_d);
  return g;
}

struct TCore {
  Field t;
  double nabla_phi_residual = 0;
  double nabla_phi_max = 0;
  double recovery_residual = 0;
};

TCore torsion_core(const Field& phi, const Stage& st) {
  TCore tc;
  tc.t = Field::plain(phi.lat, 49);
  const long long total = phi.lat.sites();
  double w[7][35];
  for (long long s = 0; s < total; ++s) {
    const Metric& m = st.mf.m[s];
    KForm psis = st.psi.form_at(s);
    psi_duals(m, psis, w);
    const double* np = st.nphi.at(s);
    double* t = tc.t.at(s);
    for (int mm = 0; mm < 7; ++mm)
      for (int n = 0; n < 7; ++n) {
        double v = 0.0;
        for (int r = 0; r < 35; ++r) v += np[mm * 35 + r] * w[n][r];
        t[mm * 7 + n] = 0.25 * v;
      }
    for (int mm = 0; mm < 7; ++mm) {
      Vector7 v = Vector7::Zero();
      for (int q = 0; q < 7; ++q)
        for (int p = 0; p < 7; ++p) v[q] += m.ginv(q, p) * t[mm * 7 + p];
      KForm res = interior(v, psis);
      for (int r = 0; r < 35; ++r) {
        res[r] = np[mm * 35 + r] - res[r];
        tc.nabla_phi_residual = std::max(tc.nabla_phi_residual,
                                         std::abs(res[r]));
        tc.nabla_phi_max = std::max(tc.nabla_phi_max,
                                    std::abs(np[mm * 35 + r]));
      }
      for (int n = 0; n < 7; ++n) {
        double v2 = 0.0;
        for (int r = 0; r < 35; ++r) v2 += res[r] * w[n][r];
        tc.recovery_residual = std::max(tc.recovery_residual,
                                        0.25 * std::abs(v2));
      }
    }
  }
  return tc;
}

double pair_inner(const Matrix7& a, const Matrix7& b, const Matrix7& ginv) {
  return (ginv * a * ginv * b.transpose()).trace();
}

TorsionReport full_torsion_impl(const Field& phi, Stage* keep) {
  TorsionReport rep;
  Stage st = stage_of(phi);
  rep.status = st.status;
  rep.bad_site = st.bad_site;
  if (!st.ok()) return rep;
  TCore tc = torsion_core(phi, st);
  rep.t = std::move(tc.t);
  rep.nabla_phi_residual = tc.nabla_phi_residual;
  rep.nabla_phi_max = tc.nabla_phi_max;
  rep.recovery_residual = tc.recovery_residual;

  const LatticeSpec& lat = phi.lat;
  rep.t1 = Field::plain(lat, 49);
  rep.t7 = Field::plain(lat, 49);
  rep.t14 = Field::plain(lat, 49);
  rep.t27 = Field::plain(lat, 49);
  const long long total = lat.sites();
  for (long long s = 0; s < total; ++s) {
    G2Structure g = site_structure(phi, st, s);
    const double* tp = rep.t.at(s);
    Matrix7 t;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) t(i, j) = tp[i * 7 + j];
    const double trg = (g.metric.ginv * t).trace();
    Matrix7 t1 = (trg / 7.0) * g.metric.g;
    Matrix7 t27 = 0.5 * (t + t.transpose()) - t1;
    Matrix7 anti = 0.5 * (t - t.transpose());
    KForm beta(2);
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j)
        beta[subset_rank(2, (1u << i) | (1u << j))] = anti(i, j);
    TwoFormSplit split = decompose_2form(g, beta);
    Matrix7 t7 = Matrix7::Zero(), t14 = Matrix7::Zero();
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        const int r = subset_rank(2, (1u << i) | (1u << j));
        t7(i, j) = split.b7[r];
        t7(j, i) = -split.b7[r];
        t14(i, j) = split.b14[r];
        t14(j, i) = -split.b14[r];
      }
    double* p1 = rep.t1.at(s);
    double* p7 = rep.t7.at(s);
    double* p14 = rep.t14.at(s);
    double* p27 = rep.t27.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        p1[i * 7 + j] = t1(i, j);
        p7[i * 7 + j] = t7(i, j);
        p14[i * 7 + j] = t14(i, j);
        p27[i * 7 + j] = t27(i, j);
        rep.decomp_residual =
            std::max(rep.decomp_residual,
                     std::abs(t(i, j) - t1(i, j) - t7(i, j) - t14(i, j) -
                              t27(i, j)));
      }
    const Matrix7 parts[4] = {t1, t7, t14, t27};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        rep.orth_residual =
            std::max(rep.orth_residual,
                     std::abs(pair_inner(parts[a], parts[b], g.metric.ginv)));
  }
  rep.t_max = max_abs(rep.t);
  rep.t1_max = max_abs(rep.t1);
  rep.t7_max = max_abs(rep.t7);
  rep.t14_max = max_abs(rep.t14);
  rep.t27_max = max_abs(rep.t27);
  if (keep) *keep = std::move(st);
  return rep;
}

}  // namespace

TorsionReport full_torsion(const Field& phi) {
  return full_torsion_impl(phi, nullptr);
}

double verify_nabla_psi(const Field& phi) {
  Stage st = stage_of(phi);
  if (!st.ok())
    throw std::invalid_argument("verify_nabla_psi: non-positive form");
  TCore tc = torsion_core(phi, st);
  Field npsi = covariant_d_form(st.psi, st.gamma);
  const long long total = phi.lat.sites();
  double worst = 0.0;
  for (long long s = 0; s < total; ++s) {
    KForm phis = phi.form_at(s);
    const double* t = tc.t.at(s);
    const double* np = npsi.at(s);
    for (int p = 0; p < 7; ++p) {
      KForm row(1);
      for (int mth = 0; mth < 7; ++mth) row[mth] = t[p * 7 + mth];
      KForm rhs = wedge(row, phis);
      for (int r = 0; r < 35; ++r)
        worst = std::max(worst, std::abs(np[p * 35 + r] + rhs[r]));
    }
  }
  return worst;
}

FernandezGray fernandez_gray(const Field& phi, double threshold) {
  FernandezGray fg;
  fg.threshold = threshold;
  Stage st;
  TorsionReport rep = full_torsion_impl(phi, &st);
  if (rep.status != PositivityStatus::kOk)
    throw std::invalid_argument("fernandez_gray: non-positive form");
  fg.t_max = rep.t_max;
  fg.t1_max = rep.t1_max;
  fg.t7_max = rep.t7_max;
  fg.t14_max = rep.t14_max;
  fg.t27_max = rep.t27_max;
  fg.dphi_max = max_abs(exterior_d(phi));
  fg.dpsi_max = max_abs(exterior_d(st.psi));
  fg.closed = fg.dphi_max <= threshold;
  fg.coclosed = fg.dpsi_max <= threshold;
  fg.torsion_free = fg.t_max <= threshold;
  fg.closed_from_torsion =
      std::max({fg.t1_max, fg.t7_max, fg.t27_max}) <= threshold;
  fg.coclosed_from_torsion = std::max(fg.t7_max, fg.t14_max) <= threshold;
  fg.consistent = fg.closed == fg.closed_from_torsion &&
                  fg.coclosed == fg.coclosed_from_torsion &&
                  (fg.closed && fg.coclosed) == fg.torsion_free;
  return fg;
}

Classification classify(const TorsionReport& report, double tol_abs,
                        double tol_rel) {
  Classification c;
  c.threshold = std::max(tol_abs, tol_rel * report.t_max);
  c.c1 = report.t1_max > c.threshold;
  c.c7 = report.t7_max > c.threshold;
  c.c14 = report.t14_max > c.threshold;
  c.c27 = report.t27_max > c.threshold;
  if (!c.c1 && !c.c7 && !c.c14 && !c.c27) {
    c.label = "torsion-free";
  } else if (c.c1 && !c.c7 && !c.c14 && !c.c27) {
    c.label = "nearly parallel";
  } else if (!c.c1 && !c.c7 && c.c14 && !c.c27) {
    c.label = "closed";
  } else if (!c.c7 && !c.c14) {
    c.label = "coclosed";
  } else {
    c.label = "components {";
    bool first = true;
    for (auto [on, name] : {std::pair{c.c1, "1"}, std::pair{c.c7, "7"},
                            std::pair{c.c14, "14"}, std::pair{c.c27, "27"}}) {
      if (!on) continue;
      if (!first) c.label += ",";
      c.label += name;
      first = false;
    }
    c.label += "}";
  }
  return c;
}

namespace {

// g^{il} g^{pq} phi_lqk, shared by the curvature identities.
void raised_phi2(const Metric& m, const double (&phid)[7][7][7],
                 double (&out)[7][7][7]) {
  double tmp[7][7][7];
  for (int l = 0; l < 7; ++l)
    for (int p = 0; p < 7; ++p)
      for (int k = 0; k < 7; ++k) {
        double v = 0.0;
        for (int q = 0; q < 7; ++q) v += m.ginv(p, q) * phid[l][q][k];
        tmp[l][p][k] = v;
      }
  for (int i = 0; i < 7; ++i)
    for (int p = 0; p < 7; ++p)
      for (int k = 0; k < 7; ++k) {
        double v = 0.0;
        for (int l = 0; l < 7; ++l) v += m.ginv(i, l) * tmp[l][p][k];
        out[i][p][k] = v;
      }
}

Matrix7 ricci_torsion_site(const Metric& m, const double (&phid)[7][7][7],
                           const double (&psid)[7][7][7][7], const Matrix7& t,
                           const double* nt) {
  double phup[7][7][7];
  raised_phi2(m, phid, phup);
  Matrix7 ric = Matrix7::Zero();
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      double v = 0.0;
      for (int i = 0; i < 7; ++i)
        for (int p = 0; p < 7; ++p)
          v += (nt[i * 49 + j * 7 + p] - nt[j * 49 + i * 7 + p]) *
               phup[i][p][k];
      ric(j, k) = v;
    }
  const Matrix7 tup = m.ginv * t * m.ginv;
  Matrix7 sm = Matrix7::Zero();
  for (int mm = 0; mm < 7; ++mm)
    for (int k = 0; k < 7; ++k) {
      double v = 0.0;
      for (int p = 0; p < 7; ++p)
        for (int q = 0; q < 7; ++q) v += tup(p, q) * psid[p][q][mm][k];
      sm(mm, k) = v;
    }
  const double trg = (m.ginv * t).trace();
  ric += -t * m.ginv * t + trg * t - t * m.ginv * sm;
  return ric;
}

}  // namespace

double bianchi_residual(const Field& phi) {
  Stage st = stage_of(phi);
  if (!st.ok())
    throw std::invalid_argument("bianchi_residual: non-positive form");
  TCore tc = torsion_core(phi, st);
  Field nt = covariant_d_rank2(tc.t, st.gamma);
  Field riem = riemann(st.mf, st.gamma);
  const long long total = phi.lat.sites();
  double worst = 0.0;
  double phid[7][7][7];
  double phup[7][7][7];
  for (long long s = 0; s < total; ++s) {
    dense3(phi.form_at(s), phid);
    raised_phi2(st.mf.m[s], phid, phup);
    const double* t = tc.t.at(s);
    const double* d = nt.at(s);
    const double* r = riem.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j)
        for (int k = 0; k < 7; ++k) {
          double v = d[i * 49 + j * 7 + k] - d[j * 49 + i * 7 + k];
          for (int p = 0; p < 7; ++p)
            for (int q = 0; q < 7; ++q)
              v -= (t[i * 7 + p] * t[j * 7 + q] +
                    0.5 * r[((i * 7 + j) * 7 + p) * 7 + q]) *
                   phup[p][q][k];
          worst = std::max(worst, std::abs(v));
        }
  }
  return worst;
}

RicciComparison ricci_two_ways(const Field& phi) {
  Stage st = stage_of(phi);
  if (!st.ok())
    throw std::invalid_argument("ricci_two_ways: non-positive form");
  TCore tc = torsion_core(phi, st);
  Field nt = covariant_d_rank2(tc.t, st.gamma);
  Field riem = riemann(st.mf, st.gamma);
  RicciComparison cmp;
  cmp.from_torsion = Field::plain(phi.lat, 49);
  cmp.direct = Field::plain(phi.lat, 49);
  const long long total = phi.lat.sites();
  double phid[7][7][7];
  static thread_local double psid[7][7][7][7];
  for (long long s = 0; s < total; ++s) {
    const Metric& m = st.mf.m[s];
    dense3(phi.form_at(s), phid);
    dense4(st.psi.form_at(s), psid);
    Matrix7 t;
    const double* tp = tc.t.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) t(i, j) = tp[i * 7 + j];
    Matrix7 rt = ricci_torsion_site(m, phid, psid, t, nt.at(s));
    const double* r = riem.at(s);
    double* ft = cmp.from_torsion.at(s);
    double* dr = cmp.direct.at(s);
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        double v = 0.0;
        for (int i = 0; i < 7; ++i)
          for (int l = 0; l < 7; ++l)
            v += m.ginv(i, l) * r[((i * 7 + j) * 7 + k) * 7 + l];
        dr[j * 7 + k] = v;
        ft[j * 7 + k] = rt(j, k);
        cmp.max_discrepancy =
            std::max(cmp.max_discrepancy, std::abs(rt(j, k) - v));
      }
  }
  return cmp;
}

Matrix7 ricci_from_torsion_pointwise(const G2Structure& s, const Matrix7& t,
                                     const std::array<double, 343>& nabla_t) {
  return ricci_torsion_site(s.metric, s.phi_d, s.psi_d, t, nabla_t.data());
}

namespace {

KForm e1(int a) {
  KForm f(1);
  f[a] = 1.0;
  return f;
}

KForm e2f(int a, int b) { return wedge(e1(a), e1(b)); }

KForm e3f(int a, int b, int c) { return wedge(e2f(a, b), e1(c)); }

}  // namespace

// Hyper-Kaehler triple on the last four axes, self-dual in their
// coordinate orientation; the first three axes are the flat factor.
KForm su2_product_phi() {
  const KForm w1 = e2f(3, 4) + e2f(5, 6);
  const KForm w2 = e2f(3, 5) - e2f(4, 6);
  const KForm w3 = e2f(3, 6) + e2f(4, 5);
  return wedge(e1(0), w1) + wedge(e1(1), w2) + wedge(e1(2), w3) -
         e3f(0, 1, 2);
}

KForm su2_companion() {
  const KForm w1 = e2f(3, 4) + e2f(5, 6);
  const KForm w2 = e2f(3, 5) - e2f(4, 6);
  const KForm w3 = e2f(3, 6) + e2f(4, 5);
  return wedge(e2f(1, 2), w1) + wedge(e2f(2, 0), w2) + wedge(e2f(0, 1), w3) -
         0.5 * wedge(w1, w1);
}

// Circle along axis 0; complex pairs (1,2), (3,4), (5,6) with the third
// conjugated, holomorphic form Omega = -dz1 dz2 dz3. This is the unique
// kind of assignment that keeps the product form positive.
KForm su3_product_phi() {
  const KForm w = e2f(1, 2) + e2f(3, 4) - e2f(5, 6);
  const KForm re0 = e3f(1, 3, 5) + e3f(1, 4, 6) + e3f(2, 3, 6) -
                    e3f(2, 4, 5);  // Re(dz1 dz2 dz3)
  return wedge(e1(0), w) + re0;
}

KForm su3_companion() {
  const KForm w = e2f(1, 2) + e2f(3, 4) - e2f(5, 6);
  const KForm im0 = e3f(2, 3, 5) + e3f(1, 4, 5) - e3f(1, 3, 6) +
                    e3f(2, 4, 6);  // Im(dz1 dz2 dz3)
  return 0.5 * wedge(w, w) - wedge(e1(0), im0);
}

Field build_su2_product(const LatticeSpec& lat) {
  return constant_form(lat, su2_product_phi());
}

Field build_su3_product(const LatticeSpec& lat) {
  return constant_form(lat, su3_product_phi());
}

double hitchin_functional(const Field& phi) {
  const long long total = phi.lat.sites();
  double sum = 0.0;
  for (long long s = 0; s < total; ++s) {
    KForm f = phi.form_at(s);
    MetricResult mr = metric_from_phi(f);
    if (mr.status != PositivityStatus::kOk) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "hitchin_functional: non-positive form at site %lld", s);
      throw std::invalid_argument(buf);
    }
    sum += wedge(f, hodge(f, mr.metric))[0];
  }
  double vol = 1.0;
  for (int a = 0; a < 7; ++a) vol *= phi.lat.period[a];
  return sum / static_cast<double>(total) * vol;
}

namespace {

double unit_real(std::uint64_t& state) {
  // xorshift-based generator so the stream is identical everywhere
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

}  // namespace

Field closed_perturbation(const LatticeSpec& lat, double amplitude,
                          std::uint64_t seed) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  for (int i = 0; i < 8; ++i) unit_real(state);
  std::vector<int> active;
  for (int a = 0; a < 7; ++a)
    if (lat.n[a] > 1) active.push_back(a);
  struct Term {
    KForm dxi_wedge_eta;  // constant 3-form factor of d(eta_k)
    std::array<int, 2> axes{-1, -1};
    double c, phase;
  };
  std::vector<Term> terms;
  for (int k = 0; k < 3 && !active.empty(); ++k) {
    Term t;
    const int rank2 = static_cast<int>(unit_real(state) * 21) % 21;
    KForm eta(2);
    eta[rank2] = 1.0;
    t.axes[0] = active[static_cast<int>(unit_real(state) * active.size()) %
                       active.size()];
    if (active.size() > 1 && unit_real(state) > 0.5) {
      int b = t.axes[0];
      while (b == t.axes[0])
        b = active[static_cast<int>(unit_real(state) * active.size()) %
                   active.size()];
      t.axes[1] = b;
    }
    KForm dxi(1);
    dxi[t.axes[0]] = 1.0;
    if (t.axes[1] >= 0) dxi[t.axes[1]] = 1.0;
    t.dxi_wedge_eta = wedge(dxi, eta);
    t.c = amplitude * (0.5 + 0.5 * unit_real(state)) *
          (unit_real(state) > 0.5 ? 1.0 : -1.0);
    t.phase = 2.0 * LatticeSpec::kPi * unit_real(state);
    terms.push_back(t);
  }
  const KForm phi0 = standard_phi();
  return sample_form(lat, 3, [&](const std::array<double, 7>& x) {
    KForm f = phi0;
    for (const Term& t : terms) {
      double xi = x[t.axes[0]] + (t.axes[1] >= 0 ? x[t.axes[1]] : 0.0);
      f += (t.c * std::cos(xi + t.phase)) * t.dxi_wedge_eta;
    }
    return f;
  });
}

QFormReport q_form(const Field& phi, double closed_tol) {
  QFormReport rep;
  rep.closed_residual = max_abs(exterior_d(phi));
  if (rep.closed_residual > closed_tol)
    throw std::invalid_argument("q_form: the form is not closed");
  std::array<double, 35> mean{};
  const long long total = phi.lat.sites();
  for (long long s = 0; s < total; ++s) {
    const double* p = phi.at(s);
    for (int r = 0; r < 35; ++r) mean[r] += p[r];
  }
  double vol = 1.0;
  for (int a = 0; a < 7; ++a) vol *= phi.lat.period[a];
  for (int r = 0; r < 35; ++r) mean[r] *= vol / static_cast<double>(total);

  for (int a = 0; a < 21; ++a) {
    const unsigned ma = subset_mask(2, a);
    for (int b = 0; b < 21; ++b) {
      const unsigned mb = subset_mask(2, b);
      if (ma & mb) {
        rep.gram(a, b) = 0.0;
        continue;
      }
      const unsigned m4 = ma | mb;
      const unsigned comp = 0x7Fu & ~m4;
      rep.gram(a, b) = merge_sign(ma, mb) * merge_sign(m4, comp) *
                       mean[subset_rank(3, comp)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 21, 21>> es(rep.gram);
  double top = 0.0;
  for (int i = 0; i < 21; ++i) {
    rep.eigenvalues[i] = es.eigenvalues()[i];
    top = std::max(top, std::abs(rep.eigenvalues[i]));
  }
  const double thr = 1e-10 * top;
  for (int i = 0; i < 21; ++i) {
    if (rep.eigenvalues[i] > thr) ++rep.positive;
    if (rep.eigenvalues[i] < -thr) ++rep.negative;
  }
  return rep;
}

}  // namespace g2calc

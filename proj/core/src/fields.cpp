#include "g2calc/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace g2calc {

namespace {

std::array<long long, 7> strides_of(const LatticeSpec& lat) {
  std::array<long long, 7> s{};
  s[6] = 1;
  for (int a = 5; a >= 0; --a) s[a] = s[a + 1] * lat.n[a + 1];
  return s;
}

void advance(const LatticeSpec& lat, std::array<int, 7>& idx) {
  for (int a = 6; a >= 0; --a) {
    if (++idx[a] < lat.n[a]) return;
    idx[a] = 0;
  }
}

}  // namespace

long long LatticeSpec::sites() const {
  long long total = 1;
  for (int a = 0; a < 7; ++a) total *= n[a];
  return total;
}

bool LatticeSpec::same_grid(const LatticeSpec& o) const {
  return n == o.n && period == o.period && fd_order == o.fd_order;
}

std::array<int, 7> site_index(const LatticeSpec& lat, long long site) {
  std::array<int, 7> idx{};
  for (int a = 6; a >= 0; --a) {
    idx[a] = static_cast<int>(site % lat.n[a]);
    site /= lat.n[a];
  }
  return idx;
}

long long site_of(const LatticeSpec& lat, const std::array<int, 7>& idx) {
  long long site = 0;
  for (int a = 0; a < 7; ++a) site = site * lat.n[a] + idx[a];
  return site;
}

std::array<double, 7> site_coords(const LatticeSpec& lat, long long site) {
  std::array<int, 7> idx = site_index(lat, site);
  std::array<double, 7> x{};
  for (int a = 0; a < 7; ++a) x[a] = idx[a] * lat.spacing(a);
  return x;
}

Field Field::form(const LatticeSpec& lat, int degree) {
  Field f;
  f.lat = lat;
  f.degree = degree;
  f.comps = binom7(degree);
  f.data.assign(lat.sites() * f.comps, 0.0);
  return f;
}

Field Field::plain(const LatticeSpec& lat, int comps) {
  Field f;
  f.lat = lat;
  f.degree = -1;
  f.comps = comps;
  f.data.assign(lat.sites() * comps, 0.0);
  return f;
}

KForm Field::form_at(long long site) const {
  KForm f(degree);
  const double* p = at(site);
  for (int r = 0; r < comps; ++r) f[r] = p[r];
  return f;
}

void Field::set_form(long long site, const KForm& f) {
  double* p = at(site);
  for (int r = 0; r < comps; ++r) p[r] = f[r];
}

Field operator+(const Field& a, const Field& b) {
  Field out = a;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  Field out = a;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

Field operator*(double s, const Field& a) {
  Field out = a;
  for (double& v : out.data) v *= s;
  return out;
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::abs(v));
  return m;
}

Field sample_form(const LatticeSpec& lat, int degree,
                  const std::function<KForm(const std::array<double, 7>&)>& f) {
  Field out = Field::form(lat, degree);
  const long long total = lat.sites();
  std::array<int, 7> idx{};
  for (long long s = 0; s < total; ++s, advance(lat, idx)) {
    std::array<double, 7> x{};
    for (int a = 0; a < 7; ++a) x[a] = idx[a] * lat.spacing(a);
    out.set_form(s, f(x));
  }
  return out;
}

Field constant_form(const LatticeSpec& lat, const KForm& value) {
  Field out = Field::form(lat, value.degree());
  const long long total = lat.sites();
  for (long long s = 0; s < total; ++s) out.set_form(s, value);
  return out;
}

Field partial(const Field& fld, int axis) {
  const LatticeSpec& lat = fld.lat;
  Field out = fld;
  if (lat.n[axis] == 1) {
    std::fill(out.data.begin(), out.data.end(), 0.0);
    return out;
  }
  const std::array<long long, 7> str = strides_of(lat);
  const long long stride = str[axis];
  const int nn = lat.n[axis];
  const double h = lat.spacing(axis);
  const long long total = lat.sites();
  const int c = fld.comps;
  std::array<int, 7> idx{};
  for (long long s = 0; s < total; ++s, advance(lat, idx)) {
    const int i = idx[axis];
    const long long p1 = s + ((i + 1) % nn - i) * stride;
    const long long m1 = s + ((i - 1 + nn) % nn - i) * stride;
    double* o = out.at(s);
    if (lat.fd_order == 2) {
      const double w = 1.0 / (2.0 * h);
      const double* a = fld.at(p1);
      const double* b = fld.at(m1);
      for (int r = 0; r < c; ++r) o[r] = (a[r] - b[r]) * w;
    } else {
      const long long p2 = s + ((i + 2) % nn - i) * stride;
      const long long m2 = s + ((i - 2 + 2 * nn) % nn - i) * stride;
      const double w = 1.0 / (12.0 * h);
      const double* a2 = fld.at(p2);
      const double* a1 = fld.at(p1);
      const double* b1 = fld.at(m1);
      const double* b2 = fld.at(m2);
      // grouped as differences so constant data cancels exactly
      for (int r = 0; r < c; ++r)
        o[r] = (8.0 * (a1[r] - b1[r]) - (a2[r] - b2[r])) * w;
    }
  }
  return out;
}

Field exterior_d(const Field& fld) {
  const int k = fld.degree;
  if (k < 0 || k > 6) throw std::invalid_argument("exterior_d: not a k-form field");
  std::array<Field, 7> pd;
  for (int a = 0; a < 7; ++a) pd[a] = partial(fld, a);
  Field out = Field::form(fld.lat, k + 1);
  const int out_comps = out.comps;
  // For each output subset, the contributing axes with their inner rank
  // and alternating sign.
  struct Term {
    int axis, inner, sign;
  };
  std::vector<std::vector<Term>> table(out_comps);
  for (int r = 0; r < out_comps; ++r) {
    unsigned mask = subset_mask(k + 1, r);
    int pos = 0;
    for (int a = 0; a < 7; ++a) {
      if (!(mask >> a & 1u)) continue;
      table[r].push_back({a, subset_rank(k, mask & ~(1u << a)),
                          (pos & 1) ? -1 : 1});
      ++pos;
    }
  }
  const long long total = fld.lat.sites();
  for (long long s = 0; s < total; ++s) {
    double* o = out.at(s);
    for (int r = 0; r < out_comps; ++r) {
      double v = 0.0;
      for (const Term& t : table[r]) v += t.sign * pd[t.axis].at(s)[t.inner];
      o[r] = v;
    }
  }
  return out;
}

MetricFieldResult metric_field(const Field& phi) {
  MetricFieldResult res;
  res.mf.lat = phi.lat;
  const long long total = phi.lat.sites();
  res.mf.m.resize(total);
  for (long long s = 0; s < total; ++s) {
    MetricResult mr = metric_from_phi(phi.form_at(s));
    if (mr.status != PositivityStatus::kOk) {
      res.status = mr.status;
      res.bad_site = s;
      return res;
    }
    res.mf.m[s] = mr.metric;
  }
  return res;
}

Field hodge_field(const Field& fld, const MetricField& mf) {
  Field out = Field::form(fld.lat, 7 - fld.degree);
  const long long total = fld.lat.sites();
  for (long long s = 0; s < total; ++s)
    out.set_form(s, hodge(fld.form_at(s), mf.m[s]));
  return out;
}

Field codifferential(const Field& fld, const MetricField& mf) {
  const int m = fld.degree;
  Field out = hodge_field(exterior_d(hodge_field(fld, mf)), mf);
  if (m & 1)
    for (double& v : out.data) v = -v;
  return out;
}

Field christoffel(const MetricField& mf) {
  const LatticeSpec& lat = mf.lat;
  Field g = Field::plain(lat, 49);
  const long long total = lat.sites();
  for (long long s = 0; s < total; ++s) {
    double* p = g.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) p[i * 7 + j] = mf.m[s].g(i, j);
  }
  std::array<Field, 7> dg;
  for (int a = 0; a < 7; ++a) dg[a] = partial(g, a);
  Field out = Field::plain(lat, 343);
  for (long long s = 0; s < total; ++s) {
    const Matrix7& ginv = mf.m[s].ginv;
    double* o = out.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = i; j < 7; ++j) {
        double sum[7];
        for (int l = 0; l < 7; ++l)
          sum[l] = 0.5 * (dg[i].at(s)[j * 7 + l] + dg[j].at(s)[i * 7 + l] -
                          dg[l].at(s)[i * 7 + j]);
        for (int kk = 0; kk < 7; ++kk) {
          double v = 0.0;
          for (int l = 0; l < 7; ++l) v += ginv(kk, l) * sum[l];
          o[kk * 49 + i * 7 + j] = v;
          o[kk * 49 + j * 7 + i] = v;
        }
      }
  }
  return out;
}

Field riemann(const MetricField& mf, const Field& gamma) {
  const LatticeSpec& lat = mf.lat;
  std::array<Field, 7> dgam;
  for (int a = 0; a < 7; ++a) dgam[a] = partial(gamma, a);
  Field out = Field::plain(lat, 2401);
  const long long total = lat.sites();
  std::vector<double> rup(2401);
  for (long long s = 0; s < total; ++s) {
    const double* gm = gamma.at(s);
    for (int l = 0; l < 7; ++l)
      for (int kk = 0; kk < 7; ++kk)
        for (int i = 0; i < 7; ++i)
          for (int j = 0; j < 7; ++j) {
            double v = dgam[i].at(s)[l * 49 + j * 7 + kk] -
                       dgam[j].at(s)[l * 49 + i * 7 + kk];
            for (int m = 0; m < 7; ++m)
              v += gm[l * 49 + i * 7 + m] * gm[m * 49 + j * 7 + kk] -
                   gm[l * 49 + j * 7 + m] * gm[m * 49 + i * 7 + kk];
            rup[((l * 7 + kk) * 7 + i) * 7 + j] = v;
          }
    const Matrix7& g = mf.m[s].g;
    double* o = out.at(s);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int kk = 0; kk < 7; ++kk)
          for (int l = 0; l < 7; ++l) {
            double v = 0.0;
            for (int m = 0; m < 7; ++m)
              v += g(l, m) * rup[((m * 7 + kk) * 7 + i) * 7 + j];
            o[((i * 7 + j) * 7 + kk) * 7 + l] = v;
          }
  }
  return out;
}

Field ricci_direct(const MetricField& mf) {
  Field gamma = christoffel(mf);
  Field riem = riemann(mf, gamma);
  Field out = Field::plain(mf.lat, 49);
  const long long total = mf.lat.sites();
  for (long long s = 0; s < total; ++s) {
    const Matrix7& ginv = mf.m[s].ginv;
    const double* r = riem.at(s);
    double* o = out.at(s);
    for (int j = 0; j < 7; ++j)
      for (int kk = 0; kk < 7; ++kk) {
        double v = 0.0;
        for (int i = 0; i < 7; ++i)
          for (int l = 0; l < 7; ++l)
            v += ginv(i, l) * r[((i * 7 + j) * 7 + kk) * 7 + l];
        o[j * 7 + kk] = v;
      }
  }
  return out;
}

Field covariant_d_form(const Field& fld, const Field& gamma) {
  const int k = fld.degree;
  if (k != 3 && k != 4)
    throw std::invalid_argument("covariant_d_form: degree must be 3 or 4");
  const int sz = fld.comps;
  std::array<Field, 7> pd;
  for (int a = 0; a < 7; ++a) pd[a] = partial(fld, a);
  Field out = Field::plain(fld.lat, 7 * sz);
  const long long total = fld.lat.sites();
  if (k == 3) {
    double a3[7][7][7];
    for (long long s = 0; s < total; ++s) {
      dense3(fld.form_at(s), a3);
      const double* gm = gamma.at(s);
      double* o = out.at(s);
      for (int m = 0; m < 7; ++m)
        for (int r = 0; r < sz; ++r) {
          unsigned mask = subset_mask(3, r);
          int id[3], t = 0;
          for (int a = 0; a < 7; ++a)
            if (mask >> a & 1u) id[t++] = a;
          double v = pd[m].at(s)[r];
          for (int p = 0; p < 7; ++p)
            v -= gm[p * 49 + m * 7 + id[0]] * a3[p][id[1]][id[2]] +
                 gm[p * 49 + m * 7 + id[1]] * a3[id[0]][p][id[2]] +
                 gm[p * 49 + m * 7 + id[2]] * a3[id[0]][id[1]][p];
          o[m * sz + r] = v;
        }
    }
  } else {
    static thread_local double a4[7][7][7][7];
    for (long long s = 0; s < total; ++s) {
      dense4(fld.form_at(s), a4);
      const double* gm = gamma.at(s);
      double* o = out.at(s);
      for (int m = 0; m < 7; ++m)
        for (int r = 0; r < sz; ++r) {
          unsigned mask = subset_mask(4, r);
          int id[4], t = 0;
          for (int a = 0; a < 7; ++a)
            if (mask >> a & 1u) id[t++] = a;
          double v = pd[m].at(s)[r];
          for (int p = 0; p < 7; ++p)
            v -= gm[p * 49 + m * 7 + id[0]] * a4[p][id[1]][id[2]][id[3]] +
                 gm[p * 49 + m * 7 + id[1]] * a4[id[0]][p][id[2]][id[3]] +
                 gm[p * 49 + m * 7 + id[2]] * a4[id[0]][id[1]][p][id[3]] +
                 gm[p * 49 + m * 7 + id[3]] * a4[id[0]][id[1]][id[2]][p];
          o[m * sz + r] = v;
        }
    }
  }
  return out;
}

Field covariant_d_rank2(const Field& fld, const Field& gamma) {
  std::array<Field, 7> pd;
  for (int a = 0; a < 7; ++a) pd[a] = partial(fld, a);
  Field out = Field::plain(fld.lat, 343);
  const long long total = fld.lat.sites();
  for (long long s = 0; s < total; ++s) {
    const double* t = fld.at(s);
    const double* gm = gamma.at(s);
    double* o = out.at(s);
    for (int m = 0; m < 7; ++m)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
          double v = pd[m].at(s)[i * 7 + j];
          for (int p = 0; p < 7; ++p)
            v -= gm[p * 49 + m * 7 + i] * t[p * 7 + j] +
                 gm[p * 49 + m * 7 + j] * t[i * 7 + p];
          o[m * 49 + i * 7 + j] = v;
        }
  }
  return out;
}

double integrate(const Field& fld, int comp) {
  const long long total = fld.lat.sites();
  double sum = 0.0;
  for (long long s = 0; s < total; ++s) sum += fld.at(s)[comp];
  double vol = 1.0;
  for (int a = 0; a < 7; ++a) vol *= fld.lat.period[a];
  return sum / static_cast<double>(total) * vol;
}

Field pullback_constant_form(const KForm& alpha, const JacobianFn& jac,
                             const LatticeSpec& lat) {
  Field out = Field::form(lat, alpha.degree());
  const long long total = lat.sites();
  for (long long s = 0; s < total; ++s)
    out.set_form(s, pullback_linear(jac(site_coords(lat, s)), alpha));
  return out;
}

PullbackStructureResult pullback_structure(const KForm& phi0,
                                           const JacobianFn& jac,
                                           const LatticeSpec& lat) {
  PullbackStructureResult res;
  res.phi = pullback_constant_form(phi0, jac, lat);
  const long long total = lat.sites();
  for (long long s = 0; s < total; ++s) {
    if (!is_positive(res.phi.form_at(s))) {
      res.positive = false;
      res.bad_site = s;
      break;
    }
  }
  return res;
}

}  // namespace g2calc

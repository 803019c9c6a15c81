#include "g2calc/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace g2calc {

namespace {

constexpr int kBinom[8] = {1, 7, 21, 35, 35, 21, 7, 1};

struct LexTables {
  std::array<std::vector<unsigned>, 8> masks;
  std::array<std::array<signed char, 128>, 8> rank;

  LexTables() {
    for (auto& r : rank) r.fill(-1);
    for (int k = 0; k <= 7; ++k) {
      std::array<int, 7> idx{};
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        unsigned m = 0;
        for (int i = 0; i < k; ++i) m |= 1u << idx[i];
        rank[k][m] = static_cast<signed char>(masks[k].size());
        masks[k].push_back(m);
        // next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && idx[i] == 7 - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
};

const LexTables& tables() {
  static const LexTables t;
  return t;
}

// Sign of sorting an index tuple in place; 0 if an index repeats.
int sort_indices(int* idx, int k) {
  int sign = 1;
  for (int i = 1; i < k; ++i)
    for (int j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (int i = 1; i < k; ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

unsigned mask_of(const int* idx, int k) {
  unsigned m = 0;
  for (int i = 0; i < k; ++i) m |= 1u << idx[i];
  return m;
}

}  // namespace

int binom7(int k) { return (k >= 0 && k <= 7) ? kBinom[k] : 0; }

unsigned subset_mask(int k, int rank) { return tables().masks[k][rank]; }

int subset_rank(int k, unsigned mask) { return tables().rank[k][mask]; }

int merge_sign(unsigned mask_a, unsigned mask_b) {
  int inversions = 0;
  for (unsigned b = mask_b; b; b &= b - 1) {
    int bit = std::countr_zero(b);
    inversions += std::popcount(mask_a >> (bit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

KForm::KForm(int degree) : k_(degree) {
  if (degree < 0 || degree > 7) throw std::invalid_argument("form degree");
}

double KForm::operator()(std::initializer_list<int> idx) const {
  int buf[7];
  int k = 0;
  for (int v : idx) buf[k++] = v;
  if (k != k_) throw std::invalid_argument("index count != degree");
  int sign = sort_indices(buf, k);
  if (sign == 0) return 0.0;
  return sign * c_[tables().rank[k_][mask_of(buf, k)]];
}

void KForm::set(std::initializer_list<int> idx, double v) {
  int buf[7];
  int k = 0;
  for (int i : idx) buf[k++] = i;
  if (k != k_) throw std::invalid_argument("index count != degree");
  int sign = sort_indices(buf, k);
  if (sign == 0) return;
  c_[tables().rank[k_][mask_of(buf, k)]] = sign * v;
}

void KForm::add(std::initializer_list<int> idx, double v) {
  int buf[7];
  int k = 0;
  for (int i : idx) buf[k++] = i;
  if (k != k_) throw std::invalid_argument("index count != degree");
  int sign = sort_indices(buf, k);
  if (sign == 0) return;
  c_[tables().rank[k_][mask_of(buf, k)]] += sign * v;
}

KForm& KForm::operator+=(const KForm& o) {
  for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

KForm& KForm::operator*=(double s) {
  for (int i = 0; i < size(); ++i) c_[i] *= s;
  return *this;
}

KForm operator+(const KForm& a, const KForm& b) {
  KForm r = a;
  r += b;
  return r;
}

KForm operator-(const KForm& a, const KForm& b) {
  KForm r = a;
  r -= b;
  return r;
}

KForm operator*(double s, const KForm& a) {
  KForm r = a;
  r *= s;
  return r;
}

double max_abs(const KForm& a) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

KForm wedge(const KForm& a, const KForm& b) {
  const int ka = a.degree(), kb = b.degree();
  if (ka + kb > 7) return KForm(0);
  KForm r(ka + kb);
  const auto& tbl = tables();
  for (int ra = 0; ra < kBinom[ka]; ++ra) {
    if (a[ra] == 0.0) continue;
    unsigned ma = tbl.masks[ka][ra];
    for (int rb = 0; rb < kBinom[kb]; ++rb) {
      if (b[rb] == 0.0) continue;
      unsigned mb = tbl.masks[kb][rb];
      if (ma & mb) continue;
      r[tbl.rank[ka + kb][ma | mb]] += merge_sign(ma, mb) * a[ra] * b[rb];
    }
  }
  return r;
}

KForm interior(const Vector7& x, const KForm& a) {
  const int k = a.degree();
  if (k == 0) return KForm(0);
  KForm r(k - 1);
  const auto& tbl = tables();
  for (int ra = 0; ra < kBinom[k]; ++ra) {
    if (a[ra] == 0.0) continue;
    unsigned m = tbl.masks[k][ra];
    int pos = 0;
    for (unsigned rest = m; rest; rest &= rest - 1, ++pos) {
      int i = std::countr_zero(rest);
      double s = (pos & 1) ? -1.0 : 1.0;
      r[tbl.rank[k - 1][m & ~(1u << i)]] += s * x[i] * a[ra];
    }
  }
  return r;
}

Metric Metric::euclidean() { return Metric{}; }

Metric Metric::from_matrix(const Matrix7& m) {
  Metric r;
  r.g = m;
  r.det = m.determinant();
  r.ginv = m.inverse();
  r.sqrt_det = std::sqrt(r.det);
  return r;
}

double minor_det(const Matrix7& m, unsigned rows, unsigned cols) {
  int ri[7], ci[7];
  int k = 0;
  for (unsigned r = rows; r; r &= r - 1) ri[k++] = std::countr_zero(r);
  int k2 = 0;
  for (unsigned c = cols; c; c &= c - 1) ci[k2++] = std::countr_zero(c);
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return m(ri[0], ci[0]);
    case 2:
      return m(ri[0], ci[0]) * m(ri[1], ci[1]) -
             m(ri[0], ci[1]) * m(ri[1], ci[0]);
    case 3: {
      const double a = m(ri[0], ci[0]), b = m(ri[0], ci[1]), c = m(ri[0], ci[2]);
      const double d = m(ri[1], ci[0]), e = m(ri[1], ci[1]), f = m(ri[1], ci[2]);
      const double g = m(ri[2], ci[0]), h = m(ri[2], ci[1]), i = m(ri[2], ci[2]);
      return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    }
    default: {
      // Gaussian elimination with partial pivoting on a local copy.
      double buf[7][7];
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) buf[r][c] = m(ri[r], ci[c]);
      double det = 1.0;
      for (int p = 0; p < k; ++p) {
        int piv = p;
        for (int r = p + 1; r < k; ++r)
          if (std::abs(buf[r][p]) > std::abs(buf[piv][p])) piv = r;
        if (buf[piv][p] == 0.0) return 0.0;
        if (piv != p) {
          for (int c = p; c < k; ++c) std::swap(buf[p][c], buf[piv][c]);
          det = -det;
        }
        det *= buf[p][p];
        for (int r = p + 1; r < k; ++r) {
          double f = buf[r][p] / buf[p][p];
          for (int c = p; c < k; ++c) buf[r][c] -= f * buf[p][c];
        }
      }
      return det;
    }
  }
}

KForm raise_indices(const KForm& a, const Metric& m) {
  const int k = a.degree();
  KForm r(k);
  const int n = kBinom[k];
  for (int ri = 0; ri < n; ++ri) {
    unsigned mi = subset_mask(k, ri);
    double s = 0.0;
    for (int rj = 0; rj < n; ++rj) {
      if (a[rj] == 0.0) continue;
      s += minor_det(m.ginv, mi, subset_mask(k, rj)) * a[rj];
    }
    r[ri] = s;
  }
  return r;
}

double form_inner(const KForm& a, const KForm& b, const Metric& m) {
  KForm ar = raise_indices(a, m);
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += ar[i] * b[i];
  return s;
}

double form_norm2(const KForm& a, const Metric& m) {
  return form_inner(a, a, m);
}

KForm hodge(const KForm& a, const Metric& m) {
  const int k = a.degree();
  KForm ar = raise_indices(a, m);
  KForm r(7 - k);
  for (int ri = 0; ri < kBinom[k]; ++ri) {
    unsigned mi = subset_mask(k, ri);
    unsigned mc = (~mi) & 0x7Fu;
    r[subset_rank(7 - k, mc)] = merge_sign(mi, mc) * m.sqrt_det * ar[ri];
  }
  return r;
}

KForm volume_form(const Metric& m) {
  KForm r(7);
  r[0] = m.sqrt_det;
  return r;
}

Vector7 sharp(const Vector7& oneform, const Metric& m) {
  return m.ginv * oneform;
}

Vector7 flat(const Vector7& vec, const Metric& m) { return m.g * vec; }

KForm oneform_of(const Vector7& covector) {
  KForm r(1);
  for (int i = 0; i < 7; ++i) r[i] = covector[i];
  return r;
}

KForm pullback_linear(const Matrix7& a, const KForm& form) {
  const int k = form.degree();
  KForm r(k);
  const int n = kBinom[k];
  for (int ri = 0; ri < n; ++ri) {
    unsigned cols = subset_mask(k, ri);
    double s = 0.0;
    for (int rj = 0; rj < n; ++rj) {
      if (form[rj] == 0.0) continue;
      s += form[rj] * minor_det(a, subset_mask(k, rj), cols);
    }
    r[ri] = s;
  }
  return r;
}

void dense3(const KForm& a, double (&out)[7][7][7]) {
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) out[i][j][k] = 0.0;
  for (int r = 0; r < kBinom[3]; ++r) {
    unsigned m = subset_mask(3, r);
    int idx[3], k = 0;
    for (unsigned b = m; b; b &= b - 1) idx[k++] = std::countr_zero(b);
    const double v = a[r];
    const int p[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                         {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const int s[6] = {1, 1, 1, -1, -1, -1};
    for (int q = 0; q < 6; ++q)
      out[idx[p[q][0]]][idx[p[q][1]]][idx[p[q][2]]] = s[q] * v;
  }
}

void dense4(const KForm& a, double (&out)[7][7][7][7]) {
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) out[i][j][k][l] = 0.0;
  for (int r = 0; r < kBinom[4]; ++r) {
    unsigned m = subset_mask(4, r);
    int idx[4], k = 0;
    for (unsigned b = m; b; b &= b - 1) idx[k++] = std::countr_zero(b);
    const double v = a[r];
    int perm[4] = {0, 1, 2, 3};
    // all 24 permutations with parity, by plain enumeration
    do {
      int inv = 0;
      for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y)
          if (perm[x] > perm[y]) ++inv;
      out[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]][idx[perm[3]]] =
          ((inv & 1) ? -1.0 : 1.0) * v;
    } while (std::next_permutation(perm, perm + 4));
  }
}

}  // namespace g2calc

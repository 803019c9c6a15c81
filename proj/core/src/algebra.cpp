#include "g2calc/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace g2calc {

namespace {

bool valid_dim(int dim) {
  return dim == 1 || dim == 2 || dim == 4 || dim == 8 || dim == 16;
}

// Oriented triples of the standard 3-form on R^7, axes as usually written:
// phi0 = e123 - e167 - e527 - e563 - e415 - e426 - e437.
constexpr int kPhiTriples[7][4] = {
    {1, 2, 3, +1}, {1, 6, 7, -1}, {5, 2, 7, -1}, {5, 6, 3, -1},
    {4, 1, 5, -1}, {4, 2, 6, -1}, {4, 3, 7, -1},
};

struct Phi0Table {
  signed char t[7][7][7] = {};
  struct Entry {
    int i, j, k, s;
  };
  std::vector<Entry> nonzero;

  Phi0Table() {
    constexpr int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    constexpr int psign[6] = {1, 1, 1, -1, -1, -1};
    for (const auto& q : kPhiTriples) {
      const int idx[3] = {q[0] - 1, q[1] - 1, q[2] - 1};
      for (int p = 0; p < 6; ++p)
        t[idx[perm[p][0]]][idx[perm[p][1]]][idx[perm[p][2]]] =
            static_cast<signed char>(q[3] * psign[p]);
    }
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k)
          if (t[i][j][k] != 0) nonzero.push_back({i, j, k, t[i][j][k]});
  }
};

const Phi0Table& phi0_table() {
  static const Phi0Table tbl;
  return tbl;
}

// (p1,p2)(q1,q2) = (p1 q1 - conj(q2) p2, q2 p1 + p2 conj(q1))
void cd_mul_raw(int n, const double* a, const double* b, double* out) {
  if (n == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  const int h = n / 2;
  const double *p1 = a, *p2 = a + h, *q1 = b, *q2 = b + h;
  double cq1[8], cq2[8], t1[8], t2[8];
  cq1[0] = q1[0];
  cq2[0] = q2[0];
  for (int i = 1; i < h; ++i) {
    cq1[i] = -q1[i];
    cq2[i] = -q2[i];
  }
  cd_mul_raw(h, p1, q1, t1);
  cd_mul_raw(h, cq2, p2, t2);
  for (int i = 0; i < h; ++i) out[i] = t1[i] - t2[i];
  cd_mul_raw(h, q2, p1, t1);
  cd_mul_raw(h, p2, cq1, t2);
  for (int i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

AlgebraElement oct_mul(const AlgebraElement& a, const AlgebraElement& b) {
  const auto& tbl = phi0_table();
  AlgebraElement r = AlgebraElement::zero(8);
  double dot = 0.0;
  for (int i = 1; i < 8; ++i) dot += a.c[i] * b.c[i];
  r.c[0] = a.c[0] * b.c[0] - dot;
  for (int i = 1; i < 8; ++i) r.c[i] = a.c[0] * b.c[i] + b.c[0] * a.c[i];
  for (const auto& e : tbl.nonzero)
    r.c[e.k + 1] += e.s * a.c[e.i + 1] * b.c[e.j + 1];
  return r;
}

double wedge2_inner(const AlgebraElement& a, const AlgebraElement& b,
                    const AlgebraElement& c, const AlgebraElement& d) {
  return inner(a, c) * inner(b, d) - inner(a, d) * inner(b, c);
}

double wedge3_norm2(const AlgebraElement& a, const AlgebraElement& b,
                    const AlgebraElement& c) {
  const double aa = inner(a, a), ab = inner(a, b), ac = inner(a, c);
  const double bb = inner(b, b), bc = inner(b, c), cc = inner(c, c);
  return aa * (bb * cc - bc * bc) - ab * (ab * cc - bc * ac) +
         ac * (ab * bc - bb * ac);
}

}  // namespace

AlgebraElement AlgebraElement::zero(int dim) {
  if (!valid_dim(dim)) throw std::invalid_argument("algebra dim must be 1,2,4,8,16");
  AlgebraElement e;
  e.dim = dim;
  return e;
}

AlgebraElement AlgebraElement::real(int dim, double v) {
  AlgebraElement e = zero(dim);
  e.c[0] = v;
  return e;
}

AlgebraElement AlgebraElement::basis(int dim, int i, double v) {
  AlgebraElement e = zero(dim);
  if (i < 0 || i >= dim) throw std::out_of_range("basis index");
  e.c[i] = v;
  return e;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] += b.c[i];
  return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] -= b.c[i];
  return r;
}

AlgebraElement operator-(const AlgebraElement& a) { return -1.0 * a; }

AlgebraElement operator*(double s, const AlgebraElement& a) {
  AlgebraElement r = a;
  for (int i = 0; i < a.dim; ++i) r.c[i] *= s;
  return r;
}

double re(const AlgebraElement& a) { return a.c[0]; }

AlgebraElement im(const AlgebraElement& a) {
  AlgebraElement r = a;
  r.c[0] = 0.0;
  return r;
}

AlgebraElement conj(const AlgebraElement& a) {
  AlgebraElement r = a;
  for (int i = 1; i < a.dim; ++i) r.c[i] = -r.c[i];
  return r;
}

double inner(const AlgebraElement& a, const AlgebraElement& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a.c[i] * b.c[i];
  return s;
}

double norm2(const AlgebraElement& a) { return inner(a, a); }

double norm(const AlgebraElement& a) { return std::sqrt(norm2(a)); }

AlgebraElement cd_mul(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r = AlgebraElement::zero(a.dim);
  cd_mul_raw(a.dim, a.c.data(), b.c.data(), r.c.data());
  return r;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.dim == 8) return oct_mul(a, b);
  return cd_mul(a, b);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return mul(a, b) - mul(b, a);
}

AlgebraElement associator(const AlgebraElement& a, const AlgebraElement& b,
                          const AlgebraElement& c) {
  return mul(mul(a, b), c) - mul(a, mul(b, c));
}

double phi_form(const AlgebraElement& a, const AlgebraElement& b,
                const AlgebraElement& c) {
  return inner(mul(a, b), c);
}

double psi_form(const AlgebraElement& a, const AlgebraElement& b,
                const AlgebraElement& c, const AlgebraElement& d) {
  return 0.5 * inner(a, associator(b, c, d));
}

AlgebraElement cross(const AlgebraElement& a, const AlgebraElement& b) {
  return im(mul(a, b));
}

int phi0_coeff(int i, int j, int k) { return phi0_table().t[i][j][k]; }

std::array<double, 7> cross7(const std::array<double, 7>& u,
                             const std::array<double, 7>& v) {
  std::array<double, 7> r{};
  for (const auto& e : phi0_table().nonzero) r[e.k] += e.s * u[e.i] * v[e.j];
  return r;
}

std::array<double, 3> cross3(const std::array<double, 3>& u,
                             const std::array<double, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

BasisProduct cd_basis_product(int dim, int i, int j) {
  AlgebraElement p = cd_mul(AlgebraElement::basis(dim, i),
                            AlgebraElement::basis(dim, j));
  for (int k = 0; k < dim; ++k) {
    if (p.c[k] == 1.0) return {k, +1};
    if (p.c[k] == -1.0) return {k, -1};
  }
  throw std::logic_error("basis product is not a signed basis element");
}

BasisProduct oct_basis_product(int i, int j) {
  if (i == 0) return {j, +1};
  if (j == 0) return {i, +1};
  if (i == j) return {0, -1};
  for (int k = 0; k < 7; ++k) {
    int s = phi0_coeff(i - 1, j - 1, k);
    if (s != 0) return {k + 1, s};
  }
  throw std::logic_error("cross product table is degenerate");
}

SignedPerm cd_basis_map() {
  static const SignedPerm cached = [] {
    int cidx[8][8], csgn[8][8];
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        BasisProduct p = cd_basis_product(8, i, j);
        cidx[i][j] = p.index;
        csgn[i][j] = p.sign;
      }
    // e3 = e1 e2, e5 = e1 e4, e6 = e2 e4, e7 = e3 e4 up to table signs, so a
    // homomorphism is fixed by the images of e1, e2, e4.
    for (int t1 = 1; t1 <= 7; ++t1)
      for (int s1 = 1; s1 >= -1; s1 -= 2)
        for (int t2 = 1; t2 <= 7; ++t2)
          for (int s2 = 1; s2 >= -1; s2 -= 2)
            for (int t4 = 1; t4 <= 7; ++t4)
              for (int s4 = 1; s4 >= -1; s4 -= 2) {
                SignedPerm m;
                m.index = {0, t1, -1, -1, t4, -1, -1, -1};
                m.sign = {1, s1, 0, 0, s4, 0, 0, 0};
                m.index[2] = t2;
                m.sign[2] = s2;
                auto derive = [&](int gi, int gj, int target) {
                  BasisProduct p = oct_basis_product(m.index[gi], m.index[gj]);
                  m.index[target] = p.index;
                  m.sign[target] =
                      p.sign * m.sign[gi] * m.sign[gj] * csgn[gi][gj];
                };
                derive(1, 2, cidx[1][2]);
                derive(1, 4, cidx[1][4]);
                derive(2, 4, cidx[2][4]);
                derive(3, 4, cidx[3][4]);
                bool used[8] = {};
                bool ok = true;
                for (int i = 0; i < 8; ++i) {
                  if (m.index[i] < 0 || used[m.index[i]]) { ok = false; break; }
                  used[m.index[i]] = true;
                }
                if (!ok) continue;
                for (int i = 0; i < 8 && ok; ++i)
                  for (int j = 0; j < 8 && ok; ++j) {
                    BasisProduct lhs = oct_basis_product(m.index[i], m.index[j]);
                    int lsgn = lhs.sign * m.sign[i] * m.sign[j];
                    int rk = cidx[i][j];
                    if (lhs.index != m.index[rk] || lsgn != csgn[i][j] * m.sign[rk])
                      ok = false;
                  }
                if (ok) return m;
              }
    throw std::logic_error("no signed basis map between the two octonion tables");
  }();
  return cached;
}

AlgebraElement random_element(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AlgebraElement e = AlgebraElement::zero(dim);
  for (int i = 0; i < dim; ++i) e.c[i] = u(rng);
  return e;
}

AlgebraElement random_imaginary(int dim, std::mt19937_64& rng) {
  AlgebraElement e = random_element(dim, rng);
  e.c[0] = 0.0;
  return e;
}

std::vector<IdentityResidual> verify_algebra_identities(int dim, int trials,
                                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IdentityResidual> out = {
      {"norm-multiplicative"}, {"conj-antihom"},     {"inner-mult"},
      {"inner-exchange"},      {"polar-1"},          {"polar-2"},
      {"polar-3"},             {"metric-from-product"}, {"norm-from-product"},
      {"cancellation"},        {"polar-1-im"},       {"polar-2-im"},
      {"polar-3-im"},          {"triple-product"},   {"double-cross"},
      {"calibration"},         {"cross-inner-1"},    {"cross-inner-2"},
      {"cross-vs-psi"},
  };
  auto acc = [&](int slot, double v) {
    v = std::abs(v);
    if (v > out[slot].max_abs) out[slot].max_abs = v;
  };
  const AlgebraElement one = AlgebraElement::real(dim, 1.0);
  for (int t = 0; t < trials; ++t) {
    AlgebraElement a = random_element(dim, rng);
    AlgebraElement b = random_element(dim, rng);
    AlgebraElement c = random_element(dim, rng);

    acc(0, norm(mul(a, b)) - norm(a) * norm(b));
    acc(1, norm(conj(mul(a, b)) - mul(conj(b), conj(a))));
    acc(2, inner(mul(a, c), mul(b, c)) - inner(a, b) * norm2(c));
    acc(2, inner(mul(c, a), mul(c, b)) - inner(a, b) * norm2(c));
    acc(3, inner(a, mul(b, c)) - inner(mul(a, conj(c)), b));
    acc(3, inner(a, mul(c, b)) - inner(mul(conj(c), a), b));
    acc(4, norm(mul(a, mul(conj(b), c)) + mul(b, mul(conj(a), c)) -
                2.0 * inner(a, b) * c));
    acc(5, norm(mul(mul(a, conj(b)), c) + mul(mul(a, conj(c)), b) -
                2.0 * inner(b, c) * a));
    acc(6, norm(mul(a, conj(b)) + mul(b, conj(a)) - 2.0 * inner(a, b) * one));
    acc(7, inner(a, b) - re(mul(a, conj(b))));
    acc(7, inner(a, b) - re(mul(b, conj(a))));
    acc(7, inner(a, b) - re(mul(conj(b), a)));
    acc(7, inner(a, b) - re(mul(conj(a), b)));
    acc(8, norm(mul(a, conj(a)) - norm2(a) * one));
    acc(8, norm(mul(conj(a), a) - norm2(a) * one));
    acc(9, norm(mul(mul(a, c), conj(c)) - norm2(c) * a));
    acc(9, norm(mul(mul(a, conj(c)), c) - norm2(c) * a));
    acc(9, norm(mul(conj(a), mul(a, c)) - norm2(a) * c));
    acc(9, norm(mul(a, mul(conj(a), c)) - norm2(a) * c));

    AlgebraElement ai = random_imaginary(dim, rng);
    AlgebraElement bi = random_imaginary(dim, rng);
    AlgebraElement ci = random_imaginary(dim, rng);
    AlgebraElement di = random_imaginary(dim, rng);

    acc(10, norm(mul(ai, mul(bi, ci)) + mul(bi, mul(ai, ci)) +
                 2.0 * inner(ai, bi) * ci));
    acc(11, norm(mul(mul(ai, bi), ci) + mul(mul(ai, ci), bi) +
                 2.0 * inner(bi, ci) * ai));
    acc(12, norm(mul(ai, bi) + mul(bi, ai) + 2.0 * inner(ai, bi) * one));
    acc(13, norm(mul(ai, mul(bi, ci)) + 0.5 * associator(ai, bi, ci) +
                 phi_form(ai, bi, ci) * one + inner(bi, ci) * ai -
                 inner(ai, ci) * bi + inner(ai, bi) * ci));
    acc(14, norm(cross(ai, cross(bi, ci)) + inner(ai, bi) * ci -
                 inner(ai, ci) * bi + 0.5 * associator(ai, bi, ci)));
    {
      const double h = 0.5 * norm2(associator(ai, bi, ci)) * 0.5;
      const double p = phi_form(ai, bi, ci);
      acc(15, h + p * p - wedge3_norm2(ai, bi, ci));
    }
    acc(16, inner(cross(ai, bi), cross(ci, di)) -
                (wedge2_inner(ai, bi, ci, di) -
                 0.5 * inner(ai, associator(bi, ci, di))));
    acc(17, inner(cross(ai, bi), cross(ai, di)) - wedge2_inner(ai, bi, ai, di));
    acc(18, inner(cross(ai, bi), cross(ci, di)) -
                (wedge2_inner(ai, bi, ci, di) +
                 0.5 * inner(associator(ai, bi, ci), di)));
  }
  return out;
}

NormDefect norm_defect_search(int dim, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NormDefect best;
  best.a = AlgebraElement::zero(dim);
  best.b = AlgebraElement::zero(dim);
  for (int t = 0; t < trials; ++t) {
    AlgebraElement a = random_element(dim, rng);
    AlgebraElement b = random_element(dim, rng);
    double d = std::abs(norm(mul(a, b)) - norm(a) * norm(b));
    if (d > best.defect) {
      best.defect = d;
      best.a = a;
      best.b = b;
    }
  }
  return best;
}

}  // namespace g2calc

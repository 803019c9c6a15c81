#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "g2calc/forms.hpp"
#include "g2calc/g2.hpp"

namespace g2calc {

// Periodic lattice on a flat 7-torus. An axis with n[i] == 1 carries fields
// that are constant along it; derivative stencils return 0 there.
struct LatticeSpec {
  std::array<int, 7> n{1, 1, 1, 1, 1, 1, 1};
  std::array<double, 7> period{2 * kPi, 2 * kPi, 2 * kPi, 2 * kPi,
                               2 * kPi, 2 * kPi, 2 * kPi};
  int fd_order = 4;  // 2 or 4

  static constexpr double kPi = 3.14159265358979323846;

  long long sites() const;
  double spacing(int axis) const { return period[axis] / n[axis]; }
  bool same_grid(const LatticeSpec& o) const;
};

std::array<int, 7> site_index(const LatticeSpec& lat, long long site);
long long site_of(const LatticeSpec& lat, const std::array<int, 7>& idx);
std::array<double, 7> site_coords(const LatticeSpec& lat, long long site);

// A lattice of fixed-size coefficient blocks. degree >= 0 marks a k-form
// field whose block is the lexicographic compressed layout of KForm.
struct Field {
  LatticeSpec lat;
  int degree = -1;
  int comps = 0;
  std::vector<double> data;

  static Field form(const LatticeSpec& lat, int degree);
  static Field plain(const LatticeSpec& lat, int comps);

  double* at(long long site) { return data.data() + site * comps; }
  const double* at(long long site) const { return data.data() + site * comps; }
  KForm form_at(long long site) const;
  void set_form(long long site, const KForm& f);
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
double max_abs(const Field& a);

Field sample_form(const LatticeSpec& lat, int degree,
                  const std::function<KForm(const std::array<double, 7>&)>& f);
Field constant_form(const LatticeSpec& lat, const KForm& value);

// Central finite difference along one axis at the lattice fd_order,
// periodic wrap; exactly zero along axes with n == 1.
Field partial(const Field& fld, int axis);
Field exterior_d(const Field& fld);

struct MetricField {
  LatticeSpec lat;
  std::vector<Metric> m;
};

struct MetricFieldResult {
  PositivityStatus status = PositivityStatus::kOk;
  long long bad_site = -1;
  MetricField mf;
};

// Per-site metric recovery for a 3-form field; stops at the first site
// whose form is degenerate or non-positive.
MetricFieldResult metric_field(const Field& phi);

Field hodge_field(const Field& fld, const MetricField& mf);
// True formal adjoint of d on a 7-manifold: (-1)^m (star d star) on m-forms.
Field codifferential(const Field& fld, const MetricField& mf);

// Levi-Civita data. christoffel: Gamma^k_ij at comp k*49 + i*7 + j.
// riemann: fully lowered R_ijkl at comp ((i*7+j)*7+k)*7+l, antisymmetric in
// (i,j) and (k,l), where R_ijkl = g_lm (d_i Gamma^m_jk - d_j Gamma^m_ik
// + Gamma Gamma terms). ricci: Ric_jk = g^il R_ijkl at comp j*7 + k.
Field christoffel(const MetricField& mf);
Field riemann(const MetricField& mf, const Field& gamma);
Field ricci_direct(const MetricField& mf);

// nabla_m applied per site: k-form input (degree 3 or 4) gives comps
// m*size + lex-rank; rank-2 input (49 comps) gives m*49 + i*7 + j.
Field covariant_d_form(const Field& fld, const Field& gamma);
Field covariant_d_rank2(const Field& fld, const Field& gamma);

// Periodic trapezoid quadrature of one component: grid mean times the
// volume of the torus. Exact for trigonometric polynomials below Nyquist.
double integrate(const Field& fld, int comp = 0);

// Pullback of a constant k-form through a map with the given analytic
// Jacobian, sampled at lattice nodes.
using JacobianFn = std::function<Matrix7(const std::array<double, 7>&)>;
Field pullback_constant_form(const KForm& alpha, const JacobianFn& jac,
                             const LatticeSpec& lat);

struct PullbackStructureResult {
  bool positive = true;
  long long bad_site = -1;
  Field phi;
};

// Same, plus a per-site positivity sweep for 3-forms.
PullbackStructureResult pullback_structure(const KForm& phi0,
                                           const JacobianFn& jac,
                                           const LatticeSpec& lat);

}  // namespace g2calc

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "g2calc/fields.hpp"
#include "g2calc/g2.hpp"

namespace g2calc {

// Full torsion of a 3-form field: T_mn with nabla_m phi_ijk
// = T_mp g^{pq} psi_qijk, recovered by contracting nabla phi against psi.
// The split is T1 (trace part), T27 (traceless symmetric), and the
// antisymmetric part decomposed through the two-form projectors (T7, T14).
struct TorsionReport {
  PositivityStatus status = PositivityStatus::kOk;
  long long bad_site = -1;
  Field t, t1, t7, t14, t27;  // 49 comps each, sup norms below
  double t_max = 0, t1_max = 0, t7_max = 0, t14_max = 0, t27_max = 0;
  // Sup of |nabla_m phi - (T_m.)# . psi|; limited by the stencil error on
  // non-constant fields since discrete derivatives do not obey Leibniz.
  double nabla_phi_residual = 0;
  double nabla_phi_max = 0;  // sup |nabla phi|, the natural scale above
  // Re-contracting that defect against psi must give zero identically,
  // so this one sits at roundoff on every field.
  double recovery_residual = 0;
  double decomp_residual = 0;  // sup |t - (t1 + t7 + t14 + t27)|
  double orth_residual = 0;    // largest pairwise g-inner product of pieces
};

TorsionReport full_torsion(const Field& phi);

// Sup of |nabla_p psi_ijkl + (T_p. ^ phi)_ijkl|.
double verify_nabla_psi(const Field& phi);

// Both routes to the "which derivatives vanish" question: measured
// exterior derivatives against torsion components. All norms are sups,
// all verdicts use the same absolute threshold.
struct FernandezGray {
  double dphi_max = 0, dpsi_max = 0;
  double t_max = 0, t1_max = 0, t7_max = 0, t14_max = 0, t27_max = 0;
  double threshold = 0;
  bool closed = false, coclosed = false, torsion_free = false;
  bool closed_from_torsion = false, coclosed_from_torsion = false;
  bool consistent = false;
};

FernandezGray fernandez_gray(const Field& phi, double threshold);

struct Classification {
  bool c1 = false, c7 = false, c14 = false, c27 = false;
  double threshold = 0;
  std::string label;  // torsion-free / nearly parallel / closed / coclosed
};

Classification classify(const TorsionReport& report, double tol_abs = 1e-8,
                        double tol_rel = 1e-3);

// Sup residual of
//   nabla_i T_jk - nabla_j T_ik = (T_ip T_jq + R_ijpq / 2) g^{pa} g^{qb}
//   phi_abk.
double bianchi_residual(const Field& phi);

// Ricci curvature computed from torsion data against the direct
// Levi-Civita route.
struct RicciComparison {
  Field from_torsion, direct;  // 49 comps
  double max_discrepancy = 0;
};

RicciComparison ricci_two_ways(const Field& phi);

// The torsion route at a single fiber with prescribed T and nabla T
// (343 comps, m*49 + i*7 + j).
Matrix7 ricci_from_torsion_pointwise(const G2Structure& s, const Matrix7& t,
                                     const std::array<double, 343>& nabla_t);

// Reducible holonomy models on the flat torus. Both are torsion-free with
// the identity metric; the four-form companions come out exactly.
KForm su2_product_phi();     // e^1 w1 + e^2 w2 + e^3 w3 - e^123
KForm su2_companion();       // e^23 w1 + e^31 w2 + e^12 w3 - w1^2/2
KForm su3_product_phi();     // e^1 w - Re(Omega)
KForm su3_companion();       // w^2/2 + e^1 Im(Omega); equals -(star phi):
                             // the formula's product orientation
                             // e^1 ^ w^3/6 is opposite to the one the
                             // positive form induces.
Field build_su2_product(const LatticeSpec& lat);
Field build_su3_product(const LatticeSpec& lat);

// integral of phi ^ star phi; throws std::invalid_argument off the
// positive cone.
double hitchin_functional(const Field& phi);

// phi0 plus amplitude * d(eta) for a seeded trigonometric 2-form eta
// supported on the axes with more than one node. Sampled analytically,
// so the field is closed up to the stencil error only.
Field closed_perturbation(const LatticeSpec& lat, double amplitude,
                          std::uint64_t seed);

// Gram matrix of beta -> integral of beta ^ beta ^ phi over constant
// 2-forms. Requires a closed phi (throws std::invalid_argument otherwise).
struct QFormReport {
  Eigen::Matrix<double, 21, 21> gram;
  std::array<double, 21> eigenvalues{};
  int positive = 0, negative = 0;
  double closed_residual = 0;
};

QFormReport q_form(const Field& phi, double closed_tol = 1e-8);

}  // namespace g2calc

#pragma once

#include <optional>

#include "g2calc/forms.hpp"

namespace g2calc {

// The standard 3-form phi0 and its Euclidean dual psi0 = *phi0 on R^7.
KForm standard_phi();
KForm standard_psi();

enum class PositivityStatus { kOk, kDegenerate, kNotPositive };

// -6 B_ij e^{0...6} = (e_i . phi) ^ (e_j . phi) ^ phi, g = B / (det B)^{1/9}.
// For a positive form det B = (det g)^{9/2} > 0 and g is positive definite.
struct MetricResult {
  PositivityStatus status = PositivityStatus::kOk;
  Metric metric;  // meaningful only when status == kOk
  Matrix7 b = Matrix7::Zero();
  double det_b = 0.0;
};

MetricResult metric_from_phi(const KForm& phi);
bool is_positive(const KForm& phi);

struct G2Structure {
  KForm phi;
  Metric metric;
  KForm psi;  // *phi
  KForm vol;
  double phi_d[7][7][7];
  double psi_d[7][7][7][7];
};

std::optional<G2Structure> make_structure(const KForm& phi);
const G2Structure& standard_structure();

// Sup-norm residuals of the six contractions of phi and psi against g.
struct ContractionResiduals {
  double phph1 = 0, phph2 = 0, phps1 = 0, phps2 = 0, psps2 = 0, psps3 = 0;
  double max() const;
};
ContractionResiduals verify_contractions(const G2Structure& s);

// (P beta)_ab = 1/2 psi_abcd g^{ci} g^{dj} beta_ij.  P has eigenvalue -2 on
// the 7-dimensional piece {X . phi} and +1 on the 14-dimensional piece.
KForm p_operator(const G2Structure& s, const KForm& beta);

struct TwoFormSplit {
  KForm b7, b14;
};
TwoFormSplit decompose_2form(const G2Structure& s, const KForm& beta);

// Inverse of X -> X . phi on the 7-dimensional piece.
Vector7 vector_from_beta7(const G2Structure& s, const KForm& beta7);

// (A <> phi)_ijk = A^l_i phi_ljk + A^l_j phi_ilk + A^l_k phi_ijl, with
// A^l_i = a(l, i).
KForm diamond(const G2Structure& s, const Matrix7& a);

// gamma = f phi + X . psi + gamma27.
struct ThreeFormSplit {
  double f = 0.0;
  Vector7 x = Vector7::Zero();
  KForm g1, g7, g27;
};
ThreeFormSplit decompose_3form(const G2Structure& s, const KForm& gamma);

// Orthogonal matrix with columns f1, f2, f1 x f2, f4, f1 x f4, f2 x f4,
// (f1 x f2) x f4; lands in the stabilizer of phi0.  Empty when the triple is
// not orthonormal with phi0(f1,f2,f4) = 0 at tolerance.
std::optional<Matrix7> g2_element_from_triple(const Vector7& f1,
                                              const Vector7& f2,
                                              const Vector7& f4,
                                              double tol = 1e-10);

// d/dt|_0 of *_{phi(t)} phi(t) for phi(t) = phi + t gamma:
// (4/3) * pi_1(gamma) + * pi_7(gamma) - * pi_27(gamma).
KForm hitchin_variation(const G2Structure& s, const KForm& gamma);

}  // namespace g2calc

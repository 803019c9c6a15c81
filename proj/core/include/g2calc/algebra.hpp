#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace g2calc {

// Element of a Cayley-Dickson doubling of R: dim 1 (R), 2 (C), 4 (H), 8 (O)
// or 16 (sedenions), as coefficients over the basis e0 = 1, e1, ..., e_{dim-1}.
struct AlgebraElement {
  int dim = 8;
  std::array<double, 16> c{};

  static AlgebraElement zero(int dim);
  static AlgebraElement real(int dim, double v);
  static AlgebraElement basis(int dim, int i, double v = 1.0);
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a);
AlgebraElement operator*(double s, const AlgebraElement& a);

double re(const AlgebraElement& a);
AlgebraElement im(const AlgebraElement& a);
AlgebraElement conj(const AlgebraElement& a);
double inner(const AlgebraElement& a, const AlgebraElement& b);
double norm2(const AlgebraElement& a);
double norm(const AlgebraElement& a);

// Cayley-Dickson product (a,b)(c,d) = (ac - conj(d)b, da + b conj(c)),
// defined at every dim in {1, 2, 4, 8, 16}.
AlgebraElement cd_mul(const AlgebraElement& a, const AlgebraElement& b);

// Library product.  dim 8 uses the table induced by the flat cross product
// (never typed in by hand); other dims fall back to cd_mul.  The two dim-8
// tables are identified by the signed basis permutation from cd_basis_map().
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement associator(const AlgebraElement& a, const AlgebraElement& b,
                          const AlgebraElement& c);

// phi(a,b,c) = <ab, c>, psi(a,b,c,d) = 1/2 <a, [b,c,d]>; alternating for
// imaginary arguments.
double phi_form(const AlgebraElement& a, const AlgebraElement& b,
                const AlgebraElement& c);
double psi_form(const AlgebraElement& a, const AlgebraElement& b,
                const AlgebraElement& c, const AlgebraElement& d);

// Cross product of imaginary elements: a x b = Im(ab).
AlgebraElement cross(const AlgebraElement& a, const AlgebraElement& b);

// Structure constant of the standard 3-form on R^7, 0-based axes, in {-1,0,1}.
int phi0_coeff(int i, int j, int k);

// Cross product on Im O = R^7: <u x v, w> = phi0(u,v,w).
std::array<double, 7> cross7(const std::array<double, 7>& u,
                             const std::array<double, 7>& v);

// Standard cross product on Im H = R^3.
std::array<double, 3> cross3(const std::array<double, 3>& u,
                             const std::array<double, 3>& v);

// Product of two basis elements is always sign * (basis element); exact.
struct BasisProduct {
  int index;
  int sign;
};
BasisProduct cd_basis_product(int dim, int i, int j);
BasisProduct oct_basis_product(int i, int j);

// Signed permutation sending the Cayley-Dickson octonion basis to the
// cross-product one, found by search over generator images.
struct SignedPerm {
  std::array<int, 8> index{};
  std::array<int, 8> sign{};
};
SignedPerm cd_basis_map();

struct IdentityResidual {
  std::string name;
  double max_abs = 0.0;
};

// Max absolute residual of each composition-algebra identity over `trials`
// seeded random tuples.  All residuals vanish (to roundoff) for dim <= 8;
// several identities genuinely fail at dim 16.
std::vector<IdentityResidual> verify_algebra_identities(int dim, int trials,
                                                        std::uint64_t seed);

// Largest | ||ab|| - ||a|| ||b|| | found over seeded random pairs, with the
// witnessing pair.  Used to exhibit the failure of norm multiplicativity in
// the sedenions.
struct NormDefect {
  AlgebraElement a, b;
  double defect = 0.0;
};
NormDefect norm_defect_search(int dim, int trials, std::uint64_t seed);

AlgebraElement random_element(int dim, std::mt19937_64& rng);
AlgebraElement random_imaginary(int dim, std::mt19937_64& rng);

}  // namespace g2calc

#pragma once

#include <Eigen/Dense>
#include <array>
#include <initializer_list>

namespace g2calc {

using Matrix7 = Eigen::Matrix<double, 7, 7>;
using Vector7 = Eigen::Matrix<double, 7, 1>;

int binom7(int k);

// Sorted k-subsets of {0,...,6} in lexicographic order.  A subset is also
// handled as a 7-bit mask (bit i = axis i present).
unsigned subset_mask(int k, int rank);
int subset_rank(int k, unsigned mask);
// Sign of sorting the concatenation of two disjoint sorted subsets.
int merge_sign(unsigned mask_a, unsigned mask_b);

// Alternating k-form on R^7 stored as C(7,k) coefficients over the
// lexicographic basis e^{i1...ik}, i1 < ... < ik, axes 0-based.
class KForm {
 public:
  KForm() = default;
  explicit KForm(int degree);

  int degree() const { return k_; }
  int size() const { return binom7(k_); }
  double* data() { return c_.data(); }
  const double* data() const { return c_.data(); }
  double& operator[](int rank) { return c_[rank]; }
  double operator[](int rank) const { return c_[rank]; }

  // Coefficient on an arbitrary index tuple; antisymmetric in the indices,
  // zero on repeats.
  double operator()(std::initializer_list<int> idx) const;
  void set(std::initializer_list<int> idx, double v);
  void add(std::initializer_list<int> idx, double v);

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  KForm& operator*=(double s);

 private:
  int k_ = 0;
  std::array<double, 35> c_{};
};

KForm operator+(const KForm& a, const KForm& b);
KForm operator-(const KForm& a, const KForm& b);
KForm operator*(double s, const KForm& a);
double max_abs(const KForm& a);

KForm wedge(const KForm& a, const KForm& b);
KForm interior(const Vector7& x, const KForm& a);

struct Metric {
  Matrix7 g = Matrix7::Identity();
  Matrix7 ginv = Matrix7::Identity();
  double det = 1.0;
  double sqrt_det = 1.0;

  static Metric euclidean();
  // Caller is responsible for m being symmetric positive definite.
  static Metric from_matrix(const Matrix7& m);
};

// Determinant of the k x k submatrix of m given by row/column masks.
double minor_det(const Matrix7& m, unsigned rows, unsigned cols);

// Contravariant coefficients: raise(a)[I] = sum_J det(ginv[I,J]) a[J].
KForm raise_indices(const KForm& a, const Metric& m);
double form_inner(const KForm& a, const KForm& b, const Metric& m);
double form_norm2(const KForm& a, const Metric& m);
KForm hodge(const KForm& a, const Metric& m);
KForm volume_form(const Metric& m);

Vector7 sharp(const Vector7& oneform, const Metric& m);
Vector7 flat(const Vector7& vec, const Metric& m);
KForm oneform_of(const Vector7& covector);

// Pullback under the linear map A: (A* a)(u,...) = a(Au,...).
KForm pullback_linear(const Matrix7& a, const KForm& form);

// Full (signed) coefficient tables, for contraction loops.
void dense3(const KForm& a, double (&out)[7][7][7]);
void dense4(const KForm& a, double (&out)[7][7][7][7]);

}  // namespace g2calc

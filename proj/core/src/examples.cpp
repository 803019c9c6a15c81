#include "g2calc/examples.hpp"

#include <cmath>
#include <stdexcept>

#include "g2calc/torsion.hpp"

namespace g2calc {

std::vector<std::string> example_names() {
  return {"flat", "scaled", "su2", "su3", "pullback", "closed", "degenerate"};
}

Matrix7 pullback_example_jacobian(const std::array<double, 7>& x,
                                  double amplitude) {
  Matrix7 df = Matrix7::Identity();
  df(0, 1) = amplitude * std::cos(x[1]);
  return df;
}

Field make_example(const std::string& name, const LatticeSpec& lat,
                   std::uint64_t seed, double amplitude) {
  if (name == "flat") return constant_form(lat, standard_phi());
  if (name == "scaled")
    return constant_form(lat,
                         pullback_linear(2.0 * Matrix7::Identity(),
                                         standard_phi()));
  if (name == "su2") return build_su2_product(lat);
  if (name == "su3") return build_su3_product(lat);
  if (name == "pullback")
    return pullback_constant_form(
        standard_phi(),
        [amplitude](const std::array<double, 7>& x) {
          return pullback_example_jacobian(x, amplitude);
        },
        lat);
  if (name == "closed") return closed_perturbation(lat, amplitude, seed);
  if (name == "degenerate") {
    KForm f(3);
    f.set({0, 1, 2}, 1.0);
    f.set({3, 4, 5}, 1.0);
    return constant_form(lat, f);
  }
  throw std::invalid_argument("make_example: unknown name " + name);
}

}  // namespace g2calc

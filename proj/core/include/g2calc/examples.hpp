#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g2calc/fields.hpp"

namespace g2calc {

// Ready-made 3-form fields exercising the torsion pipeline:
//   flat        constant reference form
//   scaled      constant form pulled back through 2*Id
//   su2, su3    reducible holonomy products, torsion-free
//   pullback    reference form through x -> x + amplitude sin(x_1) e_0
//   closed      seeded closed perturbation of the reference form
//   degenerate  constant form off the positive cone (error-path input)
std::vector<std::string> example_names();

Field make_example(const std::string& name, const LatticeSpec& lat,
                   std::uint64_t seed = 1, double amplitude = 0.05);

// Jacobian of the shear map behind the "pullback" example.
Matrix7 pullback_example_jacobian(const std::array<double, 7>& x,
                                  double amplitude);

}  // namespace g2calc

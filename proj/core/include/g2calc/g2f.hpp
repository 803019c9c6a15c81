#pragma once

#include <string>

#include "g2calc/fields.hpp"

namespace g2calc {

// Lattice field container: one line of JSON metadata, then raw
// little-endian binary64 coefficients, site-major. Round-trips bit-exact.
void write_g2f(const std::string& path, const Field& fld,
               const std::string& kind);

struct G2fFile {
  std::string kind;
  Field field;
};

// Throws std::runtime_error on malformed headers or truncated payloads.
G2fFile read_g2f(const std::string& path);

}  // namespace g2calc

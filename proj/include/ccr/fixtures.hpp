#pragma once

// Canonical small complexes and a seeded generator of random eligible ones.

#include <cstdint>
#include <map>
#include <string>

#include "ccr/complex.hpp"

namespace ccr::fixtures {

/// One vertex c with rays x, y, z, z'.
ComplexDescription star4();
/// One vertex 0 with rays + and -.
ComplexDescription line();
/// Branch vertices p, q joined by a path p - s1 - ... - s(l-1) - q; rays
/// x1, x2, x3 at p and y1, y2, y3 at q. Requires l >= 1.
ComplexDescription barbell(int length);
/// 4-cycle a-b-c-d with rays ra, rb, rc, rd at the corners.
ComplexDescription squarecore();
/// LINE x LINE x LINE with aliases x, y, z, z'.
ComplexDescription zzz();
/// 4-cycle without rays.
ComplexDescription bare_square();

/// Connected median-closed induced subgraph of a hypercube (at most 16
/// vertices), with rays added at extremal vertices until the complex is
/// eligible (at most 8 rays). Deterministic in the seed.
ComplexDescription random_eligible(std::uint64_t seed);

struct Relabeling {
  ComplexDescription image;
  std::map<std::string, std::string> vertices;  // old core id -> new core id
  std::map<std::string, std::string> rays;      // old ray id -> new ray id
};

/// Renames every core vertex and ray of a single-factor description by a
/// seeded random bijection.
Relabeling relabel(const ComplexDescription& desc, std::uint64_t seed);

}  // namespace ccr::fixtures

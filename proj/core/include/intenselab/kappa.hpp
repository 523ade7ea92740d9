/*
 * Combinatorics on the 2-dimensional plane over F_3: the subfields of
 * End(V) of cardinality 9, the twisted-additivity structures
 *   (A1)  s(x+y) = s(x) + s(y) + (x-y) wedge(x,y)
 * on V (valued in V tensor wedge^2 V, identified with V via e1^e2 -> 1),
 * and their counterparts on F_9
 *   (A2)  l(x+y) = l(x) + l(y) + (x-y)(x y^3 - x^3 y),
 * together with the connecting bijections.
 *
 * Everything here is exhaustive over at most 81 x 81 cases and runs in
 * milliseconds.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "json.hpp"

namespace ilab::kappa {

// V = F_3^2, point index x0 + 3*x1 for x = x0 e1 + x1 e2.
using Pt = uint8_t;
constexpr int kPlaneSize = 9;

// F_9 = F_3[i] with i^2 = -1, index a0 + 3*a1 for a0 + a1 i.
using F9 = uint8_t;

F9 f9_add(F9 a, F9 b);
F9 f9_mul(F9 a, F9 b);
F9 f9_neg(F9 a);
F9 f9_pow(F9 a, unsigned e);

// wedge(x, y) under e1^e2 -> 1: the 2x2 determinant in F_3.
uint8_t wedge(Pt x, Pt y);

// An endomorphism of V as a 2x2 matrix over F_3, row major.
struct EndoMat {
  std::array<uint8_t, 4> m{};
  Pt apply(Pt x) const;
  bool operator==(const EndoMat &) const = default;
};

struct Subfield {
  EndoMat j;                     // a square root of -1; F_3[j] = F_3[-j]
  std::array<Pt, kPlaneSize> elems_sorted_key;  // canonical key for dedup
  bool operator==(const Subfield &o) const {
    return elems_sorted_key == o.elems_sorted_key;
  }
};

struct KappaStructure {
  std::array<Pt, kPlaneSize> table{};  // V -> V tensor wedge^2(V), identified with V
  bool operator==(const KappaStructure &) const = default;
};

struct LambdaMap {
  std::array<F9, kPlaneSize> table{};
  bool operator==(const LambdaMap &) const = default;
};

// All subfields of End(V) with 9 elements; |result| = 3.
std::vector<Subfield> enumerate_subfields();

// All bijective solutions of (A1), found by propagating the values on e1, e2
// along a fixed addition chain and revalidating on all 81 pairs; a second
// independent chain cross-checks well-definedness.  |result| = 3.
std::vector<KappaStructure> enumerate_kappa_structures();

// s_V: F_3[i] -> (x -> ix tensor (ix wedge x)); a certified member of K_V.
KappaStructure s_V(const Subfield &k);

// All bijective solutions of (A2); contains x -> x^5 and every member equals
// x -> x^5 + bx with b(1+b^2) = 0.
std::vector<LambdaMap> enumerate_lambda_maps();

// l_V: compose a kappa structure with the identifications
// wedge^2 V -> F_3 i (x^y -> xy^3 - x^3 y) and V tensor F_3 i -> V (mult).
LambdaMap l_V(const KappaStructure &k);

bool satisfies_a1(const KappaStructure &k);
bool satisfies_a2(const LambdaMap &l);

// JSON certificate with all three structure sets in table form.
nlohmann::ordered_json certificate();

}  // namespace ilab::kappa

/*
 * Lower central / p-central / derived series, jumps and widths, and the
 * structural predicates built on them (extraspecial, kappa-group, obelisk,
 * framed, regular, power-abelian).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "intenselab/group.hpp"

namespace ilab {

constexpr uint32_t kDepthIdentity = 0xffffffffu;

struct SeriesData {
  std::vector<Subgroup> lcs;      // G_1 = G, ..., last entry trivial
  std::vector<Subgroup> pcs;      // p-central series, same shape
  std::vector<Subgroup> derived;  // derived series until stable/trivial
  Subgroup frattini;
  std::vector<uint32_t> depth;   // per element; identity = kDepthIdentity
  std::vector<uint32_t> widths;  // w_1..w_c, integral by construction
  uint32_t cls = 0;              // nilpotency class

  const Subgroup &term(uint32_t i) const {  // G_i with G_{>len} = trivial
    return i - 1 < lcs.size() ? lcs[i - 1] : lcs.back();
  }
};

// G_{i+1} = <[G, G_i]> computed as the normal closure of generator
// commutators; agrees with the all-pairs definition (asserted in tests for
// |G| <= 3^6).
std::vector<Subgroup> lower_central_series(const GroupTable &G);

SeriesData series(const GroupTable &G);

struct Jump {
  uint32_t index = 0;
  uint32_t width = 0;
};

struct JumpProfile {
  std::vector<Jump> jumps;
  bool has(uint32_t idx) const {
    for (const auto &j : jumps)
      if (j.index == idx) return true;
    return false;
  }
};

JumpProfile jump_profile(const GroupTable &G, const SeriesData &S,
                         const Subgroup &H);

bool is_abelian(const GroupTable &G);
bool is_extraspecial(const GroupTable &G, const SeriesData &S);
// p = 3, |G:G_2| = 9, cubing map constant on G_2-cosets mod G_4 and bijective
// G/G_2 -> G_3/G_4.
bool is_kappa_group(const GroupTable &G, const SeriesData &S);
// p > 3, non-abelian, |G:G_3| = p^3, G^p = G_3.  False for p <= 3.
bool is_obelisk(const GroupTable &G, const SeriesData &S);
// Phi(M) = G_3 for every maximal subgroup M.  Throws NotAnObelisk.
bool is_framed(const GroupTable &G, const SeriesData &S);
// For every line l of G/G_2, the p-th power image of l together with [l, G_2]
// generates G_3/G_4.  Obelisks of class >= 3 only; throws NotAnObelisk.
bool lines_criterion(const GroupTable &G, const SeriesData &S);

struct RegularityReport {
  bool regular = true;
  bool sampled = false;  // true when |G| > 3^6 and only a sample was tested
  std::optional<std::pair<ElemIdx, ElemIdx>> witness;  // failing pair
};

// (xy)^p = x^p y^p gamma with gamma in [<x,y>,<x,y>]^p; all pairs when
// |G| <= 3^6, otherwise 1e4 seeded pairs plus all generator pairs.
RegularityReport is_regular(const GroupTable &G, uint64_t seed = 0);

struct PowerAbelianRow {
  uint32_t k = 0;
  bool power_set_is_subgroup = false;  // G^{p^k} equals the set of p^k powers
  bool torsion_index_matches = false;  // |mu_{p^k}(G)| = |G : G^{p^k}|
};

struct PowerAbelianReport {
  std::vector<PowerAbelianRow> rows;
  bool all_hold = true;
};

PowerAbelianReport power_abelian_report(const GroupTable &G);

struct PlusMinus {
  Subgroup plus;                 // fixed subgroup G^+
  std::vector<ElemIdx> minus;    // inverted set G^-
};

// perm must be an automorphism of order exactly 2 and |G| must be odd;
// asserts |G| = |G^+| |G^-|.
PlusMinus plus_minus_decomposition(const GroupTable &G,
                                   const std::vector<ElemIdx> &perm);

}  // namespace ilab

#include "intenselab/series.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ilab {

namespace {

uint32_t log_p_exact(uint64_t ratio, uint32_t p) {
  uint32_t w = 0;
  while (ratio % p == 0) {
    ratio /= p;
    ++w;
  }
  if (ratio != 1)
    throw ConsistencyError("width: index is not a power of p");
  return w;
}

std::vector<ElemIdx> commutator_seeds(const GroupTable &G,
                                      const std::vector<ElemIdx> &a,
                                      const std::vector<ElemIdx> &b) {
  std::vector<ElemIdx> out;
  std::unordered_set<ElemIdx> seen;
  for (ElemIdx x : a)
    for (ElemIdx y : b) {
      ElemIdx c = G.commutator(x, y);
      if (c != 0 && seen.insert(c).second) out.push_back(c);
    }
  return out;
}

}  // namespace

std::vector<Subgroup> lower_central_series(const GroupTable &G) {
  std::vector<Subgroup> terms;
  terms.push_back(whole_group(G));
  while (terms.back().order() > 1) {
    const Subgroup &cur = terms.back();
    auto seeds = commutator_seeds(G, G.generators(), cur.gens);
    Subgroup next = normal_closure(G, seeds);
    if (next.order() >= cur.order()) break;  // stabilized: not nilpotent
    terms.push_back(std::move(next));
  }
  return terms;
}

SeriesData series(const GroupTable &G) {
  if (!G.is_p_group()) throw BadInput("series: p-groups only");
  SeriesData S;
  S.lcs = lower_central_series(G);
  if (S.lcs.back().order() != 1)
    throw ConsistencyError("series: lower central series did not reach 1");
  S.cls = uint32_t(S.lcs.size()) - 1;

  uint32_t p = G.prime();
  for (uint32_t i = 0; i + 1 < S.lcs.size(); ++i)
    S.widths.push_back(
        log_p_exact(S.lcs[i].order() / S.lcs[i + 1].order(), p));

  S.depth.assign(G.order(), 0);
  for (uint32_t d = 0; d < S.lcs.size(); ++d)
    for (ElemIdx x : S.lcs[d].members) S.depth[x] = d + 1;
  S.depth[0] = kDepthIdentity;

  // p-central series: P_{i+1} = [G, P_i] P_i^p
  S.pcs.push_back(whole_group(G));
  while (S.pcs.back().order() > 1) {
    const Subgroup &cur = S.pcs.back();
    auto seeds = commutator_seeds(G, G.generators(), cur.gens);
    Subgroup comm = normal_closure(G, seeds);
    Subgroup pow = power_subgroup(G, cur, p);
    Subgroup next = subgroup_join(G, comm, pow);
    if (next.order() >= cur.order()) break;
    S.pcs.push_back(std::move(next));
  }

  S.derived.push_back(whole_group(G));
  while (S.derived.back().order() > 1) {
    Subgroup next = derived_subgroup(G, S.derived.back());
    if (next.order() >= S.derived.back().order()) break;
    S.derived.push_back(std::move(next));
  }

  S.frattini = frattini_subgroup(G);
  return S;
}

JumpProfile jump_profile(const GroupTable &G, const SeriesData &S,
                         const Subgroup &H) {
  JumpProfile out;
  uint32_t p = G.prime();
  std::vector<uint32_t> sizes;  // |H cap G_i| for i = 1..len
  for (const Subgroup &term : S.lcs)
    sizes.push_back(subgroup_meet(G, H, term).order());
  for (uint32_t i = 0; i + 1 < sizes.size(); ++i) {
    if (sizes[i] == sizes[i + 1]) continue;
    out.jumps.push_back({i + 1, log_p_exact(sizes[i] / sizes[i + 1], p)});
  }
  return out;
}

bool is_abelian(const GroupTable &G) {
  for (ElemIdx a : G.generators())
    for (ElemIdx b : G.generators())
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_extraspecial(const GroupTable &G, const SeriesData &S) {
  if (G.order() == 1) return false;
  Subgroup Z = center(G);
  if (Z.order() != G.prime()) return false;
  const Subgroup &G2 = S.term(2);
  return std::includes(Z.members.begin(), Z.members.end(), G2.members.begin(),
                       G2.members.end());
}

namespace {

// Coset key: minimal element of x N, for the small quotients the cubing
// predicate walks.
std::vector<ElemIdx> coset_keys(const GroupTable &G, const Subgroup &N) {
  std::vector<ElemIdx> key(G.order(), G.order());
  for (ElemIdx x = 0; x < G.order(); ++x) {
    if (key[x] != G.order()) continue;
    for (ElemIdx m : N.members) key[G.mul(x, m)] = x;
  }
  return key;
}

}  // namespace

bool is_kappa_group(const GroupTable &G, const SeriesData &S) {
  if (G.prime() != 3) return false;
  const Subgroup &G2 = S.term(2);
  if (uint64_t(G.order()) != uint64_t(G2.order()) * 9) return false;
  const Subgroup &G3 = S.term(3);
  const Subgroup &G4 = S.term(4);
  if (G3.order() / G4.order() != 9) return false;

  auto key2 = coset_keys(G, G2);
  auto key4 = coset_keys(G, G4);

  std::unordered_map<ElemIdx, ElemIdx> kappa;  // coset of G2 -> cube mod G4
  for (ElemIdx x = 0; x < G.order(); ++x) {
    ElemIdx cube = G.power(x, 3);
    if (!G3.contains(cube)) return false;
    auto [it, fresh] = kappa.emplace(key2[x], key4[cube]);
    if (!fresh && it->second != key4[cube]) return false;  // not constant on cosets
  }
  std::unordered_set<ElemIdx> image;
  for (auto &[r, v] : kappa) image.insert(v);
  return kappa.size() == 9 && image.size() == 9;
}

bool is_obelisk(const GroupTable &G, const SeriesData &S) {
  if (G.prime() <= 3) return false;
  if (is_abelian(G)) return false;
  const Subgroup &G3 = S.term(3);
  if (uint64_t(G.order()) != uint64_t(G3.order()) * G.prime() * G.prime() * G.prime())
    return false;
  Subgroup Gp = power_subgroup(G, whole_group(G), G.prime());
  return Gp.members == G3.members;
}

bool is_framed(const GroupTable &G, const SeriesData &S) {
  if (!is_obelisk(G, S)) throw NotAnObelisk("is_framed: not a p-obelisk");
  const Subgroup &G3 = S.term(3);
  for (const Subgroup &M : maximal_subgroups(G)) {
    Subgroup phiM = subgroup_join(G, power_subgroup(G, M, G.prime()),
                                  derived_subgroup(G, M));
    if (phiM.members != G3.members) return false;
  }
  return true;
}

bool lines_criterion(const GroupTable &G, const SeriesData &S) {
  if (!is_obelisk(G, S)) throw NotAnObelisk("lines_criterion: not a p-obelisk");
  if (S.cls < 3) throw NotAnObelisk("lines_criterion: class >= 3 required");
  const Subgroup &G2 = S.term(2);
  const Subgroup &G3 = S.term(3);
  const Subgroup &G4 = S.term(4);

  ElemIdx y = 0;  // representative of the cyclic G_2/G_3
  for (ElemIdx e : G2.members)
    if (!G3.contains(e)) {
      y = e;
      break;
    }

  for (const Subgroup &M : maximal_subgroups(G)) {
    ElemIdx x = 0;
    for (ElemIdx e : M.members)
      if (!G2.contains(e)) {
        x = e;
        break;
      }
    std::vector<ElemIdx> gens = G4.gens;
    gens.push_back(G.power(x, G.prime()));
    gens.push_back(G.commutator(x, y));
    Subgroup V = subgroup_generated(G, gens);
    if (!std::includes(G3.members.begin(), G3.members.end(), V.members.begin(),
                       V.members.end()))
      throw ConsistencyError("lines_criterion: image escapes G_3");
    if (V.order() != G3.order()) return false;
  }
  return true;
}

namespace {

// Caches the whole-group data so that generating pairs, the common case in a
// random sample, avoid the per-pair subgroup closure.
struct RegularityContext {
  const GroupTable &G;
  uint32_t p;
  std::vector<Subgroup> maxima;  // empty when the cache is not worthwhile
  Subgroup derived_whole;
  Subgroup derived_whole_p;

  explicit RegularityContext(const GroupTable &g) : G(g), p(g.prime()) {
    if (G.order() > 729) {
      maxima = maximal_subgroups(G);
      derived_whole = derived_subgroup(G, whole_group(G));
      derived_whole_p = power_subgroup(G, derived_whole, p);
    }
  }

  bool pair_generates(ElemIdx x, ElemIdx y) const {
    if (maxima.empty()) return false;
    for (const Subgroup &M : maxima)
      if (M.contains(x) && M.contains(y)) return false;
    return true;
  }
};

bool regular_pair(const RegularityContext &ctx, ElemIdx x, ElemIdx y) {
  const GroupTable &G = ctx.G;
  const uint32_t p = ctx.p;
  ElemIdx gamma = G.mul(G.inv(G.mul(G.power(x, p), G.power(y, p))),
                        G.power(G.mul(x, y), p));
  if (gamma == 0) return true;
  if (ctx.pair_generates(x, y)) return ctx.derived_whole_p.contains(gamma);
  ElemIdx c = G.commutator(x, y);
  if (c == 0) return false;  // <x,y> abelian forces gamma = 1
  Subgroup K = conjugation_closure(G, {c}, {x, y});
  Subgroup Kp = power_subgroup(G, K, p);
  return Kp.contains(gamma);
}

}  // namespace

RegularityReport is_regular(const GroupTable &G, uint64_t seed) {
  RegularityReport rep;
  if (G.order() == 1) return rep;
  if (!G.is_p_group()) throw BadInput("is_regular: p-groups only");
  const uint32_t n = G.order();
  RegularityContext ctx(G);

  if (n <= 729) {
    for (ElemIdx x = 0; x < n && rep.regular; ++x)
      for (ElemIdx y = 0; y < n; ++y)
        if (!regular_pair(ctx, x, y)) {
          rep.regular = false;
          rep.witness = {x, y};
          break;
        }
    return rep;
  }

  rep.sampled = true;
  for (ElemIdx a : G.generators()) {
    for (ElemIdx b : G.generators())
      if (!regular_pair(ctx, a, b)) {
        rep.regular = false;
        rep.witness = {a, b};
        return rep;
      }
  }
  SplitMix64 rng(0x5eedull ^ seed ^ (uint64_t(n) << 16));
  for (int i = 0; i < 10000; ++i) {
    ElemIdx x = ElemIdx(rng.next() % n), y = ElemIdx(rng.next() % n);
    if (!regular_pair(ctx, x, y)) {
      rep.regular = false;
      rep.witness = {x, y};
      return rep;
    }
  }
  return rep;
}

PowerAbelianReport power_abelian_report(const GroupTable &G) {
  PowerAbelianReport rep;
  if (!G.is_p_group()) throw BadInput("power_abelian_report: p-groups only");
  if (G.order() == 1) return rep;
  uint32_t p = G.prime();

  uint64_t e = 1;
  for (uint32_t k = 1;; ++k) {
    e *= p;
    std::vector<ElemIdx> powers;
    powers.reserve(G.order());
    uint64_t torsion = 0;
    for (ElemIdx x = 0; x < G.order(); ++x) {
      ElemIdx y = G.power(x, int64_t(e));
      powers.push_back(y);
      if (y == 0) ++torsion;
    }
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
    Subgroup span = subgroup_generated(G, powers);

    PowerAbelianRow row;
    row.k = k;
    row.power_set_is_subgroup = powers.size() == span.order();
    row.torsion_index_matches = torsion == G.order() / span.order();
    rep.all_hold = rep.all_hold && row.power_set_is_subgroup && row.torsion_index_matches;
    rep.rows.push_back(row);
    if (span.order() == 1) break;
  }
  return rep;
}

PlusMinus plus_minus_decomposition(const GroupTable &G,
                                   const std::vector<ElemIdx> &perm) {
  if (G.order() % 2 == 0) throw BadInput("plus_minus: |G| must be odd");
  if (perm.size() != G.order()) throw BadInput("plus_minus: bad permutation");
  bool identity = true;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    if (perm[x] != x) identity = false;
    if (perm[perm[x]] != x)
      throw BadInput("plus_minus: automorphism must have order 2");
  }
  if (identity) throw BadInput("plus_minus: automorphism must have order 2");

  PlusMinus out;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    if (perm[x] == x) out.plus.members.push_back(x);
    if (perm[x] == G.inv(x)) out.minus.push_back(x);
  }
  out.plus.gens = out.plus.members;
  if (uint64_t(out.plus.members.size()) * out.minus.size() != G.order())
    throw ConsistencyError("plus_minus: |G| != |G+||G-|");
  return out;
}

}  // namespace ilab

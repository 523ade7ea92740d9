#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "intenselab/group.hpp"

namespace ilab {

namespace {

struct MemberVecHash {
  size_t operator()(const std::vector<ElemIdx> &v) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (ElemIdx x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return size_t(h);
  }
};

}  // namespace

std::vector<Subgroup> all_subgroups(const GroupTable &G,
                                    const AllSubgroupsOptions &opts) {
  if (!G.is_p_group()) throw BadInput("all_subgroups: p-groups only");
  std::vector<Subgroup> out;
  out.push_back(trivial_subgroup());
  if (G.order() == 1) return out;

  const uint32_t p = G.prime();
  std::unordered_set<std::vector<ElemIdx>, MemberVecHash> seen;
  seen.insert(out[0].members);

  // layer by layer: subgroups of order p^{j+1} are <S, x> with |S| = p^j,
  // x in N_G(S) \ S and x^p in S
  size_t layer_begin = 0, layer_end = 1;
  while (layer_end > layer_begin) {
    for (size_t si = layer_begin; si < layer_end; ++si) {
      // out can reallocate while we push; take copies
      const Subgroup S = out[si];
      if (S.order() == G.order()) continue;
      Subgroup N = normalizer(G, S);
      for (ElemIdx x : N.members) {
        if (S.contains(x)) continue;
        if (!S.contains(G.power(x, p))) continue;
        // T = S + xS + ... + x^{p-1}S, already a subgroup of order p|S|
        std::vector<ElemIdx> members;
        members.reserve(size_t(p) * S.order());
        ElemIdx xe = 0;
        for (uint32_t e = 0; e < p; ++e) {
          for (ElemIdx m : S.members) members.push_back(G.mul(xe, m));
          xe = G.mul(xe, x);
        }
        std::sort(members.begin(), members.end());
        if (seen.insert(members).second) {
          if (out.size() >= opts.max_subgroups)
            throw CapacityExceeded("all_subgroups: more than " +
                                   std::to_string(opts.max_subgroups) +
                                   " subgroups");
          Subgroup T;
          T.members = std::move(members);
          T.gens = S.gens;
          T.gens.push_back(x);
          out.push_back(std::move(T));
        }
      }
    }
    layer_begin = layer_end;
    layer_end = out.size();
  }

  std::sort(out.begin(), out.end(), [](const Subgroup &a, const Subgroup &b) {
    if (a.members.size() != b.members.size())
      return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

std::vector<SubgroupClass> subgroup_conjugacy_classes(
    const GroupTable &G, const std::vector<Subgroup> &subs) {
  std::unordered_map<std::vector<ElemIdx>, uint32_t, MemberVecHash> index_of;
  index_of.reserve(subs.size() * 2);
  for (uint32_t i = 0; i < subs.size(); ++i) index_of.emplace(subs[i].members, i);

  std::vector<char> assigned(subs.size(), 0);
  std::vector<SubgroupClass> classes;
  for (uint32_t i = 0; i < subs.size(); ++i) {
    if (assigned[i]) continue;
    SubgroupClass cls;
    std::vector<uint32_t> work{i};
    assigned[i] = 1;
    for (size_t h = 0; h < work.size(); ++h) {
      cls.members.push_back(work[h]);
      for (ElemIdx g : G.generators()) {
        Subgroup c = conjugate_subgroup(G, subs[work[h]], g);
        auto it = index_of.find(c.members);
        if (it == index_of.end())
          throw ConsistencyError("conjugacy classes: conjugate missing from list");
        if (!assigned[it->second]) {
          assigned[it->second] = 1;
          work.push_back(it->second);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace ilab

/*
 * Generic finite-group engine.
 *
 * A GroupTable interns the elements of a finite group as indices 0..n-1 by
 * breadth-first closure from a generating set inside an ambient structure
 * (quaternion units, matrices, tuples).  Index 0 is the identity and the
 * indexing is deterministic: elements are discovered in BFS order with the
 * generator order fixed, so two closures of the same seeds agree index by
 * index.
 *
 * Multiplication is backed by one of
 *   - a dense n x n table (materialized when n <= kTableThreshold),
 *   - the ambient operation plus an interning map,
 *   - a parent group plus coset projection (quotients).
 */
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "intenselab/errors.hpp"

namespace ilab {

using ElemIdx = uint32_t;

class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual uint64_t id() const = 0;
  virtual uint64_t mul(uint64_t x, uint64_t y) const = 0;
  virtual uint64_t inv(uint64_t x) const = 0;
  virtual std::string describe() const { return "ambient"; }
};

using AmbientPtr = std::shared_ptr<const Ambient>;

struct ClosureOptions {
  uint64_t max_order = 2'000'000;
  uint32_t table_threshold = 4096;  // materialize dense table when n <= this
};

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

struct Subgroup {
  std::vector<ElemIdx> members;  // strictly increasing
  std::vector<ElemIdx> gens;

  uint32_t order() const { return uint32_t(members.size()); }
  bool contains(ElemIdx x) const;
  bool operator==(const Subgroup &o) const { return members == o.members; }
};

class GroupTable : public std::enable_shared_from_this<GroupTable> {
 public:
  struct ParentWord {
    ElemIdx parent = 0;
    uint32_t gen = 0;
  };

  // Breadth-first interning of the group generated by the seeds.  Duplicate
  // and identity seeds are dropped from the generator list.
  static GroupPtr closure(AmbientPtr ambient, const std::vector<uint64_t> &seeds,
                          const ClosureOptions &opts = {});

  // Quotient by a normal subgroup; the result is a full GroupTable whose
  // elements are cosets, indexed breadth-first from the projected generators.
  struct QuotientData {
    GroupPtr group;
    GroupPtr parent;
    Subgroup kernel;
    std::vector<ElemIdx> coset_rep;   // quotient index -> minimal parent index
    std::vector<ElemIdx> projection;  // parent index -> quotient index
  };
  static QuotientData quotient(GroupPtr parent, const Subgroup &kernel);

  // Rebuilds a group from a dense table (snapshot loading).  The table must
  // be the closure-consistent multiplication of a group whose breadth-first
  // indexing from the given generators is the identity permutation.
  static GroupPtr from_table(uint32_t n, const std::vector<ElemIdx> &generators,
                             std::vector<uint16_t> table);

  uint32_t order() const { return n_; }
  ElemIdx identity() const { return 0; }
  const std::vector<ElemIdx> &generators() const { return generators_; }
  const std::vector<ParentWord> &parent_words() const { return parent_word_; }
  const std::vector<uint64_t> &codes() const { return codes_; }
  const AmbientPtr &ambient() const { return ambient_; }
  bool has_table() const { return !table_.empty(); }
  const std::vector<uint16_t> &table() const { return table_; }

  ElemIdx mul(ElemIdx i, ElemIdx j) const {
    if (!table_.empty()) return table_[size_t(i) * n_ + j];
    return mul_slow(i, j);
  }
  ElemIdx inv(ElemIdx i) const { return inv_[i]; }
  ElemIdx conj(ElemIdx g, ElemIdx x) const { return mul(mul(g, x), inv(g)); }
  ElemIdx commutator(ElemIdx x, ElemIdx y) const {
    return mul(mul(x, y), mul(inv(x), inv(y)));
  }
  ElemIdx power(ElemIdx x, int64_t e) const;
  uint32_t element_order(ElemIdx x) const;

  // p when |G| = p^k with p prime (k >= 1), 0 otherwise; order 1 gives p = 1.
  uint32_t prime() const { return prime_; }
  uint32_t prime_exponent() const { return prime_exp_; }
  bool is_p_group() const { return prime_ > 1 || n_ == 1; }

  ElemIdx index_of_code(uint64_t code) const;

  // Identity/inverse axioms for all indices, the generator associativity
  // criterion for n <= 2000, and 1e5 seeded random triples.  Throws
  // ConsistencyError on failure.
  void validate() const;

 private:
  friend struct GroupTableBuilder;
  GroupTable() = default;
  ElemIdx mul_slow(ElemIdx i, ElemIdx j) const;

  enum class Backend { Table, Ambient, Quotient };
  Backend backend_ = Backend::Table;

  uint32_t n_ = 0;
  uint32_t prime_ = 0, prime_exp_ = 0;
  std::vector<ElemIdx> generators_;
  std::vector<ParentWord> parent_word_;
  std::vector<ElemIdx> inv_;
  std::vector<uint16_t> table_;  // dense, only when n_ <= table_threshold

  // Ambient backend
  AmbientPtr ambient_;
  std::vector<uint64_t> codes_;
  std::unordered_map<uint64_t, ElemIdx> intern_;

  // Quotient backend
  GroupPtr parent_;
  std::vector<ElemIdx> quot_rep_;
  std::vector<ElemIdx> quot_proj_;

  mutable std::once_flag order_once_;
  mutable std::vector<uint32_t> element_order_;
};

// --- subgroup machinery -----------------------------------------------------

Subgroup subgroup_generated(const GroupTable &G, std::vector<ElemIdx> gens);
Subgroup trivial_subgroup();
Subgroup whole_group(const GroupTable &G);

Subgroup center(const GroupTable &G);
// Elements commuting with every element of the given set.
Subgroup centralizer(const GroupTable &G, const std::vector<ElemIdx> &set);
Subgroup normalizer(const GroupTable &G, const Subgroup &H);

bool is_normal(const GroupTable &G, const Subgroup &H);
Subgroup normal_closure(const GroupTable &G, const std::vector<ElemIdx> &set);
// Smallest subgroup containing seed whose generators are stable under
// conjugation by the listed elements (the normal closure inside <conj, seed>).
Subgroup conjugation_closure(const GroupTable &G, const std::vector<ElemIdx> &seed,
                             const std::vector<ElemIdx> &conj);
Subgroup conjugate_subgroup(const GroupTable &G, const Subgroup &H, ElemIdx g);

// Intersection and join.
Subgroup subgroup_meet(const GroupTable &G, const Subgroup &A, const Subgroup &B);
Subgroup subgroup_join(const GroupTable &G, const Subgroup &A, const Subgroup &B);

// <x^p [G,G]>, <x^n : x in S>, and friends used throughout the predicates.
Subgroup power_subgroup(const GroupTable &G, const Subgroup &H, uint64_t e);
Subgroup derived_subgroup(const GroupTable &G, const Subgroup &H);
Subgroup frattini_subgroup(const GroupTable &G);

// Subgroups of index p (p-groups only): preimages of the hyperplanes of
// G/Phi(G).
std::vector<Subgroup> maximal_subgroups(const GroupTable &G);

struct AllSubgroupsOptions {
  uint64_t max_subgroups = 500'000;
};

// Complete subgroup list of a p-group, canonical and deduplicated, via layered
// cyclic extension: subgroups of order p^{j+1} arise as <S, x> with |S| = p^j,
// x in N_G(S) \ S, x^p in S.
std::vector<Subgroup> all_subgroups(const GroupTable &G,
                                    const AllSubgroupsOptions &opts = {});

struct SubgroupClass {
  std::vector<uint32_t> members;  // indices into the all_subgroups list
  uint32_t representative = 0;    // index of the member with least member-vector
};

std::vector<SubgroupClass> subgroup_conjugacy_classes(
    const GroupTable &G, const std::vector<Subgroup> &subs);

// Deterministic RNG used for the sampled checks.
struct SplitMix64 {
  uint64_t s;
  explicit SplitMix64(uint64_t seed) : s(seed) {}
  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace ilab

/*
 * Automorphism construction from generator images, the intense predicate,
 * and the intensity computation by coset-restricted exhaustive search.
 *
 * An automorphism is intense when it maps every subgroup to a conjugate;
 * checking conjugacy-class representatives is equivalent, since an
 * automorphism permutes the classes.  The intensity of a p-group is the
 * number of scalars c in F_p^* realized on G/Phi(G) by intense
 * automorphisms; every realized scalar has a witness acting as that scalar
 * because the p'-part of the intense group is a cyclic complement.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "intenselab/group.hpp"
#include "intenselab/series.hpp"

namespace ilab {

struct Automorphism {
  std::vector<ElemIdx> gen_images;
  std::vector<ElemIdx> perm;
  // Scalar c with a(x) = x^c mod Phi(G) for all x, if any.
  std::optional<uint32_t> frattini_scalar;

  uint32_t order() const;  // order of the permutation
};

// Extends generator images along the closure parent words, then certifies the
// extension (homomorphism criterion on all (element, generator) pairs and
// bijectivity).  Throws NotAHomomorphism / NotBijective.
Automorphism automorphism_from_generator_images(const GroupTable &G,
                                                const std::vector<ElemIdx> &images);

// c in F_p^* with images[i] = g_i^c mod Phi for every generator, or nullopt.
std::optional<uint32_t> frattini_scalar_of_images(const GroupTable &G,
                                                  const Subgroup &phi,
                                                  const std::vector<ElemIdx> &images);

// Shared context for intensity checks on one group: the complete subgroup
// list and its conjugation orbits.
class IntenseChecker {
 public:
  explicit IntenseChecker(GroupPtr G, const AllSubgroupsOptions &opts = {});

  bool is_intense(const std::vector<ElemIdx> &perm) const;
  const std::vector<Subgroup> &subgroups() const { return subs_; }
  const std::vector<SubgroupClass> &classes() const { return classes_; }
  uint32_t class_of_subgroup(uint32_t sub_index) const { return class_of_[sub_index]; }
  std::optional<uint32_t> find_subgroup(const std::vector<ElemIdx> &members) const;

 private:
  GroupPtr G_;
  std::vector<Subgroup> subs_;
  std::vector<SubgroupClass> classes_;
  std::vector<uint32_t> class_of_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> index_by_hash_;
};

bool is_intense(const GroupTable &G, const IntenseChecker &ctx,
                const Automorphism &alpha);

struct ScalarWitness {
  uint32_t scalar = 0;
  std::vector<ElemIdx> gen_images;        // indices in the re-interned group
  std::vector<std::string> gen_words;     // replay anchors for the images
};

struct IntensityReport {
  uint64_t fingerprint = 0;
  uint32_t p = 0;
  uint32_t order = 0;
  uint32_t num_generators = 0;            // minimal generating set size
  std::vector<std::string> generator_words;  // words over the original gens
  std::vector<uint32_t> realized_scalars;    // sorted subset of F_p^*
  uint32_t intensity = 1;
  std::vector<ScalarWitness> witnesses;
  uint64_t candidates_examined = 0;
  uint64_t candidates_validated = 0;
  double seconds = 0.0;
  bool budget_exhausted = false;  // stopped by time budget before finishing
};

struct IntensityOptions {
  uint64_t candidate_budget = 100'000'000;  // per scalar; CapacityExceeded beyond
  unsigned threads = 1;
  double time_budget_seconds = 0.0;  // 0 = unlimited; cooperative cancellation
  AllSubgroupsOptions subgroup_opts;
};

// For each scalar c in F_p^*, enumerate generator-image tuples in
// g_i^c Phi(G) in lexicographic order, certify, test intensity, and stop at
// the first witness.  Generators are re-derived minimal before the search.
IntensityReport intensity(GroupPtr G, const IntensityOptions &opts = {});

// Word over the group's generators reaching element x, like "g0*g1^2".
std::string element_word(const GroupTable &G, ElemIdx x);

// Verifies that alpha acts as scalar (-1)^i on every layer G_i/G_{i+1}.
// Requires order 2 and class >= 3.
bool minus_one_powers_check(const GroupTable &G, const SeriesData &S,
                            const Automorphism &alpha);

}  // namespace ilab

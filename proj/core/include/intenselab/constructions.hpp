/*
 * Constructors for the concrete group families: abelian groups, extraspecial
 * groups, cyclic semidirect products, direct products, the order-729 group of
 * norm-one dual-number quaternion units, and the congruence quotients of the
 * two p-adic families (norm-one quaternions and triangular SL2).
 *
 * Every constructor output passes GroupTable::validate(); the quaternion and
 * matrix families are additionally cross-checked against an exhaustive
 * membership filter whenever that filter is small enough to enumerate.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intenselab/group.hpp"
#include "intenselab/ring.hpp"

#include "json.hpp"

namespace ilab {

enum class GroupKind {
  Abelian,
  Extraspecial,
  SemidirectCyclic,
  DirectProduct,
  Yo,
  SnDelta,
  Sl2Triangle,
};

std::string kind_name(GroupKind k);

struct GroupSpec {
  GroupKind kind = GroupKind::Abelian;
  uint32_t p = 0;                    // prime parameter
  std::vector<uint32_t> type;        // abelian exponent list, a1 >= a2 >= ...
  uint32_t n = 0;                    // extraspecial rank / semidirect modulus
  std::string exponent;              // extraspecial: "p" or "p2"
  uint32_t M = 0;                    // precision for the p-adic families
  std::optional<uint32_t> k;         // optional LCS quotient index
  uint32_t t = 0;                    // non-residue override (0 = smallest)
  uint32_t u = 0, m = 0;             // semidirect action and cyclic order
  std::vector<GroupSpec> factors;    // direct product

  // Strict schema: {"kind", "p"?, "type"?, "n"?, "exponent"?, "M"?, "k"?,
  // "t"?, "u"?, "m"?, "factors"?}; unknown keys are rejected.
  static GroupSpec from_json(const nlohmann::json &j);
  nlohmann::ordered_json to_json() const;  // canonical form, fixed key order
  std::string canonical_string() const;
  uint64_t content_hash() const;
};

struct BuiltGroup {
  GroupPtr group;
  std::string family;  // metadata line, e.g. which discrete quotient this is
};

GroupPtr build_abelian(uint32_t p, const std::vector<uint32_t> &type);
GroupPtr build_extraspecial(uint32_t p, uint32_t n, const std::string &exponent);
GroupPtr build_semidirect_cyclic(uint32_t n, uint32_t m, uint32_t u);
GroupPtr build_direct_product(const std::vector<GroupPtr> &factors);

// The order-729 class-4 group of norm-one units in 1+m of the quaternion
// algebra over F_3[eps]; closure of {1-eps+i, 1-eps+j}, cross-checked by
// filtering all 2187 elements of 1+m.
GroupPtr build_yo();

// Norm-one quaternions over Z/p^M (i^2 = t, j^2 = p), optionally modulo the
// k-th term of the lower central series.  The precision-M truncation is the
// discrete quotient G/G_{2M}.
GroupPtr build_sn_delta(uint32_t p, uint32_t t, uint32_t M,
                        std::optional<uint32_t> k);

// Preimage of the upper unitriangular mod-p subgroup inside SL2(Z/p^M).
GroupPtr build_sl2_triangle(uint32_t p, uint32_t M, std::optional<uint32_t> k);

BuiltGroup build_group(const GroupSpec &spec);

uint32_t smallest_nonresidue(uint32_t p);

// The ambient quaternion algebras, exposed for the ring-level test suites.
QuaternionAlgebra yo_algebra();
QuaternionAlgebra sn_algebra(uint32_t p, uint32_t t, uint32_t M);

class QuaternionAmbient : public Ambient {
 public:
  explicit QuaternionAmbient(QuaternionAlgebra alg) : alg_(std::move(alg)) {}
  uint64_t id() const override { return quat_pack(alg_.one()); }
  uint64_t mul(uint64_t x, uint64_t y) const override {
    return quat_pack(alg_.mul(quat_unpack(x), quat_unpack(y)));
  }
  uint64_t inv(uint64_t x) const override {
    return quat_pack(alg_.inv(quat_unpack(x)));
  }
  const QuaternionAlgebra &algebra() const { return alg_; }
  std::string describe() const override { return "quaternion"; }

 private:
  QuaternionAlgebra alg_;
};

class Mat2Ambient : public Ambient {
 public:
  explicit Mat2Ambient(Mat2Ring ring) : ring_(std::move(ring)) {}
  uint64_t id() const override { return mat2_pack(ring_.identity()); }
  uint64_t mul(uint64_t x, uint64_t y) const override {
    return mat2_pack(ring_.mul(mat2_unpack(x), mat2_unpack(y)));
  }
  uint64_t inv(uint64_t x) const override {
    return mat2_pack(ring_.inv(mat2_unpack(x)));
  }
  const Mat2Ring &ring() const { return ring_; }
  std::string describe() const override { return "mat2"; }

 private:
  Mat2Ring ring_;
};

// Mixed-radix tuples with componentwise addition; used by the abelian and
// extraspecial constructors.  Components are bit-packed into one word.
class TupleAmbient : public Ambient {
 public:
  explicit TupleAmbient(std::vector<uint32_t> radices);
  uint64_t id() const override { return 0; }
  uint64_t mul(uint64_t x, uint64_t y) const override;
  uint64_t inv(uint64_t x) const override;
  uint64_t encode(const std::vector<uint32_t> &digits) const;
  std::vector<uint32_t> decode(uint64_t code) const;
  std::string describe() const override { return "tuple"; }

 protected:
  struct Lane {
    uint32_t offset;
    uint32_t bits;
  };
  uint32_t digit(uint64_t code, size_t i) const {
    return uint32_t(code >> shifts_[i].offset & ((1u << shifts_[i].bits) - 1));
  }
  std::vector<uint32_t> radices_;
  std::vector<Lane> shifts_;
};

// Re-interns an existing GroupTable from a chosen generating set; element
// "codes" are the original indices.
class IndexAmbient : public Ambient {
 public:
  explicit IndexAmbient(GroupPtr g) : g_(std::move(g)) {}
  uint64_t id() const override { return 0; }
  uint64_t mul(uint64_t x, uint64_t y) const override {
    return g_->mul(ElemIdx(x), ElemIdx(y));
  }
  uint64_t inv(uint64_t x) const override { return g_->inv(ElemIdx(x)); }
  const GroupPtr &parent() const { return g_; }
  std::string describe() const override { return "index"; }

 private:
  GroupPtr g_;
};

}  // namespace ilab

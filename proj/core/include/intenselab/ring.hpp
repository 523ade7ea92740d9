/*
 * Exact arithmetic in the finite coefficient rings and quaternion algebras
 * the group constructors are carved from.
 *
 * CoefficientRing covers Z/p^m and the dual numbers F_p[eps] (eps^2 = 0).
 * Elements are canonical residues 0..size-1; all operations are table-driven,
 * since rings here never exceed a few hundred elements but feed millions of
 * multiplications during closure.
 *
 * QuaternionAlgebra is the rank-4 algebra R + Ri + Rj + Rk with i^2 = A,
 * j^2 = B, k = ij = -ji, together with the standard involution
 * bar(a+bi+cj+dk) = a-bi-cj-dk and a distinguished maximal ideal m.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "intenselab/errors.hpp"

namespace ilab {

using RingElem = uint16_t;

enum class RingKind { IntegersModPM, DualNumbers };

class CoefficientRing {
 public:
  // Z/p^m, elements are residues 0..p^m-1.
  static CoefficientRing integers_mod(uint32_t p, uint32_t m);
  // F_p[eps] with eps^2 = 0; index a + p*b encodes a + b*eps.
  static CoefficientRing dual_numbers(uint32_t p);

  RingKind kind() const { return kind_; }
  uint32_t p() const { return p_; }
  uint32_t precision() const { return m_; }  // m for Z/p^m, 1 for dual numbers
  uint32_t size() const { return size_; }

  RingElem zero() const { return 0; }
  RingElem one() const { return one_; }
  RingElem eps() const;  // dual numbers only

  RingElem add(RingElem a, RingElem b) const { return add_[idx(a, b)]; }
  RingElem sub(RingElem a, RingElem b) const { return add_[idx(a, neg_[b])]; }
  RingElem mul(RingElem a, RingElem b) const { return mul_[idx(a, b)]; }
  RingElem neg(RingElem a) const { return neg_[a]; }

  bool is_unit(RingElem a) const { return inv_[a] != kNoInverse; }
  RingElem inv(RingElem a) const;
  RingElem of_int(int64_t v) const;

  // Square root of a unit that is a square; used to seed norm-one quaternions.
  // Returns the root r with r = canonical lift of the smallest root mod p.
  RingElem sqrt_unit(RingElem a) const;

  std::string str(RingElem a) const;

  bool operator==(const CoefficientRing &o) const {
    return kind_ == o.kind_ && p_ == o.p_ && m_ == o.m_;
  }

 private:
  CoefficientRing() = default;
  void build_tables();
  size_t idx(RingElem a, RingElem b) const { return size_t(a) * size_ + b; }

  static constexpr RingElem kNoInverse = std::numeric_limits<RingElem>::max();

  RingKind kind_ = RingKind::IntegersModPM;
  uint32_t p_ = 0, m_ = 0, size_ = 0;
  RingElem one_ = 0;
  std::vector<RingElem> add_, mul_, neg_, inv_;
};

struct Quaternion {
  RingElem a = 0, b = 0, c = 0, d = 0;  // coordinates on 1, i, j, k
  bool operator==(const Quaternion &) const = default;
};

// Packed form used as the interning key during closure.
inline uint64_t quat_pack(const Quaternion &q) {
  return uint64_t(q.a) | uint64_t(q.b) << 16 | uint64_t(q.c) << 32 |
         uint64_t(q.d) << 48;
}
inline Quaternion quat_unpack(uint64_t v) {
  return Quaternion{RingElem(v & 0xffff), RingElem(v >> 16 & 0xffff),
                    RingElem(v >> 32 & 0xffff), RingElem(v >> 48 & 0xffff)};
}

constexpr unsigned kValuationInfinity = std::numeric_limits<unsigned>::max();

class QuaternionAlgebra {
 public:
  // Which maximal ideal the family distinguishes:
  //   JPrincipal: m = Delta*j   (coefficients Z/p^M, i^2 = t, j^2 = p)
  //   IJ:         m = Delta*i + Delta*j  (dual-number coefficients, i^2 = j^2 = eps)
  enum class IdealShape { JPrincipal, IJ };

  QuaternionAlgebra(CoefficientRing ring, RingElem a2, RingElem b2,
                    IdealShape shape);

  const CoefficientRing &ring() const { return ring_; }
  RingElem structure_a() const { return a2_; }
  RingElem structure_b() const { return b2_; }
  IdealShape ideal_shape() const { return shape_; }
  uint64_t size() const { return uint64_t(ring_.size()) * ring_.size() *
                                 ring_.size() * ring_.size(); }
  // Smallest k with m^k = 0 at this precision.
  unsigned ideal_nilpotency() const { return nilpotency_; }

  Quaternion one() const { return Quaternion{ring_.one(), 0, 0, 0}; }
  Quaternion mul(const Quaternion &x, const Quaternion &y) const;
  Quaternion bar(const Quaternion &x) const;
  RingElem norm(const Quaternion &x) const;  // x * bar(x), central
  bool is_unit(const Quaternion &x) const { return ring_.is_unit(norm(x)); }
  Quaternion inv(const Quaternion &x) const;  // units only

  bool in_ideal_power(const Quaternion &x, unsigned k) const;
  // Largest k with x in m^k; kValuationInfinity for x = 0.
  unsigned ideal_valuation(const Quaternion &x) const;

  std::string str(const Quaternion &x) const;

 private:
  CoefficientRing ring_;
  RingElem a2_, b2_;
  IdealShape shape_;
  unsigned nilpotency_;
};

struct Mat2 {
  RingElem a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]
  bool operator==(const Mat2 &) const = default;
};

inline uint64_t mat2_pack(const Mat2 &m) {
  return uint64_t(m.a) | uint64_t(m.b) << 16 | uint64_t(m.c) << 32 |
         uint64_t(m.d) << 48;
}
inline Mat2 mat2_unpack(uint64_t v) {
  return Mat2{RingElem(v & 0xffff), RingElem(v >> 16 & 0xffff),
              RingElem(v >> 32 & 0xffff), RingElem(v >> 48 & 0xffff)};
}

class Mat2Ring {
 public:
  explicit Mat2Ring(CoefficientRing ring) : ring_(std::move(ring)) {}

  const CoefficientRing &ring() const { return ring_; }
  Mat2 identity() const { return Mat2{ring_.one(), 0, 0, ring_.one()}; }
  Mat2 mul(const Mat2 &x, const Mat2 &y) const;
  RingElem det(const Mat2 &x) const;
  Mat2 inv(const Mat2 &x) const;  // det must be a unit

 private:
  CoefficientRing ring_;
};

}  // namespace ilab

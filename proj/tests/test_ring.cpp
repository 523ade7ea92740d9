#include "doctest.h"

#include "intenselab/constructions.hpp"
#include "intenselab/ring.hpp"

using namespace ilab;

namespace {

// ring axioms on all pairs/triples; feasible up to size 81
void check_ring_axioms(const CoefficientRing &R) {
  const uint32_t n = R.size();
  for (uint32_t a = 0; a < n; ++a) {
    RingElem x = RingElem(a);
    CHECK(R.add(x, R.zero()) == x);
    CHECK(R.mul(x, R.one()) == x);
    CHECK(R.add(x, R.neg(x)) == R.zero());
  }
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) {
      RingElem x = RingElem(a), y = RingElem(b);
      CHECK(R.add(x, y) == R.add(y, x));
      CHECK(R.mul(x, y) == R.mul(y, x));
    }
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c) {
        RingElem x = RingElem(a), y = RingElem(b), z = RingElem(c);
        CHECK(R.add(R.add(x, y), z) == R.add(x, R.add(y, z)));
        CHECK(R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z)));
        CHECK(R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z)));
      }
}

}  // namespace

TEST_CASE("ring axioms hold for every coefficient ring of size <= 81") {
  check_ring_axioms(CoefficientRing::integers_mod(2, 1));
  check_ring_axioms(CoefficientRing::integers_mod(2, 4));
  check_ring_axioms(CoefficientRing::integers_mod(3, 3));
  check_ring_axioms(CoefficientRing::integers_mod(5, 2));
  check_ring_axioms(CoefficientRing::integers_mod(7, 2));
  check_ring_axioms(CoefficientRing::integers_mod(79, 1));
  check_ring_axioms(CoefficientRing::dual_numbers(3));
  check_ring_axioms(CoefficientRing::dual_numbers(5));
  check_ring_axioms(CoefficientRing::dual_numbers(7));
}

TEST_CASE("dual numbers square eps to zero") {
  auto R = CoefficientRing::dual_numbers(3);
  CHECK(R.mul(R.eps(), R.eps()) == R.zero());
  CHECK(R.size() == 9);
  // (1 - eps)(1 + eps) = 1
  RingElem a = R.sub(R.one(), R.eps());
  RingElem b = R.add(R.one(), R.eps());
  CHECK(R.mul(a, b) == R.one());
  CHECK(R.inv(a) == b);
}

TEST_CASE("modular square roots used by the norm-one seeds") {
  auto R = CoefficientRing::integers_mod(5, 3);
  for (int64_t v : {1 + 5, 1 - 2 * 5, 1 + 2 * 25, 36}) {
    RingElem r = R.sqrt_unit(R.of_int(v));
    CHECK(R.mul(r, r) == R.of_int(v));
  }
}

TEST_CASE("quaternion defining relations: ij = k and ji = -k") {
  // any algebra; use both families
  for (QuaternionAlgebra alg : {yo_algebra(), sn_algebra(5, 2, 2)}) {
    const auto &R = alg.ring();
    Quaternion i{0, R.one(), 0, 0}, j{0, 0, R.one(), 0};
    Quaternion k{0, 0, 0, R.one()};
    CHECK(alg.mul(i, j) == k);
    Quaternion minus_k{0, 0, 0, R.neg(R.one())};
    CHECK(alg.mul(j, i) == minus_k);
    CHECK(alg.mul(i, i) == Quaternion{alg.structure_a(), 0, 0, 0});
    CHECK(alg.mul(j, j) == Quaternion{alg.structure_b(), 0, 0, 0});
  }
}

TEST_CASE("cube of 1 - eps + i is 1 + eps i") {
  QuaternionAlgebra alg = yo_algebra();
  const auto &R = alg.ring();
  Quaternion a{R.sub(R.one(), R.eps()), R.one(), 0, 0};
  Quaternion a3 = alg.mul(alg.mul(a, a), a);
  CHECK(a3 == Quaternion{R.one(), R.eps(), 0, 0});
}

TEST_CASE("j squared is p in the 5-adic algebra at precision 2") {
  QuaternionAlgebra alg = sn_algebra(5, 2, 2);
  const auto &R = alg.ring();
  Quaternion j{0, 0, R.one(), 0};
  CHECK(alg.mul(j, j) == Quaternion{R.of_int(5), 0, 0, 0});
}

TEST_CASE("bar is an involutive anti-automorphism on the full dual algebra") {
  QuaternionAlgebra alg = yo_algebra();
  const uint32_t n = alg.ring().size();
  std::vector<Quaternion> all;
  all.reserve(n * size_t(n) * n * n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c)
        for (uint32_t d = 0; d < n; ++d)
          all.push_back({RingElem(a), RingElem(b), RingElem(c), RingElem(d)});
  REQUIRE(all.size() == 6561);
  for (const auto &x : all) CHECK(alg.bar(alg.bar(x)) == x);
  size_t bad = 0;
  for (const auto &x : all)
    for (const auto &y : all)
      if (alg.bar(alg.mul(x, y)) != alg.mul(alg.bar(y), alg.bar(x))) ++bad;
  CHECK(bad == 0);
}

TEST_CASE("bar(x) x equals the norm form a^2 - A b^2 - B c^2 + AB d^2") {
  QuaternionAlgebra alg = yo_algebra();
  const auto &R = alg.ring();
  const uint32_t n = R.size();
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c)
        for (uint32_t d = 0; d < n; ++d) {
          Quaternion x{RingElem(a), RingElem(b), RingElem(c), RingElem(d)};
          Quaternion prod = alg.mul(alg.bar(x), x);
          // central: no i, j, k part, and equal to the closed form
          CHECK(prod.b == 0);
          CHECK(prod.c == 0);
          CHECK(prod.d == 0);
          CHECK(prod.a == alg.norm(x));
          CHECK(alg.mul(x, alg.bar(x)).a == prod.a);
        }
}

TEST_CASE("norm-one element of the dual algebra inverts through bar") {
  QuaternionAlgebra alg = yo_algebra();
  const auto &R = alg.ring();
  Quaternion a{R.sub(R.one(), R.eps()), R.one(), 0, 0};
  CHECK(alg.bar(Quaternion{R.one(), 0, 0, 0}) == Quaternion{R.one(), 0, 0, 0});
  Quaternion abar = alg.bar(a);
  CHECK(abar == Quaternion{R.sub(R.one(), R.eps()), R.neg(R.one()), 0, 0});
  CHECK(alg.mul(a, abar) == alg.one());
}

TEST_CASE("ideal valuation in the 5-adic algebra") {
  QuaternionAlgebra alg = sn_algebra(5, 2, 2);
  const auto &R = alg.ring();
  CHECK(alg.ideal_valuation(alg.one()) == 0);
  CHECK(alg.ideal_valuation(Quaternion{0, 0, R.one(), 0}) == 1);  // j
  CHECK(alg.ideal_valuation(Quaternion{R.of_int(5), 0, 0, 0}) == 2);  // p
  CHECK(alg.ideal_valuation(Quaternion{}) == kValuationInfinity);
}

TEST_CASE("successive ideal quotients have p^2 elements, counted directly") {
  QuaternionAlgebra alg = sn_algebra(5, 2, 2);
  const uint32_t n = alg.ring().size();
  const unsigned top = alg.ideal_nilpotency();
  std::vector<uint64_t> count(top + 1, 0);  // |m^k|
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c)
        for (uint32_t d = 0; d < n; ++d) {
          Quaternion x{RingElem(a), RingElem(b), RingElem(c), RingElem(d)};
          for (unsigned k = 0; k <= top; ++k)
            if (alg.in_ideal_power(x, k)) ++count[k];
        }
  for (unsigned k = 1; k + 1 <= top; ++k) CHECK(count[k] == 25 * count[k + 1]);
  CHECK(count[top] == 1);
}

TEST_CASE("2x2 matrices: determinant multiplicative, identity neutral") {
  Mat2Ring ring(CoefficientRing::integers_mod(5, 1));
  const auto &R = ring.ring();
  std::vector<Mat2> all;
  for (uint32_t a = 0; a < 5; ++a)
    for (uint32_t b = 0; b < 5; ++b)
      for (uint32_t c = 0; c < 5; ++c)
        for (uint32_t d = 0; d < 5; ++d)
          all.push_back({RingElem(a), RingElem(b), RingElem(c), RingElem(d)});
  for (const auto &x : all) {
    CHECK(ring.mul(ring.identity(), x) == x);
    CHECK(ring.mul(x, ring.identity()) == x);
  }
  for (const auto &x : all)
    for (const auto &y : all)
      CHECK(ring.det(ring.mul(x, y)) == R.mul(ring.det(x), ring.det(y)));
}

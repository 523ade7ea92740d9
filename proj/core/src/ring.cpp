#include "intenselab/ring.hpp"

#include <sstream>

namespace ilab {

namespace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

CoefficientRing CoefficientRing::integers_mod(uint32_t p, uint32_t m) {
  if (!is_prime_u32(p) || m < 1) throw BadInput("integers_mod: need prime p, m >= 1");
  uint64_t size = 1;
  for (uint32_t i = 0; i < m; ++i) {
    size *= p;
    if (size > 60000) throw BadInput("integers_mod: ring too large");
  }
  CoefficientRing r;
  r.kind_ = RingKind::IntegersModPM;
  r.p_ = p;
  r.m_ = m;
  r.size_ = uint32_t(size);
  r.one_ = 1;
  r.build_tables();
  return r;
}

CoefficientRing CoefficientRing::dual_numbers(uint32_t p) {
  if (!is_prime_u32(p)) throw BadInput("dual_numbers: need prime p");
  if (p > 240) throw BadInput("dual_numbers: ring too large");
  CoefficientRing r;
  r.kind_ = RingKind::DualNumbers;
  r.p_ = p;
  r.m_ = 1;
  r.size_ = p * p;
  r.one_ = 1;
  r.build_tables();
  return r;
}

void CoefficientRing::build_tables() {
  const uint32_t n = size_;
  add_.assign(size_t(n) * n, 0);
  mul_.assign(size_t(n) * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, kNoInverse);

  if (kind_ == RingKind::IntegersModPM) {
    for (uint32_t a = 0; a < n; ++a) {
      neg_[a] = RingElem((n - a) % n);
      for (uint32_t b = 0; b < n; ++b) {
        add_[idx(RingElem(a), RingElem(b))] = RingElem((a + b) % n);
        mul_[idx(RingElem(a), RingElem(b))] = RingElem(uint64_t(a) * b % n);
      }
    }
  } else {
    // index a0 + p*a1  <->  a0 + a1*eps
    const uint32_t p = p_;
    auto enc = [p](uint32_t a0, uint32_t a1) { return RingElem(a0 + p * a1); };
    for (uint32_t a0 = 0; a0 < p; ++a0)
      for (uint32_t a1 = 0; a1 < p; ++a1) {
        RingElem a = enc(a0, a1);
        neg_[a] = enc((p - a0) % p, (p - a1) % p);
        for (uint32_t b0 = 0; b0 < p; ++b0)
          for (uint32_t b1 = 0; b1 < p; ++b1) {
            RingElem b = enc(b0, b1);
            add_[idx(a, b)] = enc((a0 + b0) % p, (a1 + b1) % p);
            // (a0 + a1 e)(b0 + b1 e) = a0 b0 + (a0 b1 + a1 b0) e
            mul_[idx(a, b)] = enc(a0 * b0 % p, (a0 * b1 + a1 * b0) % p);
          }
      }
  }

  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      if (mul_[idx(RingElem(a), RingElem(b))] == one_) inv_[a] = RingElem(b);
}

RingElem CoefficientRing::eps() const {
  if (kind_ != RingKind::DualNumbers) throw BadInput("eps: not a dual-number ring");
  return RingElem(p_);
}

RingElem CoefficientRing::inv(RingElem a) const {
  RingElem r = inv_[a];
  if (r == kNoInverse) throw BadInput("inv: element " + str(a) + " is not a unit");
  return r;
}

RingElem CoefficientRing::of_int(int64_t v) const {
  uint32_t modulus = kind_ == RingKind::IntegersModPM ? size_ : p_;
  int64_t r = v % int64_t(modulus);
  if (r < 0) r += modulus;
  return RingElem(r);
}

RingElem CoefficientRing::sqrt_unit(RingElem a) const {
  if (!is_unit(a)) throw BadInput("sqrt_unit: not a unit");
  // Root mod p by scan (p is small), then lift one precision step at a time.
  if (kind_ == RingKind::DualNumbers) {
    for (uint32_t r = 0; r < size_; ++r)
      if (mul(RingElem(r), RingElem(r)) == a) return RingElem(r);
    throw BadInput("sqrt_unit: not a square");
  }
  uint32_t r0 = p_;
  for (uint32_t r = 0; r < p_; ++r)
    if (uint64_t(r) * r % p_ == a % p_) {
      r0 = r;
      break;
    }
  if (r0 == p_) throw BadInput("sqrt_unit: not a square mod p");
  // Newton: r <- r - (r^2 - a) / (2r), exact in Z/p^m for odd p.
  RingElem r = RingElem(r0);
  RingElem two_inv = inv(of_int(2));
  for (uint32_t step = 0; step < m_ + 2; ++step) {
    RingElem err = sub(mul(r, r), a);
    r = sub(r, mul(err, mul(two_inv, inv(r))));
  }
  if (mul(r, r) != a) throw BadInput("sqrt_unit: lift failed");
  return r;
}

std::string CoefficientRing::str(RingElem a) const {
  if (kind_ == RingKind::IntegersModPM) return std::to_string(a);
  uint32_t a0 = a % p_, a1 = a / p_;
  std::ostringstream os;
  os << a0;
  if (a1) os << "+" << a1 << "e";
  return os.str();
}

QuaternionAlgebra::QuaternionAlgebra(CoefficientRing ring, RingElem a2,
                                     RingElem b2, IdealShape shape)
    : ring_(std::move(ring)), a2_(a2), b2_(b2), shape_(shape) {
  if (shape_ == IdealShape::JPrincipal) {
    if (ring_.kind() != RingKind::IntegersModPM)
      throw BadInput("JPrincipal ideal needs Z/p^M coefficients");
    nilpotency_ = 2 * ring_.precision();
  } else {
    if (ring_.kind() != RingKind::DualNumbers)
      throw BadInput("IJ ideal needs dual-number coefficients");
    nilpotency_ = 5;
  }
}

Quaternion QuaternionAlgebra::mul(const Quaternion &x, const Quaternion &y) const {
  const CoefficientRing &R = ring_;
  const RingElem A = a2_, B = b2_;
  // (a+bi+cj+dk)(a'+b'i+c'j+d'k) with i^2=A, j^2=B, ij=k=-ji, k^2=-AB,
  // ik=Aj, ki=-Aj, jk=-Bi, kj=Bi.
  RingElem AB = R.mul(A, B);
  auto M = [&R](RingElem u, RingElem v) { return R.mul(u, v); };
  RingElem a = M(x.a, y.a);
  a = R.add(a, M(A, M(x.b, y.b)));
  a = R.add(a, M(B, M(x.c, y.c)));
  a = R.sub(a, M(AB, M(x.d, y.d)));

  RingElem b = M(x.a, y.b);
  b = R.add(b, M(x.b, y.a));
  b = R.sub(b, M(B, M(x.c, y.d)));
  b = R.add(b, M(B, M(x.d, y.c)));

  RingElem c = M(x.a, y.c);
  c = R.add(c, M(x.c, y.a));
  c = R.add(c, M(A, M(x.b, y.d)));
  c = R.sub(c, M(A, M(x.d, y.b)));

  RingElem d = M(x.a, y.d);
  d = R.add(d, M(x.d, y.a));
  d = R.add(d, M(x.b, y.c));
  d = R.sub(d, M(x.c, y.b));

  return Quaternion{a, b, c, d};
}

Quaternion QuaternionAlgebra::bar(const Quaternion &x) const {
  return Quaternion{x.a, ring_.neg(x.b), ring_.neg(x.c), ring_.neg(x.d)};
}

RingElem QuaternionAlgebra::norm(const Quaternion &x) const {
  // a^2 - A b^2 - B c^2 + AB d^2
  const CoefficientRing &R = ring_;
  RingElem n = R.mul(x.a, x.a);
  n = R.sub(n, R.mul(a2_, R.mul(x.b, x.b)));
  n = R.sub(n, R.mul(b2_, R.mul(x.c, x.c)));
  n = R.add(n, R.mul(R.mul(a2_, b2_), R.mul(x.d, x.d)));
  return n;
}

Quaternion QuaternionAlgebra::inv(const Quaternion &x) const {
  RingElem n = norm(x);
  if (!ring_.is_unit(n)) throw BadInput("quaternion inverse: norm is not a unit");
  RingElem ni = ring_.inv(n);
  Quaternion xb = bar(x);
  return Quaternion{ring_.mul(xb.a, ni), ring_.mul(xb.b, ni),
                    ring_.mul(xb.c, ni), ring_.mul(xb.d, ni)};
}

bool QuaternionAlgebra::in_ideal_power(const Quaternion &x, unsigned k) const {
  if (k == 0) return true;
  if (k >= nilpotency_) return x == Quaternion{};
  if (shape_ == IdealShape::JPrincipal) {
    // m^{2s} = p^s Delta, m^{2s+1} = p^s m, with m = {a,b in pR}.
    uint32_t p = ring_.p();
    auto divisible = [&](RingElem v, unsigned s) {
      uint32_t q = 1;
      for (unsigned i = 0; i < s; ++i) q *= p;
      return v % q == 0;
    };
    unsigned s = k / 2;
    if (k % 2 == 0)
      return divisible(x.a, s) && divisible(x.b, s) && divisible(x.c, s) &&
             divisible(x.d, s);
    return divisible(x.a, s + 1) && divisible(x.b, s + 1) && divisible(x.c, s) &&
           divisible(x.d, s);
  }
  // IJ shape over F_p[eps]: m   = eps R + Ri + Rj + Rk
  //                         m^2 = eps R + eps Ri + eps Rj + Rk
  //                         m^3 =         eps Ri + eps Rj + eps Rk
  //                         m^4 =                           eps Rk
  uint32_t p = ring_.p();
  auto in_epsR = [p](RingElem v) { return v % p == 0; };
  switch (k) {
    case 1: return in_epsR(x.a);
    case 2: return in_epsR(x.a) && in_epsR(x.b) && in_epsR(x.c);
    case 3: return x.a == 0 && in_epsR(x.b) && in_epsR(x.c) && in_epsR(x.d);
    case 4: return x.a == 0 && x.b == 0 && x.c == 0 && in_epsR(x.d);
    default: return x == Quaternion{};
  }
}

unsigned QuaternionAlgebra::ideal_valuation(const Quaternion &x) const {
  if (x == Quaternion{}) return kValuationInfinity;
  unsigned v = 0;
  while (v + 1 < nilpotency_ && in_ideal_power(x, v + 1)) ++v;
  return v;
}

std::string QuaternionAlgebra::str(const Quaternion &x) const {
  std::ostringstream os;
  os << ring_.str(x.a) << " + " << ring_.str(x.b) << "i + " << ring_.str(x.c)
     << "j + " << ring_.str(x.d) << "k";
  return os.str();
}

Mat2 Mat2Ring::mul(const Mat2 &x, const Mat2 &y) const {
  const CoefficientRing &R = ring_;
  return Mat2{R.add(R.mul(x.a, y.a), R.mul(x.b, y.c)),
              R.add(R.mul(x.a, y.b), R.mul(x.b, y.d)),
              R.add(R.mul(x.c, y.a), R.mul(x.d, y.c)),
              R.add(R.mul(x.c, y.b), R.mul(x.d, y.d))};
}

RingElem Mat2Ring::det(const Mat2 &x) const {
  return ring_.sub(ring_.mul(x.a, x.d), ring_.mul(x.b, x.c));
}

Mat2 Mat2Ring::inv(const Mat2 &x) const {
  RingElem di = ring_.inv(det(x));
  return Mat2{ring_.mul(x.d, di), ring_.mul(ring_.neg(x.b), di),
              ring_.mul(ring_.neg(x.c), di), ring_.mul(x.a, di)};
}

}  // namespace ilab

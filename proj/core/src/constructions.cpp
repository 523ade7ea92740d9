#include "intenselab/constructions.hpp"

#include <algorithm>
#include <unordered_set>

#include "intenselab/series.hpp"

namespace ilab {

namespace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

GroupPtr quotient_by_lcs_term(GroupPtr g, uint32_t k) {
  auto lcs = lower_central_series(*g);
  const Subgroup &N = k - 1 < lcs.size() ? lcs[k - 1] : lcs.back();
  auto q = GroupTable::quotient(g, N).group;
  q->validate();
  return q;
}

}  // namespace

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::Abelian: return "abelian";
    case GroupKind::Extraspecial: return "extraspecial";
    case GroupKind::SemidirectCyclic: return "semidirect_cyclic";
    case GroupKind::DirectProduct: return "direct_product";
    case GroupKind::Yo: return "yo";
    case GroupKind::SnDelta: return "sn_delta";
    case GroupKind::Sl2Triangle: return "sl2_triangle";
  }
  return "?";
}

uint32_t smallest_nonresidue(uint32_t p) {
  std::vector<char> residue(p, 0);
  for (uint32_t x = 1; x < p; ++x) residue[uint64_t(x) * x % p] = 1;
  for (uint32_t t = 2; t < p; ++t)
    if (!residue[t]) return t;
  throw BadInput("smallest_nonresidue: none below p");
}

TupleAmbient::TupleAmbient(std::vector<uint32_t> radices)
    : radices_(std::move(radices)) {
  shifts_.reserve(radices_.size());
  uint32_t offset = 0;
  for (uint32_t r : radices_) {
    if (r < 1 || r > 0xffff) throw BadInput("TupleAmbient: radix out of range");
    uint32_t bits = 1;
    while ((1u << bits) < r) ++bits;
    shifts_.push_back({offset, bits});
    offset += bits;
  }
  if (offset > 64) throw BadInput("TupleAmbient: too many components");
}

uint64_t TupleAmbient::encode(const std::vector<uint32_t> &digits) const {
  uint64_t code = 0;
  for (size_t i = 0; i < radices_.size(); ++i)
    code |= uint64_t(digits[i] % radices_[i]) << shifts_[i].offset;
  return code;
}

std::vector<uint32_t> TupleAmbient::decode(uint64_t code) const {
  std::vector<uint32_t> d(radices_.size());
  for (size_t i = 0; i < radices_.size(); ++i) d[i] = digit(code, i);
  return d;
}

uint64_t TupleAmbient::mul(uint64_t x, uint64_t y) const {
  uint64_t code = 0;
  for (size_t i = 0; i < radices_.size(); ++i) {
    uint32_t s = (digit(x, i) + digit(y, i)) % radices_[i];
    code |= uint64_t(s) << shifts_[i].offset;
  }
  return code;
}

uint64_t TupleAmbient::inv(uint64_t x) const {
  uint64_t code = 0;
  for (size_t i = 0; i < radices_.size(); ++i) {
    uint32_t s = (radices_[i] - digit(x, i)) % radices_[i];
    code |= uint64_t(s) << shifts_[i].offset;
  }
  return code;
}

namespace {

// G(Z, Y, X, theta): tuples (z, y_1..y_n, x_1..x_n) over F_p with
// (z,y,x)(z',y',x') = (z + z' + <x, y'>, y + y', x + x').
class ExtraspecialAmbient : public TupleAmbient {
 public:
  ExtraspecialAmbient(uint32_t p, uint32_t n)
      : TupleAmbient(std::vector<uint32_t>(2 * n + 1, p)), p_(p), n_(n) {}

  uint64_t mul(uint64_t x, uint64_t y) const override {
    auto a = decode(x), b = decode(y);
    std::vector<uint32_t> c(2 * n_ + 1);
    uint32_t dot = 0;
    for (uint32_t i = 0; i < n_; ++i)
      dot = (dot + a[1 + n_ + i] * b[1 + i]) % p_;  // theta(x_a, y_b)
    c[0] = (a[0] + b[0] + dot) % p_;
    for (uint32_t i = 1; i < 2 * n_ + 1; ++i) c[i] = (a[i] + b[i]) % p_;
    return encode(c);
  }

  uint64_t inv(uint64_t x) const override {
    auto a = decode(x);
    std::vector<uint32_t> c(2 * n_ + 1);
    uint32_t dot = 0;
    for (uint32_t i = 0; i < n_; ++i)
      dot = (dot + a[1 + n_ + i] * a[1 + i]) % p_;
    c[0] = ((p_ - a[0]) + dot) % p_;
    for (uint32_t i = 1; i < 2 * n_ + 1; ++i) c[i] = (p_ - a[i]) % p_;
    return encode(c);
  }

 private:
  uint32_t p_, n_;
};

class SemidirectAmbient : public Ambient {
 public:
  SemidirectAmbient(uint32_t n, uint32_t m, uint32_t u) : n_(n), m_(m) {
    upow_.resize(m_);
    uint64_t acc = 1 % n_;
    for (uint32_t b = 0; b < m_; ++b) {
      upow_[b] = uint32_t(acc);
      acc = acc * u % n_;
    }
    if (acc != 1 % n_) throw BadInput("semidirect_cyclic: u^m != 1 mod n");
  }

  uint64_t id() const override { return 0; }
  uint64_t mul(uint64_t x, uint64_t y) const override {
    uint32_t a = uint32_t(x & 0xffffffff), b = uint32_t(x >> 32);
    uint32_t a2 = uint32_t(y & 0xffffffff), b2 = uint32_t(y >> 32);
    uint32_t a3 = uint32_t((a + uint64_t(upow_[b]) * a2) % n_);
    uint32_t b3 = (b + b2) % m_;
    return uint64_t(a3) | uint64_t(b3) << 32;
  }
  uint64_t inv(uint64_t x) const override {
    uint32_t a = uint32_t(x & 0xffffffff), b = uint32_t(x >> 32);
    uint32_t bi = (m_ - b) % m_;
    uint32_t ai = uint32_t((n_ - uint64_t(upow_[bi]) * a % n_) % n_);
    return uint64_t(ai) | uint64_t(bi) << 32;
  }
  uint64_t encode(uint32_t a, uint32_t b) const {
    return uint64_t(a % n_) | uint64_t(b % m_) << 32;
  }
  std::string describe() const override { return "semidirect"; }

 private:
  uint32_t n_, m_;
  std::vector<uint32_t> upow_;
};

class DirectProductAmbient : public Ambient {
 public:
  DirectProductAmbient(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  uint64_t id() const override { return 0; }
  uint64_t mul(uint64_t x, uint64_t y) const override {
    uint32_t xa = uint32_t(x & 0xffffffff), xb = uint32_t(x >> 32);
    uint32_t ya = uint32_t(y & 0xffffffff), yb = uint32_t(y >> 32);
    return uint64_t(a_->mul(xa, ya)) | uint64_t(b_->mul(xb, yb)) << 32;
  }
  uint64_t inv(uint64_t x) const override {
    uint32_t xa = uint32_t(x & 0xffffffff), xb = uint32_t(x >> 32);
    return uint64_t(a_->inv(xa)) | uint64_t(b_->inv(xb)) << 32;
  }
  std::string describe() const override { return "direct_product"; }

 private:
  GroupPtr a_, b_;
};

}  // namespace

GroupPtr build_abelian(uint32_t p, const std::vector<uint32_t> &type) {
  if (!is_prime_u32(p)) throw BadInput("build_abelian: p must be prime");
  if (type.empty()) throw BadInput("build_abelian: empty type");
  for (size_t i = 0; i < type.size(); ++i) {
    if (type[i] < 1) throw BadInput("build_abelian: exponents must be >= 1");
    if (i && type[i] > type[i - 1])
      throw BadInput("build_abelian: type must be non-increasing");
  }
  std::vector<uint32_t> radices;
  for (uint32_t a : type) {
    uint64_t r = pow_u64(p, a);
    if (r > 0xffff) throw BadInput("build_abelian: component too large");
    radices.push_back(uint32_t(r));
  }
  auto amb = std::make_shared<TupleAmbient>(radices);
  std::vector<uint64_t> seeds;
  for (size_t i = 0; i < radices.size(); ++i) {
    std::vector<uint32_t> digits(radices.size(), 0);
    digits[i] = 1;
    seeds.push_back(amb->encode(digits));
  }
  auto g = GroupTable::closure(amb, seeds);
  g->validate();
  return g;
}

GroupPtr build_extraspecial(uint32_t p, uint32_t n, const std::string &exponent) {
  if (!is_prime_u32(p)) throw BadInput("build_extraspecial: p must be prime");
  if (n < 1) throw BadInput("build_extraspecial: n >= 1");
  if (exponent == "p2") {
    if (n != 1) throw BadInput("build_extraspecial: exponent p^2 needs n = 1");
    if (p == 2) throw BadInput("build_extraspecial: exponent p^2 needs odd p");
    return build_semidirect_cyclic(p * p, p, 1 + p);
  }
  if (exponent != "p") throw BadInput("build_extraspecial: exponent must be p or p2");
  auto amb = std::make_shared<ExtraspecialAmbient>(p, n);
  std::vector<uint64_t> seeds;
  for (uint32_t i = 0; i < 2 * n; ++i) {
    std::vector<uint32_t> digits(2 * n + 1, 0);
    digits[1 + i] = 1;
    seeds.push_back(amb->encode(digits));
  }
  auto g = GroupTable::closure(amb, seeds);
  g->validate();
  if (g->order() != pow_u64(p, 2 * n + 1))
    throw ConsistencyError("build_extraspecial: wrong order");
  return g;
}

GroupPtr build_semidirect_cyclic(uint32_t n, uint32_t m, uint32_t u) {
  if (n < 1 || m < 1) throw BadInput("build_semidirect_cyclic: n, m >= 1");
  if (m > 0xffff) throw BadInput("build_semidirect_cyclic: m too large");
  auto amb = std::make_shared<SemidirectAmbient>(n, m, u % n);
  std::vector<uint64_t> seeds{amb->encode(1, 0), amb->encode(0, 1)};
  auto g = GroupTable::closure(amb, seeds);
  g->validate();
  if (g->order() != uint64_t(n) * m)
    throw ConsistencyError("build_semidirect_cyclic: wrong order");
  return g;
}

GroupPtr build_direct_product(const std::vector<GroupPtr> &factors) {
  if (factors.empty()) throw BadInput("build_direct_product: no factors");
  GroupPtr acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) {
    auto amb = std::make_shared<DirectProductAmbient>(acc, factors[i]);
    std::vector<uint64_t> seeds;
    for (ElemIdx g : acc->generators()) seeds.push_back(uint64_t(g));
    for (ElemIdx g : factors[i]->generators())
      seeds.push_back(uint64_t(g) << 32);
    acc = GroupTable::closure(amb, seeds);
  }
  acc->validate();
  return acc;
}

QuaternionAlgebra yo_algebra() {
  CoefficientRing R = CoefficientRing::dual_numbers(3);
  return QuaternionAlgebra(R, R.eps(), R.eps(), QuaternionAlgebra::IdealShape::IJ);
}

QuaternionAlgebra sn_algebra(uint32_t p, uint32_t t, uint32_t M) {
  CoefficientRing R = CoefficientRing::integers_mod(p, M);
  return QuaternionAlgebra(R, R.of_int(t), R.of_int(p),
                           QuaternionAlgebra::IdealShape::JPrincipal);
}

namespace {

// All x in 1+m with x bar(x) = 1, as packed codes.
std::unordered_set<uint64_t> norm_one_filter(const QuaternionAlgebra &alg) {
  const CoefficientRing &R = alg.ring();
  std::unordered_set<uint64_t> out;
  Quaternion one = alg.one();
  for (uint32_t a = 0; a < R.size(); ++a)
    for (uint32_t b = 0; b < R.size(); ++b)
      for (uint32_t c = 0; c < R.size(); ++c)
        for (uint32_t d = 0; d < R.size(); ++d) {
          Quaternion x{RingElem(a), RingElem(b), RingElem(c), RingElem(d)};
          Quaternion xm1{R.sub(x.a, one.a), x.b, x.c, x.d};
          if (!alg.in_ideal_power(xm1, 1)) continue;
          if (alg.norm(x) == R.one()) out.insert(quat_pack(x));
        }
  return out;
}

}  // namespace

GroupPtr build_yo() {
  QuaternionAlgebra alg = yo_algebra();
  const CoefficientRing &R = alg.ring();
  RingElem one_minus_eps = R.sub(R.one(), R.eps());
  Quaternion a{one_minus_eps, R.one(), 0, 0};  // 1 - eps + i
  Quaternion b{one_minus_eps, 0, R.one(), 0};  // 1 - eps + j
  auto amb = std::make_shared<QuaternionAmbient>(alg);
  auto g = GroupTable::closure(amb, {quat_pack(a), quat_pack(b)});
  g->validate();

  auto filter = norm_one_filter(alg);
  if (filter.size() != g->order())
    throw ConsistencyError("build_yo: closure and filter sizes differ");
  for (uint64_t code : g->codes())
    if (!filter.count(code))
      throw ConsistencyError("build_yo: closure element fails the filter");
  return g;
}

GroupPtr build_sn_delta(uint32_t p, uint32_t t, uint32_t M,
                        std::optional<uint32_t> k) {
  if (!is_prime_u32(p) || p <= 3) throw BadInput("build_sn_delta: need prime p > 3");
  if (M < 2) throw BadInput("build_sn_delta: need M >= 2");
  if (t == 0) t = smallest_nonresidue(p);
  {
    std::vector<char> residue(p, 0);
    for (uint32_t x = 1; x < p; ++x) residue[uint64_t(x) * x % p] = 1;
    if (t % p == 0 || residue[t % p])
      throw BadInput("build_sn_delta: t must be a non-residue mod p");
  }
  if (k && (*k < 1 || *k > 2 * M)) throw BadInput("build_sn_delta: need 1 <= k <= 2M");

  QuaternionAlgebra alg = sn_algebra(p, t, M);
  const CoefficientRing &R = alg.ring();

  // Norm-one seeds: sqrt(1+p) + j, sqrt(1-tp) + k, and the i-direction lift
  // sqrt(1+tp^2) + p*i from 1+m^2.
  Quaternion sj{R.sqrt_unit(R.of_int(1 + int64_t(p))), 0, R.one(), 0};
  Quaternion sk{R.sqrt_unit(R.of_int(1 - int64_t(t) * p)), 0, 0, R.one()};
  Quaternion si{R.sqrt_unit(R.of_int(1 + int64_t(t) * p * p)), R.of_int(p), 0, 0};
  for (const Quaternion &s : {sj, sk, si})
    if (alg.norm(s) != R.one())
      throw ConsistencyError("build_sn_delta: seed is not norm-one");

  auto amb = std::make_shared<QuaternionAmbient>(alg);
  auto g = GroupTable::closure(amb, {quat_pack(sj), quat_pack(sk), quat_pack(si)});
  g->validate();

  uint64_t expected = pow_u64(p, 3 * M - 1);
  if (g->order() != expected)
    throw ConsistencyError("build_sn_delta: closure misses the expected order");

  uint64_t one_plus_m = pow_u64(p, 4 * M - 2);
  if (one_plus_m <= 1'000'000) {
    auto filter = norm_one_filter(alg);
    if (filter.size() != g->order())
      throw ConsistencyError("build_sn_delta: closure and filter sizes differ");
    for (uint64_t code : g->codes())
      if (!filter.count(code))
        throw ConsistencyError("build_sn_delta: closure element fails the filter");
  } else {
    // membership check element by element: x in 1+m and norm 1
    Quaternion one = alg.one();
    for (uint64_t code : g->codes()) {
      Quaternion x = quat_unpack(code);
      Quaternion xm1{R.sub(x.a, one.a), x.b, x.c, x.d};
      if (!alg.in_ideal_power(xm1, 1) || alg.norm(x) != R.one())
        throw ConsistencyError("build_sn_delta: closure element fails membership");
    }
  }

  if (k) return quotient_by_lcs_term(g, *k);
  return g;
}

GroupPtr build_sl2_triangle(uint32_t p, uint32_t M, std::optional<uint32_t> k) {
  if (!is_prime_u32(p) || p <= 3)
    throw BadInput("build_sl2_triangle: need prime p > 3");
  if (M < 2) throw BadInput("build_sl2_triangle: need M >= 2");

  CoefficientRing R = CoefficientRing::integers_mod(p, M);
  Mat2Ring ring(R);
  Mat2 B1{R.one(), R.one(), 0, R.one()};
  Mat2 Cp{R.one(), 0, R.of_int(p), R.one()};
  RingElem up = R.of_int(1 + int64_t(p));
  Mat2 D{R.inv(up), 0, 0, up};

  auto amb = std::make_shared<Mat2Ambient>(ring);
  auto g = GroupTable::closure(amb, {mat2_pack(B1), mat2_pack(Cp), mat2_pack(D)});
  g->validate();

  // every element: det 1, unitriangular mod p
  for (uint64_t code : g->codes()) {
    Mat2 x = mat2_unpack(code);
    if (ring.det(x) != R.one() || x.a % p != 1 || x.d % p != 1 || x.c % p != 0)
      throw ConsistencyError("build_sl2_triangle: element fails membership");
  }
  if (g->order() != pow_u64(p, 3 * M - 2))
    throw ConsistencyError("build_sl2_triangle: order mismatch against the filter oracle");

  if (k) return quotient_by_lcs_term(g, *k);
  return g;
}

// --- GroupSpec --------------------------------------------------------------

GroupSpec GroupSpec::from_json(const nlohmann::json &j) {
  static const std::vector<std::string> allowed{
      "kind", "p", "type", "n", "exponent", "M", "k", "t", "u", "m", "factors"};
  if (!j.is_object()) throw BadInput("GroupSpec: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw BadInput("GroupSpec: unknown key \"" + it.key() + "\"");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw BadInput("GroupSpec: missing kind");

  GroupSpec s;
  std::string kind = j["kind"].get<std::string>();
  auto geti = [&](const char *key) -> uint32_t {
    if (!j.contains(key) || !j[key].is_number_unsigned())
      throw BadInput(std::string("GroupSpec: missing or bad \"") + key + "\"");
    return j[key].get<uint32_t>();
  };
  if (kind == "abelian") {
    s.kind = GroupKind::Abelian;
    s.p = geti("p");
    if (!j.contains("type") || !j["type"].is_array())
      throw BadInput("GroupSpec: abelian needs type");
    for (const auto &v : j["type"]) s.type.push_back(v.get<uint32_t>());
  } else if (kind == "extraspecial") {
    s.kind = GroupKind::Extraspecial;
    s.p = geti("p");
    s.n = geti("n");
    s.exponent = j.contains("exponent") ? j["exponent"].get<std::string>() : "p";
    if (s.exponent != "p" && s.exponent != "p2")
      throw BadInput("GroupSpec: exponent must be \"p\" or \"p2\"");
  } else if (kind == "semidirect_cyclic") {
    s.kind = GroupKind::SemidirectCyclic;
    s.n = geti("n");
    s.m = geti("m");
    s.u = geti("u");
  } else if (kind == "direct_product") {
    s.kind = GroupKind::DirectProduct;
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
      throw BadInput("GroupSpec: direct_product needs factors");
    for (const auto &f : j["factors"]) s.factors.push_back(from_json(f));
  } else if (kind == "yo") {
    s.kind = GroupKind::Yo;
  } else if (kind == "sn_delta") {
    s.kind = GroupKind::SnDelta;
    s.p = geti("p");
    s.M = geti("M");
    if (j.contains("t") && !j["t"].is_null()) s.t = j["t"].get<uint32_t>();
    if (j.contains("k") && !j["k"].is_null()) s.k = j["k"].get<uint32_t>();
  } else if (kind == "sl2_triangle") {
    s.kind = GroupKind::Sl2Triangle;
    s.p = geti("p");
    s.M = geti("M");
    if (j.contains("k") && !j["k"].is_null()) s.k = j["k"].get<uint32_t>();
  } else {
    throw BadInput("GroupSpec: unknown kind \"" + kind + "\"");
  }
  return s;
}

nlohmann::ordered_json GroupSpec::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  switch (kind) {
    case GroupKind::Abelian:
      j["p"] = p;
      j["type"] = type;
      break;
    case GroupKind::Extraspecial:
      j["p"] = p;
      j["n"] = n;
      j["exponent"] = exponent.empty() ? "p" : exponent;
      break;
    case GroupKind::SemidirectCyclic:
      j["n"] = n;
      j["m"] = m;
      j["u"] = u;
      break;
    case GroupKind::DirectProduct: {
      nlohmann::ordered_json fs = nlohmann::ordered_json::array();
      for (const auto &f : factors) fs.push_back(f.to_json());
      j["factors"] = fs;
      break;
    }
    case GroupKind::Yo:
      break;
    case GroupKind::SnDelta:
      j["p"] = p;
      j["t"] = t ? t : smallest_nonresidue(p);
      j["M"] = M;
      j["k"] = k ? nlohmann::ordered_json(*k) : nlohmann::ordered_json(nullptr);
      break;
    case GroupKind::Sl2Triangle:
      j["p"] = p;
      j["M"] = M;
      j["k"] = k ? nlohmann::ordered_json(*k) : nlohmann::ordered_json(nullptr);
      break;
  }
  return j;
}

std::string GroupSpec::canonical_string() const { return to_json().dump(); }

uint64_t GroupSpec::content_hash() const {
  // FNV-1a over the canonical form
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : canonical_string()) {
    h ^= uint8_t(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

BuiltGroup build_group(const GroupSpec &spec) {
  BuiltGroup out;
  switch (spec.kind) {
    case GroupKind::Abelian:
      out.group = build_abelian(spec.p, spec.type);
      out.family = "abelian";
      break;
    case GroupKind::Extraspecial:
      out.group = build_extraspecial(spec.p, spec.n, spec.exponent.empty() ? "p" : spec.exponent);
      out.family = "extraspecial";
      break;
    case GroupKind::SemidirectCyclic:
      out.group = build_semidirect_cyclic(spec.n, spec.m, spec.u);
      out.family = "semidirect_cyclic";
      break;
    case GroupKind::DirectProduct: {
      std::vector<GroupPtr> fs;
      for (const auto &f : spec.factors) fs.push_back(build_group(f).group);
      out.group = build_direct_product(fs);
      out.family = "direct_product";
      break;
    }
    case GroupKind::Yo:
      out.group = build_yo();
      out.family = "yo";
      break;
    case GroupKind::SnDelta: {
      uint32_t t = spec.t ? spec.t : smallest_nonresidue(spec.p);
      out.group = build_sn_delta(spec.p, t, spec.M, spec.k);
      // the precision-M truncation is the discrete quotient G/G_{2M}
      out.family = "sn_delta p=" + std::to_string(spec.p) + " t=" + std::to_string(t) +
                   " M=" + std::to_string(spec.M) + " (G/G_" +
                   std::to_string(spec.k ? *spec.k : 2 * spec.M) + ")";
      break;
    }
    case GroupKind::Sl2Triangle:
      out.group = build_sl2_triangle(spec.p, spec.M, spec.k);
      out.family = "sl2_triangle p=" + std::to_string(spec.p) + " M=" +
                   std::to_string(spec.M);
      break;
  }
  return out;
}

}  // namespace ilab

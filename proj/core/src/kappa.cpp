#include "intenselab/kappa.hpp"

#include <algorithm>

#include "intenselab/errors.hpp"

namespace ilab::kappa {

namespace {

inline uint8_t x0(Pt x) { return x % 3; }
inline uint8_t x1(Pt x) { return x / 3; }
inline Pt pt(uint8_t a, uint8_t b) { return Pt(a % 3 + 3 * (b % 3)); }

inline Pt pt_add(Pt x, Pt y) {
  return pt(uint8_t(x0(x) + x0(y)), uint8_t(x1(x) + x1(y)));
}
inline Pt pt_neg(Pt x) { return pt(uint8_t(3 - x0(x)), uint8_t(3 - x1(x))); }
inline Pt pt_scale(uint8_t c, Pt x) {
  return pt(uint8_t(c * x0(x)), uint8_t(c * x1(x)));
}

}  // namespace

F9 f9_add(F9 a, F9 b) { return pt_add(a, b); }
F9 f9_neg(F9 a) { return pt_neg(a); }

F9 f9_mul(F9 a, F9 b) {
  // (a0 + a1 i)(b0 + b1 i) with i^2 = -1
  uint8_t a0 = x0(a), a1 = x1(a), b0 = x0(b), b1 = x1(b);
  uint8_t re = uint8_t((a0 * b0 + 2 * a1 * b1) % 3);  // -1 = 2
  uint8_t im = uint8_t((a0 * b1 + a1 * b0) % 3);
  return pt(re, im);
}

F9 f9_pow(F9 a, unsigned e) {
  F9 r = 1;
  for (unsigned k = 0; k < e; ++k) r = f9_mul(r, a);
  return r;
}

uint8_t wedge(Pt x, Pt y) {
  return uint8_t((x0(x) * x1(y) + 2 * x1(x) * x0(y)) % 3);
}

Pt EndoMat::apply(Pt x) const {
  return pt(uint8_t(m[0] * x0(x) + m[1] * x1(x)),
            uint8_t(m[2] * x0(x) + m[3] * x1(x)));
}

std::vector<Subfield> enumerate_subfields() {
  std::vector<Subfield> out;
  for (uint16_t code = 0; code < 81; ++code) {
    EndoMat J{{uint8_t(code % 3), uint8_t(code / 3 % 3), uint8_t(code / 9 % 3),
               uint8_t(code / 27 % 3)}};
    bool square_is_minus_one = true;
    for (Pt x = 0; x < kPlaneSize && square_is_minus_one; ++x)
      square_is_minus_one = J.apply(J.apply(x)) == pt_neg(x);
    if (!square_is_minus_one) continue;

    Subfield k;
    k.j = J;
    // canonical key: the 9 matrices a*I + b*J, each packed base 3, sorted
    int idx = 0;
    for (uint8_t a = 0; a < 3; ++a)
      for (uint8_t b = 0; b < 3; ++b) {
        uint8_t e0 = uint8_t((a + b * J.m[0]) % 3);
        uint8_t e1 = uint8_t(b * J.m[1] % 3);
        uint8_t e2 = uint8_t(b * J.m[2] % 3);
        uint8_t e3 = uint8_t((a + b * J.m[3]) % 3);
        k.elems_sorted_key[idx++] = Pt(e0 + 3 * e1 + 9 * e2 + 27 * e3);
      }
    std::sort(k.elems_sorted_key.begin(), k.elems_sorted_key.end());
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

namespace {

// kappa(x+y) = kappa(x) + kappa(y) + (x-y) * wedge(x,y); the tensor factor is
// identified with V, so the correction term is a scalar multiple of (x-y).
Pt a1_step(const std::array<Pt, kPlaneSize> &table, Pt x, Pt y) {
  Pt corr = pt_scale(wedge(x, y), pt_add(x, pt_neg(y)));
  return pt_add(pt_add(table[x], table[y]), corr);
}

// Fill a candidate table from kappa(e1), kappa(e2) along the chain
// "a*e1 first, then b*e2" (or the transposed chain when flip is set).
std::array<Pt, kPlaneSize> propagate_a1(Pt k_e1, Pt k_e2, bool flip) {
  std::array<Pt, kPlaneSize> t{};
  std::array<bool, kPlaneSize> have{};
  t[0] = 0;
  have[0] = true;
  Pt first = flip ? pt(0, 1) : pt(1, 0);
  Pt second = flip ? pt(1, 0) : pt(0, 1);
  Pt k_first = flip ? k_e2 : k_e1;
  Pt k_second = flip ? k_e1 : k_e2;
  t[first] = k_first;
  have[first] = true;
  t[second] = k_second;
  have[second] = true;
  for (uint8_t a = 0; a < 3; ++a) {
    Pt base = pt_scale(a, first);
    if (!have[base]) {
      Pt prev = pt_add(base, pt_neg(first));
      t[base] = a1_step(t, prev, first);
      have[base] = true;
    }
    for (uint8_t b = 1; b < 3; ++b) {
      Pt cur = pt_add(base, pt_scale(b, second));
      if (have[cur]) continue;
      Pt prev = pt_add(cur, pt_neg(second));
      t[cur] = a1_step(t, prev, second);
      have[cur] = true;
    }
  }
  return t;
}

bool bijective9(const std::array<Pt, kPlaneSize> &t) {
  uint16_t mask = 0;
  for (Pt v : t) mask |= uint16_t(1) << v;
  return mask == 0x1ff;
}

}  // namespace

bool satisfies_a1(const KappaStructure &k) {
  for (Pt x = 0; x < kPlaneSize; ++x)
    for (Pt y = 0; y < kPlaneSize; ++y)
      if (k.table[pt_add(x, y)] != a1_step(k.table, x, y)) return false;
  return true;
}

std::vector<KappaStructure> enumerate_kappa_structures() {
  std::vector<KappaStructure> out;
  for (Pt k1 = 0; k1 < kPlaneSize; ++k1)
    for (Pt k2 = 0; k2 < kPlaneSize; ++k2) {
      KappaStructure k;
      k.table = propagate_a1(k1, k2, false);
      if (!bijective9(k.table) || !satisfies_a1(k)) continue;
      if (k.table != propagate_a1(k1, k2, true))
        throw ConsistencyError("kappa propagation depends on the chain");
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
  return out;
}

KappaStructure s_V(const Subfield &k) {
  KappaStructure out;
  for (Pt x = 0; x < kPlaneSize; ++x) {
    Pt ix = k.j.apply(x);
    out.table[x] = pt_scale(wedge(ix, x), ix);  // ix tensor (ix wedge x)
  }
  if (!satisfies_a1(out) || !bijective9(out.table))
    throw ConsistencyError("s_V image is not a kappa structure");
  return out;
}

bool satisfies_a2(const LambdaMap &l) {
  for (F9 x = 0; x < kPlaneSize; ++x)
    for (F9 y = 0; y < kPlaneSize; ++y) {
      F9 corr = f9_mul(f9_add(x, f9_neg(y)),
                       f9_add(f9_mul(x, f9_pow(y, 3)), f9_neg(f9_mul(f9_pow(x, 3), y))));
      F9 want = f9_add(f9_add(l.table[x], l.table[y]), corr);
      if (l.table[f9_add(x, y)] != want) return false;
    }
  return true;
}

std::vector<LambdaMap> enumerate_lambda_maps() {
  std::vector<LambdaMap> out;
  // propagate from lambda(1), lambda(i) over the chain a*1 + b*i
  for (F9 l1 = 0; l1 < kPlaneSize; ++l1)
    for (F9 li = 0; li < kPlaneSize; ++li) {
      LambdaMap l;
      std::array<bool, kPlaneSize> have{};
      l.table[0] = 0;
      have[0] = true;
      F9 one = 1, i = pt(0, 1);
      l.table[one] = l1;
      have[one] = true;
      l.table[i] = li;
      have[i] = true;
      auto step = [&](F9 x, F9 y) {
        F9 corr = f9_mul(f9_add(x, f9_neg(y)),
                         f9_add(f9_mul(x, f9_pow(y, 3)),
                                f9_neg(f9_mul(f9_pow(x, 3), y))));
        return f9_add(f9_add(l.table[x], l.table[y]), corr);
      };
      for (uint8_t a = 0; a < 3; ++a) {
        F9 base = pt(a, 0);
        if (!have[base]) {
          l.table[base] = step(f9_add(base, f9_neg(one)), one);
          have[base] = true;
        }
        for (uint8_t b = 1; b < 3; ++b) {
          F9 cur = pt(a, b);
          if (have[cur]) continue;
          l.table[cur] = step(f9_add(cur, f9_neg(i)), i);
          have[cur] = true;
        }
      }
      if (!bijective9(l.table) || !satisfies_a2(l)) continue;
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
  return out;
}

LambdaMap l_V(const KappaStructure &k) {
  // Identify V with F_9 via e1 -> 1, e2 -> i.  Then
  // theta(w tensor e1^e2) = w tensor (1*i^3 - 1*i) = w tensor i, and mu
  // multiplies the two factors, so l_V(kappa)(x) = kappa(x) * i.
  LambdaMap out;
  F9 i = pt(0, 1);
  F9 theta_of_basis = f9_add(f9_pow(i, 3), f9_neg(i));  // e1 e2^3 - e1^3 e2
  for (Pt x = 0; x < kPlaneSize; ++x)
    out.table[x] = f9_mul(k.table[x], theta_of_basis);
  if (!satisfies_a2(out) || !bijective9(out.table))
    throw ConsistencyError("l_V image is not a lambda map");
  return out;
}

nlohmann::ordered_json certificate() {
  nlohmann::ordered_json j;
  auto subfields = enumerate_subfields();
  auto kappas = enumerate_kappa_structures();
  auto lambdas = enumerate_lambda_maps();

  j["plane"] = {{"basis", {"e1", "e2"}}, {"wedge_identification", "e1^e2 -> 1"}};

  nlohmann::ordered_json jf = nlohmann::ordered_json::array();
  for (const auto &k : subfields)
    jf.push_back({{"j_matrix", {k.j.m[0], k.j.m[1], k.j.m[2], k.j.m[3]}}});
  j["subfields"] = jf;

  nlohmann::ordered_json jk = nlohmann::ordered_json::array();
  for (const auto &k : kappas) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Pt v : k.table) row.push_back(v);
    jk.push_back(row);
  }
  j["kappa_structures"] = jk;

  nlohmann::ordered_json jl = nlohmann::ordered_json::array();
  for (const auto &l : lambdas) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (F9 v : l.table) row.push_back(v);
    jl.push_back(row);
  }
  j["lambda_maps"] = jl;

  nlohmann::ordered_json sv = nlohmann::ordered_json::array();
  for (size_t fi = 0; fi < subfields.size(); ++fi) {
    KappaStructure img = s_V(subfields[fi]);
    auto it = std::find(kappas.begin(), kappas.end(), img);
    sv.push_back({{"subfield", fi},
                  {"kappa", it == kappas.end() ? -1 : int(it - kappas.begin())}});
  }
  j["s_V"] = sv;

  nlohmann::ordered_json lv = nlohmann::ordered_json::array();
  for (size_t ki = 0; ki < kappas.size(); ++ki) {
    LambdaMap img = l_V(kappas[ki]);
    auto it = std::find(lambdas.begin(), lambdas.end(), img);
    lv.push_back({{"kappa", ki},
                  {"lambda", it == lambdas.end() ? -1 : int(it - lambdas.begin())}});
  }
  j["l_V"] = lv;

  j["cardinalities"] = {{"I_V", subfields.size()},
                        {"K_V", kappas.size()},
                        {"Lambda", lambdas.size()}};
  return j;
}

}  // namespace ilab::kappa

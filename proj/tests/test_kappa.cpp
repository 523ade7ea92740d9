#include <algorithm>
#include <set>

#include "doctest.h"

#include "intenselab/kappa.hpp"

using namespace ilab::kappa;

TEST_CASE("three subfields of End(V) with nine elements") {
  auto fields = enumerate_subfields();
  CHECK(fields.size() == 3);

  // six square roots of -1 pair off into the three fields (J with -J)
  int roots = 0;
  for (uint16_t code = 0; code < 81; ++code) {
    EndoMat J{{uint8_t(code % 3), uint8_t(code / 3 % 3), uint8_t(code / 9 % 3),
               uint8_t(code / 27 % 3)}};
    bool ok = true;
    for (Pt x = 0; x < 9 && ok; ++x) {
      Pt mx = Pt((3 - x % 3) % 3 + 3 * ((3 - x / 3) % 3));
      ok = J.apply(J.apply(x)) == mx;
    }
    if (ok) ++roots;
  }
  CHECK(roots == 6);

  for (const auto &k : fields) {
    // the 8 units form a cyclic group: some a + bJ has multiplicative order 8
    // working through the plane action
    int max_order = 0;
    for (uint8_t a = 0; a < 3; ++a)
      for (uint8_t b = 0; b < 3; ++b) {
        if (a == 0 && b == 0) continue;
        // iterate x -> (a + bJ)x on a fixed nonzero point until it returns
        auto apply = [&](Pt x) {
          Pt jx = k.j.apply(x);
          uint8_t r0 = uint8_t((a * (x % 3) + b * (jx % 3)) % 3);
          uint8_t r1 = uint8_t((a * (x / 3) + b * (jx / 3)) % 3);
          return Pt(r0 + 3 * r1);
        };
        // order of the map on the 8 nonzero points (it acts freely)
        Pt x0 = 1;
        Pt x = apply(x0);
        int ord = 1;
        while (x != x0) {
          x = apply(x);
          ++ord;
          REQUIRE(ord <= 9);
        }
        max_order = std::max(max_order, ord);
      }
    CHECK(max_order == 8);
  }
}

TEST_CASE("three twisted-additivity structures on the plane") {
  auto kappas = enumerate_kappa_structures();
  CHECK(kappas.size() == 3);
  for (const auto &k : kappas) {
    CHECK(satisfies_a1(k));
    CHECK(k.table[0] == 0);
    // odd symmetry is forced: kappa(-x) = -kappa(x)
    for (Pt x = 0; x < 9; ++x) {
      Pt mx = Pt((3 - x % 3) % 3 + 3 * ((3 - x / 3) % 3));
      Pt want = Pt((3 - k.table[x] % 3) % 3 + 3 * ((3 - k.table[x] / 3) % 3));
      CHECK(k.table[mx] == want);
    }
  }
}

TEST_CASE("s_V maps the subfields bijectively onto the structures") {
  auto fields = enumerate_subfields();
  auto kappas = enumerate_kappa_structures();
  std::set<std::array<Pt, 9>> images;
  for (const auto &f : fields) {
    KappaStructure img = s_V(f);
    CHECK(std::find(kappas.begin(), kappas.end(), img) != kappas.end());
    images.insert(img.table);
  }
  CHECK(images.size() == 3);  // injective, hence bijective onto the 3 structures

  // well-defined under J <-> -J
  for (const auto &f : fields) {
    Subfield neg = f;
    for (int i = 0; i < 4; ++i) neg.j.m[i] = uint8_t((3 - f.j.m[i]) % 3);
    CHECK(s_V(neg) == s_V(f));
  }
}

TEST_CASE("three twisted maps on F9, all of the shape x^5 + bx") {
  auto lambdas = enumerate_lambda_maps();
  CHECK(lambdas.size() == 3);
  bool x5_seen = false;
  for (const auto &l : lambdas) {
    CHECK(satisfies_a2(l));
    F9 b = f9_add(l.table[1], f9_neg(f9_pow(1, 5)));
    // b (1 + b^2) = 0
    CHECK(f9_mul(b, f9_add(1, f9_mul(b, b))) == 0);
    for (F9 x = 0; x < 9; ++x)
      CHECK(l.table[x] == f9_add(f9_pow(x, 5), f9_mul(b, x)));
    if (b == 0) x5_seen = true;
  }
  CHECK(x5_seen);
}

TEST_CASE("l_V connects the structures to the maps bijectively") {
  auto kappas = enumerate_kappa_structures();
  auto lambdas = enumerate_lambda_maps();
  std::set<std::array<F9, 9>> images;
  for (const auto &k : kappas) {
    LambdaMap img = l_V(k);
    CHECK(std::find(lambdas.begin(), lambdas.end(), img) != lambdas.end());
    images.insert(img.table);
  }
  CHECK(images.size() == 3);
}

TEST_CASE("l_V after s_V on the multiplication-by-i field gives x -> x^5") {
  // the endomorphism x -> ix in the basis (1, i) is [[0,-1],[1,0]]
  Subfield mul_i;
  mul_i.j = EndoMat{{0, 2, 1, 0}};
  // locate it among the enumerated subfields to get the canonical key
  auto fields = enumerate_subfields();
  bool located = false;
  for (const auto &f : fields)
    if (f.j == mul_i.j) {
      mul_i = f;
      located = true;
    }
  REQUIRE(located);

  LambdaMap composed = l_V(s_V(mul_i));
  for (F9 x = 0; x < 9; ++x) CHECK(composed.table[x] == f9_pow(x, 5));

  // and the composite l_V . s_V lands in Lambda for every subfield
  auto lambdas = enumerate_lambda_maps();
  for (const auto &f : fields) {
    LambdaMap sigma = l_V(s_V(f));
    CHECK(std::find(lambdas.begin(), lambdas.end(), sigma) != lambdas.end());
  }
}

TEST_CASE("certificate carries all three structure sets") {
  auto cert = certificate();
  CHECK(cert["cardinalities"]["I_V"] == 3);
  CHECK(cert["cardinalities"]["K_V"] == 3);
  CHECK(cert["cardinalities"]["Lambda"] == 3);
  CHECK(cert["kappa_structures"].size() == 3);
  CHECK(cert["lambda_maps"].size() == 3);
  for (const auto &row : cert["s_V"]) CHECK(row["kappa"] != -1);
  for (const auto &row : cert["l_V"]) CHECK(row["lambda"] != -1);
}

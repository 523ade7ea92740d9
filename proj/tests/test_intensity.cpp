#include <algorithm>
#include <set>

#include "doctest.h"

#include "intenselab/constructions.hpp"
#include "intenselab/intensity.hpp"

using namespace ilab;

TEST_CASE("identity images give the identity automorphism") {
  auto G = build_extraspecial(3, 1, "p");
  Automorphism a = automorphism_from_generator_images(*G, G->generators());
  for (ElemIdx x = 0; x < G->order(); ++x) CHECK(a.perm[x] == x);
  CHECK(a.order() == 1);
  REQUIRE(a.frattini_scalar.has_value());
  CHECK(*a.frattini_scalar == 1);
}

TEST_CASE("inverse generator images on the order-729 group") {
  auto G = build_yo();
  std::vector<ElemIdx> images;
  for (ElemIdx g : G->generators()) images.push_back(G->inv(g));
  Automorphism alpha = automorphism_from_generator_images(*G, images);
  CHECK(alpha.order() == 2);
  REQUIRE(alpha.frattini_scalar.has_value());
  CHECK(*alpha.frattini_scalar == 2);  // -1 mod 3

  IntenseChecker ctx(G);
  CHECK(ctx.is_intense(alpha.perm));

  // intense automorphisms fix every normal subgroup setwise
  for (const auto &H : ctx.subgroups()) {
    if (!is_normal(*G, H)) continue;
    std::vector<ElemIdx> image;
    for (ElemIdx m : H.members) image.push_back(alpha.perm[m]);
    std::sort(image.begin(), image.end());
    CHECK(image == H.members);
  }

  CHECK(minus_one_powers_check(*G, series(*G), alpha));
  Automorphism id = automorphism_from_generator_images(*G, G->generators());
  CHECK_THROWS_AS(minus_one_powers_check(*G, series(*G), id), BadInput);

  // the induced automorphism on the class-3 quotient passes the same check
  auto q = GroupTable::quotient(G, series(*G).term(4));
  std::vector<ElemIdx> q_images;
  for (ElemIdx g : q.group->generators()) q_images.push_back(q.group->inv(g));
  Automorphism alpha_q = automorphism_from_generator_images(*q.group, q_images);
  CHECK(alpha_q.order() == 2);
  CHECK(minus_one_powers_check(*q.group, series(*q.group), alpha_q));
  IntenseChecker q_ctx(q.group);
  CHECK(q_ctx.is_intense(alpha_q.perm));
}

TEST_CASE("scalar rescaling of an extraspecial group") {
  auto G = build_extraspecial(5, 1, "p");
  // generators are the X and Y directions; scaling both by m extends to the
  // automorphism acting by m on G/Phi and m^2 on the centre
  for (uint32_t m = 2; m < 5; ++m) {
    std::vector<ElemIdx> images;
    for (ElemIdx g : G->generators()) images.push_back(G->power(g, m));
    Automorphism am = automorphism_from_generator_images(*G, images);
    REQUIRE(am.frattini_scalar.has_value());
    CHECK(*am.frattini_scalar == m);
    // check the m^2 action on the centre
    Subgroup Z = center(*G);
    for (ElemIdx z : Z.members)
      CHECK(am.perm[z] == G->power(z, m * m));
  }
}

TEST_CASE("rejections: non-bijective and non-homomorphic images") {
  auto A = build_abelian(3, {2, 1});
  // map the order-3 generator into the cyclic part: a homomorphism onto a
  // proper subgroup
  std::vector<ElemIdx> bad{A->generators()[0], A->power(A->generators()[0], 3)};
  CHECK_THROWS_AS(automorphism_from_generator_images(*A, bad), NotBijective);

  // exhaustive scan on the Heisenberg group: the automorphism count matches
  // p^2 |GL_2(F_p)| = 432; every generating pair extends, so rejections here
  // are all bijectivity failures
  auto H = build_extraspecial(3, 1, "p");
  REQUIRE(H->generators().size() == 2);
  int autos = 0, not_bij = 0, not_hom = 0;
  for (ElemIdx i1 = 0; i1 < H->order(); ++i1)
    for (ElemIdx i2 = 0; i2 < H->order(); ++i2) {
      try {
        automorphism_from_generator_images(*H, {i1, i2});
        ++autos;
      } catch (const NotBijective &) {
        ++not_bij;
      } catch (const NotAHomomorphism &) {
        ++not_hom;
      }
    }
  CHECK(autos == 432);
  CHECK(not_bij > 0);
  CHECK(not_hom == 0);
  CHECK(autos + not_bij + not_hom == 729);

  // on Z/9 x Z/3 both rejection reasons occur, and the automorphism count
  // matches the independent formula p^3 (p-1)^2 = 108
  int z_autos = 0, z_not_bij = 0, z_not_hom = 0;
  for (ElemIdx i1 = 0; i1 < A->order(); ++i1)
    for (ElemIdx i2 = 0; i2 < A->order(); ++i2) {
      try {
        automorphism_from_generator_images(*A, {i1, i2});
        ++z_autos;
      } catch (const NotBijective &) {
        ++z_not_bij;
      } catch (const NotAHomomorphism &) {
        ++z_not_hom;
      }
    }
  CHECK(z_autos == 108);
  CHECK(z_not_hom > 0);
  CHECK(z_autos + z_not_bij + z_not_hom == 729);
}

TEST_CASE("inner automorphisms are intense") {
  auto G = build_extraspecial(3, 1, "p");
  IntenseChecker ctx(G);
  for (ElemIdx g : {ElemIdx(1), ElemIdx(5), ElemIdx(11)}) {
    std::vector<ElemIdx> images;
    for (ElemIdx s : G->generators()) images.push_back(G->conj(g, s));
    Automorphism inner = automorphism_from_generator_images(*G, images);
    CHECK(ctx.is_intense(inner.perm));
  }
}

TEST_CASE("a basis swap of the rank-2 elementary abelian group is not intense") {
  auto V = build_abelian(3, {1, 1});
  std::vector<ElemIdx> swapped{V->generators()[1], V->generators()[0]};
  Automorphism sw = automorphism_from_generator_images(*V, swapped);
  IntenseChecker ctx(V);
  CHECK(!ctx.is_intense(sw.perm));
  CHECK(!sw.frattini_scalar.has_value());
}

TEST_CASE("elementary abelian: intense if and only if scalar") {
  for (GroupPtr V : {build_abelian(3, {1, 1}), build_abelian(5, {1, 1})}) {
    IntenseChecker ctx(V);
    const uint32_t n = V->order();
    uint32_t intense_count = 0, scalar_count = 0;
    for (ElemIdx i1 = 0; i1 < n; ++i1)
      for (ElemIdx i2 = 0; i2 < n; ++i2) {
        Automorphism a;
        try {
          a = automorphism_from_generator_images(*V, {i1, i2});
        } catch (const std::exception &) {
          continue;
        }
        bool intense = ctx.is_intense(a.perm);
        bool scalar = a.frattini_scalar.has_value();
        CHECK(intense == scalar);
        intense_count += intense;
        scalar_count += scalar;
      }
    CHECK(intense_count == V->prime() - 1);
    CHECK(intense_count == scalar_count);
  }
}

TEST_CASE("intensity of small elementary abelian groups is p-1") {
  CHECK(intensity(build_abelian(3, {1, 1})).intensity == 2);
  CHECK(intensity(build_abelian(5, {1, 1})).intensity == 4);
}

TEST_CASE("intensity of cyclic groups is p-1") {
  CHECK(intensity(build_abelian(3, {1})).intensity == 2);
  CHECK(intensity(build_abelian(7, {1})).intensity == 6);
  CHECK(intensity(build_abelian(2, {3})).intensity == 1);  // 2-groups stay at 1
}

TEST_CASE("intensity rejects groups that are not of prime power order") {
  CHECK_THROWS_AS(intensity(build_semidirect_cyclic(3, 2, 2)), BadInput);
}

TEST_CASE("intensity divides the intensity of proper quotients") {
  auto Y = build_yo();
  auto S = series(*Y);
  uint32_t iY = intensity(Y).intensity;
  uint32_t i4 = intensity(GroupTable::quotient(Y, S.term(4)).group).intensity;
  uint32_t i3 = intensity(GroupTable::quotient(Y, S.term(3)).group).intensity;
  CHECK(i4 % iY == 0);
  CHECK(i3 % iY == 0);
  CHECK(iY == 2);
  CHECK(i4 == 2);
  CHECK(i3 == 2);
}

TEST_CASE("candidate budget is enforced") {
  IntensityOptions opts;
  opts.candidate_budget = 7;
  CHECK_THROWS_AS(intensity(build_extraspecial(3, 1, "p"), opts), CapacityExceeded);
}

TEST_CASE("intensity reports are deterministic and thread independent") {
  IntensityOptions one;
  one.threads = 1;
  IntensityOptions four;
  four.threads = 4;
  auto a = intensity(build_extraspecial(3, 1, "p"), one);
  auto b = intensity(build_extraspecial(3, 1, "p"), four);
  CHECK(a.realized_scalars == b.realized_scalars);
  CHECK(a.candidates_examined == b.candidates_examined);
  CHECK(a.candidates_validated == b.candidates_validated);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].scalar == b.witnesses[i].scalar);
    CHECK(a.witnesses[i].gen_images == b.witnesses[i].gen_images);
  }
}

TEST_CASE("element words replay through the generators") {
  auto G = build_extraspecial(3, 1, "p");
  CHECK(element_word(*G, 0) == "1");
  for (ElemIdx g : G->generators()) {
    std::string w = element_word(*G, g);
    CHECK(w.substr(0, 1) == "g");
  }
}

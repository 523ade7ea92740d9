#include <algorithm>
#include <set>

#include "doctest.h"

#include "intenselab/constructions.hpp"
#include "intenselab/group.hpp"
#include "intenselab/series.hpp"
#include "intenselab/snapshot.hpp"

using namespace ilab;

TEST_CASE("closure of the empty seed is the trivial group") {
  auto amb = std::make_shared<TupleAmbient>(std::vector<uint32_t>{3});
  auto g = GroupTable::closure(amb, {});
  CHECK(g->order() == 1);
  CHECK(g->generators().empty());
  CHECK(g->mul(0, 0) == 0);
  g->validate();
}

TEST_CASE("closure respects the capacity bound") {
  ClosureOptions opts;
  opts.max_order = 10;
  auto amb = std::make_shared<TupleAmbient>(std::vector<uint32_t>{27});
  CHECK_THROWS_AS(GroupTable::closure(amb, {amb->encode({1})}, opts),
                  CapacityExceeded);
}

TEST_CASE("cyclic subgroup of the dual-quaternion group has order 9") {
  // independent oracle: brute-force powers in the ambient algebra
  QuaternionAlgebra alg = yo_algebra();
  const auto &R = alg.ring();
  Quaternion a{R.sub(R.one(), R.eps()), R.one(), 0, 0};
  Quaternion acc = a;
  int order = 1;
  while (!(acc == alg.one())) {
    acc = alg.mul(acc, a);
    ++order;
  }
  CHECK(order == 9);

  auto G = build_yo();
  ElemIdx ai = G->index_of_code(quat_pack(a));
  Subgroup H = subgroup_generated(*G, {ai});
  CHECK(H.order() == 9);
  CHECK(subgroup_generated(*G, {}).order() == 1);
  CHECK(subgroup_generated(*G, G->generators()).order() == G->order());
}

TEST_CASE("commutator words and power words") {
  auto G = build_yo();
  for (ElemIdx x : {ElemIdx(0), ElemIdx(1), ElemIdx(5), ElemIdx(100)}) {
    CHECK(G->commutator(x, x) == 0);
    CHECK(G->power(x, G->order()) == 0);  // Lagrange
  }
  // [a, b] = 1 - k modulo the cube of the maximal ideal
  QuaternionAlgebra alg = yo_algebra();
  const auto &R = alg.ring();
  ElemIdx c = G->commutator(G->generators()[0], G->generators()[1]);
  Quaternion cq = quat_unpack(G->codes()[c]);
  Quaternion one_minus_k{R.one(), 0, 0, R.neg(R.one())};
  Quaternion ratio = alg.mul(cq, alg.inv(one_minus_k));
  Quaternion ratio_m1{R.sub(ratio.a, R.one()), ratio.b, ratio.c, ratio.d};
  CHECK(alg.in_ideal_power(ratio_m1, 3));
}

TEST_CASE("center, centralizer, normalizer") {
  auto A = build_abelian(3, {2, 1});
  CHECK(center(*A).order() == A->order());

  auto G = build_yo();
  SeriesData S = series(*G);
  Subgroup Z = center(*G);
  CHECK(Z.order() == 3);
  CHECK(Z.members == S.term(4).members);

  // the normalizer of a normal subgroup is everything
  CHECK(normalizer(*G, S.term(2)).order() == G->order());
  CHECK(is_normal(*G, trivial_subgroup()));
  // subgroups of index p in a p-group are normal
  for (const Subgroup &M : maximal_subgroups(*G)) CHECK(is_normal(*G, M));
}

TEST_CASE("centralizer of a set and normal closure") {
  auto H = build_extraspecial(3, 1, "p");
  ElemIdx x = H->generators()[0];  // non-central
  Subgroup C = centralizer(*H, {x});
  CHECK(C.order() == 9);  // <x, Z>
  CHECK(C.contains(x));
  for (ElemIdx z : center(*H).members) CHECK(C.contains(z));

  Subgroup cyc = subgroup_generated(*H, {x});
  CHECK(!is_normal(*H, cyc));
  Subgroup nc = normal_closure(*H, {x});
  CHECK(is_normal(*H, nc));
  CHECK(nc.order() == 9);
  CHECK(std::includes(nc.members.begin(), nc.members.end(), cyc.members.begin(),
                      cyc.members.end()));
}

TEST_CASE("quotient by the trivial subgroup is an isomorphic re-indexing") {
  auto G = build_extraspecial(3, 1, "p");
  auto q = GroupTable::quotient(G, trivial_subgroup());
  CHECK(q.group->order() == G->order());
  for (ElemIdx x = 0; x < G->order(); ++x)
    for (ElemIdx y = 0; y < G->order(); ++y)
      CHECK(q.projection[G->mul(x, y)] ==
            q.group->mul(q.projection[x], q.projection[y]));
  // projection is bijective here
  std::set<ElemIdx> im(q.projection.begin(), q.projection.end());
  CHECK(im.size() == G->order());
}

TEST_CASE("quotients of the dual-quaternion group") {
  auto G = build_yo();
  SeriesData S = series(*G);

  auto q4 = GroupTable::quotient(G, S.term(4));
  CHECK(q4.group->order() == 243);
  auto q2 = GroupTable::quotient(G, S.term(2));
  CHECK(q2.group->order() == 9);
  CHECK(is_abelian(*q2.group));
  for (ElemIdx x = 0; x < q2.group->order(); ++x)
    CHECK(q2.group->power(x, 3) == 0);  // elementary abelian

  // projection is a surjective homomorphism with kernel exactly N
  for (ElemIdx x = 0; x < G->order(); ++x)
    for (ElemIdx y = 0; y < G->order(); ++y)
      CHECK(q4.projection[G->mul(x, y)] ==
            q4.group->mul(q4.projection[x], q4.projection[y]));
  uint32_t kernel_count = 0;
  for (ElemIdx x = 0; x < G->order(); ++x)
    if (q4.projection[x] == 0) ++kernel_count;
  CHECK(kernel_count == S.term(4).order());

  CHECK_THROWS_AS(GroupTable::quotient(G, subgroup_generated(*G, {1})), NotNormal);
}

namespace {

// independent oracle: all subgroups as the join closure of cyclic subgroups
std::set<std::vector<ElemIdx>> join_closure_oracle(const GroupTable &G) {
  std::set<std::vector<ElemIdx>> pool;
  pool.insert({0});
  for (ElemIdx x = 1; x < G.order(); ++x)
    pool.insert(subgroup_generated(G, {x}).members);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<ElemIdx>> cur(pool.begin(), pool.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<ElemIdx> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        if (pool.insert(subgroup_generated(G, gens).members).second) grew = true;
      }
  }
  return pool;
}

}  // namespace

TEST_CASE("subgroup enumeration: rank-2 elementary abelian has 6 subgroups") {
  auto G = build_abelian(3, {1, 1});
  auto subs = all_subgroups(*G);
  CHECK(subs.size() == 6);
}

TEST_CASE("subgroup enumeration matches the join-closure oracle") {
  for (GroupPtr G : {build_extraspecial(3, 1, "p"), build_abelian(3, {2, 1}),
                     build_semidirect_cyclic(4, 2, 3)}) {
    auto subs = all_subgroups(*G);
    auto oracle = join_closure_oracle(*G);
    REQUIRE(subs.size() == oracle.size());
    for (const auto &s : subs) CHECK(oracle.count(s.members) == 1);
    // every subgroup is closed and contains the identity
    for (const auto &s : subs) {
      CHECK(s.members.front() == 0);
      CHECK(subgroup_generated(*G, s.gens).members == s.members);
    }
  }
}

TEST_CASE("subgroup list is canonical and repeatable") {
  auto G = build_extraspecial(3, 1, "p");
  auto a = all_subgroups(*G);
  auto b = all_subgroups(*G);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].members == b[i].members);

  // re-interning from a permuted generator list leaves the lattice profile
  // unchanged
  auto swapped = GroupTable::closure(
      std::make_shared<IndexAmbient>(G),
      {uint64_t(G->generators()[1]), uint64_t(G->generators()[0])});
  auto c = all_subgroups(*swapped);
  REQUIRE(c.size() == a.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(c[i].order() == a[i].order());
}

TEST_CASE("subgroup count of the order-729 group (regression constant)") {
  // the join-closure oracle agrees on the order-27 quotient and on the full
  // group; 373 is the frozen constant
  auto G = build_yo();
  SeriesData S = series(*G);
  auto q = GroupTable::quotient(G, S.term(3));
  CHECK(all_subgroups(*q.group).size() == join_closure_oracle(*q.group).size());
  auto subs = all_subgroups(*G);
  CHECK(subs.size() == 373);
  CHECK(join_closure_oracle(*G).size() == 373);
}

TEST_CASE("conjugacy classes obey orbit-stabilizer") {
  auto G = build_yo();
  auto subs = all_subgroups(*G);
  auto classes = subgroup_conjugacy_classes(*G, subs);
  std::set<size_t> sizes;
  for (const auto &c : classes) {
    const Subgroup &rep = subs[c.representative];
    CHECK(c.members.size() == G->order() / normalizer(*G, rep).order());
    sizes.insert(c.members.size());
    // conjugates stay closed with equal order
    Subgroup conj = conjugate_subgroup(*G, rep, 7);
    CHECK(conj.order() == rep.order());
    CHECK(subgroup_generated(*G, conj.gens).members == conj.members);
  }
  for (size_t s : sizes) CHECK((s == 1 || s == 3 || s == 9 || s == 27));
}

TEST_CASE("conjugacy classes of an abelian group are singletons") {
  auto G = build_abelian(3, {2, 1});
  auto subs = all_subgroups(*G);
  for (const auto &c : subgroup_conjugacy_classes(*G, subs))
    CHECK(c.members.size() == 1);
}

TEST_CASE("snapshot round trip with a packed table") {
  auto G = build_extraspecial(3, 1, "p");
  std::string path = "/tmp/ilab_snapshot_test.igrp";
  snapshot_save(path, *G, "");
  SnapshotLoad snap = snapshot_load(path);
  REQUIRE(snap.group);
  CHECK(snap.group->order() == G->order());
  CHECK(snap.group->generators() == G->generators());
  for (ElemIdx x = 0; x < G->order(); ++x)
    for (ElemIdx y = 0; y < G->order(); ++y)
      CHECK(snap.group->mul(x, y) == G->mul(x, y));
}

TEST_CASE("snapshot descriptor mode for groups without a table") {
  ClosureOptions opts;
  opts.table_threshold = 0;  // force the ambient backend
  auto amb = std::make_shared<TupleAmbient>(std::vector<uint32_t>{9});
  auto G = GroupTable::closure(amb, {amb->encode({1})}, opts);
  CHECK(!G->has_table());
  std::string path = "/tmp/ilab_snapshot_desc.igrp";
  snapshot_save(path, *G, "{\"kind\":\"abelian\",\"p\":3,\"type\":[2]}");
  SnapshotLoad snap = snapshot_load(path);
  CHECK(!snap.group);
  CHECK(snap.descriptor == "{\"kind\":\"abelian\",\"p\":3,\"type\":[2]}");
}

TEST_CASE("corrupted tables are rejected by loading or validation") {
  auto G = build_abelian(3, {1, 1});

  // a corrupted identity row breaks the breadth-first replay or validation
  {
    std::vector<uint16_t> table(G->table());
    table[0 * G->order() + 5] = 0;
    bool caught = false;
    try {
      auto loaded = GroupTable::from_table(G->order(), G->generators(), table);
      loaded->validate();
    } catch (const ConsistencyError &) {
      caught = true;
    }
    CHECK(caught);
  }

  // a corrupted non-tree edge survives loading but fails the associativity
  // criterion in validate()
  {
    std::vector<uint16_t> table(G->table());
    table[4 * G->order() + 5] ^= 1;
    bool caught = false;
    try {
      auto loaded = GroupTable::from_table(G->order(), G->generators(), table);
      loaded->validate();
    } catch (const ConsistencyError &) {
      caught = true;
    }
    CHECK(caught);
  }
}

TEST_CASE("element orders are cached consistently") {
  auto G = build_yo();
  for (ElemIdx x = 0; x < G->order(); ++x) {
    uint32_t ord = G->element_order(x);
    CHECK(G->power(x, ord) == 0);
    for (uint32_t d = 1; d < ord; ++d)
      if (ord % d == 0) CHECK(G->power(x, d) != 0);
  }
}

#include "intenselab/group.hpp"

#include <algorithm>
#include <cassert>

namespace ilab {

namespace {

void classify_order(uint32_t n, uint32_t &prime, uint32_t &exp) {
  prime = 0;
  exp = 0;
  if (n == 1) {
    prime = 1;
    return;
  }
  uint32_t p = 0;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = n;
  uint32_t m = n, e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m == 1) {
    prime = p;
    exp = e;
  }
}

}  // namespace

bool Subgroup::contains(ElemIdx x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

struct GroupTableBuilder {
  static std::shared_ptr<GroupTable> make() {
    return std::shared_ptr<GroupTable>(new GroupTable());
  }
  static GroupTable &mut(const std::shared_ptr<GroupTable> &g) { return *g; }
};

GroupPtr GroupTable::closure(AmbientPtr ambient,
                             const std::vector<uint64_t> &seeds,
                             const ClosureOptions &opts) {
  auto g = GroupTableBuilder::make();
  GroupTable &G = *g;
  G.ambient_ = ambient;

  const uint64_t id = ambient->id();
  G.codes_.push_back(id);
  G.intern_.emplace(id, 0);
  G.parent_word_.push_back({0, 0});

  // Generator codes in listed order, identity and duplicates dropped.
  std::vector<uint64_t> gen_codes;
  for (uint64_t s : seeds) {
    if (s == id) continue;
    if (std::find(gen_codes.begin(), gen_codes.end(), s) == gen_codes.end())
      gen_codes.push_back(s);
  }

  for (ElemIdx x = 0; x < G.codes_.size(); ++x) {
    for (uint32_t gi = 0; gi < gen_codes.size(); ++gi) {
      uint64_t z = ambient->mul(G.codes_[x], gen_codes[gi]);
      auto [it, fresh] = G.intern_.emplace(z, ElemIdx(G.codes_.size()));
      if (fresh) {
        if (G.codes_.size() >= opts.max_order)
          throw CapacityExceeded("closure: order exceeds " +
                                 std::to_string(opts.max_order));
        G.codes_.push_back(z);
        G.parent_word_.push_back({x, gi});
      }
    }
  }

  G.n_ = uint32_t(G.codes_.size());
  classify_order(G.n_, G.prime_, G.prime_exp_);

  G.generators_.reserve(gen_codes.size());
  for (uint64_t s : gen_codes) G.generators_.push_back(G.intern_.at(s));

  G.inv_.resize(G.n_);
  for (ElemIdx i = 0; i < G.n_; ++i)
    G.inv_[i] = G.intern_.at(ambient->inv(G.codes_[i]));

  if (G.n_ <= opts.table_threshold) {
    G.backend_ = Backend::Table;
    G.table_.resize(size_t(G.n_) * G.n_);
    for (ElemIdx i = 0; i < G.n_; ++i)
      for (ElemIdx j = 0; j < G.n_; ++j)
        G.table_[size_t(i) * G.n_ + j] =
            uint16_t(G.intern_.at(ambient->mul(G.codes_[i], G.codes_[j])));
  } else {
    G.backend_ = Backend::Ambient;
  }
  return g;
}

GroupTable::QuotientData GroupTable::quotient(GroupPtr parent,
                                              const Subgroup &kernel) {
  const GroupTable &P = *parent;
  if (!is_normal(P, kernel)) throw NotNormal("quotient: kernel is not normal");

  const uint32_t n = P.order();
  const ElemIdx unset = n;
  std::vector<ElemIdx> min_rep(n, unset);  // parent index -> minimal coset rep
  for (ElemIdx x = 0; x < n; ++x) {
    if (min_rep[x] != unset) continue;
    for (ElemIdx m : kernel.members) min_rep[P.mul(x, m)] = x;
  }

  // BFS over cosets from the projected generators fixes the quotient indexing.
  auto g = GroupTableBuilder::make();
  GroupTable &Q = *g;
  Q.backend_ = Backend::Quotient;
  Q.parent_ = parent;

  const uint32_t qn = n / kernel.order();
  std::vector<ElemIdx> idx_of_rep(n, unset);
  Q.quot_rep_.reserve(qn);
  Q.quot_rep_.push_back(0);
  idx_of_rep[0] = 0;
  Q.parent_word_.push_back({0, 0});

  std::vector<ElemIdx> gen_reps;
  for (ElemIdx pg : P.generators()) {
    ElemIdx r = min_rep[pg];
    if (r == 0) continue;
    if (std::find(gen_reps.begin(), gen_reps.end(), r) == gen_reps.end())
      gen_reps.push_back(r);
  }

  for (ElemIdx qi = 0; qi < Q.quot_rep_.size(); ++qi) {
    for (uint32_t gi = 0; gi < gen_reps.size(); ++gi) {
      ElemIdx z = min_rep[P.mul(Q.quot_rep_[qi], gen_reps[gi])];
      if (idx_of_rep[z] == unset) {
        idx_of_rep[z] = ElemIdx(Q.quot_rep_.size());
        Q.quot_rep_.push_back(z);
        Q.parent_word_.push_back({qi, gi});
      }
    }
  }
  if (Q.quot_rep_.size() != qn)
    throw ConsistencyError("quotient: generators do not span the cosets");

  Q.n_ = qn;
  classify_order(Q.n_, Q.prime_, Q.prime_exp_);

  Q.quot_proj_.resize(n);
  for (ElemIdx x = 0; x < n; ++x) Q.quot_proj_[x] = idx_of_rep[min_rep[x]];

  Q.generators_.reserve(gen_reps.size());
  for (ElemIdx r : gen_reps) Q.generators_.push_back(idx_of_rep[r]);

  Q.inv_.resize(qn);
  for (ElemIdx i = 0; i < qn; ++i)
    Q.inv_[i] = Q.quot_proj_[P.inv(Q.quot_rep_[i])];

  if (qn <= ClosureOptions{}.table_threshold) {
    Q.table_.resize(size_t(qn) * qn);
    for (ElemIdx i = 0; i < qn; ++i)
      for (ElemIdx j = 0; j < qn; ++j)
        Q.table_[size_t(i) * qn + j] =
            uint16_t(Q.quot_proj_[P.mul(Q.quot_rep_[i], Q.quot_rep_[j])]);
  }

  QuotientData out;
  out.group = g;
  out.parent = parent;
  out.kernel = kernel;
  out.coset_rep = Q.quot_rep_;
  out.projection = Q.quot_proj_;
  return out;
}

GroupPtr GroupTable::from_table(uint32_t n, const std::vector<ElemIdx> &generators,
                                std::vector<uint16_t> table) {
  if (table.size() != size_t(n) * n) throw BadInput("from_table: wrong table size");
  auto g = GroupTableBuilder::make();
  GroupTable &G = *g;
  G.backend_ = Backend::Table;
  G.n_ = n;
  G.table_ = std::move(table);
  classify_order(G.n_, G.prime_, G.prime_exp_);
  G.generators_ = generators;

  // re-derive parent words; the BFS must reproduce the stored indexing
  G.parent_word_.assign(n, {0, 0});
  std::vector<char> seen(n, 0);
  std::vector<ElemIdx> work{0};
  seen[0] = 1;
  ElemIdx expect = 0;
  for (size_t h = 0; h < work.size(); ++h) {
    if (work[h] != expect++)
      throw ConsistencyError("from_table: indexing is not breadth-first");
    for (uint32_t gi = 0; gi < generators.size(); ++gi) {
      ElemIdx z = G.mul(work[h], generators[gi]);
      if (!seen[z]) {
        seen[z] = 1;
        G.parent_word_[z] = {work[h], gi};
        work.push_back(z);
      }
    }
  }
  if (work.size() != n)
    throw ConsistencyError("from_table: generators do not span the table");

  G.inv_.assign(n, 0);
  for (ElemIdx i = 0; i < n; ++i) {
    bool found = false;
    for (ElemIdx j = 0; j < n; ++j)
      if (G.mul(i, j) == 0 && G.mul(j, i) == 0) {
        G.inv_[i] = j;
        found = true;
        break;
      }
    if (!found) throw ConsistencyError("from_table: missing inverse");
  }
  return g;
}

ElemIdx GroupTable::mul_slow(ElemIdx i, ElemIdx j) const {
  if (backend_ == Backend::Ambient)
    return intern_.at(ambient_->mul(codes_[i], codes_[j]));
  return quot_proj_[parent_->mul(quot_rep_[i], quot_rep_[j])];
}

ElemIdx GroupTable::power(ElemIdx x, int64_t e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  ElemIdx acc = 0, base = x;
  uint64_t k = uint64_t(e);
  while (k) {
    if (k & 1) acc = mul(acc, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return acc;
}

uint32_t GroupTable::element_order(ElemIdx x) const {
  std::call_once(order_once_, [this] {
    element_order_.assign(n_, 0);
    element_order_[0] = 1;
    for (ElemIdx i = 1; i < n_; ++i) {
      if (element_order_[i]) continue;
      // walk <i> once and stamp every power: orbit[k] = i^{k+1}
      std::vector<ElemIdx> orbit{i};
      ElemIdx y = mul(i, i);
      while (y != 0) {
        orbit.push_back(y);
        y = mul(y, i);
      }
      uint32_t ord = uint32_t(orbit.size()) + 1;
      for (size_t k = 0; k < orbit.size(); ++k) {
        uint32_t a = uint32_t(k + 1) % ord, g = ord;
        while (a) {
          uint32_t t = g % a;
          g = a;
          a = t;
        }
        element_order_[orbit[k]] = ord / g;
      }
    }
  });
  return element_order_[x];
}

ElemIdx GroupTable::index_of_code(uint64_t code) const {
  auto it = intern_.find(code);
  if (it == intern_.end()) throw BadInput("index_of_code: unknown element");
  return it->second;
}

void GroupTable::validate() const {
  for (ElemIdx i = 0; i < n_; ++i) {
    if (mul(0, i) != i || mul(i, 0) != i)
      throw ConsistencyError("validate: identity not neutral");
    if (mul(i, inv_[i]) != 0 || mul(inv_[i], i) != 0)
      throw ConsistencyError("validate: inverse incorrect");
  }
  if (n_ <= 2000) {
    for (ElemIdx x = 0; x < n_; ++x)
      for (ElemIdx y = 0; y < n_; ++y)
        for (ElemIdx s : generators_)
          if (mul(mul(x, y), s) != mul(x, mul(y, s)))
            throw ConsistencyError("validate: associativity (generator criterion)");
  }
  SplitMix64 rng(0x1234567ull ^ (uint64_t(n_) << 20));
  for (int t = 0; t < 100000; ++t) {
    ElemIdx x = ElemIdx(rng.next() % n_), y = ElemIdx(rng.next() % n_),
            z = ElemIdx(rng.next() % n_);
    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
      throw ConsistencyError("validate: associativity (random triple)");
  }
}

// --- subgroup machinery -----------------------------------------------------

Subgroup trivial_subgroup() { return Subgroup{{0}, {}}; }

Subgroup whole_group(const GroupTable &G) {
  Subgroup s;
  s.members.resize(G.order());
  for (ElemIdx i = 0; i < G.order(); ++i) s.members[i] = i;
  s.gens = G.generators();
  return s;
}

namespace {

// BFS span of the given generators starting from the listed members.
std::vector<ElemIdx> bfs_span(const GroupTable &G,
                              const std::vector<ElemIdx> &start,
                              const std::vector<ElemIdx> &gens) {
  std::vector<char> seen(G.order(), 0);
  std::vector<ElemIdx> work;
  work.reserve(start.size());
  for (ElemIdx s : start)
    if (!seen[s]) {
      seen[s] = 1;
      work.push_back(s);
    }
  if (!seen[0]) {
    seen[0] = 1;
    work.push_back(0);
  }
  for (size_t h = 0; h < work.size(); ++h)
    for (ElemIdx s : gens) {
      ElemIdx z = G.mul(work[h], s);
      if (!seen[z]) {
        seen[z] = 1;
        work.push_back(z);
      }
    }
  std::sort(work.begin(), work.end());
  return work;
}

constexpr size_t kGenReduceThreshold = 12;

}  // namespace

Subgroup subgroup_generated(const GroupTable &G, std::vector<ElemIdx> gens) {
  if (gens.size() <= kGenReduceThreshold) {
    Subgroup out;
    out.members = bfs_span(G, {0}, gens);
    out.gens = std::move(gens);
    return out;
  }
  // large seed list: accept one independent generator at a time, so every
  // BFS runs with a short generator list
  Subgroup out;
  out.members = {0};
  for (ElemIdx s : gens) {
    if (out.contains(s)) continue;
    out.gens.push_back(s);
    out.members = bfs_span(G, out.members, out.gens);
  }
  return out;
}

Subgroup center(const GroupTable &G) {
  std::vector<ElemIdx> members, gens;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    bool central = true;
    for (ElemIdx s : G.generators())
      if (G.mul(x, s) != G.mul(s, x)) {
        central = false;
        break;
      }
    if (central) members.push_back(x);
  }
  Subgroup z{std::move(members), {}};
  z.gens = z.members;  // cheap and valid; callers rarely need minimal gens here
  return z;
}

Subgroup centralizer(const GroupTable &G, const std::vector<ElemIdx> &set) {
  std::vector<ElemIdx> members;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    bool ok = true;
    for (ElemIdx s : set)
      if (G.mul(x, s) != G.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(x);
  }
  Subgroup c{std::move(members), {}};
  c.gens = c.members;
  return c;
}

namespace {

bool conjugates_into(const GroupTable &G, const Subgroup &H, ElemIdx g) {
  // g H g^-1 subset of H, enough on generators since orders match
  for (ElemIdx s : H.gens)
    if (!H.contains(G.conj(g, s))) return false;
  return true;
}

}  // namespace

Subgroup normalizer(const GroupTable &G, const Subgroup &H) {
  std::vector<ElemIdx> members;
  for (ElemIdx g = 0; g < G.order(); ++g)
    if (conjugates_into(G, H, g)) members.push_back(g);
  Subgroup n{std::move(members), {}};
  n.gens = n.members;
  return n;
}

bool is_normal(const GroupTable &G, const Subgroup &H) {
  for (ElemIdx g : G.generators())
    if (!conjugates_into(G, H, g)) return false;
  return true;
}

Subgroup conjugate_subgroup(const GroupTable &G, const Subgroup &H, ElemIdx g) {
  Subgroup out;
  out.members.reserve(H.members.size());
  ElemIdx gi = G.inv(g);
  for (ElemIdx m : H.members) out.members.push_back(G.mul(G.mul(g, m), gi));
  std::sort(out.members.begin(), out.members.end());
  for (ElemIdx s : H.gens) out.gens.push_back(G.mul(G.mul(g, s), gi));
  return out;
}

// Each round either terminates or at least doubles the subgroup, so there are
// at most log2 |G| spans, every one with a reduced generator list.
Subgroup conjugation_closure(const GroupTable &G, const std::vector<ElemIdx> &seed,
                             const std::vector<ElemIdx> &conj) {
  Subgroup S = subgroup_generated(G, seed);
  while (true) {
    std::vector<ElemIdx> extra;
    for (ElemIdx g : conj) {
      ElemIdx gi = G.inv(g);
      for (ElemIdx s : S.gens) {
        ElemIdx c1 = G.conj(g, s);
        if (!S.contains(c1)) extra.push_back(c1);
        ElemIdx c2 = G.conj(gi, s);
        if (!S.contains(c2)) extra.push_back(c2);
      }
    }
    if (extra.empty()) return S;
    std::vector<ElemIdx> gens = S.gens;
    gens.insert(gens.end(), extra.begin(), extra.end());
    S = subgroup_generated(G, gens);
  }
}

Subgroup normal_closure(const GroupTable &G, const std::vector<ElemIdx> &set) {
  return conjugation_closure(G, set, G.generators());
}

Subgroup subgroup_meet(const GroupTable &, const Subgroup &A, const Subgroup &B) {
  Subgroup out;
  std::set_intersection(A.members.begin(), A.members.end(), B.members.begin(),
                        B.members.end(), std::back_inserter(out.members));
  out.gens = out.members;
  return out;
}

Subgroup subgroup_join(const GroupTable &G, const Subgroup &A, const Subgroup &B) {
  std::vector<ElemIdx> gens = A.gens;
  gens.insert(gens.end(), B.gens.begin(), B.gens.end());
  return subgroup_generated(G, gens);
}

Subgroup power_subgroup(const GroupTable &G, const Subgroup &H, uint64_t e) {
  std::vector<ElemIdx> gens;
  std::vector<char> seen(G.order(), 0);
  for (ElemIdx m : H.members) {
    ElemIdx y = G.power(m, int64_t(e));
    if (!seen[y]) {
      seen[y] = 1;
      gens.push_back(y);
    }
  }
  return subgroup_generated(G, gens);
}

Subgroup derived_subgroup(const GroupTable &G, const Subgroup &H) {
  // [H,H] is the H-normal closure of the generator commutators
  std::vector<ElemIdx> comms;
  for (ElemIdx a : H.gens)
    for (ElemIdx b : H.gens) {
      ElemIdx c = G.commutator(a, b);
      if (c != 0 && std::find(comms.begin(), comms.end(), c) == comms.end())
        comms.push_back(c);
    }
  if (comms.empty()) return trivial_subgroup();
  return conjugation_closure(G, comms, H.gens);
}

Subgroup frattini_subgroup(const GroupTable &G) {
  if (!G.is_p_group()) throw BadInput("frattini_subgroup: p-groups only");
  if (G.order() == 1) return trivial_subgroup();
  Subgroup d = derived_subgroup(G, whole_group(G));
  std::vector<ElemIdx> gens = d.gens;
  std::vector<char> seen(G.order(), 0);
  for (ElemIdx g : gens) seen[g] = 1;
  uint32_t p = G.prime();
  for (ElemIdx x = 0; x < G.order(); ++x) {
    ElemIdx y = G.power(x, p);
    if (!seen[y]) {
      seen[y] = 1;
      gens.push_back(y);
    }
  }
  return subgroup_generated(G, gens);
}

std::vector<Subgroup> maximal_subgroups(const GroupTable &G) {
  if (!G.is_p_group() || G.order() == 1)
    throw BadInput("maximal_subgroups: non-trivial p-groups only");
  Subgroup phi = frattini_subgroup(G);
  uint32_t p = G.prime();

  // Lift each hyperplane of the F_p-space G/Phi(G).  A hyperplane is the span
  // of all but one vector of a basis twisted by scalars, so enumerate the
  // index-p subgroups as kernels of the non-trivial characters up to scalar.
  std::vector<ElemIdx> basis;  // elements spanning G mod Phi
  Subgroup span = phi;
  for (ElemIdx x = 0; x < G.order() && span.order() < G.order(); ++x) {
    if (span.contains(x)) continue;
    std::vector<ElemIdx> g2 = span.gens;
    g2.push_back(x);
    span = subgroup_generated(G, g2);
    basis.push_back(x);
  }
  size_t d = basis.size();

  // characters chi: F_p^d -> F_p up to scalar, first nonzero coefficient = 1
  std::vector<std::vector<uint32_t>> chis;
  std::vector<uint32_t> chi(d, 0);
  while (true) {
    size_t i = 0;
    while (i < d && chi[i] == p - 1) chi[i++] = 0;
    if (i == d) break;
    ++chi[i];
    size_t lead = 0;
    while (lead < d && chi[lead] == 0) ++lead;
    if (lead < d && chi[lead] == 1) chis.push_back(chi);
  }

  std::vector<Subgroup> out;
  for (const auto &c : chis) {
    size_t lead = 0;
    while (c[lead] == 0) ++lead;  // c[lead] == 1 by normalization
    // kernel basis: e_i - c_i e_lead for i != lead
    std::vector<ElemIdx> gens = phi.gens;
    for (size_t i = 0; i < d; ++i) {
      if (i == lead) continue;
      gens.push_back(G.mul(basis[i], G.power(basis[lead], int64_t(p - c[i]))));
    }
    Subgroup m = subgroup_generated(G, gens);
    if (m.order() * p != G.order())
      throw ConsistencyError("maximal_subgroups: bad hyperplane lift");
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const Subgroup &a, const Subgroup &b) { return a.members < b.members; });
  return out;
}

}  // namespace ilab

#include "intenselab/intensity.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>

#include "intenselab/constructions.hpp"

namespace ilab {

namespace {

uint64_t member_hash(const std::vector<ElemIdx> &v) {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
  for (ElemIdx x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

uint32_t Automorphism::order() const {
  // lcm of cycle lengths
  std::vector<char> seen(perm.size(), 0);
  uint64_t ord = 1;
  for (ElemIdx s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    uint64_t len = 0;
    ElemIdx x = s;
    while (!seen[x]) {
      seen[x] = 1;
      x = perm[x];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return uint32_t(ord);
}

namespace {

// Extension + certification without the Frattini scalar; used both by the
// public constructor and the inner search loop.
bool extend_and_certify(const GroupTable &G, const std::vector<ElemIdx> &images,
                        std::vector<ElemIdx> &perm, std::vector<char> &hit,
                        std::string *why) {
  const uint32_t n = G.order();
  const auto &pw = G.parent_words();
  perm.resize(n);
  perm[0] = 0;
  for (ElemIdx x = 1; x < n; ++x)
    perm[x] = G.mul(perm[pw[x].parent], images[pw[x].gen]);

  hit.assign(n, 0);
  for (ElemIdx x = 0; x < n; ++x) {
    if (hit[perm[x]]) {
      if (why) *why = "images do not extend to a bijection";
      return false;
    }
    hit[perm[x]] = 1;
  }

  const auto &gens = G.generators();
  for (ElemIdx x = 0; x < n; ++x)
    for (uint32_t gi = 0; gi < gens.size(); ++gi)
      if (perm[G.mul(x, gens[gi])] != G.mul(perm[x], images[gi])) {
        if (why) *why = "images do not extend to a homomorphism";
        return false;
      }
  return true;
}

}  // namespace

Automorphism automorphism_from_generator_images(const GroupTable &G,
                                                const std::vector<ElemIdx> &images) {
  if (images.size() != G.generators().size())
    throw BadInput("automorphism: one image per generator required");
  Automorphism a;
  a.gen_images = images;
  std::vector<char> hit;
  std::string why;
  if (!extend_and_certify(G, images, a.perm, hit, &why)) {
    if (why.find("bijection") != std::string::npos) throw NotBijective(why);
    throw NotAHomomorphism(why);
  }
  if (G.is_p_group() && G.order() > 1)
    a.frattini_scalar = frattini_scalar_of_images(G, frattini_subgroup(G), images);
  return a;
}

std::optional<uint32_t> frattini_scalar_of_images(const GroupTable &G,
                                                  const Subgroup &phi,
                                                  const std::vector<ElemIdx> &images) {
  uint32_t p = G.prime();
  const auto &gens = G.generators();
  for (uint32_t lam = 1; lam < p; ++lam) {
    bool ok = true;
    for (uint32_t gi = 0; gi < gens.size() && ok; ++gi)
      ok = phi.contains(G.mul(images[gi], G.inv(G.power(gens[gi], lam))));
    if (ok) return lam;
  }
  return std::nullopt;
}

IntenseChecker::IntenseChecker(GroupPtr G, const AllSubgroupsOptions &opts)
    : G_(std::move(G)) {
  subs_ = all_subgroups(*G_, opts);
  classes_ = subgroup_conjugacy_classes(*G_, subs_);
  class_of_.assign(subs_.size(), 0);
  for (uint32_t c = 0; c < classes_.size(); ++c)
    for (uint32_t s : classes_[c].members) class_of_[s] = c;
  index_by_hash_.reserve(subs_.size() * 2);
  for (uint32_t i = 0; i < subs_.size(); ++i)
    index_by_hash_[member_hash(subs_[i].members)].push_back(i);
}

std::optional<uint32_t> IntenseChecker::find_subgroup(
    const std::vector<ElemIdx> &members) const {
  auto it = index_by_hash_.find(member_hash(members));
  if (it == index_by_hash_.end()) return std::nullopt;
  for (uint32_t i : it->second)
    if (subs_[i].members == members) return i;
  return std::nullopt;
}

bool IntenseChecker::is_intense(const std::vector<ElemIdx> &perm) const {
  std::vector<ElemIdx> image;
  for (const SubgroupClass &cls : classes_) {
    const Subgroup &H = subs_[cls.representative];
    image.clear();
    image.reserve(H.members.size());
    for (ElemIdx m : H.members) image.push_back(perm[m]);
    std::sort(image.begin(), image.end());
    auto idx = find_subgroup(image);
    if (!idx) throw ConsistencyError("is_intense: image subgroup not in list");
    if (class_of_[*idx] != class_of_[cls.representative]) return false;
  }
  return true;
}

bool is_intense(const GroupTable &, const IntenseChecker &ctx,
                const Automorphism &alpha) {
  return ctx.is_intense(alpha.perm);
}

std::string element_word(const GroupTable &G, ElemIdx x) {
  if (x == 0) return "1";
  // collect the generator trail from the parent-word chain
  std::vector<uint32_t> trail;
  while (x != 0) {
    trail.push_back(G.parent_words()[x].gen);
    x = G.parent_words()[x].parent;
  }
  std::reverse(trail.begin(), trail.end());
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < trail.size()) {
    size_t j = i;
    while (j < trail.size() && trail[j] == trail[i]) ++j;
    if (!first) os << "*";
    os << "g" << trail[i];
    if (j - i > 1) os << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

namespace {

std::vector<ElemIdx> minimal_generators(const GroupTable &G, const Subgroup &phi) {
  std::vector<ElemIdx> gens;
  Subgroup span = phi;
  for (ElemIdx x = 0; x < G.order() && span.order() < G.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    std::vector<ElemIdx> g2 = span.gens;
    g2.push_back(x);
    span = subgroup_generated(G, g2);
  }
  if (span.order() != G.order())
    throw ConsistencyError("minimal_generators: span never reached G");
  return gens;
}

struct SearchShared {
  const GroupTable *H;
  const Subgroup *phi;
  std::vector<ElemIdx> lam_powers;  // g_i^lambda
  std::vector<uint32_t> gen_orders;
  const IntenseChecker *checker;
  uint32_t d = 0;
  uint64_t total = 0;
};

// Evaluate one candidate tuple; returns true when it is a certified intense
// automorphism.  perm/hit/images are scratch buffers.
bool try_candidate(const SearchShared &sh, uint64_t tuple,
                   std::vector<ElemIdx> &images, std::vector<ElemIdx> &perm,
                   std::vector<char> &hit, uint64_t &validated) {
  const GroupTable &H = *sh.H;
  const auto &phiM = sh.phi->members;
  const uint64_t base = phiM.size();
  images.resize(sh.d);
  uint64_t rem = tuple;
  for (uint32_t i = sh.d; i-- > 0;) {
    images[i] = H.mul(sh.lam_powers[i], phiM[rem % base]);
    rem /= base;
  }
  for (uint32_t i = 0; i < sh.d; ++i)
    if (H.element_order(images[i]) != sh.gen_orders[i]) return false;
  if (!extend_and_certify(H, images, perm, hit, nullptr)) return false;
  ++validated;
  bool id = true;
  for (ElemIdx x = 0; x < H.order() && id; ++x) id = perm[x] == x;
  if (id) return true;
  return sh.checker->is_intense(perm);
}

}  // namespace

IntensityReport intensity(GroupPtr G, const IntensityOptions &opts) {
  auto t0 = std::chrono::steady_clock::now();
  IntensityReport rep;
  rep.order = G->order();
  if (G->order() == 1) {
    rep.p = 0;
    rep.realized_scalars = {1};
    rep.intensity = 1;
    return rep;
  }
  if (!G->is_p_group()) throw BadInput("intensity: p-groups only");
  const uint32_t p = G->prime();
  rep.p = p;

  // Re-intern on a minimal generating set so the coset search space is
  // |Phi|^d with d = dim G/Phi(G).
  Subgroup phi0 = frattini_subgroup(*G);
  std::vector<ElemIdx> mingens = minimal_generators(*G, phi0);
  for (ElemIdx g : mingens) rep.generator_words.push_back(element_word(*G, g));
  std::vector<uint64_t> seeds(mingens.begin(), mingens.end());
  GroupPtr H = GroupTable::closure(std::make_shared<IndexAmbient>(G), seeds);
  if (H->order() != G->order())
    throw ConsistencyError("intensity: minimal generators do not span");

  Subgroup phi = frattini_subgroup(*H);
  const uint32_t d = uint32_t(H->generators().size());
  rep.num_generators = d;

  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) {
    total *= phi.order();
    if (total > opts.candidate_budget)
      throw CapacityExceeded("intensity: |Phi|^d exceeds the candidate budget");
  }

  SearchShared sh;
  sh.H = H.get();
  sh.phi = &phi;
  sh.d = d;
  sh.total = total;
  sh.gen_orders.reserve(d);
  for (ElemIdx g : H->generators()) sh.gen_orders.push_back(H->element_order(g));

  std::unique_ptr<IntenseChecker> checker;  // built on first need
  auto ensure_checker = [&] {
    if (!checker) checker = std::make_unique<IntenseChecker>(H, opts.subgroup_opts);
    sh.checker = checker.get();
  };

  const unsigned threads = std::max(1u, opts.threads);
  const uint64_t chunk = 8192;

  for (uint32_t lam = 1; lam < p; ++lam) {
    if (opts.time_budget_seconds > 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (el > opts.time_budget_seconds) {
        rep.budget_exhausted = true;
        break;
      }
    }
    sh.lam_powers.clear();
    for (ElemIdx g : H->generators()) sh.lam_powers.push_back(H->power(g, lam));

    // lambda = 1, tuple 0 is the identity automorphism: trivially intense.
    std::optional<uint64_t> found;
    std::vector<ElemIdx> found_images;
    if (lam == 1) {
      found = 0;
      found_images = H->generators();
      ++rep.candidates_examined;
      ++rep.candidates_validated;
    } else {
      ensure_checker();
    }

    for (uint64_t begin = 0; !found && begin < total; begin += chunk) {
      if (opts.time_budget_seconds > 0) {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (el > opts.time_budget_seconds) {
          rep.budget_exhausted = true;
          break;
        }
      }
      const uint64_t end = std::min(total, begin + chunk);
      // deterministic parallel scan: the minimal valid tuple in the chunk
      // wins no matter how many workers scanned it
      std::atomic<uint64_t> best{uint64_t(-1)};
      std::atomic<uint64_t> examined{0}, validated{0};
      // every tuple of the chunk is evaluated, so the counters and the
      // minimal witness are independent of the thread count
      auto worker = [&](unsigned w) {
        std::vector<ElemIdx> images, perm;
        std::vector<char> hit;
        uint64_t my_validated = 0, my_examined = 0;
        for (uint64_t tdx = begin + w; tdx < end; tdx += threads) {
          ++my_examined;
          if (try_candidate(sh, tdx, images, perm, hit, my_validated)) {
            uint64_t cur = best.load();
            while (tdx < cur && !best.compare_exchange_weak(cur, tdx)) {
            }
          }
        }
        examined += my_examined;
        validated += my_validated;
      };
      if (threads == 1) {
        worker(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto &th : pool) th.join();
      }
      rep.candidates_examined += examined.load();
      rep.candidates_validated += validated.load();
      if (best.load() != uint64_t(-1)) found = best.load();
    }

    if (found && found_images.empty()) {
      // reconstruct the winning tuple
      std::vector<ElemIdx> images(d);
      uint64_t rem = *found;
      for (uint32_t i = d; i-- > 0;) {
        images[i] = H->mul(sh.lam_powers[i], phi.members[rem % phi.order()]);
        rem /= phi.order();
      }
      found_images = images;
    }
    if (found) {
      ScalarWitness w;
      w.scalar = lam;
      w.gen_images = found_images;
      for (ElemIdx im : found_images) w.gen_words.push_back(element_word(*H, im));
      rep.witnesses.push_back(std::move(w));
      rep.realized_scalars.push_back(lam);
    }
  }

  std::sort(rep.realized_scalars.begin(), rep.realized_scalars.end());
  rep.intensity = uint32_t(rep.realized_scalars.size());

  // the image of a character is a subgroup of F_p^*
  auto realized = [&](uint32_t v) {
    return std::binary_search(rep.realized_scalars.begin(),
                              rep.realized_scalars.end(), v);
  };
  if (!rep.budget_exhausted) {
    if (!realized(1)) throw ConsistencyError("intensity: scalar 1 not realized");
    for (uint32_t a : rep.realized_scalars)
      for (uint32_t b : rep.realized_scalars)
        if (!realized(a * b % p))
          throw ConsistencyError("intensity: realized scalars not a subgroup");
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

bool minus_one_powers_check(const GroupTable &G, const SeriesData &S,
                            const Automorphism &alpha) {
  if (alpha.order() != 2) throw BadInput("minus_one_powers_check: order 2 required");
  if (S.cls < 3) throw BadInput("minus_one_powers_check: class >= 3 required");
  for (uint32_t i = 1; i <= S.cls; ++i) {
    const Subgroup &Gi = S.term(i);
    const Subgroup &Gi1 = S.term(i + 1);
    for (ElemIdx x : Gi.members) {
      // alpha(x) = x^{(-1)^i} mod G_{i+1}
      ElemIdx target = i % 2 == 1 ? G.inv(x) : x;
      if (!Gi1.contains(G.mul(alpha.perm[x], G.inv(target)))) return false;
    }
  }
  return true;
}

}  // namespace ilab

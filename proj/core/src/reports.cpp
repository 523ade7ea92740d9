#include "intenselab/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "intenselab/kappa.hpp"
#include "intenselab/series.hpp"
#include "intenselab/snapshot.hpp"

namespace ilab {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::optional<std::string> cache_dir_from_env() {
  const char *dir = std::getenv("INTENSITY_LAB_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::string(dir);
}

namespace {

std::string hash_hex(uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string cache_path(const std::string &dir, const GroupSpec &spec) {
  return dir + "/" + hash_hex(spec.content_hash()) + ".igrp";
}

}  // namespace

BuiltGroup load_or_build(const GroupSpec &spec, const RunConfig &config) {
  auto dir = cache_dir_from_env();
  if (dir) {
    fs::create_directories(*dir);
    std::string path = cache_path(*dir, spec);
    if (fs::exists(path)) {
      SnapshotLoad snap = snapshot_load(path);
      if (snap.group) {
        BuiltGroup out;
        out.group = snap.group;
        out.family = kind_name(spec.kind) + " (cached)";
        return out;
      }
      // descriptor snapshot: fall through and rebuild
    }
  }
  BuiltGroup built = build_group(spec);
  if (built.group->order() > config.max_group_order)
    throw CapacityExceeded("group order exceeds the configured bound");
  if (dir) snapshot_save(cache_path(*dir, spec), *built.group,
                         spec.canonical_string());
  return built;
}

int cache_clear() {
  auto dir = cache_dir_from_env();
  if (!dir) return 0;
  int removed = 0;
  if (!fs::exists(*dir)) return 0;
  for (const auto &e : fs::directory_iterator(*dir))
    if (e.path().extension() == ".igrp") {
      fs::remove(e.path());
      ++removed;
    }
  return removed;
}

namespace {

ojson subgroup_orders_json(const std::vector<Subgroup> &terms) {
  ojson arr = ojson::array();
  for (const auto &t : terms) arr.push_back(t.order());
  return arr;
}

}  // namespace

nlohmann::ordered_json analyze_report(const GroupSpec &spec, const RunConfig &config) {
  auto t0 = std::chrono::steady_clock::now();
  BuiltGroup built = load_or_build(spec, config);
  const GroupTable &G = *built.group;

  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = "analyze";
  j["spec"] = spec.to_json();
  j["fingerprint"] = hash_hex(spec.content_hash());
  j["family"] = built.family;
  j["order"] = G.order();
  j["prime"] = G.prime();

  SeriesData S = series(G);
  j["class"] = S.cls;
  j["widths"] = S.widths;
  j["series"] = ojson{{"lower_central", subgroup_orders_json(S.lcs)},
                      {"p_central", subgroup_orders_json(S.pcs)},
                      {"derived", subgroup_orders_json(S.derived)},
                      {"frattini_order", S.frattini.order()}};
  j["center_order"] = center(G).order();

  ojson preds;
  preds["abelian"] = is_abelian(G);
  preds["extraspecial"] = is_extraspecial(G, S);
  preds["kappa_group"] = is_kappa_group(G, S);
  bool obelisk = is_obelisk(G, S);
  preds["obelisk"] = obelisk;
  preds["framed"] = obelisk ? ojson(is_framed(G, S)) : ojson(nullptr);
  preds["lines_criterion"] =
      obelisk && S.cls >= 3 ? ojson(lines_criterion(G, S)) : ojson(nullptr);
  RegularityReport reg = is_regular(G, config.seed);
  preds["regular"] = ojson{{"value", reg.regular}, {"sampled", reg.sampled}};
  j["predicates"] = preds;
  j["seed"] = config.seed;
  if (config.with_timing)
    j["timing_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return j;
}

nlohmann::ordered_json intensity_report_json(const GroupSpec &spec,
                                             const RunConfig &config) {
  BuiltGroup built = load_or_build(spec, config);
  IntensityOptions opts;
  opts.candidate_budget = config.candidate_budget;
  opts.threads = config.threads;
  opts.subgroup_opts.max_subgroups = config.max_subgroups;
  IntensityReport rep = intensity(built.group, opts);

  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = "intensity";
  j["spec"] = spec.to_json();
  j["fingerprint"] = hash_hex(spec.content_hash());
  j["order"] = rep.order;
  j["prime"] = rep.p;
  j["generators"] = ojson{{"count", rep.num_generators},
                          {"words", rep.generator_words}};
  j["realized_scalars"] = rep.realized_scalars;
  j["intensity"] = rep.intensity;
  ojson ws = ojson::array();
  for (const auto &w : rep.witnesses)
    ws.push_back(ojson{{"scalar", w.scalar},
                       {"images", w.gen_images},
                       {"words", w.gen_words}});
  j["witnesses"] = ws;
  j["candidates"] = ojson{{"examined", rep.candidates_examined},
                          {"validated", rep.candidates_validated}};
  j["seed"] = config.seed;
  if (config.with_timing) j["timing_seconds"] = rep.seconds;
  return j;
}

nlohmann::ordered_json subgroups_report(const GroupSpec &spec,
                                        const RunConfig &config,
                                        bool classes_only) {
  BuiltGroup built = load_or_build(spec, config);
  const GroupTable &G = *built.group;
  AllSubgroupsOptions opts;
  opts.max_subgroups = config.max_subgroups;
  auto subs = all_subgroups(G, opts);

  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = "subgroups";
  j["spec"] = spec.to_json();
  j["fingerprint"] = hash_hex(spec.content_hash());
  j["order"] = G.order();
  j["subgroup_count"] = subs.size();

  std::map<uint32_t, uint32_t> by_order;
  for (const auto &s : subs) ++by_order[s.order()];
  ojson bo;
  for (auto &[o, c] : by_order) bo[std::to_string(o)] = c;
  j["by_order"] = bo;

  auto classes = subgroup_conjugacy_classes(G, subs);
  j["class_count"] = classes.size();
  if (classes_only || subs.size() <= 512) {
    ojson cl = ojson::array();
    for (const auto &c : classes) {
      const Subgroup &rep = subs[c.representative];
      cl.push_back(ojson{{"order", rep.order()},
                         {"class_size", c.members.size()},
                         {"representative_gens", rep.gens}});
    }
    j["classes"] = cl;
  }
  return j;
}

// ---- markdown --------------------------------------------------------------

namespace {

void render_value(std::ostringstream &os, const ojson &v) {
  if (v.is_object() || v.is_array())
    os << v.dump();
  else if (v.is_string())
    os << v.get<std::string>();
  else
    os << v.dump();
}

}  // namespace

std::string render_markdown(const nlohmann::ordered_json &report) {
  std::ostringstream os;
  std::string title = report.contains("command")
                          ? report["command"].get<std::string>()
                          : "report";
  os << "# " << title << " report\n\n";
  os << "| field | value |\n|---|---|\n";
  for (auto it = report.begin(); it != report.end(); ++it) {
    os << "| " << it.key() << " | ";
    render_value(os, it.value());
    os << " |\n";
  }
  return os.str();
}

// ---- verification oracle ----------------------------------------------------

namespace {

// Subgroup list by join-closure of cyclic subgroups; independent of the
// layered cyclic-extension enumeration.
std::vector<std::vector<ElemIdx>> join_closure_subgroups(const GroupTable &G) {
  std::set<std::vector<ElemIdx>> pool;
  pool.insert({0});
  for (ElemIdx x = 1; x < G.order(); ++x) {
    std::vector<ElemIdx> cyc;
    ElemIdx y = x;
    cyc.push_back(0);
    while (y != 0) {
      cyc.push_back(y);
      y = G.mul(y, x);
    }
    std::sort(cyc.begin(), cyc.end());
    pool.insert(cyc);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<ElemIdx>> cur(pool.begin(), pool.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<ElemIdx> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        Subgroup join = subgroup_generated(G, gens);
        if (pool.insert(join.members).second) grew = true;
      }
  }
  return {pool.begin(), pool.end()};
}

std::vector<ElemIdx> oracle_minimal_generators(const GroupTable &G) {
  Subgroup phi = frattini_subgroup(G);
  Subgroup span = phi;
  std::vector<ElemIdx> gens;
  for (ElemIdx x = 0; x < G.order() && span.order() < G.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    auto g2 = span.gens;
    g2.push_back(x);
    span = subgroup_generated(G, g2);
  }
  return gens;
}

}  // namespace

std::vector<uint32_t> verify_oracle_realized_scalars(GroupPtr G0) {
  if (G0->order() == 1) return {1};
  if (G0->order() > 81) throw BadInput("oracle: |G| <= 81 only");
  const uint32_t p = G0->prime();

  // re-intern on minimal generators so image tuples determine automorphisms
  std::vector<ElemIdx> mingens = oracle_minimal_generators(*G0);
  std::vector<uint64_t> seeds(mingens.begin(), mingens.end());
  GroupPtr H = GroupTable::closure(std::make_shared<IndexAmbient>(G0), seeds);
  const GroupTable &G = *H;
  const uint32_t n = G.order();
  const uint32_t d = uint32_t(G.generators().size());

  auto subs = join_closure_subgroups(G);
  // conjugate sets, precomputed per subgroup
  std::vector<std::set<std::vector<ElemIdx>>> conj_sets(subs.size());
  for (size_t si = 0; si < subs.size(); ++si) {
    Subgroup s;
    s.members = subs[si];
    s.gens = subs[si];
    for (ElemIdx g = 0; g < n; ++g)
      conj_sets[si].insert(conjugate_subgroup(G, s, g).members);
  }

  Subgroup phi = frattini_subgroup(G);
  std::set<uint32_t> realized;

  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= n;
  std::vector<ElemIdx> images(d), perm;
  std::vector<char> hit;
  for (uint64_t tuple = 0; tuple < total; ++tuple) {
    uint64_t rem = tuple;
    for (uint32_t i = d; i-- > 0;) {
      images[i] = ElemIdx(rem % n);
      rem /= n;
    }
    Automorphism a;
    try {
      a = automorphism_from_generator_images(G, images);
    } catch (const NotAHomomorphism &) {
      continue;
    } catch (const NotBijective &) {
      continue;
    }
    bool intense = true;
    for (size_t si = 0; si < subs.size() && intense; ++si) {
      std::vector<ElemIdx> image;
      image.reserve(subs[si].size());
      for (ElemIdx m : subs[si]) image.push_back(a.perm[m]);
      std::sort(image.begin(), image.end());
      intense = conj_sets[si].count(image) > 0;
    }
    if (!intense) continue;
    auto lam = frattini_scalar_of_images(G, phi, images);
    if (!lam)
      throw ConsistencyError("oracle: intense automorphism without scalar action");
    realized.insert(*lam);
  }
  (void)p;
  return {realized.begin(), realized.end()};
}

// ---- verification runner -----------------------------------------------------

namespace {

struct Harness {
  VerifySummary *summary;
  std::function<void(const CheckResult &)> on_check;
  std::chrono::steady_clock::time_point start;
  double budget_seconds;
  unsigned threads = 1;

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
  double remaining() const { return budget_seconds - elapsed(); }

  void run(const std::string &id, const std::string &module,
           const std::string &claim, double budget, const std::string &only,
           const std::function<void(CheckResult &)> &body) {
    if (!only.empty() && module.rfind(only, 0) != 0) return;
    CheckResult r;
    r.id = id;
    r.module = module;
    r.claim = claim;
    r.budget_seconds = budget;
    if (remaining() <= 0) {
      r.skipped = true;
      r.skip_reason = "budget";
      finish(r);
      return;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception &e) {
      r.pass = false;
      r.computed = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.skipped && r.pass && r.seconds > r.budget_seconds) {
      r.pass = false;
      r.computed += " (over budget " + std::to_string(r.budget_seconds) + "s)";
    }
    finish(r);
  }

  void finish(CheckResult &r) {
    if (on_check) on_check(r);
    summary->checks.push_back(std::move(r));
  }
};

std::string widths_str(const std::vector<uint32_t> &w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i)
    s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

uint32_t run_intensity_value(GroupPtr g, unsigned threads) {
  IntensityOptions o;
  o.threads = threads;
  return intensity(std::move(g), o).intensity;
}

// failing lines of the span criterion, as indices into maximal_subgroups(G)
std::vector<size_t> failing_lines(const GroupTable &G, const SeriesData &S) {
  std::vector<size_t> out;
  auto maxima = maximal_subgroups(G);
  const Subgroup &G2 = S.term(2);
  const Subgroup &G3 = S.term(3);
  const Subgroup &G4 = S.term(4);
  ElemIdx y = 0;
  for (ElemIdx e : G2.members)
    if (!G3.contains(e)) {
      y = e;
      break;
    }
  for (size_t mi = 0; mi < maxima.size(); ++mi) {
    ElemIdx x = 0;
    for (ElemIdx e : maxima[mi].members)
      if (!G2.contains(e)) {
        x = e;
        break;
      }
    std::vector<ElemIdx> gens = G4.gens;
    gens.push_back(G.power(x, G.prime()));
    gens.push_back(G.commutator(x, y));
    if (subgroup_generated(G, gens).order() != G3.order()) out.push_back(mi);
  }
  return out;
}

}  // namespace

VerifySummary run_verification(const VerifyOptions &opts,
                               std::function<void(const CheckResult &)> on_check) {
  VerifySummary summary;
  Harness h;
  h.summary = &summary;
  h.on_check = std::move(on_check);
  h.start = std::chrono::steady_clock::now();
  h.budget_seconds = opts.budget_minutes * 60.0;
  h.threads = opts.threads;
  const std::string &only = opts.only;

  // shared builds, created on first use
  GroupPtr yo;
  auto get_yo = [&] {
    if (!yo) yo = build_yo();
    return yo;
  };

  h.run("yo.invariants", "yo",
        "claim: order 729, class 4, widths (2,1,2,1), Z = G4 of order 3, "
        "G2 elementary abelian of order 81, kappa-group, not regular",
        10.0, only, [&](CheckResult &r) {
          GroupPtr G = get_yo();
          SeriesData S = series(*G);
          Subgroup Z = center(*G);
          const Subgroup &G2 = S.term(2);
          bool g2_elem_ab = G2.order() == 81;
          for (ElemIdx x : G2.members)
            g2_elem_ab = g2_elem_ab && G->power(x, 3) == 0;
          for (ElemIdx x : G2.gens)
            for (ElemIdx y2 : G2.gens)
              g2_elem_ab = g2_elem_ab && G->mul(x, y2) == G->mul(y2, x);
          bool kappa = is_kappa_group(*G, S);
          RegularityReport reg = is_regular(*G);
          r.expected = "729 / 4 / (2,1,2,1) / Z=G4 |Z|=3 / G2 elem ab 81 / "
                       "kappa / not regular";
          std::ostringstream c;
          c << G->order() << " / " << S.cls << " / " << widths_str(S.widths)
            << " / Z" << (Z.members == S.term(4).members ? "=G4" : "!=G4")
            << " |Z|=" << Z.order() << " / "
            << (g2_elem_ab ? "G2 elem ab 81" : "G2 not elem ab") << " / "
            << (kappa ? "kappa" : "not kappa") << " / "
            << (reg.regular ? "regular" : "not regular");
          r.computed = c.str();
          r.pass = G->order() == 729 && S.cls == 4 &&
                   S.widths == std::vector<uint32_t>{2, 1, 2, 1} &&
                   Z.members == S.term(4).members && Z.order() == 3 &&
                   g2_elem_ab && kappa && !reg.regular;
        });

  h.run("yo.intensity", "intensity",
        "claim: intensity(Y) = 2 with the inversion-on-generators witness "
        "intense, Frattini scalar -1, and (-1)^i action on every layer",
        300.0, only, [&](CheckResult &r) {
          GroupPtr G = get_yo();
          IntensityOptions io;
          io.threads = h.threads;
          IntensityReport rep = intensity(G, io);
          SeriesData S = series(*G);
          std::vector<ElemIdx> inv_images;
          for (ElemIdx g : G->generators()) inv_images.push_back(G->inv(g));
          Automorphism alpha = automorphism_from_generator_images(*G, inv_images);
          IntenseChecker checker(G);
          bool intense = checker.is_intense(alpha.perm);
          bool scalar_ok = alpha.frattini_scalar && *alpha.frattini_scalar == 2;
          bool order2 = alpha.order() == 2;
          bool minus_ok = order2 && minus_one_powers_check(*G, S, alpha);
          r.expected = "intensity 2, realized {1,2}; witness intense, scalar 2, "
                       "order 2, (-1)^i layers ok";
          std::ostringstream c;
          c << "intensity " << rep.intensity << ", realized {";
          for (size_t i = 0; i < rep.realized_scalars.size(); ++i)
            c << (i ? "," : "") << rep.realized_scalars[i];
          c << "}; witness " << (intense ? "intense" : "not intense") << ", scalar "
            << (alpha.frattini_scalar ? std::to_string(*alpha.frattini_scalar)
                                      : "none")
            << ", order " << alpha.order() << ", layers "
            << (minus_ok ? "ok" : "bad");
          r.computed = c.str();
          r.pass = rep.intensity == 2 &&
                   rep.realized_scalars == std::vector<uint32_t>{1, 2} && intense &&
                   scalar_ok && order2 && minus_ok;
        });

  h.run("abelian.battery", "abelian",
        "claim: intensity Z9xZ3 = 2, Z25 = 4, dihedral8 = 1, trivial = 1", 30.0,
        only, [&](CheckResult &r) {
          uint32_t i1 = run_intensity_value(build_abelian(3, {2, 1}), h.threads);
          uint32_t i2 = run_intensity_value(build_abelian(5, {2}), h.threads);
          uint32_t i3 = run_intensity_value(build_semidirect_cyclic(4, 2, 3), h.threads);
          IntensityOptions io;
          auto trivial = GroupTable::closure(
              std::make_shared<TupleAmbient>(std::vector<uint32_t>{1}), {});
          uint32_t i4 = intensity(trivial, io).intensity;
          r.expected = "2 / 4 / 1 / 1";
          r.computed = std::to_string(i1) + " / " + std::to_string(i2) + " / " +
                       std::to_string(i3) + " / " + std::to_string(i4);
          r.pass = i1 == 2 && i2 == 4 && i3 == 1 && i4 == 1;
        });

  h.run("extraspecial.battery", "extraspecial",
        "claim: intensity 27-exp-3 = 2, 125-exp-5 = 4, 125-exp-25 = 1", 180.0,
        only, [&](CheckResult &r) {
          uint32_t i1 = run_intensity_value(build_extraspecial(3, 1, "p"), h.threads);
          uint32_t i2 = run_intensity_value(build_extraspecial(5, 1, "p"), h.threads);
          uint32_t i3 = run_intensity_value(build_extraspecial(5, 1, "p2"), h.threads);
          r.expected = "2 / 4 / 1";
          r.computed = std::to_string(i1) + " / " + std::to_string(i2) + " / " +
                       std::to_string(i3);
          r.pass = i1 == 2 && i2 == 4 && i3 == 1;
        });

  h.run("class3.yo_quotient", "class3", "claim: intensity(Y/Y4) = 2", 60.0, only,
        [&](CheckResult &r) {
          GroupPtr G = get_yo();
          SeriesData S = series(*G);
          auto q = GroupTable::quotient(G, S.term(4));
          uint32_t i = run_intensity_value(q.group, h.threads);
          r.expected = "order 243, intensity 2";
          r.computed = "order " + std::to_string(q.group->order()) +
                       ", intensity " + std::to_string(i);
          r.pass = q.group->order() == 243 && i == 2;
        });

  h.run("kappa.certificate", "kappa",
        "claim: |I_V| = |K_V| = |Lambda| = 3, s_V and l_V bijective, every "
        "lambda is x^5+bx with b(1+b^2) = 0, x^5 present",
        10.0, only, [&](CheckResult &r) {
          auto subfields = kappa::enumerate_subfields();
          auto kappas = kappa::enumerate_kappa_structures();
          auto lambdas = kappa::enumerate_lambda_maps();

          std::set<std::array<kappa::Pt, 9>> sv_images;
          bool sv_into = true;
          for (const auto &k : subfields) {
            auto img = kappa::s_V(k);
            sv_images.insert(img.table);
            sv_into = sv_into &&
                      std::find(kappas.begin(), kappas.end(), img) != kappas.end();
          }
          std::set<std::array<kappa::F9, 9>> lv_images;
          bool lv_into = true;
          for (const auto &k : kappas) {
            auto img = kappa::l_V(k);
            lv_images.insert(img.table);
            lv_into = lv_into &&
                      std::find(lambdas.begin(), lambdas.end(), img) != lambdas.end();
          }

          // every lambda is x^5 + b x with b(1+b^2) = 0
          bool shape_ok = true;
          bool x5_present = false;
          for (const auto &l : lambdas) {
            kappa::F9 b = kappa::f9_add(l.table[1], kappa::f9_neg(kappa::f9_pow(1, 5)));
            kappa::F9 bb = kappa::f9_mul(b, kappa::f9_add(1, kappa::f9_mul(b, b)));
            shape_ok = shape_ok && bb == 0;
            bool matches = true;
            for (kappa::F9 x = 0; x < 9; ++x) {
              kappa::F9 want = kappa::f9_add(kappa::f9_pow(x, 5), kappa::f9_mul(b, x));
              if (l.table[x] != want) {
                matches = false;
                break;
              }
            }
            shape_ok = shape_ok && matches;
            if (b == 0 && matches) x5_present = true;
          }

          r.expected = "3 / 3 / 3, s_V bijective into K_V, l_V bijective into "
                       "Lambda, shapes ok, x^5 present";
          std::ostringstream c;
          c << subfields.size() << " / " << kappas.size() << " / "
            << lambdas.size() << ", s_V " << sv_images.size() << "/"
            << subfields.size() << (sv_into ? " into" : " NOT into") << ", l_V "
            << lv_images.size() << "/" << kappas.size()
            << (lv_into ? " into" : " NOT into") << ", shapes "
            << (shape_ok ? "ok" : "bad") << ", x^5 "
            << (x5_present ? "present" : "missing");
          r.computed = c.str();
          r.pass = subfields.size() == 3 && kappas.size() == 3 &&
                   lambdas.size() == 3 && sv_images.size() == 3 && sv_into &&
                   lv_images.size() == 3 && lv_into && shape_ok && x5_present;
        });

  h.run("sn.tower", "sn",
        "claim: order 3125 with widths (2,1,2) at M=2; class-2/3/4 quotients "
        "are framed 5-obelisks; line criterion agrees with Phi(M) on all 6 "
        "maximal subgroups",
        300.0, only, [&](CheckResult &r) {
          GroupPtr G2 = build_sn_delta(5, 2, 2, std::nullopt);
          SeriesData S2 = series(*G2);
          bool base_ok = G2->order() == 3125 &&
                         S2.widths == std::vector<uint32_t>{2, 1, 2};

          auto q_class2 = GroupTable::quotient(G2, S2.term(3)).group;
          SeriesData Sq2 = series(*q_class2);
          bool c2_ok = Sq2.cls == 2 && is_obelisk(*q_class2, Sq2) &&
                       is_framed(*q_class2, Sq2);

          bool c3_ok = S2.cls == 3 && is_obelisk(*G2, S2) && is_framed(*G2, S2) &&
                       lines_criterion(*G2, S2) &&
                       failing_lines(*G2, S2).empty();

          GroupPtr G4 = build_sn_delta(5, 2, 3, 5);
          SeriesData S4 = series(*G4);
          bool c4_ok = G4->order() == 15625 && S4.cls == 4 &&
                       is_obelisk(*G4, S4) && is_framed(*G4, S4) &&
                       lines_criterion(*G4, S4) && failing_lines(*G4, S4).empty();

          r.expected = "base ok, class2 framed, class3 framed+lines, class4 "
                       "framed+lines";
          std::ostringstream c;
          c << (base_ok ? "base ok" : "base bad") << ", "
            << (c2_ok ? "class2 ok" : "class2 bad") << ", "
            << (c3_ok ? "class3 ok" : "class3 bad") << ", "
            << (c4_ok ? "class4 ok" : "class4 bad");
          r.computed = c.str();
          r.pass = base_ok && c2_ok && c3_ok && c4_ok;
        });

  h.run("sl2.contrast", "sl2",
        "claim: order 5^7 at M=3 with membership filter passing; class >= 3 "
        "quotients are 5-obelisks but not framed, with the line of the upper "
        "unitriangular generator failing (the lower one fails symmetrically)",
        300.0, only, [&](CheckResult &r) {
          GroupPtr G = build_sl2_triangle(5, 3, std::nullopt);
          bool order_ok = G->order() == 78125;

          auto contrast = [&](GroupPtr Q) {
            SeriesData S = series(*Q);
            if (!is_obelisk(*Q, S)) return std::string("not obelisk");
            if (is_framed(*Q, S)) return std::string("framed");
            if (S.cls >= 3 && lines_criterion(*Q, S)) return std::string("lines pass");
            // exactly the two unipotent lines fail: on each of them the p-th
            // power image and the commutator image are collinear
            auto fails = failing_lines(*Q, S);
            if (fails.size() != 2) return std::string("bad failing count");
            auto maxima = maximal_subgroups(*Q);
            ElemIdx b1 = Q->generators()[0];  // image of the B(1) seed
            ElemIdx cp = Q->generators()[1];  // image of the C(p) seed
            bool b1_fails = false, cp_fails = false;
            for (size_t f : fails) {
              b1_fails = b1_fails || maxima[f].contains(b1);
              cp_fails = cp_fails || maxima[f].contains(cp);
            }
            if (!b1_fails) return std::string("B(1) line does not fail");
            if (!cp_fails) return std::string("C(p) line does not fail");
            return std::string("ok");
          };

          GroupPtr q3 = build_sl2_triangle(5, 3, 4);
          GroupPtr q4 = build_sl2_triangle(5, 3, 5);
          std::string s3 = contrast(q3), s4 = contrast(q4), s5 = contrast(G);

          r.expected = "order 78125; class3 ok, class4 ok, class5 ok";
          r.computed = "order " + std::to_string(G->order()) + "; class3 " + s3 +
                       ", class4 " + s4 + ", class5 " + s5;
          r.pass = order_ok && s3 == "ok" && s4 == "ok" && s5 == "ok";
        });

  h.run("properties.suites", "properties",
        "claim: cubing identity on Y/Y4; p-th power congruence on the small "
        "battery; power-abelian identities on Sn/G5; normal squeeze on Y; "
        "cyclic jump parity on Sn/G5; +/- cardinalities for (Y, alpha); "
        "oracle equivalence for the order <= 81 battery",
        300.0, only, [&](CheckResult &r) {
          std::vector<std::string> failures;
          GroupPtr G = get_yo();
          SeriesData S = series(*G);

          // cubing identity on Y/Y4, all pairs
          {
            auto q = GroupTable::quotient(G, S.term(4)).group;
            bool ok = true;
            for (ElemIdx x = 0; x < q->order() && ok; ++x)
              for (ElemIdx y = 0; y < q->order(); ++y) {
                ElemIdx lhs = q->power(q->mul(x, y), 3);
                ElemIdx c =
                    q->commutator(q->mul(x, q->inv(y)), q->commutator(x, y));
                ElemIdx rhs = q->mul(q->mul(q->power(x, 3), q->power(y, 3)), c);
                if (lhs != rhs) {
                  ok = false;
                  break;
                }
              }
            if (!ok) failures.push_back("cubing");
          }

          // (xy)^p = x^p y^p mod G2^p G_p on the battery of order <= 3^6
          {
            std::vector<GroupPtr> battery{
                build_abelian(3, {1, 1}), build_abelian(3, {2, 1}),
                build_abelian(5, {2}),    build_semidirect_cyclic(4, 2, 3),
                build_extraspecial(3, 1, "p"), build_extraspecial(5, 1, "p"),
                build_extraspecial(5, 1, "p2"), build_extraspecial(3, 2, "p"),
                GroupTable::quotient(G, S.term(3)).group,
                GroupTable::quotient(G, S.term(4)).group, G,
                build_sl2_triangle(5, 2, std::nullopt)};
            bool ok = true;
            for (const auto &B : battery) {
              if (B->order() > 729) continue;
              uint32_t p = B->prime();
              SeriesData SB = series(*B);
              Subgroup N = subgroup_join(*B, power_subgroup(*B, SB.term(2), p),
                                         SB.term(p));
              for (ElemIdx x = 0; x < B->order() && ok; ++x)
                for (ElemIdx y = 0; y < B->order(); ++y) {
                  ElemIdx lhs = B->power(B->mul(x, y), p);
                  ElemIdx rhs = B->mul(B->power(x, p), B->power(y, p));
                  if (!N.contains(B->mul(B->inv(rhs), lhs))) {
                    ok = false;
                    break;
                  }
                }
              if (!ok) break;
            }
            if (!ok) failures.push_back("p-power-congruence");
          }

          GroupPtr sn5 = build_sn_delta(5, 2, 3, 5);  // Sn/G5, order 5^6
          {
            if (!power_abelian_report(*sn5).all_hold)
              failures.push_back("power-abelian");
          }

          // normal squeeze on all subgroups of Y
          {
            auto subs = all_subgroups(*G);
            bool ok = true;
            for (const auto &Hsub : subs) {
              bool normal = is_normal(*G, Hsub);
              bool squeezed = false;
              for (uint32_t i = 1; i <= S.cls && !squeezed; ++i) {
                const Subgroup &Gi = S.term(i);
                const Subgroup &Gi1 = S.term(i + 1);
                squeezed =
                    std::includes(Hsub.members.begin(), Hsub.members.end(),
                                  Gi1.members.begin(), Gi1.members.end()) &&
                    std::includes(Gi.members.begin(), Gi.members.end(),
                                  Hsub.members.begin(), Hsub.members.end());
              }
              if (normal != squeezed) {
                ok = false;
                break;
              }
            }
            if (!ok) failures.push_back("normal-squeeze");
          }

          // cyclic subgroup jumps in Sn/G5: same parity, width 1
          {
            SeriesData S5 = series(*sn5);
            bool ok = true;
            std::unordered_set<uint64_t> seen_cyclic;
            for (ElemIdx x = 1; x < sn5->order() && ok; ++x) {
              Subgroup C = subgroup_generated(*sn5, {x});
              uint64_t key = 1469598103934665603ull;
              for (ElemIdx m : C.members) key = (key ^ m) * 1099511628211ull;
              if (!seen_cyclic.insert(key).second) continue;
              JumpProfile jp = jump_profile(*sn5, S5, C);
              for (const auto &j : jp.jumps)
                if (j.width != 1 || j.index % 2 != jp.jumps[0].index % 2) {
                  ok = false;
                  break;
                }
            }
            if (!ok) failures.push_back("cyclic-jumps");
          }

          // +/- cardinalities for (Y, alpha) and the jump formulas
          {
            std::vector<ElemIdx> inv_images;
            for (ElemIdx g : G->generators()) inv_images.push_back(G->inv(g));
            Automorphism alpha = automorphism_from_generator_images(*G, inv_images);
            PlusMinus pm = plus_minus_decomposition(*G, alpha.perm);
            bool ok = pm.plus.order() == 9 && pm.minus.size() == 81;
            auto subs = all_subgroups(*G);
            for (const auto &Hsub : subs) {
              std::vector<ElemIdx> image;
              for (ElemIdx m : Hsub.members) image.push_back(alpha.perm[m]);
              std::sort(image.begin(), image.end());
              if (image != Hsub.members) continue;  // not alpha-stable
              uint64_t plus = 0, minus = 0;
              for (ElemIdx m : Hsub.members) {
                if (alpha.perm[m] == m) ++plus;
                if (alpha.perm[m] == G->inv(m)) ++minus;
              }
              JumpProfile jp = jump_profile(*G, S, Hsub);
              uint64_t even = 1, odd = 1;
              for (const auto &j : jp.jumps) {
                uint64_t f = 1;
                for (uint32_t w = 0; w < j.width; ++w) f *= 3;
                (j.index % 2 == 0 ? even : odd) *= f;
              }
              ok = ok && plus == even && minus == odd &&
                   plus * minus == Hsub.order();
              if (!ok) break;
            }
            if (!ok) failures.push_back("plus-minus");
          }

          // oracle equivalence for the order <= 81 battery
          {
            std::vector<GroupPtr> small{
                GroupTable::closure(
                    std::make_shared<TupleAmbient>(std::vector<uint32_t>{1}), {}),
                build_abelian(3, {1, 1}), build_abelian(3, {2, 1}),
                build_abelian(5, {2}), build_abelian(5, {1, 1}),
                build_semidirect_cyclic(4, 2, 3), build_extraspecial(3, 1, "p"),
                GroupTable::quotient(G, S.term(3)).group};
            bool ok = true;
            for (const auto &B : small) {
              auto oracle = verify_oracle_realized_scalars(B);
              IntensityOptions io;
              io.threads = h.threads;
              auto rep = intensity(B, io);
              if (oracle != rep.realized_scalars) {
                ok = false;
                break;
              }
            }
            if (!ok) failures.push_back("oracle-equivalence");
          }

          r.expected = "all 7 property suites hold";
          if (failures.empty()) {
            r.computed = "all 7 property suites hold";
            r.pass = true;
          } else {
            std::string s = "failed:";
            for (const auto &f : failures) s += " " + f;
            r.computed = s;
            r.pass = false;
          }
        });

  if (opts.run_stretch) {
    h.run("stretch.sn_class3_intensity", "stretch",
          "claim: intensity(Sn(D5)/G4) = 2", 1800.0, only, [&](CheckResult &r) {
            GroupPtr G = build_sn_delta(5, 2, 2, std::nullopt);
            IntensityOptions io;
            io.threads = h.threads;
            io.time_budget_seconds = std::min(1800.0, h.remaining());
            IntensityReport rep = intensity(G, io);
            if (rep.budget_exhausted) {
              r.skipped = true;
              r.skip_reason = "budget";
              return;
            }
            r.expected = "2";
            r.computed = std::to_string(rep.intensity);
            r.pass = rep.intensity == 2;
          });
  } else {
    CheckResult r;
    r.id = "stretch.sn_class3_intensity";
    r.module = "stretch";
    r.claim = "claim: intensity(Sn(D5)/G4) = 2";
    r.skipped = true;
    r.skip_reason = "disabled";
    if (only.empty() || r.module.rfind(only, 0) == 0) h.finish(r);
  }

  summary.all_passed = true;
  for (const auto &c : summary.checks) {
    if (c.skipped) {
      summary.any_skipped = true;
      if (c.module != "stretch") summary.non_stretch_skipped = true;
    } else if (!c.pass) {
      summary.all_passed = false;
    }
  }
  if (!summary.all_passed)
    summary.exit_code = 2;
  else if (summary.non_stretch_skipped || (opts.strict && summary.any_skipped))
    summary.exit_code = 3;
  else
    summary.exit_code = 0;
  return summary;
}

}  // namespace ilab

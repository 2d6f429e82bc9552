// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "univalence/reproduce.hpp"

using namespace univ;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = false;
  std::string detail;
};

FinCatPtr ptr(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

const FinGroup& z2() {
  static const FinGroup g = cyclic_group(2);
  return g;
}
const FinGroup& s3() {
  static const FinGroup g = symmetric_group(3);
  return g;
}
FinCatPtr arrow_base() {
  static const FinCatPtr b = ptr(preorder_category(Preorder::from_pairs({"a", "b"}, {{"a", "b"}})));
  return b;
}
FinCatPtr idempotent_base() {
  static const FinCatPtr b = ptr(FinCat({"*"}, {"1", "e"}, {0, 0}, {0, 0}, {0}, {0, 1, 1, 1}));
  return b;
}

std::vector<Ambient> ambients() {
  return {finset_ambient(), gset_ambient(z2(), "Z/2"), gset_ambient(s3(), "S3"),
          presheaf_ambient(arrow_base(), "arrow"), presheaf_ambient(idempotent_base(), "idempotent")};
}

// Every map between representative objects: FinSet with |E|, |B| <= 3, Z/2-sets and S3-sets
// with |E| + |B| <= 4.
std::vector<PresheafMap> checker_corpus() {
  std::vector<PresheafMap> out;
  auto all_maps = [&](const Ambient& a, std::size_t max_each, std::size_t max_total) {
    auto objs = a.objects(max_total);
    for (const auto& e : objs)
      for (const auto& b : objs) {
        if (e->total_size() > max_each || b->total_size() > max_each) continue;
        if (e->total_size() + b->total_size() > max_total) continue;
        auto ms = maps_between(e, b);
        out.insert(out.end(), ms.begin(), ms.end());
      }
  };
  all_maps(finset_ambient(), 3, 6);
  all_maps(gset_ambient(z2(), "Z/2"), 4, 4);
  all_maps(gset_ambient(s3(), "S3"), 4, 4);
  return out;
}

std::vector<PresheafMap> extended_corpus() {
  auto out = checker_corpus();
  for (const auto& a : {presheaf_ambient(arrow_base(), "arrow"), presheaf_ambient(idempotent_base(), "idempotent")}) {
    auto ms = morphism_corpus(a, 3, 3, 4);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

const std::vector<PresheafMap>& corpus() {
  static const auto c = checker_corpus();
  return c;
}

std::vector<PresheafPtr> family_corpus(const FinCat& base) {
  if (same_base(base, *finset_base())) return finset_ambient().objects(12);
  for (const auto& [g, name] : {std::pair{z2(), "Z/2"}, std::pair{s3(), "S3"}})
    if (same_base(base, *group_base(g))) return gset_ambient(g, name).objects(12);
  return {};
}

std::string first_lines(const std::vector<std::string>& xs, std::size_t n = 3) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < n; ++i) out += (i ? "; " : "") + xs[i];
  if (xs.size() > n) out += "; ...";
  return out;
}

// 1
Result set_table() {
  auto r = reproduce("set-table");
  return {r.match, r.computed};
}

// 2
Result grp_table_criterion() {
  auto t = grp_table(8, 4);
  std::size_t refuted = 0, with_witness = 0;
  for (const auto& c : t.candidates) {
    if (!c.refuted) continue;
    ++refuted;
    if (is_cartesian_group_square(c.refutation.witness_q, c.p, c.refutation.first) &&
        is_cartesian_group_square(c.refutation.witness_q, c.p, c.refutation.second))
      ++with_witness;
  }
  std::vector<std::string> surv;
  for (Index i : t.survivors) surv.push_back(t.candidates[i].name);
  std::ostringstream os;
  os << t.candidates.size() << " candidates, " << refuted << " refuted (" << with_witness
     << " with checked witnesses); survivors: " << first_lines(surv, 8);
  if (!t.missing.empty()) os << "; expected survivors refuted: " << first_lines(t.missing, 8);
  if (!t.unexpected.empty()) os << "; unexpected survivors: " << first_lines(t.unexpected, 8);
  return {t.match() && with_witness == refuted, os.str()};
}

// 3
Result hackney() {
  auto r = reproduce("hackney");
  return {r.match, r.computed};
}

// 4
Result checker_agreement() {
  const auto& ps = corpus();
  std::vector<UnivalenceVerdict> verdicts(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    UnivalenceOptions o;
    o.brute_opts.family_bound = 12;
    o.corpus = family_corpus(ps[i].target->base());
    verdicts[i] = check_univalence(ps[i], o);
  });
  std::size_t conclusive = 0, inconclusive = 0, monos = 0;
  std::vector<std::string> bad;
  for (const auto& v : verdicts) {
    const bool complete = v.complete.outcome == Outcome::pass;
    if (v.brute.outcome == Outcome::inconclusive) {
      ++inconclusive;
    } else {
      ++conclusive;
      if (complete != (v.brute.outcome == Outcome::pass)) bad.push_back("brute force vs completeness: " + describe(v.p));
    }
    if (is_mono(v.p)) {
      ++monos;
      if (v.omega.outcome == Outcome::not_applicable || complete != (v.omega.outcome == Outcome::pass))
        bad.push_back("classifying map vs completeness: " + describe(v.p));
    }
    if (v.fibers && v.fibers->pass != complete) bad.push_back("fiber criterion vs completeness: " + describe(v.p));
  }
  std::ostringstream os;
  os << ps.size() << " morphisms, " << conclusive << " conclusive, " << inconclusive << " inconclusive, " << monos
     << " monos, " << bad.size() << " disagreements";
  if (!bad.empty()) os << ": " << first_lines(bad);
  return {bad.empty(), os.str()};
}

// 5
Result equivalence_objects() {
  const auto ps = extended_corpus();
  std::vector<std::string> failures(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    const auto& p = ps[i];
    try {
      auto ic = build_internal_cat(p);
      auto iso = iso_object(ic);
      auto alt = iso_object_alt(ic, iso);
      if (!is_iso(alt.iso) || !(compose(alt.iso, iso.to_bb) == alt.obj.to_bb))
        failures[i] = "alternative object: " + describe(p);
      else if (!find_iso_over(vergura_object(p).to_bb, iso.to_bb))
        failures[i] = "exponential construction: " + describe(p);
    } catch (const IsoSearchFailed&) {
      failures[i] = "alternative object: " + describe(p);
    }
  });
  std::vector<std::string> bad;
  for (auto& f : failures)
    if (!f.empty()) bad.push_back(f);
  std::ostringstream os;
  os << ps.size() << " morphisms, " << bad.size() << " failures";
  if (!bad.empty()) os << ": " << first_lines(bad);
  return {bad.empty(), os.str()};
}

// 6
Result complete_groups_criterion() {
  auto r = reproduce("complete-groups");
  return {r.match, r.computed};
}

// 7
Result s3_criterion() {
  auto s = s3_report();
  const bool consistent = s.external_automorphisms == 1 && !s.map_is_mono && s.internal_equivalences == 6 &&
                          s.internal_is_conjugation && s.checkers_agree;
  std::ostringstream os;
  os << "external automorphisms " << s.external_automorphisms << ", " << (s.map_is_mono ? "mono" : "not mono")
     << ", internal equivalences " << s.internal_equivalences
     << (s.internal_is_conjugation ? " acting by conjugation" : "") << ", completeness "
     << to_string(s.completeness) << ", brute force " << to_string(s.bruteforce)
     << ", claim of univalence " << (s.matches_claim ? "matched" : "not matched (informational)");
  return {consistent, os.str()};
}

// All preorders on {0, .., n-1}.
std::vector<Preorder> preorders(int n) {
  std::vector<std::pair<int, int>> off;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::vector<std::string> carrier;
  for (int a = 0; a < n; ++a) carrier.push_back(std::to_string(a));
  std::vector<Preorder> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < off.size(); ++i)
      if (mask >> i & 1) pairs.emplace_back(carrier[off[i].first], carrier[off[i].second]);
    auto p = Preorder::from_pairs(carrier, pairs);
    if (p.is_transitive()) out.push_back(std::move(p));
  }
  return out;
}

// 8
Result stability() {
  std::vector<std::string> bad;
  std::size_t cases = 0;

  for (const auto& a : ambients()) {
    std::vector<PresheafMap> univalent, isos;
    for (const auto& p : morphism_corpus(a, 3, 3, 4))
      if (check_completeness(p).outcome == Outcome::pass) univalent.push_back(p);
    auto objects = a.objects(4);
    for (const auto& x : objects) {
      isos.push_back(identity_map(x));
      for (const auto& f : automorphisms(x)) isos.push_back(f);
    }
    auto report = stability_suite(univalent, isos, objects);
    cases += report.cases.size();
    for (const auto& f : report.failures()) bad.push_back(f.law + ": " + f.p + " along " + f.d);
  }

  // univalence of a mono is decided by its classifying map, in both directions
  for (const auto& p : extended_corpus()) {
    if (!is_mono(p)) continue;
    ++cases;
    const bool complete = check_completeness(p).outcome == Outcome::pass;
    if (complete != (check_omega(p).outcome == Outcome::pass)) bad.push_back("mono criterion: " + describe(p));
  }

  // nerves of preorders are complete exactly for posets; the poset reflection is idempotent
  for (int n = 0; n <= 4; ++n)
    for (const auto& pre : preorders(n)) {
      cases += 2;
      const bool complete = check_complete(nerve_of_category(preorder_category(pre), 3)).complete;
      if (complete != pre.is_antisymmetric()) bad.push_back("nerve completeness on a preorder of size " + std::to_string(n));
      auto once = preorder_to_poset(pre).poset;
      auto twice = preorder_to_poset(once);
      if (!preorders_isomorphic(once, twice.poset) || twice.poset.size() != once.size())
        bad.push_back("poset reflection not idempotent");
    }

  std::ostringstream os;
  os << cases << " cases, " << bad.size() << " counterexamples";
  if (!bad.empty()) os << ": " << first_lines(bad);
  return {bad.empty(), os.str()};
}

// 9
struct LawCounts {
  std::size_t checked = 0, skipped = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) failures.push_back(what);
  }
};

constexpr std::size_t kHomCap = 4096;

void yoneda_and_subobjects(const std::vector<PresheafPtr>& objects, LawCounts& out) {
  std::vector<LawCounts> parts(objects.size());
  parallel_for(objects.size(), [&](std::size_t i) {
    const auto& x = objects[i];
    auto& l = parts[i];
    const auto base = x->base_ptr();
    for (Index c = 0; c < static_cast<Index>(base->num_objects()); ++c)
      l.expect(count_homs(*representable(base, c), *x) == static_cast<std::size_t>(x->size(c)),
               "Yoneda count: " + describe(*x));
    auto om = subobject_classifier(base);
    auto subs = subobjects(x);
    l.expect(subs.size() == count_homs(*x, *om.omega), "Sub(X) vs Hom(X, Omega): " + describe(*x));
    std::set<std::vector<std::vector<Index>>> chis;
    for (const auto& s : subs) {
      auto chi = classify(om, s.incl);
      chis.insert(chi.components);
      l.expect(find_iso_over(pullback_true(om, chi), s.incl).has_value(), "pullback of true: " + describe(*x));
    }
    l.expect(chis.size() == subs.size(), "classifying maps distinct: " + describe(*x));
  });
  for (auto& p : parts) {
    out.checked += p.checked;
    out.failures.insert(out.failures.end(), p.failures.begin(), p.failures.end());
  }
}

void exponential_adjunction(const std::vector<PresheafPtr>& objects, LawCounts& l) {
  for (const auto& y : objects)
    for (const auto& z : objects) {
      if (!same_base(y->base(), z->base())) continue;
      auto ex = exponential(y, z);
      if (ex.obj->total_size() > 12) {
        ++l.skipped;
        continue;
      }
      for (const auto& a : objects) {
        if (!same_base(a->base(), y->base())) continue;
        auto ay = product(a, y);
        if (ay.obj->total_size() > 12 || count_homs(*ay.obj, *z, kHomCap + 1) > kHomCap) {
          ++l.skipped;
          continue;
        }
        auto lhs = homs(ay.obj, z);
        l.expect(lhs.size() == count_homs(*a, *ex.obj), "Hom(A x Y, Z) vs Hom(A, Z^Y): " + describe(*a));
        std::set<std::vector<std::vector<Index>>> images;
        for (const auto& h : lhs) {
          auto t = transpose(ex, a, h);
          images.insert(t.components);
          l.expect(uncurry(ex, ay, t) == h, "uncurry after transpose");
          l.expect(compose(product_map(ay, ex.with_y, t, identity_map(y)), ex.ev) == h, "evaluation");
        }
        l.expect(images.size() == lhs.size(), "transpose injective");
      }
    }
}

std::vector<PresheafMap> maps_over(const PresheafPtr& w, const PresheafPtr& z, const PresheafMap& wx,
                                   const PresheafMap& zx) {
  HomSearchOptions o;
  o.allow = [&](Index c, Index a, Index b) { return zx(c, b) == wx(c, a); };
  return homs(w, z, o);
}

void hom_over_base_adjunction(const std::vector<PresheafPtr>& objects, LawCounts& l) {
  for (const auto& x : objects) {
    std::vector<PresheafMap> into;
    for (const auto& y : objects) {
      if (!same_base(y->base(), x->base())) continue;
      for (auto& m : homs(y, x)) into.push_back(std::move(m));
    }
    for (const auto& f : into)
      for (const auto& g : into) {
        auto h = hom_over_base(f, g);
        l.expect(compose(h.ev, g) == compose(h.with_y.p2, f), "evaluation over the base");
        for (const auto& w : into) {
          auto pb = pullback(w, f);
          if (count_homs(*pb.obj, *g.source, kHomCap + 1) > kHomCap) {
            ++l.skipped;
            continue;
          }
          auto lhs = maps_over(pb.obj, g.source, compose(pb.p1, w), g);
          auto rhs = maps_over(w.source, h.proj.source, w, h.proj);
          l.expect(lhs.size() == rhs.size(), "Hom over the base adjunction: " + describe(f) + ", " + describe(g));
          std::set<std::vector<std::vector<Index>>> images;
          for (const auto& k : lhs) {
            auto t = transpose_over_base(h, w, pb, k);
            images.insert(t.components);
            l.expect(compose(t, h.proj) == w, "transpose lies over the base");
          }
          l.expect(images.size() == lhs.size(), "transpose over the base injective");
        }
      }
  }
}

void limits(const std::vector<PresheafPtr>& objects, const std::vector<PresheafPtr>& tests, LawCounts& l) {
  auto cone_count = [](const std::vector<PresheafMap>& ks, const std::function<bool(const PresheafMap&)>& ok) {
    std::size_t n = 0;
    for (const auto& k : ks) n += ok(k);
    return n;
  };
  for (const auto& x : objects)
    for (const auto& y : objects) {
      if (!same_base(x->base(), y->base())) continue;
      auto pr = product(x, y);
      for (const auto& w : tests) {
        if (!same_base(w->base(), x->base())) continue;
        auto ks = homs(w, pr.obj);
        for (const auto& a : homs(w, x))
          for (const auto& b : homs(w, y))
            l.expect(cone_count(ks, [&](const PresheafMap& k) { return compose(k, pr.p1) == a && compose(k, pr.p2) == b; }) == 1,
                     "product factorization");
      }
      for (const auto& f : homs(x, y))
        for (const auto& g : homs(x, y)) {
          auto eq = equalizer(f, g);
          for (const auto& w : tests) {
            if (!same_base(w->base(), x->base())) continue;
            auto ks = homs(w, eq.obj);
            for (const auto& a : homs(w, x)) {
              const std::size_t want = compose(a, f) == compose(a, g) ? 1 : 0;
              l.expect(cone_count(ks, [&](const PresheafMap& k) { return compose(k, eq.incl) == a; }) == want,
                       "equalizer factorization");
            }
          }
        }
    }
  for (const auto& b : objects) {
    std::vector<PresheafMap> into;
    for (const auto& y : objects)
      if (same_base(y->base(), b->base()))
        for (auto& m : homs(y, b)) into.push_back(std::move(m));
    for (const auto& f : into)
      for (const auto& g : into) {
        auto pb = pullback(f, g);
        for (const auto& w : tests) {
          if (!same_base(w->base(), b->base())) continue;
          auto ks = homs(w, pb.obj);
          for (const auto& a : homs(w, f.source))
            for (const auto& c : homs(w, g.source)) {
              const std::size_t want = compose(a, f) == compose(c, g) ? 1 : 0;
              l.expect(cone_count(ks, [&](const PresheafMap& k) { return compose(k, pb.p1) == a && compose(k, pb.p2) == c; }) == want,
                       "pullback factorization");
            }
        }
      }
  }
}

Result topos_laws() {
  LawCounts l;
  std::vector<PresheafPtr> large, medium, small, tiny;
  for (const auto& a : ambients()) {
    const bool generic = a.name == "arrow" || a.name == "idempotent";
    auto big = a.objects(generic ? 8 : 12);
    large.insert(large.end(), big.begin(), big.end());
    auto m = a.objects(4);
    medium.insert(medium.end(), m.begin(), m.end());
    auto s = a.objects(3);
    small.insert(small.end(), s.begin(), s.end());
    auto t = a.objects(2);
    tiny.insert(tiny.end(), t.begin(), t.end());
  }
  yoneda_and_subobjects(large, l);
  exponential_adjunction(medium, l);
  hom_over_base_adjunction(small, l);
  limits(small, tiny, l);
  std::ostringstream os;
  os << l.checked << " checks over " << large.size() << " objects, " << l.skipped << " instances above the hom cap, "
     << l.failures.size() << " failures";
  if (!l.failures.empty()) os << ": " << first_lines(l.failures);
  return {l.failures.empty(), os.str()};
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "univalent finite set maps", 60, set_table},
      {2, "univalent group homomorphisms", 600, grp_table_criterion},
      {3, "composition on the quotient of finite sets", 30, hackney},
      {4, "checker agreement", 900, checker_agreement},
      {5, "objects of isomorphisms agree", 0, equivalence_objects},
      {6, "complete groups", 300, complete_groups_criterion},
      {7, "S3-set report", 0, s3_criterion},
      {8, "stability and truncation laws", 0, stability},
      {9, "topos laws", 600, topos_laws},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = r.pass && in_time;
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(1) << secs << "s" << (in_time ? "" : ", over the time limit") << "): " << r.detail
              << std::endl;
  }
  return all ? 0 : 1;
}

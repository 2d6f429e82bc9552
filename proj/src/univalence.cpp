#include "univalence/univalence.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace univ {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::not_applicable: return "not-applicable";
  }
  return "?";
}

namespace {

bool is_finset_base(const FinCat& c) { return c.num_objects() == 1 && c.num_morphisms() == 1; }

void add_unique(std::vector<PresheafPtr>& out, const PresheafPtr& x) {
  for (const auto& y : out)
    if (y->sizes() == x->sizes() && find_iso(x, y)) return;
  out.push_back(x);
}

// Number of elements of the pullback over each point of X'.
std::vector<Index> fiber_key(const Pullback& pb, const Presheaf& x) {
  std::vector<Index> key;
  for (Index c = 0; c < static_cast<Index>(x.sizes().size()); ++c) {
    std::vector<Index> count(x.size(c), 0);
    for (const auto& pr : pb.pairs[c]) ++count[pr.first];
    key.insert(key.end(), count.begin(), count.end());
  }
  return key;
}

}  // namespace

std::vector<PresheafPtr> default_family(const PresheafMap& p, const std::vector<PresheafPtr>& corpus,
                                        std::size_t bound) {
  const FinCatPtr& base = p.target->base_ptr();
  const auto n = static_cast<Index>(base->num_objects());
  std::vector<PresheafPtr> out;
  std::vector<PresheafPtr> reps;
  for (Index c = 0; c < n; ++c) reps.push_back(representable(base, c));
  for (const auto& r : reps) add_unique(out, r);
  for (Index c = 0; c < n; ++c)
    for (Index d = c; d < n; ++d) add_unique(out, product(reps[c], reps[d]).obj);
  add_unique(out, p.source);
  add_unique(out, p.target);
  add_unique(out, build_internal_cat(p).M);
  add_unique(out, product(p.target, p.target).obj);
  for (const auto& x : corpus)
    if (x->total_size() <= bound && same_base(x->base(), *base)) add_unique(out, x);
  return out;
}

BruteVerdict check_bruteforce(const PresheafMap& p, const std::vector<PresheafPtr>& family,
                              const BruteOptions& opts) {
  BruteVerdict v;
  v.family_bound = opts.family_bound;
  for (const auto& x : family) {
    if (count_homs(*x, *p.target, opts.hom_budget + 1) > opts.hom_budget) {
      ++v.objects_skipped;
      continue;
    }
    ++v.objects_tested;
    struct Seen {
      PresheafMap u, q, v;
    };
    std::map<std::vector<Index>, std::vector<Seen>> groups;
    for (const auto& u : homs(x, p.target)) {
      ++v.maps_tested;
      Pullback pb = pullback(u, p);
      Seen cur{u, pb.p1, pb.p2};
      auto auts = automorphisms_over(cur.q, 2);
      if (auts.size() > 1) {
        const auto& alpha = auts[0].components == identity_map(cur.q.source).components ? auts[1] : auts[0];
        v.witness = BruteWitness{cur.q, {u, cur.v}, {u, compose(alpha, cur.v)}};
      } else {
        auto& group = groups[fiber_key(pb, *x)];
        for (const auto& other : group) {
          if (auto h = find_iso_over(cur.q, other.q)) {
            v.witness = BruteWitness{cur.q, {u, cur.v}, {other.u, compose(*h, other.v)}};
            break;
          }
        }
        group.push_back(std::move(cur));
      }
      if (v.witness) {
        const auto& w = *v.witness;
        if (!is_cartesian(w.q, p, w.first) || !is_cartesian(w.q, p, w.second))
          throw std::logic_error("brute force produced a non-cartesian square");
        v.outcome = Outcome::fail;
        return v;
      }
    }
  }
  v.outcome = v.objects_skipped ? Outcome::inconclusive : Outcome::pass;
  return v;
}

CompleteCheck check_completeness(const PresheafMap& p) {
  CompleteCheck out;
  auto w = nerve_of_morphism(build_internal_cat(p));
  out.sizes = w.sizes();
  out.detail = check_complete(w);
  out.outcome = out.detail.complete ? Outcome::pass : Outcome::fail;
  return out;
}

OmegaCheck check_omega(const PresheafMap& p) {
  OmegaCheck out;
  if (!is_mono(p)) return out;
  auto om = subobject_classifier(p.target->base_ptr());
  out.chi = classify(om, p);
  out.outcome = Outcome::pass;
  const auto& chi = *out.chi;
  for (Index c = 0; c < static_cast<Index>(chi.components.size()); ++c) {
    std::map<Index, Index> first_with;
    for (Index b = 0; b < p.target->size(c); ++b) {
      auto [it, fresh] = first_with.emplace(chi(c, b), b);
      if (!fresh) {
        out.outcome = Outcome::fail;
        out.object = c;
        out.first = it->second;
        out.second = b;
        return out;
      }
    }
  }
  return out;
}

FiberCriterion finset_fiber_criterion(const PresheafMap& p) {
  if (!is_finset_base(p.target->base())) throw ValidationError({"FinSet ambient", describe(p)});
  FiberCriterion out;
  out.fiber_sizes.assign(p.target->size(0), 0);
  for (Index e = 0; e < p.source->size(0); ++e) ++out.fiber_sizes[p(0, e)];
  std::map<Index, Index> seen;
  for (Index b = 0; b < static_cast<Index>(out.fiber_sizes.size()); ++b) {
    const Index s = out.fiber_sizes[b];
    if (s > 1) {
      out.reason = "fiber over " + std::to_string(b) + " has " + std::to_string(s) + " elements";
      return out;
    }
    auto [it, fresh] = seen.emplace(s, b);
    if (!fresh) {
      out.reason = "fibers over " + std::to_string(it->second) + " and " + std::to_string(b) + " are isomorphic";
      return out;
    }
  }
  out.pass = true;
  return out;
}

UnivalenceVerdict check_univalence(const PresheafMap& p, const UnivalenceOptions& opts) {
  UnivalenceVerdict v;
  v.p = p;
  v.brute.outcome = Outcome::not_applicable;
  v.complete.outcome = Outcome::not_applicable;
  if (opts.brute) {
    v.brute = check_bruteforce(p, default_family(p, opts.corpus, opts.brute_opts.family_bound), opts.brute_opts);
  }
  if (opts.complete) v.complete = check_completeness(p);
  if (opts.omega) v.omega = check_omega(p);
  if (is_finset_base(p.target->base())) v.fibers = finset_fiber_criterion(p);

  if (opts.complete) {
    const bool c = v.complete.outcome == Outcome::pass;
    if (opts.brute) {
      if (c && v.brute.outcome == Outcome::fail) v.disagreements.push_back("complete, yet brute force found two squares");
      if (!c && v.brute.outcome != Outcome::fail)
        v.disagreements.push_back("incomplete, yet no brute-force witness within the family");
    }
    if (opts.omega && v.omega.outcome != Outcome::not_applicable && c != (v.omega.outcome == Outcome::pass))
      v.disagreements.push_back("classifying map verdict differs from completeness");
    if (v.fibers && c != v.fibers->pass) v.disagreements.push_back("fiber criterion differs from completeness");
  }
  return v;
}

std::string finset_morphism_label(const PresheafMap& p) {
  std::ostringstream os;
  os << p.source->size(0) << "->" << p.target->size(0);
  if (p.source->size(0) > 0) {
    os << ":{";
    for (Index e = 0; e < p.source->size(0); ++e) os << (e ? "," : "") << p(0, e);
    os << "}";
  }
  return os.str();
}

std::vector<std::pair<Index, Index>> UnivPoset::hasse() const {
  std::vector<std::pair<Index, Index>> out;
  const auto n = static_cast<Index>(elements.size());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (a == b || !order.leq[a][b]) continue;
      bool covered = true;
      for (Index m = 0; m < n && covered; ++m)
        if (m != a && m != b && order.leq[a][m] && order.leq[m][b]) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

UnivPoset enumerate_univ(const Ambient& ambient, std::size_t bound) {
  UnivPoset out;
  auto corpus = morphism_corpus(ambient, bound, bound, 2 * bound);
  out.candidates = corpus.size();
  std::vector<char> keep(corpus.size(), 0);
  parallel_for(corpus.size(),
               [&](std::size_t i) { keep[i] = check_completeness(corpus[i]).outcome == Outcome::pass; });
  const bool fin = is_finset_base(*ambient.base);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!keep[i]) continue;
    out.elements.push_back(corpus[i]);
    out.names.push_back(fin ? finset_morphism_label(corpus[i]) : describe(corpus[i]) + " #" + std::to_string(i));
  }
  const auto n = static_cast<Index>(out.elements.size());
  out.order.carrier = out.names;
  out.order.leq.assign(n, std::vector<bool>(n, false));
  std::vector<std::size_t> squares(static_cast<std::size_t>(n) * n);
  parallel_for(squares.size(), [&](std::size_t k) {
    squares[k] = enumerate_cart_squares(out.elements[k / n], out.elements[k % n], 2).size();
  });
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const auto s = squares[static_cast<std::size_t>(a) * n + b];
      out.order.leq[a][b] = s > 0;
      if (s > 1) out.multiple_squares.emplace_back(a, b);
    }
  out.joins.assign(n, std::vector<Index>(n, kNone));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      std::vector<Index> upper;
      for (Index k = 0; k < n; ++k)
        if (out.order.leq[a][k] && out.order.leq[b][k]) upper.push_back(k);
      for (Index k : upper) {
        bool least = true;
        for (Index m : upper) least = least && out.order.leq[k][m];
        if (least) {
          out.joins[a][b] = k;
          break;
        }
      }
    }
  return out;
}

std::vector<StabilityCase> StabilityReport::failures() const {
  std::vector<StabilityCase> out;
  for (const auto& c : cases)
    if (c.expected != c.observed) out.push_back(c);
  return out;
}

StabilityReport stability_suite(const std::vector<PresheafMap>& univalent,
                                const std::vector<PresheafMap>& isos,
                                const std::vector<PresheafPtr>& test_objects) {
  constexpr std::size_t kMapCap = 256;
  struct Job {
    const PresheafMap* p;
    PresheafMap d;
  };
  std::vector<Job> jobs;
  for (const auto& p : univalent)
    for (const auto& x : test_objects) {
      if (!same_base(x->base(), p.target->base())) continue;
      if (count_homs(*x, *p.target, kMapCap + 1) > kMapCap) continue;
      for (auto& d : homs(x, p.target)) jobs.push_back({&p, std::move(d)});
    }
  StabilityReport report;
  std::vector<std::vector<StabilityCase>> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto& [p, d] = jobs[i];
    Pullback pb = pullback(d, *p);
    const bool mono = is_mono(d);
    const bool univ = check_completeness(pb.p1).outcome == Outcome::pass;
    results[i].push_back({"pullback along d is univalent iff d is mono", describe(*p), describe(d), mono, univ});
    if (univ) {
      const auto n = enumerate_cart_squares(pb.p1, *p, 2).size();
      results[i].push_back({"a univalent pullback sits under p by exactly one square", describe(*p), describe(d), true,
                            n == 1});
    }
  });
  for (auto& r : results) report.cases.insert(report.cases.end(), r.begin(), r.end());
  for (const auto& p : isos) {
    if (!is_iso(p)) throw ValidationError({"not an isomorphism", describe(p)});
    const bool subterminal = is_mono(to_terminal(p.target));
    const bool univ = check_completeness(p).outcome == Outcome::pass;
    report.cases.push_back({"an isomorphism is univalent iff its target is subterminal", describe(p), "", subterminal, univ});
  }
  return report;
}

S3Report s3_report() {
  S3Report r;
  const FinGroup g = symmetric_group(3);
  const FinCatPtr base = group_base(g);
  const PresheafPtr x = natural_gset(base, g);
  const PresheafMap p = to_terminal(x);
  r.external_automorphisms = automorphisms(x).size();
  r.map_is_mono = is_mono(p);
  auto ic = build_internal_cat(p);
  auto iso = iso_object(ic);
  r.internal_equivalences = static_cast<std::size_t>(iso.carrier->size(0));
  std::vector<std::vector<Index>> actions(g.order());
  for (Index m = 0; m < static_cast<Index>(g.order()); ++m)
    for (Index y = 0; y < static_cast<Index>(g.order()); ++y) actions[m].push_back(g.mul(g.mul(g.inv(m), y), m));
  auto conj = validate_presheaf(Presheaf(base, {static_cast<Index>(g.order())}, actions));
  r.internal_is_conjugation = find_iso(iso.carrier, conj).has_value();
  r.completeness = check_completeness(p).outcome;
  r.bruteforce = check_bruteforce(p, default_family(p, {}, 12)).outcome;
  r.checkers_agree = (r.completeness == Outcome::pass) == (r.bruteforce != Outcome::fail);
  r.matches_claim = r.completeness == Outcome::pass;
  return r;
}

}  // namespace univ

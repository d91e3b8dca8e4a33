#include <algorithm>
#include <array>

#include "fcat/fincat.hpp"

namespace fcat {

namespace {

// Backtracking over object images, with every morphism assigned as soon as
// both its endpoints are. A composition triple (g, f, g∘f) is checked when
// the last of its three morphisms is assigned.
class FunctorSearch {
 public:
  FunctorSearch(const CatRef& dom, const CatRef& cod, const FunctorSearchOptions& options,
                const std::function<bool(const FinFunctor&)>& visit)
      : dom_(dom), cod_(cod), a_(*dom), b_(*cod), opt_(options), visit_(visit) {
    const int n = a_.object_count();
    obj_.assign(n, -1);
    mor_.assign(a_.morphism_count(), -1);
    used_obj_.assign(b_.object_count(), 0);
    used_mor_.assign(b_.morphism_count(), 0);
    // Morphisms become assignable at the step where max(src, tgt) is placed.
    by_step_.assign(n, {});
    pos_.assign(a_.morphism_count(), 0);
    int counter = 0;
    for (int x = 0; x < n; ++x) {
      for (int m = 0; m < a_.morphism_count(); ++m)
        if (std::max(a_.src(m), a_.tgt(m)) == x) {
          by_step_[x].push_back(m);
          pos_[m] = counter++;
        }
    }
    triples_.assign(a_.morphism_count(), {});
    for (int g = 0; g < a_.morphism_count(); ++g)
      for (int f : a_.in(a_.src(g))) {
        const int h = a_.compose(g, f);
        int key = g;
        if (pos_[f] > pos_[key]) key = f;
        if (pos_[h] > pos_[key]) key = h;
        triples_[key].push_back({g, f, h});
      }
  }

  void run() {
    if (a_.object_count() == 0) {
      emit();
      return;
    }
    place_object(0);
  }

 private:
  void tick() {
    ++nodes_;
    if (opt_.node_budget && nodes_ > opt_.node_budget) throw CapExceeded("functor search node budget exhausted", opt_.node_budget);
  }

  void emit() {
    FinFunctor f{dom_, cod_, obj_, mor_};
    if (!visit_(f)) stop_ = true;
  }

  bool object_allowed(int x, int y) const {
    if (opt_.injective && used_obj_[y]) return false;
    if (opt_.object_ok && !opt_.object_ok(x, y)) return false;
    if (opt_.preserve_hom_sizes) {
      if (a_.hom(x, x).size() != b_.hom(y, y).size()) return false;
      for (int z = 0; z < x; ++z) {
        const int w = obj_[z];
        if (a_.hom(x, z).size() != b_.hom(y, w).size() || a_.hom(z, x).size() != b_.hom(w, y).size()) return false;
      }
    }
    return true;
  }

  void place_object(int x) {
    for (int y = 0; y < b_.object_count() && !stop_; ++y) {
      if (!object_allowed(x, y)) continue;
      tick();
      obj_[x] = y;
      used_obj_[y] = 1;
      place_morphism(x, 0);
      used_obj_[y] = 0;
      obj_[x] = -1;
    }
  }

  bool triples_hold(int m) const {
    for (const auto& [g, f, h] : triples_[m])
      if (b_.compose(mor_[g], mor_[f]) != mor_[h]) return false;
    return true;
  }

  void place_morphism(int x, std::size_t k) {
    if (stop_) return;
    if (k == by_step_[x].size()) {
      if (x + 1 == a_.object_count())
        emit();
      else
        place_object(x + 1);
      return;
    }
    const int m = by_step_[x][k];
    const int s = obj_[a_.src(m)];
    const int t = obj_[a_.tgt(m)];
    auto try_candidate = [&](int n) {
      if (opt_.injective && used_mor_[n]) return;
      if (opt_.morphism_ok && !opt_.morphism_ok(m, n)) return;
      tick();
      mor_[m] = n;
      if (triples_hold(m)) {
        used_mor_[n] = 1;
        place_morphism(x, k + 1);
        used_mor_[n] = 0;
      }
      mor_[m] = -1;
    };
    if (a_.is_identity(m)) {
      try_candidate(b_.identity(s));
      return;
    }
    for (int n : b_.hom(s, t)) {
      try_candidate(n);
      if (stop_) return;
    }
  }

  CatRef dom_;
  CatRef cod_;
  const FinCat& a_;
  const FinCat& b_;
  const FunctorSearchOptions& opt_;
  const std::function<bool(const FinFunctor&)>& visit_;
  std::vector<int> obj_, mor_;
  std::vector<char> used_obj_, used_mor_;
  std::vector<std::vector<int>> by_step_;
  std::vector<int> pos_;
  std::vector<std::vector<std::array<int, 3>>> triples_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

}  // namespace

void for_each_functor(const CatRef& dom, const CatRef& cod, const FunctorSearchOptions& options,
                      const std::function<bool(const FinFunctor&)>& visit) {
  FunctorSearch s(dom, cod, options, visit);
  s.run();
}

std::vector<FinFunctor> enumerate_functors(const CatRef& c, const CatRef& d, std::size_t cap) {
  std::vector<FinFunctor> out;
  for_each_functor(c, d, {}, [&](const FinFunctor& f) {
    if (out.size() == cap) throw CapExceeded("more functors than the cap", cap);
    out.push_back(f);
    return true;
  });
  return out;
}

EquivalenceResult check_equivalence(const FinFunctor& f) {
  const FinCat& a = *f.dom;
  const FinCat& b = *f.cod;
  EquivalenceResult r;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < a.object_count(); ++y) {
      auto src = a.hom(x, y);
      auto dst = b.hom(f.obj[x], f.obj[y]);
      std::vector<int> image;
      for (int m : src) image.push_back(f.mor[m]);
      std::sort(image.begin(), image.end());
      const bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
      if (!injective) {
        r.failure = "not faithful on hom(" + a.object_name(x) + ", " + a.object_name(y) + ")";
        return r;
      }
      if (image.size() != dst.size()) {
        r.failure = "not full onto hom(" + b.object_name(f.obj[x]) + ", " + b.object_name(f.obj[y]) + ")";
        return r;
      }
    }
  for (int d = 0; d < b.object_count(); ++d) {
    bool found = false;
    for (int x = 0; x < a.object_count() && !found; ++x)
      for (int m : b.hom(f.obj[x], d))
        if (inverse_of(b, m)) {
          r.essential_witness.emplace_back(x, m);
          found = true;
          break;
        }
    if (!found) {
      r.essential_witness.clear();
      r.failure = "object '" + b.object_name(d) + "' is not in the essential image";
      return r;
    }
  }
  r.equivalent = true;
  return r;
}

namespace {

struct Signature {
  std::size_t endo, out, in;
  bool operator==(const Signature&) const = default;
};

Signature signature(const FinCat& c, int x) {
  return {c.hom(x, x).size(), c.out(x).size(), c.in(x).size()};
}

std::optional<FinFunctor> iso_search(const CatRef& a, const CatRef& b, const std::function<bool(int, int)>& obj_ok,
                                     const std::function<bool(int, int)>& mor_ok, std::uint64_t budget) {
  if (a->object_count() != b->object_count() || a->morphism_count() != b->morphism_count()) return std::nullopt;
  std::vector<Signature> sa, sb;
  for (int x = 0; x < a->object_count(); ++x) sa.push_back(signature(*a, x));
  for (int y = 0; y < b->object_count(); ++y) sb.push_back(signature(*b, y));
  {
    auto ka = sa, kb = sb;
    auto lt = [](const Signature& p, const Signature& q) {
      return std::tie(p.endo, p.out, p.in) < std::tie(q.endo, q.out, q.in);
    };
    std::sort(ka.begin(), ka.end(), lt);
    std::sort(kb.begin(), kb.end(), lt);
    if (!(ka == kb)) return std::nullopt;
  }
  FunctorSearchOptions opt;
  opt.injective = true;
  opt.preserve_hom_sizes = true;
  opt.node_budget = budget;
  opt.object_ok = [&](int x, int y) { return sa[x] == sb[y] && (!obj_ok || obj_ok(x, y)); };
  opt.morphism_ok = mor_ok;
  std::optional<FinFunctor> found;
  for_each_functor(a, b, opt, [&](const FinFunctor& f) {
    found = f;
    return false;
  });
  return found;
}

}  // namespace

std::optional<FinFunctor> search_iso_over_base(const OverBase& p, const OverBase& q, std::uint64_t node_budget) {
  if (!identical(p.base(), q.base())) throw PreconditionFailed("search_iso_over_base: different bases");
  const FinCat& c = p.base();
  // Fiber cardinalities must agree before any search.
  std::vector<int> cp(c.object_count(), 0), cq(c.object_count(), 0);
  for (int x : p.proj.obj) ++cp[x];
  for (int x : q.proj.obj) ++cq[x];
  if (cp != cq) return std::nullopt;
  std::vector<int> mp(c.morphism_count(), 0), mq(c.morphism_count(), 0);
  for (int m : p.proj.mor) ++mp[m];
  for (int m : q.proj.mor) ++mq[m];
  if (mp != mq) return std::nullopt;
  return iso_search(
      p.proj.dom, q.proj.dom, [&](int x, int y) { return p.proj.obj[x] == q.proj.obj[y]; },
      [&](int m, int n) { return p.proj.mor[m] == q.proj.mor[n]; }, node_budget);
}

std::optional<FinFunctor> find_isomorphism(const CatRef& a, const CatRef& b, std::uint64_t node_budget) {
  return iso_search(a, b, {}, {}, node_budget);
}

}  // namespace fcat

#include "fcat/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fcat {

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) os << "\n  - " << v;
  return os.str();
}

// --- FinCat -----------------------------------------------------------------

int FinCat::compose(int g, int f) const {
  if (g < 0 || f < 0 || g >= morphism_count() || f >= morphism_count()) return -1;
  if (mors_[f].tgt != mors_[g].src) return -1;
  return comp_[g][in_pos_[f]];
}

std::optional<int> FinCat::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCat::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

int FinCat::object(std::string_view name) const {
  auto x = find_object(name);
  if (!x) throw UnknownObject("unknown object '" + std::string(name) + "'");
  return *x;
}

int FinCat::morphism(std::string_view name) const {
  auto m = find_morphism(name);
  if (!m) throw UnknownObject("unknown morphism '" + std::string(name) + "'");
  return *m;
}

int FinCat::Builder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identity_.push_back(-1);
  return static_cast<int>(objects_.size()) - 1;
}

int FinCat::Builder::add_morphism(std::string name, int src, int tgt) {
  mors_.push_back({std::move(name), src, tgt});
  return static_cast<int>(mors_.size()) - 1;
}

int FinCat::Builder::add_identity(int x, std::string name) {
  int m = add_morphism(std::move(name), x, x);
  identity_[x] = m;
  return m;
}

void FinCat::Builder::set_identity(int x, int m) { identity_.at(x) = m; }

void FinCat::Builder::set_compose(int g, int f, int h) { entries_.emplace_back(g, f, h); }

FinCat FinCat::Builder::build() const {
  FinCat c;
  c.objects_ = objects_;
  c.mors_ = mors_;
  c.identity_ = identity_;
  const int n = static_cast<int>(objects_.size());
  const int m = static_cast<int>(mors_.size());
  c.in_.assign(n, {});
  c.out_.assign(n, {});
  c.in_pos_.assign(m, -1);
  c.hom_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < m; ++i) {
    const auto& mi = mors_[i];
    if (mi.src < 0 || mi.src >= n || mi.tgt < 0 || mi.tgt >= n) continue;
    c.in_pos_[i] = static_cast<int>(c.in_[mi.tgt].size());
    c.in_[mi.tgt].push_back(i);
    c.out_[mi.src].push_back(i);
    c.hom_[static_cast<std::size_t>(mi.src) * n + mi.tgt].push_back(i);
  }
  c.comp_.assign(m, {});
  for (int g = 0; g < m; ++g) {
    const int s = mors_[g].src;
    if (s >= 0 && s < n) c.comp_[g].assign(c.in_[s].size(), -1);
  }
  for (auto [g, f, h] : entries_) {
    if (g < 0 || g >= m || f < 0 || f >= m || c.in_pos_[f] < 0) continue;
    if (mors_[f].tgt != mors_[g].src) continue;
    c.comp_[g][c.in_pos_[f]] = h;
  }
  for (int x = 0; x < n; ++x) {
    const int id = identity_[x];
    if (id < 0 || id >= m || mors_[id].src != x || mors_[id].tgt != x) continue;
    for (int f : c.in_[x])
      if (c.comp_[id][c.in_pos_[f]] < 0) c.comp_[id][c.in_pos_[f]] = f;
    for (int g : c.out_[x])
      if (c.comp_[g][c.in_pos_[id]] < 0) c.comp_[g][c.in_pos_[id]] = g;
  }
  for (int i = 0; i < n; ++i) c.object_index_.emplace(objects_[i], i);
  for (int i = 0; i < m; ++i) c.morphism_index_.emplace(mors_[i].name, i);
  return c;
}

// --- validation -------------------------------------------------------------

ValidationReport validate(const FinCat& c) {
  ValidationReport r;
  const int n = c.object_count();
  const int m = c.morphism_count();
  {
    std::set<std::string> seen;
    for (int x = 0; x < n; ++x)
      if (!seen.insert(c.object_name(x)).second) r.add("duplicate object identifier '" + c.object_name(x) + "'");
    seen.clear();
    for (int f = 0; f < m; ++f)
      if (!seen.insert(c.morphism_name(f)).second)
        r.add("duplicate morphism identifier '" + c.morphism_name(f) + "'");
  }
  bool endpoints_ok = true;
  for (int f = 0; f < m; ++f) {
    if (c.src(f) < 0 || c.src(f) >= n || c.tgt(f) < 0 || c.tgt(f) >= n) {
      r.add("morphism '" + c.morphism_name(f) + "' has a dangling endpoint");
      endpoints_ok = false;
    }
  }
  if (!endpoints_ok) return r;
  bool ids_ok = true;
  for (int x = 0; x < n; ++x) {
    const int id = c.identity(x);
    if (id < 0 || id >= m) {
      r.add("object '" + c.object_name(x) + "' has no identity");
      ids_ok = false;
    } else if (c.src(id) != x || c.tgt(id) != x) {
      r.add("identity of '" + c.object_name(x) + "' is '" + c.morphism_name(id) + "' with wrong endpoints");
      ids_ok = false;
    }
  }
  bool total = true;
  for (int g = 0; g < m; ++g) {
    for (int f : c.in(c.src(g))) {
      const int h = c.compose(g, f);
      const std::string entry = c.morphism_name(g) + "." + c.morphism_name(f);
      if (h < 0) {
        r.add("composite " + entry + " is undefined");
        total = false;
      } else if (h >= m) {
        r.add("composite " + entry + " is a dangling morphism id");
        total = false;
      } else if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g)) {
        r.add("composite " + entry + " = " + c.morphism_name(h) + " has wrong endpoints");
        total = false;
      }
    }
  }
  if (!total) return r;
  if (ids_ok) {
    for (int f = 0; f < m; ++f) {
      if (c.compose(c.identity(c.tgt(f)), f) != f)
        r.add("identity law fails: " + c.morphism_name(c.identity(c.tgt(f))) + "." + c.morphism_name(f) +
              " != " + c.morphism_name(f));
      if (c.compose(f, c.identity(c.src(f))) != f)
        r.add("identity law fails: " + c.morphism_name(f) + "." + c.morphism_name(c.identity(c.src(f))) +
              " != " + c.morphism_name(f));
    }
  }
  for (int f = 0; f < m; ++f) {
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      for (int h : c.out(c.tgt(g))) {
        const int lhs = c.compose(h, gf);
        const int rhs = c.compose(c.compose(h, g), f);
        if (lhs != rhs)
          r.add("associativity fails on (" + c.morphism_name(h) + ", " + c.morphism_name(g) + ", " +
                c.morphism_name(f) + ")");
      }
    }
  }
  return r;
}

ValidationReport validate(const FinFunctor& f) {
  ValidationReport r;
  if (!f.dom || !f.cod) {
    r.add("functor has no domain or codomain");
    return r;
  }
  const FinCat& a = *f.dom;
  const FinCat& b = *f.cod;
  if (static_cast<int>(f.obj.size()) != a.object_count() || static_cast<int>(f.mor.size()) != a.morphism_count()) {
    r.add("functor maps have the wrong size");
    return r;
  }
  for (int x = 0; x < a.object_count(); ++x)
    if (f.obj[x] < 0 || f.obj[x] >= b.object_count()) {
      r.add("object '" + a.object_name(x) + "' is unmapped");
      return r;
    }
  for (int m = 0; m < a.morphism_count(); ++m) {
    const int n = f.mor[m];
    if (n < 0 || n >= b.morphism_count()) {
      r.add("morphism '" + a.morphism_name(m) + "' is unmapped");
      return r;
    }
    if (b.src(n) != f.obj[a.src(m)] || b.tgt(n) != f.obj[a.tgt(m)])
      r.add("morphism '" + a.morphism_name(m) + "' maps to '" + b.morphism_name(n) + "' with wrong endpoints");
  }
  if (!r.ok()) return r;
  for (int x = 0; x < a.object_count(); ++x)
    if (f.mor[a.identity(x)] != b.identity(f.obj[x]))
      r.add("identity of '" + a.object_name(x) + "' is not preserved");
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int h : a.in(a.src(g)))
      if (f.mor[a.compose(g, h)] != b.compose(f.mor[g], f.mor[h]))
        r.add("composite " + a.morphism_name(g) + "." + a.morphism_name(h) + " is not preserved");
  return r;
}

ValidationReport validate(const NatTrans& t) {
  ValidationReport r;
  if (t.src.dom != t.tgt.dom && !(t.src.dom && t.tgt.dom && identical(*t.src.dom, *t.tgt.dom)))
    r.add("source and target functors have different domains");
  if (t.src.cod != t.tgt.cod && !(t.src.cod && t.tgt.cod && identical(*t.src.cod, *t.tgt.cod)))
    r.add("source and target functors have different codomains");
  if (!r.ok()) return r;
  const FinCat& a = *t.src.dom;
  const FinCat& b = *t.src.cod;
  if (static_cast<int>(t.components.size()) != a.object_count()) {
    r.add("wrong number of components");
    return r;
  }
  for (int x = 0; x < a.object_count(); ++x) {
    int c = t.components[x];
    if (c < 0 || c >= b.morphism_count() || b.src(c) != t.src.obj[x] || b.tgt(c) != t.tgt.obj[x]) {
      r.add("component at '" + a.object_name(x) + "' has wrong endpoints");
      return r;
    }
  }
  for (int m = 0; m < a.morphism_count(); ++m) {
    const int lhs = b.compose(t.tgt.mor[m], t.components[a.src(m)]);
    const int rhs = b.compose(t.components[a.tgt(m)], t.src.mor[m]);
    if (lhs != rhs) r.add("naturality square fails at '" + a.morphism_name(m) + "'");
  }
  return r;
}

bool identical(const FinCat& a, const FinCat& b) {
  if (&a == &b) return true;
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
  for (int x = 0; x < a.object_count(); ++x)
    if (a.object_name(x) != b.object_name(x) || a.identity(x) != b.identity(x)) return false;
  for (int f = 0; f < a.morphism_count(); ++f)
    if (a.morphism_name(f) != b.morphism_name(f) || a.src(f) != b.src(f) || a.tgt(f) != b.tgt(f)) return false;
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int f : a.in(a.src(g)))
      if (a.compose(g, f) != b.compose(g, f)) return false;
  return true;
}

bool structurally_equal(const FinCat& a, const FinCat& b) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
  std::vector<int> om(a.object_count()), mm(a.morphism_count());
  for (int x = 0; x < a.object_count(); ++x) {
    auto y = b.find_object(a.object_name(x));
    if (!y) return false;
    om[x] = *y;
  }
  for (int f = 0; f < a.morphism_count(); ++f) {
    auto g = b.find_morphism(a.morphism_name(f));
    if (!g) return false;
    mm[f] = *g;
    if (b.src(*g) != om[a.src(f)] || b.tgt(*g) != om[a.tgt(f)]) return false;
  }
  for (int x = 0; x < a.object_count(); ++x)
    if (a.identity(x) < 0 || b.identity(om[x]) != mm[a.identity(x)]) return false;
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int f : a.in(a.src(g))) {
      const int h = a.compose(g, f);
      const int k = b.compose(mm[g], mm[f]);
      if (h < 0 || k != mm[h]) return false;
    }
  return true;
}

bool identical(const FinFunctor& f, const FinFunctor& g) {
  return f.obj == g.obj && f.mor == g.mor && identical(*f.dom, *g.dom) && identical(*f.cod, *g.cod);
}

// --- constructions ----------------------------------------------------------

CatRef opposite(const CatRef& c) {
  FinCat::Builder b;
  for (int x = 0; x < c->object_count(); ++x) b.add_object(c->object_name(x));
  for (int f = 0; f < c->morphism_count(); ++f) b.add_morphism(c->morphism_name(f), c->tgt(f), c->src(f));
  for (int x = 0; x < c->object_count(); ++x) b.set_identity(x, c->identity(x));
  // In C^op the composite g∘f is C's f∘g.
  for (int f = 0; f < c->morphism_count(); ++f)
    for (int g : c->out(c->tgt(f))) b.set_compose(f, g, c->compose(g, f));
  return share(b.build());
}

CatRef product(const CatRef& a, const CatRef& b) {
  FinCat::Builder bld;
  const int nb = b->object_count();
  const int mb = b->morphism_count();
  for (int x = 0; x < a->object_count(); ++x)
    for (int y = 0; y < nb; ++y) bld.add_object("(" + a->object_name(x) + "," + b->object_name(y) + ")");
  for (int f = 0; f < a->morphism_count(); ++f)
    for (int g = 0; g < mb; ++g)
      bld.add_morphism("(" + a->morphism_name(f) + "," + b->morphism_name(g) + ")", a->src(f) * nb + b->src(g),
                       a->tgt(f) * nb + b->tgt(g));
  for (int x = 0; x < a->object_count(); ++x)
    for (int y = 0; y < nb; ++y) bld.set_identity(x * nb + y, a->identity(x) * mb + b->identity(y));
  for (int f = 0; f < a->morphism_count(); ++f)
    for (int f2 : a->out(a->tgt(f)))
      for (int g = 0; g < mb; ++g)
        for (int g2 : b->out(b->tgt(g)))
          bld.set_compose(f2 * mb + g2, f * mb + g, a->compose(f2, f) * mb + b->compose(g2, g));
  return share(bld.build());
}

FinFunctor product_projection(const CatRef& prod, const CatRef& a, const CatRef& b, int side) {
  FinFunctor p{prod, side == 0 ? a : b, {}, {}};
  const int nb = b->object_count();
  const int mb = b->morphism_count();
  for (int x = 0; x < prod->object_count(); ++x) p.obj.push_back(side == 0 ? x / nb : x % nb);
  for (int f = 0; f < prod->morphism_count(); ++f) p.mor.push_back(side == 0 ? f / mb : f % mb);
  return p;
}

CatRef coproduct(const CatRef& a, const CatRef& b) {
  FinCat::Builder bld;
  const int na = a->object_count();
  const int ma = a->morphism_count();
  for (int x = 0; x < na; ++x) bld.add_object("inl(" + a->object_name(x) + ")");
  for (int y = 0; y < b->object_count(); ++y) bld.add_object("inr(" + b->object_name(y) + ")");
  for (int f = 0; f < ma; ++f) bld.add_morphism("inl(" + a->morphism_name(f) + ")", a->src(f), a->tgt(f));
  for (int g = 0; g < b->morphism_count(); ++g)
    bld.add_morphism("inr(" + b->morphism_name(g) + ")", na + b->src(g), na + b->tgt(g));
  for (int x = 0; x < na; ++x) bld.set_identity(x, a->identity(x));
  for (int y = 0; y < b->object_count(); ++y) bld.set_identity(na + y, ma + b->identity(y));
  for (int g = 0; g < ma; ++g)
    for (int f : a->in(a->src(g))) bld.set_compose(g, f, a->compose(g, f));
  for (int g = 0; g < b->morphism_count(); ++g)
    for (int f : b->in(b->src(g))) bld.set_compose(ma + g, ma + f, ma + b->compose(g, f));
  return share(bld.build());
}

int Comma::find_object(int a, int b, int h) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].a == a && objects[i].b == b && objects[i].h == h) return static_cast<int>(i);
  return -1;
}

namespace {

std::string bld_object_name(const FinCat& a, const FinCat& b, const FinCat& c, const Comma::Obj& o) {
  return "(" + a.object_name(o.a) + "," + b.object_name(o.b) + "," + c.morphism_name(o.h) + ")";
}

}  // namespace

Comma comma(const FinFunctor& f, const FinFunctor& g) {
  if (!identical(*f.cod, *g.cod)) throw PreconditionFailed("comma: functors do not share a codomain");
  const FinCat& a = *f.dom;
  const FinCat& b = *g.dom;
  const FinCat& c = *f.cod;
  Comma out;
  FinCat::Builder bld;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < b.object_count(); ++y)
      for (int h : c.hom(f.obj[x], g.obj[y])) {
        out.objects.push_back({x, y, h});
        bld.add_object(bld_object_name(a, b, c, out.objects.back()));
      }
  const int n = static_cast<int>(out.objects.size());
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(bld_object_name(a, b, c, out.objects[i]));
  // Morphisms grouped by (source, target) so hom lists follow identifier order.
  std::map<std::tuple<int, int, int, int>, int> index;  // (s, t, u, v)
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto& os = out.objects[s];
      const auto& ot = out.objects[t];
      for (int u : a.hom(os.a, ot.a))
        for (int v : b.hom(os.b, ot.b)) {
          if (c.compose(g.mor[v], os.h) != c.compose(ot.h, f.mor[u])) continue;
          const int id = bld.add_morphism(
              "[" + a.morphism_name(u) + "," + b.morphism_name(v) + "]" + names[s] + "->" + names[t], s, t);
          index[{s, t, u, v}] = id;
          out.morphisms.push_back({u, v});
        }
    }
  for (int s = 0; s < n; ++s) {
    const auto& os = out.objects[s];
    bld.set_identity(s, index.at({s, s, a.identity(os.a), b.identity(os.b)}));
  }
  for (const auto& [k1, m1] : index) {
    const auto [s, t, u, v] = k1;
    for (const auto& [k2, m2] : index) {
      const auto [s2, t2, u2, v2] = k2;
      if (s2 != t) continue;
      bld.set_compose(m2, m1, index.at({s, t2, a.compose(u2, u), b.compose(v2, v)}));
    }
  }
  out.cat = share(bld.build());
  out.proj_a = FinFunctor{out.cat, f.dom, {}, {}};
  out.proj_b = FinFunctor{out.cat, g.dom, {}, {}};
  for (const auto& o : out.objects) {
    out.proj_a.obj.push_back(o.a);
    out.proj_b.obj.push_back(o.b);
  }
  for (const auto& m : out.morphisms) {
    out.proj_a.mor.push_back(m.u);
    out.proj_b.mor.push_back(m.v);
  }
  return out;
}

Subcategory full_subcategory(const CatRef& c, const std::vector<int>& objects) {
  Subcategory s;
  s.obj_back.assign(c->object_count(), -1);
  s.mor_back.assign(c->morphism_count(), -1);
  FinCat::Builder b;
  for (int x : objects) {
    s.obj_back[x] = b.add_object(c->object_name(x));
    s.obj_incl.push_back(x);
  }
  for (int x : objects)
    for (int y : objects)
      for (int m : c->hom(x, y)) {
        s.mor_back[m] = b.add_morphism(c->morphism_name(m), s.obj_back[x], s.obj_back[y]);
        s.mor_incl.push_back(m);
      }
  for (int x : objects) b.set_identity(s.obj_back[x], s.mor_back[c->identity(x)]);
  for (int g : s.mor_incl)
    for (int f : c->in(c->src(g)))
      if (s.mor_back[f] >= 0) b.set_compose(s.mor_back[g], s.mor_back[f], s.mor_back[c->compose(g, f)]);
  s.cat = share(b.build());
  return s;
}

Subcategory fiber(const OverBase& p, int x) {
  const CatRef& e = p.proj.dom;
  const int idx = p.base().identity(x);
  Subcategory s;
  s.obj_back.assign(e->object_count(), -1);
  s.mor_back.assign(e->morphism_count(), -1);
  FinCat::Builder b;
  for (int o = 0; o < e->object_count(); ++o)
    if (p.proj.obj[o] == x) {
      s.obj_back[o] = b.add_object(e->object_name(o));
      s.obj_incl.push_back(o);
    }
  for (int so : s.obj_incl)
    for (int to : s.obj_incl)
      for (int m : e->hom(so, to))
        if (p.proj.mor[m] == idx) {
          s.mor_back[m] = b.add_morphism(e->morphism_name(m), s.obj_back[so], s.obj_back[to]);
          s.mor_incl.push_back(m);
        }
  for (int o : s.obj_incl) b.set_identity(s.obj_back[o], s.mor_back[e->identity(o)]);
  for (int g : s.mor_incl)
    for (int f : e->in(e->src(g)))
      if (s.mor_back[f] >= 0) b.set_compose(s.mor_back[g], s.mor_back[f], s.mor_back[e->compose(g, f)]);
  s.cat = share(b.build());
  return s;
}

IntervalSides interval_sides(const FinCat& base) {
  if (base.object_count() == 2 && base.morphism_count() == 3) {
    for (int m = 0; m < 3; ++m)
      if (!base.is_identity(m) && base.src(m) != base.tgt(m)) return {base.src(m), base.tgt(m), m};
  }
  throw PreconditionFailed("base is not the interval [1]");
}

FinFunctor identity_functor(const CatRef& c) {
  FinFunctor f{c, c, {}, {}};
  for (int x = 0; x < c->object_count(); ++x) f.obj.push_back(x);
  for (int m = 0; m < c->morphism_count(); ++m) f.mor.push_back(m);
  return f;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor h{f.dom, g.cod, {}, {}};
  for (int x : f.obj) h.obj.push_back(g.obj[x]);
  for (int m : f.mor) h.mor.push_back(g.mor[m]);
  return h;
}

FinFunctor constant_functor(const CatRef& dom, const CatRef& cod, int x) {
  FinFunctor f{dom, cod, std::vector<int>(dom->object_count(), x),
               std::vector<int>(dom->morphism_count(), cod->identity(x))};
  return f;
}

FinFunctor inclusion(const Subcategory& s, const CatRef& ambient) {
  return FinFunctor{s.cat, ambient, s.obj_incl, s.mor_incl};
}

// --- isomorphisms -----------------------------------------------------------

std::optional<int> inverse_of(const FinCat& c, int m) {
  for (int k : c.hom(c.tgt(m), c.src(m)))
    if (c.compose(k, m) == c.identity(c.src(m)) && c.compose(m, k) == c.identity(c.tgt(m))) return k;
  return std::nullopt;
}

IsoClassPartition iso_classes(const FinCat& c) {
  IsoClassPartition p;
  p.block_of.assign(c.object_count(), -1);
  for (int x = 0; x < c.object_count(); ++x) {
    if (p.block_of[x] >= 0) continue;
    const int blk = static_cast<int>(p.blocks.size());
    p.blocks.push_back({x});
    p.block_of[x] = blk;
    for (int y = x + 1; y < c.object_count(); ++y) {
      if (p.block_of[y] >= 0) continue;
      for (int m : c.hom(x, y)) {
        if (auto inv = inverse_of(c, m)) {
          p.blocks[blk].push_back(y);
          p.block_of[y] = blk;
          p.witnesses.push_back({x, y, m, *inv});
          break;
        }
      }
    }
  }
  return p;
}

int AutGroup::position(int morphism) const {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == morphism) return static_cast<int>(i);
  return -1;
}

AutGroup aut_group(const FinCat& c, int x) {
  AutGroup g;
  g.object = x;
  g.carrier.push_back(c.identity(x));
  for (int m : c.hom(x, x))
    if (m != c.identity(x) && inverse_of(c, m)) g.carrier.push_back(m);
  const std::size_t n = g.carrier.size();
  g.table.assign(n, std::vector<int>(n, -1));
  g.inverse.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.table[i][j] = g.position(c.compose(g.carrier[i], g.carrier[j]));
    g.inverse[i] = g.position(*inverse_of(c, g.carrier[i]));
  }
  return g;
}

Subcategory core(const CatRef& c) {
  Subcategory s;
  s.obj_back.assign(c->object_count(), -1);
  s.mor_back.assign(c->morphism_count(), -1);
  FinCat::Builder b;
  for (int x = 0; x < c->object_count(); ++x) {
    s.obj_back[x] = b.add_object(c->object_name(x));
    s.obj_incl.push_back(x);
  }
  for (int m = 0; m < c->morphism_count(); ++m)
    if (inverse_of(*c, m)) {
      s.mor_back[m] = b.add_morphism(c->morphism_name(m), c->src(m), c->tgt(m));
      s.mor_incl.push_back(m);
    }
  for (int x = 0; x < c->object_count(); ++x) b.set_identity(x, s.mor_back[c->identity(x)]);
  for (int g : s.mor_incl)
    for (int f : c->in(c->src(g)))
      if (s.mor_back[f] >= 0) b.set_compose(s.mor_back[g], s.mor_back[f], s.mor_back[c->compose(g, f)]);
  s.cat = share(b.build());
  return s;
}

// --- natural transformations ------------------------------------------------

namespace {

void nat_search(const FinFunctor& f, const FinFunctor& g, bool iso_only, std::vector<int>& comp, int x,
                const std::function<bool(const std::vector<int>&)>& visit, bool& stop) {
  const FinCat& a = *f.dom;
  const FinCat& b = *f.cod;
  if (stop) return;
  if (x == a.object_count()) {
    if (!visit(comp)) stop = true;
    return;
  }
  for (int c : b.hom(f.obj[x], g.obj[x])) {
    if (iso_only && !inverse_of(b, c)) continue;
    comp[x] = c;
    bool ok = true;
    // Squares whose endpoints are both decided.
    for (int m : a.out(x)) {
      const int y = a.tgt(m);
      if (y > x) continue;
      if (b.compose(g.mor[m], c) != b.compose(comp[y], f.mor[m])) {
        ok = false;
        break;
      }
    }
    if (ok)
      for (int m : a.in(x)) {
        const int y = a.src(m);
        if (y >= x) continue;
        if (b.compose(g.mor[m], comp[y]) != b.compose(c, f.mor[m])) {
          ok = false;
          break;
        }
      }
    if (ok) nat_search(f, g, iso_only, comp, x + 1, visit, stop);
    if (stop) return;
  }
  comp[x] = -1;
}

}  // namespace

std::vector<NatTrans> natural_transformations(const FinFunctor& f, const FinFunctor& g) {
  std::vector<NatTrans> out;
  std::vector<int> comp(f.dom->object_count(), -1);
  bool stop = false;
  nat_search(f, g, false, comp, 0,
             [&](const std::vector<int>& c) {
               out.push_back(NatTrans{f, g, c});
               return true;
             },
             stop);
  return out;
}

std::optional<NatTrans> find_natural_iso(const FinFunctor& f, const FinFunctor& g) {
  std::optional<NatTrans> out;
  std::vector<int> comp(f.dom->object_count(), -1);
  bool stop = false;
  nat_search(f, g, true, comp, 0,
             [&](const std::vector<int>& c) {
               out = NatTrans{f, g, c};
               return false;
             },
             stop);
  return out;
}

NatTrans identity_transformation(const FinFunctor& f) {
  NatTrans t{f, f, {}};
  for (int x : f.obj) t.components.push_back(f.cod->identity(x));
  return t;
}

int FunctorCategory::find_functor(const FinFunctor& f) const {
  for (std::size_t i = 0; i < functors.size(); ++i)
    if (functors[i].obj == f.obj && functors[i].mor == f.mor) return static_cast<int>(i);
  return -1;
}

FunctorCategory functor_category(const CatRef& a, const CatRef& b, std::size_t cap) {
  FunctorCategory fc;
  fc.functors = enumerate_functors(a, b, cap);
  FinCat::Builder bld;
  const int n = static_cast<int>(fc.functors.size());
  for (int i = 0; i < n; ++i) bld.add_object("F" + std::to_string(i));
  // Components alone do not determine the target functor.
  std::map<std::tuple<int, int, std::vector<int>>, int> index;  // (source, target, components)
  std::vector<int> src_of, tgt_of;
  std::vector<std::vector<int>> out_of(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto ts = natural_transformations(fc.functors[i], fc.functors[j]);
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const int m = bld.add_morphism("F" + std::to_string(i) + "=>F" + std::to_string(j) + "#" + std::to_string(k), i, j);
        index[{i, j, ts[k].components}] = m;
        src_of.push_back(i);
        tgt_of.push_back(j);
        out_of[i].push_back(m);
        fc.arrows.push_back(std::move(ts[k]));
      }
    }
  for (int i = 0; i < n; ++i) bld.set_identity(i, index.at({i, i, identity_transformation(fc.functors[i]).components}));
  const FinCat& bc = *b;
  for (std::size_t s = 0; s < fc.arrows.size(); ++s)
    for (int t : out_of[tgt_of[s]]) {
      std::vector<int> comp(a->object_count());
      for (int x = 0; x < a->object_count(); ++x)
        comp[x] = bc.compose(fc.arrows[t].components[x], fc.arrows[s].components[x]);
      bld.set_compose(t, static_cast<int>(s), index.at({src_of[s], tgt_of[t], comp}));
    }
  fc.cat = share(bld.build());
  return fc;
}

}  // namespace fcat

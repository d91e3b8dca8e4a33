#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fcat/catlang.hpp"

namespace fcat {

namespace {

std::string q(const std::string& s) {
  bool bare = !s.empty();
  for (unsigned char ch : s)
    if (!(std::isalnum(ch) || ch == '_' || ch == '\'' || ch >= 0x80)) bare = false;
  if (bare) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

std::vector<int> sorted_by(int n, const std::function<const std::string&(int)>& name) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return name(a) < name(b); });
  return idx;
}

std::vector<int> objects_sorted(const FinCat& c) {
  return sorted_by(c.object_count(), [&](int i) -> const std::string& { return c.object_name(i); });
}
std::vector<int> morphisms_sorted(const FinCat& c) {
  return sorted_by(c.morphism_count(), [&](int i) -> const std::string& { return c.morphism_name(i); });
}
std::vector<int> elements_sorted(const FinSet& s) {
  return sorted_by(s.size(), [&](int i) -> const std::string& { return s.elements[i]; });
}

void write_set(std::ostream& o, const FinSet& s) {
  for (int e : elements_sorted(s)) o << ' ' << q(s.elements[e]);
  o << ";\n";
}

void write_function(std::ostream& o, const FinSet& from, const FinSet& to, const Function& fn) {
  bool first = true;
  for (int e : elements_sorted(from)) {
    o << (first ? " " : ", ") << q(from.elements[e]) << " -> " << q(to.elements[fn[e]]);
    first = false;
  }
  o << ";\n";
}

void write_category(std::ostream& o, const std::string& name, const FinCat& c) {
  o << "category " << q(name) << " {\n  objects:";
  for (int x : objects_sorted(c)) o << ' ' << q(c.object_name(x));
  o << ";\n";
  const auto mors = morphisms_sorted(c);
  for (int m : mors)
    if (!c.is_identity(m))
      o << "  mor " << q(c.morphism_name(m)) << ": " << q(c.object_name(c.src(m))) << " -> "
        << q(c.object_name(c.tgt(m))) << ";\n";
  for (int x : objects_sorted(c)) {
    const std::string& id = c.morphism_name(c.identity(x));
    if (id != "id_" + c.object_name(x)) o << "  id " << q(c.object_name(x)) << " = " << q(id) << ";\n";
  }
  for (int g : mors) {
    if (c.is_identity(g)) continue;
    std::vector<int> ins(c.in(c.src(g)).begin(), c.in(c.src(g)).end());
    std::sort(ins.begin(), ins.end(), [&](int a, int b) { return c.morphism_name(a) < c.morphism_name(b); });
    for (int f : ins) {
      if (c.is_identity(f)) continue;
      o << "  compose " << q(c.morphism_name(g)) << "." << q(c.morphism_name(f)) << " = "
        << q(c.morphism_name(c.compose(g, f))) << ";\n";
    }
  }
  o << "}\n";
}

}  // namespace

std::string serialize_category(const std::string& name, const FinCat& c) {
  std::ostringstream o;
  write_category(o, name, c);
  return o.str();
}

std::string serialize(const Document& doc) {
  std::ostringstream o;
  bool first = true;
  auto sep = [&] {
    if (!first) o << '\n';
    first = false;
  };
  for (const auto& [name, c] : doc.categories) {
    sep();
    write_category(o, name, *c);
  }
  for (const auto& [name, d] : doc.functors) {
    sep();
    const FinFunctor& f = d.functor;
    const FinCat& a = *f.dom;
    const FinCat& b = *f.cod;
    o << "functor " << q(name) << ": " << q(d.dom) << " -> " << q(d.cod) << " {\n";
    for (int x : objects_sorted(a)) o << "  obj " << q(a.object_name(x)) << " => " << q(b.object_name(f.obj[x])) << ";\n";
    for (int m : morphisms_sorted(a))
      if (!a.is_identity(m))
        o << "  mor " << q(a.morphism_name(m)) << " => " << q(b.morphism_name(f.mor[m])) << ";\n";
    o << "}\n";
  }
  for (const auto& [name, d] : doc.nattrans) {
    sep();
    const FinCat& a = *d.trans.src.dom;
    const FinCat& b = *d.trans.src.cod;
    o << "nattrans " << q(name) << ": " << q(d.src) << " => " << q(d.tgt) << " {\n";
    for (int x : objects_sorted(a))
      o << "  at " << q(a.object_name(x)) << " = " << q(b.morphism_name(d.trans.components[x])) << ";\n";
    o << "}\n";
  }
  auto write_sets = [&](const char* kind, const std::string& name, const std::string& base, const FinCat& c,
                        const std::vector<FinSet>& at, const std::vector<Function>& action, bool covariant) {
    sep();
    o << kind << ' ' << q(name) << " on " << q(base) << " {\n";
    for (int x : objects_sorted(c)) {
      o << "  at " << q(c.object_name(x)) << ":";
      write_set(o, at[x]);
    }
    for (int m : morphisms_sorted(c)) {
      if (c.is_identity(m)) continue;
      const FinSet& from = at[covariant ? c.src(m) : c.tgt(m)];
      const FinSet& to = at[covariant ? c.tgt(m) : c.src(m)];
      if (from.size() == 0) continue;
      o << "  act " << q(c.morphism_name(m)) << ":";
      write_function(o, from, to, action[m]);
    }
    o << "}\n";
  };
  for (const auto& [name, d] : doc.presheaves)
    write_sets("presheaf", name, d.base, *d.presheaf.base, d.presheaf.at, d.presheaf.action, false);
  for (const auto& [name, d] : doc.diagrams)
    write_sets("diagram", name, d.shape, *d.diagram.shape, d.diagram.at, d.diagram.action, true);
  for (const auto& [name, d] : doc.profunctors) {
    sep();
    const Profunctor& h = d.prof;
    const FinCat& c = *h.left;
    const FinCat& e = *h.right;
    o << "profunctor " << q(name) << ": " << q(d.left) << " -> " << q(d.right) << " {\n";
    for (int a : objects_sorted(c))
      for (int b : objects_sorted(e)) {
        if (h.value(a, b).size() == 0) continue;
        o << "  at " << q(c.object_name(a)) << ", " << q(e.object_name(b)) << ":";
        write_set(o, h.value(a, b));
      }
    for (int u : morphisms_sorted(c)) {
      if (c.is_identity(u)) continue;
      for (int b : objects_sorted(e)) {
        const FinSet& from = h.value(c.tgt(u), b);
        if (from.size() == 0) continue;
        o << "  left " << q(c.morphism_name(u)) << ", " << q(e.object_name(b)) << ":";
        write_function(o, from, h.value(c.src(u), b), h.left_action(u, b));
      }
    }
    for (int v : morphisms_sorted(e)) {
      if (e.is_identity(v)) continue;
      for (int a : objects_sorted(c)) {
        const FinSet& from = h.value(a, e.src(v));
        if (from.size() == 0) continue;
        o << "  right " << q(e.morphism_name(v)) << ", " << q(c.object_name(a)) << ":";
        write_function(o, from, h.value(a, e.tgt(v)), h.right_action(v, a));
      }
    }
    o << "}\n";
  }
  for (const auto& [name, d] : doc.overs) {
    sep();
    o << "over " << q(name) << " = " << q(d.functor) << ";\n";
  }
  return o.str();
}

// --- structural comparison ---------------------------------------------------

namespace {

using Named = std::map<std::string, std::string>;

bool same_set(const FinSet& a, const FinSet& b) {
  return std::set<std::string>(a.elements.begin(), a.elements.end()) ==
         std::set<std::string>(b.elements.begin(), b.elements.end());
}

bool same_function(const FinSet& fa, const FinSet& ta, const Function& a, const FinSet& fb, const FinSet& tb,
                   const Function& b) {
  for (int i = 0; i < fa.size(); ++i) {
    const int j = fb.index_of(fa.elements[i]);
    if (j < 0 || ta.elements[a[i]] != tb.elements[b[j]]) return false;
  }
  return true;
}

bool same_sets_over(const FinCat& ca, const std::vector<FinSet>& ata, const std::vector<Function>& aa,
                    const FinCat& cb, const std::vector<FinSet>& atb, const std::vector<Function>& ab, bool covariant) {
  for (int x = 0; x < ca.object_count(); ++x)
    if (!same_set(ata[x], atb[cb.object(ca.object_name(x))])) return false;
  for (int m = 0; m < ca.morphism_count(); ++m) {
    const int n = cb.morphism(ca.morphism_name(m));
    const int fa = covariant ? ca.src(m) : ca.tgt(m), ta = covariant ? ca.tgt(m) : ca.src(m);
    const int fb = covariant ? cb.src(n) : cb.tgt(n), tb = covariant ? cb.tgt(n) : cb.src(n);
    if (!same_function(ata[fa], ata[ta], aa[m], atb[fb], atb[tb], ab[n])) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const Document& a, const Document& b, std::string* detail) {
  auto fail = [&](const std::string& s) {
    if (detail) *detail = s;
    return false;
  };
  auto keys_equal = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  };
  if (!keys_equal(a.categories, b.categories) || !keys_equal(a.functors, b.functors) ||
      !keys_equal(a.nattrans, b.nattrans) || !keys_equal(a.presheaves, b.presheaves) ||
      !keys_equal(a.diagrams, b.diagrams) || !keys_equal(a.profunctors, b.profunctors) ||
      !keys_equal(a.overs, b.overs))
    return fail("declared names differ");
  for (const auto& [n, c] : a.categories)
    if (!structurally_equal(*c, *b.categories.at(n))) return fail("category '" + n + "' differs");
  auto same_functor = [](const FinFunctor& f, const FinFunctor& g) {
    for (int x = 0; x < f.dom->object_count(); ++x)
      if (f.cod->object_name(f.obj[x]) != g.cod->object_name(g.obj[g.dom->object(f.dom->object_name(x))]))
        return false;
    for (int m = 0; m < f.dom->morphism_count(); ++m)
      if (f.cod->morphism_name(f.mor[m]) != g.cod->morphism_name(g.mor[g.dom->morphism(f.dom->morphism_name(m))]))
        return false;
    return true;
  };
  try {
    for (const auto& [n, d] : a.functors) {
      const auto& e = b.functors.at(n);
      if (d.dom != e.dom || d.cod != e.cod || !same_functor(d.functor, e.functor))
        return fail("functor '" + n + "' differs");
    }
    for (const auto& [n, d] : a.nattrans) {
      const auto& e = b.nattrans.at(n);
      if (d.src != e.src || d.tgt != e.tgt) return fail("nattrans '" + n + "' differs");
      const FinCat& da = *d.trans.src.dom;
      const FinCat& db = *e.trans.src.dom;
      for (int x = 0; x < da.object_count(); ++x)
        if (d.trans.src.cod->morphism_name(d.trans.components[x]) !=
            e.trans.src.cod->morphism_name(e.trans.components[db.object(da.object_name(x))]))
          return fail("nattrans '" + n + "' differs");
    }
    for (const auto& [n, d] : a.presheaves) {
      const auto& e = b.presheaves.at(n);
      if (d.base != e.base || !same_sets_over(*d.presheaf.base, d.presheaf.at, d.presheaf.action, *e.presheaf.base,
                                              e.presheaf.at, e.presheaf.action, false))
        return fail("presheaf '" + n + "' differs");
    }
    for (const auto& [n, d] : a.diagrams) {
      const auto& e = b.diagrams.at(n);
      if (d.shape != e.shape || !same_sets_over(*d.diagram.shape, d.diagram.at, d.diagram.action, *e.diagram.shape,
                                                e.diagram.at, e.diagram.action, true))
        return fail("diagram '" + n + "' differs");
    }
    for (const auto& [n, d] : a.profunctors) {
      const auto& e = b.profunctors.at(n);
      if (d.left != e.left || d.right != e.right) return fail("profunctor '" + n + "' differs");
      const Profunctor& h = d.prof;
      const Profunctor& k = e.prof;
      const FinCat& c = *h.left;
      const FinCat& dd = *h.right;
      auto kc = [&](int x) { return k.left->object(c.object_name(x)); };
      auto kd = [&](int y) { return k.right->object(dd.object_name(y)); };
      for (int x = 0; x < c.object_count(); ++x)
        for (int y = 0; y < dd.object_count(); ++y)
          if (!same_set(h.value(x, y), k.value(kc(x), kd(y)))) return fail("profunctor '" + n + "' differs");
      for (int u = 0; u < c.morphism_count(); ++u)
        for (int y = 0; y < dd.object_count(); ++y) {
          const int ku = k.left->morphism(c.morphism_name(u));
          if (!same_function(h.value(c.tgt(u), y), h.value(c.src(u), y), h.left_action(u, y),
                             k.value(kc(c.tgt(u)), kd(y)), k.value(kc(c.src(u)), kd(y)), k.left_action(ku, kd(y))))
            return fail("profunctor '" + n + "' differs");
        }
      for (int v = 0; v < dd.morphism_count(); ++v)
        for (int x = 0; x < c.object_count(); ++x) {
          const int kv = k.right->morphism(dd.morphism_name(v));
          if (!same_function(h.value(x, dd.src(v)), h.value(x, dd.tgt(v)), h.right_action(v, x),
                             k.value(kc(x), kd(dd.src(v))), k.value(kc(x), kd(dd.tgt(v))), k.right_action(kv, kc(x))))
            return fail("profunctor '" + n + "' differs");
        }
    }
    for (const auto& [n, d] : a.overs)
      if (d.functor != b.overs.at(n).functor) return fail("over '" + n + "' differs");
  } catch (const Error& e) {
    return fail(e.what());
  }
  if (detail) *detail = "structurally equal";
  return true;
}

}  // namespace fcat

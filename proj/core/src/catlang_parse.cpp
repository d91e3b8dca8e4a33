#include <fstream>
#include <set>
#include <sstream>

#include "fcat/catlang.hpp"

namespace fcat {

// --- Document ---------------------------------------------------------------

bool Document::has(const std::string& n) const {
  return categories.count(n) || functors.count(n) || nattrans.count(n) || presheaves.count(n) ||
         diagrams.count(n) || profunctors.count(n) || overs.count(n);
}

namespace {

template <class M>
const auto& lookup(const M& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw UnknownObject(std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}

}  // namespace

const CatRef& Document::category(const std::string& n) const { return lookup(categories, n, "category"); }
const FinFunctor& Document::functor(const std::string& n) const { return lookup(functors, n, "functor").functor; }
const NatTrans& Document::nat(const std::string& n) const { return lookup(nattrans, n, "nattrans").trans; }
const Presheaf& Document::presheaf(const std::string& n) const { return lookup(presheaves, n, "presheaf").presheaf; }
const SetDiagram& Document::diagram(const std::string& n) const { return lookup(diagrams, n, "diagram").diagram; }
const Profunctor& Document::profunctor(const std::string& n) const {
  return lookup(profunctors, n, "profunctor").prof;
}
const OverBase& Document::over(const std::string& n) const { return lookup(overs, n, "over").over; }

std::string Document::category_name(const CatRef& c) const {
  for (const auto& [n, d] : categories)
    if (d == c) return n;
  for (const auto& [n, d] : categories)
    if (identical(*d, *c)) return n;
  throw UnknownObject("category is not declared in the document");
}

void Document::add_category(const std::string& n, CatRef c) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  categories.emplace(n, std::move(c));
}

void Document::add_functor(const std::string& n, const FinFunctor& f) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  functors.emplace(n, FunctorDecl{category_name(f.dom), category_name(f.cod), f});
}

void Document::add_nattrans(const std::string& n, const std::string& s, const std::string& t, const NatTrans& x) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  functor(s);
  functor(t);
  nattrans.emplace(n, NatTransDecl{s, t, x});
}

void Document::add_presheaf(const std::string& n, const Presheaf& p) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  presheaves.emplace(n, PresheafDecl{category_name(p.base), p});
}

void Document::add_diagram(const std::string& n, const SetDiagram& d) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  diagrams.emplace(n, DiagramDecl{category_name(d.shape), d});
}

void Document::add_profunctor(const std::string& n, const Profunctor& h) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  profunctors.emplace(n, ProfunctorDecl{category_name(h.left), category_name(h.right), h});
}

void Document::add_over(const std::string& n, const std::string& f) {
  if (has(n)) throw PreconditionFailed("duplicate declaration '" + n + "'");
  overs.emplace(n, OverDecl{f, OverBase{functor(f)}});
}

// --- lexer ------------------------------------------------------------------

namespace {

enum class Tok { name, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  bool quoted = false;
  int line = 1, col = 1;
};

bool bare_char(unsigned char ch) {
  return std::isalnum(ch) || ch == '_' || ch == '\'' || ch >= 0x80;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const unsigned char ch = static_cast<unsigned char>(s[i]);
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (bare_char(ch)) {
      t.kind = Tok::name;
      while (i < s.size() && bare_char(static_cast<unsigned char>(s[i]))) {
        t.text += s[i];
        advance(1);
      }
    } else if (ch == '"') {
      t.kind = Tok::name;
      t.quoted = true;
      advance(1);
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (s[i] == '\n') break;
        if (s[i] == '\\' && i + 1 < s.size()) {
          advance(1);
          const char e = s[i];
          t.text += e == 'n' ? '\n' : e;
          advance(1);
          continue;
        }
        t.text += s[i];
        advance(1);
      }
      if (!closed) throw SyntaxError("unterminated string", t.line, t.col);
    } else if (s.substr(i, 2) == "->" || s.substr(i, 2) == "=>") {
      t.kind = Tok::punct;
      t.text = std::string(s.substr(i, 2));
      advance(2);
    } else if (std::string_view("{};:,.=()").find(static_cast<char>(ch)) != std::string_view::npos) {
      t.kind = Tok::punct;
      t.text = std::string(1, static_cast<char>(ch));
      advance(1);
    } else {
      throw SyntaxError(std::string("unexpected character '") + static_cast<char>(ch) + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// --- parser -----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Document run() {
    while (peek().kind != Tok::end) {
      const Token& kw = expect_name();
      if (kw.quoted) throw SyntaxError("expected a declaration keyword", kw.line, kw.col);
      if (kw.text == "category")
        parse_category();
      else if (kw.text == "functor")
        parse_functor();
      else if (kw.text == "nattrans")
        parse_nattrans();
      else if (kw.text == "presheaf")
        parse_sets(false);
      else if (kw.text == "diagram")
        parse_sets(true);
      else if (kw.text == "profunctor")
        parse_profunctor();
      else if (kw.text == "over")
        parse_over();
      else
        throw SyntaxError("unknown declaration '" + kw.text + "'", kw.line, kw.col);
    }
    return std::move(doc_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_punct(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool at_keyword(const char* k) const { return peek().kind == Tok::name && !peek().quoted && peek().text == k; }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("expected " + wanted + ", got " + got, t.line, t.col);
  }
  const Token& expect(const char* p) {
    if (!at_punct(p)) unexpected(std::string("'") + p + "'");
    return next();
  }
  const Token& expect_name() {
    if (peek().kind != Tok::name) unexpected("a name");
    return next();
  }
  void expect_keyword(const char* k) {
    if (!at_keyword(k)) unexpected(std::string("'") + k + "'");
    next();
  }

  const Token& new_name() {
    const Token& t = expect_name();
    if (doc_.has(t.text)) throw ValidationError("duplicate declaration '" + t.text + "'", t.line, t.col);
    return t;
  }
  CatRef ref_category(const Token& t) {
    auto it = doc_.categories.find(t.text);
    if (it == doc_.categories.end()) throw UnresolvedReference(t.text, t.line, t.col);
    return it->second;
  }
  const FunctorDecl& ref_functor(const Token& t) {
    auto it = doc_.functors.find(t.text);
    if (it == doc_.functors.end()) throw UnresolvedReference(t.text, t.line, t.col);
    return it->second;
  }
  static int obj_of(const FinCat& c, const Token& t) {
    auto o = c.find_object(t.text);
    if (!o) throw UnresolvedReference(t.text, t.line, t.col);
    return *o;
  }
  static int mor_of(const FinCat& c, const Token& t) {
    auto m = c.find_morphism(t.text);
    if (!m) throw UnresolvedReference(t.text, t.line, t.col);
    return *m;
  }
  static int elem_of(const FinSet& s, const Token& t) {
    const int i = s.index_of(t.text);
    if (i < 0) throw UnresolvedReference(t.text, t.line, t.col);
    return i;
  }

  // name (':' | ',') ...
  std::vector<Token> name_list_until(const char* stop) {
    std::vector<Token> out;
    while (!at_punct(stop)) out.push_back(expect_name());
    return out;
  }

  // --- category ---

  struct Entry {
    Token g, f, h;
  };

  void parse_category() {
    const Token name = new_name();
    expect("{");
    std::vector<Token> objects;
    std::vector<std::tuple<Token, Token, Token>> mors;  // name, src, tgt
    std::vector<std::pair<Token, Token>> ids;
    std::vector<Entry> entries;
    std::vector<std::tuple<Token, Token, Token>> gens;
    std::vector<std::pair<std::vector<Token>, std::vector<Token>>> rels;
    std::vector<Token> rel_pos;
    bool have_objects = false;
    std::optional<std::pair<Token, std::size_t>> close;
    while (!at_punct("}")) {
      const Token kw = expect_name();
      if (kw.quoted) throw SyntaxError("expected a statement keyword", kw.line, kw.col);
      if (kw.text == "objects") {
        if (have_objects) throw SyntaxError("objects declared twice", kw.line, kw.col);
        have_objects = true;
        expect(":");
        objects = name_list_until(";");
        expect(";");
      } else if (kw.text == "mor") {
        const Token m = expect_name();
        expect(":");
        const Token s = expect_name();
        expect("->");
        const Token t = expect_name();
        expect(";");
        mors.emplace_back(m, s, t);
      } else if (kw.text == "id") {
        const Token o = expect_name();
        expect("=");
        const Token m = expect_name();
        expect(";");
        ids.emplace_back(o, m);
      } else if (kw.text == "compose") {
        Entry e;
        e.g = expect_name();
        expect(".");
        e.f = expect_name();
        expect("=");
        e.h = expect_name();
        expect(";");
        entries.push_back(e);
      } else if (kw.text == "generators") {
        expect("{");
        while (!at_punct("}")) {
          const Token m = expect_name();
          expect(":");
          const Token s = expect_name();
          expect("->");
          const Token t = expect_name();
          expect(";");
          gens.emplace_back(m, s, t);
        }
        expect("}");
      } else if (kw.text == "relations") {
        expect("{");
        while (!at_punct("}")) {
          rel_pos.push_back(peek());
          auto lhs = parse_word_tokens();
          expect("=");
          auto rhs = parse_word_tokens();
          expect(";");
          rels.emplace_back(std::move(lhs), std::move(rhs));
        }
        expect("}");
      } else if (kw.text == "close") {
        expect("(");
        expect_keyword("max");
        expect("=");
        const Token n = expect_name();
        std::size_t v = 0;
        try {
          std::size_t used = 0;
          v = std::stoul(n.text, &used);
          if (used != n.text.size()) throw std::invalid_argument("x");
        } catch (const std::exception&) {
          throw SyntaxError("expected a number", n.line, n.col);
        }
        expect(")");
        expect(";");
        close = std::make_pair(kw, v);
      } else {
        throw SyntaxError("unknown statement '" + kw.text + "'", kw.line, kw.col);
      }
    }
    expect("}");
    if (!have_objects) throw SyntaxError("category without an objects statement", name.line, name.col);
    std::set<std::string> seen;
    for (const auto& o : objects)
      if (!seen.insert(o.text).second) throw ValidationError("duplicate object '" + o.text + "'", o.line, o.col);
    const bool generated = !gens.empty() || !rels.empty() || close;
    if (generated && (!mors.empty() || !entries.empty() || !ids.empty()))
      throw SyntaxError("a category uses either mor/compose or generators/relations", name.line, name.col);
    if (generated) {
      if (!close) throw SyntaxError("generators need a close(max=N) statement", name.line, name.col);
      build_generated(name, objects, gens, rels, rel_pos, close->first, close->second);
    } else {
      build_table(name, objects, mors, ids, entries);
    }
  }

  std::vector<Token> parse_word_tokens() {
    std::vector<Token> w{expect_name()};
    while (at_punct(".")) {
      next();
      w.push_back(expect_name());
    }
    return w;
  }

  void build_table(const Token& name, const std::vector<Token>& objects,
                   const std::vector<std::tuple<Token, Token, Token>>& mors,
                   const std::vector<std::pair<Token, Token>>& ids, const std::vector<Entry>& entries) {
    FinCat::Builder b;
    std::map<std::string, int> obj;
    for (const auto& o : objects) obj[o.text] = b.add_object(o.text);
    auto find_obj = [&](const Token& t) {
      auto it = obj.find(t.text);
      if (it == obj.end()) throw UnresolvedReference(t.text, t.line, t.col);
      return it->second;
    };
    std::vector<std::string> id_name(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) id_name[i] = "id_" + objects[i].text;
    std::set<int> renamed;
    for (const auto& [o, m] : ids) {
      const int x = find_obj(o);
      if (!renamed.insert(x).second) throw ValidationError("identity of '" + o.text + "' named twice", o.line, o.col);
      id_name[x] = m.text;
    }
    std::map<std::string, std::pair<int, int>> mor;  // name -> (index, src)
    std::vector<std::pair<int, int>> ends;
    auto add = [&](const Token& t, int s, int d, bool identity) {
      if (mor.count(t.text)) throw ValidationError("duplicate morphism '" + t.text + "'", t.line, t.col);
      const int i = identity ? b.add_identity(s, t.text) : b.add_morphism(t.text, s, d);
      mor[t.text] = {i, s};
      ends.emplace_back(s, d);
    };
    for (std::size_t x = 0; x < objects.size(); ++x) {
      Token t = objects[x];
      for (const auto& [o, m] : ids)
        if (o.text == objects[x].text) t = m;
      t.text = id_name[x];
      add(t, static_cast<int>(x), static_cast<int>(x), true);
    }
    for (const auto& [m, s, t] : mors) add(m, find_obj(s), find_obj(t), false);
    auto find_mor = [&](const Token& t) {
      auto it = mor.find(t.text);
      if (it == mor.end()) throw UnresolvedReference(t.text, t.line, t.col);
      return it->second.first;
    };
    std::set<std::pair<int, int>> given;
    for (const auto& e : entries) {
      const int g = find_mor(e.g), f = find_mor(e.f), h = find_mor(e.h);
      const std::string label = "compose " + e.g.text + "." + e.f.text + " = " + e.h.text;
      if (ends[f].second != ends[g].first)
        throw ValidationError(label + ": '" + e.g.text + "' and '" + e.f.text + "' are not composable", e.g.line,
                              e.g.col);
      if (ends[h].first != ends[f].first || ends[h].second != ends[g].second)
        throw ValidationError(label + ": '" + e.h.text + "' has the wrong endpoints", e.h.line, e.h.col);
      if (!given.insert({g, f}).second) throw ValidationError(label + ": entry given twice", e.g.line, e.g.col);
      b.set_compose(g, f, h);
    }
    finish_category(name, b.build());
  }

  void build_generated(const Token& name, const std::vector<Token>& objects,
                       const std::vector<std::tuple<Token, Token, Token>>& gens,
                       const std::vector<std::pair<std::vector<Token>, std::vector<Token>>>& rels,
                       const std::vector<Token>& rel_pos, const Token& close_tok, std::size_t max) {
    Graph g;
    std::map<std::string, int> obj, edge;
    for (const auto& o : objects) {
      obj[o.text] = static_cast<int>(g.objects.size());
      g.objects.push_back(o.text);
    }
    auto find_obj = [&](const Token& t) {
      auto it = obj.find(t.text);
      if (it == obj.end()) throw UnresolvedReference(t.text, t.line, t.col);
      return it->second;
    };
    for (const auto& [m, s, t] : gens) {
      if (edge.count(m.text)) throw ValidationError("duplicate generator '" + m.text + "'", m.line, m.col);
      edge[m.text] = static_cast<int>(g.edges.size());
      g.edges.push_back({m.text, find_obj(s), find_obj(t)});
    }
    // A word element is a generator, `id`, or `id_<object>`.
    struct Elem {
      int edge = -1;
      int object = -1;  // typed identity
    };
    auto elem = [&](const Token& t) {
      if (auto it = edge.find(t.text); it != edge.end()) return Elem{it->second, -1};
      if (t.text == "id") return Elem{};
      if (t.text.rfind("id_", 0) == 0)
        if (auto it = obj.find(t.text.substr(3)); it != obj.end()) return Elem{-1, it->second};
      throw UnresolvedReference(t.text, t.line, t.col);
    };
    auto to_word = [&](const std::vector<Token>& toks, Word& w) {
      // Written g.f: apply the rightmost element first.
      for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
        const Elem e = elem(*it);
        if (e.edge >= 0) {
          const auto& ed = g.edges[e.edge];
          if (w.tgt >= 0 && w.tgt != ed.src)
            throw ValidationError("word is not composable at '" + it->text + "'", it->line, it->col);
          if (w.src < 0) w.src = ed.src;
          w.tgt = ed.tgt;
          w.edges.push_back(e.edge);
        } else if (e.object >= 0) {
          if (w.tgt >= 0 && w.tgt != e.object)
            throw ValidationError("word is not composable at '" + it->text + "'", it->line, it->col);
          if (w.src < 0) w.src = e.object;
          w.tgt = e.object;
        }
      }
    };
    std::vector<Relation> relations;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      Relation r;
      to_word(rels[i].first, r.lhs);
      to_word(rels[i].second, r.rhs);
      const Token& at = rel_pos[i];
      if (r.lhs.src < 0 && r.rhs.src < 0) throw ValidationError("relation between untyped identities", at.line, at.col);
      if (r.lhs.src < 0) {
        if (r.rhs.src != r.rhs.tgt) throw ValidationError("'id' equated with a non-endomorphism", at.line, at.col);
        r.lhs.src = r.lhs.tgt = r.rhs.src;
      }
      if (r.rhs.src < 0) {
        if (r.lhs.src != r.lhs.tgt) throw ValidationError("'id' equated with a non-endomorphism", at.line, at.col);
        r.rhs.src = r.rhs.tgt = r.lhs.src;
      }
      if (r.lhs.src != r.rhs.src || r.lhs.tgt != r.rhs.tgt)
        throw ValidationError("relation sides have different endpoints", at.line, at.col);
      relations.push_back(std::move(r));
    }
    FinCat c;
    try {
      c = close_generators(g, relations, max);
    } catch (const ClosureExceeded& e) {
      throw ClosureExceeded(e.max(), close_tok.line, close_tok.col);
    } catch (const PreconditionFailed& e) {
      throw ValidationError(e.what(), name.line, name.col);
    }
    finish_category(name, std::move(c));
  }

  void finish_category(const Token& name, FinCat c) {
    ValidationReport r = validate(c);
    if (!r.ok()) throw ValidationError("category '" + name.text + "': " + r.summary(), name.line, name.col);
    doc_.categories.emplace(name.text, share(std::move(c)));
  }

  // --- functor / nattrans ---

  void parse_functor() {
    const Token name = new_name();
    expect(":");
    const Token dn = expect_name();
    expect("->");
    const Token cn = expect_name();
    CatRef dom = ref_category(dn), cod = ref_category(cn);
    FinFunctor f{dom, cod, std::vector<int>(dom->object_count(), -1), std::vector<int>(dom->morphism_count(), -1)};
    expect("{");
    while (!at_punct("}")) {
      const Token kw = expect_name();
      if (kw.text == "obj") {
        const Token a = expect_name();
        expect("=>");
        const Token x = expect_name();
        expect(";");
        const int i = obj_of(*dom, a);
        if (f.obj[i] >= 0) throw ValidationError("object '" + a.text + "' mapped twice", a.line, a.col);
        f.obj[i] = obj_of(*cod, x);
      } else if (kw.text == "mor") {
        const Token m = expect_name();
        expect("=>");
        const Token u = expect_name();
        expect(";");
        const int i = mor_of(*dom, m);
        if (f.mor[i] >= 0) throw ValidationError("morphism '" + m.text + "' mapped twice", m.line, m.col);
        f.mor[i] = mor_of(*cod, u);
      } else {
        throw SyntaxError("expected 'obj' or 'mor'", kw.line, kw.col);
      }
    }
    expect("}");
    for (int a = 0; a < dom->object_count(); ++a)
      if (f.obj[a] < 0)
        throw ValidationError("functor '" + name.text + "' does not map object '" + dom->object_name(a) + "'",
                              name.line, name.col);
    for (int m = 0; m < dom->morphism_count(); ++m) {
      if (f.mor[m] >= 0) continue;
      if (!dom->is_identity(m))
        throw ValidationError("functor '" + name.text + "' does not map morphism '" + dom->morphism_name(m) + "'",
                              name.line, name.col);
      f.mor[m] = cod->identity(f.obj[dom->src(m)]);
    }
    ValidationReport r = validate(f);
    if (!r.ok()) throw ValidationError("functor '" + name.text + "': " + r.summary(), name.line, name.col);
    doc_.functors.emplace(name.text, FunctorDecl{dn.text, cn.text, std::move(f)});
  }

  void parse_nattrans() {
    const Token name = new_name();
    expect(":");
    const Token sn = expect_name();
    expect("=>");
    const Token tn = expect_name();
    const FunctorDecl& s = ref_functor(sn);
    const FunctorDecl& t = ref_functor(tn);
    if (s.dom != t.dom || s.cod != t.cod)
      throw ValidationError("functors '" + sn.text + "' and '" + tn.text + "' are not parallel", tn.line, tn.col);
    const FinCat& dom = *s.functor.dom;
    const FinCat& cod = *s.functor.cod;
    NatTrans x{s.functor, t.functor, std::vector<int>(dom.object_count(), -1)};
    expect("{");
    while (!at_punct("}")) {
      expect_keyword("at");
      const Token a = expect_name();
      expect("=");
      const Token m = expect_name();
      expect(";");
      const int i = obj_of(dom, a);
      if (x.components[i] >= 0) throw ValidationError("component at '" + a.text + "' given twice", a.line, a.col);
      x.components[i] = mor_of(cod, m);
    }
    expect("}");
    for (int a = 0; a < dom.object_count(); ++a)
      if (x.components[a] < 0)
        throw ValidationError("nattrans '" + name.text + "' has no component at '" + dom.object_name(a) + "'",
                              name.line, name.col);
    ValidationReport r = validate(x);
    if (!r.ok()) throw ValidationError("nattrans '" + name.text + "': " + r.summary(), name.line, name.col);
    doc_.nattrans.emplace(name.text, NatTransDecl{sn.text, tn.text, std::move(x)});
  }

  // --- sets and functions ---

  FinSet parse_set() {
    FinSet s;
    std::set<std::string> seen;
    while (!at_punct(";")) {
      const Token e = expect_name();
      if (!seen.insert(e.text).second) throw ValidationError("duplicate element '" + e.text + "'", e.line, e.col);
      s.elements.push_back(e.text);
    }
    expect(";");
    return s;
  }

  // pairs `x -> y` separated by commas, terminated by ';'
  Function parse_function(const FinSet& from, const FinSet& to, const Token& where) {
    Function fn(from.size(), -1);
    while (!at_punct(";")) {
      const Token a = expect_name();
      expect("->");
      const Token b = expect_name();
      const int i = elem_of(from, a);
      if (fn[i] >= 0) throw ValidationError("element '" + a.text + "' mapped twice", a.line, a.col);
      fn[i] = elem_of(to, b);
      if (!at_punct(";")) expect(",");
    }
    expect(";");
    for (int i = 0; i < from.size(); ++i)
      if (fn[i] < 0) throw ValidationError("element '" + from.elements[i] + "' is not mapped", where.line, where.col);
    return fn;
  }

  static Function identity_function(int n) {
    Function f(n);
    for (int i = 0; i < n; ++i) f[i] = i;
    return f;
  }

  void parse_sets(bool covariant) {
    const Token name = new_name();
    expect_keyword("on");
    const Token bn = expect_name();
    CatRef base = ref_category(bn);
    const FinCat& c = *base;
    std::vector<FinSet> at(c.object_count());
    std::vector<bool> at_given(c.object_count(), false);
    std::vector<std::optional<Function>> act(c.morphism_count());
    expect("{");
    while (!at_punct("}")) {
      const Token kw = expect_name();
      if (kw.text == "at") {
        const Token a = expect_name();
        expect(":");
        const int i = obj_of(c, a);
        if (at_given[i]) throw ValidationError("value at '" + a.text + "' given twice", a.line, a.col);
        at_given[i] = true;
        at[i] = parse_set();
      } else if (kw.text == "act") {
        const Token m = expect_name();
        expect(":");
        const int i = mor_of(c, m);
        if (act[i]) throw ValidationError("action of '" + m.text + "' given twice", m.line, m.col);
        const int from = covariant ? c.src(i) : c.tgt(i);
        const int to = covariant ? c.tgt(i) : c.src(i);
        act[i] = parse_function(at[from], at[to], m);
      } else {
        throw SyntaxError("expected 'at' or 'act'", kw.line, kw.col);
      }
    }
    expect("}");
    std::vector<Function> action(c.morphism_count());
    for (int m = 0; m < c.morphism_count(); ++m) {
      const int from = covariant ? c.src(m) : c.tgt(m);
      if (act[m])
        action[m] = *act[m];
      else if (c.is_identity(m))
        action[m] = identity_function(at[from].size());
      else if (at[from].size() == 0)
        action[m] = {};
      else
        throw ValidationError("no action given for '" + c.morphism_name(m) + "'", name.line, name.col);
    }
    const std::string kind = covariant ? "diagram" : "presheaf";
    ValidationReport r;
    if (covariant) {
      SetDiagram d{base, std::move(at), std::move(action)};
      r = validate(d);
      if (r.ok()) doc_.diagrams.emplace(name.text, DiagramDecl{bn.text, std::move(d)});
    } else {
      Presheaf p{base, std::move(at), std::move(action)};
      r = validate(p);
      if (r.ok()) doc_.presheaves.emplace(name.text, PresheafDecl{bn.text, std::move(p)});
    }
    if (!r.ok()) throw ValidationError(kind + " '" + name.text + "': " + r.summary(), name.line, name.col);
  }

  void parse_profunctor() {
    const Token name = new_name();
    expect(":");
    const Token ln = expect_name();
    expect("->");
    const Token rn = expect_name();
    CatRef left = ref_category(ln), right = ref_category(rn);
    const FinCat& c = *left;
    const FinCat& d = *right;
    const int nc = c.object_count(), nd = d.object_count();
    Profunctor h{left, right, std::vector<FinSet>(static_cast<std::size_t>(nc) * nd), {}, {}};
    std::vector<bool> given(h.at.size(), false);
    std::vector<std::optional<Function>> lact(static_cast<std::size_t>(c.morphism_count()) * nd);
    std::vector<std::optional<Function>> ract(static_cast<std::size_t>(d.morphism_count()) * nc);
    expect("{");
    while (!at_punct("}")) {
      const Token kw = expect_name();
      if (kw.text == "at") {
        const Token a = expect_name();
        expect(",");
        const Token b = expect_name();
        expect(":");
        const std::size_t i = static_cast<std::size_t>(obj_of(c, a)) * nd + obj_of(d, b);
        if (given[i]) throw ValidationError("value at (" + a.text + ", " + b.text + ") given twice", a.line, a.col);
        given[i] = true;
        h.at[i] = parse_set();
      } else if (kw.text == "left") {
        const Token u = expect_name();
        expect(",");
        const Token b = expect_name();
        expect(":");
        const int ui = mor_of(c, u), bi = obj_of(d, b);
        auto& slot = lact[static_cast<std::size_t>(ui) * nd + bi];
        if (slot) throw ValidationError("left action given twice", u.line, u.col);
        slot = parse_function(h.value(c.tgt(ui), bi), h.value(c.src(ui), bi), u);
      } else if (kw.text == "right") {
        const Token v = expect_name();
        expect(",");
        const Token a = expect_name();
        expect(":");
        const int vi = mor_of(d, v), ai = obj_of(c, a);
        auto& slot = ract[static_cast<std::size_t>(vi) * nc + ai];
        if (slot) throw ValidationError("right action given twice", v.line, v.col);
        slot = parse_function(h.value(ai, d.src(vi)), h.value(ai, d.tgt(vi)), v);
      } else {
        throw SyntaxError("expected 'at', 'left' or 'right'", kw.line, kw.col);
      }
    }
    expect("}");
    for (int u = 0; u < c.morphism_count(); ++u)
      for (int b = 0; b < nd; ++b) {
        auto& slot = lact[static_cast<std::size_t>(u) * nd + b];
        const int n = h.value(c.tgt(u), b).size();
        if (!slot && (c.is_identity(u) || n == 0)) slot = identity_function(n);
        if (!slot)
          throw ValidationError("no left action for '" + c.morphism_name(u) + "' at '" + d.object_name(b) + "'",
                                name.line, name.col);
        h.lact.push_back(*slot);
      }
    for (int v = 0; v < d.morphism_count(); ++v)
      for (int a = 0; a < nc; ++a) {
        auto& slot = ract[static_cast<std::size_t>(v) * nc + a];
        const int n = h.value(a, d.src(v)).size();
        if (!slot && (d.is_identity(v) || n == 0)) slot = identity_function(n);
        if (!slot)
          throw ValidationError("no right action for '" + d.morphism_name(v) + "' at '" + c.object_name(a) + "'",
                                name.line, name.col);
        h.ract.push_back(*slot);
      }
    ValidationReport r = validate(h);
    if (!r.ok()) throw ValidationError("profunctor '" + name.text + "': " + r.summary(), name.line, name.col);
    doc_.profunctors.emplace(name.text, ProfunctorDecl{ln.text, rn.text, std::move(h)});
  }

  void parse_over() {
    const Token name = new_name();
    expect("=");
    const Token fn = expect_name();
    expect(";");
    const FunctorDecl& f = ref_functor(fn);
    doc_.overs.emplace(name.text, OverDecl{fn.text, OverBase{f.functor}});
  }
};

}  // namespace

Document parse(std::string_view text) { return Parser(text).run(); }

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace fcat

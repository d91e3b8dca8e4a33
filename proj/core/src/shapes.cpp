#include "fcat/shapes.hpp"

#include <array>
#include <string>

namespace fcat::shapes {

CatRef terminal() { return simplex(0); }

CatRef simplex(int n) {
  FinCat::Builder b;
  for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
  std::vector<std::vector<int>> m(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const std::string name = i == j ? "id_" + std::to_string(i) : std::to_string(i) + "_" + std::to_string(j);
      m[i][j] = b.add_morphism(name, i, j);
    }
  for (int i = 0; i <= n; ++i) b.set_identity(i, m[i][i]);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) b.set_compose(m[j][k], m[i][j], m[i][k]);
  return share(b.build());
}

CatRef discrete(int n) {
  FinCat::Builder b;
  for (int i = 0; i < n; ++i) {
    b.add_object("d" + std::to_string(i));
    b.add_identity(i, "id_d" + std::to_string(i));
  }
  return share(b.build());
}

CatRef cyclic_group(int n) {
  FinCat::Builder b;
  b.add_object("pt");
  std::vector<int> g;
  g.push_back(b.add_identity(0, "id_pt"));
  for (int i = 1; i < n; ++i) g.push_back(b.add_morphism("g" + std::to_string(i), 0, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.set_compose(g[i], g[j], g[(i + j) % n]);
  return share(b.build());
}

CatRef walking_iso() {
  FinCat::Builder b;
  b.add_object("x");
  b.add_object("y");
  const int ix = b.add_identity(0, "id_x");
  const int iy = b.add_identity(1, "id_y");
  const int a = b.add_morphism("a", 0, 1);
  const int c = b.add_morphism("b", 1, 0);
  b.set_compose(c, a, ix);
  b.set_compose(a, c, iy);
  return share(b.build());
}

CatRef idempotent() {
  FinCat::Builder b;
  b.add_object("pt");
  b.add_identity(0, "id_pt");
  const int e = b.add_morphism("e", 0, 0);
  b.set_compose(e, e, e);
  return share(b.build());
}

CatRef parallel_pair() {
  FinCat::Builder b;
  b.add_object("s");
  b.add_object("t");
  b.add_identity(0, "id_s");
  b.add_identity(1, "id_t");
  b.add_morphism("u", 0, 1);
  b.add_morphism("v", 0, 1);
  return share(b.build());
}

CatRef span() {
  FinCat::Builder b;
  b.add_object("m");
  b.add_object("l");
  b.add_object("r");
  for (int i = 0; i < 3; ++i) b.add_identity(i, "id_" + std::string(i == 0 ? "m" : i == 1 ? "l" : "r"));
  b.add_morphism("p", 0, 1);
  b.add_morphism("q", 0, 2);
  return share(b.build());
}

CatRef cospan() {
  FinCat::Builder b;
  b.add_object("l");
  b.add_object("r");
  b.add_object("m");
  for (int i = 0; i < 3; ++i) b.add_identity(i, "id_" + std::string(i == 0 ? "l" : i == 1 ? "r" : "m"));
  b.add_morphism("p", 0, 2);
  b.add_morphism("q", 1, 2);
  return share(b.build());
}

CatRef codiscrete(int k) {
  FinCat::Builder b;
  for (int i = 0; i < k; ++i) b.add_object("c" + std::to_string(i));
  std::vector<std::vector<int>> m(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m[i][j] = b.add_morphism(i == j ? "id_c" + std::to_string(i) : "c" + std::to_string(i) + "c" + std::to_string(j),
                               i, j);
  for (int i = 0; i < k; ++i) b.set_identity(i, m[i][i]);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) b.set_compose(m[j][l], m[i][j], m[i][l]);
  return share(b.build());
}

CatRef symmetric_group3() {
  // Permutations of {0,1,2} as arrays; composition p∘q.
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  const char* names[] = {"id_pt", "s01", "s12", "s02", "r1", "r2"};
  FinCat::Builder b;
  b.add_object("pt");
  for (int i = 0; i < 6; ++i) b.add_morphism(names[i], 0, 0);
  b.set_identity(0, 0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      for (int r = 0; r < 6; ++r)
        if (perms[r] == c) b.set_compose(i, j, r);
    }
  return share(b.build());
}

FinFunctor subposet_inclusion(int m, const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  FinCat::Builder b;
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(image[i]));
  std::vector<std::vector<int>> mm(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      mm[i][j] = b.add_morphism(i == j ? "id_" + std::to_string(image[i])
                                       : std::to_string(image[i]) + "_" + std::to_string(image[j]),
                                i, j);
  for (int i = 0; i < n; ++i) b.set_identity(i, mm[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) b.set_compose(mm[j][k], mm[i][j], mm[i][k]);
  CatRef dom = share(b.build());
  CatRef cod = simplex(m);
  FinFunctor f{dom, cod, {}, {}};
  for (int i = 0; i < n; ++i) f.obj.push_back(image[i]);
  for (int k = 0; k < dom->morphism_count(); ++k) {
    const int s = image[dom->src(k)];
    const int t = image[dom->tgt(k)];
    f.mor.push_back(cod->hom(s, t).front());
  }
  return f;
}

FinFunctor inert(int n, int m, int i) {
  std::vector<int> image;
  for (int k = 0; k <= n; ++k) image.push_back(i + k);
  return subposet_inclusion(m, image);
}

}  // namespace fcat::shapes

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drm/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace drm;

namespace {

Mat mat_mul(const Mat& A, const Mat& B) {
  size_t n = A.size(), m = B[0].size(), k = B.size();
  Mat C(n, Vec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l) C[i][j] += A[i][l] * B[l][j];
  return C;
}

i64 det3(const Mat& M) {
  if (M.size() == 1) return M[0][0];
  if (M.size() == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  i64 d = 0;
  for (int j = 0; j < 3; ++j) {
    Mat minor(2, Vec(2));
    for (int r = 1; r < 3; ++r) {
      int cc = 0;
      for (int c = 0; c < 3; ++c)
        if (c != j) minor[r - 1][cc++] = M[r][c];
    }
    i64 cof = M[0][j] * det3(minor);
    d += (j % 2 ? -cof : cof);
  }
  return d;
}

// Z/a x Z/b as an enumerated group for oracle captures.
struct ProductGroup {
  i64 a, b;
  int n() const { return (int)(a * b); }
  int mul(int i, int j) const {
    i64 x = (i / b + j / b) % a, y = (i % b + j % b) % b;
    return (int)(x * b + y);
  }
};

// Oracle: invariant factors of Z/a x Z/b by elementary divisor theory on
// the prime factorizations.
Vec invariant_factors_oracle(i64 a, i64 b) {
  i64 g = std::gcd(a, b), l = a / g * b;
  Vec out;
  if (g > 1) out.push_back(g);
  if (l > 1) out.push_back(l);
  return out;
}

} // namespace

TEST_CASE("smith normal form: U*M*V = D, divisibility chain, unimodularity") {
  std::vector<Mat> cases = {
      {{2, 0}, {0, 3}},
      {{4, 6}, {6, 12}},
      {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}},
      {{6, 0, 0}, {0, 10, 0}, {0, 0, 15}},
      {{2, 4}, {6, 8}, {10, 12}},
  };
  for (const Mat& M : cases) {
    SmithResult S = smith_normal_form(M);
    Mat UMV = mat_mul(mat_mul(S.U, M), S.V);
    for (size_t i = 0; i < UMV.size(); ++i)
      for (size_t j = 0; j < UMV[i].size(); ++j)
        CHECK(UMV[i][j] == (i == j && i < S.diag.size() ? S.diag[i] : 0));
    for (size_t i = 0; i + 1 < S.diag.size(); ++i)
      if (S.diag[i] != 0) CHECK(S.diag[i + 1] % S.diag[i] == 0);
    // V * Vinv = I
    Mat VV = mat_mul(S.V, S.Vinv);
    for (size_t i = 0; i < VV.size(); ++i)
      for (size_t j = 0; j < VV[i].size(); ++j) CHECK(VV[i][j] == (i == j ? 1 : 0));
    if (S.V.size() <= 3) CHECK(std::abs(det3(S.V)) == 1);
  }
}

TEST_CASE("snf diagonal of diag(6,10,15) is 1,30,30") {
  SmithResult S = smith_normal_form({{6, 0, 0}, {0, 10, 0}, {0, 0, 15}});
  CHECK(S.diag == Vec{1, 30, 30});
}

TEST_CASE("abelian group coordinate arithmetic") {
  AbelianGroup G{{2, 6}};
  CHECK(G.order() == 12);
  CHECK(G.add({1, 5}, {1, 4}) == Vec{0, 3});
  CHECK(G.neg({1, 2}) == Vec{1, 4});
  CHECK(G.scale({1, 1}, 5) == Vec{1, 5});
  CHECK(G.is_zero(G.add({1, 3}, G.neg({1, 3}))));
  // index round trip covers the whole group bijectively
  std::set<i64> seen;
  for (i64 i = 0; i < G.order(); ++i) {
    Vec v = G.element_at(i);
    CHECK(G.index_of(v) == i);
    seen.insert(i);
  }
  CHECK((i64)seen.size() == G.order());
}

TEST_CASE("element order oracle") {
  AbelianGroup G{{4, 12}};
  for (i64 i = 0; i < G.order(); ++i) {
    Vec v = G.element_at(i);
    i64 o = G.element_order(v);
    CHECK(G.is_zero(G.scale(v, o)));
    // minimality against brute force
    i64 brute = 1;
    Vec acc = v;
    while (!G.is_zero(acc)) {
      acc = G.add(acc, v);
      ++brute;
    }
    CHECK(o == brute);
  }
}

TEST_CASE("capture_enumerated_group recovers invariant factors of Z/a x Z/b") {
  std::vector<std::pair<i64, i64>> shapes = {{1, 1}, {5, 1},  {2, 2},  {2, 4},
                                             {6, 4}, {3, 9},  {8, 12}, {2, 3}};
  for (auto [a, b] : shapes) {
    ProductGroup P{a, b};
    EnumeratedGroup eg =
        capture_enumerated_group(P.n(), [&](int i, int j) { return P.mul(i, j); }, 0);
    CHECK(eg.group.orders == invariant_factors_oracle(a, b));
    CHECK(eg.group.order() == P.n());
    // dlog is a homomorphism: dlog(i*j) = dlog(i) + dlog(j)
    for (int i = 0; i < P.n(); ++i)
      for (int j = 0; j < P.n(); ++j)
        CHECK(eg.dlog[P.mul(i, j)] == eg.group.add(eg.dlog[i], eg.dlog[j]));
    // dlog is a bijection onto the coordinate group
    std::set<Vec> image(eg.dlog.begin(), eg.dlog.end());
    CHECK((int)image.size() == P.n());
    // element_of inverts dlog
    for (int i = 0; i < P.n(); ++i) CHECK(eg.element_of(eg.dlog[i]) == i);
  }
}

TEST_CASE("capture of (Z/n)^* matches the classical unit group structure") {
  // multiplicative structure oracle for small n with known invariants
  std::vector<std::pair<int, Vec>> cases = {
      {8, {2, 2}}, {15, {2, 4}}, {16, {2, 4}}, {24, {2, 2, 2}}, {35, {2, 12}}, {45, {2, 12}}};
  for (auto& [n, expect] : cases) {
    std::vector<int> units;
    for (int i = 1; i < n; ++i)
      if (std::gcd(i, n) == 1) units.push_back(i);
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < units.size(); ++i) pos[units[i]] = (int)i;
    auto mul = [&, n = n](int i, int j) { return pos[units[i] * units[j] % n]; };
    EnumeratedGroup eg = capture_enumerated_group((int)units.size(), mul, 0);
    CHECK(eg.group.orders == expect);
  }
}

TEST_CASE("present_group: quotient orders and projection homomorphism") {
  // Z^2 / <(2,0),(0,3)> = Z/2 x Z/3 = Z/6
  PresentedGroup P = present_group(2, {{2, 0}, {0, 3}});
  CHECK(P.group.order() == 6);
  CHECK(P.group.orders == Vec{6});
  // projection is a homomorphism and kills the relations
  CHECK(P.group.is_zero(P.project({2, 0})));
  CHECK(P.group.is_zero(P.project({0, 3})));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Vec u = {(i64)(rng() % 20) - 10, (i64)(rng() % 20) - 10};
    Vec v = {(i64)(rng() % 20) - 10, (i64)(rng() % 20) - 10};
    Vec sum = {u[0] + v[0], u[1] + v[1]};
    CHECK(P.project(sum) == P.group.add(P.project(u), P.project(v)));
  }
  // generator_expr inverts project on canonical generators
  for (size_t j = 0; j < P.group.orders.size(); ++j) {
    Vec e = P.project(P.generator_expr((int)j));
    Vec unit = P.group.zero();
    unit[j] = 1;
    CHECK(e == unit);
  }
}

TEST_CASE("present_group handles torsion mixes and trivial quotients") {
  // Z^3 / <(1,0,0),(0,1,0),(0,0,1)> is trivial
  PresentedGroup T = present_group(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(T.group.order() == 1);
  CHECK(T.group.orders.empty());
  // Z^2 / <(2,2),(0,4)> has order 8 with invariants 2,4
  PresentedGroup P = present_group(2, {{2, 2}, {0, 4}});
  CHECK(P.group.order() == 8);
  CHECK(P.group.orders == Vec{2, 4});
  // brute oracle: count distinct projections of a fundamental box
  std::set<Vec> image;
  for (i64 x = 0; x < 8; ++x)
    for (i64 y = 0; y < 8; ++y) image.insert(P.project({x, y}));
  CHECK((i64)image.size() == 8);
}

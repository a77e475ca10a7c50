#include "drm/abelian.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace drm {

namespace {

Mat identity_mat(size_t n) {
  Mat I(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

} // namespace

SmithResult smith_normal_form(Mat M) {
  size_t m = M.size();
  size_t k = m ? M[0].size() : 0;
  SmithResult R;
  R.U = identity_mat(m);
  R.V = identity_mat(k);
  R.Vinv = identity_mat(k);

  auto row_add = [&](size_t dst, size_t src, i64 q) { // row dst += q * row src
    for (size_t j = 0; j < k; ++j) M[dst][j] += q * M[src][j];
    for (size_t j = 0; j < m; ++j) R.U[dst][j] += q * R.U[src][j];
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(M[i], M[j]);
    std::swap(R.U[i], R.U[j]);
  };
  auto col_add = [&](size_t dst, size_t src, i64 q) { // col dst += q * col src
    for (size_t i = 0; i < m; ++i) M[i][dst] += q * M[i][src];
    for (size_t i = 0; i < k; ++i) R.V[i][dst] += q * R.V[i][src];
    // inverse op on Vinv: row src -= q * row dst
    for (size_t j = 0; j < k; ++j) R.Vinv[src][j] -= q * R.Vinv[dst][j];
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < m; ++r) std::swap(M[r][i], M[r][j]);
    for (size_t r = 0; r < k; ++r) std::swap(R.V[r][i], R.V[r][j]);
    std::swap(R.Vinv[i], R.Vinv[j]);
  };
  auto row_neg = [&](size_t i) {
    for (size_t j = 0; j < k; ++j) M[i][j] = -M[i][j];
    for (size_t j = 0; j < m; ++j) R.U[i][j] = -R.U[i][j];
  };

  for (size_t t = 0; t < k; ++t) {
    while (true) {
      // locate pivot: smallest nonzero |entry| in the remaining block
      size_t pi = t, pj = t;
      i64 best = 0;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < k; ++j)
          if (M[i][j] != 0 && (best == 0 || std::abs(M[i][j]) < best)) {
            best = std::abs(M[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0)
        throw std::logic_error("smith_normal_form: relation matrix not of full column rank");
      if (pi != t) row_swap(t, pi);
      if (pj != t) col_swap(t, pj);
      if (M[t][t] < 0) row_neg(t);

      bool clean = true;
      for (size_t i = t + 1; i < m; ++i)
        if (M[i][t] != 0) {
          i64 q = M[i][t] / M[t][t];
          row_add(i, t, -q);
          if (M[i][t] != 0) clean = false;
        }
      for (size_t j = t + 1; j < k; ++j)
        if (M[t][j] != 0) {
          i64 q = M[t][j] / M[t][t];
          col_add(j, t, -q);
          if (M[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: pivot must divide every remaining entry
      bool divides = true;
      for (size_t i = t + 1; i < m && divides; ++i)
        for (size_t j = t + 1; j < k && divides; ++j)
          if (M[i][j] % M[t][t] != 0) {
            row_add(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }
  R.diag.resize(k);
  for (size_t t = 0; t < k; ++t) R.diag[t] = M[t][t];
  return R;
}

Vec AbelianGroup::reduce(Vec v) const {
  for (size_t i = 0; i < orders.size(); ++i) v[i] = mod_floor(v[i], orders[i]);
  return v;
}

Vec AbelianGroup::add(const Vec& a, const Vec& b) const {
  Vec r(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) r[i] = mod_floor(a[i] + b[i], orders[i]);
  return r;
}

Vec AbelianGroup::neg(const Vec& a) const {
  Vec r(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) r[i] = mod_floor(-a[i], orders[i]);
  return r;
}

Vec AbelianGroup::scale(const Vec& a, i64 kk) const {
  Vec r(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) r[i] = mod_floor((i64)((i128)a[i] * kk % orders[i]), orders[i]);
  return r;
}

bool AbelianGroup::is_zero(const Vec& a) const {
  for (i64 v : a)
    if (v != 0) return false;
  return true;
}

i64 AbelianGroup::index_of(const Vec& a) const {
  i64 idx = 0;
  for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + a[i];
  return idx;
}

Vec AbelianGroup::element_at(i64 idx) const {
  Vec a(orders.size());
  for (size_t i = orders.size(); i-- > 0;) {
    a[i] = idx % orders[i];
    idx /= orders[i];
  }
  return a;
}

i64 AbelianGroup::element_order(const Vec& a) const {
  i64 ord = 1;
  for (size_t i = 0; i < orders.size(); ++i) {
    i64 d = orders[i] / gcd_ll(a[i], orders[i]);
    ord = ord / gcd_ll(ord, d) * d;
  }
  return ord;
}

Vec PresentedGroup::project(const Vec& expo) const {
  if ((int)expo.size() != ngens) throw std::invalid_argument("project: wrong exponent length");
  Vec out;
  out.reserve(kept.size());
  for (int j : kept) {
    i64 s = 0;
    for (int i = 0; i < ngens; ++i) s += expo[i] * V[i][j];
    out.push_back(mod_floor(s, full_diag[j]));
  }
  return out;
}

Vec PresentedGroup::generator_expr(int j) const {
  Vec out(ngens);
  for (int i = 0; i < ngens; ++i) out[i] = Vinv[kept[j]][i];
  return out;
}

PresentedGroup present_group(int ngens, const Mat& relations) {
  PresentedGroup P;
  P.ngens = ngens;
  if (ngens == 0) {
    return P; // trivial group
  }
  SmithResult S = smith_normal_form(relations);
  P.V = S.V;
  P.Vinv = S.Vinv;
  P.full_diag = S.diag;
  for (int j = 0; j < ngens; ++j)
    if (S.diag[j] > 1) {
      P.kept.push_back(j);
      P.group.orders.push_back(S.diag[j]);
    }
  return P;
}

EnumeratedGroup capture_enumerated_group(int n, const std::function<int(int, int)>& mul, int identity) {
  // Greedy generators + triangular relation matrix; dlog over the picks.
  std::vector<int> gens;
  std::vector<Vec> raw_dlog(n); // exponents over gens, valid where visited
  std::vector<char> seen(n, 0);
  std::vector<int> members = {identity};
  seen[identity] = 1;
  raw_dlog[identity] = {};
  Mat rel;

  for (int cand = 0; (int)members.size() < n; ++cand) {
    if (cand >= n) throw std::logic_error("capture_enumerated_group: mul not closed");
    if (seen[cand]) continue;
    int g = cand;
    gens.push_back(g);
    // relative order: least m >= 1 with g^m in the current subgroup
    i64 m = 0;
    int pw = identity;
    int landing = -1;
    do {
      pw = mul(pw, g);
      ++m;
      if (seen[pw]) {
        landing = pw;
        break;
      }
    } while (true);
    Vec row(gens.size(), 0);
    for (size_t i = 0; i + 1 < gens.size(); ++i) row[i] = -raw_dlog[landing][i];
    row.back() = m;
    // extend previous relation rows with a zero column
    for (auto& r : rel) r.push_back(0);
    rel.push_back(row);
    // absorb new coset reps
    std::vector<int> base = members;
    for (auto& idx : base) raw_dlog[idx].push_back(0);
    int gp = identity;
    for (i64 j = 1; j < m; ++j) {
      gp = mul(gp, g);
      for (int h : base) {
        int e = mul(h, gp);
        if (seen[e]) throw std::logic_error("capture_enumerated_group: group not abelian/consistent");
        seen[e] = 1;
        raw_dlog[e] = raw_dlog[h];
        raw_dlog[e].back() = j;
        members.push_back(e);
      }
    }
  }

  PresentedGroup P = present_group((int)gens.size(), rel);
  EnumeratedGroup E;
  E.group = P.group;
  E.dlog.resize(n);
  E.elem_by_coords.assign(E.group.order(), -1);
  for (int e = 0; e < n; ++e) {
    E.dlog[e] = P.project(raw_dlog[e]);
    E.elem_by_coords[E.group.index_of(E.dlog[e])] = e;
  }
  for (int v : E.elem_by_coords)
    if (v < 0) throw std::logic_error("capture_enumerated_group: dlog not bijective");
  // concrete realization of each canonical generator
  auto pow_of = [&](int g, i64 e) {
    int r = identity;
    int b = g;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  // order of each raw generator, for negative exponents
  std::vector<i64> gen_order(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    i64 o = 1;
    int pw = gens[i];
    while (pw != identity) {
      pw = mul(pw, gens[i]);
      ++o;
    }
    gen_order[i] = o;
  }
  for (size_t j = 0; j < E.group.orders.size(); ++j) {
    Vec expr = P.generator_expr((int)j);
    int acc = identity;
    for (size_t i = 0; i < gens.size(); ++i)
      acc = mul(acc, pow_of(gens[i], mod_floor(expr[i], gen_order[i])));
    E.generators.push_back(acc);
  }
  return E;
}

} // namespace drm

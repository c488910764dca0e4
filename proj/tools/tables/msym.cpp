// msym: weight-2 modular symbols for Gamma0(N) (sign +1) over prime fields,
// used offline to regenerate the newform tables in data/newforms.json.
//
// The new cuspidal subspace is cut out as the common kernel of the degeneracy
// maps to every level N/p. Exact integer data (characteristic polynomials,
// Hecke eigenvalues as polynomials in a field generator) is recovered by CRT
// over many word-size primes followed by rational reconstruction.
//
//   msym dims N
//   msym charpoly N --combo 3:1,7:2
//   msym eigen N --combo 3:1,7:2 --factors F.json --primes 3,7,11
//   msym selftest N

#include <boost/multiprecision/cpp_int.hpp>
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Json = nlohmann::json;

i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

// Extended gcd: returns g and s, t with s*a + t*b = g.
i64 xgcd(i64 a, i64 b, i64& s, i64& t) {
  i64 old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * ss; old_s = ss; ss = tmp;
    tmp = old_t - q * tt; old_t = tt; tt = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  s = old_s;
  t = old_t;
  return old_r;
}

bool is_small_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Prime field F_l, l < 2^31.

struct Field {
  u64 l;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= l ? s - l : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + l - b; }
  u64 mul(u64 a, u64 b) const { return a * b % l; }
  u64 neg(u64 a) const { return a == 0 ? 0 : l - a; }
  u64 from(i64 a) const { return static_cast<u64>(mod(a, static_cast<i64>(l))); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw std::runtime_error("inverse of zero");
    return pow(a, l - 2);
  }
};

using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

// Row-reduce in place; returns pivot columns. Rows end up in RREF (zero rows dropped).
std::vector<int> rref(Mat& m, const Field& F, int ncols, bool drop_rest = true) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    u64 inv = F.inv(m[row][col]);
    for (auto& x : m[row]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      u64 f = m[r][col];
      auto& dst = m[r];
      const auto& src = m[row];
      for (int c = col; c < static_cast<int>(dst.size()); ++c)
        if (src[c]) dst[c] = F.sub(dst[c], F.mul(f, src[c]));
    }
    pivots.push_back(col);
    ++row;
  }
  if (drop_rest) m.resize(row);
  return pivots;
}

// Basis (as rows, RREF) of {x : x * A = 0}, A given as rows.
Mat left_kernel(const Mat& A, const Field& F) {
  const int r = static_cast<int>(A.size());
  const int c = A.empty() ? 0 : static_cast<int>(A[0].size());
  Mat aug(r, Vec(c + r, 0));
  for (int i = 0; i < r; ++i) {
    std::copy(A[i].begin(), A[i].end(), aug[i].begin());
    aug[i][c + i] = 1;
  }
  auto piv = rref(aug, F, c, false);
  Mat out;
  for (std::size_t i = piv.size(); i < aug.size(); ++i) out.emplace_back(aug[i].begin() + c, aug[i].end());
  rref(out, F, r);
  return out;
}

Mat matmul(const Mat& a, const Mat& b, const Field& F) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<unsigned __int128> acc(m, 0);
    for (std::size_t t = 0; t < k; ++t) {
      u64 x = a[i][t];
      if (!x) continue;
      for (std::size_t j = 0; j < m; ++j) acc[j] += static_cast<unsigned __int128>(x) * b[t][j];
    }
    for (std::size_t j = 0; j < m; ++j) out[i][j] = static_cast<u64>(acc[j] % F.l);
  }
  return out;
}

Vec vecmat(const Vec& v, const Mat& m, const Field& F) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<unsigned __int128> acc(cols, 0);
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!v[t]) continue;
    for (std::size_t j = 0; j < cols; ++j) acc[j] += static_cast<unsigned __int128>(v[t]) * m[t][j];
  }
  Vec out(cols);
  for (std::size_t j = 0; j < cols; ++j) out[j] = static_cast<u64>(acc[j] % F.l);
  return out;
}

// Characteristic polynomial (constant term first, monic) via Hessenberg reduction.
Vec charpoly(Mat a, const Field& F) {
  const int n = static_cast<int>(a.size());
  for (int m = 1; m < n - 1; ++m) {
    int i = m + 1;
    while (i <= n - 1 && a[i][m - 1] == 0) ++i;
    if (i > n - 1) continue;
    if (i != m) {
      std::swap(a[i], a[m]);
      for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][m]);
    }
    u64 inv = F.inv(a[m][m - 1]);
    for (int r = m + 1; r < n; ++r) {
      u64 u = F.mul(a[r][m - 1], inv);
      if (!u) continue;
      for (int c = 0; c < n; ++c) a[r][c] = F.sub(a[r][c], F.mul(u, a[m][c]));
      for (int c = 0; c < n; ++c) a[c][m] = F.add(a[c][m], F.mul(u, a[c][r]));
    }
  }
  // p_k = charpoly of leading k x k block (monic, constant first)
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (int k = 1; k <= n; ++k) {
    Vec cur(k + 1, 0);
    // x * p_{k-1} - a[k-1][k-1] * p_{k-1}
    for (int j = 0; j < k; ++j) {
      cur[j + 1] = F.add(cur[j + 1], p[k - 1][j]);
      cur[j] = F.sub(cur[j], F.mul(a[k - 1][k - 1], p[k - 1][j]));
    }
    u64 t = 1;
    for (int i = 1; i < k; ++i) {
      t = F.mul(t, a[k - i][k - i - 1]);
      u64 coef = F.mul(t, a[k - i - 1][k - 1]);
      if (!coef) continue;
      for (std::size_t j = 0; j < p[k - i - 1].size(); ++j)
        cur[j] = F.sub(cur[j], F.mul(coef, p[k - i - 1][j]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

// ---------------------------------------------------------------------------
// P^1(Z/NZ)

class P1List {
 public:
  explicit P1List(i64 n) : n_(n), div_index_(n + 1, -1) {
    for (i64 g = 1; g < n_; ++g)
      if (n_ % g == 0) {
        div_index_[g] = static_cast<int>(divs_.size());
        divs_.push_back(g);
      }
    table_.assign(divs_.size(), std::vector<int>(n_, -1));
    list_.push_back({0, 1});
    zero_index_ = 0;
    // First pass: register canonical pairs.
    for (std::size_t k = 0; k < divs_.size(); ++k) {
      i64 g = divs_[k];
      for (i64 v = 0; v < n_; ++v) {
        if (gcd64(g, v) != 1) continue;
        auto c = canonical_from_g(g, v);
        if (c.second == v) {
          table_[k][v] = static_cast<int>(list_.size());
          list_.push_back({g, v});
        }
      }
    }
    // Second pass: fill every (g, v) slot with its canonical index.
    for (std::size_t k = 0; k < divs_.size(); ++k) {
      i64 g = divs_[k];
      for (i64 v = 0; v < n_; ++v) {
        if (gcd64(g, v) != 1 || table_[k][v] >= 0) continue;
        auto c = canonical_from_g(g, v);
        table_[k][v] = table_[k][c.second];
      }
    }
  }

  std::size_t size() const { return list_.size(); }
  std::pair<i64, i64> operator[](std::size_t i) const { return list_[i]; }
  i64 level() const { return n_; }

  int index(i64 u, i64 v) const {
    u = mod(u, n_);
    v = mod(v, n_);
    if (n_ == 1) return 0;
    if (u == 0) {
      if (gcd64(v, n_) != 1) throw std::runtime_error("pair not in P1");
      return zero_index_;
    }
    i64 s, t;
    i64 g = xgcd(u, n_, s, t);
    s = mod(s, n_);
    if (gcd64(g, v) != 1) throw std::runtime_error("pair not in P1");
    if (g != 1) {
      i64 d = n_ / g;
      while (gcd64(s, n_) != 1) s = (s + d) % n_;
    }
    v = static_cast<i64>((static_cast<__int128>(s) * v) % n_);
    return table_[div_index_[g]][v];
  }

 private:
  // (g, v) with g | N, gcd(g, v) = 1 -> canonical (g, v') in its orbit.
  std::pair<i64, i64> canonical_from_g(i64 g, i64 v) const {
    i64 min_v = v;
    if (g != 1) {
      i64 ng = n_ / g;
      i64 vng = static_cast<i64>((static_cast<__int128>(v) * ng) % n_);
      i64 t = 1, cur = v;
      for (i64 k = 2; k <= g; ++k) {
        cur = (cur + vng) % n_;
        t = (t + ng) % n_;
        if (cur < min_v && gcd64(t, n_) == 1) min_v = cur;
      }
    }
    return {g, min_v};
  }

  i64 n_;
  std::vector<i64> divs_;
  std::vector<int> div_index_;
  std::vector<std::vector<int>> table_;
  std::vector<std::pair<i64, i64>> list_;
  int zero_index_ = 0;
};

// ---------------------------------------------------------------------------
// Plus quotient of weight-2 Manin symbols.

class ManinSpace {
 public:
  ManinSpace(i64 n, const Field& F) : F_(F), p1_(n) { build(); }

  i64 level() const { return p1_.level(); }
  int dim() const { return static_cast<int>(free_.size()); }
  const P1List& p1() const { return p1_; }
  const Field& field() const { return F_; }

  // Dense coordinates of the Manin symbol with P1 index i.
  Vec symbol(int i) const {
    Vec out(dim(), 0);
    add_symbol(out, i, 1);
    return out;
  }
  void add_symbol(Vec& acc, int i, u64 coef) const {
    if (sign_[i] == 0) return;
    u64 c = sign_[i] > 0 ? coef : F_.neg(coef);
    for (auto [j, x] : expr_[rep_[i]]) acc[j] = F_.add(acc[j], F_.mul(c, x));
  }
  Vec manin(i64 c, i64 d) const { return symbol(p1_.index(c, d)); }

  // {0, a/b} with b >= 0 (b == 0 means the cusp at infinity).
  void add_zero_to(Vec& acc, i64 a, i64 b, u64 coef) const {
    if (b < 0) { a = -a; b = -b; }
    if (b == 0) {
      add_symbol(acc, p1_.index(0, 1), coef);
      return;
    }
    // {0, inf} + sum over convergents
    add_symbol(acc, p1_.index(0, 1), coef);
    i64 pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    i64 x = a, y = b;
    int k = 0;
    while (true) {
      i64 q = x / y;
      if ((x % y != 0) && ((x < 0) != (y < 0))) --q;  // floor
      i64 r = x - q * y;
      i64 pk = q * pm1 + pm2, qk = q * qm1 + qm2;
      // matrix [[pk, pm1],[qk, qm1]] has determinant (-1)^(k-1)
      i64 det = pk * qm1 - pm1 * qk;
      if (det == 1)
        add_symbol(acc, p1_.index(qk, qm1), coef);
      else
        add_symbol(acc, p1_.index(-qk, qm1), coef);
      pm2 = pm1; qm2 = qm1; pm1 = pk; qm1 = qk;
      ++k;
      if (r == 0) break;
      x = y;
      y = r;
    }
  }
  // {a1/b1, a2/b2}
  Vec modsym(i64 a1, i64 b1, i64 a2, i64 b2) const {
    Vec out(dim(), 0);
    add_zero_to(out, a2, b2, 1);
    add_zero_to(out, a1, b1, F_.neg(1));
    return out;
  }

  // Free generator j as a P1 index.
  int free_symbol(int j) const { return free_[j]; }

  // Hecke T_p (p prime, p does not divide N) as a dim x dim matrix acting on rows.
  Mat hecke(i64 p, bool merel = false) const {
    const i64 n = p1_.level();
    merel = merel || n % p == 0;
    auto H = merel ? heilbronn_merel(p) : heilbronn(p);
    Mat out(dim(), Vec(dim(), 0));
    for (int j = 0; j < dim(); ++j) {
      auto [u, v] = p1_[free_[j]];
      for (const auto& h : H) {
        i64 uu = u * h[0] + v * h[2], vv = u * h[1] + v * h[3];
        if (merel && std::gcd(std::gcd(mod(uu, n), mod(vv, n)), n) != 1) continue;
        add_symbol(out[j], p1_.index(uu, vv), 1);
      }
    }
    return out;
  }

  // a > b >= 0, d > c >= 0, ad - bc = p; valid for every p, including p | N.
  static std::vector<std::array<i64, 4>> heilbronn_merel(i64 p) {
    std::vector<std::array<i64, 4>> L;
    for (i64 a = 1; a <= p; ++a)
      for (i64 d = 1; d <= p; ++d)
        for (i64 b = 0; b < a; ++b)
          for (i64 c = 0; c < d; ++c)
            if (a * d - b * c == p) L.push_back({a, b, c, d});
    return L;
  }

  static std::vector<std::array<i64, 4>> heilbronn(i64 p) {
    std::vector<std::array<i64, 4>> L;
    if (p == 2) {
      L = {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
      return L;
    }
    L.push_back({1, 0, 0, p});
    for (i64 r = -(p / 2); r <= p / 2; ++r) {
      i64 x1 = p, x2 = -r, y1 = 0, y2 = 1, a = -p, b = r;
      L.push_back({x1, x2, y1, y2});
      while (b != 0) {
        // round half away from zero
        i64 num = a, den = b;
        if (den < 0) { num = -num; den = -den; }
        i64 q = num >= 0 ? (2 * num + den) / (2 * den) : -((2 * (-num) + den) / (2 * den));
        i64 c = a - b * q;
        a = -b;
        b = c;
        i64 x3 = q * x2 - x1;
        x1 = x2; x2 = x3;
        i64 y3 = q * y2 - y1;
        y1 = y2; y2 = y3;
        L.push_back({x1, x2, y1, y2});
      }
    }
    return L;
  }

 private:
  void build() {
    const int n = static_cast<int>(p1_.size());
    // two-term relations: x = -x.sigma, x = x.star
    rep_.assign(n, -1);
    sign_.assign(n, 0);
    std::vector<int> comp_sign(n, 0);
    std::vector<bool> comp_zero;
    std::vector<int> comp_of(n, -1);
    std::vector<int> rel_sign(n, 0);  // x_i = rel_sign * x_root
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp_of[s] >= 0) continue;
      int cid = ncomp++;
      comp_zero.push_back(false);
      std::vector<int> stack{s};
      comp_of[s] = cid;
      rel_sign[s] = 1;
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        auto [c, d] = p1_[i];
        int nb[2] = {p1_.index(d, -c), p1_.index(-c, d)};
        int sg[2] = {-1, 1};
        for (int k = 0; k < 2; ++k) {
          int j = nb[k];
          int want = rel_sign[i] * sg[k];
          if (comp_of[j] < 0) {
            comp_of[j] = cid;
            rel_sign[j] = want;
            stack.push_back(j);
          } else if (rel_sign[j] != want) {
            comp_zero[cid] = true;
          }
        }
      }
    }
    // component roots are the first index visited; columns = nonzero components
    std::vector<int> col_of_comp(ncomp, -1);
    int ncols = 0;
    for (int c = 0; c < ncomp; ++c)
      if (!comp_zero[c]) col_of_comp[c] = ncols++;

    // three-term relations
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::pair<int, u64>>> rows;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      auto [c, d] = p1_[i];
      int j = p1_.index(d, -c - d);
      int k = p1_.index(-c - d, c);
      seen[i] = seen[j] = seen[k] = true;
      std::map<int, i64> row;
      for (int t : {i, j, k}) {
        int col = col_of_comp[comp_of[t]];
        if (col < 0) continue;
        row[col] += rel_sign[t];
      }
      std::vector<std::pair<int, u64>> r;
      for (auto [col, v] : row)
        if (F_.from(v)) r.push_back({col, F_.from(v)});
      if (!r.empty()) rows.push_back(std::move(r));
    }

    // sparse elimination
    std::vector<int> pivot_order(ncols, -1);  // creation index for pivot columns
    std::vector<std::vector<std::pair<int, u64>>> prow(ncols);
    int created = 0;
    Vec acc(ncols, 0);
    std::vector<int> touched;
    std::vector<char> is_touched(ncols, 0);
    for (auto& r : rows) {
      touched.clear();
      using QE = std::pair<int, int>;  // (creation index, column)
      std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
      auto put = [&](int col, u64 v) {
        if (!is_touched[col]) {
          is_touched[col] = 1;
          touched.push_back(col);
        }
        acc[col] = F_.add(acc[col], v);
        if (pivot_order[col] >= 0 && acc[col]) pq.push({pivot_order[col], col});
      };
      for (auto [col, v] : r) put(col, v);
      while (!pq.empty()) {
        auto [ord, col] = pq.top();
        pq.pop();
        u64 f = acc[col];
        if (!f) continue;
        for (auto [c2, v2] : prow[col]) put(c2, F_.neg(F_.mul(f, v2)));
      }
      int best = -1;
      for (int col : touched)
        if (acc[col] && pivot_order[col] < 0 && (best < 0 || col > best)) best = col;
      if (best >= 0) {
        u64 inv = F_.inv(acc[best]);
        std::vector<std::pair<int, u64>> nr;
        for (int col : touched)
          if (acc[col]) nr.push_back({col, F_.mul(acc[col], inv)});
        prow[best] = std::move(nr);
        pivot_order[best] = created++;
      }
      for (int col : touched) {
        acc[col] = 0;
        is_touched[col] = 0;
      }
    }
    // free columns
    std::vector<int> free_index(ncols, -1);
    std::vector<int> col_root(ncols, -1);
    for (int i = 0; i < n; ++i) {
      int col = col_of_comp[comp_of[i]];
      if (col >= 0 && col_root[col] < 0 && rel_sign[i] == 1) col_root[col] = i;
    }
    for (int col = 0; col < ncols; ++col) {
      if (pivot_order[col] < 0) {
        free_index[col] = static_cast<int>(free_.size());
        free_.push_back(col_root[col]);
      }
    }
    // expressions of every column over the free generators
    std::vector<std::vector<std::pair<int, u64>>> col_expr(ncols);
    std::vector<int> by_order(created);
    for (int col = 0; col < ncols; ++col)
      if (pivot_order[col] >= 0) by_order[pivot_order[col]] = col;
      else col_expr[col] = {{free_index[col], 1}};
    Vec dense(free_.size(), 0);
    for (int o = created - 1; o >= 0; --o) {
      int col = by_order[o];
      std::fill(dense.begin(), dense.end(), 0);
      for (auto [c2, v2] : prow[col]) {
        if (c2 == col) continue;
        for (auto [f, x] : col_expr[c2]) dense[f] = F_.sub(dense[f], F_.mul(v2, x));
      }
      std::vector<std::pair<int, u64>> e;
      for (std::size_t f = 0; f < dense.size(); ++f)
        if (dense[f]) e.push_back({static_cast<int>(f), dense[f]});
      col_expr[col] = std::move(e);
    }
    expr_ = std::move(col_expr);
    for (int i = 0; i < n; ++i) {
      int col = col_of_comp[comp_of[i]];
      if (col < 0) {
        sign_[i] = 0;
        rep_[i] = 0;
      } else {
        sign_[i] = rel_sign[i];
        rep_[i] = col;
      }
    }
  }

  Field F_;
  P1List p1_;
  std::vector<int> rep_;
  std::vector<int> sign_;
  std::vector<std::vector<std::pair<int, u64>>> expr_;
  std::vector<int> free_;
};

// ---------------------------------------------------------------------------

std::array<i64, 4> lift_to_sl2z(i64 c, i64 d, i64 n) {
  c = mod(c, n);
  d = mod(d, n);
  if (c == 0) c = n;
  while (gcd64(c, d) != 1) d += n;
  i64 s, t;
  xgcd(d, c, s, t);  // s*d + t*c = 1  -> a = s, b = -t
  return {s, -t, c, d};
}

struct NewSpace {
  int ambient_dim = 0;
  Mat basis;            // RREF rows over the ambient free generators
  std::vector<int> pivots;
  std::unique_ptr<ManinSpace> space;

  Mat restrict_hecke(i64 p) const {
    const Field& F = space->field();
    Mat T = space->hecke(p);
    Mat BT = matmul(basis, T, F);
    Mat out(basis.size(), Vec(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < pivots.size(); ++j) out[i][j] = BT[i][pivots[j]];
    return out;
  }
};

NewSpace new_subspace(i64 n, const Field& F) {
  NewSpace ns;
  ns.space = std::make_unique<ManinSpace>(n, F);
  const ManinSpace& M = *ns.space;
  ns.ambient_dim = M.dim();
  std::vector<Mat> blocks;
  Mat A(M.dim());
  for (i64 p : prime_divisors(n)) {
    i64 m = n / p;
    if (m == 1) continue;  // level-1 weight-2 space carries no cusp forms
    ManinSpace L(m, F);
    for (int j = 0; j < M.dim(); ++j) {
      auto [c, d] = M.p1()[M.free_symbol(j)];
      auto g = lift_to_sl2z(c, d, n);
      // g{0, oo} = {b/d, a/c}
      Vec v1 = L.modsym(g[1], g[3], g[0], g[2]);
      Vec vp = L.modsym(p * g[1], g[3], p * g[0], g[2]);
      A[j].insert(A[j].end(), v1.begin(), v1.end());
      A[j].insert(A[j].end(), vp.begin(), vp.end());
    }
  }
  if (A.empty() || A[0].empty()) {
    // prime-power-free corner case: whole space is new
    ns.basis.assign(M.dim(), Vec(M.dim(), 0));
    for (int j = 0; j < M.dim(); ++j) ns.basis[j][j] = 1;
  } else {
    ns.basis = left_kernel(A, F);
  }
  Mat b = ns.basis;
  ns.pivots = rref(b, F, M.dim());
  ns.basis = b;
  return ns;
}

// ---------------------------------------------------------------------------
// dimension formulas

i64 euler_phi(i64 n) {
  i64 r = n;
  for (i64 p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

i64 genus_x0(i64 n) {
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
  i64 mu = n;
  for (i64 p : prime_divisors(n)) mu = mu / p * (p + 1);
  i64 nu2 = 0, nu3 = 0;
  if (n % 4 != 0) {
    nu2 = 1;
    for (i64 p : prime_divisors(n)) {
      if (p == 2) continue;
      nu2 *= (p % 4 == 1) ? 2 : 0;
    }
  }
  if (n % 9 != 0) {
    nu3 = 1;
    for (i64 p : prime_divisors(n)) {
      if (p == 3) continue;
      nu3 *= (p % 3 == 1) ? 2 : 0;
    }
  }
  i64 c = 0;
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) c += euler_phi(std::gcd(d, n / d));
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * c) / 12;
}

i64 new_dim(i64 n) {
  i64 total = 0;
  for (i64 m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    i64 r = n / m, beta = 1;
    for (i64 p : prime_divisors(r)) {
      int e = 0;
      i64 t = r;
      while (t % p == 0) { t /= p; ++e; }
      beta *= e == 1 ? -2 : (e == 2 ? 1 : 0);
    }
    total += beta * genus_x0(m);
  }
  return total;
}

// ---------------------------------------------------------------------------
// CRT helpers

std::vector<u64> word_primes(std::size_t count, u64 start = (1ull << 31) - 1) {
  std::vector<u64> out;
  for (u64 c = start; out.size() < count; c -= 2)
    if (is_small_prime(c)) out.push_back(c);
  return out;
}

struct Crt {
  BigInt value = 0, modulus = 1;
  void add(u64 residue, u64 l) {
    // value' = value + modulus * k, k = (residue - value) / modulus mod l
    u64 vm = static_cast<u64>(value % l);
    u64 mm = static_cast<u64>(modulus % l);
    Field F{l};
    u64 k = F.mul(F.sub(residue, vm), F.inv(mm));
    value += modulus * k;
    modulus *= l;
  }
  BigInt symmetric() const { return value > modulus / 2 ? value - modulus : value; }
};

// Rational reconstruction of a mod m with |num|, den <= sqrt(m/2).
bool ratrecon(const BigInt& a, const BigInt& m, BigInt& num, BigInt& den) {
  BigInt half = m / 2;
  BigInt bound = boost::multiprecision::sqrt(half);
  BigInt r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1; r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1; t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  num = r1;
  den = t1;
  if (den < 0) { num = -num; den = -den; }
  return boost::multiprecision::gcd(num, den) == 1;
}

std::map<i64, i64> parse_combo(const std::string& s) {
  std::map<i64, i64> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto comma = s.find(',', pos);
    auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto colon = item.find(':');
    out[std::stoll(item.substr(0, colon))] = std::stoll(item.substr(colon + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Mat combo_matrix(const NewSpace& ns, const std::map<i64, i64>& combo, std::map<i64, Mat>& cache) {
  const Field& F = ns.space->field();
  std::size_t n = ns.basis.size();
  Mat T(n, Vec(n, 0));
  for (auto [p, c] : combo) {
    if (!cache.count(p)) cache[p] = ns.restrict_hecke(p);
    const Mat& Tp = cache[p];
    u64 cc = F.from(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) T[i][j] = F.add(T[i][j], F.mul(cc, Tp[i][j]));
  }
  return T;
}

double log2_bound(std::size_t n, const std::map<i64, i64>& combo) {
  double b = 0;
  for (auto [p, c] : combo) b += std::abs(static_cast<double>(c)) * 2.0 * std::sqrt(static_cast<double>(p));
  return static_cast<double>(n) * std::log2(1.0 + b) + 8;
}

int cmd_dims(i64 n) {
  Field F{word_primes(1)[0]};
  auto ns = new_subspace(n, F);
  Json j = {{"level", n},
            {"ambient_dim", ns.ambient_dim},
            {"new_dim", ns.basis.size()},
            {"expected_new_dim", new_dim(n)},
            {"genus", genus_x0(n)}};
  std::cout << j.dump() << "\n";
  return static_cast<i64>(ns.basis.size()) == new_dim(n) ? 0 : 3;
}

int cmd_charpoly(i64 n, const std::string& combo_s) {
  auto combo = parse_combo(combo_s);
  std::vector<Crt> crt;
  std::size_t nprimes = 0, dim = 0;
  u64 start = (1ull << 31) - 1;
  for (std::size_t k = 0;; ++k) {
    auto primes = word_primes(k + 1, start);
    u64 l = primes.back();
    Field F{l};
    auto ns = new_subspace(n, F);
    std::map<i64, Mat> cache;
    Mat T = combo_matrix(ns, combo, cache);
    Vec cp = charpoly(T, F);
    if (crt.empty()) {
      dim = ns.basis.size();
      crt.resize(cp.size());
      nprimes = static_cast<std::size_t>(log2_bound(dim, combo) / 30.0) + 2;
    }
    for (std::size_t i = 0; i < cp.size(); ++i) crt[i].add(cp[i], l);
    if (k + 1 >= nprimes) break;
  }
  Json coeffs = Json::array();
  for (auto& c : crt) coeffs.push_back(c.symmetric().str());
  Json j = {{"level", n}, {"new_dim", dim}, {"combo", combo_s}, {"charpoly", coeffs},
            {"expected_new_dim", new_dim(n)}};
  std::cout << j.dump() << "\n";
  return 0;
}

// Polynomial helpers mod l (constant term first).
Vec poly_divexact(const Vec& num, const Vec& den, const Field& F) {
  Vec r = num;
  std::size_t dn = den.size() - 1;
  Vec q(num.size() - dn, 0);
  u64 inv = F.inv(den.back());
  for (std::size_t i = num.size(); i-- > dn;) {
    u64 c = F.mul(r[i], inv);
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) r[i - dn + j] = F.sub(r[i - dn + j], F.mul(c, den[j]));
  }
  return q;
}

Vec poly_apply(const Vec& v, const Vec& poly, const Mat& T, const Field& F) {
  // v * poly(T) by Horner
  Vec acc(v.size(), 0);
  for (std::size_t i = poly.size(); i-- > 0;) {
    acc = vecmat(acc, T, F);
    for (std::size_t j = 0; j < v.size(); ++j) acc[j] = F.add(acc[j], F.mul(poly[i], v[j]));
  }
  return acc;
}

// Solve sum_k h_k * K[k] = target for h (K rows independent). Returns empty on failure.
Vec solve_rows(const Mat& K, const Vec& target, const Field& F) {
  std::size_t d = K.size(), n = target.size();
  // columns = unknowns; rows = coordinates
  Mat aug(n, Vec(d + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) aug[i][k] = K[k][i];
    aug[i][d] = target[i];
  }
  auto piv = rref(aug, F, static_cast<int>(d + 1));
  if (piv.size() != d || (!piv.empty() && piv.back() == static_cast<int>(d))) return {};
  Vec h(d);
  for (std::size_t k = 0; k < d; ++k) h[k] = aug[k][d];
  return h;
}

int cmd_eigen(i64 n, const std::string& combo_s, const std::string& factors_path,
              const std::vector<i64>& qs, int extra_primes) {
  auto combo = parse_combo(combo_s);
  Json fj;
  std::ifstream(factors_path) >> fj;
  std::vector<std::vector<BigInt>> factors;
  for (auto& f : fj) {
    std::vector<BigInt> c;
    for (auto& x : f) c.emplace_back(x.get<std::string>());
    factors.push_back(c);
  }
  BigInt chi = 0;
  // full characteristic polynomial = product of factors (used for cofactors)
  std::vector<BigInt> full{1};
  for (auto& f : factors) {
    std::vector<BigInt> prod(full.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < full.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) prod[i + j] += full[i] * f[j];
    full = prod;
  }
  // result[factor][q] -> CRT per coefficient
  std::vector<std::map<i64, std::vector<Crt>>> acc(factors.size());
  std::mt19937_64 rng(12345);
  std::size_t maxdeg = 0;
  for (auto& f : factors) maxdeg = std::max(maxdeg, f.size() - 1);
  int nprimes = extra_primes;
  u64 start = (1ull << 31) - 1;
  auto primes = word_primes(nprimes, start);
  for (u64 l : primes) {
    Field F{l};
    auto ns = new_subspace(n, F);
    std::map<i64, Mat> cache;
    Mat T = combo_matrix(ns, combo, cache);
    std::map<i64, Mat> Tq;
    for (i64 q : qs) Tq[q] = cache.count(q) ? cache[q] : ns.restrict_hecke(q);
    const std::size_t dim = T.size();
    Vec fullm(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) fullm[i] = static_cast<u64>(((full[i] % l) + l) % l);
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
      Vec g(factors[fi].size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<u64>(((factors[fi][i] % l) + l) % l);
      Vec cof = poly_divexact(fullm, g, F);
      std::size_t d = g.size() - 1;
      Mat K;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Vec r(dim);
        for (auto& x : r) x = rng() % l;
        Vec w = poly_apply(r, cof, T, F);
        K.assign(1, w);
        for (std::size_t k = 1; k < d; ++k) K.push_back(vecmat(K.back(), T, F));
        Mat chk = K;
        if (rref(chk, F, static_cast<int>(dim)).size() == d) break;
        K.clear();
      }
      if (K.empty()) throw std::runtime_error("could not find cyclic vector for factor");
      for (i64 q : qs) {
        Vec target = vecmat(K[0], Tq[q], F);
        Vec h = solve_rows(K, target, F);
        if (h.empty()) throw std::runtime_error("Hecke operator not in algebra generated by combo");
        auto& slot = acc[fi][q];
        if (slot.empty()) slot.resize(d);
        for (std::size_t k = 0; k < d; ++k) slot[k].add(h[k], l);
      }
    }
  }
  Json out = Json::array();
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    Json rec;
    Json fp = Json::array();
    for (auto& c : factors[fi]) fp.push_back(c.str());
    rec["poly"] = fp;
    Json co = Json::object();
    for (auto& [q, slot] : acc[fi]) {
      Json arr = Json::array();
      for (auto& c : slot) {
        BigInt num, den;
        if (!ratrecon(c.value, c.modulus, num, den)) throw std::runtime_error("rational reconstruction failed");
        arr.push_back({num.str(), den.str()});
      }
      co[std::to_string(q)] = arr;
    }
    rec["coeffs"] = co;
    out.push_back(rec);
  }
  std::cout << Json{{"level", n}, {"combo", combo_s}, {"forms", out}}.dump() << "\n";
  return 0;
}

int cmd_selftest(i64 n) {
  Field F{word_primes(1)[0]};
  ManinSpace M(n, F);
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    i64 c = static_cast<i64>(rng() % 500) - 250, d = static_cast<i64>(rng() % 500) - 250;
    if (gcd64(c, d) != 1) continue;
    i64 s, t;
    xgcd(d, c, s, t);
    i64 a = s, b = -t;  // a d - b c = 1
    Vec direct = M.manin(c, d);
    Vec via = M.modsym(b, d, a, c);
    if (direct != via) ++bad;
  }
  int hecke_bad = 0;
  for (i64 p : {3, 5, 7, 11})
    if (n % p != 0 && M.hecke(p) != M.hecke(p, true)) ++hecke_bad;
  std::cout << "level " << n << " dim " << M.dim() << " conversion mismatches " << bad
            << " cremona/merel mismatches " << hecke_bad << "\n";
  return bad == 0 && hecke_bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weight-2 modular symbols for Gamma0(N)"};
  app.require_subcommand(1);
  i64 level = 0;
  std::string combo = "3:1", factors;
  std::vector<i64> qs;
  int nprimes = 12;

  auto* dims = app.add_subcommand("dims", "new-subspace dimension check");
  dims->add_option("level", level)->required();
  auto* cp = app.add_subcommand("charpoly", "integer charpoly of a Hecke combination on the new subspace");
  cp->add_option("level", level)->required();
  cp->add_option("--combo", combo);
  auto* ei = app.add_subcommand("eigen", "Hecke eigenvalues per Galois orbit");
  ei->add_option("level", level)->required();
  ei->add_option("--combo", combo);
  ei->add_option("--factors", factors)->required();
  ei->add_option("--primes", qs)->delimiter(',')->required();
  ei->add_option("--nprimes", nprimes);
  auto* st = app.add_subcommand("selftest", "Manin symbol / continued fraction consistency");
  st->add_option("level", level)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*dims) return cmd_dims(level);
    if (*cp) return cmd_charpoly(level, combo);
    if (*ei) return cmd_eigen(level, combo, factors, qs, nprimes);
    if (*st) return cmd_selftest(level);
  } catch (const std::exception& e) {
    std::cerr << "msym: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

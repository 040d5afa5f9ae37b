#include "hyperpoly/oracle.hpp"

#include <stdexcept>

#include "hyperpoly/qmatrix.hpp"

namespace hyperpoly {

Rat det_bareiss(const RatMatrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  Rat scale = 1;
  for (int i = 0; i < n; ++i) {
    BigInt l = 1;
    for (const Rat& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    scale *= l;
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
  }
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  Rat det(a[n - 1][n - 1] * sign);
  det /= scale;
  return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  int n = static_cast<int>(m.size());
  RatMatrix a = m;
  RatMatrix inv(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rat d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix out(n, std::vector<Rat>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t q = 0; q < k; ++q) {
      if (a[i][q] == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][q] * b[q][j];
    }
  return out;
}

RatMatrix transpose(const RatMatrix& a) {
  if (a.empty()) return {};
  RatMatrix out(a[0].size(), std::vector<Rat>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

namespace {

Rat get(const Assignment& point, Var v) {
  auto it = point.find(v);
  if (it == point.end()) throw std::invalid_argument("missing assignment for " + v.name());
  return it->second;
}

// Numeric B assembled directly from the vertex phases (pairs i < j at each
// vertex), the 2 Omega short/long coupling and the vertex delta functions.
RatMatrix numeric_B(const RibbonGraph& g, const Assignment& point) {
  int L = g.num_lines(), n = g.num_vertices();
  int dim = 2 * L + n - 1;
  Rat s = get(point, Var::s()), w = get(point, Var::omega());
  RatMatrix b(dim, std::vector<Rat>(dim, 0));
  auto u = [](int l) { return l; };
  auto v = [L](int l) { return L + l; };
  std::vector<int> p_of(n, -1);
  for (int x = 0, k = 0; x < n; ++x)
    if (x != g.root()) p_of[x] = 2 * L + k++;

  for (int x = 0; x < n; ++x)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const SlotContent &si = g.slot(x, i), &sj = g.slot(x, j);
        if (si.external || sj.external) continue;
        int sign = (i + j + 1) % 2 == 0 ? 1 : -1;
        int ei = i % 2 == 0 ? 1 : -1, ej = j % 2 == 0 ? 1 : -1;
        int rows[2] = {u(si.index), v(si.index)}, cr[2] = {ei, 1};
        int cols[2] = {u(sj.index), v(sj.index)}, cc[2] = {ej, 1};
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) {
            Rat val = s * sign * cr[a] * cc[c];
            b[rows[a]][cols[c]] += val;
            b[cols[c]][rows[a]] -= val;
          }
      }
  for (int l = 0; l < L; ++l) {
    b[u(l)][v(l)] += 2 * s * w;
    b[v(l)][u(l)] -= 2 * s * w;
    for (const Corner& c : {g.line(l).head, g.line(l).tail}) {
      int p = p_of[c.vertex];
      if (p < 0) continue;
      int sign = c.slot % 2 == 0 ? 1 : -1;
      b[u(l)][p] += 1;
      b[p][u(l)] -= 1;
      b[v(l)][p] += sign;
      b[p][v(l)] -= sign;
    }
  }
  return b;
}

}  // namespace

RatMatrix a_plus_b_at(const RibbonGraph& g, const Assignment& point, int sign) {
  RatMatrix m = numeric_B(g, point);
  for (auto& row : m)
    for (auto& x : row) x *= sign;
  for (int l = 0; l < g.num_lines(); ++l) {
    Rat t = get(point, Var::t(l));
    if (t == 0) throw std::domain_error("t" + std::to_string(l + 1) + " = 0 is a pole of A");
    m[l][l] += (1 + t * t) / (2 * t);
  }
  return m;
}

Rat det_AB_at(const RibbonGraph& g, const Assignment& point) {
  return det_bareiss(a_plus_b_at(g, point, 1));
}

RatMatrix pqinvpt_at(const RibbonGraph& g, const Assignment& point) {
  auto plus = inverse(a_plus_b_at(g, point, 1));
  auto minus = inverse(a_plus_b_at(g, point, -1));
  if (!plus || !minus) throw std::domain_error("A +- B singular at the sample point; resample");
  int dim = static_cast<int>(plus->size());
  RatMatrix sym(dim, std::vector<Rat>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) sym[i][j] = ((*plus)[i][j] + (*minus)[i][j]) / 2;
  PMatrix p = build_P(g);
  RatMatrix pn(p.rows(), std::vector<Rat>(dim));
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < dim; ++c) pn[r][c] = p.entries[r][c].eval(point);
  if (dim == 0) return RatMatrix(p.rows(), std::vector<Rat>(p.rows(), 0));
  return multiply(multiply(pn, sym), transpose(pn));
}

RatMatrix hv_real_at(const RibbonGraph& g, const Assignment& point) {
  RatMatrix q = pqinvpt_at(g, point);
  Rat factor = det_AB_at(g, point);
  for (int l = 0; l < g.num_lines(); ++l) factor *= get(point, Var::t(l));
  for (auto& row : q)
    for (auto& x : row) x *= factor;
  return q;
}

namespace {

struct Gauss {
  Rat re = 0, im = 0;
  Gauss operator+(const Gauss& o) const { return {re + o.re, im + o.im}; }
  Gauss operator-(const Gauss& o) const { return {re - o.re, im - o.im}; }
  Gauss operator*(const Gauss& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Gauss inv() const {
    Rat n = re * re + im * im;
    return {re / n, -im / n};
  }
  bool zero() const { return re == 0 && im == 0; }
};

Gauss gauss_det(std::vector<std::vector<Gauss>> a) {
  int n = static_cast<int>(a.size());
  Gauss det{1, 0};
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!a[r][c].zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return {0, 0};
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = det * Gauss{-1, 0};
    }
    det = det * a[c][c];
    Gauss inv = a[c][c].inv();
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].zero()) continue;
      Gauss f = a[r][c] * inv;
      for (int j = c; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return det;
}

}  // namespace

bool detq_check(const RibbonGraph& g, const Assignment& point) {
  RatMatrix b = numeric_B(g, point);
  int d = static_cast<int>(b.size());
  std::vector<Rat> a(d, 0);
  for (int l = 0; l < g.num_lines(); ++l) {
    Rat t = get(point, Var::t(l));
    if (t == 0) throw std::domain_error("t = 0 is a pole of A");
    a[l] = (1 + t * t) / (2 * t);
  }
  // sigma = diag(s2, s2) with s2 = [[0, -i], [i, 0]].
  Gauss sigma[4][4];
  sigma[0][1] = {0, -1};
  sigma[1][0] = {0, 1};
  sigma[2][3] = {0, -1};
  sigma[3][2] = {0, 1};
  std::vector<std::vector<Gauss>> q(4 * d, std::vector<Gauss>(4 * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          Gauss val;
          if (i == j && x == y) val.re = a[i];
          val = val - Gauss{b[i][j], 0} * sigma[x][y];
          q[4 * i + x][4 * j + y] = val;
        }
  Gauss lhs = gauss_det(q);
  Rat det = det_AB_at(g, point);
  Rat rhs = det * det * det * det;
  return lhs.im == 0 && lhs.re == rhs;
}

long PointSampler::uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng_);
}

Rat PointSampler::unit_open() {
  long den = uniform(2, 97);
  long num = uniform(1, den - 1);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat PointSampler::positive() {
  long num = uniform(1, 97), den = uniform(1, 97);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat PointSampler::any() {
  long num = uniform(-97, 97), den = uniform(1, 97);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Assignment PointSampler::point(int num_lines, const std::optional<Rat>& omega) {
  Assignment pt;
  for (int l = 0; l < num_lines; ++l) pt[Var::t(l)] = unit_open();
  pt[Var::s()] = positive();
  pt[Var::omega()] = omega ? *omega : any();
  return pt;
}

}  // namespace hyperpoly

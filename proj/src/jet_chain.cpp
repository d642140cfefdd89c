// Copyright 2026 The levelcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jet_chain.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "levelcurve/double_double.hpp"

namespace levelcurve::detail {

namespace {

template <class R>
struct Mat {
  explicit Mat(int size) : m(size), a(static_cast<std::size_t>(size * size), R(0.0)) {}
  R& operator()(int i, int j) { return a[static_cast<std::size_t>(i * m + j)]; }
  const R& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * m + j)]; }
  int m;
  std::vector<R> a;
};

template <class R>
Mat<R> operator*(const Mat<R>& x, const Mat<R>& y) {
  Mat<R> z(x.m);
  for (int i = 0; i < x.m; ++i) {
    for (int k = 0; k < x.m; ++k) {
      for (int j = 0; j < x.m; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  }
  return z;
}

template <class R>
Mat<R> operator+(const Mat<R>& x, const Mat<R>& y) {
  Mat<R> z(x.m);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
  return z;
}

template <class R>
Mat<R> operator-(const Mat<R>& x, const Mat<R>& y) {
  Mat<R> z(x.m);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
  return z;
}

template <class R>
Mat<R> operator*(const R& s, const Mat<R>& x) {
  Mat<R> z(x.m);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = s * x.a[i];
  return z;
}

template <class R>
R trace(const Mat<R>& x) {
  R s(0.0);
  for (int i = 0; i < x.m; ++i) s += x(i, i);
  return s;
}

/// tr(x y) without forming the product.
template <class R>
R trace_prod(const Mat<R>& x, const Mat<R>& y) {
  R s(0.0);
  for (int i = 0; i < x.m; ++i) {
    for (int j = 0; j < x.m; ++j) s += x(i, j) * y(j, i);
  }
  return s;
}

/// Gauss-Jordan with partial pivoting.
template <class R>
Mat<R> inverse(Mat<R> x) {
  const int m = x.m;
  Mat<R> inv(m);
  for (int i = 0; i < m; ++i) inv(i, i) = R(1.0);
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(to_double(x(r, col))) > std::abs(to_double(x(piv, col)))) piv = r;
    }
    if (piv != col) {
      for (int j = 0; j < m; ++j) {
        std::swap(x(piv, j), x(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const R d = x(col, col);
    for (int j = 0; j < m; ++j) {
      x(col, j) = x(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const R f = x(r, col);
      for (int j = 0; j < m; ++j) {
        x(r, j) -= f * x(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class R>
R delta(int i, int j) {
  return R(i == j ? 1.0 : 0.0);
}

/// Free variables converted to R.
template <class R>
struct Free {
  explicit Free(const Jet& jet)
      : m(jet.m()), ht(jet.h_t), g(m), b(m), f(m), bt(m), e(m), bk(static_cast<std::size_t>(m), Mat<R>(m)) {
    for (int i = 0; i < m; ++i) {
      g[i] = R(jet.h_ti[static_cast<std::size_t>(i)]);
      b[i] = R(jet.b_diag[static_cast<std::size_t>(i)]);
      f[i] = R(jet.b11_it[static_cast<std::size_t>(i)]);
      for (int j = 0; j < m; ++j) {
        bt(i, j) = R(jet.bt_at(i, j));
        e(i, j) = R(jet.b11_at(i, j));
        for (int k = 0; k < m; ++k) bk[static_cast<std::size_t>(k)](i, j) = R(jet.d3(i, j, k));
      }
    }
    p = R(jet.p);
    w = jet.mode == JetMode::PLaplace ? R(1.0) / (p - R(1.0)) : R(1.0);
    kappa = R(jet.kappa);
    alpha = R(jet.alpha);
    beta = R(jet.beta);
  }

  R d3(int i, int j, int k) const { return bk[static_cast<std::size_t>(k)](i, j); }

  int m;
  R ht;
  std::vector<R> g, b, f;
  Mat<R> bt, e;
  std::vector<Mat<R>> bk;
  R p, w, kappa, alpha, beta;
};

}  // namespace

template <class R>
DirectRoute<R> direct_route(const Jet& jet) {
  const Free<R> v(jet);
  const int m = v.m;
  const R& ht = v.ht;
  const auto& g = v.g;
  Mat<R> bmat(m);
  for (int i = 0; i < m; ++i) bmat(i, i) = v.b[i];
  const Mat<R> bi = inverse(bmat);

  const R c = v.kappa + v.w * ht * ht;
  const R cp = R(2.0) * v.w * ht;
  const R cpp = R(2.0) * v.w;

  Mat<R> mm(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) mm(i, j) = c * delta<R>(i, j) + g[i] * g[j];
  }
  DirectRoute<R> out;
  out.htt = trace_prod(mm, bi);

  // h_tik = b_ik,t - h_t delta_ik
  auto gk = [&](int i, int k) { return v.bt(i, k) - ht * delta<R>(i, k); };
  auto m_k = [&](int k) {
    Mat<R> z(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) z(i, j) = cp * g[k] * delta<R>(i, j) + gk(i, k) * g[j] + g[i] * gk(j, k);
    }
    return z;
  };
  const Mat<R> m_bi = mm * bi;
  out.htti.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    out.htti[static_cast<std::size_t>(k)] =
        trace_prod(m_k(k), bi) - trace(m_bi * v.bk[static_cast<std::size_t>(k)] * bi);
  }
  Mat<R> mt(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      mt(i, j) = cp * out.htt * delta<R>(i, j) + out.htti[static_cast<std::size_t>(i)] * g[j] +
                 g[i] * out.htti[static_cast<std::size_t>(j)];
    }
  }
  out.httt = trace_prod(mt, bi) - trace(m_bi * v.bt * bi);

  // Twice along direction 1 (index 0).
  const R ht11 = v.bt(0, 0) - ht;
  std::vector<R> g11(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g11[static_cast<std::size_t>(i)] = v.f[i] - g[0] * delta<R>(i, 0);
  Mat<R> m11(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      m11(i, j) = cpp * g[0] * g[0] * delta<R>(i, j) + cp * ht11 * delta<R>(i, j) +
                  g11[static_cast<std::size_t>(i)] * g[j] + R(2.0) * gk(i, 0) * gk(j, 0) +
                  g[i] * g11[static_cast<std::size_t>(j)];
    }
  }
  const Mat<R>& b1 = v.bk[0];
  // Commutation rule: b_pq,11 = b_11,pq + b_pq - b_11 delta_pq + b_1q delta_1p - b_1p delta_1q.
  Mat<R> b_11(m);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      b_11(p, q) = v.e(p, q) + bmat(p, q) - bmat(0, 0) * delta<R>(p, q) + bmat(0, q) * delta<R>(0, p) -
                   bmat(0, p) * delta<R>(0, q);
    }
  }
  const Mat<R> bi1 = R(-1.0) * (bi * b1 * bi);
  const Mat<R> bi_b1_bi_b1_bi = bi * b1 * bi * b1 * bi;
  const Mat<R> bi_b11_bi = bi * b_11 * bi;
  out.j1 = trace_prod(m11, bi);
  out.j2 = R(2.0) * trace_prod(m_k(0), bi1);
  out.j3 = R(2.0) * trace_prod(mm, bi_b1_bi_b1_bi);
  out.j4 = R(-1.0) * trace_prod(mm, bi_b11_bi);
  out.htt11 = out.j1 + out.j2 + out.j3 + out.j4;
  out.b11tt = out.htt11 + out.htt;

  // phi = alpha log(-h_t) + log b_11 and its second derivatives.
  const Mat<R> a = bi * mm * bi;
  const R& al = v.alpha;
  const R b0 = v.b[0];
  std::vector<R> b11i(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) b11i[static_cast<std::size_t>(i)] = v.d3(0, 0, i);
  const R bt00 = v.bt(0, 0);
  out.phi_t = al * out.htt / ht + bt00 / b0;
  Mat<R> phi_ij(m);
  std::vector<R> phi_it(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto si = static_cast<std::size_t>(i);
    for (int j = 0; j < m; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      phi_ij(i, j) = R(-1.0) * al * g[i] * g[j] / (ht * ht) + al * gk(i, j) / ht + v.e(i, j) / b0 -
                     b11i[si] * b11i[sj] / (b0 * b0);
    }
    phi_it[si] = R(-1.0) * al * g[i] * out.htt / (ht * ht) + al * out.htti[si] / ht + v.f[i] / b0 -
                 b11i[si] * bt00 / (b0 * b0);
  }
  const R phi_tt = R(-1.0) * al * out.htt * out.htt / (ht * ht) + al * out.httt / ht + out.b11tt / b0 -
                   bt00 * bt00 / (b0 * b0);
  // L v = a^{ij} v_ij - 2 h_tj b^{ij} v_it + v_tt
  auto apply_l = [&](const Mat<R>& vij, const std::vector<R>& vit, const R& vtt) {
    R s = trace_prod(a, vij);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) s -= R(2.0) * g[j] * bi(i, j) * vit[static_cast<std::size_t>(i)];
    }
    return s + vtt;
  };
  // The quadratic form of L on first derivatives (x_i, x_t).
  auto quad_l = [&](const std::vector<R>& x, const R& xt) {
    R s(0.0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        s += a(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        s -= R(2.0) * g[j] * bi(i, j) * x[static_cast<std::size_t>(i)] * xt;
      }
    }
    return s + xt * xt;
  };
  out.l_phi = apply_l(phi_ij, phi_it, phi_tt);
  out.l_b11 = apply_l(v.e, v.f, out.b11tt);
  Mat<R> htij(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) htij(i, j) = gk(i, j);
  }
  out.i1 = R(-1.0) * al / (ht * ht) * quad_l(g, out.htt);
  out.i2 = al / ht * apply_l(htij, out.htti, out.httt);
  out.i3 = R(-1.0) / (b0 * b0) * quad_l(b11i, bt00);
  out.i4 = out.l_b11 / b0;
  return out;
}

namespace {

/// Sums shared by both closed-form routes.
template <class R>
struct Sums {
  Sums(const Free<R>& v, const R& hc) : m(v.m), bi(static_cast<std::size_t>(v.m)) {
    const auto& g = v.g;
    for (int i = 0; i < m; ++i) bi[static_cast<std::size_t>(i)] = R(1.0) / v.b[i];
    s1 = s = t = sg = q = sqb = R(0.0);
    for (int i = 0; i < m; ++i) {
      const R x = bi[static_cast<std::size_t>(i)];
      s1 += x;
      sqb += x * x;
      sg += g[i] * g[i] * x;
      q += g[i] * x * g[i] * x;
      if (i >= 1) {
        s += x;
        t += x * x;
      }
    }
    auto aij = [&](int i, int j) {
      return (hc * delta<R>(i, j) + g[i] * g[j]) * bi[static_cast<std::size_t>(i)] * bi[static_cast<std::size_t>(j)];
    };
    d3sq = sgd = gbf = bbt = j2cross = j3 = j4 = a00 = off = t4 = t6 = g2s = p1 = R(0.0);
    for (int i = 0; i < m; ++i) {
      const R x = bi[static_cast<std::size_t>(i)];
      d3sq += x * x * v.d3(i, i, 0);
      sgd += g[i] * x * v.d3(0, 0, i);
      gbf += g[i] * x * v.f[i];
      bbt += x * v.bt(0, i) * v.bt(0, i);
      if (i >= 1) {
        t6 += x * x * v.d3(i, i, 0);
        g2s += g[i] * g[i] * x;
      }
      for (int j = 0; j < m; ++j) {
        j2cross += g[j] * x * bi[static_cast<std::size_t>(j)] * v.d3(i, j, 0) * v.bt(0, i);
        j4 += aij(i, j) * v.e(i, j);
        a00 += aij(i, j) * v.d3(0, 0, i) * v.d3(0, 0, j);
        for (int k = 0; k < m; ++k) {
          j3 += (hc * delta<R>(i, j) + g[i] * g[j]) * x * bi[static_cast<std::size_t>(j)] *
                bi[static_cast<std::size_t>(k)] * v.d3(i, k, 0) * v.d3(j, k, 0);
        }
      }
    }
    br.resize(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) {
      R quad(0.0), gquad(0.0), cross(0.0), diag(0.0);
      for (int i = 0; i < m; ++i) {
        const R x = bi[static_cast<std::size_t>(i)];
        cross += g[i] * x * v.d3(0, l, i) * v.bt(0, l);
        diag += x * x * v.d3(0, l, i) * v.d3(0, l, i);
        for (int j = 0; j < m; ++j) {
          quad += aij(i, j) * v.d3(0, l, i) * v.d3(0, l, j);
          gquad += g[i] * g[j] * x * bi[static_cast<std::size_t>(j)] * v.d3(0, l, i) * v.d3(0, l, j);
        }
      }
      const R btl2 = v.bt(0, l) * v.bt(0, l);
      br[static_cast<std::size_t>(l)] = quad - R(2.0) * cross + btl2;
      if (l >= 1) {
        const R bl = bi[static_cast<std::size_t>(l)];
        off += bl * diag;
        p1 += bl * (gquad - R(2.0) * cross + btl2);
        for (int i = 1; i < m; ++i) {
          const R x = bi[static_cast<std::size_t>(i)];
          t4 += bl * x * x * v.d3(0, l, i) * v.d3(0, l, i);
        }
      }
    }
    // Spatial gradient of phi.
    dphi.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      dphi[static_cast<std::size_t>(i)] = v.alpha * g[i] / v.ht + v.d3(0, 0, i) / v.b[0];
    }
    gdphi = r3a = r3b = R(0.0);
    for (int i = 0; i < m; ++i) {
      const R di = dphi[static_cast<std::size_t>(i)];
      gdphi += g[i] * bi[static_cast<std::size_t>(i)] * di;
      for (int j = 0; j < m; ++j) {
        r3a += aij(i, j) * (di * dphi[static_cast<std::size_t>(j)] - R(2.0) * v.alpha / v.ht * g[j] * di);
      }
      if (i >= 1) r3b += bi[static_cast<std::size_t>(i)] * (di * di - R(2.0) * v.alpha / v.ht * g[i] * di);
    }
  }

  int m;
  std::vector<R> bi;
  R s1, s, t, sg, q, sqb;
  R d3sq, sgd, gbf, bbt, j2cross, j3, j4, a00, off, t4, t6, g2s, p1;
  std::vector<R> br;
  std::vector<R> dphi;
  R gdphi, r3a, r3b;
};

}  // namespace

template <class R>
R l_phi_regrouped(const Jet& jet) {
  const Free<R> v(jet);
  const DirectRoute<R> dr = direct_route<R>(jet);
  (void)dr;
  const bool p_mode = jet.mode == JetMode::PLaplace;
  const R& ht = v.ht;
  const R ht2 = ht * ht;
  const R hc = p_mode ? v.w * ht2 : v.kappa + ht2;
  const R pf = p_mode ? v.w : R(1.0);
  const Sums<R> z(v, hc);
  const R& al = v.alpha;
  const R& p = v.p;
  const R& g0 = v.g[0];
  const R bi0 = z.bi[0];
  const R bt00 = v.bt(0, 0);
  R deriv = bi0 * bi0 * z.br[0];
  for (int l = 1; l < v.m; ++l) deriv += R(2.0) * bi0 * z.bi[static_cast<std::size_t>(l)] * z.br[static_cast<std::size_t>(l)];
  deriv += R(2.0) * pf * ht * z.s1 * bi0 * bt00 - R(4.0) * ht * bi0 * bi0 * bt00 -
           R(4.0) * pf * ht * g0 * bi0 * z.d3sq + R(4.0) * ht * bi0 * bi0 * z.sgd;
  R q3sum(0.0);
  if (p_mode) {
    const R& pp = v.w;
    const R q1 = (al * pp * pp + (R(2.0) * p - R(3.0) - al) * pp) * bi0 * bi0 +
                 (R(2.0) * al * pp * pp - R(2.0) * pp) * bi0 * z.s + (R(1.0) - al) * pp * z.t + al * pp * pp * z.s * z.s;
    const R q2 = ((R(2.0) - p) * al + R(3.0) - p) * pp * bi0 * bi0 + R(2.0) * (R(1.0) + al) * pp * bi0 * z.s;
    for (int i = 1; i < v.m; ++i) {
      const R x = z.bi[static_cast<std::size_t>(i)];
      q3sum += (R(2.0) * al * pp * z.s1 * x + (p - R(1.0) - p * al) * pp * x * x) * v.g[i] * v.g[i];
    }
    return deriv + q1 * ht2 + q2 * g0 * g0 + q3sum;
  }
  const R& k = v.kappa;
  const R q1 = bi0 * bi0 - R(2.0) * (R(1.0) - al) * bi0 * z.s + (R(1.0) - al) * z.t + al * z.s * z.s;
  const R q2 = bi0 * bi0 + R(2.0) * (R(1.0) + al) * bi0 * z.s;
  for (int i = 1; i < v.m; ++i) {
    const R x = z.bi[static_cast<std::size_t>(i)];
    q3sum += (R(2.0) * al * z.s1 * x + (R(1.0) - R(2.0) * al) * x * x) * v.g[i] * v.g[i];
  }
  return deriv + q1 * ht2 + q2 * g0 * g0 + q3sum + k * (R(-1.0) * al / ht2 * z.q + (R(1.0) - al) * z.sqb) -
         al * k * k / ht2 * z.s1 * z.s1;
}

template <class R>
std::vector<ChainEntry<R>> evaluate_chain(const Jet& jet) {
  const Free<R> v(jet);
  const DirectRoute<R> dr = direct_route<R>(jet);
  const bool p_mode = jet.mode == JetMode::PLaplace;
  const int m = v.m;
  const R& ht = v.ht;
  const R ht2 = ht * ht;
  const R& al = v.alpha;
  const R& be = v.beta;
  const R& p = v.p;
  const R& k = v.kappa;
  const R& pp = v.w;  // 1/(p-1) in the p-Laplace mode
  const R hh = k + ht2;
  // Coefficient of delta_ij in c delta_ij + h_ti h_tj, and the factor that
  // multiplies the derivative terms.
  const R hc = p_mode ? pp * ht2 : hh;
  const R pf = p_mode ? pp : R(1.0);
  const Sums<R> z(v, hc);
  const auto& g = v.g;
  const R& g0 = g[0];
  const R bi0 = z.bi[0];
  const R b0 = v.b[0];
  const R bt00 = v.bt(0, 0);
  const R y = bi0 * bt00;
  const R one(1.0), two(2.0), four(4.0);
  const R opb = one + be;

  std::vector<ChainEntry<R>> out;
  auto identity = [&](const char* name, const R& lhs, const R& rhs, double tol = kIdentityTol) {
    out.push_back({name, StepKind::Identity, lhs, rhs, R(0.0), tol});
  };
  auto inequality = [&](const char* name, const R& lhs, const R& rhs) {
    out.push_back({name, StepKind::Inequality, lhs, rhs, R(0.0), kIdentityTol});
  };

  // Step 1: the pieces of L(phi).
  R i1p, i2p, i12p, j1rest;
  if (p_mode) {
    i1p = R(-1.0) * al * pp * z.q - al * pp * pp * ht2 * z.s1 * z.s1;
    i2p = R(-1.0) * al * pp * ht2 * z.sqb - al * z.q + two * al * pp * pp * ht2 * z.s1 * z.s1 + two * al * pp * z.s1 * z.sg;
    i12p = R(-1.0) * p * al * pp * z.q + al * pp * pp * ht2 * z.s1 * z.s1 - al * pp * ht2 * z.sqb +
           two * al * pp * z.s1 * z.sg;
    j1rest = (two * p - four) * pp * ht2 * bi0 - two * pp * ht2 * z.s + (four - two * p) * pp * g0 * g0 * bi0 +
             two * pp * g0 * g0 * z.s;
  } else {
    i1p = R(-1.0) * al / ht2 * hh * z.q - al / ht2 * hh * hh * z.s1 * z.s1;
    i2p = R(-1.0) * al * hh * z.sqb - al * z.q + two * al * hh * z.s1 * z.s1 + two * al * z.s1 * z.sg;
    i12p = R(-1.0) * al * k / ht2 * z.q - two * al * z.q + al * (one - k / ht2) * hh * z.s1 * z.s1 -
           al * hh * z.sqb + two * al * z.s1 * z.sg;
    j1rest = R(-2.0) * ht2 * z.s + two * g0 * g0 * z.s;
  }
  const R j1_head = two * z.bbt + two * pf * ht * z.s1 * bt00 - four * ht * bi0 * bt00;
  const R j1p = two * z.gbf + j1_head + j1rest;
  const R j2p = R(-4.0) * pf * ht * g0 * z.d3sq - four * z.j2cross + four * ht * bi0 * z.sgd;
  const R j3p = two * z.j3;
  const R j4p = R(-1.0) * z.j4 - dr.htt + hc * b0 * z.sqb + b0 * z.q;
  const R lb11p = j1_head + j1rest + j2p + j3p + hc * b0 * z.sqb + b0 * z.q;
  const R lphi_p = l_phi_regrouped<R>(jet);

  identity("I1", dr.i1, i1p);
  identity("I2", dr.i2, i2p);
  identity("I1_plus_I2", dr.i1 + dr.i2, i12p);
  identity("J1", dr.j1, j1p);
  identity("J2", dr.j2, j2p);
  identity("J3", dr.j3, j3p);
  identity("J4", dr.j4, j4p);
  identity("L_b11", dr.l_b11, lb11p);
  identity("I4", dr.i4, bi0 * lb11p);
  identity("L_phi_split", dr.l_phi, dr.i1 + dr.i2 + dr.i3 + dr.i4);
  identity("L_phi_regrouped", dr.l_phi, lphi_p);

  // Step 2: L(phi) + beta phi_t^2.
  const R bphit2 = be * dr.phi_t * dr.phi_t;
  R bphit2p;
  if (p_mode) {
    bphit2p = be * al * al * pp * pp * ht2 * z.s1 * z.s1 + two * be * al * al * pp * z.s1 * z.sg +
              be * al * al / ht2 * z.sg * z.sg + two * be * al * pp * ht * z.s1 * y + two * be * al / ht * z.sg * y +
              be * y * y;
  } else {
    bphit2p = be * al * al *
                  (k * k / ht2 * z.s1 * z.s1 + ht2 * z.s1 * z.s1 + z.sg * z.sg / ht2 + two * k * z.s1 * z.s1 +
                   two * k / ht2 * z.s1 * z.sg + two * z.s1 * z.sg) +
              two * be * al * (k / ht * z.s1 + ht * z.s1 + z.sg / ht) * y + be * y * y;
  }
  identity("beta_phi_t_sq", bphit2, bphit2p);

  const R p1 = two * bi0 * z.p1;
  R x = bi0 * z.sgd - pf * ht * z.s1 + two * ht * bi0 - be * al * pf * ht * z.s1 - be * al / ht * z.sg;
  if (!p_mode) x -= be * al * k / ht * z.s1;
  const R p2 = opb * y * y - two * x * y;
  const R p3 = bi0 * bi0 * z.a00 + two * hc * bi0 * z.off - four * pf * ht * g0 * bi0 * z.d3sq +
               four * ht * bi0 * bi0 * z.sgd;
  R p4 = be * al * al * pf * pf * ht2 * z.s1 * z.s1 + two * be * al * al * pf * z.s1 * z.sg +
         be * al * al / ht2 * z.sg * z.sg;
  // The pure (derivative-free) part of L(phi).
  R pure = lphi_p;
  {
    R deriv = bi0 * bi0 * z.br[0];
    for (int l = 1; l < m; ++l) deriv += two * bi0 * z.bi[static_cast<std::size_t>(l)] * z.br[static_cast<std::size_t>(l)];
    deriv += two * pf * ht * z.s1 * bi0 * bt00 - four * ht * bi0 * bi0 * bt00 - four * pf * ht * g0 * bi0 * z.d3sq +
             four * ht * bi0 * bi0 * z.sgd;
    pure = pure - deriv;
  }
  p4 += pure;
  if (!p_mode) {
    p4 += be * al * al * k * k / ht2 * z.s1 * z.s1 + two * be * al * al * k * z.s1 * z.s1 +
          two * be * al * al * k / ht2 * z.s1 * z.sg;
  }
  identity("P_decomposition", dr.l_phi + bphit2, p1 + p2 + p3 + p4);

  R yy = R(-1.0) * al * opb / ht * z.sg - (one + be * al) * pf * ht * z.s1 + two * ht * bi0;
  if (!p_mode) yy -= be * al * k / ht * z.s1;
  const R& gg = z.gdphi;
  identity("P2_square_form", x, gg + yy);
  const R r2 = R(-1.0) * gg * gg / opb - two / opb * yy * gg;
  R p2exp = R(-1.0) * al * al * opb / ht2 * z.sg * z.sg - pf * pf * (one + be * al) * (one + be * al) / opb * ht2 * z.s1 * z.s1 -
            four / opb * ht2 * bi0 * bi0 - two * al * (one + be * al) * pf * z.s1 * z.sg + four * al * bi0 * z.sg +
            four * pf * (one + be * al) / opb * ht2 * bi0 * z.s1;
  if (!p_mode) {
    p2exp += R(-1.0) * k * k * be * be * al * al / opb / ht2 * z.s1 * z.s1 - k * two * be * al * al / ht2 * z.s1 * z.sg -
             k * two * be * al * (one + be * al) / opb * z.s1 * z.s1 + k * four * be * al / opb * bi0 * z.s1;
  }
  identity("P2_expansion", R(-1.0) * x * x / opb, p2exp + r2);

  const R r3 = z.r3a + two * hc * bi0 * z.r3b - four * pf * ht * g0 * bi0 * bi0 * z.dphi[0] + four * ht * bi0 * gg;
  const R qfac = p_mode ? pp : (k / ht2 + one);
  const R t4 = two * hc * bi0 * z.t4;
  const R t6 = R(-4.0) * pf * ht * g0 * bi0 * z.t6;
  const R p3_common = al * al * qfac * z.q + al * al / ht2 * z.sg * z.sg + two * al * al * qfac * bi0 * z.g2s +
                      four * al * pf * g0 * g0 * bi0 * bi0 - four * al * bi0 * z.sg;
  identity("P3_identity", p3, p3_common + t4 + t6 + r3);
  R mid(0.0);
  for (int i = 1; i < m; ++i) {
    const R xi = z.bi[static_cast<std::size_t>(i)];
    const R u = ht * xi * v.d3(i, i, 0);
    mid += xi * (u * u - two * u * g0);
  }
  mid = two * pf * bi0 * mid;
  const R bound = R(-2.0) * pf * g0 * g0 * bi0 * z.s;
  const R p33 = p3_common + bound;

  const bool m1p1 = jet.alpha == -1.0 && jet.beta == 1.0;
  const bool case_ii = jet.alpha == 0.0 && jet.beta == 0.0 && jet.n == 3 && (!p_mode || jet.p == 2.0);
  R lower;
  if (p_mode) {
    const R r1 = ((be * al * al - two * be * al - one) * pp * pp / opb + (four * be * al - four * p + R(8.0)) * pp / opb) * bi0 * bi0 +
                 ((two * be * al * al - four * be * al - two) * pp * pp / opb + four * (one + be * al) * pp / opb) * bi0 * z.s +
                 (be * al * al - two * be * al - one) * pp * pp / opb * z.s * z.s;
    const R rr2 = (al * al + two * al) * pp * bi0 * bi0 - two * (one + al) * pp * bi0 * z.s;
    R r3sum(0.0), degsum(0.0);
    for (int i = 1; i < m; ++i) {
      const R xi = z.bi[static_cast<std::size_t>(i)];
      r3sum += (al * al * pp * xi * xi + two * al * al * pp * bi0 * xi - two * al * pp * z.s1 * xi) * g[i] * g[i];
      degsum += g[i] * g[i] * (two * al * al * pp * bi0 * xi + (al * al - p * al + p - one) * pp * xi * xi);
    }
    const R rform = r1 * ht2 + rr2 * g0 * g0 + r3sum;
    identity("r_regrouping", p2exp + r2 + p33 + r3 + p4, rform + pure + r2 + r3);
    const R c0 = (be * al * al - be * al + al - one) * pp * pp / opb;
    const R deg = ht2 * ((c0 + (R(3.0) * be * al - al + (two * p - R(3.0)) * be - two * p + R(5.0)) * pp / opb) * bi0 * bi0 +
                         (two * c0 + (four * be * al - two * be + two) * pp / opb) * bi0 * z.s + c0 * z.s * z.s +
                         (one - al) * pp * z.t) +
                  (al * al + (four - p) * al + R(3.0) - p) * pp * g0 * bi0 * g0 * bi0 + degsum;
    identity("degenerate_form", rform + pure, deg);
    if (m1p1) {
      R fin(0.0);
      for (int i = 1; i < m; ++i) {
        const R xi = z.bi[static_cast<std::size_t>(i)];
        fin += two * pp * ht2 * xi * (xi - bi0) + two * pp * g[i] * g[i] * xi * (bi0 + p * xi);
      }
      identity("final_closed_form", deg, fin, kClosedFormTol);
    }
    lower = deg;
  } else {
    R q1sum(0.0);
    for (int i = 1; i < m; ++i) {
      const R xi = z.bi[static_cast<std::size_t>(i)];
      q1sum += g[i] * g[i] * (two * al * al * bi0 * xi + (one - al) * (one - al) * xi * xi);
    }
    const R qq1 = ht2 * (be * (one + al) * (one + al) / opb * bi0 * bi0 +
                         (two * be * al * al + two * be * al + two * al - two * be) / opb * bi0 * z.s + (one - al) * z.t +
                         (one + be * al) * (al - one) / opb * z.s * z.s) +
                  (one + al) * (one + al) * g0 * bi0 * g0 * bi0 + q1sum;
    const R qq2 = k * (al * (al - one) / ht2 * z.q + two * al * al / ht2 * bi0 * z.g2s +
                       two * be * al * (al - one) / opb * z.s1 * z.s1 + (one - al) * z.sqb +
                       four * be * al / opb * z.s1 * bi0) +
                  k * k * (al * (be * al - be - one) / opb / ht2 * z.s1 * z.s1);
    identity("Q_regrouping", p2exp + p33 + p4, qq1 + qq2);
    if (m1p1) {
      R sum2(0.0);
      for (int i = 1; i < m; ++i) {
        const R xi = z.bi[static_cast<std::size_t>(i)];
        sum2 += two * g[i] * g[i] * xi * (bi0 + two * xi);
      }
      const R lvpb2 = two * hh * (z.t - bi0 * z.s) + sum2 + k * (two / ht2 * z.q + two / ht2 * bi0 * z.g2s + two * z.s1 * z.s1) +
                      k * k * R(1.5) / ht2 * z.s1 * z.s1;
      identity("final_closed_form", qq1 + qq2, lvpb2, kClosedFormTol);
    }
    lower = qq1 + qq2;
  }
  if (case_ii) {
    const R b1i = z.bi[1];
    identity("case_ii_form", lower,
             g0 * bi0 * g0 * bi0 + g[1] * b1i * g[1] * b1i + k * (bi0 * bi0 + b1i * b1i));
  }

  // Entries evaluated on first-order critical jets.
  double scale_d = 1.0;
  for (const R* q : std::initializer_list<const R*>{&dr.l_phi, &bphit2, &p1, &p2, &p3, &p4}) scale_d = std::max(scale_d, std::abs(to_double(*q)));
  const R scale(scale_d);
  out.push_back({"R2_vanishes", StepKind::Zero, r2, R(0.0), scale, kZeroTol});
  out.push_back({"R3_vanishes", StepKind::Zero, r3, R(0.0), scale, kZeroTol});
  if (p_mode && m1p1 && jet.n == 2) {
    out.push_back({"final_bound_zero_2d", StepKind::Zero, lower, R(0.0), scale, kZeroTol});
  }
  inequality("P1_nonnegative", p1, R(0.0));
  inequality("P2_lower_bound", p2, R(-1.0) * x * x / opb);
  inequality("P31_diagonal", t4 + t6, mid);
  inequality("P31_square", mid, bound);
  inequality("P3_lower_bound", p3, p33 + r3);
  inequality("final_inequality", dr.l_phi + bphit2, lower + r2 + r3);
  if (m1p1 || case_ii) {
    inequality("final_nonnegative", lower, R(0.0));
  } else {
    out.push_back({"final_nonnegative", StepKind::Exploratory, lower, R(0.0), R(0.0), 0.0});
  }
  return out;
}

template DirectRoute<double> direct_route<double>(const Jet&);
template DirectRoute<DoubleDouble> direct_route<DoubleDouble>(const Jet&);
template std::vector<ChainEntry<double>> evaluate_chain<double>(const Jet&);
template std::vector<ChainEntry<DoubleDouble>> evaluate_chain<DoubleDouble>(const Jet&);
template double l_phi_regrouped<double>(const Jet&);
template DoubleDouble l_phi_regrouped<DoubleDouble>(const Jet&);

}  // namespace levelcurve::detail

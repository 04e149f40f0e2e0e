#include "fredkin/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fredkin/errors.hpp"

namespace fredkin {

namespace {

Series series_const(const mpz_class& c, int order) {
  Series s(static_cast<std::size_t>(order) + 1);
  s[0] = c;
  return s;
}

// x^k
Series series_monomial(int k, int order) {
  Series s(static_cast<std::size_t>(order) + 1);
  if (k <= order) s[static_cast<std::size_t>(k)] = 1;
  return s;
}

// 1 / (1 - c x^2)
Series series_geom_x2(long c, int order) {
  Series s(static_cast<std::size_t>(order) + 1);
  mpz_class pow(1);
  for (int k = 0; k <= order; k += 2) {
    s[static_cast<std::size_t>(k)] = pow;
    pow *= c;
  }
  return s;
}

int order_of(const Series& s) { return static_cast<int>(s.size()) - 1; }

}  // namespace

Series series_add(const Series& x, const Series& y) {
  Series out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size()) out[i] += x[i];
    if (i < y.size()) out[i] += y[i];
  }
  return out;
}

Series series_sub(const Series& x, const Series& y) {
  Series out(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size()) out[i] += x[i];
    if (i < y.size()) out[i] -= y[i];
  }
  return out;
}

Series series_mul(const Series& x, const Series& y, int order) {
  Series out(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < x.size() && i <= static_cast<std::size_t>(order); ++i) {
    if (x[i] == 0) continue;
    const std::size_t jmax =
        std::min(y.size(), static_cast<std::size_t>(order) + 1 - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (y[j] == 0) continue;
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

Series series_div_unit(const Series& num, const Series& den, int order) {
  if (den.empty() || den[0] != 1)
    throw std::invalid_argument("series_div_unit: denominator constant term must be 1");
  Series q(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    mpz_class acc = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)]
                                                     : mpz_class(0);
    const int jmax = std::min<int>(k, order_of(den));
    for (int j = 1; j <= jmax; ++j)
      acc -= den[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc;
  }
  return q;
}

Series series_shift_down(const Series& s, int k) {
  for (int i = 0; i < k && i < static_cast<int>(s.size()); ++i)
    if (s[static_cast<std::size_t>(i)] != 0)
      throw IdentityViolationError(
          "series_shift_down: nonzero coefficient below x^" + std::to_string(k));
  Series out(s.size());
  for (std::size_t i = static_cast<std::size_t>(k); i < s.size(); ++i)
    out[i - static_cast<std::size_t>(k)] = s[i];
  return out;
}

Series catalan_series(int order) {
  Series s(static_cast<std::size_t>(order) + 1);
  for (int m = 0; 2 * m <= order; ++m)
    s[static_cast<std::size_t>(2 * m)] = dyck_catalan(2 * m, 0);
  return s;
}

namespace {

// The full-regime closed forms share these building blocks.
struct Phase1Blocks {
  Series inv13;     // 1 / (1 - 3 x^2)
  Series inv_1mx2;  // 1 / (1 - x^2)
  Series cx;        // profile generating function composed with X = x^3/(1-3x^2)
  Series n11;       // (1 - x^2) inv13 cx
  Series g;         // X cx
  int order;

  explicit Phase1Blocks(int ord) : order(ord) {
    inv13 = series_geom_x2(3, ord);
    inv_1mx2 = series_geom_x2(1, ord);
    // Compose Catalan with X by Horner in X^2 = x^6 inv13^2.
    const Series x2 = series_mul(series_mul(series_monomial(6, ord), inv13, ord),
                                 inv13, ord);
    const int terms = ord / 6;
    Series acc = series_const(dyck_catalan(2 * terms, 0), ord);
    for (int m = terms - 1; m >= 0; --m) {
      acc = series_mul(acc, x2, ord);
      acc[0] += dyck_catalan(2 * m, 0);
    }
    cx = std::move(acc);
    Series one_m_x2 = series_const(1, ord);
    if (ord >= 2) one_m_x2[2] = -1;
    n11 = series_mul(series_mul(one_m_x2, inv13, ord), cx, ord);
    g = series_mul(series_mul(series_monomial(3, ord), inv13, ord), cx, ord);
  }

  Series g_pow(int k) const {
    Series p = series_const(1, order);
    for (int i = 0; i < k; ++i) p = series_mul(p, g, order);
    return p;
  }
};

Series truncate_to(Series s, int order) {
  s.resize(static_cast<std::size_t>(order) + 1);
  return s;
}

Series phase1_genfunc(int h, int a, int b, int order) {
  // The closed forms divide by powers of x up to x^3, so build every block
  // with three orders of headroom and truncate on return.
  const int w = order + 3;
  const Phase1Blocks blk(w);
  const Series zero(static_cast<std::size_t>(order) + 1);
  if (a == 3) {
    // Only the empty walk: the first letter from index 3 goes below the floor.
    return (h == 0 && b == 3) ? series_const(1, order) : zero;
  }
  if (h == 0) {
    if (b == 3) return zero;  // no down letter ends at index 3
    if (a == 1 && b == 1) return truncate_to(blk.n11, order);
    if (a == 2 && b == 2)
      return truncate_to(
          series_mul(
              blk.inv_1mx2,
              series_add(series_const(1, w),
                         series_mul(series_mul(series_monomial(4, w), blk.inv13, w),
                                    blk.cx, w)),
              w),
          order);
    // (1,2) and (2,1): x^2 inv13 cx
    return truncate_to(
        series_mul(series_mul(series_monomial(2, w), blk.inv13, w), blk.cx, w),
        order);
  }
  // h >= 1.  B := x^2/(1-x^2) n11 + 1 collects the climbing corrections.
  const Series bfac = series_add(
      series_const(1, w),
      series_mul(series_mul(series_monomial(2, w), blk.inv_1mx2, w), blk.n11, w));
  if (b == 1) {
    const Series gh1 = blk.g_pow(h + 1);
    if (a == 2) return truncate_to(series_shift_down(gh1, 1), order);
    Series one_m_x2 = series_const(1, w);
    one_m_x2[2] = -1;
    return truncate_to(series_shift_down(series_mul(one_m_x2, gh1, w), 3), order);
  }
  if (b == 2) {
    const Series xg1 =
        series_add(series_mul(series_monomial(1, w), blk.g, w), series_const(1, w));
    const Series core = series_mul(blk.g_pow(h), xg1, w);
    if (a == 2) return truncate_to(series_mul(blk.inv_1mx2, core, w), order);
    return truncate_to(series_shift_down(core, 2), order);
  }
  // b == 3
  const Series core = series_mul(blk.g_pow(h - 1), bfac, w);
  if (a == 2)
    return truncate_to(
        series_mul(series_mul(series_monomial(1, w), blk.inv_1mx2, w), core, w),
        order);
  if (h == 1)
    return truncate_to(series_shift_down(series_sub(core, series_const(1, w)), 1),
                       order);
  return truncate_to(series_shift_down(core, 1), order);
}

Series phase2_genfunc(int h, int a, int b, int order) {
  // Length-graded versions of the tabulated move-class counts, all derived
  // from M(y) = (1 - y)/(1 - 3y + y^2) with y = x^2.
  Series num = series_const(1, order);
  if (order >= 2) num[2] = -1;
  Series den = series_const(1, order);
  if (order >= 2) den[2] = -3;
  if (order >= 4) den[4] = 1;
  const Series m = series_div_unit(num, den, order);  // M(x^2)
  const Series inv_1mx2 = series_geom_x2(1, order);
  if (h == 0 && a == 1 && b == 1) return m;
  if (h == 1 && a == 1 && b == 2)
    return series_mul(series_mul(series_monomial(1, order), m, order), inv_1mx2,
                      order);
  if (h == 1 && a == 1 && b == 3)
    return series_mul(series_monomial(1, order), m, order);
  if (h == 2 && a == 1 && b == 3)
    return series_mul(series_mul(series_monomial(2, order), m, order), inv_1mx2,
                      order);
  throw std::invalid_argument("series_genfunc: no tabulated move class for h=" +
                              std::to_string(h) + ", " + std::to_string(a) +
                              "->" + std::to_string(b));
}

Series phase3_genfunc(int h, int a, int b, int order) {
  const Series zero(static_cast<std::size_t>(order) + 1);
  Series den = series_const(1, order);  // 1 - 3x^2 + x^4
  if (order >= 2) den[2] = -3;
  if (order >= 4) den[4] = 1;
  Series one_m_x2 = series_const(1, order);
  if (order >= 2) one_m_x2[2] = -1;
  const Series inv_1mx2 = series_geom_x2(1, order);
  if (h == 0) {
    if (a == 1 && b == 1) return series_div_unit(one_m_x2, den, order);
    if (a == 2 && b == 2) return inv_1mx2;
    if (a == 3 && b == 3) return series_const(1, order);
    return zero;
  }
  if (h == 1 && a == 1 && b == 2)
    return series_div_unit(series_monomial(1, order), den, order);
  if (h == 1 && a == 1 && b == 3)
    return series_div_unit(series_mul(series_monomial(1, order), one_m_x2, order),
                           den, order);
  if (h == 2 && a == 1 && b == 3)
    return series_div_unit(series_monomial(2, order), den, order);
  if (h == 1 && a == 2 && b == 3)
    return series_mul(series_monomial(1, order), inv_1mx2, order);
  return zero;
}

}  // namespace

Series series_genfunc(Phase phase, int h, int a, int b, int order) {
  if (order < 0) throw std::invalid_argument("series_genfunc: negative order");
  if (h < 0 || a < 1 || a > 3 || b < 1 || b > 3)
    throw std::invalid_argument("series_genfunc: bad class");
  switch (phase) {
    case Phase::kFull: return phase1_genfunc(h, a, b, order);
    case Phase::kMountainsOnly: return phase2_genfunc(h, a, b, order);
    case Phase::kPairPenalty: return phase3_genfunc(h, a, b, order);
  }
  throw std::invalid_argument("series_genfunc: unknown phase");
}

bool verify_identity_catalan_power(int n_max, int h_max) {
  const Series c = catalan_series(n_max);
  // X C(X) in X-powers: C shifted up by one.
  Series xc(static_cast<std::size_t>(n_max) + 1);
  for (int k = 1; k <= n_max; ++k)
    xc[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)];
  Series p = c;  // h = 0: C(X)
  for (int h = 0; h <= h_max; ++h) {
    for (int n = 0; n <= n_max; ++n) {
      const mpz_class direct = dyck_catalan(n, h);
      if (p[static_cast<std::size_t>(n)] != direct)
        throw IdentityViolationError(
            "catalan power identity fails at n=" + std::to_string(n) +
            ", h=" + std::to_string(h) + ": series " +
            p[static_cast<std::size_t>(n)].get_str() + " vs direct " +
            direct.get_str());
    }
    if (h < h_max) p = series_mul(p, xc, n_max);
  }
  return true;
}

}  // namespace fredkin

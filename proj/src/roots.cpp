#include "corrheight/roots.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace corrh::arith {

namespace {

CFloat mid_point(const CInterval& c) { return {c.re().mid(), c.im().mid()}; }

CInterval as_box(const CFloat& z) { return CInterval(Interval(z.re), Interval(z.im)); }

// p(z) and p'(z) together.
std::pair<CFloat, CFloat> horner2(const std::vector<CFloat>& a, const CFloat& z) {
  CFloat p = a.back(), dp;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
  return {p, dp};
}

bool finite(const CFloat& z) { return z.re.is_finite() && z.im.is_finite(); }

// Symmetric hull about the real axis.
CInterval symmetrize(const CInterval& k) {
  BigFloat m = k.im().mag();
  return CInterval(k.re(), Interval(-m, m));
}

bool disjoint_all(const std::vector<CInterval>& boxes) {
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (boxes[i].overlaps(boxes[j])) return false;
  return true;
}

bool box_less(const ComplexBox& a, const ComplexBox& b) {
  BigFloat ra = a.re.mid(), rb = b.re.mid();
  if (!(ra == rb)) return ra < rb;
  return a.im.mid() < b.im.mid();
}

}  // namespace

CIPoly to_cipoly(const IntPoly& f) {
  CIPoly out;
  out.reserve(f.size());
  for (const auto& c : f.coeffs()) out.emplace_back(c);
  return out;
}

CIPoly to_cipoly(const UniPoly& f) {
  CIPoly out;
  out.reserve(f.size());
  for (const auto& c : f.coeffs()) out.emplace_back(c);
  return out;
}

CIPoly derivative(const CIPoly& f) {
  CIPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * CInterval(static_cast<long>(i)));
  return out;
}

CInterval horner(const CIPoly& f, const CInterval& z) {
  if (f.empty()) return CInterval(0L);
  CInterval acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * z + f[i];
  return acc;
}

std::vector<CFloat> aberth(const CIPoly& f, int max_iter) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return {};
  std::vector<CFloat> a;
  a.reserve(f.size());
  for (const auto& c : f) a.push_back(mid_point(c));
  // Root radius bound 2 max |a_{n-k}/a_n|^(1/k), taken in log scale.
  auto log2abs = [](const CFloat& c) {
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, c.abs().get(), MPFR_RNDN);
    return std::log2(m) + static_cast<double>(e);
  };
  const double l2lead = log2abs(a[n]);
  double logr = -1e300;
  for (int k = 1; k <= n; ++k) {
    if (a[n - k].abs().is_zero()) continue;
    logr = std::max(logr, (log2abs(a[n - k]) - l2lead) / k);
  }
  if (logr < -1e299) logr = 0;  // a_0..a_{n-1} all zero: the only root is 0
  const double pi = std::acos(-1.0);
  std::vector<CFloat> z(n);
  for (int k = 0; k < n; ++k) {
    // slightly shrunk radii of different sizes break symmetry for multiple-modulus roots
    double ang = 2 * pi * k / n + 0.7;
    double scale = 1.0 + 0.05 * (k % 3);
    BigFloat R = BigFloat::pow2(static_cast<long>(std::floor(logr)) + 1) * BigFloat(scale);
    z[k] = {R * BigFloat(std::cos(ang)), R * BigFloat(std::sin(ang))};
  }
  const long prec = working_precision();
  const BigFloat stop = BigFloat::pow2(-(prec - 8));
  for (int it = 0; it < max_iter; ++it) {
    BigFloat worst(0L);
    for (int k = 0; k < n; ++k) {
      auto [p, dp] = horner2(a, z[k]);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      CFloat N = p / dp;
      if (!finite(N)) {
        // stationary point: nudge
        z[k] = z[k] + CFloat(BigFloat::pow2(-20), BigFloat::pow2(-21));
        worst = BigFloat(1L);
        continue;
      }
      CFloat s;
      for (int j = 0; j < n; ++j)
        if (j != k) s = s + CFloat(BigFloat(1L), BigFloat(0L)) / (z[k] - z[j]);
      CFloat w = N / (CFloat(BigFloat(1L), BigFloat(0L)) - N * s);
      if (!finite(w)) w = N;
      z[k] = z[k] - w;
      BigFloat mz = z[k].abs();
      BigFloat rel = w.abs() / (mz > BigFloat(1L) ? mz : BigFloat(1L));
      if (worst < rel) worst = rel;
    }
    if (worst < stop) break;
  }
  return z;
}

bool certify_near(const CIPoly& f, const CIPoly& df, const CFloat& z0, bool on_real_axis, CInterval& out) {
  CFloat z = z0;
  if (on_real_axis) z.im = BigFloat(0L);
  const CInterval Z = as_box(z);
  const CInterval fz = horner(f, Z);
  const CFloat dmid = mid_point(horner(df, Z));
  if (dmid.re.is_zero() && dmid.im.is_zero()) return false;
  const CFloat yp = CFloat(BigFloat(1L), BigFloat(0L)) / dmid;
  if (!finite(yp)) return false;
  const CInterval Y = as_box(yp);
  const CInterval center = Z - Y * fz;
  const CInterval one(1L);

  BigFloat mz = z.abs();
  if (mz < BigFloat(1L)) mz = BigFloat(1L);
  BigFloat r = mul((Y * fz).mag(), BigFloat(2L), MPFR_RNDU) +
               BigFloat::pow2(mz.exponent() - working_precision() + 6);
  for (int attempt = 0; attempt < 12; ++attempt) {
    CInterval B(Interval::around(z.re, r), Interval::around(z.im, r));
    CInterval D = horner(df, B);
    CInterval K = center + (one - Y * D) * (B - Z);
    if (B.interior_contains(K)) {
      out = on_real_axis ? symmetrize(K) : K;
      return true;
    }
    r = mul(r, BigFloat(4L), MPFR_RNDU);
  }
  return false;
}

std::vector<ComplexBox> certified_roots(const CIPoly& f, bool real_coeffs) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return {};
  if (f.back().contains_zero()) throw PrecisionExhausted("leading coefficient not separated from zero");
  const CIPoly df = derivative(f);
  const auto approx = aberth(f);
  const long prec = working_precision();

  std::vector<ComplexBox> out;
  std::vector<CInterval> boxes;
  for (const auto& z : approx) {
    BigFloat mz = z.abs();
    if (mz < BigFloat(1L)) mz = BigFloat(1L);
    const BigFloat tol = BigFloat::pow2(mz.exponent() - prec / 2);
    CInterval K;
    if (real_coeffs && abs(z.im) <= tol) {
      if (!certify_near(f, df, z, true, K)) throw PrecisionExhausted("real root not certified");
      out.push_back({K.re(), K.im(), prec, true});
      boxes.push_back(K);
    } else if (real_coeffs && z.im.sign() < 0) {
      continue;  // mirrored from its conjugate
    } else {
      if (!certify_near(f, df, z, false, K)) throw PrecisionExhausted("complex root not certified");
      out.push_back({K.re(), K.im(), prec, false});
      boxes.push_back(K);
      if (real_coeffs) {
        CInterval C = K.conj();
        out.push_back({C.re(), C.im(), prec, false});
        boxes.push_back(C);
      }
    }
  }
  if (static_cast<int>(out.size()) != n || !disjoint_all(boxes))
    throw PrecisionExhausted("root boxes not separated");
  return out;
}

std::vector<std::pair<ComplexBox, unsigned>> isolate_roots(const UniPoly& p, long precision) {
  if (p.is_zero()) throw ValidationError("roots of the zero polynomial");
  const auto dec = squarefree_decomposition(primitive_integer(p));
  for (long P = std::max(precision, 64L); P <= kMaxIsolationPrecision; P *= 2) {
    PrecisionGuard guard(P);
    try {
      std::vector<std::pair<ComplexBox, unsigned>> out;
      std::vector<CInterval> all;
      for (const auto& [s, m] : dec)
        for (auto& b : certified_roots(to_cipoly(s), true)) {
          all.push_back(b.box());
          out.emplace_back(std::move(b), m);
        }
      if (!disjoint_all(all)) continue;
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return box_less(a.first, b.first); });
      return out;
    } catch (const PrecisionExhausted&) {
    }
  }
  throw PrecisionExhausted("root isolation exceeded the precision budget");
}

ComplexBox refine_box(const UniPoly& p, const ComplexBox& box, const BigFloat& target_width) {
  const IntPoly s = squarefree_part_int(primitive_integer(p));
  const CInterval outer = box.box();
  long need = 64;
  if (target_width.sign() > 0) need = std::max(need, 40 - target_width.exponent());
  if (box.width() <= target_width) return box;
  for (long P = std::max(need, box.precision); P <= kMaxIsolationPrecision; P *= 2) {
    PrecisionGuard guard(P);
    const CIPoly f = to_cipoly(s), df = derivative(f);
    std::vector<CFloat> a;
    for (const auto& c : f) a.push_back(mid_point(c));
    // candidate sub-boxes, breadth first; the input holds exactly one root
    std::deque<std::pair<CInterval, int>> work{{outer, 0}};
    while (!work.empty()) {
      auto [B, depth] = work.front();
      work.pop_front();
      CFloat z = mid_point(B);
      for (int it = 0; it < 200; ++it) {
        auto [v, dv] = horner2(a, z);
        if (v.re.is_zero() && v.im.is_zero()) break;
        CFloat step = v / dv;
        if (!finite(step)) break;
        z = z - step;
        if (box.real) z.im = BigFloat(0L);
        if (step.abs() < mul(target_width, BigFloat::pow2(-8), MPFR_RNDD)) break;
      }
      CInterval K;
      if (finite(z) && outer.contains(as_box(z)) && certify_near(f, df, z, box.real, K) && outer.contains(K) &&
          K.width() <= target_width)
        return {K.re(), K.im(), P, box.real};
      if (depth >= 24) continue;
      // quadrisect and keep pieces that may hold the root
      BigFloat rm = B.re().mid(), im = B.im().mid();
      Interval rs[2] = {Interval(B.re().lo(), rm), Interval(rm, B.re().hi())};
      Interval is[2] = {Interval(B.im().lo(), im), Interval(im, B.im().hi())};
      for (auto& ri : rs)
        for (auto& ii : is) {
          CInterval sub(ri, ii);
          if (horner(f, sub).contains_zero()) work.emplace_back(sub, depth + 1);
        }
    }
  }
  throw PrecisionExhausted("box refinement exceeded the precision budget");
}

}  // namespace corrh::arith

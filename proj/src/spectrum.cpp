#include "dyndeg/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "dyndeg/errors.hpp"
#include "dyndeg/factor.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

GaussianRat GaussianRat::operator/(const GaussianRat& o) const {
  Rat n = o.norm();
  if (n == 0) throw std::domain_error("GaussianRat: division by zero");
  return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

RationalRepMatrix RationalRepMatrix::identity(int n) {
  RationalRepMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalRepMatrix RationalRepMatrix::scalar(int n, const Int& v) {
  RationalRepMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = v;
  return m;
}

RationalRepMatrix RationalRepMatrix::companion_block(const IntPolynomial& f, int copies) {
  int d = f.degree();
  if (d < 1 || !f.is_monic())
    throw std::invalid_argument("companion_block: monic nonconstant polynomial required");
  if (copies < 1) throw std::invalid_argument("companion_block: copies must be positive");
  RationalRepMatrix m(d * copies);
  for (int b = 0; b < copies; ++b) {
    int off = b * d;
    for (int i = 1; i < d; ++i) m.at(off + i, off + i - 1) = 1;
    for (int i = 0; i < d; ++i) m.at(off + i, off + d - 1) = -f[i];
  }
  return m;
}

AnalyticRepMatrix AnalyticRepMatrix::scalar(int n, const GaussianRat& v) {
  AnalyticRepMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = v;
  return m;
}

RationalRepMatrix AnalyticRepMatrix::realification() const {
  RationalRepMatrix m(2 * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const GaussianRat& v = at(i, j);
      if (rat_den(v.re) != 1 || rat_den(v.im) != 1)
        throw std::invalid_argument("realification: entries must be Gaussian integers");
      Int a = rat_num(v.re), b = rat_num(v.im);
      m.at(2 * i, 2 * j) = a;
      m.at(2 * i, 2 * j + 1) = -b;
      m.at(2 * i + 1, 2 * j) = b;
      m.at(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return m;
}

Int det_exact(const RationalRepMatrix& M) {
  int n = M.dim;
  if (n == 0) return 1;
  std::vector<Int> a = M.entries;
  auto e = [&](int i, int j) -> Int& { return a[static_cast<size_t>(i) * n + j]; };
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (e(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (e(i, k) != 0) { swap_row = i; break; }
      }
      if (swap_row < 0) return 0;
      for (int j = k; j < n; ++j) std::swap(e(k, j), e(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
      }
    }
    prev = e(k, k);
  }
  Int d = e(n - 1, n - 1);
  return sign > 0 ? d : Int(-d);
}

GaussianRat det_exact(const AnalyticRepMatrix& A) {
  int n = A.dim;
  GaussianRat det(Rat(1), Rat(0));
  if (n == 0) return det;
  std::vector<GaussianRat> a = A.entries;
  auto e = [&](int i, int j) -> GaussianRat& { return a[static_cast<size_t>(i) * n + j]; };
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i) {
      if (!e(i, k).is_zero()) { pivot = i; break; }
    }
    if (pivot < 0) return GaussianRat(Rat(0), Rat(0));
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(e(k, j), e(pivot, j));
      det = GaussianRat(Rat(0), Rat(0)) - det;
    }
    det = det * e(k, k);
    for (int i = k + 1; i < n; ++i) {
      GaussianRat factor = e(i, k) / e(k, k);
      for (int j = k; j < n; ++j) e(i, j) = e(i, j) - factor * e(k, j);
    }
  }
  return det;
}

IntPolynomial char_polynomial(const RationalRepMatrix& M) {
  int n = M.dim;
  if (n <= 0 || static_cast<int>(M.entries.size()) != n * n)
    throw std::invalid_argument("char_polynomial: nonempty square matrix required");
  // traces of powers, then Newton's identities; every division is exact
  std::vector<Int> tr(static_cast<size_t>(n) + 1);
  std::vector<Int> pw = M.entries;
  auto trace_of = [&](const std::vector<Int>& a) {
    Int t = 0;
    for (int i = 0; i < n; ++i) t += a[static_cast<size_t>(i) * n + i];
    return t;
  };
  tr[1] = trace_of(pw);
  for (int k = 2; k <= n; ++k) {
    std::vector<Int> nx(static_cast<size_t>(n) * n, Int(0));
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        const Int& v = pw[static_cast<size_t>(i) * n + l];
        if (v == 0) continue;
        for (int j = 0; j < n; ++j)
          nx[static_cast<size_t>(i) * n + j] += v * M.entries[static_cast<size_t>(l) * n + j];
      }
    }
    pw = std::move(nx);
    tr[k] = trace_of(pw);
  }
  std::vector<Int> e(static_cast<size_t>(n) + 1);
  std::vector<Int> coefs(static_cast<size_t>(n) + 1);
  e[0] = 1;
  coefs[n] = 1;
  for (int m = 1; m <= n; ++m) {
    Int acc = 0;
    for (int i = 1; i <= m; ++i) {
      Int term = e[m - i] * tr[i];
      if (i % 2 == 0) acc -= term; else acc += term;
    }
    e[m] = acc / m;
    coefs[n - m] = (m % 2 == 0) ? e[m] : Int(-e[m]);
  }
  return IntPolynomial(coefs);
}

Int fix_count_rational(const RationalRepMatrix& M) {
  RationalRepMatrix d = M;
  for (int i = 0; i < d.dim; ++i) {
    for (int j = 0; j < d.dim; ++j) d.at(i, j) = (i == j ? Int(1) - M.at(i, j) : Int(-M.at(i, j)));
  }
  return det_exact(d);
}

FixConsistencyReport fix_count_consistency(const AnalyticRepMatrix& A,
                                           const RationalRepMatrix& M) {
  FixConsistencyReport rep;
  AnalyticRepMatrix da(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    for (int j = 0; j < A.dim; ++j) {
      GaussianRat v = A.at(i, j);
      da.at(i, j) = (i == j) ? GaussianRat(Rat(1) - v.re, -v.im) : GaussianRat(-v.re, -v.im);
    }
  }
  rep.analytic_det = det_exact(da);
  rep.analytic_norm = rep.analytic_det.norm();
  rep.rational_det = fix_count_rational(M);
  rep.ok = (rep.analytic_norm == Rat(rep.rational_det));
  std::ostringstream os;
  os << "|det(I-A)|^2 = " << rep.analytic_norm << ", det(I-M) = " << rep.rational_det
     << (rep.ok ? " (equal)" : " (MISMATCH)");
  rep.detail = os.str();
  return rep;
}

static Int eval_int(const IntPolynomial& f, const Int& n) {
  Int acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * n + f[i];
  return acc;
}

ShiftedFixReport shifted_fix_identity(const IntPolynomial& F, int g, const Int& n) {
  int d = F.degree();
  if (d < 1 || !F.is_monic())
    throw std::invalid_argument("shifted_fix_identity: monic nonconstant polynomial required");
  if (g < 1 || (2 * g) % d != 0)
    throw EligibilityError("shifted_fix_identity: degree of F must divide 2g");
  int m = 2 * g / d;
  RationalRepMatrix M = RationalRepMatrix::companion_block(F, m);
  RationalRepMatrix shifted(M.dim);
  for (int i = 0; i < M.dim; ++i) {
    for (int j = 0; j < M.dim; ++j)
      shifted.at(i, j) = (i == j ? n - M.at(i, j) : Int(-M.at(i, j)));
  }
  ShiftedFixReport rep;
  rep.det_value = det_exact(shifted);
  rep.poly_value = int_pow(eval_int(F, n), static_cast<uint64_t>(m));
  rep.ok = (rep.det_value == rep.poly_value);
  std::ostringstream os;
  os << "det(nI-M) = " << rep.det_value << ", F(n)^" << m << " = " << rep.poly_value
     << (rep.ok ? " (equal)" : " (MISMATCH)");
  rep.detail = os.str();
  return rep;
}

// -- spectra ---------------------------------------------------------------

namespace {

struct Layer {
  RootLayout layout;
  int mult;
};

// squared modulus of one conjugate-pair representative, with the number of
// spectrum slots it fills
struct SlotGroup {
  RatInterval iv;
  bool exact;
  int count;
};

int sqrt_bits_for(const Rat& width_target) {
  Rat inv = 1 / width_target;
  Int num = rat_num(inv) / rat_den(inv);
  int bits = 1;
  while ((Int(1) << bits) < num && bits < 1 << 20) ++bits;
  return std::max(128, bits + 32);
}

std::vector<SlotGroup> collect_slots(const std::vector<Layer>& layers, int sqrt_bits) {
  std::vector<SlotGroup> slots;
  for (const Layer& ly : layers) {
    int m = ly.mult;
    const RootLayout& lay = ly.layout;
    if (lay.zero_root) {
      if (m % 2 != 0)
        throw EligibilityError(
            "spectrum: eigenvalue 0 occurs with odd multiplicity, conjugate pairing impossible");
      slots.push_back({RatInterval::exact(Rat(0)), true, m / 2});
    }
    for (const RealRootLoc& r : lay.reals) {
      if (m % 2 != 0) {
        std::ostringstream os;
        os << "spectrum: real eigenvalue near " << r.iv.mid().convert_to<double>()
           << " occurs with odd multiplicity " << m << ", conjugate pairing impossible";
        throw EligibilityError(os.str());
      }
      RatInterval sq = real_root_modulus_sq(r);
      if (sq.lo < 0) sq.lo = 0;
      slots.push_back({sq, r.exact.has_value(), m / 2});
    }
    for (size_t i = 0; i < lay.unit.w_ivs.size(); ++i)
      slots.push_back({RatInterval::exact(Rat(1)), true, m});
    for (const ComplexDisk& d : lay.upper) {
      RatInterval sq = disk_modulus_sq(d, sqrt_bits);
      if (sq.lo < 0) sq.lo = 0;
      slots.push_back({sq, false, m});
    }
  }
  return slots;
}

DynamicalSpectrum build_spectrum(std::vector<Layer> layers, int g, const Rat& tol,
                                 int prec_cap_bits, std::string source, const Rat& const_norm,
                                 int multiplicity) {
  Rat target = refine_target(tol);
  int digits = enclosure_digits(tol);
  Rat entry_w = target;
  for (int attempt = 0; attempt < 24; ++attempt) {
    for (Layer& ly : layers) refine_layout(ly.layout, entry_w, prec_cap_bits);
    std::vector<SlotGroup> groups = collect_slots(layers, sqrt_bits_for(entry_w));
    std::vector<Rat> los, his;
    std::vector<char> exact_flags;
    for (const SlotGroup& sg : groups) {
      for (int c = 0; c < sg.count; ++c) {
        los.push_back(sg.iv.lo);
        his.push_back(sg.iv.hi);
        exact_flags.push_back(sg.exact ? 1 : 0);
      }
    }
    if (static_cast<int>(los.size()) != g)
      throw std::logic_error("spectrum: slot count does not match the dimension");
    // lambda_k sits between the product of the k largest lower bounds and
    // the product of the k largest upper bounds (all entries nonnegative)
    std::sort(los.begin(), los.end(), std::greater<Rat>());
    std::sort(his.begin(), his.end(), std::greater<Rat>());
    std::vector<RatInterval> lambda(static_cast<size_t>(g) + 1);
    lambda[0] = RatInterval::exact(Rat(1));
    Rat lo = 1, hi = 1;
    bool narrow = true;
    for (int k = 1; k <= g; ++k) {
      lo *= los[k - 1];
      hi *= his[k - 1];
      lambda[k] = RatInterval(lo, hi);
      if (k < g && hi - lo > target) narrow = false;
    }
    if (!(lambda[g].lo <= const_norm && const_norm <= lambda[g].hi))
      throw std::logic_error("spectrum: certified product does not bracket the constant term");
    lambda[g] = RatInterval::exact(const_norm);
    if (narrow) {
      DynamicalSpectrum spec;
      spec.g = g;
      spec.multiplicity = multiplicity;
      spec.source = std::move(source);
      spec.lambdas.reserve(static_cast<size_t>(g) + 1);
      for (int k = 0; k <= g; ++k) {
        if (lambda[k].lo == lambda[k].hi)
          spec.lambdas.push_back(Enclosure::exact_point(lambda[k].lo, digits));
        else
          spec.lambdas.push_back(Enclosure::from_interval(lambda[k], digits));
      }
      return spec;
    }
    entry_w /= 16;
  }
  throw PrecisionExhausted("spectrum: could not narrow the dynamical degrees to tolerance");
}

} // namespace

DynamicalSpectrum spectrum_from_min_poly(const IntPolynomial& F, int g, const Rat& tol,
                                         int prec_cap_bits) {
  int d = F.degree();
  if (d < 1 || !F.is_monic())
    throw std::invalid_argument("spectrum_from_min_poly: monic nonconstant polynomial required");
  if (g < 1 || (2 * g) % d != 0)
    throw EligibilityError(
        "spectrum_from_min_poly: degree of F must divide 2g (inconsistent multiplicity)");
  if (squarefree_part(F) != F)
    throw EligibilityError("spectrum_from_min_poly: minimal polynomial must be squarefree");
  int m = 2 * g / d;
  std::vector<Layer> layers;
  layers.push_back({analyze_squarefree(F, tol, prec_cap_bits), m});
  Rat const_norm = rat_pow(Rat(int_abs(F[0])), m);
  std::ostringstream src;
  src << "min-poly " << F.to_string() << ", g = " << g;
  return build_spectrum(std::move(layers), g, tol, prec_cap_bits, src.str(), const_norm, m);
}

DynamicalSpectrum spectrum_from_matrix(const RationalRepMatrix& M, const Rat& tol,
                                       int prec_cap_bits) {
  if (M.dim < 2 || M.dim % 2 != 0)
    throw std::invalid_argument("spectrum_from_matrix: even dimension >= 2 required");
  IntPolynomial chi = char_polynomial(M);
  if (chi[0] == 0)
    throw EligibilityError("spectrum_from_matrix: singular matrix (eigenvalue 0), not surjective");
  int g = M.dim / 2;
  RationalFactorization fac = factor_over_rationals(chi);
  std::vector<Layer> layers;
  int multiplicity = 0;
  for (const auto& [f, mult] : fac.factors) {
    layers.push_back({analyze_squarefree(f, tol, prec_cap_bits), static_cast<int>(mult)});
    multiplicity = std::gcd(multiplicity, static_cast<int>(mult));
  }
  Rat const_norm(int_abs(chi[0]));
  std::ostringstream src;
  src << "matrix of dimension " << M.dim;
  return build_spectrum(std::move(layers), g, tol, prec_cap_bits, src.str(), const_norm,
                        std::max(multiplicity, 1));
}

} // namespace dyndeg

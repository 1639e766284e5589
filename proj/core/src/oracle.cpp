#include "qvs/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qvs/unifactor.hpp"
#include "qvs/uniroots.hpp"

namespace qvs {
namespace {

const long kPairGuard = 100000000L;

Rat rat_abs(const Rat& q) { return sign(q) < 0 ? Rat(-q) : q; }

}  // namespace

bool ValueTable::contains(const Int& v) const {
  return std::binary_search(values.begin(), values.end(), v);
}

Int ValueTable::count_in(const Int& lo, const Int& hi) const {
  if (hi < lo) return 0;
  auto a = std::lower_bound(values.begin(), values.end(), lo);
  auto b = std::upper_bound(values.begin(), values.end(), hi);
  return Int(static_cast<long>(b - a));
}

std::optional<Int> certified_box(const BiPoly& F, const Int& N) {
  int d = F.degree();
  if (d < 2 || d % 2 != 0) return std::nullopt;
  BinaryForm Fd = BinaryForm::from_bipoly(F, d);
  if (definiteness(Fd).kind != Definiteness::PositiveDefinite) return std::nullopt;
  auto c1 = certified_lower_bound(Fd.dehom_x(), Rat(-1), Rat(1));
  auto c2 = certified_lower_bound(Fd.dehom_y(), Rat(-1), Rat(1));
  if (!c1 || !c2) return std::nullopt;
  Rat cd = (*c1 < *c2) ? *c1 : *c2;
  if (sign(cd) <= 0) return std::nullopt;
  Rat cr(0);
  for (const auto& [ij, cf] : F.terms())
    if (ij.first + ij.second < d) cr += rat_abs(cf);
  // With m = max(|x|,|y|) >= 1 the chart minima give F >= cd m^d - cr m^(d-1).
  // That bound is increasing in m once cd m > cr, so certifying it at the
  // first admissible m certifies every larger box shell.
  auto clears = [&](const Int& m) {
    return Rat(pow_int(m, static_cast<unsigned>(d - 1))) * (cd * Rat(m) - cr) > Rat(N);
  };
  Int lo = floor_rat(cr / cd) + 1;
  if (lo < 1) lo = 1;
  Int hi = lo;
  while (!clears(hi)) hi *= 2;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (clears(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return Int(lo - 1);
}

ValueTable enumerate_values(const BiPoly& F, const Int& box, const Int& range,
                            bool keep_witnesses, int band_rows) {
  if (box < 1 || range < 1)
    throw std::invalid_argument("enumerate_values: box and range must be positive");
  if (!F.is_integral())
    throw std::invalid_argument("enumerate_values: integer coefficients required");
  if ((2 * box + 1) * (2 * box + 1) > kPairGuard)
    throw std::runtime_error("enumerate_values: box exceeds the 1e8-point guard");
  if (band_rows < 1) band_rows = 1;

  ValueTable table;
  table.box = box;
  table.range = range;
  auto cb = certified_box(F, range);
  table.exhaustive = cb.has_value() && *cb <= box;

  if (F.is_zero()) {
    table.values.push_back(Int(0));
    if (keep_witnesses) table.witnesses.emplace_back(Int(-box), Int(-box));
    return table;
  }

  const long B = to_long(box).value();
  const auto cols = F.by_powers_of_y();
  const int dy = static_cast<int>(cols.size()) - 1;

  // Fast path: column-wise Horner in 128-bit. Safe when every intermediate is
  // bounded by the coefficient mass at the box corner.
  bool fast = range < (Int(1) << 62);
  Int mass(0);
  for (const auto& [ij, cf] : F.terms()) {
    Int a = abs(num(cf));
    mass += a * pow_int(box, static_cast<unsigned>(ij.first + ij.second));
  }
  if (mass >= (Int(1) << 125)) fast = false;
  std::vector<std::vector<long long>> cl(dy + 1);
  if (fast) {
    for (int j = 0; j <= dy && fast; ++j) {
      for (int i = 0; i <= cols[j].degree(); ++i) {
        auto v = to_long(num(cols[j].coeff(i)));
        if (!v) {
          fast = false;
          break;
        }
        cl[j].push_back(*v);
      }
    }
  }

  if (fast) {
    const long long NN = to_long(range).value();
    std::vector<long long> acc;
    std::unordered_map<long long, std::pair<long, long>> wit;
    for (long x0 = -B; x0 <= B; x0 += band_rows) {
      const long x1 = std::min(B, x0 + band_rows - 1);
      std::vector<long long> band;
      for (long x = x0; x <= x1; ++x) {
        std::array<__int128, 8> g{};
        for (int j = 0; j <= dy; ++j) {
          __int128 s = 0;
          for (int i = static_cast<int>(cl[j].size()) - 1; i >= 0; --i)
            s = s * x + cl[j][i];
          g[j] = s;
        }
        for (long y = -B; y <= B; ++y) {
          __int128 v = g[dy];
          for (int j = dy - 1; j >= 0; --j) v = v * y + g[j];
          if (v >= -static_cast<__int128>(NN) && v <= static_cast<__int128>(NN)) {
            band.push_back(static_cast<long long>(v));
            if (keep_witnesses) wit.emplace(static_cast<long long>(v), std::make_pair(x, y));
          }
        }
      }
      std::sort(band.begin(), band.end());
      band.erase(std::unique(band.begin(), band.end()), band.end());
      std::vector<long long> merged;
      merged.reserve(acc.size() + band.size());
      std::set_union(acc.begin(), acc.end(), band.begin(), band.end(),
                     std::back_inserter(merged));
      acc = std::move(merged);
    }
    table.values.reserve(acc.size());
    for (long long v : acc) table.values.emplace_back(static_cast<long>(v));
    if (keep_witnesses) {
      table.witnesses.reserve(acc.size());
      for (long long v : acc) {
        auto& w = wit.at(v);
        table.witnesses.emplace_back(Int(w.first), Int(w.second));
      }
    }
    return table;
  }

  std::vector<Int> acc;
  std::map<Int, std::pair<Int, Int>> wit;
  for (long x0 = -B; x0 <= B; x0 += band_rows) {
    const long x1 = std::min(B, x0 + band_rows - 1);
    std::vector<Int> band;
    for (long x = x0; x <= x1; ++x) {
      std::vector<Int> g(dy + 1);
      for (int j = 0; j <= dy; ++j) g[j] = num(cols[j].eval(Rat(x)));
      for (long y = -B; y <= B; ++y) {
        Int v = g[dy];
        for (int j = dy - 1; j >= 0; --j) v = v * y + g[j];
        if (abs(v) <= range) {
          band.push_back(v);
          if (keep_witnesses) wit.emplace(v, std::make_pair(Int(x), Int(y)));
        }
      }
    }
    std::sort(band.begin(), band.end());
    band.erase(std::unique(band.begin(), band.end()), band.end());
    std::vector<Int> merged;
    merged.reserve(acc.size() + band.size());
    std::set_union(acc.begin(), acc.end(), band.begin(), band.end(),
                   std::back_inserter(merged));
    acc = std::move(merged);
  }
  table.values = std::move(acc);
  if (keep_witnesses) {
    table.witnesses.reserve(table.values.size());
    for (const Int& v : table.values) table.witnesses.push_back(wit.at(v));
  }
  return table;
}

const char* density_class_name(DensityClass cls) {
  switch (cls) {
    case DensityClass::Sqrt:
      return "Sqrt";
    case DensityClass::RootD:
      return "RootD";
    case DensityClass::LandauLogHalf:
      return "LandauLogHalf";
    case DensityClass::PowerOneMinusLambda:
      return "PowerOneMinusLambda";
    case DensityClass::Linear:
      return "Linear";
  }
  return "?";
}

DensityFit density_table(const BiPoly& F, const std::vector<Int>& Ns, int d,
                         const Rat& lambda, std::optional<DensityClass> preferred) {
  if (Ns.empty()) throw std::invalid_argument("density_table: need at least one N");
  for (size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 1) throw std::invalid_argument("density_table: N must be positive");
    if (i > 0 && !(Ns[i - 1] < Ns[i]))
      throw std::invalid_argument("density_table: Ns must be strictly increasing");
  }
  if (d < 1) d = std::max(1, F.degree());

  DensityFit fit;
  for (const Int& N : Ns) {
    auto cb = certified_box(F, N);
    Int B;
    if (cb && *cb <= 4999) {
      B = (*cb < 1) ? Int(1) : *cb;
    } else {
      B = 8 * (iroot_floor(N, 4) + 1);
      if (B < 64) B = 64;
      if (B > 4999) B = 4999;
    }
    ValueTable t = enumerate_values(F, B, N);
    fit.counts.emplace_back(N, t.count_in(Int(1), N));
    fit.boxes.push_back(B);
    fit.exhaustive.push_back(t.exhaustive);
  }

  // Diagnostic log-log fit; counts above stay exact.
  std::vector<double> lx, lc;
  for (const auto& [N, cnt] : fit.counts) {
    if (cnt > 0) {
      lx.push_back(std::log(N.get_d()));
      lc.push_back(std::log(cnt.get_d()));
    }
  }
  auto residual = [&](auto&& shape) {
    if (lx.empty()) return 0.0;
    double m = 0;
    std::vector<double> r(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) {
      r[i] = lc[i] - shape(lx[i]);
      m += r[i];
    }
    m /= static_cast<double>(r.size());
    double s = 0;
    for (double v : r) s += (v - m) * (v - m);
    return s / static_cast<double>(r.size());
  };
  const double lam = mpq_class(lambda).get_d();
  const std::array<double, 5> res = {
      residual([](double l) { return 0.5 * l; }),
      residual([&](double l) { return l / d; }),
      residual([](double l) { return l - 0.5 * std::log(std::max(l, 1e-9)); }),
      residual([&](double l) { return (1.0 - lam) * l; }),
      residual([](double l) { return l; }),
  };
  int best = 0;
  for (int k = 1; k < 5; ++k)
    if (res[k] < res[best]) best = k;
  fit.fitted = static_cast<DensityClass>(best);
  fit.residuals.assign(res.begin(), res.end());
  if (preferred) {
    int p = static_cast<int>(*preferred);
    if (res[p] <= std::max(2 * res[best], res[best] + 0.002)) {
      fit.tie = (p != best);
      fit.fitted = *preferred;
    }
  }
  return fit;
}

std::string density_csv(const DensityFit& fit) {
  std::ostringstream os;
  os << "N,count,exhaustive\n";
  for (size_t i = 0; i < fit.counts.size(); ++i) {
    os << fit.counts[i].first << "," << fit.counts[i].second << ","
       << (fit.exhaustive[i] ? 1 : 0) << "\n";
  }
  return os.str();
}

std::optional<MissingValue> missing_value_search(const BiPoly& F, const Int& C,
                                                 const Int& D, const Int& budget) {
  if (C < 1) throw std::invalid_argument("missing_value_search: C must be >= 1");
  const int kCandidates = 256;
  const Int n0 = ceil_div(D, C);
  const Int a0 = abs(n0);
  const Int aD = abs(D);
  const Int N = C * (a0 + kCandidates) + aD + 1;

  Int cap = (budget < kPairGuard) ? budget : Int(kPairGuard);
  if (cap < 9) cap = 9;
  Int bb = (isqrt_floor(cap) - 1) / 2;
  if (bb < 1) bb = 1;

  auto cb = certified_box(F, N);
  Int B;
  bool rigorous;
  if (cb && *cb <= bb) {
    B = (*cb < 1) ? Int(1) : *cb;
    rigorous = true;
  } else {
    B = bb;
    rigorous = false;
  }
  ValueTable t = enumerate_values(F, B, N);
  rigorous = rigorous && t.exhaustive;
  for (int k = 0; k <= kCandidates; ++k) {
    Int v = C * (n0 + k);
    if (!t.contains(v)) return MissingValue{v, rigorous};
  }
  return std::nullopt;
}

Int sector_count(const Direction& xi, const Int& T, int R, const Rat& c) {
  if (T < 2) throw std::invalid_argument("sector_count: T must be >= 2");
  if (R < 1) throw std::invalid_argument("sector_count: R must be >= 1");
  if (sign(c) < 0) throw std::invalid_argument("sector_count: c must be >= 0");
  const Rat t = c / Rat(iroot_floor(T, 2 * static_cast<unsigned>(R)));
  if (t > 1)
    throw std::invalid_argument("sector_count: window wider than 45 degrees unsupported");

  // Normalize to a slope with |eta| <= 1, swapping the axes when the
  // direction is steep; the count is invariant under the swap.
  Int D(2);
  Rat ea(0), eb(0);
  if (xi.vertical) {
    // becomes the horizontal axis after the swap
  } else if (xi.rational) {
    Rat s = xi.slope;
    if (rat_abs(s) <= 1)
      ea = s;
    else
      ea = Rat(1) / s;
  } else {
    const QuadIrr& q = *xi.qslope;
    D = q.D;
    QuadExt v = q.value();
    if (v.cmp(Rat(1)) <= 0 && v.cmp(Rat(-1)) >= 0) {
      ea = v.a();
      eb = v.b();
    } else {
      QuadExt w = v.inverse();
      ea = w.a();
      eb = w.b();
    }
  }
  const QuadExt eta(ea, eb, D);
  const QuadExt qt(t, Rat(0), D);
  const QuadExt one(Rat(1), Rat(0), D);

  auto qfloor = [](const QuadExt& z) { return z.floor(); };
  auto qceil = [](const QuadExt& z) { return Int(-(-z).floor()); };

  Int count(0);

  // The x = 0 column carries points only when the window reaches +-90 degrees
  // (|eta| = 1 with t = 1); those ys lie on the sign(eta) side.
  {
    QuadExt s = eta * qt;
    if (!s.is_zero() && (s * s).cmp(Rat(1)) >= 0) count += T + 1;
  }

  // Columns x >= 1: the window in y is x * [tan(theta-phi), tan(theta+phi)],
  // intersected with the annulus T <= sqrt(x^2+y^2) <= 2T.
  const QuadExt dlo = one + eta * qt;
  const QuadExt dhi = one - eta * qt;
  const bool lo_open = dlo.sgn() <= 0;  // window reaches -90 degrees
  const bool hi_open = dhi.sgn() <= 0;  // window reaches +90 degrees
  const QuadExt tan_lo = lo_open ? one : (eta - qt) * dlo.inverse();
  const QuadExt tan_hi = hi_open ? one : (eta + qt) * dhi.inverse();

  const Int T2 = T * T;
  const Int outer = 4 * T2;
  for (Int x(1); x <= 2 * T; ++x) {
    const Int x2 = x * x;
    const Int yo = isqrt_floor(outer - x2);
    Int L = lo_open ? Int(-yo) : qceil(tan_lo * Rat(x));
    Int H = hi_open ? yo : qfloor(tan_hi * Rat(x));
    if (L < -yo) L = -yo;
    if (H > yo) H = yo;
    if (H < L) continue;
    Int base = H - L + 1;
    if (x2 < T2) {
      const Int yi = isqrt_floor(T2 - 1 - x2);
      Int Li = (L > -yi) ? L : Int(-yi);
      Int Hi = (H < yi) ? H : yi;
      if (Hi >= Li) base -= Hi - Li + 1;
    }
    count += base;
  }
  return count;
}

Int reducible_specialization_count(const BiPoly& Y, const Int& B) {
  if (B < 0) throw std::invalid_argument("reducible_specialization_count: B must be >= 0");
  const int dx = Y.degree_x();
  if (dx < 1)
    throw std::invalid_argument("reducible_specialization_count: Y must involve x");
  if (dx == 1) {
    // Y = Q(t) x - R(t): a common factor of Q and R makes every fiber split.
    auto cs = Y.by_powers_of_x();
    if (UniPoly::gcd(cs[1], cs[0]).degree() > 0)
      throw std::invalid_argument(
          "reducible_specialization_count: x-linear input with a common factor");
  }
  Int count(0);
  for (Int t0 = -B; t0 <= B; ++t0) {
    UniPoly f = Y.restrict_line(Rat(0), Rat(t0), Int(1), Int(0));
    if (f.degree() <= 0) {
      ++count;  // degenerate fiber
      continue;
    }
    if (f.degree() == 1) continue;
    if (!is_irreducible(f)) ++count;
  }
  return count;
}

}  // namespace qvs

#include "hespeed/theorems.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace hespeed {

using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int half_ceiling(int n) { return (n + 2) / 2; }

int terminal_window_start(int lo, int hi) {
  const int len = hi - lo + 1;
  const int width = std::max(3, (len + 1) / 2);
  return std::max(lo, hi - width + 1);
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Empty: return "Empty";
    case RegimeTag::EventuallyOne: return "EventuallyOne";
    case RegimeTag::Polynomial: return "Polynomial";
    case RegimeTag::ExponentialFloor: return "ExponentialFloor";
    case RegimeTag::Violation: return "Violation";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Binomial-basis fitting

namespace {

// Solves sum_i a_i C(n_j, i) = v_j for j = 0..K by exact elimination.
std::optional<std::vector<Rational>> solve(std::span<const ValuePoint> pts, int k) {
  const int m = k + 1;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) a[r][c] = Rational(binomial(pts[r].n, c));
    a[r][m] = Rational(pts[r].value);
  }
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) return std::nullopt;
    std::swap(a[pivot], a[col]);
    for (int r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> x(m);
  for (int r = 0; r < m; ++r) x[r] = a[r][m] / a[r][r];
  return x;
}

BigInt evaluate(std::span<const BigInt> coeffs, int n) {
  BigInt v = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * binomial(n, static_cast<int>(i));
  return v;
}

}  // namespace

std::optional<std::vector<BigInt>> fit_binomial(std::span<const ValuePoint> values, int max_degree) {
  if (values.size() < 2) {
    throw Error(Errc::InsufficientPoints, "fitting needs at least 2 points, got " +
                                              std::to_string(values.size()));
  }
  const int cap = std::min<int>(max_degree, static_cast<int>(values.size()) - 2);
  for (int k = 0; k <= cap; ++k) {
    auto x = solve(values, k);
    if (!x) continue;
    std::vector<BigInt> coeffs;
    bool integral = true;
    for (const auto& q : *x) {
      if (denominator(q) != 1) {
        integral = false;
        break;
      }
      coeffs.push_back(numerator(q));
    }
    if (!integral) continue;
    bool fits = true;
    for (const auto& p : values) {
      if (evaluate(coeffs, p.n) != p.value) {
        fits = false;
        break;
      }
    }
    if (fits) return coeffs;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Labelled regimes

Regime classify_labelled(const PropertySpec& property, int lo, int hi,
                         const EnumOptions& options) {
  Enumerator e(property, options);
  return classify_labelled(e, lo, hi);
}

Regime classify_labelled(Enumerator& enumerator, int lo, int hi) {
  if (lo < 1 || hi < lo) throw Error(Errc::IndexOutOfRange, "bad examined range");
  if (hi < 6) throw Error(Errc::IndexOutOfRange, "regime classification needs hi >= 6");
  Regime r;
  r.lo = lo;
  r.hi = hi;
  for (const auto& p : speed_sequence(enumerator, lo, hi)) r.labelled.push_back({p.n, p.labelled});
  const int ws = terminal_window_start(lo, hi);
  auto value = [&](int n) -> const BigInt& { return r.labelled[n - lo].value; };

  if (value(hi) == 0) {
    r.tag = RegimeTag::Empty;
    r.note = "no members of order " + std::to_string(hi);
    return r;
  }
  bool ones = true;
  for (int n = ws; n <= hi; ++n) ones = ones && value(n) == 1;
  if (ones) {
    r.tag = RegimeTag::EventuallyOne;
    return r;
  }
  for (int start = lo; start <= ws; ++start) {
    std::span<const ValuePoint> seg(r.labelled.begin() + (start - lo), r.labelled.end());
    auto fit = fit_binomial(seg);
    if (!fit) continue;
    r.tag = RegimeTag::Polynomial;
    r.coefficients = *fit;
    r.fit_from = start;
    const int k = static_cast<int>(fit->size()) - 1;
    for (int n = lo; n <= hi && r.bounds_hold; ++n) {
      if (n >= 3 && value(n) < n + 1) {
        r.bounds_hold = false;
        r.note = "labelled(" + std::to_string(n) + ") < n+1";
      }
      BigInt floor = 0;
      for (int i = 0; i <= k; ++i) floor += binomial(n, i);
      if (n >= 2 * k + 1 && value(n) < floor) {
        r.bounds_hold = false;
        r.note = "labelled(" + std::to_string(n) + ") below sum of C(n,i), i<=K";
      }
    }
    return r;
  }
  bool floor = true;
  for (int n = std::max(lo, 6); n <= hi && floor; ++n) {
    if (value(n) < (BigInt(1) << n) - 1) {
      floor = false;
      r.note = "labelled(" + std::to_string(n) + ") < 2^n-1 without a binomial fit";
    }
  }
  r.tag = floor ? RegimeTag::ExponentialFloor : RegimeTag::Violation;
  if (!floor) r.bounds_hold = false;
  return r;
}

// ---------------------------------------------------------------------------
// Jump checks

bool JumpReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

constexpr std::string_view kSurrogate =
    "unbounded is tested as non-constant on the terminal window of the examined range";

std::vector<std::uint64_t> speeds(Enumerator& e, int lo, int hi) {
  if (hi > e.order_limit()) e.level(hi);  // throws OrderTooLarge before any work
  std::vector<std::uint64_t> s;
  for (int n = lo; n <= hi; ++n) s.push_back(e.level(n).size());
  return s;
}

template <class F>
bool constant_on(int from, int to, F&& f) {
  for (int n = from + 1; n <= to; ++n)
    if (f(n) != f(from)) return false;
  return true;
}

// Pointwise floor on the whole range; records the first violation.
template <class F>
Verdict floor_verdict(std::string name, int lo, int hi, const std::vector<std::uint64_t>& s,
                      F&& required) {
  Verdict v;
  v.name = std::move(name);
  for (int n = lo; n <= hi; ++n) {
    const long long need = required(n);
    if (static_cast<long long>(s[n - lo]) < need) {
      v.pass = false;
      v.witness = Witness{n, BigInt(s[n - lo]), BigInt(need)};
      return v;
    }
  }
  return v;
}

// A hereditary property that is empty at some order is empty from then on:
// it is finite, so no speed hypothesis about unbounded growth can hold.
std::optional<int> empty_from(const std::vector<std::uint64_t>& s, int lo) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == 0) return lo + static_cast<int>(i);
  return std::nullopt;
}

std::string not_met(const std::vector<std::uint64_t>& s, int lo, const std::string& otherwise) {
  if (auto n = empty_from(s, lo)) {
    return "hypothesis not met: finite property, empty from n=" + std::to_string(*n);
  }
  return "hypothesis not met: " + otherwise;
}

JumpReport start_report(std::string theorem, const PropertySpec& p, int lo, int hi) {
  if (lo < 1 || hi < lo) throw Error(Errc::IndexOutOfRange, "bad examined range");
  JumpReport r;
  r.theorem = std::move(theorem);
  r.property = p.describe();
  r.lo = lo;
  r.hi = hi;
  r.surrogate = kSurrogate;
  return r;
}

void require_tag(const PropertySpec& p, ClassTag tag) {
  if (p.tag != tag) {
    throw Error(Errc::InvalidProperty, "expected a " + std::string(to_string(tag)) +
                                           " property, got " + std::string(to_string(p.tag)));
  }
}

}  // namespace

JumpReport check_poset_jump(const PropertySpec& property, int lo, int hi,
                            const EnumOptions& options) {
  require_tag(property, ClassTag::Poset);
  JumpReport r = start_report("thm1", property, lo, hi);
  Enumerator e(property, options);
  r.speeds = speeds(e, lo, hi);
  const int ws = terminal_window_start(lo, hi);
  auto u = [&](int n) { return static_cast<long long>(r.speeds[n - lo]); };
  const bool growing = !empty_from(r.speeds, lo) && !constant_on(ws, hi, u);
  const bool excess_growing = growing && !constant_on(ws, hi, [&](int n) {
    return u(n) - half_ceiling(n);
  });

  if (growing) {
    r.verdicts.push_back(floor_verdict("thm1a", lo, hi, r.speeds, half_ceiling));
  } else {
    r.verdicts.push_back(
        {"thm1a", true, std::nullopt, not_met(r.speeds, lo, "constant on window")});
  }
  if (excess_growing) {
    auto v = floor_verdict("thm1b", lo, hi, r.speeds, [](int n) { return n; });
    v.note = "hypothesis read as printed (excess over ceil((n+1)/2) unbounded), not as "
             "positive and unbounded";
    r.verdicts.push_back(std::move(v));
  } else {
    r.verdicts.push_back({"thm1b", true, std::nullopt,
                          not_met(r.speeds, lo, "excess over ceil((n+1)/2) constant on window")});
  }
  return r;
}

JumpReport check_tournament_jump(const PropertySpec& property, int lo, int hi,
                                 const EnumOptions& options) {
  require_tag(property, ClassTag::Tournament);
  JumpReport r = start_report("thm3", property, lo, hi);
  Enumerator e(property, options);
  r.speeds = speeds(e, lo, hi);
  const int ws = terminal_window_start(lo, hi);
  auto u = [&](int n) { return r.speeds[n - lo]; };
  if (!empty_from(r.speeds, lo) && !constant_on(ws, hi, u)) {
    r.verdicts.push_back(
        floor_verdict("thm3b", lo, hi, r.speeds, [](int n) { return n - 2; }));
    r.verdicts.push_back({"thm3a", true, std::nullopt, "not bounded within window"});
  } else {
    r.verdicts.push_back(
        {"thm3b", true, std::nullopt, not_met(r.speeds, lo, "constant on window")});
    int from = hi;
    while (from > lo && u(from - 1) == u(hi)) --from;
    r.verdicts.push_back({"thm3a", true, std::nullopt,
                          "constant M=" + std::to_string(u(hi)) + " from N=" + std::to_string(from)});
  }
  return r;
}

JumpReport check_directed_jump(const PropertySpec& property, int lo, int hi,
                               const EnumOptions& options) {
  JumpReport r = start_report("direct", property, lo, hi);
  Enumerator e(property, options);
  r.speeds = speeds(e, lo, hi);
  const int ws = terminal_window_start(lo, hi);
  auto u = [&](int n) { return r.speeds[n - lo]; };
  if (!empty_from(r.speeds, lo) && !constant_on(ws, hi, u)) {
    r.verdicts.push_back(floor_verdict("direct", lo, hi, r.speeds, half_ceiling));
  } else {
    r.verdicts.push_back(
        {"direct", true, std::nullopt, not_met(r.speeds, lo, "constant on window")});
  }
  for (FamilyId id : {FamilyId::TwoCliques, FamilyId::TwoTransitive}) {
    const Family f{id, 0};
    Enumerator ex(PropertySpec::named(f, ClassTag::Digraph), options);
    Verdict v;
    v.name = "extremal " + f.name();
    for (int n = lo; n <= hi && v.pass; ++n) {
      const auto got = ex.level(n).size();
      if (got != static_cast<std::size_t>(half_ceiling(n))) {
        v.pass = false;
        v.witness = Witness{n, BigInt(got), BigInt(half_ceiling(n))};
      }
    }
    v.note = "speed equals ceil((n+1)/2)";
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

int ramsey_transitive(int n, const EnumOptions& options) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "n must be >= 1");
  if (n > 4) throw Error(Errc::OrderTooLarge, "exhaustive search only for n <= 4");
  EnumOptions opts = options;
  opts.limit_order = std::max(opts.limit_order, 1 << n);
  Enumerator e(PropertySpec::forbidden(ClassTag::Tournament, {transitive_tournament(n)}), opts);
  for (int order = 1; order <= (1 << n); ++order)
    if (e.level(order).empty()) return order;
  throw std::logic_error("a T_n-free tournament of order 2^n exists");
}

JumpReport uniqueness_minimal_tournament(int lo, int hi, const EnumOptions& options) {
  if (hi > 8) throw Error(Errc::OrderTooLarge, "uniqueness check needs hi <= 8");
  const auto p1 = PropertySpec::named(Family{FamilyId::P1, 0});
  JumpReport r = start_report("thm3-unique", p1, lo, hi);
  r.surrogate = "minimality: every order-n member is needed for hereditariness or for the n-2 "
                "floor within the examined window";
  Enumerator e(p1, options);
  r.speeds = speeds(e, lo, hi);
  const int from = std::max(lo, 4);

  Verdict exact{"speed n-2", true, std::nullopt, "for n >= 4"};
  for (int n = from; n <= hi && exact.pass; ++n) {
    if (r.speeds[n - lo] != static_cast<std::uint64_t>(n - 2)) {
      exact.pass = false;
      exact.witness = Witness{n, BigInt(r.speeds[n - lo]), BigInt(n - 2)};
    }
  }
  r.verdicts.push_back(std::move(exact));

  Verdict minimal{"minimality", true, std::nullopt, ""};
  for (int n = from; n <= hi && minimal.pass; ++n) {
    const auto& members = e.level(n);
    for (const auto& m : members) {
      const bool floor_breaks = static_cast<long long>(members.size()) - 1 < n - 2;
      bool extended = false;
      if (n < hi) {
        const Structure s = m.code.structure();
        for (const auto& up : e.level(n + 1)) {
          if (contains_induced(up.code.structure(), s)) {
            extended = true;
            break;
          }
        }
      }
      if (!floor_breaks && !extended) {
        minimal.pass = false;
        minimal.witness = Witness{n, BigInt(members.size() - 1), BigInt(n - 2)};
        minimal.note = "removable member " + m.code.text();
        break;
      }
    }
  }
  r.verdicts.push_back(std::move(minimal));

  for (int i = 2; i <= 4; ++i) {
    const Family f{static_cast<FamilyId>(static_cast<int>(FamilyId::P1) + i - 1), 0};
    Enumerator other(PropertySpec::named(f), options);
    Verdict v{f.name() + " speed n-1", true, std::nullopt, "checked at n >= 5"};
    for (int n = std::max(lo, 5); n <= hi && v.pass; ++n) {
      const auto got = other.level(n).size();
      if (got != static_cast<std::size_t>(n - 1)) {
        v.pass = false;
        v.witness = Witness{n, BigInt(got), BigInt(n - 1)};
      }
    }
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

}  // namespace hespeed

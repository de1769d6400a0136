#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hespeed/enumerate.hpp"

namespace hespeed {

struct ValuePoint {
  int n = 0;
  BigInt value;
};

/// Integer coefficients a_0..a_K with value(n) = sum_i a_i C(n, i) at every
/// point, for the least K <= max_degree that fits; the points need not be
/// consecutive. Degree K is only attempted with at least K+2 points (one to
/// solve, one to validate). Throws InsufficientPoints below 2 points.
std::optional<std::vector<BigInt>> fit_binomial(std::span<const ValuePoint> values,
                                                int max_degree = 6);

BigInt binomial(int n, int k);
/// ceil((n+1)/2)
int half_ceiling(int n);

/// Last max(3, ceil(len/2)) points of an examined range of length len:
/// the finite stand-in for "eventually".
int terminal_window_start(int lo, int hi);

enum class RegimeTag { Empty, EventuallyOne, Polynomial, ExponentialFloor, Violation };
std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag = RegimeTag::Violation;
  std::vector<BigInt> coefficients;  // Polynomial only
  int lo = 0, hi = 0;
  int fit_from = 0;                  // first n of the fitted terminal segment
  std::vector<ValuePoint> labelled;  // examined values
  /// Lower bounds that accompany the regime, checked on the examined range.
  bool bounds_hold = true;
  std::string note;
};

/// Examines labelled speeds on [lo, hi] (hi >= 6).
Regime classify_labelled(const PropertySpec& property, int lo, int hi,
                         const EnumOptions& options = {});
Regime classify_labelled(Enumerator& enumerator, int lo, int hi);

struct Witness {
  int n = 0;
  BigInt observed;
  BigInt required;
};

struct Verdict {
  std::string name;
  bool pass = true;
  std::optional<Witness> witness;  // first violation when !pass
  std::string note;
};

struct JumpReport {
  std::string theorem;
  std::string property;
  int lo = 0, hi = 0;
  std::vector<std::uint64_t> speeds;  // unlabelled, n = lo..hi
  std::vector<Verdict> verdicts;
  std::string surrogate;

  bool pass() const;
};

/// Unbounded-speed hypotheses are replaced by "non-constant on the terminal
/// window"; every report carries that surrogate in `surrogate`.
JumpReport check_poset_jump(const PropertySpec& property, int lo, int hi,
                            const EnumOptions& options = {});
JumpReport check_tournament_jump(const PropertySpec& property, int lo, int hi,
                                 const EnumOptions& options = {});
JumpReport check_directed_jump(const PropertySpec& property, int lo, int hi,
                               const EnumOptions& options = {});

/// Least N with every order-N tournament containing T_n (n <= 4).
int ramsey_transitive(int n, const EnumOptions& options = {});

/// |P1_n| = n-2 on the range (n >= 4 part), minimality surrogate, and the
/// higher families P2..P4 reaching n-1 at the top of the range. hi <= 8.
JumpReport uniqueness_minimal_tournament(int lo, int hi, const EnumOptions& options = {});

}  // namespace hespeed

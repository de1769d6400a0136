#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hespeed/canonical.hpp"
#include "hespeed/families.hpp"
#include "hespeed/structure.hpp"

namespace hespeed {

using BigInt = boost::multiprecision::cpp_int;

/// A hereditary property inside one class.
struct PropertySpec {
  enum class Mode { All, Forbidden, Named, DownClosure };

  Mode mode = Mode::All;
  ClassTag tag = ClassTag::Digraph;
  std::vector<Structure> structures;  // Forbidden / DownClosure
  Family family;                      // Named

  static PropertySpec all(ClassTag tag);
  static PropertySpec forbidden(ClassTag tag, std::vector<Structure> list);
  static PropertySpec named(Family family);
  static PropertySpec named(Family family, ClassTag tag);
  static PropertySpec down_closure(ClassTag tag, std::vector<Structure> generators);

  /// Throws InvalidProperty unless the mode invariants hold.
  void validate() const;

  /// Membership of s, which must already belong to the class.
  bool admits(const Structure& s) const;

  /// Deterministic text identifying the property (independent of input
  /// order of the structure list).
  std::string describe() const;
  std::uint64_t hash() const;
};

struct EnumOptions {
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  /// Raises the per-class order limit (at most kMaxCanonicalOrder); 0 keeps
  /// the default of 10 for digraph/oriented and 12 otherwise.
  int limit_order = 0;
};

int default_order_limit(ClassTag tag);

struct Member {
  CanonicalCode code;
  std::uint64_t automorphisms = 1;
};

/// Level-by-level generator for one property. Order-n members are produced
/// only as one-vertex extensions of order-(n-1) members, so the property
/// must be hereditary.
class Enumerator {
 public:
  explicit Enumerator(PropertySpec property, EnumOptions options = {});

  /// Members of order n sorted by code. Computes (or loads) lower levels
  /// first. Throws OrderTooLarge beyond the order limit.
  const std::vector<Member>& level(int n);

  const PropertySpec& property() const { return property_; }
  int order_limit() const { return limit_; }

 private:
  std::vector<Member> extend_level(int n);
  std::optional<std::vector<Member>> load_cached(int n) const;
  void store_cached(int n, const std::vector<Member>& members) const;
  std::filesystem::path cache_path(int n) const;

  PropertySpec property_;
  EnumOptions options_;
  ClassTag gen_tag_;
  int limit_;
  std::vector<std::vector<Member>> levels_;
};

std::vector<CanonicalCode> enumerate_class(ClassTag tag, int n,
                                           const std::optional<PropertySpec>& property = {},
                                           const EnumOptions& options = {});

std::uint64_t unlabelled_speed(const PropertySpec& property, int n,
                               const EnumOptions& options = {});
BigInt labelled_speed(const PropertySpec& property, int n, const EnumOptions& options = {});

struct SpeedPoint {
  int n = 0;
  std::uint64_t unlabelled = 0;
  BigInt labelled;
};
using SpeedSequence = std::vector<SpeedPoint>;

/// Points n = 1..n_max. Asserts unlabelled <= labelled <= n!*unlabelled.
SpeedSequence speed_sequence(const PropertySpec& property, int n_max,
                             const EnumOptions& options = {});
SpeedSequence speed_sequence(Enumerator& enumerator, int lo, int hi);

BigInt factorial(int n);

}  // namespace hespeed

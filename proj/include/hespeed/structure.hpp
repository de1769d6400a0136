#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hespeed/error.hpp"

namespace hespeed {

/// Relation between the two vertices of an unordered pair (i, j), i < j.
/// Forward means i -> j only, Backward means j -> i only.
enum class EdgeCode : std::uint8_t { None = 0, Forward = 1, Backward = 2, Both = 3 };

/// The code of the same pair as seen from the other endpoint.
constexpr EdgeCode reversed(EdgeCode c) {
  switch (c) {
    case EdgeCode::Forward: return EdgeCode::Backward;
    case EdgeCode::Backward: return EdgeCode::Forward;
    default: return c;
  }
}

enum class ClassTag : std::uint8_t { Graph, Poset, Oriented, Tournament, Digraph };

std::string_view to_string(ClassTag tag);
std::optional<ClassTag> parse_class_tag(std::string_view text);

/// Set of class tags as a bit mask indexed by ClassTag.
class ClassSet {
 public:
  constexpr ClassSet() = default;
  constexpr void insert(ClassTag t) { bits_ |= bit(t); }
  constexpr bool contains(ClassTag t) const { return (bits_ & bit(t)) != 0; }
  constexpr bool includes(ClassSet other) const { return (bits_ & other.bits_) == other.bits_; }
  constexpr bool operator==(const ClassSet&) const = default;
  std::vector<ClassTag> tags() const;

 private:
  static constexpr std::uint8_t bit(ClassTag t) { return std::uint8_t(1u << static_cast<unsigned>(t)); }
  std::uint8_t bits_ = 0;
};

using VertexMask = std::uint64_t;

/// Largest order a Structure may have. Exhaustive algorithms (canonical
/// forms, enumeration) impose the tighter kMaxCanonicalOrder.
inline constexpr int kMaxOrder = 64;
inline constexpr int kMaxCanonicalOrder = 16;

constexpr std::size_t pair_count(int order) {
  return order < 2 ? 0 : static_cast<std::size_t>(order) * (order - 1) / 2;
}

/// Position of pair (i, j), i < j, in row-major lexicographic pair order.
constexpr std::size_t pair_index(int order, int i, int j) {
  return static_cast<std::size_t>(i) * order - static_cast<std::size_t>(i) * (i + 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

/// An order-n relational structure with one EdgeCode per unordered pair.
/// Immutable after construction. Out/in neighbourhoods are kept as bit masks
/// so that relation lookups are two shifts.
class Structure {
 public:
  Structure() = default;

  /// Validates length and, when a hint is given, the class invariants.
  static Structure build(int order, std::span<const EdgeCode> codes,
                         std::optional<ClassTag> kind_hint = std::nullopt);

  /// Builds from per-vertex masks: out[v] has bit w iff v -> w.
  static Structure from_masks(int order, std::span<const VertexMask> out);

  int order() const noexcept { return order_; }
  std::span<const EdgeCode> codes() const noexcept { return codes_; }
  std::optional<ClassTag> kind_hint() const noexcept { return kind_hint_; }

  /// Code of pair {a, b} as seen from a: Forward iff a -> b only.
  EdgeCode rel(int a, int b) const noexcept {
    return static_cast<EdgeCode>(((out_[a] >> b) & 1u) | (((in_[a] >> b) & 1u) << 1));
  }
  bool arc(int a, int b) const noexcept { return ((out_[a] >> b) & 1u) != 0; }
  VertexMask out_mask(int v) const noexcept { return out_[v]; }
  VertexMask in_mask(int v) const noexcept { return in_[v]; }
  std::span<const VertexMask> out_masks() const noexcept { return out_; }
  VertexMask all_vertices() const noexcept {
    return order_ == 64 ? ~VertexMask{0} : ((VertexMask{1} << order_) - 1);
  }

  /// Same structure carrying a different (validated) class hint.
  Structure with_hint(std::optional<ClassTag> hint) const;

  /// Equality of order and codes; the hint is metadata and not compared.
  bool operator==(const Structure& other) const {
    return order_ == other.order_ && codes_ == other.codes_;
  }

 private:
  void derive_masks();

  int order_ = 0;
  std::vector<EdgeCode> codes_;
  std::vector<VertexMask> out_;
  std::vector<VertexMask> in_;
  std::optional<ClassTag> kind_hint_;
};

/// Every class tag whose invariants s satisfies (digraph always included).
ClassSet classify(const Structure& s);
bool is_class(const Structure& s, ClassTag tag);

/// Throws KindViolation naming the first violated invariant of tag.
void check_class(const Structure& s, ClassTag tag);

/// Substructure on `subset`; output vertex a is source vertex subset[a].
Structure induced(const Structure& s, std::span<const int> subset);
Structure induced_mask(const Structure& s, VertexMask subset);
Structure remove_vertex(const Structure& s, int v);

/// Relabelling pi . s, where source vertex v becomes vertex perm[v].
Structure relabel(const Structure& s, std::span<const int> perm);

/// Appends vertex n; new_rel[i] is the code of pair (i, n) seen from i.
Structure extend(const Structure& s, std::span<const EdgeCode> new_rel);

struct EdgeSplit {
  Structure single;  // pairs with exactly one arc
  Structure dbl;     // pairs with both arcs
  Structure non;     // pairs with no arc
};

EdgeSplit split_edges(const Structure& s);

/// Graph joining comparable pairs. Throws NotAPoset.
Structure comparability_graph(const Structure& poset);

std::size_t edge_count(const Structure& s, EdgeCode code);

/// Bit-exact text form `D<order>:<HEX>`: 2-bit codes in pair order, first
/// code in the high bits of each nibble, zero padded to a nibble boundary.
std::string encode(const Structure& s);
Structure decode(std::string_view text);

/// Convenience constructors.
Structure empty_structure(int order, std::optional<ClassTag> hint = std::nullopt);
Structure chain(int order);
Structure antichain(int order);
Structure complete_graph(int order);

}  // namespace hespeed

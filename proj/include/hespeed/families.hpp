#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hespeed/structure.hpp"

namespace hespeed {

struct PropertySpec;
struct EnumOptions;

// ---------------------------------------------------------------------------
// Builders. Vertices are 0-based throughout; see README for the mapping to
// the 1-based [m] = {1..m} indexing used in the literature.

/// Chains of sizes a and b (a >= b), mutually incomparable.
Structure two_chains(int a, int b);
/// `pairs` disjoint comparable pairs (2i < 2i+1) plus `singles` isolated points.
Structure matching_poset(int pairs, int singles);
/// p_i < p_j for i < j except inside one composition part. Parts are 1 or 2.
Structure cochain_poset(std::span<const int> composition);
/// X elements (vertices 0..X-1) above Y elements; layers are antichains.
Structure layered_poset(int x, int y);
Structure transitive_tournament(int n);

Structure g1(int k);
Structure g2(int k);
Structure g3(int k);
Structure g4(int k);
/// g1..g4 by index.
Structure g_family(int i, int k);

// ---------------------------------------------------------------------------
// Catalogue of named hereditary properties.

enum class FamilyId {
  Q,       // poset, comparability graph a union of at most two cliques
  R,       // poset, comparability graph of maximum degree <= 1
  Rbar,    // poset, incomparability graph of maximum degree <= 1
  QK,      // poset, layered with |X| <= K
  Rbip,    // poset, layered
  G0,      // graph of maximum degree <= 1 (double-edge digraph)
  P1,
  P2,
  P3,
  P4,           // tournaments induced in some g_i(k)
  TwoCliques,   // disjoint union of at most two double-edge cliques
  TwoTransitive // disjoint union of at most two transitive tournaments
};

struct Family {
  FamilyId id = FamilyId::Q;
  int param = 0;  // K for QK

  /// Accepts the exact catalogue identifiers, e.g. "Q", "QK(2)", "P3".
  static Family parse(std::string_view text);
  std::string name() const;
  ClassTag natural_class() const;
  /// Membership is a relabelling-invariant O(n^2) test.
  bool cheap() const;

  bool operator==(const Family&) const = default;
};

std::span<const std::string_view> family_names();

/// Exact membership decision. For P1..P4, s must occur induced in
/// g_i(s.order()). Throws OrderTooLarge above kMaxCanonicalOrder.
bool member_of(const Family& family, const Structure& s);

/// Same decision on raw masks, for the cheap families only.
bool member_of_masks(const Family& family, int order, std::span<const VertexMask> out);

// ---------------------------------------------------------------------------
// Analyzers.

/// Entry i describes u against v_i, the vertex of T with outdegree |T|-1-i
/// inside T: 1 = u->v_i only, -1 = v_i->u only, 0 = neither, 2 = both.
using PatternVec = std::vector<int>;

PatternVec pattern(const Structure& host, std::span<const int> t, int u);

/// Sorted set of patterns of length n realised by members of order n+1 on
/// a transitive tournament T with host[T + u] not a transitive tournament.
std::vector<PatternVec> nontransitive_patterns(const PropertySpec& property, int n,
                                               const EnumOptions& options);

struct PartitionCert {
  std::vector<int> a, b, c;
};

/// First (|A|, A, |C|, C) in ascending lexicographic order with B the rest.
/// b == nullopt means unbounded.
std::optional<PartitionCert> abc_partition(const Structure& t, int a, std::optional<int> b,
                                           int c);
bool verify_partition(const Structure& t, const PartitionCert& cert, int a,
                      std::optional<int> b, int c);

/// Classes of the twin relation Gamma(x)\{y} == Gamma(y)\{x}, each sorted,
/// ordered by least element.
std::vector<std::vector<int>> homogeneous_blocks(const Structure& g);

/// Lexicographically least maximum vertex set inducing a transitive tournament.
std::vector<int> max_transitive(const Structure& t);

/// True when the vertices induce a transitive tournament.
bool is_transitive_tournament(const Structure& s, std::span<const int> vertices);

}  // namespace hespeed

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hespeed/structure.hpp"

namespace hespeed {

/// Canonical code of an isomorphism class: the encode() text of the
/// lexicographically least relabelling, stored packed (2 bits per pair,
/// most significant first) so that word order equals text order.
class CanonicalCode {
 public:
  CanonicalCode() = default;
  CanonicalCode(int order, std::span<const EdgeCode> codes);

  int order() const noexcept { return order_; }
  std::string text() const;
  Structure structure() const;
  EdgeCode code_at(std::size_t p) const noexcept {
    return static_cast<EdgeCode>((bits_[p / 32] >> (62 - 2 * (p % 32))) & 3u);
  }

  auto operator<=>(const CanonicalCode&) const = default;
  bool operator==(const CanonicalCode&) const = default;

  std::size_t hash() const noexcept;

 private:
  std::uint8_t order_ = 0;
  std::array<std::uint64_t, 4> bits_{};
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& c) const noexcept { return c.hash(); }
};

struct Canonical {
  CanonicalCode code;
  std::uint64_t automorphisms = 0;
  /// labelling[p] = source vertex placed at canonical position p.
  std::vector<int> labelling;
};

/// Canonical code, automorphism group order and a canonical labelling,
/// computed in one search. Throws OrderTooLarge above kMaxCanonicalOrder.
Canonical canonicalize(const Structure& s);

/// Same search on raw out-neighbourhood masks (order <= 16); used on hot
/// paths that have not materialised a Structure.
Canonical canonicalize_masks(int order, std::span<const VertexMask> out);

CanonicalCode canonical_form(const Structure& s);
std::uint64_t automorphism_count(const Structure& s);
bool are_isomorphic(const Structure& s, const Structure& t);

/// An injective map guest -> host whose image induces guest, if any.
std::optional<std::vector<int>> find_induced(const Structure& host, const Structure& guest);
bool contains_induced(const Structure& host, const Structure& guest);

/// Number of isomorphism classes among the order-k induced substructures.
std::size_t distinct_induced_count(const Structure& host, int k);

/// Per-order sorted class lists (index 0..n_max) of structures induced in
/// some generator.
std::vector<std::vector<CanonicalCode>> induced_closure(std::span<const Structure> generators,
                                                        int n_max);

}  // namespace hespeed

template <>
struct std::hash<hespeed::CanonicalCode> {
  std::size_t operator()(const hespeed::CanonicalCode& c) const noexcept { return c.hash(); }
};

#pragma once

// One-vertex extensions shared by the closure and enumeration engines.

#include <array>
#include <bit>
#include <span>

#include "hespeed/structure.hpp"

namespace hespeed::detail {

inline constexpr int kMaxExtendOrder = kMaxCanonicalOrder;

std::span<const EdgeCode> alphabet_for(ClassTag tag);

/// Narrowest class shared by every structure in the list (Digraph if none).
ClassTag common_class(std::span<const Structure> structures);

/// Calls fn(out_masks) for every way of attaching a new vertex `n` to a
/// structure of order n given by base_out, with each pair (i, n) taking a
/// code from `alphabet` (seen from i).
template <class Fn>
void for_each_extension(int n, std::span<const VertexMask> base_out,
                        std::span<const EdgeCode> alphabet, Fn&& fn) {
  std::array<VertexMask, kMaxExtendOrder + 1> out{};
  std::array<int, kMaxExtendOrder> digit{};
  const int base = static_cast<int>(alphabet.size());
  const VertexMask new_bit = VertexMask{1} << n;
  while (true) {
    out[n] = 0;
    for (int i = 0; i < n; ++i) {
      auto c = static_cast<unsigned>(alphabet[digit[i]]);
      out[i] = base_out[i] | ((c & 1u) ? new_bit : 0);
      if (c & 2u) out[n] |= VertexMask{1} << i;
    }
    fn(std::span<const VertexMask>(out.data(), n + 1));
    int i = 0;
    while (i < n && ++digit[i] == base) digit[i++] = 0;
    if (i == n) break;
  }
}

/// True when the last vertex of an extension keeps a strict order strict,
/// given that vertices 0..n-2 already form a poset.
inline bool extension_is_poset(int order, std::span<const VertexMask> out) {
  const int x = order - 1;
  const VertexMask xbit = VertexMask{1} << x;
  VertexMask below = 0;  // i -> x
  for (int i = 0; i < x; ++i)
    if (out[i] & xbit) below |= VertexMask{1} << i;
  const VertexMask above = out[x];
  if (below & above) return false;
  for (VertexMask m = below; m; m &= m - 1) {
    int d = std::countr_zero(m);
    if ((above & ~out[d]) != 0) return false;  // d -> every element above x
  }
  for (int j = 0; j < x; ++j) {
    // anything below a member of `below` must be below x
    if ((out[j] & below & ~xbit) && !(below & (VertexMask{1} << j))) return false;
  }
  for (VertexMask m = above; m; m &= m - 1) {
    int u = std::countr_zero(m);
    if ((out[u] & ~above & ~xbit) != 0) return false;  // above is up-closed
  }
  return true;
}

}  // namespace hespeed::detail

#include "hespeed/canonical.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "extension.hpp"

namespace hespeed {

// ---------------------------------------------------------------------------
// CanonicalCode

CanonicalCode::CanonicalCode(int order, std::span<const EdgeCode> codes) {
  if (order > kMaxCanonicalOrder) {
    throw Error(Errc::OrderTooLarge, "canonical codes hold at most order 16");
  }
  order_ = static_cast<std::uint8_t>(order);
  for (std::size_t p = 0; p < codes.size(); ++p) {
    bits_[p / 32] |= std::uint64_t(static_cast<unsigned>(codes[p])) << (62 - 2 * (p % 32));
  }
}

std::string CanonicalCode::text() const { return encode(structure()); }

Structure CanonicalCode::structure() const {
  std::vector<EdgeCode> codes(pair_count(order_));
  for (std::size_t p = 0; p < codes.size(); ++p) codes[p] = code_at(p);
  return Structure::build(order_, codes);
}

std::size_t CanonicalCode::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ order_;
  for (auto w : bits_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Canonical search
//
// Lexicographically least code over all relabellings. Positions are filled
// in order; position m must take a vertex from the first cell of the ordered
// partition of unplaced vertices (cells group vertices with equal codes to
// every placed vertex), and placing v fixes row m of the code and splits each
// cell by code to v. Subtrees are pruned when their prefix exceeds the best
// code, and shared between children that an already-discovered automorphism
// fixing the prefix maps onto each other.

namespace {

enum class Cmp : std::uint8_t { Less, Equal, Greater };

class CanonSearch {
 public:
  CanonSearch(int n, std::span<const VertexMask> out) : n_(n) {
    for (int v = 0; v < n; ++v) out_[v] = out[v];
    int off = 0;
    for (int m = 0; m < n; ++m) {
      row_off_[m] = off;
      off += n - 1 - m;
    }
  }

  Canonical run() {
    Canonical result;
    if (n_ <= 1) {
      result.code = CanonicalCode(n_, {});
      result.automorphisms = 1;
      for (int v = 0; v < n_; ++v) result.labelling.push_back(v);
      return result;
    }
    for (int i = 0; i < n_; ++i) seq_[0][i] = static_cast<std::int8_t>(i);
    starts_[0] = 1u;
    cmp_.fill(Cmp::Less);
    Result root = explore(0);
    const auto pairs = pair_count(n_);
    std::array<EdgeCode, 120> codes{};
    for (std::size_t p = 0; p < pairs; ++p) codes[p] = static_cast<EdgeCode>(best_[p]);
    result.code = CanonicalCode(n_, std::span<const EdgeCode>(codes.data(), pairs));
    result.automorphisms = root.count;
    result.labelling.assign(best_perm_.begin(), best_perm_.begin() + n_);
    return result;
  }

 private:
  struct Result {
    std::uint64_t version = 0;
    std::uint64_t count = 0;
    int jump = -1;
  };

  unsigned rel(int a, int b) const {
    return static_cast<unsigned>(((out_[a] >> b) & 1u) | (((out_[b] >> a) & 1u) << 1));
  }

  // Splits every cell of level m by code to v; writes row m. Returns the
  // comparison of rows 0..m with the best code.
  Cmp refine(int m, int v) {
    const auto& seq = seq_[m];
    auto& next = seq_[m + 1];
    const int r = n_ - m;
    std::uint32_t starts = starts_[m];
    std::uint32_t next_starts = 0;
    int pos = 0;
    int row = row_off_[m];
    int a = 0;
    while (a < r) {
      int b = a + 1;
      while (b < r && !((starts >> b) & 1u)) ++b;
      for (unsigned c = 0; c < 4; ++c) {
        bool opened = false;
        for (int i = a; i < b; ++i) {
          int w = seq[i];
          if (w == v || rel(v, w) != c) continue;
          if (!opened) {
            next_starts |= 1u << pos;
            opened = true;
          }
          next[pos++] = static_cast<std::int8_t>(w);
          cur_[row++] = static_cast<std::uint8_t>(c);
        }
      }
      a = b;
    }
    starts_[m + 1] = next_starts;
    if (cmp_[m] != Cmp::Equal) return cmp_[m];
    for (int p = row_off_[m]; p < row; ++p) {
      if (cur_[p] < best_[p]) return Cmp::Less;
      if (cur_[p] > best_[p]) return Cmp::Greater;
    }
    return Cmp::Equal;
  }

  Result leaf() {
    if (!has_best_ || cmp_[n_] == Cmp::Less) {
      best_ = cur_;
      best_perm_ = perm_;
      has_best_ = true;
      ++version_;
      cmp_.fill(Cmp::Equal);
      return {version_, 1, -1};
    }
    std::array<std::int8_t, 16> gamma{};
    for (int i = 0; i < n_; ++i) gamma[best_perm_[i]] = static_cast<std::int8_t>(perm_[i]);
    gens_.push_back(gamma);
    int d = 0;
    while (perm_[d] == best_perm_[d]) ++d;
    return {version_, 1, d};
  }

  static int find(std::array<std::int8_t, 16>& parent, int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void orbits(int m, std::array<std::int8_t, 16>& parent) const {
    for (int i = 0; i < n_; ++i) parent[i] = static_cast<std::int8_t>(i);
    for (const auto& g : gens_) {
      bool fixes = true;
      for (int j = 0; j < m && fixes; ++j) fixes = g[perm_[j]] == perm_[j];
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) {
        int a = find(parent, x), b = find(parent, g[x]);
        if (a != b) parent[std::max(a, b)] = static_cast<std::int8_t>(std::min(a, b));
      }
    }
  }

  Result explore(int m) {
    if (m == n_) return leaf();
    const auto& seq = seq_[m];
    const int r = n_ - m;
    int first_end = 1;
    while (first_end < r && !((starts_[m] >> first_end) & 1u)) ++first_end;

    std::array<Result, 16> child{};
    std::uint32_t explored = 0;
    std::array<std::int8_t, 16> parent{};
    std::size_t gens_used = static_cast<std::size_t>(-1);
    std::uint64_t acc_version = 0, acc_count = 0;

    for (int idx = 0; idx < first_end; ++idx) {
      const int v = seq[idx];
      Result res;
      bool reused = false;
      if (explored != 0) {
        if (gens_used != gens_.size()) {
          orbits(m, parent);
          gens_used = gens_.size();
        }
        const int root = find(parent, v);
        for (std::uint32_t e = explored; e; e &= e - 1) {
          int u = std::countr_zero(e);
          if (find(parent, u) == root) {
            res = child[u];
            reused = true;
            break;
          }
        }
      }
      if (!reused) {
        perm_[m] = v;
        Cmp c = refine(m, v);
        cmp_[m + 1] = c;
        if (c == Cmp::Greater) {
          res = {version_, 0, -1};
        } else {
          res = explore(m + 1);
          if (res.jump >= 0) {
            if (res.jump < m) return res;
            res = child[best_perm_[m]];
          }
        }
      }
      child[v] = res;
      explored |= 1u << v;
      if (res.count != 0 && res.version == version_) {
        if (acc_version != version_) {
          acc_version = version_;
          acc_count = 0;
        }
        acc_count += res.count;
      }
    }
    if (acc_version != version_) return {version_, 0, -1};
    return {version_, acc_count, -1};
  }

  int n_;
  std::array<VertexMask, 16> out_{};
  std::array<int, 16> row_off_{};
  std::array<std::array<std::int8_t, 16>, 17> seq_{};
  std::array<std::uint32_t, 17> starts_{};
  std::array<int, 16> perm_{};
  std::array<int, 16> best_perm_{};
  std::array<std::uint8_t, 120> cur_{};
  std::array<std::uint8_t, 120> best_{};
  std::array<Cmp, 17> cmp_{};
  bool has_best_ = false;
  std::uint64_t version_ = 0;
  std::vector<std::array<std::int8_t, 16>> gens_;
};

void require_canonical_order(int order) {
  if (order > kMaxCanonicalOrder) {
    throw Error(Errc::OrderTooLarge, "order " + std::to_string(order) +
                                         " exceeds canonical limit " +
                                         std::to_string(kMaxCanonicalOrder));
  }
}

}  // namespace

Canonical canonicalize_masks(int order, std::span<const VertexMask> out) {
  require_canonical_order(order);
  return CanonSearch(order, out).run();
}

Canonical canonicalize(const Structure& s) {
  return canonicalize_masks(s.order(), s.out_masks());
}

CanonicalCode canonical_form(const Structure& s) { return canonicalize(s).code; }

std::uint64_t automorphism_count(const Structure& s) { return canonicalize(s).automorphisms; }

bool are_isomorphic(const Structure& s, const Structure& t) {
  if (s.order() != t.order()) return false;
  if (s.order() > kMaxCanonicalOrder) {
    auto m = find_induced(s, t);
    return m.has_value();
  }
  return canonical_form(s) == canonical_form(t);
}

// ---------------------------------------------------------------------------
// Induced substructure search

namespace {

class Embedder {
 public:
  Embedder(const Structure& host, const Structure& guest) : host_(host), guest_(guest) {
    const int n = host.order();
    const int k = guest.order();
    by_code_.assign(n, {});
    std::vector<std::array<int, 4>> host_profile(n, std::array<int, 4>{});
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        auto c = static_cast<unsigned>(host.rel(x, y));
        by_code_[x][c] |= VertexMask{1} << y;
        ++host_profile[x][c];
      }
    compatible_.assign(k, 0);
    for (int i = 0; i < k; ++i) {
      std::array<int, 4> need{};
      for (int j = 0; j < k; ++j)
        if (i != j) ++need[static_cast<unsigned>(guest.rel(i, j))];
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (int c = 0; c < 4 && ok; ++c) ok = host_profile[x][c] >= need[c];
        if (ok) compatible_[i] |= VertexMask{1} << x;
      }
    }
    // Place most constrained guest vertices first.
    order_.resize(k);
    for (int i = 0; i < k; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return std::popcount(compatible_[a]) < std::popcount(compatible_[b]);
    });
    image_.assign(k, -1);
  }

  std::optional<std::vector<int>> run() {
    if (guest_.order() > host_.order()) return std::nullopt;
    for (auto m : compatible_)
      if (m == 0) return std::nullopt;
    if (!place(0, 0)) return std::nullopt;
    return image_;
  }

 private:
  bool place(int depth, VertexMask used) {
    const int k = guest_.order();
    if (depth == k) return true;
    const int g = order_[depth];
    VertexMask cand = compatible_[g] & ~used;
    for (int d = 0; d < depth && cand; ++d) {
      const int h = order_[d];
      cand &= by_code_[image_[h]][static_cast<unsigned>(guest_.rel(h, g))];
    }
    for (; cand; cand &= cand - 1) {
      const int x = std::countr_zero(cand);
      image_[g] = x;
      if (place(depth + 1, used | (VertexMask{1} << x))) return true;
    }
    image_[g] = -1;
    return false;
  }

  const Structure& host_;
  const Structure& guest_;
  std::vector<std::array<VertexMask, 4>> by_code_;
  std::vector<VertexMask> compatible_;
  std::vector<int> order_;
  std::vector<int> image_;
};

}  // namespace

std::optional<std::vector<int>> find_induced(const Structure& host, const Structure& guest) {
  return Embedder(host, guest).run();
}

bool contains_induced(const Structure& host, const Structure& guest) {
  return find_induced(host, guest).has_value();
}

std::size_t distinct_induced_count(const Structure& host, int k) {
  const int n = host.order();
  if (k < 0 || k > n) return 0;
  require_canonical_order(k);
  std::unordered_set<CanonicalCode> seen;
  std::vector<int> subset(k);
  std::array<VertexMask, 16> local{};
  auto visit = [&] {
    for (int a = 0; a < k; ++a) {
      VertexMask m = 0;
      for (int b = 0; b < k; ++b)
        if (a != b && host.arc(subset[a], subset[b])) m |= VertexMask{1} << b;
      local[a] = m;
    }
    seen.insert(canonicalize_masks(k, local).code);
  };
  // Lexicographic k-combinations of 0..n-1.
  for (int i = 0; i < k; ++i) subset[i] = i;
  while (true) {
    visit();
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return seen.size();
}

std::vector<std::vector<CanonicalCode>> induced_closure(std::span<const Structure> generators,
                                                        int n_max) {
  if (n_max < 0) throw Error(Errc::IndexOutOfRange, "negative order bound");
  require_canonical_order(n_max);
  std::vector<std::vector<CanonicalCode>> levels(n_max + 1);
  if (generators.empty()) return levels;
  int max_order = 0;
  for (const auto& g : generators) max_order = std::max(max_order, g.order());
  const auto alphabet = detail::alphabet_for(detail::common_class(generators));

  levels[0].push_back(CanonicalCode(0, {}));
  for (int n = 1; n <= std::min(n_max, max_order); ++n) {
    std::unordered_set<CanonicalCode> candidates;
    for (const auto& parent : levels[n - 1]) {
      Structure p = parent.structure();
      detail::for_each_extension(n - 1, p.out_masks(), alphabet, [&](std::span<const VertexMask> out) {
        candidates.insert(canonicalize_masks(n, out).code);
      });
    }
    for (const auto& code : candidates) {
      Structure s = code.structure();
      for (const auto& g : generators) {
        if (g.order() >= n && contains_induced(g, s)) {
          levels[n].push_back(code);
          break;
        }
      }
    }
    std::sort(levels[n].begin(), levels[n].end());
  }
  return levels;
}

}  // namespace hespeed

#include "hespeed/families.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <numeric>
#include <set>

#include "hespeed/canonical.hpp"
#include "hespeed/enumerate.hpp"

namespace hespeed {

namespace {

using Masks = std::vector<VertexMask>;

constexpr VertexMask bit(int v) { return VertexMask{1} << v; }

void require_nonnegative(int value, const char* what) {
  if (value < 0) throw Error(Errc::IndexOutOfRange, std::string(what) + " must be >= 0");
}

Structure from_masks(int order, const Masks& out, ClassTag tag) {
  return Structure::from_masks(order, out).with_hint(tag);
}

// i -> j for all a <= i < j < b.
void add_transitive(Masks& out, int a, int b) {
  for (int i = a; i < b; ++i)
    for (int j = i + 1; j < b; ++j) out[i] |= bit(j);
}

Structure tournament_with_special(int base, const auto& beats_special) {
  const int n = base + 1;
  Masks out(n, 0);
  add_transitive(out, 0, base);
  for (int i = 0; i < base; ++i) {
    if (beats_special(i)) out[i] |= bit(base);
    else out[base] |= bit(i);
  }
  return from_masks(n, out, ClassTag::Tournament);
}

void require_k(int k) {
  if (k < 1) throw Error(Errc::IndexOutOfRange, "k must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders. Posets use u -> v for u < v.

Structure two_chains(int a, int b) {
  require_nonnegative(b, "b");
  if (a < b) throw Error(Errc::IndexOutOfRange, "two_chains needs a >= b");
  Masks out(a + b, 0);
  add_transitive(out, 0, a);
  add_transitive(out, a, a + b);
  return from_masks(a + b, out, ClassTag::Poset);
}

Structure matching_poset(int pairs, int singles) {
  require_nonnegative(pairs, "pairs");
  require_nonnegative(singles, "singles");
  const int n = 2 * pairs + singles;
  Masks out(n, 0);
  for (int i = 0; i < pairs; ++i) out[2 * i] |= bit(2 * i + 1);
  return from_masks(n, out, ClassTag::Poset);
}

Structure cochain_poset(std::span<const int> composition) {
  std::vector<int> part;
  for (std::size_t p = 0; p < composition.size(); ++p) {
    if (composition[p] != 1 && composition[p] != 2) {
      throw Error(Errc::BadPart, "composition part " + std::to_string(composition[p]) +
                                     " is not 1 or 2");
    }
    part.insert(part.end(), composition[p], static_cast<int>(p));
  }
  const int n = static_cast<int>(part.size());
  if (n > kMaxOrder) throw Error(Errc::OrderTooLarge, "composition sum exceeds 64");
  Masks out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (part[i] != part[j]) out[i] |= bit(j);
  return from_masks(n, out, ClassTag::Poset);
}

Structure layered_poset(int x, int y) {
  require_nonnegative(x, "X");
  require_nonnegative(y, "Y");
  Masks out(x + y, 0);
  for (int v = x; v < x + y; ++v)
    for (int u = 0; u < x; ++u) out[v] |= bit(u);
  return from_masks(x + y, out, ClassTag::Poset);
}

Structure transitive_tournament(int n) {
  require_nonnegative(n, "n");
  Masks out(n, 0);
  add_transitive(out, 0, n);
  return from_masks(n, out, ClassTag::Tournament);
}

Structure g1(int k) {
  require_k(k);
  return tournament_with_special(2 * k, [k](int i) { return i >= k; });
}

Structure g2(int k) {
  require_k(k);
  return tournament_with_special(2 * k + 1, [k](int i) { return i == k; });
}

Structure g3(int k) {
  require_k(k);
  return tournament_with_special(2 * k + 1, [k](int i) { return i != k; });
}

Structure g4(int k) {
  require_k(k);
  return tournament_with_special(2 * k + 2, [k](int i) { return i <= k - 1 || i == k + 1; });
}

Structure g_family(int i, int k) {
  switch (i) {
    case 1: return g1(k);
    case 2: return g2(k);
    case 3: return g3(k);
    case 4: return g4(k);
  }
  throw Error(Errc::UnknownFamily, "no tournament family G" + std::to_string(i));
}

// ---------------------------------------------------------------------------
// Catalogue

namespace {

constexpr std::array<std::string_view, 12> kFamilyNames = {
    "Q", "R", "Rbar", "QK(K)", "Rbip", "G0", "P1", "P2", "P3", "P4", "TwoCliques", "TwoTransitive"};

constexpr std::array<FamilyId, 12> kFamilyIds = {
    FamilyId::Q,  FamilyId::R,  FamilyId::Rbar, FamilyId::QK,         FamilyId::Rbip,
    FamilyId::G0, FamilyId::P1, FamilyId::P2,   FamilyId::P3,         FamilyId::P4,
    FamilyId::TwoCliques, FamilyId::TwoTransitive};

int tournament_index(FamilyId id) {
  switch (id) {
    case FamilyId::P1: return 1;
    case FamilyId::P2: return 2;
    case FamilyId::P3: return 3;
    case FamilyId::P4: return 4;
    default: return 0;
  }
}

}  // namespace

std::span<const std::string_view> family_names() { return kFamilyNames; }

Family Family::parse(std::string_view text) {
  if (text.starts_with("QK(") && text.ends_with(")")) {
    auto digits = text.substr(3, text.size() - 4);
    int k = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() || k < 0) {
      throw Error(Errc::UnknownFamily, "bad QK parameter in '" + std::string(text) + "'");
    }
    return Family{FamilyId::QK, k};
  }
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyIds[i] != FamilyId::QK && kFamilyNames[i] == text) return Family{kFamilyIds[i], 0};
  }
  throw Error(Errc::UnknownFamily, "unknown family '" + std::string(text) + "'");
}

std::string Family::name() const {
  if (id == FamilyId::QK) return "QK(" + std::to_string(param) + ")";
  for (std::size_t i = 0; i < kFamilyIds.size(); ++i)
    if (kFamilyIds[i] == id) return std::string(kFamilyNames[i]);
  return "?";
}

ClassTag Family::natural_class() const {
  switch (id) {
    case FamilyId::G0:
    case FamilyId::TwoCliques: return ClassTag::Graph;
    case FamilyId::TwoTransitive: return ClassTag::Oriented;
    case FamilyId::P1:
    case FamilyId::P2:
    case FamilyId::P3:
    case FamilyId::P4: return ClassTag::Tournament;
    default: return ClassTag::Poset;
  }
}

bool Family::cheap() const { return tournament_index(id) == 0; }

namespace {

struct MaskView {
  int n;
  std::array<VertexMask, kMaxCanonicalOrder> out{};
  std::array<VertexMask, kMaxCanonicalOrder> in{};

  MaskView(int order, std::span<const VertexMask> o) : n(order) {
    for (int v = 0; v < n; ++v) out[v] = o[v];
    for (int v = 0; v < n; ++v)
      for (VertexMask m = out[v]; m; m &= m - 1) in[std::countr_zero(m)] |= bit(v);
  }

  VertexMask all() const { return n == 64 ? ~VertexMask{0} : bit(n) - 1; }

  bool oriented() const {
    for (int v = 0; v < n; ++v)
      if (out[v] & in[v]) return false;
    return true;
  }
  bool graph() const {
    for (int v = 0; v < n; ++v)
      if (out[v] != in[v]) return false;
    return true;
  }
  bool poset() const {
    if (!oriented()) return false;
    for (int v = 0; v < n; ++v)
      for (VertexMask m = out[v]; m; m &= m - 1)
        if (out[std::countr_zero(m)] & ~out[v]) return false;
    return true;
  }
  VertexMask adjacent(int v) const { return out[v] | in[v]; }

  // Components of the underlying graph are cliques, and there are at most two.
  bool two_cliques() const {
    std::array<VertexMask, 2> seen{};
    int count = 0;
    for (int v = 0; v < n; ++v) {
      const VertexMask closed = adjacent(v) | bit(v);
      if (count > 0 && closed == seen[0]) continue;
      if (count > 1 && closed == seen[1]) continue;
      if (count == 2) return false;
      seen[count++] = closed;
    }
    // Distinct closed neighbourhoods that overlap cannot both be cliques.
    return count < 2 || (seen[0] & seen[1]) == 0;
  }

  int max_degree(bool complement) const {
    int d = 0;
    for (int v = 0; v < n; ++v) {
      VertexMask a = adjacent(v);
      if (complement) a = ~a & all() & ~bit(v);
      d = std::max(d, std::popcount(a));
    }
    return d;
  }

  // Size of the upper layer when the poset is layered (every element with
  // something below is above every element with nothing below).
  std::optional<int> upper_layer() const {
    VertexMask upper = 0;
    for (int v = 0; v < n; ++v)
      if (in[v]) upper |= bit(v);
    const VertexMask lower = all() & ~upper;
    if (upper == 0) return 0;
    for (int v = 0; v < n; ++v) {
      if (upper & bit(v)) {
        if (in[v] != lower || out[v] != 0) return std::nullopt;
      } else if (out[v] != upper || in[v] != 0) {
        return std::nullopt;
      }
    }
    return std::popcount(upper);
  }

  bool transitive_components() const {
    for (int v = 0; v < n; ++v) {
      // Inside a clique component, outdegrees must be distinct.
      for (VertexMask m = adjacent(v); m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (std::popcount(out[u]) == std::popcount(out[v])) return false;
      }
    }
    return true;
  }
};

}  // namespace

bool member_of_masks(const Family& family, int order, std::span<const VertexMask> out) {
  if (!family.cheap()) {
    return member_of(family, Structure::from_masks(order, out));
  }
  if (order > kMaxCanonicalOrder) throw Error(Errc::OrderTooLarge, "membership above order 16");
  const MaskView m(order, out);
  switch (family.id) {
    case FamilyId::Q: return m.poset() && m.two_cliques();
    case FamilyId::R: return m.poset() && m.max_degree(false) <= 1;
    case FamilyId::Rbar: return m.poset() && m.max_degree(true) <= 1;
    case FamilyId::QK: {
      if (!m.poset()) return false;
      auto x = m.upper_layer();
      return x && *x <= family.param;
    }
    case FamilyId::Rbip: return m.poset() && m.upper_layer().has_value();
    case FamilyId::G0: return m.graph() && m.max_degree(false) <= 1;
    case FamilyId::TwoCliques: return m.graph() && m.two_cliques();
    case FamilyId::TwoTransitive:
      return m.oriented() && m.two_cliques() && m.transitive_components();
    default: break;
  }
  return false;
}

bool member_of(const Family& family, const Structure& s) {
  if (s.order() > kMaxCanonicalOrder) throw Error(Errc::OrderTooLarge, "membership above order 16");
  const int i = tournament_index(family.id);
  if (i == 0) return member_of_masks(family, s.order(), s.out_masks());
  if (!is_class(s, ClassTag::Tournament)) return false;
  if (s.order() == 0) return true;
  return contains_induced(g_family(i, s.order()), s);
}

// ---------------------------------------------------------------------------
// Analyzers

bool is_transitive_tournament(const Structure& s, std::span<const int> vertices) {
  VertexMask set = 0;
  for (int v : vertices) set |= bit(v);
  VertexMask degrees = 0;
  for (int v : vertices) {
    if (((s.out_mask(v) ^ s.in_mask(v)) & set) != (set & ~bit(v))) return false;
    if ((s.out_mask(v) & s.in_mask(v) & set) != 0) return false;
    const int d = std::popcount(s.out_mask(v) & set);
    if (degrees & bit(d)) return false;
    degrees |= bit(d);
  }
  return true;
}

namespace {

void check_vertices(const Structure& s, std::span<const int> vertices) {
  VertexMask seen = 0;
  for (int v : vertices) {
    if (v < 0 || v >= s.order())
      throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
    if (seen & bit(v)) throw Error(Errc::DuplicateVertex, "vertex " + std::to_string(v));
    seen |= bit(v);
  }
}

std::vector<int> all_vertices_except(int n, int u) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i)
    if (i != u) v.push_back(i);
  return v;
}

}  // namespace

PatternVec pattern(const Structure& host, std::span<const int> t, int u) {
  check_vertices(host, t);
  if (u < 0 || u >= host.order())
    throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(u) + " out of range");
  if (std::find(t.begin(), t.end(), u) != t.end())
    throw Error(Errc::VertexInT, "vertex " + std::to_string(u) + " lies in T");
  if (!is_transitive_tournament(host, t))
    throw Error(Errc::NotTransitive, "T does not induce a transitive tournament");

  VertexMask set = 0;
  for (int v : t) set |= bit(v);
  std::vector<int> ranked(t.begin(), t.end());
  std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    return std::popcount(host.out_mask(a) & set) > std::popcount(host.out_mask(b) & set);
  });
  PatternVec z;
  z.reserve(ranked.size());
  for (int v : ranked) {
    switch (host.rel(u, v)) {
      case EdgeCode::None: z.push_back(0); break;
      case EdgeCode::Forward: z.push_back(1); break;
      case EdgeCode::Backward: z.push_back(-1); break;
      case EdgeCode::Both: z.push_back(2); break;
    }
  }
  return z;
}

std::vector<PatternVec> nontransitive_patterns(const PropertySpec& property, int n,
                                               const EnumOptions& options) {
  require_nonnegative(n, "n");
  Enumerator e(property, options);
  std::set<PatternVec> found;
  std::vector<int> everything(n + 1);
  std::iota(everything.begin(), everything.end(), 0);
  for (const auto& m : e.level(n + 1)) {
    const Structure s = m.code.structure();
    if (is_transitive_tournament(s, everything)) continue;
    for (int u = 0; u <= n; ++u) {
      auto t = all_vertices_except(n + 1, u);
      if (is_transitive_tournament(s, t)) found.insert(pattern(s, t, u));
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// Calls fn(mask) for each size-k subset of `pool` in lexicographic order of
// sorted vertex lists; stops when fn returns true.
template <class Fn>
bool for_each_subset(VertexMask pool, int k, Fn&& fn) {
  std::vector<int> items;
  for (VertexMask m = pool; m; m &= m - 1) items.push_back(std::countr_zero(m));
  const int n = static_cast<int>(items.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    VertexMask sub = 0;
    for (int i : idx) sub |= bit(items[i]);
    if (fn(sub)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> to_list(VertexMask m) {
  std::vector<int> v;
  for (; m; m &= m - 1) v.push_back(std::countr_zero(m));
  return v;
}

bool beats_all(const Structure& t, VertexMask from, VertexMask to) {
  for (VertexMask m = from; m; m &= m - 1)
    if ((t.out_mask(std::countr_zero(m)) & to) != to) return false;
  return true;
}

void require_tournament(const Structure& t) {
  if (!is_class(t, ClassTag::Tournament))
    throw Error(Errc::NotATournament, "input is not a tournament");
  if (t.order() > kMaxCanonicalOrder)
    throw Error(Errc::OrderTooLarge, "exhaustive search above order 16");
}

}  // namespace

std::optional<PartitionCert> abc_partition(const Structure& t, int a, std::optional<int> b,
                                           int c) {
  require_tournament(t);
  require_nonnegative(a, "a");
  require_nonnegative(c, "c");
  if (b) require_nonnegative(*b, "b");
  const int n = t.order();
  const VertexMask all = t.all_vertices();
  std::optional<PartitionCert> cert;
  for (int sa = 0; sa <= std::min(a, n) && !cert; ++sa) {
    for_each_subset(all, sa, [&](VertexMask am) {
      const VertexMask rest = all & ~am;
      for (int sc = 0; sc <= std::min(c, n - sa); ++sc) {
        if (b && n - sa - sc > *b) continue;
        bool hit = for_each_subset(rest, sc, [&](VertexMask cm) {
          const VertexMask bm = rest & ~cm;
          const auto bl = to_list(bm);
          if (!is_transitive_tournament(t, bl)) return false;
          if (!beats_all(t, am, bm) || !beats_all(t, bm, cm)) return false;
          cert = PartitionCert{to_list(am), bl, to_list(cm)};
          return true;
        });
        if (hit) return true;
      }
      return false;
    });
  }
  return cert;
}

bool verify_partition(const Structure& t, const PartitionCert& cert, int a, std::optional<int> b,
                      int c) {
  const int n = t.order();
  std::vector<int> owner(n, 0);
  for (const auto* part : {&cert.a, &cert.b, &cert.c})
    for (int v : *part) {
      if (v < 0 || v >= n) return false;
      ++owner[v];
    }
  for (int k : owner)
    if (k != 1) return false;
  if (static_cast<int>(cert.a.size()) > a || static_cast<int>(cert.c.size()) > c) return false;
  if (b && static_cast<int>(cert.b.size()) > *b) return false;
  if (!is_transitive_tournament(t, cert.b)) return false;
  for (int x : cert.a)
    for (int y : cert.b)
      if (!t.arc(x, y) || t.arc(y, x)) return false;
  for (int y : cert.b)
    for (int z : cert.c)
      if (!t.arc(y, z) || t.arc(z, y)) return false;
  return true;
}

std::vector<std::vector<int>> homogeneous_blocks(const Structure& g) {
  if (!is_class(g, ClassTag::Graph)) throw Error(Errc::NotAGraph, "input is not a graph");
  const int n = g.order();
  std::vector<std::vector<int>> blocks;
  VertexMask assigned = 0;
  for (int x = 0; x < n; ++x) {
    if (assigned & bit(x)) continue;
    std::vector<int> block{x};
    for (int y = x + 1; y < n; ++y) {
      if (assigned & bit(y)) continue;
      if ((g.out_mask(x) & ~bit(y)) == (g.out_mask(y) & ~bit(x))) {
        block.push_back(y);
        assigned |= bit(y);
      }
    }
    assigned |= bit(x);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<int> max_transitive(const Structure& t) {
  require_tournament(t);
  const int n = t.order();
  std::vector<int> chosen;
  // Extends a transitive set in lexicographic order; transitivity is
  // hereditary, so infeasible prefixes are cut immediately.
  auto search = [&](auto&& self, int start, int size, VertexMask set) -> bool {
    if (static_cast<int>(chosen.size()) == size) return true;
    const int need = size - static_cast<int>(chosen.size());
    for (int x = start; x <= n - need; ++x) {
      const VertexMask below = t.in_mask(x) & set;
      const VertexMask above = t.out_mask(x) & set;
      bool ok = true;
      for (VertexMask m = below; m && ok; m &= m - 1)
        ok = (above & ~t.out_mask(std::countr_zero(m))) == 0;
      if (!ok) continue;
      chosen.push_back(x);
      if (self(self, x + 1, size, set | bit(x))) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (int size = n; size > 0; --size) {
    chosen.clear();
    if (search(search, 0, size, 0)) return chosen;
  }
  return {};
}

}  // namespace hespeed

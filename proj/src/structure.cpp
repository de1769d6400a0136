#include "hespeed/structure.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace hespeed {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::KindViolation: return "KindViolation";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::NotAPoset: return "NotAPoset";
    case Errc::NotATournament: return "NotATournament";
    case Errc::NotAGraph: return "NotAGraph";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::VertexInT: return "VertexInT";
    case Errc::ParseError: return "ParseError";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::InvalidProperty: return "InvalidProperty";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::BadPart: return "BadPart";
    case Errc::InsufficientPoints: return "InsufficientPoints";
  }
  return "Unknown";
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::Graph: return "graph";
    case ClassTag::Poset: return "poset";
    case ClassTag::Oriented: return "oriented";
    case ClassTag::Tournament: return "tournament";
    case ClassTag::Digraph: return "digraph";
  }
  return "?";
}

std::optional<ClassTag> parse_class_tag(std::string_view text) {
  for (auto tag : {ClassTag::Graph, ClassTag::Poset, ClassTag::Oriented, ClassTag::Tournament,
                   ClassTag::Digraph}) {
    if (to_string(tag) == text) return tag;
  }
  return std::nullopt;
}

std::vector<ClassTag> ClassSet::tags() const {
  std::vector<ClassTag> out;
  for (auto tag : {ClassTag::Graph, ClassTag::Poset, ClassTag::Oriented, ClassTag::Tournament,
                   ClassTag::Digraph}) {
    if (contains(tag)) out.push_back(tag);
  }
  return out;
}

namespace {

void check_order(int order) {
  if (order < 0) throw Error(Errc::LengthMismatch, "negative order");
  if (order > kMaxOrder) {
    throw Error(Errc::OrderTooLarge,
                "order " + std::to_string(order) + " exceeds " + std::to_string(kMaxOrder));
  }
}

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// First violation of tag's invariants, or empty when none.
std::string violation(const Structure& s, ClassTag tag) {
  const int n = s.order();
  switch (tag) {
    case ClassTag::Digraph:
      return {};
    case ClassTag::Graph:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto c = s.rel(i, j);
          if (c == EdgeCode::Forward || c == EdgeCode::Backward)
            return "single arc on pair " + pair_name(i, j) + " in a graph";
        }
      return {};
    case ClassTag::Tournament:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto c = s.rel(i, j);
          if (c == EdgeCode::None || c == EdgeCode::Both)
            return "pair " + pair_name(i, j) + " is not oriented in a tournament";
        }
      return {};
    case ClassTag::Oriented:
    case ClassTag::Poset:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (s.rel(i, j) == EdgeCode::Both) return "double arc on pair " + pair_name(i, j);
      if (tag == ClassTag::Poset) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (!s.arc(i, j)) continue;
            VertexMask missing = s.out_mask(j) & ~s.out_mask(i);
            if (missing) {
              int k = std::countr_zero(missing);
              return "intransitive triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(k) + ")";
            }
          }
      }
      return {};
  }
  return {};
}

}  // namespace

Structure Structure::build(int order, std::span<const EdgeCode> codes,
                           std::optional<ClassTag> kind_hint) {
  check_order(order);
  if (codes.size() != pair_count(order)) {
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(pair_count(order)) +
                                          " codes for order " + std::to_string(order) + ", got " +
                                          std::to_string(codes.size()));
  }
  Structure s;
  s.order_ = order;
  s.codes_.assign(codes.begin(), codes.end());
  for (auto c : s.codes_) {
    if (static_cast<unsigned>(c) > 3u) throw Error(Errc::ParseError, "edge code out of range");
  }
  s.derive_masks();
  if (kind_hint) {
    check_class(s, *kind_hint);
    s.kind_hint_ = kind_hint;
  }
  return s;
}

Structure Structure::from_masks(int order, std::span<const VertexMask> out) {
  check_order(order);
  if (out.size() < static_cast<std::size_t>(order)) {
    throw Error(Errc::LengthMismatch, "mask span shorter than order");
  }
  std::vector<EdgeCode> codes(pair_count(order));
  std::size_t p = 0;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) {
      unsigned fwd = (out[i] >> j) & 1u;
      unsigned bwd = (out[j] >> i) & 1u;
      codes[p++] = static_cast<EdgeCode>(fwd | (bwd << 1));
    }
  return build(order, codes);
}

void Structure::derive_masks() {
  out_.assign(order_, 0);
  in_.assign(order_, 0);
  std::size_t p = 0;
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j) {
      auto c = static_cast<unsigned>(codes_[p++]);
      if (c & 1u) {
        out_[i] |= VertexMask{1} << j;
        in_[j] |= VertexMask{1} << i;
      }
      if (c & 2u) {
        out_[j] |= VertexMask{1} << i;
        in_[i] |= VertexMask{1} << j;
      }
    }
}

Structure Structure::with_hint(std::optional<ClassTag> hint) const {
  if (hint) check_class(*this, *hint);
  Structure copy = *this;
  copy.kind_hint_ = hint;
  return copy;
}

bool is_class(const Structure& s, ClassTag tag) { return violation(s, tag).empty(); }

void check_class(const Structure& s, ClassTag tag) {
  auto v = violation(s, tag);
  if (!v.empty()) {
    throw Error(Errc::KindViolation, std::string(to_string(tag)) + ": " + v);
  }
}

ClassSet classify(const Structure& s) {
  ClassSet set;
  set.insert(ClassTag::Digraph);
  if (is_class(s, ClassTag::Graph)) set.insert(ClassTag::Graph);
  if (is_class(s, ClassTag::Oriented)) {
    set.insert(ClassTag::Oriented);
    if (is_class(s, ClassTag::Tournament)) set.insert(ClassTag::Tournament);
    if (is_class(s, ClassTag::Poset)) set.insert(ClassTag::Poset);
  }
  return set;
}

Structure induced(const Structure& s, std::span<const int> subset) {
  const int n = s.order();
  VertexMask seen = 0;
  for (int v : subset) {
    if (v < 0 || v >= n) {
      throw Error(Errc::IndexOutOfRange,
                  "vertex " + std::to_string(v) + " not below order " + std::to_string(n));
    }
    if (seen & (VertexMask{1} << v)) {
      throw Error(Errc::DuplicateVertex, "vertex " + std::to_string(v) + " repeated");
    }
    seen |= VertexMask{1} << v;
  }
  const int k = static_cast<int>(subset.size());
  std::vector<EdgeCode> codes(pair_count(k));
  std::size_t p = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) codes[p++] = s.rel(subset[a], subset[b]);
  return Structure::build(k, codes);
}

Structure induced_mask(const Structure& s, VertexMask subset) {
  std::vector<int> vs;
  for (VertexMask m = subset; m; m &= m - 1) vs.push_back(std::countr_zero(m));
  return induced(s, vs);
}

Structure remove_vertex(const Structure& s, int v) {
  std::vector<int> vs;
  vs.reserve(s.order());
  for (int i = 0; i < s.order(); ++i)
    if (i != v) vs.push_back(i);
  if (v < 0 || v >= s.order()) throw Error(Errc::IndexOutOfRange, "vertex out of range");
  return induced(s, vs);
}

Structure relabel(const Structure& s, std::span<const int> perm) {
  const int n = s.order();
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::LengthMismatch, "permutation length differs from order");
  }
  std::vector<int> inverse(n, -1);
  for (int v = 0; v < n; ++v) {
    if (perm[v] < 0 || perm[v] >= n) throw Error(Errc::IndexOutOfRange, "bad permutation entry");
    if (inverse[perm[v]] != -1) throw Error(Errc::DuplicateVertex, "permutation not bijective");
    inverse[perm[v]] = v;
  }
  return induced(s, inverse).with_hint(s.kind_hint());
}

Structure extend(const Structure& s, std::span<const EdgeCode> new_rel) {
  const int n = s.order();
  if (new_rel.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::LengthMismatch, "extension vector length differs from order");
  }
  std::vector<EdgeCode> codes(pair_count(n + 1));
  std::size_t p = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) codes[p++] = (j == n) ? new_rel[i] : s.rel(i, j);
  return Structure::build(n + 1, codes);
}

EdgeSplit split_edges(const Structure& s) {
  const auto n = s.order();
  std::vector<EdgeCode> single(pair_count(n)), dbl(pair_count(n)), non(pair_count(n));
  auto codes = s.codes();
  for (std::size_t p = 0; p < codes.size(); ++p) {
    auto c = codes[p];
    single[p] = (c == EdgeCode::Forward || c == EdgeCode::Backward) ? EdgeCode::Both : EdgeCode::None;
    dbl[p] = (c == EdgeCode::Both) ? EdgeCode::Both : EdgeCode::None;
    non[p] = (c == EdgeCode::None) ? EdgeCode::Both : EdgeCode::None;
  }
  return {Structure::build(n, single, ClassTag::Graph), Structure::build(n, dbl, ClassTag::Graph),
          Structure::build(n, non, ClassTag::Graph)};
}

Structure comparability_graph(const Structure& poset) {
  if (!is_class(poset, ClassTag::Poset)) {
    throw Error(Errc::NotAPoset, violation(poset, ClassTag::Poset));
  }
  std::vector<EdgeCode> codes(poset.codes().size());
  std::transform(poset.codes().begin(), poset.codes().end(), codes.begin(),
                 [](EdgeCode c) { return c == EdgeCode::None ? EdgeCode::None : EdgeCode::Both; });
  return Structure::build(poset.order(), codes, ClassTag::Graph);
}

std::size_t edge_count(const Structure& s, EdgeCode code) {
  return static_cast<std::size_t>(std::count(s.codes().begin(), s.codes().end(), code));
}

std::string encode(const Structure& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  auto codes = s.codes();
  std::string out = "D" + std::to_string(s.order()) + ":";
  out.reserve(out.size() + (codes.size() + 1) / 2);
  for (std::size_t p = 0; p < codes.size(); p += 2) {
    unsigned hi = static_cast<unsigned>(codes[p]);
    unsigned lo = p + 1 < codes.size() ? static_cast<unsigned>(codes[p + 1]) : 0u;
    out.push_back(kHex[(hi << 2) | lo]);
  }
  return out;
}

Structure decode(std::string_view text) {
  auto fail = [&](std::size_t offset, const std::string& what) -> Error {
    return Error(Errc::ParseError, what + " at byte offset " + std::to_string(offset));
  };
  if (text.empty() || text[0] != 'D') throw fail(0, "expected 'D'");
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw fail(text.size(), "expected ':'");
  if (colon == 1) throw fail(1, "expected decimal order");
  int order = 0;
  auto digits = text.substr(1, colon - 1);
  if (digits[0] < '0' || digits[0] > '9') throw fail(1, "expected decimal order");
  if (digits.size() > 1 && digits[0] == '0') throw fail(1, "leading zero in order");
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw fail(1 + static_cast<std::size_t>(ptr - digits.data()), "bad decimal order");
  }
  if (order > kMaxOrder) throw Error(Errc::OrderTooLarge, "order " + std::to_string(order));
  const std::size_t pairs = pair_count(order);
  const std::size_t nibbles = (pairs + 1) / 2;
  auto hex = text.substr(colon + 1);
  if (hex.size() != nibbles) {
    throw fail(colon + 1 + std::min(hex.size(), nibbles),
               "expected " + std::to_string(nibbles) + " hex digits");
  }
  std::vector<EdgeCode> codes(pairs);
  for (std::size_t i = 0; i < nibbles; ++i) {
    char ch = hex[i];
    unsigned v;
    if (ch >= '0' && ch <= '9') {
      v = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'A' && ch <= 'F') {
      v = static_cast<unsigned>(ch - 'A' + 10);
    } else {
      throw fail(colon + 1 + i, "expected uppercase hex digit");
    }
    codes[2 * i] = static_cast<EdgeCode>(v >> 2);
    if (2 * i + 1 < pairs) {
      codes[2 * i + 1] = static_cast<EdgeCode>(v & 3u);
    } else if (v & 3u) {
      throw fail(colon + 1 + i, "nonzero padding bits");
    }
  }
  return Structure::build(order, codes);
}

Structure empty_structure(int order, std::optional<ClassTag> hint) {
  std::vector<EdgeCode> codes(pair_count(order), EdgeCode::None);
  return Structure::build(order, codes, hint);
}

Structure chain(int order) {
  std::vector<EdgeCode> codes(pair_count(order), EdgeCode::Forward);
  return Structure::build(order, codes, ClassTag::Poset);
}

Structure antichain(int order) { return empty_structure(order, ClassTag::Poset); }

Structure complete_graph(int order) {
  std::vector<EdgeCode> codes(pair_count(order), EdgeCode::Both);
  return Structure::build(order, codes, ClassTag::Graph);
}

}  // namespace hespeed

#include "hespeed/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "extension.hpp"

namespace hespeed {

namespace {

constexpr std::string_view kEngineVersion = "hespeed-levels-1";

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = kDigits[v & 15u];
  return s;
}

// Isomorphism-invariant text for a structure of any order.
std::string invariant_text(const Structure& s) {
  if (s.order() <= kMaxCanonicalOrder) return canonical_form(s).text();
  return encode(s);
}

std::string list_text(const std::vector<Structure>& list) {
  std::vector<std::string> texts;
  texts.reserve(list.size());
  for (const auto& s : list) texts.push_back(invariant_text(s));
  std::sort(texts.begin(), texts.end());
  texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
  std::string out = "[";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) out += ',';
    out += texts[i];
  }
  return out + "]";
}

bool class_includes(ClassTag outer, ClassTag inner) {
  if (outer == inner || outer == ClassTag::Digraph) return true;
  return outer == ClassTag::Oriented &&
         (inner == ClassTag::Poset || inner == ClassTag::Tournament);
}

}  // namespace

// ---------------------------------------------------------------------------
// PropertySpec

PropertySpec PropertySpec::all(ClassTag tag) {
  PropertySpec p;
  p.mode = Mode::All;
  p.tag = tag;
  return p;
}

PropertySpec PropertySpec::forbidden(ClassTag tag, std::vector<Structure> list) {
  PropertySpec p;
  p.mode = Mode::Forbidden;
  p.tag = tag;
  p.structures = std::move(list);
  p.validate();
  return p;
}

PropertySpec PropertySpec::named(Family family) {
  return named(family, family.natural_class());
}

PropertySpec PropertySpec::named(Family family, ClassTag tag) {
  PropertySpec p;
  p.mode = Mode::Named;
  p.tag = tag;
  p.family = family;
  p.validate();
  return p;
}

PropertySpec PropertySpec::down_closure(ClassTag tag, std::vector<Structure> generators) {
  PropertySpec p;
  p.mode = Mode::DownClosure;
  p.tag = tag;
  p.structures = std::move(generators);
  p.validate();
  return p;
}

void PropertySpec::validate() const {
  switch (mode) {
    case Mode::All: return;
    case Mode::Named:
      if (family.id == FamilyId::QK && family.param < 0)
        throw Error(Errc::InvalidProperty, "QK needs K >= 0");
      return;
    case Mode::Forbidden:
    case Mode::DownClosure:
      if (structures.empty())
        throw Error(Errc::InvalidProperty, mode == Mode::Forbidden ? "empty forbidden list"
                                                                   : "empty generator list");
      for (const auto& s : structures) {
        if (!is_class(s, tag)) {
          throw Error(Errc::InvalidProperty,
                      encode(s) + " is not a " + std::string(to_string(tag)));
        }
      }
      return;
  }
}

bool PropertySpec::admits(const Structure& s) const {
  switch (mode) {
    case Mode::All: return true;
    case Mode::Named: return member_of(family, s);
    case Mode::Forbidden:
      for (const auto& f : structures)
        if (f.order() <= s.order() && contains_induced(s, f)) return false;
      return true;
    case Mode::DownClosure:
      for (const auto& g : structures)
        if (g.order() >= s.order() && contains_induced(g, s)) return true;
      return false;
  }
  return false;
}

std::string PropertySpec::describe() const {
  std::string head(to_string(tag));
  switch (mode) {
    case Mode::All: return "all " + head;
    case Mode::Named: return "named " + head + " " + family.name();
    case Mode::Forbidden: return "forbid " + head + " " + list_text(structures);
    case Mode::DownClosure: return "closure " + head + " " + list_text(structures);
  }
  return head;
}

std::uint64_t PropertySpec::hash() const {
  std::string key(kEngineVersion);
  key += '|';
  key += describe();
  return fnv1a(key);
}

// ---------------------------------------------------------------------------
// Enumerator

int default_order_limit(ClassTag tag) {
  return tag == ClassTag::Digraph || tag == ClassTag::Oriented ? 10 : 12;
}

Enumerator::Enumerator(PropertySpec property, EnumOptions options)
    : property_(std::move(property)), options_(std::move(options)) {
  property_.validate();
  if (options_.jobs < 1) throw Error(Errc::IndexOutOfRange, "jobs must be at least 1");
  if (options_.limit_order > kMaxCanonicalOrder) {
    throw Error(Errc::OrderTooLarge, "order limit above " + std::to_string(kMaxCanonicalOrder));
  }
  limit_ = options_.limit_order > 0 ? options_.limit_order : default_order_limit(property_.tag);

  // Members of a named family or a closure all lie in a narrower class;
  // generating inside it is exact and avoids most canonicalisations.
  gen_tag_ = property_.tag;
  std::optional<ClassTag> narrow;
  if (property_.mode == PropertySpec::Mode::Named) narrow = property_.family.natural_class();
  if (property_.mode == PropertySpec::Mode::DownClosure)
    narrow = detail::common_class(property_.structures);
  if (narrow && class_includes(property_.tag, *narrow)) gen_tag_ = *narrow;

  levels_.push_back({Member{CanonicalCode(0, {}), 1}});
}

const std::vector<Member>& Enumerator::level(int n) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "negative order");
  if (n > limit_) {
    throw Error(Errc::OrderTooLarge, "order " + std::to_string(n) + " exceeds the " +
                                         std::string(to_string(property_.tag)) + " limit " +
                                         std::to_string(limit_));
  }
  while (static_cast<int>(levels_.size()) <= n) {
    const int m = static_cast<int>(levels_.size());
    auto cached = load_cached(m);
    if (cached) {
      levels_.push_back(std::move(*cached));
    } else {
      levels_.push_back(extend_level(m));
      store_cached(m, levels_.back());
    }
  }
  return levels_[n];
}

std::vector<Member> Enumerator::extend_level(int n) {
  const auto& parents = levels_[n - 1];
  const auto alphabet = detail::alphabet_for(gen_tag_);
  const bool poset = gen_tag_ == ClassTag::Poset;
  const bool named = property_.mode == PropertySpec::Mode::Named;
  const bool cheap = named && property_.family.cheap();
  const bool trivial = property_.mode == PropertySpec::Mode::All || cheap;

  // Per worker: code -> automorphism count, 0 when the code was rejected.
  using LocalMap = std::unordered_map<CanonicalCode, std::uint64_t>;
  auto work = [&](std::atomic<std::size_t>& next, LocalMap& seen) {
    for (std::size_t i = next++; i < parents.size(); i = next++) {
      const Structure parent = parents[i].code.structure();
      detail::for_each_extension(n - 1, parent.out_masks(), alphabet,
                                 [&](std::span<const VertexMask> out) {
                                   if (poset && !detail::extension_is_poset(n, out)) return;
                                   if (cheap && !member_of_masks(property_.family, n, out))
                                     return;
                                   Canonical c = canonicalize_masks(n, out);
                                   auto [it, inserted] = seen.try_emplace(c.code, 0);
                                   if (!inserted) return;
                                   if (trivial || property_.admits(c.code.structure()))
                                     it->second = c.automorphisms;
                                 });
    }
  };

  const int jobs = std::max(1, std::min<int>(options_.jobs, static_cast<int>(parents.size())));
  std::vector<LocalMap> maps(jobs);
  std::atomic<std::size_t> next{0};
  if (jobs == 1) {
    work(next, maps[0]);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int j = 0; j < jobs; ++j) {
      threads.emplace_back([&, j] {
        try {
          work(next, maps[j]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = parents.size();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Member> members;
  for (const auto& map : maps)
    for (const auto& [code, aut] : map)
      if (aut != 0) members.push_back({code, aut});
  std::sort(members.begin(), members.end(),
            [](const Member& a, const Member& b) { return a.code < b.code; });
  members.erase(std::unique(members.begin(), members.end(),
                            [](const Member& a, const Member& b) { return a.code == b.code; }),
                members.end());
  return members;
}

// ---------------------------------------------------------------------------
// Level cache: header, one canonical text per line, then a footer with the
// member count and an FNV digest of the body.

std::filesystem::path Enumerator::cache_path(int n) const {
  return *options_.cache_dir / (std::string(to_string(property_.tag)) + "-n" +
                                std::to_string(n) + "-" + hex64(property_.hash()) + ".lvl");
}

namespace {

std::string cache_header(ClassTag tag, int n, std::uint64_t hash) {
  return "#class=" + std::string(to_string(tag)) + " n=" + std::to_string(n) +
         " property=" + hex64(hash);
}

}  // namespace

std::optional<std::vector<Member>> Enumerator::load_cached(int n) const {
  if (!options_.cache_dir || n == 0) return std::nullopt;
  std::ifstream in(cache_path(n));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != cache_header(property_.tag, n, property_.hash()))
    return std::nullopt;
  std::vector<Member> members;
  std::uint64_t digest = 0xcbf29ce484222325ull;
  try {
    while (std::getline(in, line)) {
      if (line.starts_with("#count=")) {
        std::ostringstream expect;
        expect << "#count=" << members.size() << " digest=" << hex64(digest);
        if (line != expect.str()) return std::nullopt;
        return members;
      }
      digest = fnv1a(line + "\n", digest);
      Structure s = decode(line);
      if (s.order() != n || !is_class(s, property_.tag)) return std::nullopt;
      Canonical c = canonicalize(s);
      if (c.code.text() != line) return std::nullopt;
      if (!members.empty() && !(members.back().code < c.code)) return std::nullopt;
      members.push_back({c.code, c.automorphisms});
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;  // missing footer: truncated file
}

void Enumerator::store_cached(int n, const std::vector<Member>& members) const {
  if (!options_.cache_dir || n == 0) return;
  std::error_code ec;
  std::filesystem::create_directories(*options_.cache_dir, ec);
  if (ec) return;
  const auto path = cache_path(n);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << cache_header(property_.tag, n, property_.hash()) << '\n';
    std::uint64_t digest = 0xcbf29ce484222325ull;
    for (const auto& m : members) {
      std::string line = m.code.text() + "\n";
      digest = fnv1a(line, digest);
      out << line;
    }
    out << "#count=" << members.size() << " digest=" << hex64(digest) << '\n';
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
}

// ---------------------------------------------------------------------------
// Speeds

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<CanonicalCode> enumerate_class(ClassTag tag, int n,
                                           const std::optional<PropertySpec>& property,
                                           const EnumOptions& options) {
  if (property && property->tag != tag) {
    throw Error(Errc::InvalidProperty, "property is over " + std::string(to_string(property->tag)) +
                                           ", not " + std::string(to_string(tag)));
  }
  Enumerator e(property ? *property : PropertySpec::all(tag), options);
  std::vector<CanonicalCode> codes;
  for (const auto& m : e.level(n)) codes.push_back(m.code);
  return codes;
}

std::uint64_t unlabelled_speed(const PropertySpec& property, int n, const EnumOptions& options) {
  Enumerator e(property, options);
  return e.level(n).size();
}

BigInt labelled_speed(const PropertySpec& property, int n, const EnumOptions& options) {
  Enumerator e(property, options);
  return speed_sequence(e, n, n).front().labelled;
}

SpeedSequence speed_sequence(Enumerator& enumerator, int lo, int hi) {
  if (hi > enumerator.order_limit()) {
    throw Error(Errc::OrderTooLarge, "order " + std::to_string(hi) + " exceeds the " +
                                         std::string(to_string(enumerator.property().tag)) +
                                         " limit " + std::to_string(enumerator.order_limit()));
  }
  SpeedSequence seq;
  for (int n = lo; n <= hi; ++n) {
    const auto& members = enumerator.level(n);
    const BigInt nf = factorial(n);
    SpeedPoint p;
    p.n = n;
    p.unlabelled = members.size();
    for (const auto& m : members) p.labelled += nf / m.automorphisms;
    if (BigInt(p.unlabelled) > p.labelled || p.labelled > nf * p.unlabelled) {
      throw std::logic_error("speed sandwich violated at n=" + std::to_string(n));
    }
    seq.push_back(std::move(p));
  }
  return seq;
}

SpeedSequence speed_sequence(const PropertySpec& property, int n_max, const EnumOptions& options) {
  Enumerator e(property, options);
  return speed_sequence(e, 1, n_max);
}

}  // namespace hespeed

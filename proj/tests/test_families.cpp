#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hespeed/canonical.hpp"
#include "hespeed/enumerate.hpp"
#include "hespeed/families.hpp"
#include "oracles.hpp"

using namespace hespeed;

namespace {

constexpr auto F = EdgeCode::Forward;
constexpr auto B = EdgeCode::Backward;

Structure cyclic_triangle() { return Structure::build(3, std::vector{F, B, F}); }

std::vector<int> outdegrees(const Structure& s) {
  std::vector<int> d;
  for (int v = 0; v < s.order(); ++v) d.push_back(std::popcount(s.out_mask(v)));
  std::sort(d.rbegin(), d.rend());
  return d;
}

std::set<CanonicalCode> codes_of(const std::vector<Structure>& list, int n) {
  std::set<CanonicalCode> out;
  for (const auto& s : list)
    if (s.order() == n) out.insert(canonical_form(s));
  return out;
}

std::set<CanonicalCode> enumerated(const PropertySpec& spec, int n) {
  std::set<CanonicalCode> out;
  Enumerator e(spec);
  for (const auto& m : e.level(n)) out.insert(m.code);
  return out;
}

// Compositions of n into parts 1 and 2.
void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& all) {
  if (n == 0) {
    all.push_back(cur);
    return;
  }
  for (int part : {1, 2}) {
    if (part > n) continue;
    cur.push_back(part);
    compositions(n - part, cur, all);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("poset builders") {
  CHECK(two_chains(3, 0) == chain(3));
  CHECK(automorphism_count(two_chains(2, 2)) == 2);
  auto g = comparability_graph(two_chains(2, 1));
  CHECK(g.arc(0, 1));
  CHECK(!g.arc(0, 2));
  CHECK(!g.arc(1, 2));

  CHECK(matching_poset(0, 5) == antichain(5));
  auto m = comparability_graph(matching_poset(2, 0));
  CHECK(edge_count(m, EdgeCode::Both) == 2);
  for (int v = 0; v < 4; ++v) CHECK(std::popcount(m.out_mask(v)) == 1);

  CHECK(cochain_poset(std::vector{1, 1, 1}) == chain(3));
  CHECK(cochain_poset(std::vector{2}) == antichain(2));
  CHECK_THROWS_AS(cochain_poset(std::vector{1, 3}), Error);
  try {
    cochain_poset(std::vector{0});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadPart);
  }

  std::vector<int> cur;
  std::vector<std::vector<int>> comps;
  compositions(5, cur, comps);
  CHECK(comps.size() == 8);
  std::set<CanonicalCode> fib;
  for (const auto& c : comps) fib.insert(canonical_form(cochain_poset(c)));
  CHECK(fib.size() == 8);

  auto star = comparability_graph(layered_poset(1, 4));
  CHECK(std::popcount(star.out_mask(0)) == 4);
  for (int v = 1; v < 5; ++v) CHECK(std::popcount(star.out_mask(v)) == 1);
  CHECK(layered_poset(0, 4) == antichain(4));
  CHECK(automorphism_count(layered_poset(2, 3)) == 12);

  for (auto s : {two_chains(4, 2), matching_poset(3, 2), cochain_poset(std::vector{2, 1, 2}),
                 layered_poset(3, 3)})
    CHECK(is_class(s, ClassTag::Poset));
}

TEST_CASE("tournament builders") {
  CHECK(transitive_tournament(1).order() == 1);
  CHECK(transitive_tournament(3) == chain(3));
  for (int k = 1; k <= 6; ++k) {
    CHECK(g1(k).order() == 2 * k + 1);
    CHECK(g2(k).order() == 2 * k + 2);
    CHECK(g3(k).order() == 2 * k + 2);
    CHECK(g4(k).order() == 2 * k + 3);
    for (int i = 1; i <= 4; ++i) CHECK(is_class(g_family(i, k), ClassTag::Tournament));
    CHECK(remove_vertex(g1(k), 2 * k) == transitive_tournament(2 * k));
  }
  // Arcs into the special vertex, 0-based.
  auto t = g4(3);
  std::vector<int> beats;
  for (int i = 0; i < 8; ++i)
    if (t.arc(i, 8)) beats.push_back(i);
  CHECK(beats == std::vector{0, 1, 2, 4});

  CHECK(distinct_induced_count(g1(4), 4) == 2);
  CHECK(distinct_induced_count(g2(5), 5) == 4);
}

TEST_CASE("g1 subtournament outdegree sequences") {
  // s vertices from the first half, t = k-s-1 from the second, and the
  // special vertex: outdegrees {t+s-1..t} + {t..1} + {s}.
  const int k = 5;
  for (int s = 1; s <= k - 3; ++s) {
    const int t = k - s - 1;
    std::vector<int> pick;
    for (int i = 0; i < s; ++i) pick.push_back(i);
    for (int i = 0; i < t; ++i) pick.push_back(k + i);
    pick.push_back(2 * k);
    std::vector<int> expect;
    for (int d = t + s - 1; d >= t; --d) expect.push_back(d);
    for (int d = t; d >= 1; --d) expect.push_back(d);
    expect.push_back(s);
    std::sort(expect.rbegin(), expect.rend());
    CHECK(outdegrees(induced(g1(k), pick)) == expect);
    CHECK(expect.front() == k - 2);
  }
}

TEST_CASE("g1: the s = 1 and s = k-2 subtournaments are isomorphic") {
  for (int k = 4; k <= 7; ++k) {
    auto sub = [k](int s) {
      std::vector<int> pick;
      for (int i = 0; i < s; ++i) pick.push_back(i);
      for (int i = 0; i < k - s - 1; ++i) pick.push_back(k + i);
      pick.push_back(2 * k);
      return induced(g1(k), pick);
    };
    CHECK(are_isomorphic(sub(1), sub(k - 2)));
  }
}

TEST_CASE("family catalogue parsing") {
  CHECK(Family::parse("QK(2)") == Family{FamilyId::QK, 2});
  CHECK(Family::parse("QK(2)").name() == "QK(2)");
  for (auto name : family_names()) {
    if (name == "QK(K)") continue;
    CHECK(Family::parse(name).name() == name);
  }
  for (const char* bad : {"q", "QK", "QK()", "QK(-1)", "QK(1", "P5", ""}) {
    CAPTURE(bad);
    try {
      Family::parse(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnknownFamily);
    }
  }
}

TEST_CASE("membership examples") {
  const auto qk2 = Family::parse("QK(2)");
  CHECK(member_of(qk2, layered_poset(2, 5)));
  CHECK_FALSE(member_of(qk2, layered_poset(3, 4)));
  CHECK(member_of(Family::parse("Rbip"), antichain(5)));
  // g1(1) is itself the cyclic triangle.
  CHECK(are_isomorphic(g1(1), cyclic_triangle()));
  CHECK(member_of(Family::parse("P1"), cyclic_triangle()));
  CHECK(member_of(Family::parse("P1"), transitive_tournament(6)));
  CHECK_FALSE(member_of(Family::parse("Q"), cyclic_triangle()));
}

TEST_CASE("membership agrees with the families generated by the builders, order <= 6") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    std::vector<Structure> q, r, rbar, rbip, g0, cliques, transitive;
    std::vector<std::vector<Structure>> qk(4);
    for (int a = 0; a <= n; ++a) {
      if (a >= n - a) q.push_back(two_chains(a, n - a));
      if (2 * a <= n) {
        r.push_back(matching_poset(a, n - 2 * a));
        auto m = comparability_graph(matching_poset(a, n - 2 * a));
        g0.push_back(m);
      }
      rbip.push_back(layered_poset(a, n - a));
      for (int k = 0; k <= 3; ++k)
        if (a <= k) qk[k].push_back(layered_poset(a, n - a));
      auto two = [&](const Structure& x, const Structure& y) {
        std::vector<VertexMask> out(n, 0);
        for (int v = 0; v < x.order(); ++v) out[v] = x.out_mask(v);
        for (int v = 0; v < y.order(); ++v) out[x.order() + v] = y.out_mask(v) << x.order();
        return Structure::from_masks(n, out);
      };
      cliques.push_back(two(complete_graph(a), complete_graph(n - a)));
      transitive.push_back(two(transitive_tournament(a), transitive_tournament(n - a)));
    }
    std::vector<int> cur;
    std::vector<std::vector<int>> comps;
    compositions(n, cur, comps);
    for (const auto& c : comps) rbar.push_back(cochain_poset(c));

    CHECK(enumerated(PropertySpec::named(Family::parse("Q")), n) == codes_of(q, n));
    CHECK(enumerated(PropertySpec::named(Family::parse("R")), n) == codes_of(r, n));
    CHECK(enumerated(PropertySpec::named(Family::parse("Rbip")), n) == codes_of(rbip, n));
    CHECK(enumerated(PropertySpec::named(Family::parse("G0")), n) == codes_of(g0, n));
    for (int k = 0; k <= 3; ++k)
      CHECK(enumerated(PropertySpec::named(Family{FamilyId::QK, k}), n) == codes_of(qk[k], n));
    CHECK(enumerated(PropertySpec::named(Family::parse("TwoCliques")), n) == codes_of(cliques, n));
    CHECK(enumerated(PropertySpec::named(Family::parse("TwoTransitive")), n) ==
          codes_of(transitive, n));
    // Rbar: incomparability graph of maximum degree <= 1. The compositions
    // give a subset; the complement view gives the oracle.
    auto rbar_codes = enumerated(PropertySpec::named(Family::parse("Rbar")), n);
    for (const auto& c : codes_of(rbar, n)) CHECK(rbar_codes.count(c) == 1);
    for (const auto& code : enumerated(PropertySpec::all(ClassTag::Poset), n)) {
      auto s = code.structure();
      bool ok = true;
      for (int v = 0; v < n; ++v) {
        int incomparable = 0;
        for (int w = 0; w < n; ++w) incomparable += w != v && s.rel(v, w) == EdgeCode::None;
        ok = ok && incomparable <= 1;
      }
      CHECK(rbar_codes.count(code) == (ok ? 1u : 0u));
    }
    // P1..P4: the closure of the generating tournaments.
    for (int i = 1; i <= 4; ++i) {
      std::vector<Structure> gens;
      for (int k = 1; k <= n + 4; ++k) gens.push_back(g_family(i, k));
      auto closure = induced_closure(gens, n)[n];
      auto fam = Family{static_cast<FamilyId>(static_cast<int>(FamilyId::P1) + i - 1), 0};
      CHECK(enumerated(PropertySpec::named(fam), n) ==
            std::set<CanonicalCode>(closure.begin(), closure.end()));
    }
  }
}

TEST_CASE("P(i) closures stabilise: k <= n+3 and k <= n+4 agree, n <= 7") {
  for (int i = 1; i <= 4; ++i) {
    std::vector<Structure> gens;
    for (int k = 1; k <= 11; ++k) gens.push_back(g_family(i, k));
    for (int n = 1; n <= 7; ++n) {
      CAPTURE(i);
      CAPTURE(n);
      std::vector<Structure> a(gens.begin(), gens.begin() + n + 3);
      std::vector<Structure> b(gens.begin(), gens.begin() + n + 4);
      CHECK(induced_closure(a, n)[n] == induced_closure(b, n)[n]);
      // And the single generator g_i(n) already has everything.
      std::vector<Structure> one{g_family(i, n)};
      CHECK(induced_closure(one, n)[n] == induced_closure(b, n)[n]);
    }
  }
}

TEST_CASE("patterns") {
  auto t = transitive_tournament(4);
  std::vector<VertexMask> out(5, 0);
  for (int v = 0; v < 4; ++v) out[v] = t.out_mask(v);
  out[4] = 0b1111;
  auto host = Structure::from_masks(5, out);
  std::vector<int> tv{0, 1, 2, 3};
  CHECK(pattern(host, tv, 4) == PatternVec{1, 1, 1, 1});

  const int k = 3;
  auto g = g1(k);
  std::vector<int> first(2 * k);
  std::iota(first.begin(), first.end(), 0);
  CHECK(pattern(g, first, 2 * k) == PatternVec{1, 1, 1, -1, -1, -1});

  auto isolated = Structure::from_masks(4, std::vector<VertexMask>{0b110, 0b100, 0, 0});
  CHECK(pattern(isolated, std::vector{0, 1, 2}, 3) == PatternVec{0, 0, 0});
  CHECK(pattern(Structure::build(2, std::vector{EdgeCode::Both}), std::vector{0}, 1) ==
        PatternVec{2});

  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  CHECK(code_of([&] { pattern(g, first, 0); }) == Errc::VertexInT);
  CHECK(code_of([&] { pattern(cyclic_triangle(), std::vector{0, 1, 2}, 0); }) == Errc::VertexInT);
  CHECK(code_of([&] {
          pattern(g1(2), std::vector{0, 2, 4}, 1);
        }) == Errc::NotTransitive);
}

TEST_CASE("non-transitive patterns") {
  auto trans = PropertySpec::down_closure(ClassTag::Tournament, {transitive_tournament(8)});
  for (int n = 1; n <= 5; ++n) CHECK(nontransitive_patterns(trans, n, {}).empty());

  auto all = nontransitive_patterns(PropertySpec::all(ClassTag::Tournament), 2, {});
  CHECK(all == std::vector<PatternVec>{{1, -1}});

  auto p1 = nontransitive_patterns(PropertySpec::named(Family::parse("P1")), 4, {});
  CHECK(!p1.empty());
  for (const auto& z : p1) {
    // (1^a, -1^b): ones first, then minus ones.
    auto split = std::find(z.begin(), z.end(), -1);
    CHECK(std::all_of(z.begin(), split, [](int x) { return x == 1; }));
    CHECK(std::all_of(split, z.end(), [](int x) { return x == -1; }));
  }
  // Independent check: every pattern of length 2 over {-1, 1} that closes a
  // cycle with T_2 (v_1 -> v_2).
  std::set<PatternVec> brute;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      std::vector<VertexMask> out{0b010, 0, 0};
      if (a == 1) out[2] |= 1; else out[0] |= 4;
      if (b == 1) out[2] |= 2; else out[1] |= 4;
      auto s = Structure::from_masks(3, out);
      if (!is_transitive_tournament(s, std::vector{0, 1, 2})) brute.insert({a, b});
    }
  CHECK(std::vector<PatternVec>(brute.begin(), brute.end()) == all);
}

TEST_CASE("abc partitions") {
  auto t6 = transitive_tournament(6);
  auto c = abc_partition(t6, 0, std::nullopt, 0);
  REQUIRE(c);
  CHECK(c->b.size() == 6);
  CHECK_FALSE(abc_partition(cyclic_triangle(), 0, std::nullopt, 0));
  auto tri = abc_partition(cyclic_triangle(), 1, std::nullopt, 1);
  REQUIRE(tri);
  CHECK(tri->a == std::vector{0});
  CHECK(tri->b == std::vector{1});
  CHECK(tri->c == std::vector{2});
  CHECK_THROWS_AS(abc_partition(antichain(3), 1, std::nullopt, 1), Error);

  // Certificates verify; absence agrees with an exhaustive labelling search.
  std::mt19937_64 rng(17);
  for (int it = 0; it < 150; ++it) {
    const int n = 1 + static_cast<int>(rng() % 7);
    auto s = oracle::random_structure(ClassTag::Tournament, n, rng);
    const int a = static_cast<int>(rng() % 3), cc = static_cast<int>(rng() % 3);
    std::optional<int> b;
    if (rng() % 2) b = static_cast<int>(rng() % (n + 1));
    auto cert = abc_partition(s, a, b, cc);
    bool exists = false;
    std::vector<int> label(n, 0);
    while (true) {
      PartitionCert p;
      for (int v = 0; v < n; ++v) (label[v] == 0 ? p.a : label[v] == 1 ? p.b : p.c).push_back(v);
      if (verify_partition(s, p, a, b, cc)) exists = true;
      int i = 0;
      while (i < n && ++label[i] == 3) label[i++] = 0;
      if (i == n || exists) break;
    }
    CHECK(cert.has_value() == exists);
    if (cert) CHECK(verify_partition(s, *cert, a, b, cc));
  }
}

TEST_CASE("homogeneous blocks") {
  CHECK(homogeneous_blocks(complete_graph(5)).size() == 1);
  auto c4 = Structure::from_masks(4, std::vector<VertexMask>{0b1010, 0b0101, 0b1010, 0b0101});
  CHECK(homogeneous_blocks(c4) == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  auto p3 = Structure::from_masks(3, std::vector<VertexMask>{0b010, 0b101, 0b010});
  CHECK(homogeneous_blocks(p3) == std::vector<std::vector<int>>{{0, 2}, {1}});
  CHECK_THROWS_AS(homogeneous_blocks(chain(3)), Error);

  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(rng() % 9);
    auto g = oracle::random_structure(ClassTag::Graph, n, rng);
    auto blocks = homogeneous_blocks(g);
    std::vector<int> seen(n, 0);
    auto twins = [&](int x, int y) {
      return (g.out_mask(x) & ~(VertexMask{1} << y)) == (g.out_mask(y) & ~(VertexMask{1} << x));
    };
    for (const auto& b : blocks) {
      for (int x : b) {
        ++seen[x];
        for (int y : b) CHECK(twins(x, y));
      }
    }
    for (int v = 0; v < n; ++v) CHECK(seen[v] == 1);
    // Maximality: no two blocks can be merged.
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        bool mergeable = true;
        for (int x : blocks[i])
          for (int y : blocks[j]) mergeable = mergeable && twins(x, y);
        CHECK_FALSE(mergeable);
      }
  }
}

TEST_CASE("maximum transitive subtournaments") {
  CHECK(max_transitive(transitive_tournament(6)) == std::vector{0, 1, 2, 3, 4, 5});
  CHECK(max_transitive(cyclic_triangle()).size() == 2);
  CHECK(max_transitive(cyclic_triangle()) == std::vector{0, 1});
  for (const auto& code : enumerate_class(ClassTag::Tournament, 4))
    CHECK(max_transitive(code.structure()).size() >= 3);

  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(rng() % 9);
    auto t = oracle::random_structure(ClassTag::Tournament, n, rng);
    auto best = max_transitive(t);
    CHECK(is_transitive_tournament(t, best));
    // Brute force: lexicographically least among the largest subsets.
    std::vector<int> expect;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      std::vector<int> v;
      for (int i = 0; i < n; ++i)
        if (m >> i & 1u) v.push_back(i);
      if (!is_transitive_tournament(t, v)) continue;
      if (v.size() > expect.size() || (v.size() == expect.size() && v < expect)) expect = v;
    }
    CHECK(best == expect);
  }
}

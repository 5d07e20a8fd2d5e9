#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "weightcell/lp.hpp"

using namespace wct;

namespace {

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

HRep random_hrep(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 5), count(1, 8), coef(-3, 3);
  const std::size_t d = static_cast<std::size_t>(dim(rng));
  std::vector<IntVector> normals;
  for (int k = count(rng); k > 0; --k) {
    IntVector n;
    for (std::size_t i = 0; i < d; ++i) n.emplace_back(coef(rng));
    normals.push_back(n);
  }
  return make_hrep(d, normals);
}

bool satisfies(const HRep& h, const VRep& v) {
  for (const auto& n : h.normals) {
    for (const auto& r : v.rays)
      if (dot(n, r) > 0) return false;
    for (const auto& l : v.lineality)
      if (dot(n, l) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact LP") {
  // max x + y with x <= 2, y <= 3, x + y <= 4
  const RationalMatrix A{{1, 0}, {0, 1}, {1, 1}};
  const auto r = maximize_free(A, {2, 3, 4}, {1, 1});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 4);
  // free variables: max -x with x >= -5 (i.e. -x <= 5)
  const auto r2 = maximize_free({{-1}}, {5}, {-1});
  CHECK(r2.value == 5);
  CHECK(maximize_free({{1}}, {1}, {-1}).status == LpStatus::Unbounded);
  CHECK(rank({{1, 2}, {2, 4}}, 2) == 1);
  CHECK(kernel_basis({{1, 1, 1}}, 3).size() == 2);
  const auto inv = inverse({{2, 1}, {1, 1}});
  CHECK(inv == RationalMatrix{{1, -1}, {-1, 2}});
}

TEST_CASE("cones from circuits") {
  const auto h333 = cone_of_automaton(data_automaton("delta333_lex.json"));
  CHECK(as_set(h333.normals) == std::set<IntVector>{ints({1, 1, 1}), ints({2, 1, 1})});
  CHECK(cone_of_automaton(data_automaton("dihedral_lex.json")).normals == std::vector<IntVector>{ints({1, 1})});
  const auto h246 = cone_of_automaton(data_automaton("delta246_lex.json"));
  CHECK(h246.normals.size() == 5);
  CHECK(as_set(h246.normals).count(ints({2, 3, 3})) == 1);
}

TEST_CASE("redundancy removal") {
  const auto h = cone_of_automaton(data_automaton("delta246_lex.json"));
  const auto rr = remove_redundant_detailed(h);
  CHECK(as_set(rr.irredundant.normals) ==
        std::set<IntVector>{ints({1, 1, 1}), ints({1, 2, 1}), ints({1, 3, 2}), ints({1, 2, 2})});
  CHECK(rr.redundant == std::vector<IntVector>{ints({2, 3, 3})});
  CHECK(remove_redundant(rr.irredundant) == rr.irredundant);

  for (long m = 3; m <= 9; ++m) {
    std::vector<IntVector> family;
    for (long i = 1; i <= m - 1; ++i) family.push_back(ints({i + 1, i}));
    CHECK(as_set(remove_redundant(make_hrep(2, family)).normals) == std::set<IntVector>{ints({2, 1}), ints({m, m - 1})});
  }
  CHECK(make_hrep(2, {ints({2, 2}), ints({1, 1}), ints({3, 3})}).normals == std::vector<IntVector>{ints({1, 1})});

  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    auto hr = random_hrep(rng);
    auto shuffled = hr;
    std::shuffle(shuffled.normals.begin(), shuffled.normals.end(), rng);
    const auto a = remove_redundant(hr), b = remove_redundant(shuffled);
    CHECK(cones_equal(a, hr));
    CHECK(remove_redundant(a) == a);
    // the irredundant subsystem is unique up to positive multiples for pointed-or-not cones only when
    // no two normals are opposite; compare cones instead of lists
    CHECK(cones_equal(a, b));
  }
}

TEST_CASE("extreme rays") {
  const auto h246 = remove_redundant(cone_of_automaton(data_automaton("delta246_lex.json")));
  const auto v246 = extreme_rays(h246);
  CHECK(v246.lineality.empty());
  CHECK(as_set(v246.rays) ==
        std::set<IntVector>{ints({1, 0, -1}), ints({0, -1, 1}), ints({-1, 1, -1}), ints({-2, 0, 1})});
  CHECK(std::is_sorted(v246.rays.begin(), v246.rays.end()));

  const auto h333 = remove_redundant(cone_of_automaton(data_automaton("delta333_lex.json")));
  const auto v333 = extreme_rays(h333);
  REQUIRE(v333.lineality.size() == 1);
  CHECK((v333.lineality[0] == ints({0, 1, -1}) || v333.lineality[0] == ints({0, -1, 1})));
  CHECK(v333.rays.size() == 2);
  CHECK(satisfies(h333, v333));
  // the generators (0,1,-1), (0,-1,1), (-1,0,1), (1,0,-2) span the same cone
  const auto hv = facets_from_rays(VRep{3, {}, {ints({0, 1, -1}), ints({0, -1, 1}), ints({-1, 0, 1}), ints({1, 0, -2})}});
  CHECK(cones_equal(hv, h333));

  const auto v1 = extreme_rays(make_hrep(1, {ints({1})}));
  CHECK(v1.lineality.empty());
  CHECK(v1.rays == std::vector<IntVector>{ints({-1})});

  const auto whole = extreme_rays(make_hrep(2, {}));
  CHECK(whole.lineality.size() == 2);
  CHECK(whole.rays.empty());

  Caps tiny;
  tiny.max_rays = 1;
  CHECK_THROWS_AS(extreme_rays(h246, tiny), ResourceError);
}

TEST_CASE("contains and interior") {
  const auto h246 = cone_of_automaton(data_automaton("delta246_lex.json"));
  CHECK(contains(h246, RationalVector{1, 2, -5}));
  CHECK(contains(h246, RationalVector{0, 0, 0}));
  CHECK_FALSE(interior(h246, RationalVector{0, 0, 0}));
  CHECK(interior(h246, RationalVector{-1, -1, -1}));
  CHECK_FALSE(contains(cone_of_automaton(data_automaton("delta333_lex.json")), RationalVector{1, 1, 1}));
  CHECK_THROWS_AS(contains(h246, RationalVector{1, 1}), ValidationError);
}

TEST_CASE("membership agrees with the boundedness test") {
  std::mt19937_64 rng(8);
  for (const char* f : {"dihedral_lex.json", "delta333_lex.json", "delta246_lex.json", "one_loop.json", "dihedral_cell_nfa.json"}) {
    const auto a = data_automaton(f);
    const auto h = cone_of_automaton(a);
    const auto prepared = prepare(a);
    for (int i = 0; i < 500; ++i) {
      RationalVector phi;
      for (std::size_t s = 0; s < a.alphabet_size(); ++s) phi.push_back(random_rational(rng, 6, 3));
      const WeightVector w(a.alphabet(), phi);
      CHECK(contains(h, phi) == boundedness_of(prepared, w, {}).bounded);
    }
  }
}

TEST_CASE("round trip between representations") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto h = random_hrep(rng);
    const auto v = extreme_rays(h);
    CHECK(satisfies(h, v));
    const auto back = facets_from_rays(v);
    CHECK(cones_equal(back, h));
    CHECK(extreme_rays(back) == v);
    RationalVector centre(h.dim, 0);
    for (const auto& r : v.rays)
      for (std::size_t k = 0; k < h.dim; ++k) centre[k] += r[k];
    if (!v.rays.empty() && interior(h, centre)) {
      // full-dimensional cones have a unique irredundant facet list
      CHECK(as_set(back.normals) == as_set(remove_redundant(h).normals));
    }
  }
}

TEST_CASE("cone JSON") {
  const auto h = remove_redundant(cone_of_automaton(data_automaton("delta333_lex.json")));
  const auto j = nlohmann::json::parse(cone_to_json(h, extreme_rays(h)));
  CHECK(j.at("dim") == 3);
  CHECK(j.at("normals").size() == 2);
  CHECK(j.at("lineality").size() == 1);
}

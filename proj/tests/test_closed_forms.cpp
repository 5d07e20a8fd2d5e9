#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace wct;

namespace {

std::set<Word> as_set(const std::vector<Word>& ws) { return {ws.begin(), ws.end()}; }

void check_against_group(const SphericalFormulaResult& f, const ElementTable& table, const RationalVector& phi,
                         bool expect_cell) {
  const auto oracle = argmax_elements(table, phi);
  CHECK(f.bound == oracle.value);
  if (expect_cell) {
    REQUIRE(f.cell);
    CHECK(as_set(*f.cell) == oracle.words);
  }
}

}  // namespace

TEST_CASE("nonnegative weights on finite groups") {
  const auto b2 = systems::type_b(2);
  const auto r = spherical_nonneg(b2, weight_for(b2, {1, 1}));
  CHECK(r.bound == 4);
  CHECK(r.cell->size() == 1);
  CHECK(spherical_nonneg(systems::type_a(2), weight_for(systems::type_a(2), {1, 1})).bound == 3);
  const auto half = spherical_nonneg(b2, weight_for(b2, {1, 0}));
  CHECK(half.cell->size() == 2);
  check_against_group(half, element_table(b2, 8), {1, 0}, true);
  CHECK_THROWS_AS(spherical_nonneg(systems::triangle(2, 3, 6), weight_for(systems::triangle(2, 3, 6), {1, 1, 1})),
                  PreconditionError);
  CHECK_THROWS_AS(spherical_nonneg(b2, weight_for(b2, {1, -1})), PreconditionError);
}

TEST_CASE("dihedral closed form: examples") {
  const std::vector<std::string> st{"s", "t"};
  const auto r3 = dihedral_bound(3, -1, 1);
  CHECK(r3.bound == 1);
  CHECK(as_set(*r3.cell) == words_from(st, {"t", "tst", "tstst"}));
  const auto r2 = dihedral_bound(2, -2, 1);
  CHECK(r2.bound == 1);
  CHECK(as_set(*r2.cell) == words_from(st, {"t"}));
  const auto r4 = dihedral_bound(4, -1, 2);
  CHECK(r4.bound == 5);
  const auto sys = systems::dihedral(8);
  GroupElement w0s = longest_element(sys);
  w0s.right_multiply(sys, 0);
  CHECK(*r4.cell == std::vector<Word>{lex_word(sys, w0s)});
  // the mirrored sign pattern
  CHECK(dihedral_bound(3, 1, -1).bound == 1);
  CHECK(as_set(*dihedral_bound(3, 1, -1).cell) == words_from(st, {"s", "sts", "ststs"}));
}

TEST_CASE("B_n closed form: examples") {
  CHECK(bn_bound(2, 1, -1).bound == 1);
  CHECK(bn_bound(2, 0, 0).bound == 0);
  CHECK_FALSE(bn_bound(3, 0, 1).cell);
  const auto b3 = systems::type_b(3);
  check_against_group(bn_bound(3, -1, 1), element_table(b3, 20), {-1, -1, 1}, true);
  CHECK(ball(systems::type_b(4), 30).elements.size() == 384);
}

TEST_CASE("F4 closed form: examples") {
  CHECK(f4_bound(1, -1).bound == 4);
  CHECK(f4_bound(-1, 1).bound == 4);
  CHECK(f4_bound(1, 1).bound == 24);
  CHECK(f4_bound(0, 0).bound == 0);
  const auto f4 = systems::type_f4();
  for (const auto& digits : f4_coset_words()) {
    Word w;
    for (char c : digits) w.push_back(static_cast<Letter>(c - '1'));
    CHECK(is_reduced(f4, w));
  }
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(f4_bound(a, b).bound == f4_bound(b, a).bound);
  }
}

TEST_CASE("spherical closed forms agree with exhaustive search") {
  std::mt19937_64 rng(29);
  auto nonzero = [&] {
    Rational x;
    do x = random_rational(rng); while (x == 0);
    return x;
  };
  for (unsigned m = 1; m <= 5; ++m) {
    const auto table = element_table(systems::dihedral(2 * m), 2 * m);
    for (int i = 0; i < 60; ++i) {
      const Rational a = i % 5 == 0 ? Rational(0) : nonzero(), b = i % 7 == 0 ? Rational(-a) : nonzero();
      check_against_group(dihedral_bound(m, a, b), table, {a, b}, true);
    }
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto table = element_table(systems::type_b(n), n * n);
    for (int i = 0; i < 40; ++i) {
      const Rational a = nonzero(), b = i % 6 == 0 ? Rational(0) : nonzero();
      RationalVector phi(n, a);
      phi[n - 1] = b;
      check_against_group(bn_bound(n, a, b), table, phi, b != 0);
    }
  }
  const auto table = element_table(systems::type_f4(), 24);
  REQUIRE(table.words.size() == 1152);
  for (int i = 0; i < 40; ++i) {
    const Rational a = nonzero(), b = nonzero();
    check_against_group(f4_bound(a, b), table, {a, a, b, b}, true);
  }
}

TEST_CASE("affine cones") {
  const auto c2 = affine_cone(AffineFamily::Ct, 2);
  CHECK(std::set<IntVector>(c2.cone.normals.begin(), c2.cone.normals.end()) ==
        std::set<IntVector>{ints({1, 2, 1}), ints({1, 1, 1})});
  const auto b3 = affine_cone(AffineFamily::Bt, 3);
  CHECK(std::set<IntVector>(b3.cone.normals.begin(), b3.cone.normals.end()) ==
        std::set<IntVector>{ints({4, 1}), ints({2, 1})});
  const auto f4 = affine_cone(AffineFamily::Ft4);
  CHECK(f4.cone.normals == std::vector<IntVector>{ints({5, 3}), ints({6, 5})});
  const auto rr = remove_redundant_detailed(make_hrep(2, f4.per_coweight));
  CHECK(std::set<IntVector>(rr.redundant.begin(), rr.redundant.end()) == std::set<IntVector>{ints({3, 2}), ints({4, 3})});
  CHECK(cones_equal(rr.irredundant, f4.cone));
  CHECK(affine_cone(AffineFamily::Ct, 1).cone.normals.size() == 1);
  CHECK_THROWS_AS(affine_cone(AffineFamily::Bt, 2), ValidationError);
  CHECK_THROWS_AS(parse_affine_family("Dt"), ValidationError);

  for (const auto& spec : {c2, b3, f4, affine_cone(AffineFamily::Gt2), affine_cone(AffineFamily::Ct, 1)}) {
    const auto sys = spec.system();
    const auto generic = restrict_cone(cone_of_automaton(shortlex_automaton(sys)), spec.substitution);
    CHECK(cones_equal(generic, spec.cone));
    CHECK(cones_equal(make_hrep(spec.cone.dim, spec.per_coweight), spec.cone));
    for (const auto& row : spec.substitution) CHECK(row.size() == spec.parameters.size());
    // substituted parameters give valid weight functions
    CHECK(validate_weight(sys, weight_for(sys, substitute(spec.substitution, RationalVector(spec.parameters.size(), 1)))));
  }
}

TEST_CASE("G~2 agrees with the (2,3,2m) family at m = 3") {
  const auto g2 = affine_cone(AffineFamily::Gt2);
  CHECK(cones_equal(g2.cone, make_hrep(2, {ints({2, 1}), ints({3, 2})})));
  std::mt19937_64 rng(31);
  const auto sys = g2.system();
  const auto lex = shortlex_automaton(sys);
  const auto v = extreme_rays(g2.cone);
  for (int i = 0; i < 30; ++i) {
    const auto ab = sample_point(v, rng);
    const WeightVector phi(sys.generators(), substitute(g2.substitution, ab));
    const Rational& a = ab[0];
    const Rational& b = ab[1];
    CHECK(bound(lex, phi).bound == std::max<Rational>({0, 3 * a, b, 2 * a + 3 * b}));
  }
}

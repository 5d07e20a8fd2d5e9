#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace wct;

namespace {

std::set<Word> as_set(const std::vector<Word>& ws) { return {ws.begin(), ws.end()}; }

const std::vector<std::string> kST{"s", "t"};
const std::vector<std::string> kSTU{"s", "t", "u"};

// stst(utst)* over {s,t,u}
Automaton intro_cell() {
  Automaton a(kSTU, 8, 0);
  const char* path = "stst";
  for (State i = 0; i < 4; ++i) a.add_transition(i, std::string(1, path[i]), i + 1);
  a.add_transition(4, "u", 5);
  a.add_transition(5, "t", 6);
  a.add_transition(6, "s", 7);
  a.add_transition(7, "t", 4);
  a.set_accept(4);
  return a;
}

}  // namespace

TEST_CASE("weight of a word") {
  const auto phi = WeightVector::parse(kSTU, "s=1,t=2,u=-5");
  CHECK(weight_of_word(phi, parse_word(kSTU, "stst")) == 6);
  CHECK(weight_of_word(phi, {}) == 0);
  CHECK(weight_of_word(WeightVector::parse(kST, "s=1,t=-1"), parse_word(kST, "sts")) == 1);
  CHECK(WeightVector::parse(kST, "t=1/2,s=-3").values() == RationalVector{-3, make_rational(1, 2)});
  CHECK_THROWS_AS(WeightVector::parse(kST, "s=1"), ValidationError);
  CHECK_THROWS_AS(WeightVector::parse(kST, "s=1,t=1,s=2"), ValidationError);
  CHECK_THROWS_AS(WeightVector::parse(kST, "s=1,x=1"), ValidationError);
}

TEST_CASE("infinite dihedral: circuits and circuit-free words") {
  const auto a = data_automaton("dihedral_lex.json");
  CHECK(as_set(simple_circuit_words(simple_cycles(a))) == words_from(kST, {"st", "ts"}));
  CHECK(as_set(circuit_free_words(a)) == words_from(kST, {"e", "s", "t", "st", "ts"}));
  const auto cf = circuit_free_words(a);
  CHECK(std::is_sorted(cf.begin(), cf.end(), shortlex_less));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Rational x = random_rational(rng), y = random_rational(rng);
    const WeightVector phi(kST, {x, y});
    CHECK(is_bounded(a, phi).bounded == (x + y <= 0));
    if (x + y <= 0) CHECK(bound(a, phi).bound == std::max<Rational>({0, x, y, x + y}));
  }
  CHECK(bound(a, WeightVector::parse(kST, "s=1,t=-1")).bound == 1);
}

TEST_CASE("infinite dihedral: the cell automaton for (1,-1) is the expected NFA") {
  const auto a = data_automaton("dihedral_lex.json");
  const auto cell = cell_automaton(a, WeightVector::parse(kST, "s=1,t=-1"));
  REQUIRE(cell.cell_nfa);
  CHECK(*cell.cell_nfa == data_automaton("dihedral_cell_nfa.json"));
  // the 3-state trimmed automaton is not minimal: its start and the state after t agree
  CHECK(cell.cell_dfa->num_states() == 2);
  CHECK(static_cast<bool>(equivalent(*cell.cell_dfa, data_automaton("dihedral_cell.json"))));
  CHECK(isomorphic(determinize(trim(*cell.cell_nfa)), data_automaton("dihedral_cell.json")));
  CHECK(as_set(cell.witnesses) == words_from(kST, {"s"}));
  CHECK(as_set(enumerate(*cell.cell_dfa, 5)) == words_from(kST, {"s", "sts", "ststs"}));
}

TEST_CASE("triangle (3,3,3): circuits are the rotations of stu, stsu and sut") {
  const auto a = data_automaton("delta333_lex.json");
  const auto cycles = simple_cycles(a);
  CHECK(cycles.size() == 3);
  std::set<Word> expected;
  // the loop 6 -s-> 8 -u-> 10 -t-> 6 reads sut, which is not a rotation of stu
  for (std::string w : {"stu", "stsu", "sut"}) {
    for (std::size_t k = 0; k < w.size(); ++k) expected.insert(parse_word(kSTU, w.substr(k) + w.substr(0, k)));
  }
  CHECK(as_set(simple_circuit_words(cycles)) == expected);
  CHECK(circuit_free_words(a).size() == 64);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.arcs.size(); ++k) CHECK(c.rotated(k).letter_counts(3) == c.letter_counts(3));
    const auto st = c.states();
    CHECK(std::set<State>(st.begin(), st.end()).size() == st.size());
  }
  const auto rep = is_bounded(a, WeightVector::parse(kSTU, "s=1,t=1,u=1"));
  CHECK_FALSE(rep.bounded);
  REQUIRE(rep.violating_cycle);
  CHECK(rep.violating_cycle->letter_counts(3) == IntVector{1, 1, 1});
  CHECK(bound(a, WeightVector::parse(kSTU, "s=1,t=-1,u=-1")).bound == 1);
}

TEST_CASE("triangle (2,4,6): intro weight function") {
  const auto a = data_automaton("delta246_lex.json");
  CHECK(circuit_free_words(a).size() == 92);
  CHECK(simple_cycles(a).size() == 5);
  const auto phi = WeightVector::parse(kSTU, "s=1,t=2,u=-5");
  CHECK(is_bounded(a, phi).bounded);
  const auto cell = cell_automaton(a, phi);
  CHECK(cell.bound == 6);
  CHECK(equivalent(*cell.cell_dfa, intro_cell()));
  CHECK(equivalent(*cell.cell_dfa, *cell.cell_nfa));
}

TEST_CASE("unbounded requests are rejected with the violating circuit") {
  const auto a = data_automaton("one_loop.json");
  const auto phi = WeightVector::parse({"s"}, "s=1");
  try {
    bound(a, phi);
    FAIL("expected UnboundedError");
  } catch (const UnboundedError& e) {
    CHECK(e.word_text() == "s");
    CHECK(e.cycle().letter_counts(1) == IntVector{1});
  }
  CHECK_THROWS_AS(cell_automaton(a, phi), PreconditionError);
  CHECK(bound(a, WeightVector::parse({"s"}, "s=0")).bound == 0);
  CHECK_THROWS_AS(bound(a, WeightVector::parse(kST, "s=0,t=0")), ValidationError);
}

TEST_CASE("strictly negative cells") {
  const auto a = data_automaton("dihedral_lex.json");
  CHECK(as_set(strictly_negative_cell(a, WeightVector::parse(kST, "s=1,t=-2"))) == words_from(kST, {"s"}));
  CHECK(as_set(enumerate(*cell_automaton(a, WeightVector::parse(kST, "s=1,t=-2")).cell_dfa, 8)) ==
        words_from(kST, {"s"}));
  CHECK(as_set(strictly_negative_cell(a, WeightVector::parse(kST, "s=-1,t=-1"))) == words_from(kST, {"e"}));
  for (const char* f : {"delta333_lex.json", "delta246_lex.json"}) {
    const auto phi = WeightVector::parse(kSTU, "s=-1,t=-1,u=-1");
    CHECK(as_set(strictly_negative_cell(data_automaton(f), phi)) == words_from(kSTU, {"e"}));
    CHECK(as_set(enumerate(*cell_automaton(data_automaton(f), phi).cell_dfa, 10)) == words_from(kSTU, {"e"}));
  }
  const auto lex238 = shortlex_automaton(systems::triangle(2, 3, 8));
  CHECK_THROWS_AS(strictly_negative_cell(lex238, WeightVector::parse(kSTU, "s=-1,t=-1,u=2")), PreconditionError);
}

TEST_CASE("circuit-free conventions") {
  // the start state is re-entered: positions >= 1 allow it, the strict sense does not
  Automaton a(kST, 2, 0);
  a.add_transition(0, "s", 1);
  a.add_transition(1, "t", 0);
  a.set_accept(0);
  a.set_accept(1);
  CHECK(as_set(circuit_free_words(a)) == words_from(kST, {"e", "s", "st"}));
  WeightOptions strict;
  strict.strict_graph_sense = true;
  CHECK(as_set(circuit_free_words(a, strict)) == words_from(kST, {"e", "s"}));
  for (const char* f : {"delta333_lex.json", "delta246_lex.json", "dihedral_lex.json"})
    CHECK(circuit_free_words(data_automaton(f)) == circuit_free_words(data_automaton(f), strict));
}

TEST_CASE("NFA inputs are determinized first") {
  const auto left = data_automaton("dihedral_cell_nfa.json");
  const auto phi = WeightVector::parse(kST, "s=1,t=-1");
  CHECK(bound(left, phi).bound == 1);
  CHECK(equivalent(*cell_automaton(left, phi).cell_dfa, data_automaton("dihedral_cell.json")));
}

TEST_CASE("excising the first circuit keeps the end state") {
  std::mt19937_64 rng(9);
  for (const char* f : {"delta333_lex.json", "delta246_lex.json"}) {
    const auto a = data_automaton(f);
    const auto words = enumerate(a, 12);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    int split_count = 0;
    for (int i = 0; i < 300; ++i) {
      const Word& w = words[pick(rng)];
      const auto split = split_first_circuit(a, w);
      if (!split) continue;
      ++split_count;
      Word shorter = split->prefix;
      shorter.insert(shorter.end(), split->suffix.begin(), split->suffix.end());
      CHECK(accepts(a, shorter));
      auto run = [&](const Word& x) {
        State q = a.start();
        for (Letter s : x) q = *a.next(q, s);
        return q;
      };
      CHECK(run(shorter) == run(w));
      Word pv = split->prefix;
      pv.insert(pv.end(), split->circuit.begin(), split->circuit.end());
      CHECK(run(pv) == run(split->prefix));
    }
    CHECK(split_count > 50);
  }
}

TEST_CASE("bounded weight functions form a convex cone") {
  std::mt19937_64 rng(4);
  const auto a = data_automaton("delta246_lex.json");
  for (int i = 0; i < 40; ++i) {
    const auto p = random_bounded(a, rng), q = random_bounded(a, rng);
    const Rational l = random_rational(rng) * random_rational(rng), m = random_rational(rng) * random_rational(rng);
    RationalVector mix(3);
    for (std::size_t k = 0; k < 3; ++k) mix[k] = abs(l) * p[k] + abs(m) * q[k];
    CHECK(is_bounded(a, WeightVector(kSTU, mix)).bounded);
  }
}

TEST_CASE("bound and cell agree with brute force") {
  std::mt19937_64 rng(21);
  for (const char* f : {"dihedral_lex.json", "delta333_lex.json", "delta246_lex.json", "dihedral_cell.json"}) {
    const auto a = data_automaton(f);
    const std::size_t L = std::min<std::size_t>(2 * a.num_states(), 16);
    const auto words = enumerate(a, L);
    for (int i = 0; i < 15; ++i) {
      const auto phi = random_bounded(a, rng);
      const auto cell = cell_automaton(a, phi);
      const auto oracle = argmax_words(words, phi);
      CHECK(cell.bound == oracle.value);
      CHECK(accepted_set(*cell.cell_dfa, L) == oracle.words);
      for (const auto& w : cell.witnesses) CHECK(weight_of_word(phi, w) == cell.bound);
      CHECK_FALSE(language_empty(*cell.cell_dfa));
    }
  }
}

TEST_CASE("nested zero-weight circuits stay in the cell") {
  // ututsututsutsu = u . tu(tsutu)tsutsu: the circuit tsutu sits inside the circuit tutsutsu
  const auto a = data_automaton("delta246_lex.json");
  const WeightVector phi(kSTU, {0, -1, 1});
  const auto cell = cell_automaton(a, phi);
  const auto w = parse_word(kSTU, "ututsututsutsu");
  REQUIRE(cell.bound == 1);
  CHECK(weight_of_word(phi, w) == 1);
  CHECK(accepts(a, w));
  CHECK(accepts(*cell.cell_dfa, w));
  CHECK_FALSE(accepts(*cell.cell_nfa, w));
  CHECK(accepted_set(*cell.cell_dfa, 16) == argmax_words(enumerate(a, 16), phi).words);
}

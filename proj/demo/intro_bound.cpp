// Bound and cell of phi = (1, 2, -5) on the triangle group with bonds (s,t)=4, (s,u)=2, (t,u)=6.
#include <iostream>

#include "weightcell/automaton_io.hpp"
#include "weightcell/coxeter.hpp"

int main() {
  using namespace weightcell;
  const CoxeterSystem sys({"s", "t", "u"}, {{1, 4, 2}, {4, 1, 6}, {2, 6, 1}});
  const auto phi = WeightVector::parse(sys.generators(), "s=1,t=2,u=-5");
  const auto r = group_cell(sys, phi, Language::Lex);
  std::cout << "shortlex automaton: " << r.language.num_states() << " states\n";
  std::cout << "bound: " << r.bound << "\nwitnesses:";
  for (const auto& w : r.witnesses) std::cout << ' ' << format_word(sys.generators(), w);
  std::cout << "\ncell words up to length 16:";
  for (const auto& w : enumerate(r.cell_dfa, 16)) std::cout << ' ' << format_word(sys.generators(), w);
  std::cout << "\n\n" << to_dot(r.cell_dfa, "cell");
}

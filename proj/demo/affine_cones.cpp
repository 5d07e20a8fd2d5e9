// Compares the closed-form affine cones with the cones computed from shortlex automata.
#include <iostream>

#include "weightcell/closed_forms.hpp"

int main() {
  using namespace weightcell;
  struct Case {
    const char* name;
    AffineFamily family;
    std::size_t rank;
  };
  for (const Case& c : {Case{"C~2", AffineFamily::Ct, 2}, Case{"C~3", AffineFamily::Ct, 3}, Case{"B~3", AffineFamily::Bt, 3},
                        Case{"G~2", AffineFamily::Gt2, 0}}) {
    const AffineConeSpec spec = affine_cone(c.family, c.rank);
    const Automaton lex = shortlex_automaton(spec.system());
    const HRep generic = remove_redundant(restrict_cone(cone_of_automaton(lex), spec.substitution));
    std::cout << c.name << ": " << lex.num_states() << " automaton states, parameters";
    for (const auto& p : spec.parameters) std::cout << ' ' << p;
    std::cout << "\n  generic facets:";
    for (const auto& n : generic.normals) print_vector(std::cout << ' ', n);
    std::cout << "\n  closed form:   ";
    for (const auto& n : spec.cone.normals) print_vector(std::cout << ' ', n);
    std::cout << "\n  equal: " << (cones_equal(generic, spec.cone) ? "yes" : "no") << '\n';
  }
}

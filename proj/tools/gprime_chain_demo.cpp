// Demonstrates the single-element unfolding variant on growing chain
// lattices. The lattice is the completion of a chain a1 < ... < an together
// with one incomparable point b; the map sends bottom to a1, steps the chain
// upward, and sends everything else to top. Its least fixed point is top, and
// the variant reaches it at every finite chain length even though the winning
// play from b has to descend the whole chain first: the play length grows
// with n while the verdict stays stable.

#include <iostream>
#include <string>
#include <vector>

#include "ndmu/polarity.hpp"
#include "ndmu/unfolding.hpp"

using namespace ndmu;

namespace {

ConceptLattice chain_lattice(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("b");
  Polarity p(names, names);
  // Incidence = the partial order itself: ai <= aj iff i <= j, b only <= b.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.relate(i, j);
  p.relate(n, n);
  return ConceptLattice::build(p);
}

}  // namespace

int main() {
  for (int n = 2; n <= 6; ++n) {
    ConceptLattice lattice = chain_lattice(n);

    // Generator concepts: the chain prefixes and the singleton {b}.
    std::vector<ConceptId> chain;
    for (int i = 0; i < n; ++i) chain.push_back(lattice.object_concept(i));
    ConceptId b_concept = lattice.object_concept(n);
    ConceptId bottom = lattice.bottom();
    ConceptId top = lattice.top();

    LatticeMap f = [&, chain, b_concept, bottom, top, n](ConceptId c) -> ConceptId {
      if (c == bottom) return chain[0];
      for (int i = 0; i < n; ++i)
        if (c == chain[i]) return i + 1 < n ? chain[i + 1] : top;
      (void)b_concept;
      return top;
    };

    // Reference least fixed point by direct iteration from bottom.
    ConceptId lfp = bottom;
    for (;;) {
      ConceptId next = f(lfp);
      if (next == lfp) break;
      lfp = next;
    }

    UnfoldOutcome res = solve_gprime(lattice, f);

    std::cout << "chain length " << n << ": " << lattice.size() << " concepts\n";
    std::cout << "  winning generators:";
    for (ConceptId c : res.winning)
      std::cout << " " << lattice.to_string(c);
    std::cout << "\n";
    std::cout << "  join of winning = " << lattice.to_string(res.fixpoint)
              << ", least fixed point = " << lattice.to_string(lfp)
              << (res.fixpoint == lfp ? "  (agree)" : "  (DISAGREE)") << "\n";

    bool b_wins = false;
    for (ConceptId c : res.winning)
      if (c == b_concept) b_wins = true;
    std::cout << "  singleton {b} generator winning: " << (b_wins ? "yes" : "no")
              << " (its winning play walks down the whole chain)\n";
  }
  return 0;
}

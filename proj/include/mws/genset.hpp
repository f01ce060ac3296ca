#pragma once
#include <cstdint>
#include <vector>

#include "mws/curve.hpp"
#include "mws/jacobian.hpp"

namespace mws {

// A finitely generated subgroup of J(Q) supplied as input: free generators
// plus torsion elements of verified finite order.  The full torsion subgroup
// is closed off here (identity first) so the sieve can enumerate it.
struct GeneratorSet {
  std::vector<Mumford<QCtx>> generators;  // free part; rank() many
  std::vector<Mumford<QCtx>> torsion;     // torsion generators as supplied
  std::vector<uint64_t> torsion_orders;   // parallel to torsion

  std::vector<Mumford<QCtx>> torsion_elems;  // subgroup generated by torsion

  std::size_t rank() const { return generators.size(); }
};

// Validates every divisor on the curve's model and verifies each torsion
// element's order by repeated addition.  Throws InvalidDivisor on a bad
// Mumford pair, NotTorsion when an order is not found within order_bound,
// and TooLarge if the torsion closure exceeds closure_cap elements.
GeneratorSet make_generator_set(const CurveSpec& curve,
                                const std::vector<Mumford<QCtx>>& free_gens,
                                const std::vector<Mumford<QCtx>>& torsion_gens,
                                uint64_t order_bound = 200,
                                std::size_t closure_cap = 4096);

}  // namespace mws

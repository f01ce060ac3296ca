#include "mws/genset.hpp"

#include <algorithm>
#include <string>

namespace mws {

namespace {

bool contains(const std::vector<Mumford<QCtx>>& elems, const Mumford<QCtx>& d) {
  return std::find(elems.begin(), elems.end(), d) != elems.end();
}

}  // namespace

GeneratorSet make_generator_set(const CurveSpec& curve,
                                const std::vector<Mumford<QCtx>>& free_gens,
                                const std::vector<Mumford<QCtx>>& torsion_gens,
                                uint64_t order_bound, std::size_t closure_cap) {
  QModel m = model_q(curve);

  GeneratorSet g;
  g.generators = free_gens;
  g.torsion = torsion_gens;
  for (const auto& d : g.generators) validate_divisor(m, d);

  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    const auto& t = g.torsion[i];
    validate_divisor(m, t);
    auto ord = divisor_order_up_to(m, t, order_bound);
    if (!ord)
      throw NotTorsion("torsion generator " + std::to_string(i) +
                       " has no order <= " + std::to_string(order_bound));
    g.torsion_orders.push_back(*ord);
  }

  // Close the torsion subgroup: fold each generator's cyclic group in turn.
  g.torsion_elems = {identity(m)};
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    std::vector<Mumford<QCtx>> next = g.torsion_elems;
    for (const auto& e : g.torsion_elems) {
      Mumford<QCtx> acc = e;
      for (uint64_t j = 1; j < g.torsion_orders[i]; ++j) {
        acc = cantor_add(m, acc, g.torsion[i]);
        if (!contains(next, acc)) {
          next.push_back(acc);
          if (next.size() > closure_cap)
            throw TooLarge("torsion closure exceeds cap " + std::to_string(closure_cap));
        }
      }
    }
    g.torsion_elems = std::move(next);
  }
  return g;
}

}  // namespace mws

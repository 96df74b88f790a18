#include "homchains/chain.hpp"

namespace homchains {

bool homology_report::torsion_free() const {
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

homology_report homology(const integer_chain_complex& cc) {
  const std::size_t top = cc.cells.size();
  std::vector<smith_result> snf(top + 1);
  for (std::size_t d = 1; d < top; ++d) snf[d] = smith_normal_form(cc.boundary[d]);
  homology_report rep;
  rep.betti.resize(top);
  rep.torsion.resize(top);
  for (std::size_t d = 0; d < top; ++d) {
    std::size_t in = snf[d].rank, out = d + 1 <= top ? snf[d + 1].rank : 0;
    if (in + out > cc.cells[d]) throw invariant_error("homology: boundary ranks exceed the chain rank");
    rep.betti[d] = cc.cells[d] - in - out;
    for (const auto& f : snf[d + 1].factors)
      if (f > 1) rep.torsion[d].push_back(f);
    rep.euler += (d % 2 ? -1 : 1) * static_cast<std::int64_t>(cc.cells[d]);
  }
  return rep;
}

homology_report homology(const cell_complex& c) { return homology(boundary_matrices(c)); }

}  // namespace homchains

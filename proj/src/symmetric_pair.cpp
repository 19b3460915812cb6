#include "liebundle/symmetric_pair.hpp"

namespace liebundle {

namespace {

// max residual of [a_i, b_j] against `target` over basis pairs
double bracket_containment(const LieAlgebra& g, const Subspace& a, const Subspace& b,
                           const Subspace& target) {
  double worst = 0.0;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j) {
      Vec br = g.bracket_structure(a.onb().col(i), b.onb().col(j));
      worst = std::max(worst, target.containment_residual(br));
    }
  return worst;
}

double bracket_norm_max(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j) {
      Vec br = g.bracket_structure(a.onb().col(i), b.onb().col(j));
      worst = std::max(worst, g.form()->norm(br));
    }
  return worst;
}

Mat coords_matrix(const LieAlgebraPtr& g, const std::vector<AlgebraElement>& els) {
  Mat m(g->dim(), static_cast<Index>(els.size()));
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (els[i].ambient != g)
      throw std::invalid_argument("generator does not live in the given algebra");
    m.col(static_cast<Index>(i)) = els[i].coords;
  }
  return m;
}

}  // namespace

SymmetricPair make_symmetric_pair(const LieAlgebraPtr& g,
                                  const std::vector<AlgebraElement>& h_generators) {
  if (h_generators.empty())
    throw std::invalid_argument("make_symmetric_pair: need at least one generator");
  Subspace h = span_closure(coords_matrix(g, h_generators), g->form(), g->bracket_op());
  Subspace full = Subspace::full(g->form());
  Subspace p1 = orthogonal_complement(h, full);

  double res = bracket_containment(*g, h, h, h);
  res = std::max(res, bracket_containment(*g, h, p1, p1));
  double cartan = bracket_containment(*g, p1, p1, h);
  if (cartan > kTolAlg || res > kTolAlg)
    throw ConstructionError("make_symmetric_pair: Cartan relations fail; the pair is not symmetric",
                            std::max(cartan, res));
  return SymmetricPair{g, std::move(h), std::move(p1), std::max(cartan, res)};
}

BundleSplit split_isotropy(const SymmetricPair& pair,
                           const std::vector<AlgebraElement>& k_generators) {
  const LieAlgebraPtr& g = pair.g;
  Subspace k = Subspace::zero(g->form());
  if (!k_generators.empty()) {
    k = span_closure(coords_matrix(g, k_generators), g->form(), g->bracket_op());
    double inside = pair.h.containment_residual(k);
    if (inside > kTolAlg)
      throw ConstructionError("split_isotropy: generators do not lie in h", inside);
  }
  Subspace p2 = orthogonal_complement(k, pair.h);

  double cross = bracket_norm_max(*g, k, p2);
  if (cross > kTolAlg)
    throw ConstructionError("split_isotropy: [k,p2] != 0, k is not an ideal complement", cross);
  double ideal = std::max(bracket_containment(*g, k, k, k),
                          bracket_containment(*g, p2, p2, p2));
  if (ideal > kTolAlg)
    throw ConstructionError("split_isotropy: h does not decompose as ideals", ideal);

  Mat q_onb(g->dim(), pair.p1.dim() + p2.dim());
  q_onb << pair.p1.onb(), p2.onb();
  Subspace q(q_onb, g->form());

  std::vector<Mat> p2_ad;
  for (Index i = 0; i < p2.dim(); ++i) {
    Mat adm(p2.dim(), p2.dim());
    for (Index j = 0; j < p2.dim(); ++j)
      adm.col(j) = p2.coords(g->bracket_structure(p2.onb().col(i), p2.onb().col(j)));
    p2_ad.push_back(std::move(adm));
  }

  return BundleSplit{pair, std::move(k), std::move(p2), std::move(q), std::move(p2_ad),
                     std::max(cross, ideal)};
}

}  // namespace liebundle

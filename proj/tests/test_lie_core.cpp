#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "liebundle/commutant.hpp"
#include "liebundle/lie_algebra.hpp"
#include "liebundle/rng.hpp"
#include "liebundle/subspace.hpp"

using namespace liebundle;

namespace {

// test-local expansion oracle: least squares against the flattened basis,
// independent of the library's cached expansion operator
Vec expand_oracle(const LieAlgebra& g, const Mat& m) {
  const Index N = g.ambient_size();
  Mat bflat(N * N, g.dim());
  for (Index i = 0; i < g.dim(); ++i)
    bflat.col(i) = Eigen::Map<const Vec>(g.basis_matrix(i).data(), N * N);
  Vec target = Eigen::Map<const Vec>(m.data(), N * N);
  return bflat.colPivHouseholderQr().solve(target);
}

// test-local rank oracle
Index rank_oracle(const Mat& m) {
  if (m.cols() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv[r] > 1e-8 * sv[0]) ++r;
  return r;
}

}  // namespace

TEST_CASE("classical dimensions and minimums") {
  CHECK(LieAlgebra::classical(Family::SO, 5)->dim() == 10);
  CHECK(LieAlgebra::classical(Family::SU, 4)->dim() == 15);
  CHECK(LieAlgebra::classical(Family::SP, 2)->dim() == 10);
  CHECK_THROWS_AS(LieAlgebra::classical(Family::SU, 1), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra::classical(Family::SO, 2), std::invalid_argument);
  CHECK_THROWS_AS(LieAlgebra::classical(Family::SP, 1), std::invalid_argument);
}

TEST_CASE("algebra axioms over all basis triples") {
  std::vector<LieAlgebraPtr> algs = {
      LieAlgebra::classical(Family::SU, 2), LieAlgebra::classical(Family::SU, 3),
      LieAlgebra::classical(Family::SU, 4), LieAlgebra::classical(Family::SO, 3),
      LieAlgebra::classical(Family::SO, 5), LieAlgebra::classical(Family::SO, 6),
      LieAlgebra::classical(Family::SP, 2)};
  for (const auto& g : algs) {
    CAPTURE(g->name());
    CHECK(g->jacobi_residual() < 1e-10);
    CHECK(g->ad_invariance_residual() < 1e-10);
    // basis orthonormal for the invariant product
    CHECK((g->gram() - Mat::Identity(g->dim(), g->dim())).cwiseAbs().maxCoeff() < 1e-12);
    for (Index i = 0; i < g->dim(); ++i) {
      const Mat& b = g->basis_matrix(i);
      CHECK((b + b.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("bracket basics") {
  auto su3 = LieAlgebra::classical(Family::SU, 3);
  SeededRng rng(7);
  Vec x = rng.gaussian_vector(su3->dim());
  CHECK(su3->form()->norm(su3->bracket(x, x)) < 1e-12);

  // two commuting diagonal-torus elements: the trailing basis vectors are
  // the orthogonalized diagonal combinations
  Vec d1 = Vec::Unit(su3->dim(), su3->dim() - 2);
  Vec d2 = Vec::Unit(su3->dim(), su3->dim() - 1);
  CHECK(su3->form()->norm(su3->bracket(d1, d2)) < 1e-13);

  AlgebraElement a{su3, d1};
  auto so4 = LieAlgebra::classical(Family::SO, 4);
  AlgebraElement b{so4, Vec::Unit(so4->dim(), 0)};
  CHECK_THROWS_AS(bracket(a, b), std::invalid_argument);
}

TEST_CASE("bracket routes agree with the matrix-commutator oracle") {
  auto so4 = LieAlgebra::classical(Family::SO, 4);
  SeededRng rng(11);
  for (int t = 0; t < 100; ++t) {
    Vec x = rng.gaussian_vector(so4->dim());
    Vec y = rng.gaussian_vector(so4->dim());
    Mat mx = so4->realize(x), my = so4->realize(y);
    Vec oracle = expand_oracle(*so4, Mat(mx * my - my * mx));
    CHECK((so4->bracket(x, y) - oracle).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((so4->bracket_structure(x, y) - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("span_closure") {
  auto su3 = LieAlgebra::classical(Family::SU, 3);
  auto br = su3->bracket_op();

  SUBCASE("abelian seed closes to itself") {
    Mat seed(su3->dim(), 2);
    seed.col(0) = Vec::Unit(su3->dim(), su3->dim() - 2);
    seed.col(1) = Vec::Unit(su3->dim(), su3->dim() - 1);
    Subspace s = span_closure(seed, su3->form(), br);
    CHECK(s.dim() == 2);
  }

  SUBCASE("p1 of the rank-one pair generates everything") {
    // p1 = off-diagonal last-column directions of su(3)
    const std::complex<double> i1(0.0, 1.0);
    Mat seed(su3->dim(), 4);
    int c = 0;
    for (int i = 0; i < 2; ++i) {
      CMat f = CMat::Zero(3, 3);
      f(i, 2) = 1.0;
      f(2, i) = -1.0;
      seed.col(c++) = su3->coordinates(realify(f));
      CMat g = CMat::Zero(3, 3);
      g(i, 2) = i1;
      g(2, i) = i1;
      seed.col(c++) = su3->coordinates(realify(g));
    }
    Subspace s = span_closure(seed, su3->form(), br);
    CHECK(s.dim() == 8);

    // oracle: rank of [seed | pairwise brackets] spans, then once more
    std::vector<Vec> acc;
    for (int i = 0; i < 4; ++i) acc.push_back(seed.col(i));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) acc.push_back(br(seed.col(i), seed.col(j)));
    std::size_t first_round = acc.size();
    for (std::size_t i = 0; i < first_round; ++i)
      for (std::size_t j = i + 1; j < first_round; ++j) acc.push_back(br(acc[i], acc[j]));
    Mat all(su3->dim(), static_cast<Index>(acc.size()));
    for (std::size_t i = 0; i < acc.size(); ++i) all.col(static_cast<Index>(i)) = acc[i];
    CHECK(rank_oracle(all) == 8);
  }

  SUBCASE("single generic element is already closed") {
    SeededRng rng(3);
    Mat seed = rng.gaussian_vector(su3->dim());
    Subspace s = span_closure(seed, su3->form(), br);
    CHECK(s.dim() == 1);
  }

  SUBCASE("idempotence") {
    SeededRng rng(5);
    Mat seed(su3->dim(), 2);
    seed.col(0) = rng.gaussian_vector(su3->dim());
    seed.col(1) = rng.gaussian_vector(su3->dim());
    Subspace s = span_closure(seed, su3->form(), br);
    Subspace again = span_closure(s.onb(), su3->form(), br);
    CHECK(again.dim() == s.dim());
    CHECK(closure_residual(s, br) < 1e-10);
  }
}

TEST_CASE("orthogonal_complement") {
  auto su3 = LieAlgebra::classical(Family::SU, 3);
  Subspace full = Subspace::full(su3->form());

  SUBCASE("complement of the whole space is zero") {
    CHECK(orthogonal_complement(full, full).dim() == 0);
  }
  SUBCASE("complement of zero is everything") {
    Subspace z = Subspace::zero(su3->form());
    CHECK(orthogonal_complement(z, full).dim() == su3->dim());
  }
  SUBCASE("the isotropy complement of the rank-one pair has dimension 4") {
    // h = su(2) block plus the balanced diagonal
    const std::complex<double> i1(0.0, 1.0);
    std::vector<CMat> hg = gens::su_complex(2);
    Mat seed(su3->dim(), static_cast<Index>(hg.size()) + 1);
    Index c = 0;
    for (const CMat& z : hg) {
      CMat big = CMat::Zero(3, 3);
      big.topLeftCorner(2, 2) = z;
      seed.col(c++) = su3->coordinates(realify(big));
    }
    CMat d = CMat::Zero(3, 3);
    d(0, 0) = i1;
    d(1, 1) = i1;
    d(2, 2) = -2.0 * i1;
    seed.col(c++) = su3->coordinates(realify(d));
    Subspace h = span_closure(seed, su3->form(), su3->bracket_op());
    CHECK(h.dim() == 4);
    Subspace p1 = orthogonal_complement(h, full);
    CHECK(p1.dim() == 4);
    // involution on dimensions
    CHECK(orthogonal_complement(p1, full).dim() == 4);
    // mutual inner products vanish
    Mat cross = h.onb().transpose() * su3->gram() * p1.onb();
    CHECK(cross.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rejects U not inside the ambient subspace") {
    Mat v = Mat::Zero(su3->dim(), 1);
    v(0, 0) = 1.0;
    Subspace u(v, su3->form());
    Mat w = Mat::Zero(su3->dim(), 1);
    w(1, 0) = 1.0;
    Subspace within(w, su3->form());
    CHECK_THROWS_AS(orthogonal_complement(u, within), std::invalid_argument);
  }
}

TEST_CASE("joint_kernel") {
  SUBCASE("identity operator has trivial kernel") {
    std::vector<Mat> ops = {Mat::Identity(5, 5)};
    auto jk = joint_kernel(ops, 5);
    CHECK(jk.space.dim() == 0);
    CHECK_FALSE(jk.vacuous);
  }
  SUBCASE("empty operator list is flagged and returns the carrier") {
    auto jk = joint_kernel({}, 4);
    CHECK(jk.space.dim() == 4);
    CHECK(jk.vacuous);
  }
  SUBCASE("centralizer of a regular torus element of su(3)") {
    auto su3 = LieAlgebra::classical(Family::SU, 3);
    CMat d = CMat::Zero(3, 3);
    d(0, 0) = std::complex<double>(0, 1.0);
    d(1, 1) = std::complex<double>(0, 2.0);
    d(2, 2) = std::complex<double>(0, -3.0);
    Vec x = su3->coordinates(realify(d));
    auto jk = joint_kernel({su3->ad(x)}, su3->dim());
    CHECK(jk.space.dim() == 2);  // the maximal torus
  }
}

TEST_CASE("symmetric commutant") {
  SUBCASE("full so(n) action is irreducible (Schur)") {
    auto so5 = LieAlgebra::classical(Family::SO, 5);
    std::vector<Mat> ops;
    for (Index i = 0; i < so5->dim(); ++i) ops.push_back(so5->basis_matrix(i));
    auto sc = symmetric_commutant(ops, Mat(Mat::Identity(5, 5)));
    CHECK(sc.dim == 1);
  }
  SUBCASE("no operators: all symmetric matrices") {
    auto sc = symmetric_commutant({}, Mat(Mat::Identity(2, 2)));
    CHECK(sc.dim == 3);
  }
  SUBCASE("planar rotation: only multiples of the identity") {
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    auto sc = symmetric_commutant({j}, Mat(Mat::Identity(2, 2)));
    REQUIRE(sc.dim == 1);
    Mat m = sc.basis[0];
    CHECK((m - (m.trace() / 2.0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("block rotations admit a two-dimensional commutant") {
    Mat a = Mat::Zero(4, 4);
    a(0, 1) = -1;
    a(1, 0) = 1;
    a(2, 3) = -2;
    a(3, 2) = 2;
    auto sc = symmetric_commutant({a}, Mat(Mat::Identity(4, 4)));
    CHECK(sc.dim == 2);
    auto split = invariant_split(sc, {a});
    CHECK_FALSE(split.trivial);
    CHECK(split.projectors.size() == 2);
    CHECK(split.invariance_residual < 1e-10);
  }
}

TEST_CASE("direct sums block-embed both factors") {
  auto su2 = LieAlgebra::classical(Family::SU, 2);
  auto sum = LieAlgebra::direct_sum(su2, su2);
  CHECK(sum->dim() == 6);
  CHECK(sum->ambient_size() == 8);
  CHECK(sum->jacobi_residual() < 1e-10);
  // cross brackets vanish
  Vec a = Vec::Unit(6, 0), b = Vec::Unit(6, 3);
  CHECK(sum->form()->norm(sum->bracket(a, b)) < 1e-13);
}

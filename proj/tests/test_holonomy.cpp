#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "liebundle/corpus.hpp"
#include "liebundle/holonomy.hpp"

using namespace liebundle;

namespace {

const CorpusEntry& find_entry(const std::string& id) {
  static std::vector<CorpusEntry> corpus = load_corpus(CORPUS_FILE);
  for (const auto& e : corpus)
    if (e.id == id) return e;
  throw std::runtime_error("missing corpus entry " + id);
}

const BuiltEntry& built(const std::string& id) {
  static std::map<std::string, BuiltEntry> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, build_entry(find_entry(id))).first;
  return it->second;
}

// independent commutant-dimension oracle: full m^2 parametrization with
// symmetry imposed as extra equations, one dense SVD
Index commutant_dim_oracle(const std::vector<Mat>& ops) {
  const Index m = ops.front().rows();
  const Index rows_per_op = m * m;
  Mat sys(static_cast<Index>(ops.size() + 1) * rows_per_op, m * m);
  sys.setZero();
  Mat id = Mat::Identity(m, m);
  for (std::size_t o = 0; o < ops.size(); ++o) {
    const Mat& a = ops[o];
    // vec(MA - AM) = (A^T (x) I - I (x) A) vec(M)
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < m; ++k) {
          sys(static_cast<Index>(o) * rows_per_op + i + m * j, i + m * k) += a(k, j);
          sys(static_cast<Index>(o) * rows_per_op + i + m * j, k + m * j) -= a(i, k);
        }
  }
  // symmetry: M - M^T = 0
  Index base = static_cast<Index>(ops.size()) * rows_per_op;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      sys(base + i + m * j, i + m * j) += 1.0;
      sys(base + i + m * j, j + m * i) -= 1.0;
    }
  (void)id;
  Eigen::BDCSVD<Mat> svd(sys);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv[r] > 1e-8 * sv[0]) ++r;
  return m * m - r;
}

}  // namespace

TEST_CASE("lambda operator") {
  const BuiltEntry& b = built("su3_cp2");
  BarModel bar(b.split, 0.6);

  SUBCASE("pure ad on the isotropy part") {
    for (Index i = 0; i < bar.kbar().dim(); ++i) {
      Vec x = bar.kbar().onb().col(i);
      Mat l = bar.lambda(x);
      for (Index j = 0; j < bar.dim_qbar(); ++j) {
        Vec direct = bar.qbar_coeffs(bar.bracket(x, Vec(bar.qbar_onb().col(j))));
        CHECK((l.col(j) - direct).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SUBCASE("kills its own argument on the complement") {
    SeededRng rng(3);
    for (int t = 0; t < 10; ++t) {
      Vec c = rng.gaussian_vector(bar.dim_qbar());
      Vec x = bar.qbar_onb() * c;
      CHECK((bar.lambda(x) * c).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("linear in the argument") {
    SeededRng rng(9);
    for (int t = 0; t < 10; ++t) {
      Vec x = rng.gaussian_vector(bar.dim_gbar());
      Vec y = rng.gaussian_vector(bar.dim_gbar());
      double a = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
      Mat lhs = bar.lambda(Vec(a * x + c * y));
      Mat rhs = a * bar.lambda(x) + c * bar.lambda(y);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("berger model: half the closed-form bracket of the second identity") {
    const BuiltEntry& bb = built("su2_berger");
    double s = 0.5;
    BarModel bm(bb.split, s);
    const LieAlgebra& g = *bb.g;
    Vec x1 = bb.pair.p1.onb().col(0);
    Vec y2c = Vec::Unit(1, 0);
    Vec y2 = bb.split.p2.onb() * y2c;
    // closed form: [X1, Y]_qbar = s^2 [X1, Y2] when the p1 part of Y is zero
    Vec closed = bm.lift_g(Vec(s * s * g.bracket_structure(x1, y2)));
    Mat l = bm.lambda(bm.lift_g(x1));
    Vec got = bm.qbar_onb() * (l * bm.qbar_coeffs(bm.embed2(y2c)));
    CHECK((got - 0.5 * closed).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("natural reductivity across the corpus") {
  for (const char* id : {"su3_cp2", "su3_u1", "su4_so4", "so5_so3so2", "so5_s4", "so6_u3",
                         "sp2_u2", "sp2_sp1sp1", "su2_berger", "su3_group", "su2xsu2_product"}) {
    for (double s : {0.5, 1.0, 2.0}) {
      CAPTURE(id);
      CAPTURE(s);
      BarModel bar(built(id).split, s);
      CHECK(natural_reductivity_check(bar) < 1e-10);
    }
  }
}

TEST_CASE("holonomy algebra generation") {
  SUBCASE("berger sphere closes to so(3)") {
    BarModel bar(built("su2_berger").split, 0.5);
    HolonomySet hol = holonomy_algebra(bar);
    CHECK(hol.closure.size() == 3);
    CHECK(hol.skewness_residual < 1e-10);
    CHECK(hol.closedness_residual < 1e-10);
  }
  SUBCASE("closure is bounded by so(qbar)") {
    for (const char* id : {"su3_cp2", "sp2_sp1sp1"}) {
      BarModel bar(built(id).split, 0.7);
      HolonomySet hol = holonomy_algebra(bar);
      Index dq = bar.dim_qbar();
      CHECK(static_cast<Index>(hol.closure.size()) <= dq * (dq - 1) / 2);
      CHECK(hol.skewness_residual < 1e-10);
    }
  }
}

TEST_CASE("irreducibility verdicts") {
  SUBCASE("su(3) bundle is irreducible") {
    BarModel bar(built("su3_cp2").split, 0.7);
    MetricGs metric = metric_gs(built("su3_cp2").split, 0.7);
    HolonomySet hol = holonomy_algebra(bar);
    auto verdict = irreducibility_check(hol, metric);
    CHECK(verdict.irreducible);
    CHECK(verdict.commutant_dim == 1);
    CHECK(commutant_dim_oracle(hol.closure) == 1);
  }
  SUBCASE("round sphere at s = 1 stays irreducible") {
    BarModel bar(built("su2_berger").split, 1.0);
    MetricGs metric = metric_gs(built("su2_berger").split, 1.0);
    auto verdict = irreducibility_check(holonomy_algebra(bar), metric);
    CHECK(verdict.irreducible);
  }
  SUBCASE("berger commutant dimension matches the brute-force oracle") {
    BarModel bar(built("su2_berger").split, 0.5);
    HolonomySet hol = holonomy_algebra(bar);
    auto sc = symmetric_commutant(hol.closure, Mat(Mat::Identity(3, 3)));
    CHECK(sc.dim == 1);
    CHECK(commutant_dim_oracle(hol.closure) == 1);
  }
  SUBCASE("the product control splits") {
    const BuiltEntry& b = built("su2xsu2_product");
    for (double s : {0.5, 2.0}) {
      CAPTURE(s);
      BarModel bar(b.split, s);
      MetricGs metric = metric_gs(b.split, s);
      HolonomySet hol = holonomy_algebra(bar);
      auto verdict = irreducibility_check(hol, metric);
      CHECK_FALSE(verdict.irreducible);
      CHECK(verdict.commutant_dim >= 2);
      CHECK(verdict.commutant_dim == commutant_dim_oracle(hol.closure));
      REQUIRE(verdict.projectors.size() >= 2);
      CHECK(verdict.invariance_residual < 1e-8);
      // each projector really is invariant under every generator
      for (const Mat& p : verdict.projectors) {
        Mat q = Mat::Identity(p.rows(), p.cols()) - p;
        for (const Mat& a : hol.generators)
          CHECK((q * a * p).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("transvection dichotomy") {
  struct Row {
    const char* id;
    double s;
    Index dim;
  };
  for (Row r : {Row{"su3_cp2", 0.5, 9}, Row{"su3_cp2", 1.0, 8}, Row{"sp2_sp1sp1", 2.0, 13},
                Row{"sp2_sp1sp1", 1.0, 10}, Row{"su2_berger", 0.5, 4}, Row{"su2_berger", 1.0, 3},
                Row{"su3_group", 2.0, 12}, Row{"su3_group", 1.0, 8}}) {
    CAPTURE(r.id);
    CAPTURE(r.s);
    BarModel bar(built(r.id).split, r.s);
    CHECK(transvection_algebra(bar).dim == r.dim);
  }
}

TEST_CASE("fixed sets of the isotropy action") {
  SUBCASE("trivial k fixes everything") {
    auto fs = fixed_set_adk(built("su2_berger").split);
    CHECK(fs.vacuous);
    CHECK(fs.fixed.dim() == built("su2_berger").split.q.dim());
  }
  SUBCASE("su(3) entry: the fiber line") {
    auto fs = fixed_set_adk(built("su3_cp2").split);
    CHECK_FALSE(fs.vacuous);
    CHECK(fs.equals_p2);
    CHECK(fs.fixed.dim() == 1);
    CHECK(fs.p2_residual < 1e-10);
  }
  SUBCASE("sp(2) entry: the sp(1) fiber") {
    auto fs = fixed_set_adk(built("sp2_sp1sp1").split);
    CHECK(fs.equals_p2);
    CHECK(fs.fixed.dim() == 3);
    CHECK(fs.p2_residual < 1e-10);
  }
}

TEST_CASE("centers of the enlarged algebra") {
  SUBCASE("su(3) entry: one central fiber direction") {
    BarModel bar(built("su3_cp2").split, 0.5);
    auto cr = center_check(bar);
    CHECK(cr.dim_z_gbar == 1);
    CHECK(cr.dim_z_copy == 1);
    CHECK(cr.center_in_copy);
    CHECK(cr.containment_residual < 1e-10);
  }
  SUBCASE("sp(2) entry: semisimple fiber, no center") {
    BarModel bar(built("sp2_sp1sp1").split, 0.5);
    auto cr = center_check(bar);
    CHECK(cr.dim_z_gbar == 0);
    CHECK(cr.dim_z_copy == 0);
  }
  SUBCASE("k = h: no fiber, no center") {
    CorpusEntry e = find_entry("su3_cp2");
    e.k_choice = "all";
    BuiltEntry b = build_entry(e);
    BarModel bar(b.split, 0.5);
    auto cr = center_check(bar);
    CHECK(cr.dim_z_gbar == 0);
    CHECK(bar.dim_p2() == 0);
  }
  SUBCASE("product control: the two fiber circles") {
    BarModel bar(built("su2xsu2_product").split, 0.5);
    auto cr = center_check(bar);
    CHECK(cr.dim_z_gbar == 2);
    CHECK(cr.dim_z_copy == 2);
    CHECK(cr.center_in_copy);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "multisym/orbit_tangent.hpp"
#include "multisym/sample.hpp"
#include "oracles.hpp"

using namespace multisym;

TEST_CASE("type components have dims (1, 9, 9, 1) and decompose exactly") {
  KForm w = product_representative();
  TypeBasis tb = type_projectors(w);
  CHECK(tb.slots[0].size() == 1);
  CHECK(tb.slots[1].size() == 9);
  CHECK(tb.slots[2].size() == 9);
  CHECK(tb.slots[3].size() == 1);

  // the twenty adapted monomials span the whole grade-3 space
  Matrix all(20, 20);
  for (size_t i = 0; i < 20; ++i) all.set_row(i, tb.monomials[i].coordinates());
  CHECK(rank(all) == 20);

  auto parts = tb.decompose(w);
  CHECK(parts[0] == KForm::monomial({1, 2, 3}));
  CHECK(parts[1].is_zero());
  CHECK(parts[2].is_zero());
  CHECK(parts[3] == KForm::monomial({4, 5, 6}));

  auto parts2 = tb.decompose(KForm::monomial({1, 2, 4}));
  CHECK(parts2[1] == KForm::monomial({1, 2, 4}));
  CHECK(parts2[0].is_zero());
  CHECK(parts2[2].is_zero());
  CHECK(parts2[3].is_zero());

  SplitMix64 rng(5);
  KForm any = oracles::random_form(rng, 3);
  auto parts3 = tb.decompose(any);
  CHECK(parts3[0] + parts3[1] + parts3[2] + parts3[3] == any);

  CHECK_THROWS_AS(type_projectors(tangent_representative()), PreconditionError);
}

TEST_CASE("product ansatz matrices") {
  KForm w = product_representative();
  OperatorMatrix ident = script_p_matrix(w, Quadruple{Scalar(0), Scalar(0), Scalar(0), Scalar(1)});
  CHECK(ident.mat == Matrix::identity(20));

  OperatorMatrix pure = script_p_matrix(w, Quadruple{Scalar(1), Scalar(0), Scalar(0), Scalar(0)});
  CHECK(pure.mat * pure.mat == Matrix::identity(20));

  OperatorMatrix off = script_p_matrix(w, Quadruple{Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
  CHECK(off.mat * off.mat != Matrix::identity(20));
}

TEST_CASE("involution table at the representative and at a sample") {
  SplitMix64 rng(7);
  for (const KForm& w : {product_representative(),
                         pullback(sample_unimodular(rng.next()), product_representative())}) {
    InvolutionTable table = involution_table(w);
    REQUIRE(table.lines.size() == 16);
    CHECK(table.regenerated_matches);
    for (const auto& line : table.lines) {
      CHECK(line.squares_to_identity);
      CHECK(line.composition_matches);
    }
    // spot checks against the published correspondence
    CHECK(table.lines[8].q == quarter(1, 1, 1, -3));
    CHECK(table.lines[8].plus_slots == std::vector<size_t>{0});  // D30
    CHECK(table.lines[7].q == quarter(0, 0, 0, -4));
    CHECK(table.lines[7].plus_slots.empty());
    CHECK(table.lines[0].plus_slots == std::vector<size_t>{0, 2});  // D30 + D12
  }
}

TEST_CASE("random quadruples fail the involution condition") {
  KForm w = product_representative();
  detail::AnsatzUnits units = detail::ansatz_units(structure_extract(w).structure);
  SplitMix64 rng(13);
  int rejected = 0;
  for (int t = 0; t < 20; ++t) {
    Quadruple q{oracles::random_coeff(rng), oracles::random_coeff(rng),
                oracles::random_coeff(rng), oracles::random_coeff(rng)};
    bool published = false;
    for (const auto& p : detail::published_involutions())
      if (p == q) published = true;
    if (published) continue;
    Matrix m = detail::combine(units, q);
    if (m * m != Matrix::identity(20)) ++rejected;
  }
  CHECK(rejected >= 18);  // random draws are practically never solutions
}

TEST_CASE("complex ansatz and the four passing quadruples") {
  KForm w = complex_representative();
  OperatorMatrix pure = script_j_matrix(w, Quadruple{Scalar(1), Scalar(0), Scalar(0), Scalar(0)});
  Matrix minus_i = Scalar(-1) * Matrix::identity(20);
  CHECK(pure.mat * pure.mat == minus_i);

  OperatorMatrix mixed = script_j_matrix(
      w, Quadruple{Scalar(Rational(1, 2)), Scalar(0), Scalar(Rational(1, 2)), Scalar(0)});
  CHECK(mixed.mat * mixed.mat == minus_i);

  OperatorMatrix ident = script_j_matrix(w, Quadruple{Scalar(0), Scalar(0), Scalar(0), Scalar(1)});
  CHECK(ident.mat * ident.mat == Matrix::identity(20));  // fails the -I test

  ComplexTable table = complex_table(w);
  REQUIRE(table.passing.size() == 4);
  CHECK(table.passing[0] == quarter(4, 0, 0, 0));
  CHECK(table.passing[1] == quarter(-4, 0, 0, 0));
  // the half-quadruple signs are linked
  CHECK(table.passing[2] == quarter(2, 0, 2, 0));
  CHECK(table.passing[3] == quarter(-2, 0, -2, 0));
  CHECK(table.scanned[3].q == quarter(2, 0, -2, 0));
  CHECK_FALSE(table.scanned[3].passes);
  CHECK(table.scanned[4].q == quarter(-2, 0, 2, 0));
  CHECK_FALSE(table.scanned[4].passes);

  CHECK_THROWS_AS(complex_table(product_representative()), PreconditionError);
}

TEST_CASE("filtration subspaces at the tangent representative") {
  KForm w = tangent_representative();
  TangentBases tb = tangent_space_basis(w);
  CHECK(tb.d1.dim() == 1);
  CHECK(tb.d2.dim() == 10);
  CHECK(tb.d3.dim() == 19);
  CHECK(subspace_contains(tb.d2, tb.d1));
  CHECK(subspace_contains(tb.d3, tb.d2));
  // the base point itself lies in D2
  CHECK(subspace_contains(tb.d2, w.coordinates()));
  // D1 is spanned by the complement volume
  CHECK(subspace_contains(tb.d1, KForm::monomial({4, 5, 6}).coordinates()));
}

TEST_CASE("the derivation operator is 3-step nilpotent with ranks (10, 1)") {
  KForm w = tangent_representative();
  OperatorMatrix n = n_operator(w);
  REQUIRE(n.dim() == 19);
  Matrix n2 = n.mat * n.mat;
  Matrix n3 = n2 * n.mat;
  CHECK(n3.is_zero());
  CHECK(rank(n.mat) == 10);
  CHECK(rank(n2) == 1);
}

TEST_CASE("filtration report at the representative and a sample") {
  SplitMix64 rng(21);
  for (const KForm& w : {tangent_representative(),
                         pullback(sample_unimodular(rng.next()), tangent_representative())}) {
    FiltrationReport rep = n_filtration(w);
    CHECK(rep.dim_d1 == 1);
    CHECK(rep.dim_ker_n == 9);
    CHECK(rep.dim_d2 == 10);
    CHECK(rep.dim_im_n == 10);
    CHECK(rep.dim_ker_n2 == 18);
    CHECK(rep.dim_d3 == 19);
    CHECK(rep.dim_im_n2 == 1);
    CHECK(rep.chain_ok);
    CHECK(rep.im_n2_is_d1);
    CHECK(rep.im_n_is_d2);
    CHECK(rep.ker_n2_is_wedge_annihilator);
    CHECK(rep.n_cubed_zero);
    CHECK(rep.omega_in_d2);
    CHECK(rep.trace_criterion_ok);
  }
}

TEST_CASE("k endomorphism values") {
  KForm w = tangent_representative();
  KEndo identity_case = k_endo(w, w);
  CHECK(identity_case.k == Matrix::identity(3));
  CHECK(identity_case.trace == Scalar(3));

  KEndo d1_case = k_endo(w, KForm::monomial({4, 5, 6}));
  CHECK(d1_case.k.is_zero());
  CHECK(d1_case.trace.is_zero());

  // a trace-zero member of D2 is killed by the derivation
  KForm traceless = KForm::monomial({1, 4, 5}) - KForm::monomial({2, 4, 6});
  KEndo tz = k_endo(w, traceless);
  CHECK(tz.trace.is_zero());
  CHECK(insertion_derivation(structure_extract(w).structure, traceless).is_zero());

  CHECK_THROWS_AS(k_endo(w, KForm::monomial({1, 2, 3})), PreconditionError);
  CHECK_THROWS_AS(k_endo(w, KForm::monomial({1, 2, 4})), PreconditionError);
}

TEST_CASE("witness pairs") {
  Witness wt = witness_nonintegrable(tangent_representative(), WitnessKind::KerN2);
  CHECK(wt.first == KForm::monomial({1, 2, 5}));
  CHECK(wt.second == KForm::monomial({3, 4, 6}));
  CHECK(wt.top == KForm::monomial({1, 2, 3, 4, 5, 6}));

  Witness wp = witness_nonintegrable(product_representative(), WitnessKind::D21xD12);
  CHECK(wp.first == KForm::monomial({1, 2, 4}));
  CHECK(wp.second == KForm::monomial({3, 5, 6}));
  CHECK_FALSE(wp.top.is_zero());
  CHECK(wp.first != wp.second);
  CHECK(wedge(wp.first, wp.first).is_zero());  // a self-pair can never be a witness

  CHECK_THROWS_AS(witness_nonintegrable(complex_representative(), WitnessKind::KerN2),
                  PreconditionError);
  CHECK_THROWS_AS(witness_nonintegrable(tangent_representative(), WitnessKind::D21xD12),
                  PreconditionError);
}

TEST_CASE("witnesses exist at sampled points of both orbits") {
  SplitMix64 rng(31);
  for (int t = 0; t < 3; ++t) {
    KForm wp = pullback(sample_unimodular(rng.next()), product_representative());
    Witness a = witness_nonintegrable(wp, WitnessKind::D21xD12);
    CHECK_FALSE(a.top.is_zero());
    KForm w0 = pullback(sample_unimodular(rng.next()), tangent_representative());
    Witness b = witness_nonintegrable(w0, WitnessKind::KerN2);
    CHECK_FALSE(b.top.is_zero());
    // both members annihilate the base point under wedge
    CHECK(wedge(w0, b.first).is_zero());
    CHECK(wedge(w0, b.second).is_zero());
  }
}

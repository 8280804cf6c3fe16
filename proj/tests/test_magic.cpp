#include <cmath>

#include "doctest.h"
#include "mcmv/errors.hpp"
#include "mcmv/magic.hpp"
#include "support.hpp"

using namespace mcmv;

TEST_SUITE("magic") {

TEST_CASE("partial fractions of closed forms") {
  const MonodromyEvaluator free(VerblunskySequence({0.0, 0.0}), PoleVector::origin());
  const SuitableRational r0 = partial_fractions(free);
  CHECK(std::abs(r0.c) < 1e-14);
  REQUIRE(r0.terms.size() == 1);
  REQUIRE(r0.terms[0].coeffs.size() == 1);
  CHECK(std::abs(r0.terms[0].coeffs[0] - 1.0) < 1e-14);

  const double a = std::sqrt(0.5);
  const SuitableRational r1 = partial_fractions(MonodromyEvaluator(VerblunskySequence({a, a}), PoleVector::origin()));
  CHECK(std::abs(r1.c - 2.0) < 1e-13);
  CHECK(std::abs(r1.terms[0].coeffs[0] - 2.0) < 1e-13);

  testkit::Rng rng;
  for (int i = 0; i < 10; ++i) {
    const auto inst = testkit::random_instance(rng, 1 + i % 3);
    const MonodromyEvaluator ev(inst.seq, inst.z);
    const SuitableRational r = partial_fractions(ev);
    for (int k = 0; k < 20; ++k) {
      const cplx z = rng.annulus(0.05, 1.5);
      bool near = false;
      for (const cplx& p : inst.z.points())
        near = near || std::abs(z - p) < 0.05 || (p != 0.0 && std::abs(z - reflect(p)) < 0.05);
      if (!near) CHECK(testkit::rel_err(r.eval(z), ev.discriminant(z)) < 1e-10);
    }
    for (const SuitableTerm& t : r.terms) CHECK(std::abs(t.coeffs[0]) > 1e-6);
  }
  CHECK_THROWS_AS(partial_fractions([](cplx z) { return 1.0 / (z - 0.5); }, {{cplx(0.0), 1}}), NumericError);
}

TEST_CASE("rational functions of the operator") {
  testkit::Rng rng;
  const auto inst = testkit::random_instance(rng, 2);
  SuitableRational cst;
  cst.c = 1.75;
  const BandedWindow w = rational_of_operator(cst, inst.seq, inst.z, 0, 12);
  CHECK((w.entries - 1.75 * Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-15);

  const VerblunskySequence seq({rng.disk(0.8), rng.disk(0.8)});
  SuitableRational b0;
  b0.terms.push_back({0.0, {1.0}});
  const BandedWindow r = rational_of_operator(b0, seq, PoleVector::origin(), 0, 10);
  // Columns/rows at the edge of the window see entries from outside it.
  const Eigen::MatrixXcd cc = cmv_window(seq, -4, 14).entries;
  const Eigen::MatrixXcd sym = cc + cc.adjoint();
  CHECK((r.entries - sym.block(4, 4, 10, 10)).cwiseAbs().maxCoeff() < 1e-14);

  const BandedWindow d = rational_of_operator(partial_fractions(MonodromyEvaluator(inst.seq, inst.z)), inst.seq, inst.z, 0, 16);
  CHECK((d.entries - d.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
  CHECK_THROWS_AS(rational_of_operator(cst, inst.seq, inst.z, 4, 4), DomainError);
  CHECK_THROWS_AS(rational_of_operator(b0, seq, PoleVector::origin(), 0, 4, 1), DomainError);
}

TEST_CASE("magic formula") {
  const MagicReport f = magic_check(VerblunskySequence({0.0, 0.0}), PoleVector::origin(), -4, 8);
  CHECK(f.pass);
  CHECK(f.max_deviation < 1e-14);

  testkit::Rng rng;
  std::vector<cplx> block(4);
  for (cplx& a : block) a = rng.disk(0.8);
  const VerblunskySequence seq(block, 0.7);
  const PoleVector z({0.0, cplx(0.3, 0.2)});
  const MagicReport ok = magic_check(seq, z, 0, 12);
  CHECK(ok.pass);
  CHECK(ok.max_deviation < 1e-9);
  CHECK(ok.tol == 1e-9);
  CHECK_FALSE(ok.per_diagonal.empty());

  const MagicReport bad = magic_check(seq.with_override(5, seq.a(5) + cplx(0.1, -0.05)), z, 0, 12);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_deviation > 1e-3);
}

TEST_CASE("vanishing check") {
  testkit::Rng rng;
  const auto inst = testkit::random_instance(rng, 2);
  const VanishingReport zero = suitable_vanishing_check(SuitableRational{}, inst.seq, inst.z, 0, 16);
  CHECK(zero.operator_norm == 0.0);
  CHECK(zero.max_recovered < 1e-12);
  CHECK(zero.pass);

  const SuitableRational delta = partial_fractions(MonodromyEvaluator(inst.seq, inst.z));
  const VanishingReport dv = suitable_vanishing_check(delta, inst.seq, inst.z, 0, 16);
  CHECK(dv.pass);
  CHECK(dv.coefficient_error < 1e-8);

  for (int k = 0; k < 2; ++k) {
    SuitableRational one;
    for (int j = 0; j < 2; ++j) one.terms.push_back({inst.z[j], {j == k ? 1.0 : 0.0}});
    const VanishingReport rep = suitable_vanishing_check(one, inst.seq, inst.z, 0, 16);
    CHECK(rep.pass);
    CHECK(rep.outermost_offset == 4);
    // r(A) = b(A) + b(A)^*: the offset-4 entry in row 2k comes from b(A) alone.
    const BandedWindow r = rational_of_operator(one, inst.seq, inst.z, 0, 16);
    const BandedWindow b = blaschke_of_mcmv(inst.seq, inst.z, k, 0, 16);
    CHECK(std::abs(r.at(2 * k, 2 * k + 4) - b.at(2 * k, 2 * k + 4) - std::conj(b.at(2 * k + 4, 2 * k))) < 1e-13);
    CHECK(std::abs(b.at(2 * k, 2 * k + 4) - corner_entry(inst.seq, inst.z, k)) < 1e-10);
  }
}

}

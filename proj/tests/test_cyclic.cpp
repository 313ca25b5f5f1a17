#include <catch2/catch_amalgamated.hpp>

#include "hcc/cyclic.hpp"
#include "hcc/hopf.hpp"

using namespace hcc;
using namespace hcc::hopf;

namespace {
const HopfOps ops;
const CyclicOps cyc(ops);

CyclicCochain pure1(const Gen& g) { return CyclicCochain::pure({PbwMonomial(g)}); }
}  // namespace

TEST_CASE("faces") {
  CyclicCochain d1 = pure1(Gen::delta(1));

  CyclicCochain f0 = cyc.face(0, d1);
  CyclicCochain e0(2);
  e0 = CyclicCochain::pure({PbwMonomial::unit(), PbwMonomial(Gen::delta(1))});
  REQUIRE(f0 == e0);

  // face(1, d1) = 1 (x) d1 + d1 (x) 1 via the coproduct.
  CyclicCochain f1 = cyc.face(1, d1);
  TensorElement t(2);
  t.add_term({PbwMonomial::unit(), PbwMonomial(Gen::delta(1))}, Scalar::one());
  t.add_term({PbwMonomial(Gen::delta(1)), PbwMonomial::unit()}, Scalar::one());
  REQUIRE(f1 == CyclicCochain(t));

  // The top face appends the unit; its index equals the output degree.
  CyclicCochain xy = CyclicCochain::pure({PbwMonomial(Gen::X()), PbwMonomial(Gen::Y())});
  CyclicCochain f3 = cyc.face(3, xy);
  REQUIRE(f3 == CyclicCochain::pure({PbwMonomial(Gen::X()), PbwMonomial(Gen::Y()),
                                     PbwMonomial::unit()}));
  // The inner face applies the coproduct to the named slot.
  CyclicCochain f2 = cyc.face(2, xy);
  TensorElement t2(3);
  t2.add_term({PbwMonomial(Gen::X()), PbwMonomial::unit(), PbwMonomial(Gen::Y())},
              Scalar::one());
  t2.add_term({PbwMonomial(Gen::X()), PbwMonomial(Gen::Y()), PbwMonomial::unit()},
              Scalar::one());
  REQUIRE(f2 == CyclicCochain(t2));
  REQUIRE_THROWS_AS(cyc.face(4, xy), std::out_of_range);
}

TEST_CASE("degeneracies") {
  CyclicCochain c = CyclicCochain::pure({PbwMonomial::unit(), PbwMonomial(Gen::delta(1))});
  REQUIRE(cyc.degeneracy(0, c) == pure1(Gen::delta(1)));

  CyclicCochain xy = CyclicCochain::pure({PbwMonomial(Gen::X()), PbwMonomial(Gen::Y())});
  REQUIRE(cyc.degeneracy(0, xy).is_zero());

  CyclicCochain d1_1 = CyclicCochain::pure({PbwMonomial(Gen::delta(1)), PbwMonomial::unit()});
  REQUIRE(cyc.degeneracy(1, d1_1) == pure1(Gen::delta(1)));
}

TEST_CASE("simplicial identities on samples") {
  Rng rng(3);
  for (const auto& c : sample_cochains(ops, 2, 10)) {
    // d^j d^i = d^i d^{j-1} for i < j
    for (int j = 1; j <= 3; ++j)
      for (int i = 0; i < j; ++i)
        REQUIRE(cyc.face(j, cyc.face(i, c)) == cyc.face(i, cyc.face(j - 1, c)));
    // s_j s_i = s_i s_{j+1} for i <= j ; checked one degree up
    CyclicCochain up = cyc.face(0, cyc.face(0, c));
    for (int i = 0; i <= 1; ++i)
      for (int j = i; j <= 1; ++j)
        REQUIRE(cyc.degeneracy(j, cyc.degeneracy(i, up)) ==
                cyc.degeneracy(i, cyc.degeneracy(j + 1, up)));
  }
  (void)rng;
}

TEST_CASE("cyclic operator in degree 1 is the twisted antipode") {
  REQUIRE(cyc.cyclic_op(pure1(Gen::delta(1))) ==
          Scalar(-1) * pure1(Gen::delta(1)));

  Rng rng(31);
  auto monos = enumerate_monomials(3, 3);
  for (int t = 0; t < 20; ++t) {
    HopfElement h(monos[rng.below(monos.size())]);
    h *= rng.small_rational_nonzero();
    TensorElement one_tensor(1);
    for (const auto& [m, c] : h.terms()) one_tensor.add_term({m}, c);
    CyclicCochain c1(one_tensor);
    REQUIRE(cyc.cyclic_op(cyc.cyclic_op(c1)) == c1);
  }
}

TEST_CASE("tau_2 has order 3") {
  CyclicCochain c =
      CyclicCochain::pure({PbwMonomial(Gen::delta(1)), PbwMonomial(Gen::Y())});
  CyclicCochain t3 = cyc.cyclic_op(cyc.cyclic_op(cyc.cyclic_op(c)));
  REQUIRE(t3 == c);
}

TEST_CASE("cyclicity suite n <= 3") {
  CyclicityReport rep = verify_cyclicity(ops, 3, 12);
  for (const auto& e : rep.entries) {
    INFO("degree " << e.degree << " counterexample " << e.counterexample);
    REQUIRE(e.passed);
  }
}

TEST_CASE("untwisted antipode fails cyclicity in degree 2 (negative control)") {
  bool failed = false;
  auto plain_S = [&](const HopfElement& h) { return ops.antipode(h); };
  for (const auto& c : sample_cochains(ops, 2, 10)) {
    CyclicCochain it = c;
    for (int k = 0; k <= 2; ++k) it = cyc.cyclic_op_with(it, plain_S);
    if (!(it == c)) {
      failed = true;
      break;
    }
  }
  REQUIRE(failed);
}

TEST_CASE("hochschild b basics") {
  REQUIRE(cyc.hochschild_b(pure1(Gen::delta(1))).is_zero());

  CyclicCochain c0(TensorElement::scalar(Scalar::one()));
  REQUIRE(cyc.hochschild_b(c0).is_zero());

  Rng rng(8);
  for (const auto& c : sample_cochains(ops, 1, 8)) {
    REQUIRE(cyc.hochschild_b(cyc.hochschild_b(c)).is_zero());
  }
  for (const auto& c : sample_cochains(ops, 2, 8)) {
    REQUIRE(cyc.hochschild_b(cyc.hochschild_b(c)).is_zero());
  }
  (void)rng;
}

TEST_CASE("connes B and the bicomplex relations") {
  // Degree-1 B against the stepwise definition.
  CyclicCochain h = pure1(Gen::X());
  CyclicCochain manual =
      cyc.degeneracy(0, cyc.cyclic_op(h)) + cyc.degeneracy(0, h);
  REQUIRE(cyc.connes_B(h) == manual);

  for (const auto& c : sample_cochains(ops, 2, 8)) {
    REQUIRE(cyc.connes_B(cyc.connes_B(cyc.face(0, c))).is_zero());
    CyclicCochain bB = cyc.hochschild_b(cyc.connes_B(c));
    CyclicCochain Bb = cyc.connes_B(cyc.hochschild_b(c));
    REQUIRE((bB + Bb).is_zero());
  }
  for (const auto& c : sample_cochains(ops, 3, 6)) {
    REQUIRE(cyc.connes_B(cyc.connes_B(c)).is_zero());
  }
  for (const auto& c : sample_cochains(ops, 1, 8)) {
    CyclicCochain bB = cyc.hochschild_b(cyc.connes_B(c));
    CyclicCochain Bb = cyc.connes_B(cyc.hochschild_b(c));
    REQUIRE((bB + Bb).is_zero());
  }
}

TEST_CASE("b preserves cyclicity on projected samples") {
  for (const auto& c : sample_cochains(ops, 2, 6)) {
    CyclicCochain pc = cyc.cyclic_projection(c);
    if (pc.is_zero()) continue;
    REQUIRE(cyc.is_cyclic(pc));
    REQUIRE(cyc.is_cyclic(cyc.hochschild_b(pc)));
  }
}

TEST_CASE("right-nesting of the iterated coproduct is immaterial") {
  Rng rng(12);
  auto monos = enumerate_monomials(3, 3);
  for (int t = 0; t < 10; ++t) {
    HopfElement h(monos[rng.below(monos.size())]);
    // Left-nested variant: apply Delta to the first slot instead.
    TensorElement rightn = ops.iterated_coproduct(h, 3);
    TensorElement leftn(3);
    TensorElement dh = ops.coproduct(h);
    for (const auto& [key, c] : dh.terms()) {
      TensorElement dl = ops.coproduct(HopfElement(key[0]));
      for (const auto& [k2, c2] : dl.terms())
        leftn.add_term({k2[0], k2[1], key[1]}, c * c2);
    }
    REQUIRE(rightn == leftn);
  }
}

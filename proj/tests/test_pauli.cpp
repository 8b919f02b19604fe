// Copyright 2026 The qcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "oracles/dense_oracle.hpp"
#include "qcap/pauli.hpp"
#include "qcap/tableau.hpp"
#include "test_util.hpp"

namespace qcap {
namespace {

TEST(SignedPauli, WeightCountsNonIdentityLetters) {
  EXPECT_EQ(SignedPauli(4).weight(), 0u);
  EXPECT_EQ(SignedPauli::single(4, 0, PauliLetter::X).weight(), 1u);
  SignedPauli p(4);
  p.set_letter(1, PauliLetter::Y);
  p.set_letter(3, PauliLetter::Z);
  EXPECT_EQ(p.weight(), 2u);
}

TEST(SignedPauli, ContainsXy) {
  EXPECT_FALSE(SignedPauli::from_string("ZZI").contains_xy());
  EXPECT_TRUE(SignedPauli::from_string("IYI").contains_xy());
  EXPECT_FALSE(SignedPauli(3).contains_xy());
}

TEST(SignedPauli, StringRoundTrip) {
  for (const char *text : {"+XIZY", "-ZZ", "+I", "-YXZI"}) {
    EXPECT_EQ(SignedPauli::from_string(text).to_string(), text);
  }
  EXPECT_EQ(SignedPauli::from_string("XX").to_string(), "+XX");
  EXPECT_THROW(SignedPauli::from_string("XQ"), ValidationError);
  EXPECT_THROW(SignedPauli::from_string(""), ValidationError);
}

TEST(SignedPauli, CommutationMatchesDenseMatrices) {
  Rng rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const uint32_t n = 1 + rng.uniform_u64(3);
    SignedPauli a = test::random_pauli(n, rng);
    SignedPauli b = test::random_pauli(n, rng);
    Eigen::MatrixXcd ma = pauli_matrix(a), mb = pauli_matrix(b);
    bool commute_dense = ((ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12);
    EXPECT_EQ(a.commutes_with(b), commute_dense);
  }
}

TEST(Tableau, IdentityFixesEverything) {
  CliffordTableau t = CliffordTableau::identity(3);
  Rng rng(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    SignedPauli p = test::random_pauli(3, rng);
    EXPECT_EQ(t.conjugate(p), p);
  }
  EXPECT_TRUE(t.is_identity());
}

TEST(Tableau, XpiSendsZToMinusZ) {
  Layer layer{{Gate{GateKind::Xpi, 0}}};
  CliffordTableau t = CliffordTableau::of_layer(layer, 1);
  SignedPauli z = SignedPauli::from_string("+Z");
  EXPECT_EQ(t.conjugate(z).to_string(), "-Z");
}

TEST(Tableau, CnotSendsXiToXx) {
  Layer layer{{Gate{GateKind::Cnot, 0, 1}}};
  CliffordTableau t = CliffordTableau::of_layer(layer, 2);
  EXPECT_EQ(t.conjugate(SignedPauli::from_string("+XI")).to_string(), "+XX");
  EXPECT_EQ(t.conjugate(SignedPauli::from_string("+IZ")).to_string(), "+ZZ");
  EXPECT_EQ(t.conjugate(SignedPauli::from_string("+IX")).to_string(), "+IX");
  EXPECT_EQ(t.conjugate(SignedPauli::from_string("+ZI")).to_string(), "+ZI");
}

TEST(Tableau, EveryGateMatchesDenseConjugationOnAllSignedPaulis) {
  // Single-qubit gates at n = 1, CNOT at n = 2, embedded variants at n = 3.
  for (int k = 0; k < kNumGateKinds; ++k) {
    auto kind = static_cast<GateKind>(k);
    const uint32_t n = is_two_qubit(kind) ? 2 : 1;
    Gate gate{kind, 0, 1};
    Layer layer{{gate}};
    CliffordTableau t = CliffordTableau::of_layer(layer, n);
    Eigen::MatrixXcd u = oracle::layer_unitary(layer, n);
    const size_t count = 1ULL << (2 * n);
    for (size_t code = 1; code < count; ++code) {
      SignedPauli p(n);
      for (uint32_t q = 0; q < n; ++q) {
        p.set_letter(q, static_cast<PauliLetter>((code >> (2 * (n - 1 - q))) & 3));
      }
      for (int sign : {1, -1}) {
        p.set_sign(sign);
        EXPECT_EQ(t.conjugate(p), oracle::conjugate_dense(u, p))
            << gate_label(kind) << " on " << p.to_string();
      }
    }
  }
}

TEST(Tableau, RandomLayersMatchDenseOnAllGenerators) {
  Rng rng(23, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const uint32_t n = 2 + rng.uniform_u64(2);  // 2 or 3
    Layer layer = test::random_layer(n, rng);
    CliffordTableau t = CliffordTableau::of_layer(layer, n);
    Eigen::MatrixXcd u = oracle::layer_unitary(layer, n);
    const size_t count = 1ULL << (2 * n);
    for (size_t code = 1; code < count; ++code) {
      SignedPauli p(n);
      for (uint32_t q = 0; q < n; ++q) {
        p.set_letter(q, static_cast<PauliLetter>((code >> (2 * (n - 1 - q))) & 3));
      }
      for (int sign : {1, -1}) {
        p.set_sign(sign);
        EXPECT_EQ(t.conjugate(p), oracle::conjugate_dense(u, p));
      }
    }
  }
}

TEST(Tableau, ComposeIdentityIsNeutral) {
  Rng rng(7, 0);
  Layer layer = test::random_layer(3, rng);
  CliffordTableau t = CliffordTableau::of_layer(layer, 3);
  CliffordTableau id = CliffordTableau::identity(3);
  EXPECT_TRUE(CliffordTableau::compose(id, t) == t);
  EXPECT_TRUE(CliffordTableau::compose(t, id) == t);
}

TEST(Tableau, ComposeXpi2TwiceGivesXpi) {
  Layer half{{Gate{GateKind::Xpi2, 0}}};
  Layer full{{Gate{GateKind::Xpi, 0}}};
  CliffordTableau t_half = CliffordTableau::of_layer(half, 1);
  CliffordTableau t_full = CliffordTableau::of_layer(full, 1);
  EXPECT_TRUE(CliffordTableau::compose(t_half, t_half) == t_full);
}

TEST(Tableau, InverseLayerComposesToIdentity) {
  Rng rng(31, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t n = 1 + rng.uniform_u64(3);
    Layer layer = test::random_layer(n, rng);
    CliffordTableau t = CliffordTableau::of_layer(layer, n);
    CliffordTableau inv = CliffordTableau::of_layer(invert_layer(layer), n);
    EXPECT_TRUE(CliffordTableau::compose(inv, t).is_identity());
  }
}

TEST(Tableau, ComposeIsConjugationHomomorphism) {
  Rng rng(43, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t n = 1 + rng.uniform_u64(4);
    CliffordTableau a = test::random_tableau(n, 3, rng);
    CliffordTableau b = test::random_tableau(n, 3, rng);
    SignedPauli p = test::random_pauli(n, rng);
    EXPECT_EQ(CliffordTableau::compose(a, b).conjugate(p),
              a.conjugate(b.conjugate(p)));
  }
}

TEST(Tableau, ConjugationPreservesCommutation) {
  Rng rng(53, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t n = 1 + rng.uniform_u64(4);
    CliffordTableau t = test::random_tableau(n, 4, rng);
    SignedPauli p = test::random_pauli(n, rng);
    SignedPauli q = test::random_pauli(n, rng);
    EXPECT_EQ(t.conjugate(p).commutes_with(t.conjugate(q)),
              p.commutes_with(q));
  }
}

TEST(Tableau, ConjugationIsSignInvolutive) {
  Rng rng(61, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t n = 1 + rng.uniform_u64(4);
    CliffordTableau t = test::random_tableau(n, 4, rng);
    SignedPauli p = test::random_pauli(n, rng);
    EXPECT_EQ(t.conjugate(p.negated()), t.conjugate(p).negated());
  }
}

TEST(Tableau, RejectsDimensionMismatch) {
  CliffordTableau t = CliffordTableau::identity(2);
  EXPECT_THROW(t.conjugate(SignedPauli(3)), ValidationError);
  EXPECT_THROW(
      CliffordTableau::compose(t, CliffordTableau::identity(3)),
      ValidationError);
}

TEST(Layer, ValidationCatchesOverlapsAndRange) {
  Layer overlap{{Gate{GateKind::Xpi, 0}, Gate{GateKind::Cnot, 0, 1}}};
  EXPECT_THROW(validate_layer(overlap, 2), ValidationError);
  Layer out_of_range{{Gate{GateKind::Xpi, 5}}};
  EXPECT_THROW(validate_layer(out_of_range, 2), ValidationError);
  EXPECT_THROW(gate_from_label("Hadamard"), ValidationError);
}

}  // namespace
}  // namespace qcap

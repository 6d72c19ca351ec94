#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "gringcheck/logarithm.hpp"

using namespace gring;

namespace {
LevelParams P3{3, 2, 0, 0};
}

TEST_CASE("log and exp on 1-units") {
  CoeffRing R(3, 7);  // generous guard
  Group C9 = build_group("C_9", P3);
  GRingCtx X{&C9, &R};
  // log(1) = 0
  CHECK(gr_is_zero(X, log_one_unit(X, gr_one(X), 2)));
  // exp(log(u)) = u on 1 + 3 R[A] at reported precision
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    GRElt u = gr_random_one_unit(X, rng);
    GRElt lg = log_one_unit(X, u, 5);
    GRElt back = exp_one_unit(X, lg, 2);
    CHECK(gr_eq_mod(X, back, u, 2));
  }
  // term-by-term valuation: log(1 + 3x) has valuation >= 1
  for (int t = 0; t < 10; ++t) {
    GRElt u = gr_random_one_unit(X, rng);
    CHECK(gr_val(X, log_one_unit(X, u, 5)) >= 1);
  }
  // non-1-unit input rejected
  CHECK_THROWS(log_one_unit(X, gr_basis(X, 1), 2));
}

TEST_CASE("Wall congruences") {
  CoeffRing R(3, 3);
  // C_3: g^3 = Psi(g) exactly
  Group C3 = build_group("C_3", P3);
  GRingCtx X3{&C3, &R};
  GRElt g = gr_basis(X3, 1);
  CHECK(gr_pow(X3, g, 3) == psi_ring(X3, g));
  // random elements over C_9 / Z27: congruence mod 3
  Group C9 = build_group("C_9", P3);
  GRingCtx X9{&C9, &R};
  Rng rng(5);
  for (int t = 0; t < 200; ++t) CHECK(wall_abelian(X9, gr_random(X9, rng)));
  // Heis T-form on random elements (units and not)
  Group H = build_group("Heis_27", P3);
  GRingCtx XH{&H, &R};
  for (int t = 0; t < 200; ++t) CHECK(wall_T(XH, gr_random(XH, rng)));
  // z-product T-form
  Group Z = build_group("C2_x_Heis27", P3);
  GRingCtx XZ{&Z, &R};
  for (int t = 0; t < 50; ++t) CHECK(wall_T(XZ, gr_random(XZ, rng)));
}

TEST_CASE("psi commutes with gamma-quotient deflation") {
  CoeffRing R(3, 3);
  Group C27 = build_group("C_27", P3);
  Subgroup N = closure(C27, {9});  // order-3 kernel: C_27 -> C_9
  QuotientGroup Q = quotient(C27, N);
  GRingCtx X{&C27, &R}, XQ{Q.group.get(), &R};
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    GRElt x = gr_random(X, rng);
    CHECK(defl_ring(X, XQ, Q, psi_ring(X, x)) ==
          psi_ring(XQ, defl_ring(X, XQ, Q, x)));
  }
}

TEST_CASE("integral logarithm: torsion and scalar inputs vanish") {
  LevelParams P{3, 2, 0, 0};
  CoeffRing R(3, 14);  // generous fixed guard for direct calls
  for (const char* id : {"C_9", "Heis_27"}) {
    Group G = build_group(id, P);
    GRingCtx X{&G, &R};
    CHECK(t_is_zero(X, integral_log(X, gr_one(X), 2)));
    // group elements have L = 0
    for (int g = 0; g < G.order(); g += 4)
      CHECK(t_is_zero(X, integral_log(X, gr_basis(X, g), 2)));
    // Teichmueller scalars too
    CHECK(t_is_zero(X, integral_log(X, gr_scalar(X, R.from_int(R.mod() - 1)),
                                    2)));
  }
}

TEST_CASE("integral logarithm agrees with the abelian closed form") {
  LevelParams P{3, 3, 0, 0};
  CoeffRing R(3, 15);
  Group C9 = build_group("C_9", P);
  GRingCtx X{&C9, &R};
  // u = 1 + 3g: worked example against the direct formula
  GRElt u = gr_add(X, gr_one(X), gr_scale(X, R.from_int(3), gr_basis(X, 1)));
  TElt viaT = integral_log(X, u, 3);
  GRElt direct = integral_log_abelian(X, u, 3);
  CHECK(viaT.c == direct.c);
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    GRElt v = gr_random_unit(X, rng);
    CHECK(integral_log(X, v, 3).c == integral_log_abelian(X, v, 3).c);
  }
}

TEST_CASE("integral logarithm: additivity on commuting factorizations") {
  LevelParams P{3, 2, 0, 0};
  CoeffRing R(3, 14);
  Group C9 = build_group("C_9", P);
  GRingCtx X{&C9, &R};
  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    GRElt u = gr_random_unit(X, rng), v = gr_random_unit(X, rng);
    TElt lhs = integral_log(X, gr_mul(X, u, v), 2);
    TElt rhs = t_add(X, integral_log(X, u, 2), integral_log(X, v, 2));
    CHECK(t_eq_mod(X, lhs, rhs, 2));
  }
  // central scalar times 1-unit in a nonabelian ring
  Group H = build_group("Heis_27", P);
  GRingCtx XH{&H, &R};
  for (int t = 0; t < 20; ++t) {
    GRElt u = gr_random_one_unit(XH, rng);
    int z = H.center()[1];
    GRElt zu = gr_mul(XH, gr_basis(XH, z), u);
    TElt lhs = integral_log(XH, zu, 2);
    TElt rhs = t_add(XH, integral_log(XH, gr_basis(XH, z), 2),
                     integral_log(XH, u, 2));
    CHECK(t_eq_mod(XH, lhs, rhs, 2));
  }
}

TEST_CASE("integral logarithm: stability and z-products") {
  LevelParams P{3, 2, 0, 0};
  CoeffRing Rgen(3, generation_digits(P));
  for (const char* id : {"Heis_27", "C2_x_Heis27", "C4_x_Heis27"}) {
    Group G = build_group(id, P);
    GRingCtx Xg{&G, &Rgen};
    Rng rng(derive_seed(9, id, "stab", 0));
    for (int t = 0; t < 10; ++t) {
      GRElt u = gr_random_unit(Xg, rng);
      StableLog s = integral_log_stable(G, P, u.c);
      CHECK(s.stable);
    }
  }
}

TEST_CASE("lemma F") {
  LevelParams P{3, 2, 0, 0};
  CoeffRing R(3, 2 + P.effective_guard());
  Group H = build_group("Heis_27", P);
  Subgroup A{&H, H.abelian_normal()};
  MWContext C(H, R, A);
  Subgroup Cs = closure(H, {H.center()[1]});
  // beta = 0: member trivially
  LemmaFReport rep0 = lemmaF_check(C, Cs, gr_zero(C.XA), 2);
  CHECK(rep0.pass);
  CHECK(rep0.intermediate_pass);
  // single generator a(c-1)
  {
    int c = C.a_index(Cs.elems[1]);
    GRElt gen = gr_sub(C.XA, gr_basis(C.XA, C.act.Amat.group->mul(1, c)),
                       gr_basis(C.XA, 1));
    LemmaFReport rep = lemmaF_check(C, Cs, gen, 2);
    CHECK(rep.pass);
    CHECK(rep.intermediate_pass);
  }
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    GRElt beta = random_ideal_b(C, Cs, rng);
    LemmaFReport rep = lemmaF_check(C, Cs, beta, 2);
    CHECK(rep.pass);
    CHECK(rep.intermediate_pass);
  }
  // Gamma-style catalog entry (central cyclic factor times Heis)
  Group GH = build_group("Gamma3_x_Heis27", P);
  Subgroup GA{&GH, GH.abelian_normal()};
  MWContext CG(GH, R, GA);
  auto centrals = GH.center();
  Subgroup CsG = closure(GH, {0});
  for (int z : centrals)
    if (GH.elem_order(z) == 3 && GA.contains(z)) {
      CsG = closure(GH, {z});
      break;
    }
  REQUIRE(CsG.order() == 3);
  for (int t = 0; t < 3; ++t) {
    GRElt beta = random_ideal_b(CG, CsG, rng);
    LemmaFReport rep = lemmaF_check(CG, CsG, beta, 2);
    CHECK(rep.pass);
    CHECK(rep.intermediate_pass);
  }
}

TEST_CASE("surjectivity of L onto tau of the deflation kernel") {
  LevelParams P{3, 2, 0, 0};
  CoeffRing R(3, 14);
  Group H = build_group("Heis_27", P);
  GRingCtx X{&H, &R};
  Subgroup comm = commutator_subgroup(H, whole_group(H));
  IdealGens Ia = ideal_a(X, comm);
  REQUIRE(!Ia.gens.empty());
  Rng rng(77);
  int solved = 0;
  for (size_t i = 0; i < Ia.gens.size(); i += 3) {
    TElt y = project_T(X, Ia.gens[i]);
    GRElt wit;
    bool ok = solve_integral_log(X, Ia.gens, y, 2, &wit);
    CHECK(ok);
    if (ok) {
      TElt got = integral_log(X, gr_add(X, gr_one(X), wit), 2);
      CHECK(t_eq_mod(X, got, y, 2));
      ++solved;
    }
  }
  CHECK(solved > 0);
}

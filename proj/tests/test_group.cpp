#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "gringcheck/group.hpp"

using namespace gring;

namespace {
LevelParams P3{3, 2, 0, 0};
}

TEST_CASE("catalog: cyclic groups") {
  Group G = build_group("C_9", P3);
  CHECK(G.order() == 9);
  CHECK(G.is_abelian());
  CHECK(G.exponent() == 9);
  // gamma part trivial at m = 0
  CHECK(G.gamma_part() == std::vector<int>{0});
  // mul is the cyclic table
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(G.mul(i, j) == (i + j) % 9);
}

TEST_CASE("catalog: Heis_27 is extraspecial of exponent 3") {
  Group G = build_group("Heis_27", P3);
  CHECK(G.order() == 27);
  CHECK(!G.is_abelian());
  CHECK(G.exponent() == 3);  // table scan: exponent 3
  std::vector<int> Z = G.center();
  CHECK(Z.size() == 3);  // center of order 3
  CHECK(G.num_classes() == 11);
  // designated abelian normal subgroup of order 9
  Subgroup A{&G, G.abelian_normal()};
  CHECK(A.order() == 9);
  CHECK(is_normal(G, A));
  CHECK(is_abelian_sub(G, A));
}

TEST_CASE("catalog: z-products") {
  Group G = build_group("C2_x_Heis27", P3);
  CHECK(G.order() == 54);
  CHECK(G.z_order() == 2);
  // direct product: the z-part is central and meets the l-part trivially
  for (int z : G.z_part())
    for (int g = 0; g < G.order(); ++g) CHECK(G.mul(z, g) == G.mul(g, z));
  Subgroup A{&G, G.abelian_normal()};
  CHECK(A.order() == 18);
  CHECK(is_normal(G, A));
  for (int z : G.z_part()) CHECK(A.contains(z));

  CHECK_THROWS_AS(build_group("nonsense", P3), ConfigError);
}

TEST_CASE("catalog: Gamma3_x_Heis27 and the lattice size bound") {
  Group G = build_group("Gamma3_x_Heis27", P3);
  CHECK(G.order() == 729);
  CHECK((int)G.gamma_part().size() == 27);
  CHECK_THROWS_AS(subgroup_lattice(G), SizeBoundError);
  // intermediate subgroups over the designated A still enumerable
  Subgroup A{&G, G.abelian_normal()};
  CHECK(A.order() == 243);
  auto inter = intermediate_subgroups(G, A);
  CHECK(inter.size() == 2);  // A and G: Q = C_3
}

TEST_CASE("subgroup lattice: frozen small oracles") {
  // C_9: 3 subgroups in a chain
  Group C9 = build_group("C_9", P3);
  Lattice L9 = subgroup_lattice(C9);
  REQUIRE(L9.subs.size() == 3);
  CHECK(L9.subs[0].order() == 1);
  CHECK(L9.subs[1].order() == 3);
  CHECK(L9.subs[2].order() == 9);

  // (Z/3)^2: 6 subgroups, orders 1,3,3,3,3,9 (brute-force closure oracle)
  Group V = build_group("C3xC3", P3);
  Lattice LV = subgroup_lattice(V);
  std::vector<int> orders;
  for (auto& S : LV.subs) orders.push_back(S.order());
  CHECK(orders == std::vector<int>{1, 3, 3, 3, 3, 9});

  // Heis_27: 1 + 13 + 4 + 1 = 19 subgroups; every order-9 subgroup is
  // normal with normalizer the whole group
  Group H = build_group("Heis_27", P3);
  Lattice LH = subgroup_lattice(H);
  CHECK(LH.subs.size() == 19);
  for (size_t i = 0; i < LH.subs.size(); ++i)
    if (LH.subs[i].order() == 9)
      CHECK(LH.subs[LH.normalizer_idx[i]].order() == 27);
}

TEST_CASE("moebius values: frozen") {
  Group C3 = build_group("C_3", P3);
  Lattice L;
  auto mu3 = moebius_of_group(C3, L);
  CHECK(mu3 == std::vector<long>{1, -1});

  Group V = build_group("C3xC3", P3);
  Lattice LV;
  auto muV = moebius_of_group(V, LV);
  REQUIRE(muV.size() == 6);
  CHECK(muV[0] == 1);
  for (int i = 1; i <= 4; ++i) CHECK(muV[i] == -1);
  CHECK(muV[5] == 3);

  // Heis_27: mu of the full group vanishes (not elementary abelian)
  Group H = build_group("Heis_27", P3);
  Lattice LH;
  auto muH = moebius_of_group(H, LH);
  CHECK(muH.back() == 0);
  long sum = 0;
  for (long m : muH) sum += m;
  CHECK(sum == 0);
}

TEST_CASE("moebius: recursion and sum-to-zero on every catalog l-group") {
  for (const char* id : {"C_3", "C_9", "C_27", "C3xC3", "Heis_27", "Mod_27",
                         "G_81_idx3ab"}) {
    Group G = build_group(id, P3);
    Lattice L = subgroup_lattice(G);
    MoebiusTable M = moebius_table(L);
    for (size_t i = 0; i < L.subs.size(); ++i) {
      long s = 0;
      for (size_t j = 0; j < L.subs.size(); ++j)
        if (L.leq[j][i]) s += M.values[j];
      CHECK(s == (L.subs[i].order() == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("transversal and cocycle") {
  Group G = build_group("C_9", P3);
  Subgroup A = closure(G, {3});  // <g^3>
  REQUIRE(A.order() == 3);
  Transversal T = make_transversal(G, A);
  // minimal representatives are 1, g, g^2
  CHECK(T.rep == std::vector<int>{0, 1, 2});
  // r_g r_{g^2} = g^3 = r_1 * g^3: cocycle value g^3 at (gA, g^2 A)
  int q1 = T.q_of(1), q2 = T.q_of(2);
  CHECK(T.cocyc[q1][q2] == 3);

  // split extension: representatives in the complement factor
  Group D = build_group("C2_x_Heis27", P3);
  Subgroup Az{&D, D.z_part()};
  Transversal TD = make_transversal(D, Az);
  for (int i = 0; i < TD.Q.group->order(); ++i)
    for (int j = 0; j < TD.Q.group->order(); ++j)
      CHECK(TD.cocyc[i][j] == 0);  // all values the identity

  // associativity-derived identity a_{q1,q2q3} a_{q2,q3} =
  // a_{q1q2,q3} a_{q1,q2}^{q3} on all triples, several groups
  for (const char* id : {"Heis_27", "Mod_27", "G_81_idx3ab"}) {
    Group H = build_group(id, P3);
    Subgroup HA{&H, H.abelian_normal()};
    Transversal TH = make_transversal(H, HA);
    const Group& Q = *TH.Q.group;
    for (int a = 0; a < Q.order(); ++a)
      for (int b = 0; b < Q.order(); ++b)
        for (int c = 0; c < Q.order(); ++c) {
          int lhs = H.mul(TH.cocyc[a][Q.mul(b, c)], TH.cocyc[b][c]);
          int rhs = H.mul(TH.cocyc[Q.mul(a, b)][c],
                          H.conj(TH.cocyc[a][b], TH.rep[c]));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("transversal errors") {
  Group H = build_group("Heis_27", P3);
  // a non-normal subgroup of an l-group of order 27 does not exist at
  // index 3, so use a subgroup that is not normal in a bigger catalog group
  Group W = build_group("G_81_idx3ab", P3);
  bool found_non_normal = false;
  Lattice L = subgroup_lattice(W);
  for (auto& S : L.subs)
    if (!is_normal(W, S)) {
      found_non_normal = true;
      CHECK_THROWS(make_transversal(W, S));
      break;
    }
  CHECK(found_non_normal);
  (void)H;
}

TEST_CASE("conjugation and normalizer properties") {
  Group G = build_group("G_81_idx3ab", P3);
  Lattice L = subgroup_lattice(G);
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const Subgroup& U = L.subs[rng.below(L.subs.size())];
    int g = (int)rng.below(G.order()), h = (int)rng.below(G.order());
    Subgroup a = conjugate_subgroup(G, conjugate_subgroup(G, U, g), h);
    Subgroup b = conjugate_subgroup(G, U, G.mul(g, h));
    CHECK(a == b);
    Subgroup N = normalizer(G, U);
    CHECK(std::includes(N.elems.begin(), N.elems.end(), U.elems.begin(),
                        U.elems.end()));
  }
}

TEST_CASE("low-index subgroups agree with the lattice") {
  for (const char* id : {"Heis_27", "Mod_27", "G_81_idx3ab", "C2_x_Heis27"}) {
    Group G = build_group(id, P3);
    Lattice L = subgroup_lattice(G);
    std::vector<int> z = G.z_part().empty() ? std::vector<int>{0} : G.z_part();
    std::set<std::vector<int>> expect;
    for (auto& S : L.subs) {
      long idx = (long)G.order() / S.order();
      bool zin = std::includes(S.elems.begin(), S.elems.end(), z.begin(),
                               z.end());
      if (zin && (idx == 1 || idx == 3 || idx == 9))
        expect.insert(S.elems);
    }
    std::set<std::vector<int>> got;
    for (auto& S : low_index_subgroups(G, 3, 2)) got.insert(S.elems);
    CHECK(got == expect);
  }
}

TEST_CASE("quotients and materializations") {
  Group G = build_group("Heis_27", P3);
  Subgroup Z = closure(G, {G.center()[1]});
  QuotientGroup Q = quotient(G, Z);
  CHECK(Q.group->order() == 9);
  CHECK(Q.group->is_abelian());
  Subgroup A{&G, G.abelian_normal()};
  MaterializedGroup M = materialize(G, A);
  CHECK(M.group->order() == 9);
  CHECK(M.group->is_abelian());
  for (int i = 0; i < M.group->order(); ++i)
    for (int j = 0; j < M.group->order(); ++j)
      CHECK(M.to_parent[M.group->mul(i, j)] ==
            G.mul(M.to_parent[i], M.to_parent[j]));
}

TEST_CASE("transfer map: frozen examples") {
  Group G = build_group("C_9", P3);
  Subgroup A = closure(G, {3});
  Subgroup U = whole_group(G);
  auto ver = transfer_map(G, U, A);
  CHECK(ver[1] == 3);  // Ver(g) = g^3
  // central element a: Ver(a) = a^{[U:A]}
  for (int a : A.elems) CHECK(ver[a] == G.pow(a, 3));

  Group H = build_group("Heis_27", P3);
  Subgroup HA{&H, H.abelian_normal()};
  auto verH = transfer_map(H, whole_group(H), HA);
  for (int z : H.center()) CHECK(verH[z] == H.pow(z, 3));
}

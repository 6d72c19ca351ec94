#include "gringcheck/checks.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gring {

using json = nlohmann::json;

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "claim3",        "d1",
      "d2",            "lemmaA",
      "lemmaB",        "lemmaD_transitivity",
      "lemmaE",        "lemmaF",
      "lemmaG",        "lemmaI_integrality",
      "lemmaJ_transitivity",
      "moebius_divisibility",
      "prop5",         "prop6",
      "wall"};
  return names;
}

bool is_known_check(const std::string& name) {
  for (auto& n : check_names())
    if (n == name) return true;
  return name == "prop6-with-file";
}

bool hom_layer_allowed(const Group& G) { return G.order() <= 160; }

namespace {

std::string dump_gr(const GRingCtx& X, const GRElt& x) {
  json j;
  j["group"] = X.G->id();
  j["coeffs"] = x.c;
  return j.dump();
}

std::vector<Subgroup> abelian_normal_candidates(const Group& G, int max_pow) {
  std::vector<Subgroup> out;
  for (Subgroup& S : low_index_subgroups(G, 3, max_pow)) {
    if (S.order() == G.order()) continue;
    if (!is_normal(G, S) || !is_abelian_sub(G, S)) continue;
    out.push_back(std::move(S));
  }
  return out;
}

std::vector<Subgroup> central_order_l_subgroups(const Group& G,
                                                const Subgroup& within) {
  std::vector<int> Z = G.center();
  std::vector<Subgroup> out;
  std::set<std::vector<int>> seen;
  for (int z : Z) {
    if (z == 0 || G.elem_order(z) != 3) continue;
    if (!within.contains(z)) continue;
    Subgroup C = closure(G, {z});
    if (seen.insert(C.elems).second) out.push_back(std::move(C));
  }
  return out;
}

Subgroup designated_A(const Group& G) {
  Subgroup A;
  A.parent = &G;
  A.elems = G.abelian_normal();
  if (A.elems.empty()) A = whole_group(G);
  return A;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// ---------- individual checks ----------

CheckResult check_lemmaA(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  for (const Subgroup& A : abelian_normal_candidates(G, 2)) {
    MWContext C(G, R, A);
    MWContext Cmax(G, R, A, RepPolicy::MaxRep);
    for (const Subgroup& U : intermediate_subgroups(G, A)) {
      for (long t = 0; t < ctx.trials; ++t) {
        Rng rng(derive_seed(ctx.seed, "lemmaA", G.id() + "/" +
                                                    std::to_string(A.order()) +
                                                    "/" +
                                                    std::to_string(U.order()),
                            (u64)t));
        GRElt eps = gr_random_unit(C.XG, rng);
        GRElt f = lemmaA_formula(C, U, eps);
        GRElt d = lemmaA_direct(C, U, eps);
        ++r.trials;
        if (!(f == d)) {
          r.pass = false;
          r.counterexample = dump_gr(C.XG, eps);
          return r;
        }
        if (t == 0) {
          // transversal independence of the common value
          GRElt f2 = lemmaA_formula(Cmax, U, eps);
          GRElt d2 = lemmaA_direct(Cmax, U, eps);
          if (!(f2 == d2) || !(gr_reduce(C.XA, f, P.a).c ==
                               gr_reduce(Cmax.XA, f2, P.a).c)) {
            r.pass = false;
            r.counterexample = dump_gr(C.XG, eps) + " [transversal]";
            return r;
          }
        }
      }
    }
  }
  return r;
}

CheckResult check_prop5(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  MWContext C(G, R, A);
  for (long t = 0; t < ctx.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, "prop5", G.id(), (u64)t));
    GRElt eps = gr_random_unit(C.XG, rng);
    Prop5Report rep = prop5_check(C, eps, P.a);
    ++r.trials;
    if (!rep.pass) {
      r.pass = false;
      r.counterexample = dump_gr(C.XG, eps);
      return r;
    }
  }
  return r;
}

CheckResult check_lemmaB(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  MWContext C(G, R, A);
  Lattice QL = subgroup_lattice(*C.T.Q.group);
  for (const Subgroup& Qp : QL.subs) {
    for (long t = 0; t < ctx.trials; ++t) {
      Rng rng(derive_seed(ctx.seed, "lemmaB",
                          G.id() + "/Q" + std::to_string(Qp.order()),
                          (u64)t));
      GRElt e = gr_random(C.XA, rng);
      CongruenceReport rep = lemmaB_check(C, Qp.elems, e, P.a);
      ++r.trials;
      if (!rep.pass) {
        r.pass = false;
        r.counterexample = dump_gr(C.XA, e);
        return r;
      }
    }
  }
  return r;
}

CheckResult check_lemmaD(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  // subgroup pairs with index 3 or 9, everything containing the z-part;
  // exhaustive over the lattice within the size bound, top-level sample
  // beyond it
  Subgroup z{&G,
             G.z_part().empty() ? std::vector<int>{0} : G.z_part()};
  bool within = G.order() <= lattice_size_bound(G);
  std::vector<Subgroup> tops;
  if (within) {
    Lattice L = subgroup_lattice(G);
    for (const Subgroup& U : L.subs)
      if (U.contains_all(z.elems) && U.order() > z.order())
        tops.push_back(U);
  } else {
    tops.push_back(whole_group(G));
  }
  std::vector<std::pair<Subgroup, Subgroup>> pairs;
  for (const Subgroup& U : tops)
    for (const Subgroup& V : index_l_over(G, U, z, 3)) {
      pairs.emplace_back(U, V);
      for (const Subgroup& W : index_l_over(G, V, z, 3))
        pairs.emplace_back(U, W);
    }
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) {
    if (!(a.first == b.first)) return a.first < b.first;
    return a.second < b.second;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end(),
                          [](auto& a, auto& b) {
                            return a.first == b.first && a.second == b.second;
                          }),
              pairs.end());
  size_t pair_cap = within ? pairs.size() : 48;
  if (pairs.size() > pair_cap) pairs.resize(pair_cap);
  long wtrials = within ? 2 : 1;
  // generating set of G for equivariance
  std::vector<int> gens;
  {
    Subgroup S = trivial_subgroup(G);
    for (int g = 1; g < G.order() && S.order() < G.order(); ++g) {
      if (S.contains(g)) continue;
      std::vector<int> e = S.elems;
      e.push_back(g);
      S = closure(G, e);
      gens.push_back(g);
    }
  }
  if (!within && gens.size() > 2) gens.resize(2);
  for (auto& [U, V] : pairs) {
    MaterializedGroup Um = materialize(G, U);
    GRingCtx XU{Um.group.get(), &R};
    for (long t = 0; t < wtrials; ++t) {
      Rng rng(derive_seed(ctx.seed, "lemmaD",
                          G.id() + "/" + std::to_string(U.order()) + "/" +
                              std::to_string(V.order()),
                          (u64)t));
      TElt w = project_T(XU, gr_random(XU, rng));
      // chain independence
      auto chains = all_chains(G, U, V, 3);
      TOver first = res_T(G, R, U, V, w);
      ++r.trials;
      for (auto& ch : chains) {
        TOver other = res_T_along(G, R, U, V, ch, w);
        if (!(other.t == first.t)) {
          r.pass = false;
          r.counterexample = "chain mismatch [" + G.id() + "]";
          return r;
        }
      }
      // conjugation equivariance over generators
      for (int g : gens) {
        TOver lhs = conj_T_subgroup(G, R, V, g, first.t);
        TOver rhs_in = conj_T_subgroup(G, R, U, g, w);
        Subgroup Ug = conjugate_subgroup(G, U, g);
        Subgroup Vg = conjugate_subgroup(G, V, g);
        TOver rhs = res_T(G, R, Ug, Vg, rhs_in.t);
        if (!(lhs.t == rhs.t)) {
          r.pass = false;
          r.counterexample = "equivariance mismatch [" + G.id() + "]";
          return r;
        }
      }
    }
  }
  return r;
}

CheckResult check_lemmaE(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  MWContext C(G, R, A);
  for (const Subgroup& Cs : central_order_l_subgroups(G, A)) {
    LemmaEReport rep = lemmaE_check(C, Cs, P.a);
    ++r.trials;
    if (!rep.pass()) {
      r.pass = false;
      r.counterexample = "lemmaE[" + G.id() + "]: " + rep.detail;
      return r;
    }
  }
  if (r.trials == 0) {
    r.skipped = true;
    r.skip_reason = "no central order-l subgroup inside A";
  }
  return r;
}

CheckResult check_lemmaF(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  MWContext C(G, R, A);
  auto Cs = central_order_l_subgroups(G, A);
  if (Cs.empty()) {
    r.skipped = true;
    r.skip_reason = "no central order-l subgroup inside A";
    return r;
  }
  for (const Subgroup& Csub : Cs) {
    for (long t = 0; t < ctx.trials; ++t) {
      Rng rng(derive_seed(ctx.seed, "lemmaF",
                          G.id() + "/C" + std::to_string(Csub.elems[1]),
                          (u64)t));
      GRElt beta = random_ideal_b(C, Csub, rng);
      LemmaFReport rep = lemmaF_check(C, Csub, beta, P.a);
      ++r.trials;
      if (!rep.pass || !rep.intermediate_pass) {
        r.pass = false;
        r.counterexample = dump_gr(C.XA, beta) + " " + rep.detail;
        return r;
      }
    }
  }
  return r;
}

CheckResult check_lemmaG(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  Subgroup gcomp{&G, G.gamma_part().size() > 1
                         ? G.gamma_complement()
                         : whole_group(G).elems};
  for (const Subgroup& U : intermediate_subgroups(G, A)) {
    Subgroup commU = commutator_subgroup(G, U);
    for (const Subgroup& Cs : central_order_l_subgroups(G, whole_group(G))) {
      if (!U.contains_all(Cs.elems)) continue;
      if (intersect(commU, Cs).order() != 1) continue;
      // profinitely C meets the torsion-free gamma line trivially; only
      // configurations with C inside the complement are faithful shadows
      if (!gcomp.contains_all(Cs.elems)) continue;
      LemmaGReport rep = lemmaG_basis(G, R, U, Cs);
      ++r.trials;
      if (!rep.pass) {
        r.pass = false;
        r.counterexample = "lemmaG[" + G.id() + " U=" +
                           std::to_string(U.order()) + "]: " + rep.detail;
        return r;
      }
    }
  }
  if (r.trials == 0) {
    r.skipped = true;
    r.skip_reason = "no eligible (U, C) configuration";
  }
  return r;
}

CheckResult check_lemmaI(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  int gen_digits = generation_digits(P);
  CoeffRing Rgen(P.l, gen_digits);
  GRingCtx Xgen{&G, &Rgen};
  for (long t = 0; t < ctx.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, "lemmaI", G.id(), (u64)t));
    GRElt u = gr_random_unit(Xgen, rng);
    ++r.trials;
    try {
      StableLog s = integral_log_stable(G, P, u.c);
      if (!s.stable) {
        r.pass = false;
        r.counterexample = dump_gr(Xgen, u) + " [not guard-stable]";
        return r;
      }
      if (G.is_abelian()) {
        CoeffRing R1(P.l, P.a + std::max(s.guard_used, 6));
        GRingCtx X1{&G, &R1};
        GRElt u1{u.c};
        for (auto& c : u1.c) c %= R1.mod();
        GRElt direct = integral_log_abelian(X1, u1, P.a);
        // abelian T = the ring itself; classes are singletons in order
        if (!(direct.c == s.value.c)) {
          r.pass = false;
          r.counterexample = dump_gr(Xgen, u) + " [abelian formula mismatch]";
          return r;
        }
      }
    } catch (const GuardExhausted& e) {
      r.pass = false;
      r.counterexample = dump_gr(Xgen, u) + " [" + e.what() + "]";
      return r;
    }
  }
  // surjectivity probe onto tau(ker defl^{ab}) for small nonabelian groups
  if (!G.is_abelian() && G.order() <= 30) {
    CoeffRing R1(P.l, P.a + 12);
    GRingCtx X1{&G, &R1};
    Subgroup comm = commutator_subgroup(G, whole_group(G));
    IdealGens Ia = ideal_a(X1, comm);
    Rng rng(derive_seed(ctx.seed, "lemmaI-surj", G.id(), 0));
    for (size_t i = 0; i < Ia.gens.size(); i += 2) {
      TElt y = project_T(X1, Ia.gens[i]);
      GRElt wit;
      ++r.trials;
      if (!solve_integral_log(X1, Ia.gens, y, P.a, &wit)) {
        r.pass = false;
        r.counterexample = "surjectivity probe failed [" + G.id() + "]";
        return r;
      }
    }
    // a couple of random combinations
    for (int t = 0; t < 3; ++t) {
      GRElt combo = gr_zero(X1);
      for (auto& g : Ia.gens)
        combo = gr_add(X1, combo,
                       gr_scale(X1, R1.from_int(rng.below(R1.mod())), g));
      TElt y = project_T(X1, combo);
      GRElt wit;
      ++r.trials;
      if (!solve_integral_log(X1, Ia.gens, y, P.a, &wit)) {
        r.pass = false;
        r.counterexample = "surjectivity probe failed [" + G.id() + "]";
        return r;
      }
    }
  }
  return r;
}

CheckResult check_wall(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  GRingCtx X{&G, &R};
  Subgroup A = designated_A(G);
  MaterializedGroup Am = materialize(G, A);
  GRingCtx XA{Am.group.get(), &R};
  for (long t = 0; t < ctx.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, "wall", G.id(), (u64)t));
    // abelian form on R[A] (and on R[G] itself when abelian)
    GRElt a = gr_random(XA, rng);
    ++r.trials;
    if (!wall_abelian(XA, a)) {
      r.pass = false;
      r.counterexample = dump_gr(XA, a) + " [abelian]";
      return r;
    }
    if (G.is_abelian()) {
      GRElt g = gr_random(X, rng);
      if (!wall_abelian(X, g)) {
        r.pass = false;
        r.counterexample = dump_gr(X, g) + " [abelian G]";
        return r;
      }
    }
    // T-form on arbitrary elements of R[G]
    GRElt x = gr_random(X, rng);
    if (!wall_T(X, x)) {
      r.pass = false;
      r.counterexample = dump_gr(X, x) + " [T-form]";
      return r;
    }
  }
  return r;
}

CheckResult check_d1(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  if (!hom_layer_allowed(G)) {
    r.skipped = true;
    r.skip_reason = "size";
    return r;
  }
  HomContext H = make_hom_context(G);
  // generous fixed working precision: the series shift stays well below it
  CoeffRing R(P.l, P.a + 12);
  GRingCtx X{&G, &R};
  for (long t = 0; t < ctx.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, "d1", G.id(), (u64)t));
    GRElt u = gr_random_unit(X, rng);
    TElt L = integral_log(X, u, P.a);
    HomValue ring_side = tr_eval_all(H, X, t_reduce(X, L, P.a));
    HomValue det_side = det_eval_all(H, X, u);
    ++r.trials;
    for (size_t chi = 0; chi < H.table.irr.size(); ++chi) {
      GammaAlg big = bigL_hom(H, det_side, (int)chi, P.l, P.a);
      GammaAlg diff = H.A.sub(ring_side.v[chi], big);
      if (H.A.val_l(diff, P.l) < P.a) {
        r.pass = false;
        r.counterexample =
            dump_gr(X, u) + " [chi=" + std::to_string(chi) + "]";
        return r;
      }
    }
  }
  return r;
}

CheckResult check_d2(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  if (!hom_layer_allowed(G)) {
    r.skipped = true;
    r.skip_reason = "size";
    return r;
  }
  Subgroup A = designated_A(G);
  if (A.order() == G.order()) {
    // abelian group: restrict to a proper index-l subgroup instead
    Subgroup z{&G,
               G.z_part().empty() ? std::vector<int>{0} : G.z_part()};
    auto subs = index_l_over(G, whole_group(G), z, P.l);
    if (subs.empty()) {
      r.skipped = true;
      r.skip_reason = "no proper subgroup over the z-part";
      return r;
    }
    A = subs.front();
  }
  CoeffRing R(P.l, P.a + 12);
  MWContext C(G, R, A);
  HomContext HG = make_hom_context(G);
  MaterializedGroup Um = materialize(G, A);
  HomContext HU = make_hom_context(*Um.group);
  GRingCtx XU{Um.group.get(), &R};
  for (long t = 0; t < ctx.trials; ++t) {
    Rng rng(derive_seed(ctx.seed, "d2", G.id(), (u64)t));
    GRElt u = gr_random_unit(C.XG, rng);
    ++r.trials;
    // restriction of the K_1 class: with U = A the transfer is the identity,
    // so lemmaA_direct returns the determinant of the action matrix over the
    // commutative R[A] -- a unit representative of res u
    GRElt uprime_overA = lemmaA_direct(C, A, u);
    // identify R[Amat of MWContext] with R[Um]: same subgroup, same indexing
    GRElt uprime{uprime_overA.c};
    // (i) res_T(L u) = L(res u)
    TElt LG = integral_log(C.XG, u, P.a);
    TOver lhs = res_T(G, R, whole_group(G), A, LG);
    TElt rhs = integral_log(XU, uprime, P.a);
    // lhs over its own materialization; element orders agree (abelian A)
    if (!(t_reduce(XU, lhs.t, P.a).c == t_reduce(XU, rhs, P.a).c)) {
      r.pass = false;
      r.counterexample = dump_gr(C.XG, u) + " [T-route]";
      return r;
    }
    // comparisons happen in the ambient character field of G
    GammaAlgCtx TOP{HG.table.F.get(), 1};
    // (ii) tr o res_T = res_hom o tr on a random T-element
    TElt x = project_T(C.XG, gr_random(C.XG, rng));
    TOver resx = res_T(G, R, whole_group(G), A, x);
    HomValue left = tr_eval_all(HU, XU, resx.t);
    HomValue right =
        res_hom(HG, G, Um, HU, tr_eval_all(HG, C.XG, x), P.l, &TOP);
    for (size_t chi = 0; chi < HU.table.irr.size(); ++chi) {
      GammaAlg lemb = embed_gamma(TOP, *HU.table.F, left.v[chi]);
      GammaAlg diff = TOP.sub(lemb, right.v[chi]);
      if (TOP.val_l(diff, P.l) < P.a) {
        r.pass = false;
        r.counterexample = dump_gr(C.XG, u) + " [hom-square]";
        return r;
      }
    }
    // (iii) bigL(Det(res u)) = res_hom(bigL(Det u))
    HomValue detG = det_eval_all(HG, C.XG, u);
    HomValue bigG;
    for (size_t chi = 0; chi < HG.table.irr.size(); ++chi)
      bigG.v.push_back(bigL_hom(HG, detG, (int)chi, P.l, P.a));
    HomValue resbig = res_hom(HG, G, Um, HU, bigG, P.l, &TOP);
    HomValue detU = det_eval_all(HU, XU, uprime);
    HomValue detU_top;
    for (auto& v : detU.v)
      detU_top.v.push_back(embed_gamma(TOP, *HU.table.F, v));
    for (size_t chi = 0; chi < HU.table.irr.size(); ++chi) {
      GammaAlg bigU = bigL_hom(HU, detU_top, (int)chi, P.l, P.a, &TOP);
      GammaAlg diff = TOP.sub(bigU, resbig.v[chi]);
      if (TOP.val_l(diff, P.l) < P.a) {
        r.pass = false;
        r.counterexample = dump_gr(C.XG, u) + " [L-square]";
        return r;
      }
    }
  }
  return r;
}

CheckResult check_lemmaJ(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  if (!hom_layer_allowed(G)) {
    r.skipped = true;
    r.skip_reason = "size";
    return r;
  }
  Subgroup A = designated_A(G);
  Subgroup z{&G, G.z_part().empty() ? std::vector<int>{0} : G.z_part()};
  if (A.order() == G.order()) {
    // abelian: drop to a proper index-l subgroup for a genuine chain
    auto subs = index_l_over(G, whole_group(G), z, P.l);
    if (subs.empty()) {
      r.skipped = true;
      r.skip_reason = "no proper subgroup over the z-part";
      return r;
    }
    A = subs.front();
  }
  std::vector<Subgroup> Vs = index_l_over(G, A, z, 3);
  if (Vs.empty()) {
    r.skipped = true;
    r.skip_reason = "no chain below the designated subgroup";
    return r;
  }
  Subgroup V = Vs.front();
  CoeffRing R(P.l, P.a + P.effective_guard());
  GRingCtx XG{&G, &R};
  HomContext HG = make_hom_context(G);
  MaterializedGroup Um = materialize(G, A);
  HomContext HU = make_hom_context(*Um.group);
  MaterializedGroup Vm = materialize(G, V);
  HomContext HV = make_hom_context(*Vm.group);
  GammaAlgCtx TOP{HG.table.F.get(), 1};
  for (long t = 0; t < std::min<long>(ctx.trials, 5); ++t) {
    Rng rng(derive_seed(ctx.seed, "lemmaJ", G.id(), (u64)t));
    TElt x = project_T(XG, gr_random(XG, rng));
    HomValue f = tr_eval_all(HG, XG, x);
    ++r.trials;
    HomValue direct = res_hom(HG, G, Vm, HV, f, P.l, &TOP);
    HomValue step1 = res_hom(HG, G, Um, HU, f, P.l, &TOP);
    // V inside Um coordinates
    Subgroup Vin;
    Vin.parent = Um.group.get();
    for (int v : V.elems) Vin.elems.push_back(Um.from_parent.at(v));
    std::sort(Vin.elems.begin(), Vin.elems.end());
    MaterializedGroup Vm2 = materialize(*Um.group, Vin);
    HomContext HV2 = make_hom_context(*Vm2.group);
    HomValue step2 = res_hom(HU, *Um.group, Vm2, HV2, step1, P.l, &TOP);
    // match irreducibles of Vm and Vm2 (same abstract group, same canonical
    // construction: orders agree elementwise through parent indices)
    if (step2.v.size() != direct.v.size()) {
      r.pass = false;
      r.counterexample = "transitivity: irr count mismatch";
      return r;
    }
    // compare as multisets via valuation of differences under the bijection
    // given by identical value vectors on identified elements
    for (size_t chi = 0; chi < direct.v.size(); ++chi) {
      // Vm and Vm2 share the canonical construction, hence the same
      // irreducible order; both value streams already live in TOP
      GammaAlg diff = TOP.sub(direct.v[chi], step2.v[chi]);
      if (TOP.val_l(diff, P.l) < P.a) {
        r.pass = false;
        r.counterexample = "transitivity failed [chi=" +
                           std::to_string(chi) + "]";
        return r;
      }
    }
    // additivity and integrality on an integral input
    for (size_t chi = 0; chi < direct.v.size(); ++chi)
      if (TOP.val_l(direct.v[chi], P.l) < 0) {
        r.pass = false;
        r.counterexample = "integrality failed";
        return r;
      }
  }
  return r;
}

CheckResult check_claim3(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  if (A.order() == G.order()) {
    r.skipped = true;
    r.skip_reason = "abelian group";
    return r;
  }
  MWContext C(G, R, A);
  for (const Subgroup& U : intermediate_subgroups(G, A)) {
    if (U.order() == A.order()) continue;
    Subgroup commU = commutator_subgroup(G, U);
    for (const Subgroup& Cs : central_order_l_subgroups(G, A)) {
      if (intersect(commU, Cs).order() != 1) continue;
      Rng rng(derive_seed(ctx.seed, "claim3",
                          G.id() + "/" + std::to_string(U.order()), 7));
      Claim3Report rep = claim3_check(C, U, Cs, rng);
      if (!rep.detail.empty() && rep.detail.find("cyclic") != std::string::npos)
        continue;  // ineligible configuration
      ++r.trials;
      if (!rep.identity_pass || !rep.support_pass) {
        r.pass = false;
        r.counterexample = "claim3[" + G.id() + "]: " + rep.detail;
        return r;
      }
    }
  }
  if (r.trials == 0) {
    r.skipped = true;
    r.skip_reason = "no eligible cyclic U/A configuration";
  }
  return r;
}

CheckResult check_moebius(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  (void)ctx;
  if (!G.z_part().empty()) {
    r.skipped = true;
    r.skip_reason = "not an l-group";
    return r;
  }
  if (G.order() > lattice_size_bound(G)) {
    r.skipped = true;
    r.skip_reason = "size";
    return r;
  }
  Lattice L = subgroup_lattice(G);
  MoebiusTable M = moebius_table(L);
  int k = (int)L.subs.size();
  // recursion fixpoint and vanishing sums
  for (int i = 0; i < k; ++i) {
    long s = 0;
    for (int j = 0; j < k; ++j)
      if (L.leq[j][i]) s += M.values[j];
    long expect = L.subs[i].order() == 1 ? 1 : 0;
    ++r.trials;
    if (s != expect) {
      r.pass = false;
      r.counterexample = "moebius sum failed at subgroup " + std::to_string(i);
      return r;
    }
  }
  // l * mu(V) divisible by |V|
  for (int i = 0; i < k; ++i) {
    ++r.trials;
    if ((3 * M.values[i]) % L.subs[i].order() != 0) {
      r.pass = false;
      r.counterexample = "divisibility failed at subgroup " +
                         std::to_string(i);
      return r;
    }
  }
  // 2-power congruence: for V <= Q', d_f = [Q':V] d_k, d_L = d_f |V|:
  // mu(V)(2^{-d_f} - 2^{-d_L}) = 0 mod |Q'| in Z/3^aa with 2 invertible
  for (int qi = 0; qi < k; ++qi) {
    long qord = L.subs[qi].order();
    if (qord == 1) continue;
    int vq = val_l((u64)qord, 3);
    int aa = vq + 2;
    u64 mod = pow_u64(3, (u64)aa);
    u64 inv2 = (mod + 1) / 2;  // 2*(mod+1)/2 = mod+1 = 1
    for (int vi = 0; vi < k; ++vi) {
      if (!L.leq[vi][qi]) continue;
      long vord = L.subs[vi].order();
      long idx = qord / vord;
      for (long dk = 1; dk <= 2; ++dk) {
        long df = idx * dk, dL = df * vord;
        u64 a2 = powmod(inv2, (u64)df, mod);
        u64 b2 = powmod(inv2, (u64)dL, mod);
        u64 diff = (a2 + mod - b2) % mod;
        long mu = M.values[vi];
        u64 mm = mu >= 0 ? (u64)mu % mod : (mod - (u64)(-mu) % mod) % mod;
        u64 val = mulmod(mm, diff, mod);
        ++r.trials;
        if (val % pow_u64(3, (u64)vq) != 0) {
          r.pass = false;
          r.counterexample = "2-power congruence failed (|Q'|=" +
                             std::to_string(qord) + ", |V|=" +
                             std::to_string(vord) + ", dk=" +
                             std::to_string(dk) + ")";
          return r;
        }
      }
    }
  }
  return r;
}

CheckResult check_prop6(const Group& G, const CheckContext& ctx) {
  CheckResult r;
  LevelParams P = ctx.params;
  if (ctx.prop6_path.empty())
    throw ConfigError("prop6 requires a pseudomeasure table file");
  std::ifstream in(ctx.prop6_path);
  if (!in) throw ConfigError("prop6: cannot open " + ctx.prop6_path);
  json j;
  in >> j;
  CoeffRing R(P.l, P.a + P.effective_guard());
  Subgroup A = designated_A(G);
  MWContext C(G, R, A);
  PseudomeasureTable tab;
  for (auto& e : j.at("entries")) {
    int idx;
    if (e.at("U").is_string()) {
      std::string uid = e.at("U").get<std::string>();
      idx = std::stoi(uid[0] == 'U' ? uid.substr(1) : uid);
    } else {
      idx = e.at("U").get<int>();
    }
    GRElt lam;
    lam.c = e.at("coeffs").get<std::vector<u64>>();
    for (auto& c : lam.c) c %= R.mod();
    tab.by_intermediate_index[idx] = std::move(lam);
  }
  CongruenceReport rep = prop6_check(C, tab, P.a);
  ++r.trials;
  if (!rep.pass) {
    r.pass = false;
    r.counterexample = rep.detail;
  }
  return r;
}

}  // namespace

CheckResult run_check(const std::string& check, const std::string& group_id,
                      const CheckContext& ctx) {
  Timer timer;
  Group G = build_group(group_id, ctx.params);
  CheckResult r;
  try {
    if (check == "lemmaA")
      r = check_lemmaA(G, ctx);
    else if (check == "prop5")
      r = check_prop5(G, ctx);
    else if (check == "lemmaB")
      r = check_lemmaB(G, ctx);
    else if (check == "lemmaD_transitivity")
      r = check_lemmaD(G, ctx);
    else if (check == "lemmaE")
      r = check_lemmaE(G, ctx);
    else if (check == "lemmaF")
      r = check_lemmaF(G, ctx);
    else if (check == "lemmaG")
      r = check_lemmaG(G, ctx);
    else if (check == "lemmaI_integrality")
      r = check_lemmaI(G, ctx);
    else if (check == "lemmaJ_transitivity")
      r = check_lemmaJ(G, ctx);
    else if (check == "wall")
      r = check_wall(G, ctx);
    else if (check == "d1")
      r = check_d1(G, ctx);
    else if (check == "d2")
      r = check_d2(G, ctx);
    else if (check == "claim3")
      r = check_claim3(G, ctx);
    else if (check == "moebius_divisibility")
      r = check_moebius(G, ctx);
    else if (check == "prop6" || check == "prop6-with-file")
      r = check_prop6(G, ctx);
    else
      throw ConfigError("unknown check: " + check);
  } catch (const SizeBoundError& e) {
    r = CheckResult{};
    r.skipped = true;
    r.skip_reason = std::string("size: ") + e.what();
  }
  r.check = check == "prop6-with-file" ? "prop6" : check;
  r.group = group_id;
  r.time_ms = timer.ms();
  return r;
}

}  // namespace gring

#pragma once

#include "gringcheck/cyclotomic.hpp"
#include "gringcheck/gring.hpp"

namespace gring {

// class function with exact cyclotomic values (one per conjugacy class)
struct ClassFunction {
  std::shared_ptr<const CycField> F;
  std::vector<CycField::Elem> v;
};

struct CharacterTable {
  const Group* G = nullptr;
  std::shared_ptr<const CycField> F;   // Q(zeta_exponent)
  std::vector<ClassFunction> irr;      // canonical order
  std::vector<long> class_size;

  long degree(int i) const;            // irr[i](1) as an integer
};

CharacterTable character_table(const Group& G);

// exact orthogonality verification (integer fast path); returns false with a
// description on the first failure
bool verify_orthogonality(const CharacterTable& T, std::string* why = nullptr);

// Adams operation psi_l^r: chi(g) -> chi(g^{l^r})
ClassFunction adams(const Group& G, const ClassFunction& chi, int l, int r = 1);

// transports (exact; values embedded into the target field)
ClassFunction restrict_cf(const Group& G, const CharacterTable& TG,
                          const MaterializedGroup& U, const ClassFunction& chi);
ClassFunction induce_cf(const Group& G, const CharacterTable& TG,
                        const MaterializedGroup& U, const ClassFunction& chi);
ClassFunction inflate_cf(const Group& G, const QuotientGroup& Q,
                         const ClassFunction& chi_of_quotient);
ClassFunction deflate_cf(const Group& G, const QuotientGroup& Q,
                         const ClassFunction& chi);

mpq_class inner_product(const Group& G, const ClassFunction& a,
                        const ClassFunction& b);

// decomposition into irreducibles (exact integers; throws if non-integral)
std::vector<long> decompose_virtual(const Group& G, const CharacterTable& T,
                                    const ClassFunction& chi);

// monomial realization: subgroup H (ambient coordinates), linear character
// lambda of H, and the induced monomial matrices
struct MonomialRealization {
  Subgroup H;
  MaterializedGroup Hmat;
  std::vector<CycField::Elem> lambda;           // value per H element
  std::vector<std::vector<std::vector<CycField::Elem>>> rho;  // per g: dim x dim
  int dim = 1;
};
MonomialRealization monomial_realization(const Group& G,
                                         const CharacterTable& T, int chi);

// gamma structure of the hom layer: Gamma_fin is the gamma part viewed as an
// abstract cyclic group; Hk is its stored complement (whole group when the
// gamma part is trivial).
struct HomContext {
  const Group* G = nullptr;
  CharacterTable table;
  GammaAlgCtx A;                     // over table.F
  int gord = 1;
  std::vector<int> gamma_exp_of;     // G element -> exponent of gamma part
  std::vector<int> hk_part_of;       // G element -> complement element
  std::vector<MonomialRealization> real;  // per irreducible (of the Hk-part
                                          // restriction; dim = chi(1))
};
HomContext make_hom_context(const Group& G);

// HomValue: one Gamma-algebra value per irreducible character
struct HomValue {
  std::vector<GammaAlg> v;
};

// Det of a unit (or an invertible matrix over a subgroup ring embedded as
// blocks); coefficients are lifted integrally from Z/l^n.
GammaAlg det_eval(const HomContext& H, const GRingCtx& X, const GRElt& u,
                  int chi);
HomValue det_eval_all(const HomContext& H, const GRingCtx& X, const GRElt& u);
GammaAlg det_eval_matrix(const HomContext& H, const GRingCtx& XU,
                         const MaterializedGroup& U,
                         const std::vector<std::vector<GRElt>>& M, int chi);

// Tr: T-element -> value per character
GammaAlg tr_eval(const HomContext& H, const GRingCtx& X, const TElt& x,
                 int chi);
HomValue tr_eval_all(const HomContext& H, const GRingCtx& X, const TElt& x);

// embed a gamma-algebra value into a larger scalar field (same gamma order)
GammaAlg embed_gamma(const GammaAlgCtx& target, const CycField& from,
                     const GammaAlg& x);

// multiplicative evaluation of a HomValue at a virtual character; the values
// of f live in the evaluation context `V` (defaults to H's own)
GammaAlg hom_eval_virtual(const HomContext& H, const HomValue& f,
                          const std::vector<long>& coeffs,
                          const GammaAlgCtx* V = nullptr);
// additive evaluation
GammaAlg hom_eval_virtual_additive(const HomContext& H, const HomValue& f,
                                   const std::vector<long>& coeffs,
                                   const GammaAlgCtx* V = nullptr);

// logarithmic transfer on the hom side:
// L(f)(chi) = (1/l) log(f(chi)^l / Psi(f(psi_l chi))); f multiplicative.
// Series truncated beyond l-valuation `digits` + slack; exact rationals.
// Decompositions use H's table; value arithmetic runs in V when given.
GammaAlg bigL_hom(const HomContext& H, const HomValue& f, int chi, int l,
                  int digits, const GammaAlgCtx* V = nullptr);

// restriction on additive hom-values via Adams operations:
// (Res f)(chi') = f(ind chi') + sum_r Psi^r / l^r f(psi_l^{r-1} chi),
// chi = psi_l(ind chi') - ind(psi_l chi'). Gamma part must be trivial.
// f's values (and the result) live in the evaluation context V, which must
// contain both groups' character fields.
HomValue res_hom(const HomContext& HG, const Group& G,
                 const MaterializedGroup& U, const HomContext& HU,
                 const HomValue& f, int l, const GammaAlgCtx* V = nullptr);

// JSON export: class representatives by element index, values as cyclotomic
// coefficient arrays over the power basis of Q(zeta_N)
std::string character_table_json(const CharacterTable& T);

// abelian basis of a finite abelian group: generators with orders whose
// direct product is the whole group
std::vector<std::pair<int, int>> abelian_basis(const Group& G);

// linear characters of an arbitrary group (through its abelianization),
// values in Q(zeta_N) for N = exponent of G^{ab}
std::vector<std::vector<CycField::Elem>> linear_characters(
    const Group& G, std::shared_ptr<const CycField>& field_out);

}  // namespace gring

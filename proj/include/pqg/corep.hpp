#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pqg/partial_hopf.hpp"

namespace pqg {

// Corepresentation on a bigraded space: blocks[K][i] is the Hom(V_mn, V_kl) coefficient of the
// i-th basis element of A(K), K = (k l; m n).
struct Corep {
    BigradedSpace space;
    std::map<Square, std::vector<Mat>> blocks;

    size_t total_dim() const { return space.total(); }
};

// Element of A (x) End^0(V) in total form: (K, output grade, input grade) -> coefficients.
using TotalCorep = std::map<std::tuple<Square, Pair, Pair>, std::vector<Mat>>;

BigradedSpace empty_space(const PartialHopfData& d);
Corep trivial_corep(const PartialHopfData& d);
Report verify_corep(const PartialHopfData& d, const Corep& x);
Report verify_unitary(const PartialHopfData& d, const Corep& x);

// Regular corepresentation on subspaces V_mn of the column (m, n) of A, given by bases.
struct RegularCorep {
    Corep corep;
    std::map<Pair, std::vector<Elem>> basis;
};
RegularCorep regular_corep(const PartialHopfData& d, const std::map<Pair, std::vector<Elem>>& basis);
RegularCorep regular_corep_from_element(const PartialHopfData& d, const Square& k, const Vec& a);
RegularCorep full_regular_corep(const PartialHopfData& d);

Corep tensor(const PartialHopfData& d, const Corep& x, const Corep& y);
Corep direct_sum(const Corep& x, const Corep& y);

struct DualCorep {
    Corep dual;
    BlockMap ev;    // dual (x) V -> C^(I)
    BlockMap coev;  // C^(I) -> V (x) dual
    Report report;  // corep axioms, morphism property of ev/coev, snake identities
};
DualCorep left_dual(const PartialHopfData& d, const Corep& x);
// (S^2 (x) id) applied blockwise: the left bidual on the same space.
Corep bidual(const PartialHopfData& d, const Corep& x);

TotalCorep total_form(const Corep& x);
TotalCorep generalized_inverse(const PartialHopfData& d, const Corep& x);
TotalCorep total_product(const PartialHopfData& d, const TotalCorep& a, const TotalCorep& b);
bool total_equal(const TotalCorep& a, const TotalCorep& b);
Report verify_generalized_inverse(const PartialHopfData& d, const Corep& x);

BlockMap identity_map(const BigradedSpace& v);
bool is_morphism(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y);
// Basis of Mor(x, y), from the exact solution of the morphism equations.
std::vector<BlockMap> intertwiners(const PartialHopfData& d, const Corep& x, const Corep& y);

// T-check and T-hat of the averaging lemma for T supported at (m, n).
BlockMap average_check(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y, int m, int n);
BlockMap average_hat(const PartialHopfData& d, const BlockMap& t, const Corep& x, const Corep& y, int m, int n);

// Restriction to an invariant family with embedding e (columns span W_kl) and a left inverse p.
Corep restrict_corep(const Corep& x, const BlockMap& e, const BlockMap& p, const BigradedSpace& w);

struct Summand {
    Corep corep;
    BlockMap embedding;   // summand -> x
    BlockMap projection;  // x -> summand, projection o embedding = id
    size_t cls = 0;       // isomorphism class index
};
struct Decomposition {
    std::vector<Summand> summands;
    std::vector<size_t> multiplicity;  // per class
    std::vector<size_t> representative;  // per class: index into summands
};
Decomposition decompose(const PartialHopfData& d, const Corep& x);

// Matrix coefficient (id (x) omega_{e_i, e_j})(X(K)) as an element of A(K).
Elem matrix_coefficient(const Corep& x, const Square& k, size_t i, size_t j);

// Irreducible unitary corepresentation realised inside the regular one, with orthonormal basis
// for the inner product phi(a* b), and its modular data.
struct UnitaryIrrep {
    RegularCorep reg;
    BlockMap f, g;  // F: X -> bidual, positive, scaled so that d_F = d_G; G = F^-1
    Scalar d_f, d_g;
    bool numeric = false;
};
// Orthonormalise a regular corepresentation for phi(a* b) and attach F.
UnitaryIrrep make_unitary_irrep(const PartialHopfData& d, const RegularCorep& r);
// Maximal family of inequivalent irreducibles from the decomposition of the regular corepresentation.
std::vector<UnitaryIrrep> unitary_irreducibles(const PartialHopfData& d);

Report peter_weyl_report(const PartialHopfData& d, const std::vector<UnitaryIrrep>& irreps);
Report schur_report(const PartialHopfData& d, const UnitaryIrrep& x, const UnitaryIrrep& y, bool same);
json schur_table(const PartialHopfData& d, const UnitaryIrrep& x);

struct CharacterTable {
    std::vector<int> zs;
    std::map<int, std::map<Square, Vec>> f;  // z -> functional on diagonal blocks (k l; k l)
    std::vector<UnitaryIrrep> irreps;
    Report report;
    json to_json(const PartialHopfData& d) const;
};
// Evaluates f_z on A through the Peter-Weyl basis and checks the character properties.
CharacterTable woronowicz_characters(const PartialHopfData& d, const std::vector<UnitaryIrrep>& irreps,
                                     const std::vector<int>& zs);
Scalar apply_functional(const std::map<Square, Vec>& f, const Elem& a);
// omega * a = sum_pq (id (x) omega) Delta_pq(a) and a * omega = sum_rs (omega (x) id) Delta_rs(a).
Elem convolve_left(const PartialHopfData& d, const std::map<Square, Vec>& f, const Elem& a);
Elem convolve_right(const PartialHopfData& d, const Elem& a, const std::map<Square, Vec>& f);

json corep_to_json(const PartialHopfData& d, const Corep& x);

}  // namespace pqg

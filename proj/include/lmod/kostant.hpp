#pragma once

#include <map>

#include "lmod/parabolic.hpp"
#include "lmod/rootdata.hpp"

namespace lmod {

// ---------------------------------------------------------------------------
// Kostant's theorem for H(n_P^Q; V_lambda)

struct KostantPiece {
    int degree;             // l(w)
    std::vector<int> word;  // reduced word of w
    Weight weight;          // w(lambda + rho) - rho, I_P-dominant

    auto operator<=>(const KostantPiece&) const = default;
};

struct KostantDecomposition {
    Parabolic P, Q;
    Weight lambda;
    std::vector<KostantPiece> pieces;  // sorted by (degree, weight)
};

// dim n_P^Q = #(Phi+(I_Q) \ Phi+(I_P))
int dim_nPQ(const RootDatum& rd, Parabolic P, Parabolic Q);

// minimal-length representatives W^{P,Q} = {w in W(I_Q) : w^{-1}(alpha_i) > 0
// for all i in I_P}, sorted by (length, word)
std::vector<WeylElement> coset_reps(const RootDatum& rd, Parabolic P, Parabolic Q,
                                    long max_size = 1000000);

KostantDecomposition kostant_cohomology(const RootDatum& rd, Parabolic P, Parabolic Q,
                                        const Weight& lambda);

// degree/weight bookkeeping identity for kappa_P^Q composition along P <= Q <= R
bool kappa_check(const RootDatum& rd, Parabolic P, Parabolic Q, Parabolic R,
                 const Weight& lambda);

// ---------------------------------------------------------------------------
// Independent brute-force oracle: the Chevalley-Eilenberg complex
// Lambda^*(n_P^Q)* (x) V_lambda over a concrete matrix realization, cohomology
// computed per weight block by exact rank, then decomposed into I_P-dominant
// highest weights.
//
// Supported: any classical factors (A/B/C/D) for lambda = 0; a single type-A
// factor for lambda != 0 (module realized inside tensor powers of the
// standard representation).  Throws UnsupportedCoefficients otherwise,
// ComplexTooLarge if dim n_P^Q > max_dim_n.

std::map<int, std::map<Weight, Int>> ce_oracle(const RootDatum& rd, Parabolic P,
                                               Parabolic Q, const Weight& lambda,
                                               int max_dim_n = 12);

// multiset view of a decomposition for comparisons: (degree, weight) -> count
std::map<std::pair<int, Weight>, Int> kostant_multiset(const KostantDecomposition& kd);

}  // namespace lmod

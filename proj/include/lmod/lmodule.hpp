#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmod/kostant.hpp"
#include "lmod/parabolic.hpp"
#include "lmod/realform.hpp"
#include "lmod/rootdata.hpp"

namespace lmod {

// ---------------------------------------------------------------------------
// Finite L-modules in isotypic normal form.
//
// E_P = (+) summands (weight mu, degree k, multiplicity m); morphisms are
// stored per (P <= Q) as exact matrices between mu-isotypic multiplicity
// spaces: the block at (mu, d) maps the mu-part of H(n_P^Q; E_Q) in total
// degree d to the mu-part of E_P in degree d+1.  Missing blocks are zero.

struct IsotypicSummand {
    Weight mu;  // I_P-dominant
    int degree;
    int mult;

    auto operator<=>(const IsotypicSummand&) const = default;
};

struct MorphismKey {
    Parabolic to_P, from_Q;
    Weight mu;
    int degree;  // source total degree

    auto operator<=>(const MorphismKey&) const = default;
};

struct LModule {
    std::vector<Parabolic> support;  // sorted by levi mask; locally closed
    std::map<Parabolic, std::vector<IsotypicSummand>> pieces;
    std::map<MorphismKey, Mat> blocks;

    bool in_support(Parabolic p) const;
    bool operator==(const LModule&) const = default;
};

// a slot of the canonical basis of the mu-part of H(n_A^B; E_B) in degree d:
// (summand index into pieces[B], coset-rep index into coset_reps(A,B), copy)
struct HSlot {
    int summand;
    int rep;
    int copy;
};

// cache of coset representatives and their products, shared across the
// exact-matrix assembly
class KostantCache {
  public:
    explicit KostantCache(const RootDatum& rd) : rd_(rd) {}
    const std::vector<WeylElement>& reps(Parabolic A, Parabolic B);
    // factor w in W^{A,B} as w1 * w2 with w1 in W^{A,C}, w2 in W^{C,B};
    // returns (index of w1, index of w2)
    std::pair<int, int> factor(Parabolic A, Parabolic C, Parabolic B, int w_index);
    const RootDatum& rd() const { return rd_; }

  private:
    const RootDatum& rd_;
    std::map<std::pair<uint32_t, uint32_t>, std::vector<WeylElement>> reps_;
    std::map<std::tuple<uint32_t, uint32_t, uint32_t, int>, std::pair<int, int>> factors_;
};

std::vector<HSlot> h_basis(KostantCache& kc, const LModule& m, Parabolic A, Parabolic B,
                           const Weight& mu, int d);

// exact matrix of the (B -> A) component of the local differential at (mu, d):
// the push of f_AB through H(n_P^A; -), from the mu-part of H(n_P^B; E_B) in
// degree d to the mu-part of H(n_P^A; E_A) in degree d+1 (P <= A <= B)
Mat component(KostantCache& kc, const LModule& m, Parabolic P, Parabolic A, Parabolic B,
              const Weight& mu, int d);

// ---------------------------------------------------------------------------
// validation

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const RootDatum& rd, const LModule& m);

// ---------------------------------------------------------------------------
// complexes of isotypic pieces

struct IsotypicComplex {
    // degree -> weight -> multiplicity (terms sorted by the map ordering)
    std::map<int, std::map<Weight, int>> terms;
    // differential block at (degree, weight): rows = mult at (degree+1, weight)
    std::map<std::pair<int, Weight>, Mat> diff;

    int mult_at(int degree, const Weight& w) const;
    Mat diff_at(int degree, const Weight& w) const;  // zero matrix if absent

    bool operator==(const IsotypicComplex&) const = default;
};

IsotypicComplex shift(const IsotypicComplex& c, int k);
// mapping cone of a degree-0 chain map f: C -> D, blocks keyed by (degree, weight)
IsotypicComplex mapping_cone(const IsotypicComplex& c, const IsotypicComplex& d,
                             const std::map<std::pair<int, Weight>, Mat>& f);

// per-degree, per-weight cohomology dims; throws NotAComplex if d^2 != 0
std::map<int, std::map<Weight, long>> cohomology(const IsotypicComplex& c);

// ---------------------------------------------------------------------------
// local functors

enum class FunctorKind { Shriek, Star, Link, StarShriek, StarJStar, StarIStar };

// Q is consulted only by the three Q-parameterized kinds
IsotypicComplex local_functor(const RootDatum& rd, const LModule& m, Parabolic P,
                              FunctorKind kind, Parabolic Q = Parabolic{0});

// ---------------------------------------------------------------------------
// generic micro-support and vanishing bounds

struct MicroSupportElement {
    Parabolic P;
    Weight mu;
    // per Q in [Q_V, Q_V']: degree -> Hom dim into cohomology(star_shriek(Q))
    std::map<Parabolic, std::map<int, long>> type;
    int c_deg = 0, d_deg = 0;  // least/greatest degree with nonzero type
};

std::vector<MicroSupportElement> micro_support_generic(const RootDatum& rd, const LModule& m,
                                                       const RealFormEntry& entry);

struct VanishingBounds {
    bool empty = false;  // micro-support empty: H(X-hat; M) = 0
    long c = 0, d = 0;
};

VanishingBounds vanishing_bounds(const RootDatum& rd, const LModule& m,
                                 const RealFormEntry& entry);

// ---------------------------------------------------------------------------
// constructions

// the flag construction over a complex C placed at G: E_P sums H(n_P; C)
// pieces over flags P = R_0 < ... < R_k = G with shift -k; canonical
// morphisms are kappa identifications with the flag signs.  Always a valid
// L-module with full support.
struct GComplex {
    // the input complex at G: summands plus differential blocks keyed by
    // (degree, weight), as for IsotypicComplex
    std::vector<IsotypicSummand> summands;
    std::map<std::pair<int, Weight>, Mat> diff;
};

LModule flag_construction(const RootDatum& rd, const GComplex& c);
// relative version: support = [bottom, top], complex placed at top
LModule flag_construction(const RootDatum& rd, const GComplex& c, Parabolic bottom,
                          Parabolic top);

// seeded random valid L-module: flag construction over a random complex at G,
// then a random change of basis on every multiplicity space
GComplex random_gcomplex(const RootDatum& rd, uint64_t seed);
LModule random_lmodule(const RootDatum& rd, uint64_t seed);
LModule change_of_basis(const RootDatum& rd, const LModule& m, uint64_t seed);

// ---------------------------------------------------------------------------
// JSON serialization (schema: {support, pieces, morphisms})

std::string lmodule_to_json(const RootDatum& rd, const LModule& m);
LModule lmodule_from_json(const RootDatum& rd, const std::string& json_text);

}  // namespace lmod

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmod/rootdata.hpp"

namespace lmod {

// ---------------------------------------------------------------------------
// Standard parabolics P <-> subsets I_P of the simple roots.  P <= Q iff
// I_P is a subset of I_Q; P0 is the minimal (Borel) parabolic, G the group.

struct Parabolic {
    uint32_t levi = 0;  // bit i set <=> alpha_i in I_P

    auto operator<=>(const Parabolic&) const = default;
};

struct ParabolicLattice {
    const RootDatum* rd;

    explicit ParabolicLattice(const RootDatum& r) : rd(&r) {}

    int rank() const { return rd->rank(); }
    uint32_t full_mask() const { return rank() >= 32 ? ~0u : ((1u << rank()) - 1); }

    Parabolic p0() const { return Parabolic{0}; }
    Parabolic g() const { return Parabolic{full_mask()}; }
    Parabolic make(std::initializer_list<int> idx) const;

    bool leq(Parabolic p, Parabolic q) const { return (p.levi & ~q.levi) == 0; }
    Parabolic join(Parabolic p, Parabolic q) const { return Parabolic{p.levi | q.levi}; }
    Parabolic meet(Parabolic p, Parabolic q) const { return Parabolic{p.levi & q.levi}; }

    // the complement (P,Q) in [P,G]: Delta_P^{(P,Q)} = Delta_P \ Delta_P^Q
    Parabolic complement(Parabolic p, Parabolic q) const;

    // Delta_P^Q as simple-root indices I_Q \ I_P; throws NotComparable if P <= Q fails
    std::vector<int> delta(Parabolic p, Parabolic q) const;
    // Delta_P = Delta \ I_P
    std::vector<int> delta(Parabolic p) const { return delta(p, g()); }

    // all parabolics in [r, s], sorted by levi mask
    std::vector<Parabolic> interval(Parabolic r, Parabolic s) const;
    std::vector<Parabolic> all() const { return interval(p0(), g()); }

    std::string str(Parabolic p) const;  // sorted index list, e.g. "{0,2}"
};

// ---------------------------------------------------------------------------
// Split-component linear algebra on a_P.
//
// a_P = {H : <alpha_i, H> = 0 for i in I_P} + central block, inside the
// ambient coweight space (simple-coroot + central coordinates, dim n+c).
// Functionals on a_P are represented by their Riesz vectors with respect to
// the invariant form B: the vector v in a_P with B(v, .) = the functional.

struct SplitBasis {
    Parabolic P;
    std::vector<int> delta;      // gamma in Delta \ I_P, sorted (indexes Delta_P)
    std::vector<Vec> coroots;    // proj of gamma^vee onto a_P, parallel to delta
    std::vector<Vec> a_basis;    // basis of a_P (ambient coords)
    Weight rho_weight;           // half-sum of Phi+ \ Phi+(I_P); pair only against a_P vectors
    Vec rho_riesz;               // Riesz vector of rho_P on a_P
};

SplitBasis split_basis(const RootDatum& rd, Parabolic P);

// Riesz vector in a_P of the functional H |-> <w, H> restricted to a_P
Vec riesz_on_aP(const RootDatum& rd, const SplitBasis& sb, const Weight& w);

// evaluation of a functional (given by its Riesz vector) on an a_P vector
inline Rat eval(const RootDatum& rd, const Vec& riesz, const Vec& h) {
    return rd.form_coweight(riesz, h);
}

// dual bases relative to Q >= P: <beta_alpha^Q, delta^vee_proj> = delta_{alpha,delta}
// (Riesz vectors) and <gamma, beta_alpha^{Q vee}> = delta_{gamma,alpha}.
// alpha is a simple-root index in Delta_P^Q = I_Q \ I_P.
Vec beta_weight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, int alpha);
Vec beta_coweight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, int alpha);
// tau_P^Q = sum of beta_alpha^Q (Riesz vector); tau_P^{Q vee} = sum of beta_alpha^{Q vee}
Vec tau(const RootDatum& rd, const SplitBasis& sb, Parabolic Q);
Vec tau_coweight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q);

// xi = a_P-component of mu, as a Riesz vector on a_P
Vec restrict_xi(const RootDatum& rd, const SplitBasis& sb, const Weight& mu);
// B-orthogonal components xi = xi_Q + xi^Q along a_P = a_Q (+) a_P^Q
struct XiComponents {
    Vec on_aQ;   // xi_Q
    Vec on_aPQ;  // xi^Q
};
XiComponents xi_components(const RootDatum& rd, const SplitBasis& sb, Parabolic Q,
                           const Vec& xi);

// ---------------------------------------------------------------------------
// Cones and the geometric lemma

enum class Cone { DominantOpen, DominantClosed, DualOpen, DualClosed };

// xi as a Riesz vector on a_P (only its a_P^Q part matters)
bool cone_test(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, const Vec& xi,
               Cone cone);

enum class GLVariant { StrictOnComplement, StrictOnSubset };

// the unique R in [P,G] with <xi, beta_alpha^{R vee}> >= 0 (resp. > 0) for
// alpha in Delta_P^R and <xi, gamma^vee_R> < 0 (resp. <= 0) for gamma in
// Delta_P \ Delta_P^R; verified unique by exhaustive scan
Parabolic geometric_lemma(const RootDatum& rd, Parabolic P, const Vec& xi, GLVariant variant);

}  // namespace lmod

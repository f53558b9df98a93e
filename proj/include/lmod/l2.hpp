#pragma once

#include <map>
#include <string>
#include <vector>

#include "lmod/kostant.hpp"
#include "lmod/parabolic.hpp"
#include "lmod/realform.hpp"
#include "lmod/rootdata.hpp"

namespace lmod {

// ---------------------------------------------------------------------------
// Closed-form invariants of the L2-cohomology L-module.  Infinite-dimensional
// groups carry no basis, so only degree supports are computed, with separate
// "guaranteed nonzero" and "possibly nonzero" envelopes.

struct DimClass {
    bool inf = false;
    Int n = 0;  // meaningful only when !inf

    static DimClass zero() { return {false, 0}; }
    static DimClass fin(Int k) { return {false, std::move(k)}; }
    static DimClass infinite() { return {true, 0}; }

    bool is_zero() const { return !inf && n == 0; }
    bool operator==(const DimClass&) const = default;
    std::string str() const;
};

// tensor and direct sum per the DimClass algebra
DimClass operator*(const DimClass& a, const DimClass& b);
DimClass operator+(const DimClass& a, const DimClass& b);

struct DegreeSupport {
    std::map<int, DimClass> guaranteed;  // provably nonzero
    std::map<int, DimClass> possible;    // upper envelope; zero outside

    void add_guaranteed(int d, const DimClass& c);
    void add_possible(int d, const DimClass& c);
    bool is_zero() const { return possible.empty(); }
    bool invariant_ok() const;  // guaranteed degrees are possible degrees
    bool operator==(const DegreeSupport&) const = default;
    std::string str() const;
};

DegreeSupport tensor(const DegreeSupport& a, const DegreeSupport& b);
DegreeSupport shift_support(const DegreeSupport& a, int k);  // degrees + k

// ---------------------------------------------------------------------------
// S/T/T' and Q/Q' data of an isotypic pair (P, mu)

struct SVData {
    Parabolic P;
    Weight mu;
    Vec xi;  // xi_V as a Riesz vector on a_P
    Parabolic S, T, Tp;  // S_V, T_V, T_V'
    Parabolic Q, Qp;     // Q_V, Q_V'
};

SVData sv_data(const RootDatum& rd, Parabolic P, const Weight& mu);

// Zucker's calculation for the cone over the fiber at P: weighted uses
// xi + rho_P, unweighted xi alone
DegreeSupport zucker_cone(const RootDatum& rd, Parabolic P, const Weight& mu, bool weighted);

// Kostant-degree support of mu in H(n_P; E_lambda): Fin(count x dim V_mu) per
// degree; throws WeightNotPresent
DegreeSupport kostant_support(const RootDatum& rd, Parabolic P, const Weight& lambda,
                              const Weight& mu);

DegreeSupport local_l2(const RootDatum& rd, const Weight& lambda, Parabolic P,
                       const Weight& mu);
DegreeSupport nilpotent_local_l2(const RootDatum& rd, const Weight& lambda, Parabolic P,
                                 Parabolic R, const Weight& mu);
DegreeSupport interval_support(const RootDatum& rd, Parabolic S1, Parabolic S2);
DegreeSupport supports_l2(const RootDatum& rd, const Weight& lambda, Parabolic P, Parabolic Q,
                          const Weight& mu);

// ---------------------------------------------------------------------------
// micro-support by two independent paths

enum class MSMode { Characterization, Definitional };

struct L2MicroElement {
    Parabolic P;
    Weight mu;
    // Type_{Q,V} for every Q in [P, G]
    std::map<Parabolic, DegreeSupport> types;
};

// computes the requested mode and always cross-checks against the other;
// throws ModeDisagreement on mismatch
std::vector<L2MicroElement> micro_support_l2(const RootDatum& rd, const Weight& lambda,
                                             MSMode mode, const RealFormEntry& entry);

// ---------------------------------------------------------------------------
// flag/sign algebra of the A_(2)(E) construction

// verifies the sign identities for every flag pair with at most two deletions
// in every Boolean lattice of rank <= up_to_rank, plus the natural-morphism
// sign (sigma = 1 iff Q = G); throws SignViolation naming the flag pair.
// mutate_one_sign perturbs a single sigma (negative test hook).
bool flag_sign_check(int up_to_rank, bool mutate_one_sign = false);

// [T_V, (P,Q)] decomposes into the stated disjoint sub-intervals; vacuously
// true when T_V > (P,Q)
bool lattice_decomposition_check(const RootDatum& rd, Parabolic P, const Weight& mu,
                                 Parabolic Q);

// ---------------------------------------------------------------------------
// top-level report

struct L2Report {
    std::vector<L2MicroElement> sigma;
    bool vanishing = false;  // Sigma empty: L2-cohomology vanishes
    long c = 0, d = 0;       // outer bracket for [c(M), d(M)]
    bool equal_rank = false;
    bool modes_agree = true;
};

L2Report l2_report(const RootDatum& rd, const Weight& lambda, const RealFormEntry& entry);

}  // namespace lmod

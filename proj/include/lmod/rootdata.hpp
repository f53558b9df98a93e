#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmod/linalg.hpp"
#include "lmod/rat.hpp"

namespace lmod {

// ---------------------------------------------------------------------------
// Cartan types

struct CartanFactor {
    char family;  // 'A'..'G'
    int rank;
};

struct CartanType {
    std::vector<CartanFactor> factors;
    int central_torus_rank = 0;

    // "A3", "B2xA1+t1" (factors joined by 'x', "+tk" = central torus rank k)
    static CartanType parse(const std::string& s);
    std::string str() const;

    int semisimple_rank() const;
    void validate() const;  // throws InvalidCartanType
};

// ---------------------------------------------------------------------------
// Weights and coweights
//
// Weights are stored in the fundamental-weight basis (length = semisimple
// rank) plus exact central-torus coordinates.  Coweights live in the
// simple-coroot basis plus central coordinates, so <.,.> is a plain dot
// product.

struct Weight {
    Vec fw;       // fundamental-weight coordinates
    Vec central;  // central-torus coordinates

    auto operator<=>(const Weight&) const = default;
};

struct Coweight {
    Vec co;       // simple-coroot coordinates
    Vec central;

    auto operator<=>(const Coweight&) const = default;
};

// ---------------------------------------------------------------------------
// Root datum

struct RootDatum {
    CartanType cartan;
    std::vector<std::vector<long>> cartan_matrix;  // C[i][j] = <alpha_j, alpha_i^vee>
    std::vector<Weight> simple_roots;
    std::vector<Coweight> simple_coroots;
    // positive roots in simple-root coordinates, with matching coroots in
    // simple-coroot coordinates
    std::vector<std::vector<long>> positive_roots;
    std::vector<std::vector<long>> positive_coroots;
    Weight rho;
    // symmetrizers: (alpha_i, alpha_j) = sym[i] * C[i][j] is symmetric;
    // normalized per simple factor so short coroots have squared length 2
    // (i.e. sym = 1 on long roots)
    Vec sym;

    int rank() const { return static_cast<int>(cartan_matrix.size()); }
    int central_rank() const { return cartan.central_torus_rank; }
    int ambient_dim() const { return rank() + central_rank(); }

    Weight zero_weight() const {
        return Weight{Vec(rank(), Rat(0)), Vec(central_rank(), Rat(0))};
    }
    Weight fundamental_weight(int i) const;
    Weight root_as_weight(const std::vector<long>& simple_coords) const;

    // invariant form on the coweight space, B(alpha_i^vee, alpha_j^vee) =
    // C[i][j] / sym[j]; identity on the central block, cross terms zero
    Rat form_coweight(const Vec& x, const Vec& y) const;  // ambient coords, length n+c
    // invariant form on the weight space
    Rat form_weight(const Weight& x, const Weight& y) const;

    bool is_dominant(const Weight& w) const;
    bool is_dominant_for(const Weight& w, uint32_t levi_mask) const;

    // simple reflection acting on weights / ambient coweight vectors
    Weight reflect(int i, const Weight& w) const;
    Vec reflect_coweight(int i, const Vec& x) const;  // length n+c
};

RootDatum build_root_datum(const CartanType& ct);
inline RootDatum build_root_datum(const std::string& s) {
    return build_root_datum(CartanType::parse(s));
}

// <lambda, cv>
Rat pairing(const Weight& lambda, const Coweight& cv);
// pairing against an ambient coweight vector (length n+c)
Rat pairing(const RootDatum& rd, const Weight& lambda, const Vec& cov);

// ---------------------------------------------------------------------------
// Weyl group

struct WeylElement {
    std::vector<int> word;  // reduced word, left-to-right composition: w = s_{w0} s_{w1} ...
    // action on the simple-root lattice: column j = w(alpha_j) in simple-root
    // coordinates (the faithful carrier used for equality tests)
    std::vector<std::vector<long>> mat;

    bool operator==(const WeylElement& o) const { return mat == o.mat; }
    int length() const { return static_cast<int>(word.size()); }
};

// Weyl action on weights/coweights via the reduced word.
Weight weyl_apply(const RootDatum& rd, const WeylElement& w, const Weight& lam);
Vec weyl_apply_coweight(const RootDatum& rd, const WeylElement& w, const Vec& cov);

// w(lambda + rho) - rho
Weight dot_action(const RootDatum& rd, const WeylElement& w, const Weight& lam);

// Full Weyl group; throws GroupTooLarge if |W| > max_size.
std::vector<WeylElement> weyl_enumerate(const RootDatum& rd, long max_size = 1000000);
// Subgroup W(I) generated by {s_i : i in levi_mask}; lengths are relative to
// the subsystem Phi+(I).
std::vector<WeylElement> weyl_enumerate_levi(const RootDatum& rd, uint32_t levi_mask,
                                             long max_size = 1000000);

// #{beta in Phi+(within) : w(beta) < 0}; within = levi mask of the subsystem
int weyl_length_in(const RootDatum& rd, const WeylElement& w, uint32_t within_mask);

WeylElement weyl_identity(const RootDatum& rd);
WeylElement weyl_inverse(const RootDatum& rd, const WeylElement& w);
WeylElement weyl_mul(const RootDatum& rd, const WeylElement& a, const WeylElement& b);
WeylElement longest_element(const RootDatum& rd, uint32_t levi_mask);

// ---------------------------------------------------------------------------
// Dimensions and characters

// Weyl dimension formula; throws NotDominant.
Int weyl_dim(const RootDatum& rd, const Weight& lambda);
// Same over the sub-root-system Phi(I); lambda need only be I-dominant.
Int weyl_dim_levi(const RootDatum& rd, uint32_t levi_mask, const Weight& lambda);

// Freudenthal: full weight multiplicities of the irreducible with highest
// weight mu over the Levi subsystem I.  Keys are ambient weights.
std::map<Weight, Int> dominant_character(const RootDatum& rd, uint32_t levi_mask,
                                         const Weight& mu);

// half-sum of the positive roots of Phi+(I) as an ambient weight
Weight rho_of_levi(const RootDatum& rd, uint32_t levi_mask);

// roots of Phi+ whose support lies in I
std::vector<int> positive_roots_of_levi(const RootDatum& rd, uint32_t levi_mask);

// serialization helpers
std::string weight_str(const Weight& w);
Weight parse_weight(const RootDatum& rd, const std::string& s);

}  // namespace lmod

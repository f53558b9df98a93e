#pragma once

#include <optional>
#include <set>

#include "lmod/parabolic.hpp"
#include "lmod/rootdata.hpp"

namespace lmod {

// Whether the Euclidean (central-torus) directions of the centralizer's
// symmetric space count toward dim D_P(V); both conventions appear in the
// literature, so both are selectable.
enum class FlatRankMode { FullLeviRank, SubsystemRank };

struct RealFormEntry {
    bool split = true;  // split_default mode; false = user_table
    FlatRankMode flat_rank_mode = FlatRankMode::FullLeviRank;

    // user-table data (ignored in split mode)
    std::map<uint32_t, int> dim_D_table;       // levi mask -> dim D
    std::optional<bool> equal_rank_table;
    std::set<uint32_t> fundamental_table;      // levi masks flagged fundamental
    std::vector<int> involution;               // diagram involution; empty = identity

    // validates involution^2 = id and Cartan-matrix preservation
    void validate(const RootDatum& rd) const;
};

inline RealFormEntry split_default() { return RealFormEntry{}; }

// dim of the symmetric space of ^0 L_P; split mode: #Phi+(I_P) + |I_P|
int dim_D(const RealFormEntry& entry, const RootDatum& rd, Parabolic P);

// dim of the symmetric space of the centralizer of mu in ^0 L_P; split mode:
// #Phi+(I_P(mu)) + flat rank, I_P(mu) = {alpha in Phi(I_P) : <mu, alpha^vee> = 0}
int dim_DV(const RealFormEntry& entry, const RootDatum& rd, Parabolic P, const Weight& mu);

// (V|_{0L_P})^* isomorphic to the conjugate of V|_{0L_P}; split mode reduces to
// -w_{0,I_P}(mu-hat) = mu-hat on the Levi part
bool conj_selfdual_check(const RealFormEntry& entry, const RootDatum& rd, Parabolic P,
                         const Weight& mu);

bool equal_rank(const RealFormEntry& entry, const RootDatum& rd);

// whether L_P contains a fundamental Cartan subgroup of G; built-in for
// equal-rank factors and split type A, table-driven otherwise
bool fundamental(const RealFormEntry& entry, const RootDatum& rd, Parabolic P);

}  // namespace lmod

#include "lmod/realform.hpp"

namespace lmod {

void RealFormEntry::validate(const RootDatum& rd) const {
    if (involution.empty()) return;
    int n = rd.rank();
    if (static_cast<int>(involution.size()) != n)
        throw RankMismatch("involution length != rank");
    for (int i = 0; i < n; ++i) {
        int j = involution[i];
        if (j < 0 || j >= n || involution[j] != i)
            throw ParseError("involution is not an involutive permutation");
        for (int k = 0; k < n; ++k)
            if (rd.cartan_matrix[i][k] != rd.cartan_matrix[involution[i]][involution[k]])
                throw ParseError("involution does not preserve the Cartan matrix");
    }
}

int dim_D(const RealFormEntry& entry, const RootDatum& rd, Parabolic P) {
    if (!entry.split) {
        auto it = entry.dim_D_table.find(P.levi);
        if (it == entry.dim_D_table.end())
            throw MissingEntry("no dim_D entry for this Levi");
        return it->second;
    }
    int levi_rank = 0;
    for (int i = 0; i < rd.rank(); ++i)
        if ((P.levi >> i) & 1) ++levi_rank;
    return static_cast<int>(positive_roots_of_levi(rd, P.levi).size()) + levi_rank;
}

int dim_DV(const RealFormEntry& entry, const RootDatum& rd, Parabolic P, const Weight& mu) {
    if (!entry.split) throw MissingEntry("dim_DV requires split mode or a user table");
    if (!rd.is_dominant_for(mu, P.levi)) throw NotDominant("dim_DV: mu not I_P-dominant");
    // positive roots of I_P annihilated by mu
    int zero_roots = 0;
    std::vector<int> levi_pos = positive_roots_of_levi(rd, P.levi);
    std::vector<Vec> zero_coroots;
    for (int k : levi_pos) {
        Rat p = 0;
        for (int j = 0; j < rd.rank(); ++j)
            p += mu.fw[j] * Rat(rd.positive_coroots[k][j]);
        if (p == 0) {
            ++zero_roots;
            Vec cv(rd.rank(), Rat(0));
            for (int j = 0; j < rd.rank(); ++j) cv[j] = Rat(rd.positive_coroots[k][j]);
            zero_coroots.push_back(cv);
        }
    }
    int flat;
    if (entry.flat_rank_mode == FlatRankMode::FullLeviRank) {
        flat = 0;
        for (int i = 0; i < rd.rank(); ++i)
            if ((P.levi >> i) & 1) ++flat;
    } else {
        Mat m(static_cast<int>(zero_coroots.size()), rd.rank());
        for (size_t r = 0; r < zero_coroots.size(); ++r)
            for (int c = 0; c < rd.rank(); ++c) m(static_cast<int>(r), c) = zero_coroots[r][c];
        flat = static_cast<int>(rank(m));
    }
    return zero_roots + flat;
}

bool conj_selfdual_check(const RealFormEntry& entry, const RootDatum& rd, Parabolic P,
                         const Weight& mu) {
    Weight m = mu;
    if (!entry.involution.empty()) {
        Weight t = mu;
        for (int i = 0; i < rd.rank(); ++i) t.fw[entry.involution[i]] = mu.fw[i];
        m = t;
    }
    WeylElement w0 = longest_element(rd, P.levi);
    Weight img = weyl_apply(rd, w0, m);
    // compare the 0L_P parts: pairings against alpha_i^vee, i in I_P
    for (int i = 0; i < rd.rank(); ++i)
        if ((P.levi >> i) & 1 && img.fw[i] != -mu.fw[i]) return false;
    return true;
}

static bool factor_equal_rank(char fam, int n) {
    switch (fam) {
        case 'A': return n == 1;
        case 'B':
        case 'C':
        case 'G':
        case 'F': return true;
        case 'D': return n % 2 == 0;
        case 'E': return n != 6;
        default: throw InvalidCartanType(std::string("family ") + fam);
    }
}

bool equal_rank(const RealFormEntry& entry, const RootDatum& rd) {
    if (!entry.split) {
        if (!entry.equal_rank_table) throw MissingEntry("no equal_rank entry");
        return *entry.equal_rank_table;
    }
    for (const auto& f : rd.cartan.factors)
        if (!factor_equal_rank(f.family, f.rank)) return false;
    return true;
}

bool fundamental(const RealFormEntry& entry, const RootDatum& rd, Parabolic P) {
    if (P.levi == (rd.rank() >= 32 ? ~0u : (1u << rd.rank()) - 1)) return true;
    if (!entry.split) {
        if (entry.fundamental_table.count(P.levi)) return true;
        return false;
    }
    int off = 0;
    for (const auto& f : rd.cartan.factors) {
        uint32_t fac_mask = ((1u << f.rank) - 1) << off;
        uint32_t local = (P.levi & fac_mask) >> off;
        if (factor_equal_rank(f.family, f.rank)) {
            // an equal-rank group has a compact Cartan; only L_G contains it
            if (local != ((1u << f.rank) - 1)) return false;
        } else if (f.family == 'A') {
            // SL(n+1,R): the Levi is block-diagonal GL(m_1) x ... x GL(m_k);
            // it contains a fundamental Cartan iff sum floor(m_j/2) >= floor((n+1)/2)
            int have = 0;
            int run = 0;
            for (int i = 0; i <= f.rank; ++i) {
                bool in = i < f.rank && ((local >> i) & 1);
                if (in) {
                    ++run;
                } else {
                    have += (run + 1) / 2;  // block size m = run + 1
                    run = 0;
                }
            }
            if (have < (f.rank + 1) / 2) return false;
        } else {
            throw MissingEntry(
                "fundamental parabolics for this split family require a user table");
        }
        off += f.rank;
    }
    return true;
}

}  // namespace lmod

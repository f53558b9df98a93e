#include "lmod/l2.hpp"

#include <algorithm>
#include <set>

namespace lmod {

// ---------------------------------------------------------------------------
// DimClass / DegreeSupport algebra

std::string DimClass::str() const {
    if (inf) return "inf";
    return n == 0 ? "0" : "fin(" + n.str() + ")";
}

DimClass operator*(const DimClass& a, const DimClass& b) {
    if (a.is_zero() || b.is_zero()) return DimClass::zero();
    if (a.inf || b.inf) return DimClass::infinite();
    return DimClass::fin(a.n * b.n);
}

DimClass operator+(const DimClass& a, const DimClass& b) {
    if (a.inf || b.inf) return DimClass::infinite();
    return DimClass::fin(a.n + b.n);
}

void DegreeSupport::add_possible(int d, const DimClass& c) {
    if (c.is_zero()) return;
    auto it = possible.find(d);
    if (it == possible.end())
        possible[d] = c;
    else
        it->second = it->second + c;
}

void DegreeSupport::add_guaranteed(int d, const DimClass& c) {
    if (c.is_zero()) return;
    auto it = guaranteed.find(d);
    if (it == guaranteed.end())
        guaranteed[d] = c;
    else
        it->second = it->second + c;
    add_possible(d, c);
}

bool DegreeSupport::invariant_ok() const {
    for (const auto& [d, c] : guaranteed)
        if (!possible.count(d)) return false;
    return true;
}

std::string DegreeSupport::str() const {
    std::string s = "possible{";
    bool first = true;
    for (const auto& [d, c] : possible) {
        if (!first) s += ", ";
        s += std::to_string(d) + ": " + c.str();
        first = false;
    }
    s += "} guaranteed{";
    first = true;
    for (const auto& [d, c] : guaranteed) {
        if (!first) s += ", ";
        s += std::to_string(d) + ": " + c.str();
        first = false;
    }
    return s + "}";
}

DegreeSupport tensor(const DegreeSupport& a, const DegreeSupport& b) {
    DegreeSupport out;
    for (const auto& [da, ca] : a.possible)
        for (const auto& [db, cb] : b.possible) out.add_possible(da + db, ca * cb);
    // guaranteed products already lie inside the possible envelope
    for (const auto& [da, ca] : a.guaranteed)
        for (const auto& [db, cb] : b.guaranteed) {
            DimClass c = ca * cb;
            if (c.is_zero()) continue;
            auto it = out.guaranteed.find(da + db);
            if (it == out.guaranteed.end())
                out.guaranteed[da + db] = c;
            else
                it->second = it->second + c;
        }
    return out;
}

DegreeSupport shift_support(const DegreeSupport& a, int k) {
    DegreeSupport out;
    for (const auto& [d, c] : a.possible) out.possible[d + k] = c;
    for (const auto& [d, c] : a.guaranteed) out.guaranteed[d + k] = c;
    return out;
}

namespace {

// union of two supports as alternatives (direct sum degree-wise)
DegreeSupport merge(const DegreeSupport& a, const DegreeSupport& b) {
    DegreeSupport out = a;
    for (const auto& [d, c] : b.possible) out.add_possible(d, c);
    for (const auto& [d, c] : b.guaranteed) out.add_guaranteed(d, c);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// S/T/T'/Q/Q' data and Zucker's calculation

SVData sv_data(const RootDatum& rd, Parabolic P, const Weight& mu) {
    if (!rd.is_dominant_for(mu, P.levi))
        throw NotDominant("weight " + weight_str(mu) + " not dominant for the Levi");
    SplitBasis sb = split_basis(rd, P);
    SVData sv;
    sv.P = P;
    sv.mu = mu;
    sv.xi = restrict_xi(rd, sb, mu);
    sv.S = sv.T = sv.Tp = sv.Q = sv.Qp = P;
    ParabolicLattice lat(rd);
    for (size_t k = 0; k < sb.delta.size(); ++k) {
        int alpha = sb.delta[k];
        Vec bv = beta_coweight(rd, sb, lat.g(), alpha);
        Rat dual = pairing(rd, mu, bv) + pairing(rd, sb.rho_weight, bv);
        if (dual > 0) sv.S.levi |= (1u << alpha);
        if (dual < 0) sv.T.levi |= (1u << alpha);
        if (dual <= 0) sv.Tp.levi |= (1u << alpha);
        Rat co = pairing(rd, mu, sb.coroots[k]) + pairing(rd, sb.rho_weight, sb.coroots[k]);
        if (co < 0) sv.Q.levi |= (1u << alpha);
        if (co <= 0) sv.Qp.levi |= (1u << alpha);
    }
    return sv;
}

DegreeSupport zucker_cone(const RootDatum& rd, Parabolic P, const Weight& mu, bool weighted) {
    SplitBasis sb = split_basis(rd, P);
    ParabolicLattice lat(rd);
    int zeros = 0;
    bool negative = false;
    for (size_t k = 0; k < sb.delta.size(); ++k) {
        Vec bv = beta_coweight(rd, sb, lat.g(), sb.delta[k]);
        Rat v = pairing(rd, mu, bv);
        if (weighted) v += pairing(rd, sb.rho_weight, bv);
        if (v < 0) negative = true;
        if (v == 0) ++zeros;
    }
    DegreeSupport out;
    if (negative) return out;
    if (zeros == 0) {
        out.add_guaranteed(0, DimClass::fin(1));
        return out;
    }
    // nonvanishing somewhere in [1, r] only; exact degrees are not pinned down
    for (int d = 1; d <= zeros; ++d) out.add_possible(d, DimClass::infinite());
    return out;
}

DegreeSupport kostant_support(const RootDatum& rd, Parabolic P, const Weight& lambda,
                              const Weight& mu) {
    ParabolicLattice lat(rd);
    auto kd = kostant_cohomology(rd, P, lat.g(), lambda);
    Int dim = weyl_dim_levi(rd, P.levi, mu);
    DegreeSupport out;
    bool found = false;
    for (const auto& piece : kd.pieces)
        if (piece.weight == mu) {
            out.add_guaranteed(piece.degree, DimClass::fin(dim));
            found = true;
        }
    if (!found)
        throw WeightNotPresent("weight " + weight_str(mu) + " does not occur in H(n_P; E)");
    return out;
}

// ---------------------------------------------------------------------------
// local, nilpotent-local, interval, and supported L2-cohomology

DegreeSupport local_l2(const RootDatum& rd, const Weight& lambda, Parabolic P,
                       const Weight& mu) {
    ParabolicLattice lat(rd);
    return nilpotent_local_l2(rd, lambda, P, P, mu);
}

DegreeSupport nilpotent_local_l2(const RootDatum& rd, const Weight& lambda, Parabolic P,
                                 Parabolic R, const Weight& mu) {
    ParabolicLattice lat(rd);
    if (!lat.leq(P, R)) throw NotComparable("expected P <= R");
    DegreeSupport ks = kostant_support(rd, P, lambda, mu);
    SVData sv = sv_data(rd, P, mu);
    if (!lat.leq(sv.T, R)) return DegreeSupport{};
    Parabolic S = lat.join(R, sv.S);
    return tensor(zucker_cone(rd, S, rd.zero_weight(), false), ks);
}

DegreeSupport interval_support(const RootDatum& rd, Parabolic S1, Parabolic S2) {
    ParabolicLattice lat(rd);
    if (!lat.leq(S1, S2)) throw NotComparable("expected S1 <= S2");
    DegreeSupport out;
    for (Parabolic r : lat.interval(S1, S2)) {
        int shiftk = static_cast<int>(lat.delta(S1, r).size());
        DegreeSupport cone = zucker_cone(rd, r, rd.zero_weight(), false);
        // only the possible envelope survives the spectral sequence
        cone.guaranteed.clear();
        out = merge(out, shift_support(cone, shiftk));
    }
    int top = static_cast<int>(lat.delta(S1).size());  // dim a_{S1}^G
    bool point = (S1 == lat.g()) && (S2 == lat.g());
    // the degree-top class is already in the merged envelope
    out.guaranteed[top] = point ? DimClass::fin(1) : DimClass::infinite();
    return out;
}

DegreeSupport supports_l2(const RootDatum& rd, const Weight& lambda, Parabolic P, Parabolic Q,
                          const Weight& mu) {
    ParabolicLattice lat(rd);
    if (!lat.leq(P, Q)) throw NotComparable("expected P <= Q");
    DegreeSupport ks = kostant_support(rd, P, lambda, mu);
    SVData sv = sv_data(rd, P, mu);
    Parabolic lo = lat.complement(P, sv.Tp), hi = lat.complement(P, sv.T);
    if (!lat.leq(lo, Q) || !lat.leq(Q, hi)) return DegreeSupport{};
    Parabolic S1 = lat.join(sv.T, sv.S);
    Parabolic S2 = lat.join(lat.complement(P, Q), sv.S);
    int shiftk = static_cast<int>(lat.delta(P, sv.T).size());
    return shift_support(tensor(interval_support(rd, S1, S2), ks), shiftk);
}

// ---------------------------------------------------------------------------
// micro-support by two paths

namespace {

// condition (3): (xi_V + rho_P) vanishes on a_P^G
bool split_vanishing(const RootDatum& rd, Parabolic P, const Weight& mu) {
    SplitBasis sb = split_basis(rd, P);
    for (size_t k = 0; k < sb.delta.size(); ++k) {
        Rat v = pairing(rd, mu, sb.coroots[k]) + pairing(rd, sb.rho_weight, sb.coroots[k]);
        if (v != 0) return false;
    }
    return true;
}

}  // namespace

std::vector<L2MicroElement> micro_support_l2(const RootDatum& rd, const Weight& lambda,
                                             MSMode mode, const RealFormEntry& entry) {
    if (!rd.is_dominant(lambda))
        throw NotDominant("coefficient weight " + weight_str(lambda) + " is not dominant");
    ParabolicLattice lat(rd);
    std::vector<L2MicroElement> out;
    for (Parabolic p : lat.all()) {
        std::set<Weight> weights;
        for (const auto& piece : kostant_cohomology(rd, p, lat.g(), lambda).pieces)
            weights.insert(piece.weight);
        for (const Weight& mu : weights) {
            if (!conj_selfdual_check(entry, rd, p, mu)) continue;
            bool character = split_vanishing(rd, p, mu);
            SVData sv = sv_data(rd, p, mu);
            Parabolic lo = lat.join(sv.Q, lat.complement(p, sv.Tp));
            Parabolic hi = lat.meet(sv.Qp, lat.complement(p, sv.T));
            bool definitional = lat.leq(lo, hi);
            if (character != definitional)
                throw ModeDisagreement(
                    "micro-support modes disagree at P = " + lat.str(p) + ", mu = " +
                    weight_str(mu));
            (void)mode;  // the two paths are verified to coincide
            if (!character) continue;
            L2MicroElement el;
            el.P = p;
            el.mu = mu;
            DegreeSupport ks = kostant_support(rd, p, lambda, mu);
            for (Parabolic q : lat.interval(p, lat.g()))
                el.types[q] =
                    tensor(interval_support(rd, p, lat.complement(p, q)), ks);
            out.push_back(std::move(el));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// flag/sign algebra

namespace {

struct FlagChecker {
    uint32_t full;
    bool mutate;

    // sigma for deleting index l from the chain (as masks, ascending)
    int sigma(const std::vector<uint32_t>& flag, int l) const {
        int k = static_cast<int>(flag.size()) - 1;
        int s = (l == k && flag[k] == full) ? k : l + 1;
        // negative-test hook: perturb one specific instance
        if (mutate && full == 3 && flag == std::vector<uint32_t>{0, 1, 3} && l == 1) s += 1;
        return s;
    }

    void check_pair(const std::vector<uint32_t>& flag, int l, int j) const {
        // two deletion orders from flag to flag minus {l, j}, l < j
        std::vector<uint32_t> f1 = flag, f2 = flag;
        int s1 = sigma(flag, l);
        f1.erase(f1.begin() + l);
        int s1b = sigma(f1, j - 1);
        int s2 = sigma(flag, j);
        f2.erase(f2.begin() + j);
        int s2b = sigma(f2, l);
        if ((s1 + s1b) % 2 == (s2 + s2b) % 2) {
            std::string s = "{";
            for (uint32_t m : flag) s += std::to_string(m) + " ";
            throw SignViolation("sign identity fails for flag " + s + "} deleting positions " +
                                std::to_string(l) + "," + std::to_string(j));
        }
    }
};

void enumerate_chains(uint32_t full, std::vector<uint32_t>& chain,
                      const std::vector<uint32_t>& elements, size_t start,
                      const FlagChecker& fc) {
    if (chain.size() >= 3)
        for (size_t l = 0; l + 1 < chain.size(); ++l)
            for (size_t j = l + 1; j < chain.size(); ++j)
                fc.check_pair(chain, static_cast<int>(l), static_cast<int>(j));
    if (chain.size() == 2) {
        // the natural-morphism sign: sigma = 1 iff the top is G
        int s = fc.sigma(chain, 1);
        bool is_g = chain[1] == full;
        if ((s % 2 == 1) != is_g)
            throw SignViolation("natural-morphism sign wrong for the flag {" +
                                std::to_string(chain[0]) + " " + std::to_string(chain[1]) + "}");
        // d^2 = 0 and the one-deletion identity hold for any sigma: the two
        // terms carry k and k-1 coefficient differentials and cancel
    }
    for (size_t i = start; i < elements.size(); ++i) {
        if (!chain.empty() && ((chain.back() & ~elements[i]) != 0 || chain.back() == elements[i]))
            continue;
        chain.push_back(elements[i]);
        enumerate_chains(full, chain, elements, i + 1, fc);
        chain.pop_back();
    }
}

}  // namespace

bool flag_sign_check(int up_to_rank, bool mutate_one_sign) {
    for (int n = 1; n <= up_to_rank; ++n) {
        uint32_t full = (1u << n) - 1;
        std::vector<uint32_t> elements;
        for (uint32_t m = 0; m <= full; ++m) elements.push_back(m);
        FlagChecker fc{full, mutate_one_sign};
        std::vector<uint32_t> chain;
        enumerate_chains(full, chain, elements, 0, fc);
    }
    return true;
}

// ---------------------------------------------------------------------------
// lattice decomposition

bool lattice_decomposition_check(const RootDatum& rd, Parabolic P, const Weight& mu,
                                 Parabolic Q) {
    ParabolicLattice lat(rd);
    SVData sv = sv_data(rd, P, mu);
    Parabolic pq = lat.complement(P, Q);
    if (!lat.leq(sv.T, pq)) return true;  // vacuous
    std::set<uint32_t> whole;
    for (Parabolic r : lat.interval(sv.T, pq)) whole.insert(r.levi);
    std::set<uint32_t> covered;
    for (Parabolic t : lat.interval(sv.T, lat.meet(sv.Tp, pq)))
        for (Parabolic r : lat.interval(t, lat.meet(lat.join(t, sv.S), pq))) {
            if (covered.count(r.levi)) return false;  // not disjoint
            covered.insert(r.levi);
        }
    return covered == whole;
}

// ---------------------------------------------------------------------------
// report

L2Report l2_report(const RootDatum& rd, const Weight& lambda, const RealFormEntry& entry) {
    ParabolicLattice lat(rd);
    L2Report rep;
    rep.sigma = micro_support_l2(rd, lambda, MSMode::Characterization, entry);
    rep.equal_rank = equal_rank(entry, rd);
    rep.modes_agree = true;
    if (rep.sigma.empty()) {
        rep.vanishing = true;
        return rep;
    }
    bool first = true;
    long cmin = 0, dmax = 0;  // twice the bounds, rounded outward at the end
    for (const auto& el : rep.sigma) {
        long dd = dim_D(entry, rd, el.P);
        long dv = dim_DV(entry, rd, el.P, el.mu);
        // the type is finite-dimensional iff P = G
        bool fin = true;
        for (const auto& [q, ds] : el.types)
            for (const auto& [deg, c] : ds.possible)
                if (c.inf) fin = false;
        if (fin != (el.P == lat.g()))
            throw InternalInconsistency("type finiteness disagrees with P = G");
        long tmin = 0, tmax = 0;
        bool have = false;
        for (const auto& [q, ds] : el.types)
            for (const auto& [deg, c] : ds.possible) {
                if (!have || deg < tmin) tmin = deg;
                if (!have || deg > tmax) tmax = deg;
                have = true;
            }
        long c2 = dd - dv + 2 * tmin;
        long d2 = dd + dv + 2 * tmax;
        if (first || c2 < cmin) cmin = c2;
        if (first || d2 > dmax) dmax = d2;
        first = false;
    }
    rep.c = cmin >= 0 ? cmin / 2 : -((-cmin + 1) / 2);
    rep.d = dmax >= 0 ? (dmax + 1) / 2 : -((-dmax) / 2);
    return rep;
}

}  // namespace lmod

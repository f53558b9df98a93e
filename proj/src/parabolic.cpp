#include "lmod/parabolic.hpp"

#include <algorithm>

namespace lmod {

Parabolic ParabolicLattice::make(std::initializer_list<int> idx) const {
    Parabolic p;
    for (int i : idx) {
        if (i < 0 || i >= rank()) throw RankMismatch("simple-root index out of range");
        p.levi |= 1u << i;
    }
    return p;
}

Parabolic ParabolicLattice::complement(Parabolic p, Parabolic q) const {
    if (!leq(p, q)) throw NotComparable("complement requires P <= Q");
    return Parabolic{p.levi | (full_mask() & ~q.levi)};
}

std::vector<int> ParabolicLattice::delta(Parabolic p, Parabolic q) const {
    if (!leq(p, q)) throw NotComparable("Delta_P^Q requires P <= Q");
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
        if ((q.levi >> i) & 1 && !((p.levi >> i) & 1)) out.push_back(i);
    return out;
}

std::vector<Parabolic> ParabolicLattice::interval(Parabolic r, Parabolic s) const {
    if (!leq(r, s)) throw NotComparable("interval requires R <= S");
    uint32_t free = s.levi & ~r.levi;
    // enumerate submasks of `free` in increasing order
    std::vector<uint32_t> subs;
    uint32_t m = 0;
    while (true) {
        subs.push_back(m);
        if (m == free) break;
        m = (m - free) & free;  // next submask
    }
    std::sort(subs.begin(), subs.end());
    std::vector<Parabolic> out;
    for (uint32_t x : subs) out.push_back(Parabolic{r.levi | x});
    return out;
}

std::string ParabolicLattice::str(Parabolic p) const {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < rank(); ++i)
        if ((p.levi >> i) & 1) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
    return s + "}";
}

// ---------------------------------------------------------------------------

static Rat pair_root_ambient(const RootDatum& rd, int root_idx_simple, const Vec& h) {
    // <alpha_i, H> for H in ambient coweight coordinates
    Rat s = 0;
    for (int j = 0; j < rd.rank(); ++j)
        s += Rat(rd.cartan_matrix[j][root_idx_simple]) * h[j];
    return s;
}

SplitBasis split_basis(const RootDatum& rd, Parabolic P) {
    SplitBasis sb;
    sb.P = P;
    int n = rd.rank(), c = rd.central_rank();

    for (int i = 0; i < n; ++i)
        if (!((P.levi >> i) & 1)) sb.delta.push_back(i);

    // a_P = null space of the rows <alpha_i, .>, i in I_P (central coords free)
    std::vector<int> levi_idx;
    for (int i = 0; i < n; ++i)
        if ((P.levi >> i) & 1) levi_idx.push_back(i);
    Mat rows(static_cast<int>(levi_idx.size()), n + c);
    for (size_t r = 0; r < levi_idx.size(); ++r)
        for (int j = 0; j < n; ++j) rows(static_cast<int>(r), j) = Rat(rd.cartan_matrix[j][levi_idx[r]]);
    sb.a_basis = null_space(rows);

    // projected coroots: gamma^vee minus a correction in span{alpha_i^vee : i in I_P}
    // chosen so the result annihilates every alpha_i, i in I_P
    int k = static_cast<int>(levi_idx.size());
    Mat sys(k, k);
    for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
            sys(r, s) = Rat(rd.cartan_matrix[levi_idx[s]][levi_idx[r]]);  // <alpha_r, alpha_s^vee>
    for (int g : sb.delta) {
        Vec rhs(k, Rat(0));
        for (int r = 0; r < k; ++r) rhs[r] = Rat(rd.cartan_matrix[g][levi_idx[r]]);  // <alpha_r, g^vee>
        Vec corr = k ? solve(sys, rhs) : Vec{};
        Vec proj(n + c, Rat(0));
        proj[g] = 1;
        for (int s = 0; s < k; ++s) proj[levi_idx[s]] -= corr[s];
        sb.coroots.push_back(proj);
    }

    // rho_P = half-sum of Phi+ \ Phi+(I_P)
    sb.rho_weight = rd.zero_weight();
    auto levi_pos = positive_roots_of_levi(rd, P.levi);
    std::vector<bool> in_levi(rd.positive_roots.size(), false);
    for (int i : levi_pos) in_levi[i] = true;
    for (size_t i = 0; i < rd.positive_roots.size(); ++i) {
        if (in_levi[i]) continue;
        Weight b = rd.root_as_weight(rd.positive_roots[i]);
        for (int j = 0; j < n; ++j) sb.rho_weight.fw[j] += b.fw[j] / 2;
    }
    sb.rho_riesz = riesz_on_aP(rd, sb, sb.rho_weight);
    return sb;
}

Vec riesz_on_aP(const RootDatum& rd, const SplitBasis& sb, const Weight& w) {
    int m = static_cast<int>(sb.a_basis.size());
    Mat gram(m, m);
    Vec rhs(m, Rat(0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) gram(i, j) = rd.form_coweight(sb.a_basis[i], sb.a_basis[j]);
        rhs[i] = pairing(rd, w, sb.a_basis[i]);
    }
    Vec x = m ? solve(gram, rhs) : Vec{};
    Vec v(rd.ambient_dim(), Rat(0));
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < rd.ambient_dim(); ++t) v[t] += x[i] * sb.a_basis[i][t];
    return v;
}

// index of alpha within sb.delta
static int delta_pos(const SplitBasis& sb, int alpha) {
    for (size_t i = 0; i < sb.delta.size(); ++i)
        if (sb.delta[i] == alpha) return static_cast<int>(i);
    throw NotInSupport("simple root not in Delta_P");
}

// positions within sb.delta of Delta_P^Q = I_Q \ I_P
static std::vector<int> deltaPQ_pos(const SplitBasis& sb, Parabolic Q) {
    if (sb.P.levi & ~Q.levi) throw NotComparable("Q not above P");
    std::vector<int> out;
    for (size_t i = 0; i < sb.delta.size(); ++i)
        if ((Q.levi >> sb.delta[i]) & 1) out.push_back(static_cast<int>(i));
    return out;
}

Vec beta_coweight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, int alpha) {
    auto pos = deltaPQ_pos(sb, Q);
    int m = static_cast<int>(pos.size());
    int apos = delta_pos(sb, alpha);
    // beta^vee = sum x_d proj(delta^vee) with <gamma, beta^vee> = delta_{gamma,alpha}
    Mat sys(m, m);
    Vec rhs(m, Rat(0));
    for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s)
            sys(r, s) = pair_root_ambient(rd, sb.delta[pos[r]], sb.coroots[pos[s]]);
        rhs[r] = (pos[r] == apos) ? 1 : 0;
    }
    bool found = false;
    for (int r = 0; r < m; ++r)
        if (pos[r] == apos) found = true;
    if (!found) throw NotInSupport("alpha not in Delta_P^Q");
    Vec x = solve(sys, rhs);
    Vec v(rd.ambient_dim(), Rat(0));
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < rd.ambient_dim(); ++t) v[t] += x[s] * sb.coroots[pos[s]][t];
    return v;
}

Vec beta_weight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, int alpha) {
    auto pos = deltaPQ_pos(sb, Q);
    int m = static_cast<int>(pos.size());
    int apos = delta_pos(sb, alpha);
    // Riesz vector y in a_P^Q with B(y, proj(delta^vee)) = delta_{delta,alpha}
    Mat sys(m, m);
    Vec rhs(m, Rat(0));
    bool found = false;
    for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s)
            sys(r, s) = rd.form_coweight(sb.coroots[pos[r]], sb.coroots[pos[s]]);
        if (pos[r] == apos) {
            rhs[r] = 1;
            found = true;
        }
    }
    if (!found) throw NotInSupport("alpha not in Delta_P^Q");
    Vec x = solve(sys, rhs);
    Vec v(rd.ambient_dim(), Rat(0));
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < rd.ambient_dim(); ++t) v[t] += x[s] * sb.coroots[pos[s]][t];
    return v;
}

Vec tau(const RootDatum& rd, const SplitBasis& sb, Parabolic Q) {
    Vec v(rd.ambient_dim(), Rat(0));
    for (int p : deltaPQ_pos(sb, Q)) {
        Vec b = beta_weight(rd, sb, Q, sb.delta[p]);
        for (int t = 0; t < rd.ambient_dim(); ++t) v[t] += b[t];
    }
    return v;
}

Vec tau_coweight(const RootDatum& rd, const SplitBasis& sb, Parabolic Q) {
    Vec v(rd.ambient_dim(), Rat(0));
    for (int p : deltaPQ_pos(sb, Q)) {
        Vec b = beta_coweight(rd, sb, Q, sb.delta[p]);
        for (int t = 0; t < rd.ambient_dim(); ++t) v[t] += b[t];
    }
    return v;
}

Vec restrict_xi(const RootDatum& rd, const SplitBasis& sb, const Weight& mu) {
    return riesz_on_aP(rd, sb, mu);
}

XiComponents xi_components(const RootDatum& rd, const SplitBasis& sb, Parabolic Q,
                           const Vec& xi) {
    // project xi onto span{proj coroots of Delta_P^Q} = a_P^Q; the remainder
    // is the a_Q component (the splitting is B-orthogonal)
    auto pos = deltaPQ_pos(sb, Q);
    int m = static_cast<int>(pos.size());
    Mat gram(m, m);
    Vec rhs(m, Rat(0));
    for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s)
            gram(r, s) = rd.form_coweight(sb.coroots[pos[r]], sb.coroots[pos[s]]);
        rhs[r] = rd.form_coweight(xi, sb.coroots[pos[r]]);
    }
    Vec x = m ? solve(gram, rhs) : Vec{};
    XiComponents out;
    out.on_aPQ.assign(rd.ambient_dim(), Rat(0));
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < rd.ambient_dim(); ++t)
            out.on_aPQ[t] += x[s] * sb.coroots[pos[s]][t];
    out.on_aQ = xi;
    for (int t = 0; t < rd.ambient_dim(); ++t) out.on_aQ[t] -= out.on_aPQ[t];
    return out;
}

bool cone_test(const RootDatum& rd, const SplitBasis& sb, Parabolic Q, const Vec& xi,
               Cone cone) {
    bool dual = cone == Cone::DualOpen || cone == Cone::DualClosed;
    bool open = cone == Cone::DominantOpen || cone == Cone::DualOpen;
    for (int p : deltaPQ_pos(sb, Q)) {
        Vec target = dual ? beta_coweight(rd, sb, Q, sb.delta[p]) : sb.coroots[p];
        Rat v = rd.form_coweight(xi, target);
        if (open ? !(v > 0) : !(v >= 0)) return false;
    }
    return true;
}

Parabolic geometric_lemma(const RootDatum& rd, Parabolic P, const Vec& xi,
                          GLVariant variant) {
    ParabolicLattice lat(rd);
    SplitBasis sb = split_basis(rd, P);
    bool strict_subset = variant == GLVariant::StrictOnSubset;
    std::vector<Parabolic> hits;
    for (Parabolic R : lat.interval(P, lat.g())) {
        SplitBasis sbR = split_basis(rd, R);
        bool ok = true;
        for (int g : sb.delta) {
            bool in_R = (R.levi >> g) & 1;
            if (in_R) {
                Rat v = rd.form_coweight(xi, beta_coweight(rd, sb, R, g));
                if (strict_subset ? !(v > 0) : !(v >= 0)) ok = false;
            } else {
                // gamma^vee projected to a_R
                Rat v = rd.form_coweight(xi, sbR.coroots[delta_pos(sbR, g)]);
                if (strict_subset ? !(v <= 0) : !(v < 0)) ok = false;
            }
            if (!ok) break;
        }
        if (ok) hits.push_back(R);
    }
    if (hits.size() != 1)
        throw InternalInconsistency("geometric lemma: found " + std::to_string(hits.size()) +
                                    " admissible parabolics");
    return hits[0];
}

}  // namespace lmod

#include "lmod/lmodule.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace lmod {

namespace {

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw RankMismatch("inverse: not square");
    size_t n = m.rows;
    Mat aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    if (echelon(aug) != n) throw RankMismatch("inverse: singular matrix");
    Mat inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// canonical multiplicity-space bases

bool LModule::in_support(Parabolic p) const {
    return std::binary_search(support.begin(), support.end(), p);
}

const std::vector<WeylElement>& KostantCache::reps(Parabolic A, Parabolic B) {
    auto key = std::make_pair(A.levi, B.levi);
    auto it = reps_.find(key);
    if (it == reps_.end()) it = reps_.emplace(key, coset_reps(rd_, A, B)).first;
    return it->second;
}

std::pair<int, int> KostantCache::factor(Parabolic A, Parabolic C, Parabolic B, int w_index) {
    auto key = std::make_tuple(A.levi, C.levi, B.levi, w_index);
    auto it = factors_.find(key);
    if (it != factors_.end()) return it->second;
    const auto& wab = reps(A, B);
    const auto& wac = reps(A, C);
    const auto& wcb = reps(C, B);
    const WeylElement& w = wab.at(w_index);
    for (size_t i2 = 0; i2 < wcb.size(); ++i2) {
        if (wcb[i2].length() > w.length()) continue;
        WeylElement w1 = weyl_mul(rd_, w, weyl_inverse(rd_, wcb[i2]));
        for (size_t i1 = 0; i1 < wac.size(); ++i1) {
            if (wac[i1].length() + wcb[i2].length() != w.length()) continue;
            if (wac[i1].mat == w1.mat) {
                auto res = std::make_pair(static_cast<int>(i1), static_cast<int>(i2));
                factors_[key] = res;
                return res;
            }
        }
    }
    throw InternalInconsistency("coset representative does not factor through the middle Levi");
}

std::vector<HSlot> h_basis(KostantCache& kc, const LModule& m, Parabolic A, Parabolic B,
                           const Weight& mu, int d) {
    std::vector<HSlot> out;
    auto pit = m.pieces.find(B);
    if (pit == m.pieces.end()) return out;
    const auto& reps = kc.reps(A, B);
    for (size_t j = 0; j < pit->second.size(); ++j) {
        const IsotypicSummand& s = pit->second[j];
        for (size_t r = 0; r < reps.size(); ++r) {
            if (s.degree + reps[r].length() != d) continue;
            if (dot_action(kc.rd(), reps[r], s.mu) != mu) continue;
            for (int c = 0; c < s.mult; ++c)
                out.push_back(HSlot{static_cast<int>(j), static_cast<int>(r), c});
        }
    }
    return out;
}

namespace {

int slot_index(const std::vector<HSlot>& basis, int summand, int rep, int copy) {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].summand == summand && basis[i].rep == rep && basis[i].copy == copy)
            return static_cast<int>(i);
    return -1;
}

const Mat* find_block(const LModule& m, Parabolic to_P, Parabolic from_Q, const Weight& mu,
                      int d) {
    auto it = m.blocks.find(MorphismKey{to_P, from_Q, mu, d});
    return it == m.blocks.end() ? nullptr : &it->second;
}

// all (mu, degree) pairs carried by H(n_P^B; E_B)
std::set<std::pair<Weight, int>> mu_degrees(KostantCache& kc, const LModule& m, Parabolic P,
                                            Parabolic B) {
    std::set<std::pair<Weight, int>> out;
    auto pit = m.pieces.find(B);
    if (pit == m.pieces.end()) return out;
    const auto& reps = kc.reps(P, B);
    for (const auto& s : pit->second)
        for (const auto& w : reps)
            out.insert({dot_action(kc.rd(), w, s.mu), s.degree + w.length()});
    return out;
}

}  // namespace

Mat component(KostantCache& kc, const LModule& m, Parabolic P, Parabolic A, Parabolic B,
              const Weight& mu, int d) {
    const RootDatum& rd = kc.rd();
    std::vector<HSlot> src = h_basis(kc, m, P, B, mu, d);
    std::vector<HSlot> tgt = h_basis(kc, m, P, A, mu, d + 1);
    Mat out(tgt.size(), src.size());
    if (src.empty() || tgt.empty()) return out;
    const auto& wab = kc.reps(A, B);
    const auto& eb = m.pieces.at(B);
    for (size_t s = 0; s < src.size(); ++s) {
        auto [i1, i2] = kc.factor(P, A, B, src[s].rep);
        const IsotypicSummand& sum = eb[src[s].summand];
        Weight mu2 = dot_action(rd, wab[i2], sum.mu);
        int mid = sum.degree + wab[i2].length();
        const Mat* block = find_block(m, A, B, mu2, mid);
        if (!block) continue;
        std::vector<HSlot> src2 = h_basis(kc, m, A, B, mu2, mid);
        std::vector<HSlot> ea = h_basis(kc, m, A, A, mu2, mid + 1);
        int col = slot_index(src2, src[s].summand, i2, src[s].copy);
        if (col < 0 || block->rows != ea.size() || block->cols != src2.size())
            throw InternalInconsistency("morphism block shape mismatch during assembly");
        for (size_t r = 0; r < ea.size(); ++r) {
            if ((*block)(r, col) == 0) continue;
            int t = slot_index(tgt, ea[r].summand, i1, ea[r].copy);
            if (t < 0) throw InternalInconsistency("pushed slot missing from target basis");
            out(t, s) += (*block)(r, col);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// validation

ValidationReport validate(const RootDatum& rd, const LModule& m) {
    ValidationReport rep;
    ParabolicLattice lat(rd);
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };

    if (!std::is_sorted(m.support.begin(), m.support.end()))
        fail("support list is not sorted");
    for (Parabolic p : m.support)
        for (Parabolic r : m.support) {
            if (!lat.leq(p, r)) continue;
            for (Parabolic q : lat.interval(p, r))
                if (!m.in_support(q))
                    fail("support not locally closed: " + lat.str(q) + " missing between " +
                         lat.str(p) + " and " + lat.str(r));
        }

    for (const auto& [p, summands] : m.pieces) {
        if (!m.in_support(p)) fail("pieces at " + lat.str(p) + " outside support");
        for (const auto& s : summands) {
            if (s.mult < 1) fail("nonpositive multiplicity at " + lat.str(p));
            if (!rd.is_dominant_for(s.mu, p.levi))
                fail("summand weight " + weight_str(s.mu) + " not dominant for " + lat.str(p));
        }
    }

    KostantCache kc(rd);
    for (const auto& [key, block] : m.blocks) {
        std::string where = lat.str(key.to_P) + " <= " + lat.str(key.from_Q) + " at " +
                            weight_str(key.mu) + " degree " + std::to_string(key.degree);
        if (!lat.leq(key.to_P, key.from_Q) || !m.in_support(key.to_P) ||
            !m.in_support(key.from_Q)) {
            fail("morphism block outside support lattice: " + where);
            continue;
        }
        size_t cols = h_basis(kc, m, key.to_P, key.from_Q, key.mu, key.degree).size();
        size_t rows = h_basis(kc, m, key.to_P, key.to_P, key.mu, key.degree + 1).size();
        if (block.rows != rows || block.cols != cols)
            fail("morphism block shape mismatch: " + where);
    }
    if (!rep.ok) return rep;

    for (Parabolic p : m.support)
        for (Parabolic r : m.support) {
            if (!lat.leq(p, r)) continue;
            bool bad = false;
            for (const auto& [mu, d] : mu_degrees(kc, m, p, r)) {
                size_t cols = h_basis(kc, m, p, r, mu, d).size();
                size_t rows = h_basis(kc, m, p, p, mu, d + 2).size();
                Mat acc(rows, cols);
                for (Parabolic q : lat.interval(p, r)) {
                    if (!m.in_support(q)) continue;
                    acc = acc + component(kc, m, p, p, q, mu, d + 1) *
                                    component(kc, m, p, q, r, mu, d);
                }
                if (!acc.is_zero()) {
                    bad = true;
                    break;
                }
            }
            if (bad)
                fail("L-module condition fails for the pair " + lat.str(p) + " <= " + lat.str(r));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// complexes of isotypic pieces

int IsotypicComplex::mult_at(int degree, const Weight& w) const {
    auto it = terms.find(degree);
    if (it == terms.end()) return 0;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? 0 : jt->second;
}

Mat IsotypicComplex::diff_at(int degree, const Weight& w) const {
    auto it = diff.find({degree, w});
    if (it != diff.end()) return it->second;
    return Mat(mult_at(degree + 1, w), mult_at(degree, w));
}

IsotypicComplex shift(const IsotypicComplex& c, int k) {
    IsotypicComplex out;
    for (const auto& [d, ws] : c.terms) out.terms[d - k] = ws;
    for (const auto& [key, m] : c.diff) {
        Mat s = m;
        if (k % 2 != 0) s = -s;
        out.diff[{key.first - k, key.second}] = s;
    }
    return out;
}

IsotypicComplex mapping_cone(const IsotypicComplex& c, const IsotypicComplex& d,
                             const std::map<std::pair<int, Weight>, Mat>& f) {
    IsotypicComplex out;
    std::set<std::pair<int, Weight>> keys;
    for (const auto& [deg, ws] : c.terms)
        for (const auto& [w, mult] : ws) keys.insert({deg - 1, w});
    for (const auto& [deg, ws] : d.terms)
        for (const auto& [w, mult] : ws) keys.insert({deg, w});
    for (const auto& [deg, w] : keys) {
        int mc = c.mult_at(deg + 1, w), md = d.mult_at(deg, w);
        if (mc + md > 0) out.terms[deg][w] = mc + md;
    }
    for (const auto& [deg, w] : keys) {
        int sc = c.mult_at(deg + 1, w), sd = d.mult_at(deg, w);
        int tc = c.mult_at(deg + 2, w), td = d.mult_at(deg + 1, w);
        if ((sc + sd) == 0 || (tc + td) == 0) continue;
        Mat block(tc + td, sc + sd);
        Mat dc = c.diff_at(deg + 1, w), dd = d.diff_at(deg, w);
        Mat fb(td, sc);
        auto fit = f.find({deg + 1, w});
        if (fit != f.end()) fb = fit->second;
        if (fb.rows != static_cast<size_t>(td) || fb.cols != static_cast<size_t>(sc))
            throw RankMismatch("mapping_cone: chain-map block shape mismatch");
        for (int i = 0; i < tc; ++i)
            for (int j = 0; j < sc; ++j) block(i, j) = -dc(i, j);
        for (int i = 0; i < td; ++i)
            for (int j = 0; j < sc; ++j) block(tc + i, j) = fb(i, j);
        for (int i = 0; i < td; ++i)
            for (int j = 0; j < sd; ++j) block(tc + i, sc + j) = dd(i, j);
        out.diff[{deg, w}] = block;
    }
    return out;
}

std::map<int, std::map<Weight, long>> cohomology(const IsotypicComplex& c) {
    std::set<Weight> weights;
    std::set<int> degrees;
    for (const auto& [d, ws] : c.terms)
        for (const auto& [w, mult] : ws) {
            weights.insert(w);
            degrees.insert(d);
        }
    for (const auto& [key, m] : c.diff) {
        if (m.rows != static_cast<size_t>(c.mult_at(key.first + 1, key.second)) ||
            m.cols != static_cast<size_t>(c.mult_at(key.first, key.second)))
            throw NotAComplex("differential shape does not match the terms");
        weights.insert(key.second);
        degrees.insert(key.first);
    }
    std::map<int, std::map<Weight, long>> out;
    if (degrees.empty()) return out;
    int lo = *degrees.begin(), hi = *degrees.rbegin();
    for (const Weight& w : weights) {
        for (int d = lo; d <= hi; ++d) {
            Mat dn = c.diff_at(d, w);
            if (!(c.diff_at(d + 1, w) * dn).is_zero())
                throw NotAComplex("d^2 != 0 at weight " + weight_str(w) + " degree " +
                                  std::to_string(d));
            long dim = c.mult_at(d, w);
            if (dim == 0) continue;
            long h = dim - static_cast<long>(rank(dn)) - static_cast<long>(rank(c.diff_at(d - 1, w)));
            if (h != 0) out[d][w] = h;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// local functors

namespace {

std::vector<Parabolic> functor_indices(const ParabolicLattice& lat, const LModule& m,
                                       Parabolic P, FunctorKind kind, Parabolic Q) {
    std::vector<Parabolic> out;
    for (Parabolic r : m.support) {
        if (!lat.leq(P, r)) continue;
        bool keep = false;
        switch (kind) {
            case FunctorKind::Shriek: keep = (r == P); break;
            case FunctorKind::Star: keep = true; break;
            case FunctorKind::Link: keep = (r != P); break;
            case FunctorKind::StarShriek: keep = lat.leq(r, Q); break;
            case FunctorKind::StarJStar: keep = !lat.leq(r, Q); break;
            case FunctorKind::StarIStar: keep = lat.leq(Q, r); break;
        }
        if (keep) out.push_back(r);
    }
    return out;
}

IsotypicComplex assemble_local(const RootDatum& rd, const LModule& m, Parabolic P,
                               const std::vector<Parabolic>& idx) {
    ParabolicLattice lat(rd);
    KostantCache kc(rd);
    IsotypicComplex out;
    std::set<std::pair<Weight, int>> keys;
    for (Parabolic r : idx)
        for (const auto& md : mu_degrees(kc, m, P, r)) keys.insert(md);
    for (const auto& [mu, d] : keys) {
        int total = 0;
        for (Parabolic r : idx) total += static_cast<int>(h_basis(kc, m, P, r, mu, d).size());
        if (total > 0) out.terms[d][mu] = total;
    }
    for (const auto& [mu, d] : keys) {
        std::vector<size_t> srcs, tgts;
        size_t cols = 0, rows = 0;
        for (Parabolic r : idx) {
            srcs.push_back(cols);
            tgts.push_back(rows);
            cols += h_basis(kc, m, P, r, mu, d).size();
            rows += h_basis(kc, m, P, r, mu, d + 1).size();
        }
        if (cols == 0) continue;
        Mat big(rows, cols);
        for (size_t bi = 0; bi < idx.size(); ++bi)
            for (size_t ai = 0; ai < idx.size(); ++ai) {
                if (!lat.leq(idx[ai], idx[bi])) continue;
                Mat blk = component(kc, m, P, idx[ai], idx[bi], mu, d);
                for (size_t i = 0; i < blk.rows; ++i)
                    for (size_t j = 0; j < blk.cols; ++j)
                        big(tgts[ai] + i, srcs[bi] + j) = blk(i, j);
            }
        out.diff[{d, mu}] = big;
    }
    return out;
}

IsotypicComplex local_functor_unchecked(const RootDatum& rd, const LModule& m, Parabolic P,
                                        FunctorKind kind, Parabolic Q) {
    ParabolicLattice lat(rd);
    return assemble_local(rd, m, P, functor_indices(lat, m, P, kind, Q));
}

}  // namespace

IsotypicComplex local_functor(const RootDatum& rd, const LModule& m, Parabolic P,
                              FunctorKind kind, Parabolic Q) {
    ParabolicLattice lat(rd);
    if (!m.in_support(P)) throw NotInSupport("parabolic " + lat.str(P) + " not in support");
    bool has_q = kind == FunctorKind::StarShriek || kind == FunctorKind::StarJStar ||
                 kind == FunctorKind::StarIStar;
    if (has_q) {
        if (!lat.leq(P, Q)) throw NotComparable("expected P <= Q");
        if (!m.in_support(Q)) throw NotInSupport("parabolic " + lat.str(Q) + " not in support");
    }
    return local_functor_unchecked(rd, m, P, kind, Q);
}

// ---------------------------------------------------------------------------
// generic micro-support and vanishing bounds

namespace {

// [Q_V, Q_V'] from <xi_V + rho_P, alpha^vee> over alpha in Delta_P
std::pair<Parabolic, Parabolic> qv_interval(const RootDatum& rd, Parabolic P, const Weight& mu) {
    SplitBasis sb = split_basis(rd, P);
    uint32_t lo = P.levi, hi = P.levi;
    for (size_t k = 0; k < sb.delta.size(); ++k) {
        Rat v = pairing(rd, mu, sb.coroots[k]) + pairing(rd, sb.rho_weight, sb.coroots[k]);
        if (v < 0) lo |= (1u << sb.delta[k]);
        if (v <= 0) hi |= (1u << sb.delta[k]);
    }
    return {Parabolic{lo}, Parabolic{hi}};
}

}  // namespace

std::vector<MicroSupportElement> micro_support_generic(const RootDatum& rd, const LModule& m,
                                                       const RealFormEntry& entry) {
    ParabolicLattice lat(rd);
    KostantCache kc(rd);
    std::vector<MicroSupportElement> out;
    for (Parabolic p : m.support) {
        std::set<Weight> candidates;
        for (Parabolic r : m.support)
            if (lat.leq(p, r))
                for (const auto& [mu, d] : mu_degrees(kc, m, p, r)) candidates.insert(mu);
        for (const Weight& mu : candidates) {
            if (!conj_selfdual_check(entry, rd, p, mu)) continue;
            auto [qlo, qhi] = qv_interval(rd, p, mu);
            MicroSupportElement el;
            el.P = p;
            el.mu = mu;
            bool nonzero = false;
            for (Parabolic q : lat.interval(qlo, qhi)) {
                auto h = cohomology(local_functor_unchecked(rd, m, p, FunctorKind::StarShriek, q));
                for (const auto& [d, ws] : h) {
                    auto it = ws.find(mu);
                    if (it == ws.end() || it->second == 0) continue;
                    el.type[q][d] = it->second;
                    if (!nonzero || d < el.c_deg) el.c_deg = d;
                    if (!nonzero || d > el.d_deg) el.d_deg = d;
                    nonzero = true;
                }
            }
            if (nonzero) out.push_back(std::move(el));
        }
    }
    return out;
}

VanishingBounds vanishing_bounds(const RootDatum& rd, const LModule& m,
                                 const RealFormEntry& entry) {
    auto ms = micro_support_generic(rd, m, entry);
    VanishingBounds vb;
    if (ms.empty()) {
        vb.empty = true;
        return vb;
    }
    bool first = true;
    for (const auto& el : ms) {
        long dd = dim_D(entry, rd, el.P);
        long dv = dim_DV(entry, rd, el.P, el.mu);
        // track twice the bounds, then round outward
        long c2 = dd - dv + 2 * el.c_deg;
        long d2 = dd + dv + 2 * el.d_deg;
        if (first || c2 < vb.c) vb.c = c2;
        if (first || d2 > vb.d) vb.d = d2;
        first = false;
    }
    vb.c = vb.c >= 0 ? vb.c / 2 : -((-vb.c + 1) / 2);
    vb.d = vb.d >= 0 ? (vb.d + 1) / 2 : -((-vb.d) / 2);
    return vb;
}

// ---------------------------------------------------------------------------
// the flag construction

namespace {

// positions of the multiplicity space of a GComplex at (degree, weight):
// (summand index, copy) in listing order
std::vector<std::pair<int, int>> gc_space(const GComplex& c, int degree, const Weight& w) {
    std::vector<std::pair<int, int>> out;
    for (size_t j = 0; j < c.summands.size(); ++j)
        if (c.summands[j].degree == degree && c.summands[j].mu == w)
            for (int k = 0; k < c.summands[j].mult; ++k)
                out.push_back({static_cast<int>(j), k});
    return out;
}

}  // namespace

LModule flag_construction(const RootDatum& rd, const GComplex& c, Parabolic bottom,
                          Parabolic top) {
    ParabolicLattice lat(rd);
    if (!lat.leq(bottom, top)) throw NotComparable("expected bottom <= top");
    for (const auto& s : c.summands)
        if (!rd.is_dominant_for(s.mu, top.levi))
            throw NotDominant("coefficient weight " + weight_str(s.mu) +
                              " not dominant for the top Levi");

    LModule m;
    m.support = lat.interval(bottom, top);
    KostantCache kc(rd);

    // flags P = R_0 < ... < R_k = top within [P, top], enumerated per stratum
    using Flag = std::vector<Parabolic>;
    std::map<Parabolic, std::vector<Flag>> flags;
    std::map<Parabolic, std::map<std::vector<uint32_t>, int>> flag_id;
    for (Parabolic p : m.support) {
        std::vector<Parabolic> interior;
        for (Parabolic q : lat.interval(p, top))
            if (q != p && q != top) interior.push_back(q);
        for (uint32_t s = 0; s < (1u << interior.size()); ++s) {
            Flag f{p};
            for (size_t i = 0; i < interior.size(); ++i)
                if (s & (1u << i)) f.push_back(interior[i]);
            if (p != top) f.push_back(top);
            bool chain = true;
            for (size_t i = 0; i + 1 < f.size(); ++i)
                if (!lat.leq(f[i], f[i + 1]) || f[i] == f[i + 1]) chain = false;
            if (!chain) continue;
            std::vector<uint32_t> sig;
            for (Parabolic q : f) sig.push_back(q.levi);
            if (flag_id[p].count(sig)) continue;
            flag_id[p][sig] = static_cast<int>(flags[p].size());
            flags[p].push_back(f);
        }
    }

    // E_P summands: (flag, coefficient summand, w in W^{P,top})
    std::map<Parabolic, std::map<std::tuple<int, int, int>, int>> sum_idx;
    for (Parabolic p : m.support) {
        auto& summands = m.pieces[p];
        const auto& reps = kc.reps(p, top);
        for (size_t fi = 0; fi < flags[p].size(); ++fi) {
            int kf = static_cast<int>(flags[p][fi].size()) - 1;
            for (size_t j = 0; j < c.summands.size(); ++j)
                for (size_t r = 0; r < reps.size(); ++r) {
                    sum_idx[p][{static_cast<int>(fi), static_cast<int>(j),
                                static_cast<int>(r)}] = static_cast<int>(summands.size());
                    summands.push_back(IsotypicSummand{
                        dot_action(rd, reps[r], c.summands[j].mu),
                        c.summands[j].degree + reps[r].length() + kf, c.summands[j].mult});
                }
        }
    }

    auto ensure = [&](Parabolic to_P, Parabolic from_Q, const Weight& mu, int d) -> Mat& {
        MorphismKey key{to_P, from_Q, mu, d};
        auto it = m.blocks.find(key);
        if (it == m.blocks.end()) {
            Mat z(h_basis(kc, m, to_P, to_P, mu, d + 1).size(),
                  h_basis(kc, m, to_P, from_Q, mu, d).size());
            it = m.blocks.emplace(key, std::move(z)).first;
        }
        return it->second;
    };

    for (Parabolic p : m.support) {
        const auto& reps = kc.reps(p, top);
        for (size_t fi = 0; fi < flags[p].size(); ++fi) {
            const Flag& f = flags[p][fi];
            int kf = static_cast<int>(f.size()) - 1;

            // coefficient differential, sign (-1)^kf
            for (const auto& [dkey, dmat] : c.diff) {
                auto src_sp = gc_space(c, dkey.first, dkey.second);
                auto tgt_sp = gc_space(c, dkey.first + 1, dkey.second);
                if (dmat.rows != tgt_sp.size() || dmat.cols != src_sp.size())
                    throw RankMismatch("coefficient differential block shape mismatch");
                for (size_t r = 0; r < reps.size(); ++r) {
                    Weight mu = dot_action(rd, reps[r], dkey.second);
                    int d = dkey.first + reps[r].length() + kf;
                    Mat& blk = ensure(p, p, mu, d);
                    auto src_b = h_basis(kc, m, p, p, mu, d);
                    auto tgt_b = h_basis(kc, m, p, p, mu, d + 1);
                    for (size_t bi = 0; bi < dmat.rows; ++bi)
                        for (size_t bj = 0; bj < dmat.cols; ++bj) {
                            if (dmat(bi, bj) == 0) continue;
                            auto [js, cs] = src_sp[bj];
                            auto [jt, ct] = tgt_sp[bi];
                            int col = slot_index(
                                src_b, sum_idx[p].at({static_cast<int>(fi), js, static_cast<int>(r)}),
                                0, cs);
                            int row = slot_index(
                                tgt_b, sum_idx[p].at({static_cast<int>(fi), jt, static_cast<int>(r)}),
                                0, ct);
                            if (col < 0 || row < 0)
                                throw InternalInconsistency("flag construction slot lookup failed");
                            blk(row, col) += (kf % 2 == 0 ? dmat(bi, bj) : -dmat(bi, bj));
                        }
                }
            }

            // interior insertions: f -> f with one interior element deleted,
            // read as insertion into the smaller flag at position l, sign (-1)^l
            for (int l = 1; l < kf; ++l) {
                Flag g = f;
                g.erase(g.begin() + l);
                std::vector<uint32_t> sig;
                for (Parabolic q : g) sig.push_back(q.levi);
                int gi = flag_id[p].at(sig);
                Rat sign = (l % 2 == 0) ? 1 : -1;
                for (size_t j = 0; j < c.summands.size(); ++j)
                    for (size_t r = 0; r < reps.size(); ++r) {
                        Weight mu = dot_action(rd, reps[r], c.summands[j].mu);
                        int d = c.summands[j].degree + reps[r].length() + (kf - 1);
                        Mat& blk = ensure(p, p, mu, d);
                        auto src_b = h_basis(kc, m, p, p, mu, d);
                        auto tgt_b = h_basis(kc, m, p, p, mu, d + 1);
                        for (int cp = 0; cp < c.summands[j].mult; ++cp) {
                            int col = slot_index(
                                src_b,
                                sum_idx[p].at({gi, static_cast<int>(j), static_cast<int>(r)}), 0,
                                cp);
                            int row = slot_index(
                                tgt_b,
                                sum_idx[p].at(
                                    {static_cast<int>(fi), static_cast<int>(j), static_cast<int>(r)}),
                                0, cp);
                            if (col < 0 || row < 0)
                                throw InternalInconsistency("flag construction slot lookup failed");
                            blk(row, col) += sign;
                        }
                    }
            }

            // bottom insertion: the f_{P R_1} component, sign +1
            if (kf >= 1) {
                Parabolic q = f[1];
                Flag g(f.begin() + 1, f.end());
                std::vector<uint32_t> sig;
                for (Parabolic x : g) sig.push_back(x.levi);
                int gi = flag_id[q].at(sig);
                const auto& wqt = kc.reps(q, top);
                const auto& wpq = kc.reps(p, q);
                for (size_t j = 0; j < c.summands.size(); ++j)
                    for (size_t r2 = 0; r2 < wqt.size(); ++r2)
                        for (size_t r1 = 0; r1 < wpq.size(); ++r1) {
                            WeylElement w = weyl_mul(rd, wpq[r1], wqt[r2]);
                            int wr = -1;
                            for (size_t r = 0; r < reps.size(); ++r)
                                if (reps[r].mat == w.mat) wr = static_cast<int>(r);
                            if (wr < 0)
                                throw InternalInconsistency(
                                    "product of coset representatives is not a representative");
                            Weight mu = dot_action(rd, reps[wr], c.summands[j].mu);
                            int d = c.summands[j].degree + reps[wr].length() + (kf - 1);
                            Mat& blk = ensure(p, q, mu, d);
                            auto src_b = h_basis(kc, m, p, q, mu, d);
                            auto tgt_b = h_basis(kc, m, p, p, mu, d + 1);
                            for (int cp = 0; cp < c.summands[j].mult; ++cp) {
                                int col = slot_index(
                                    src_b,
                                    sum_idx[q].at({gi, static_cast<int>(j), static_cast<int>(r2)}),
                                    static_cast<int>(r1), cp);
                                int row = slot_index(
                                    tgt_b,
                                    sum_idx[p].at({static_cast<int>(fi), static_cast<int>(j), wr}),
                                    0, cp);
                                if (col < 0 || row < 0)
                                    throw InternalInconsistency(
                                        "flag construction slot lookup failed");
                                blk(row, col) += 1;
                            }
                        }
            }
        }
    }

    for (auto it = m.blocks.begin(); it != m.blocks.end();)
        it = it->second.is_zero() ? m.blocks.erase(it) : std::next(it);
    return m;
}

LModule flag_construction(const RootDatum& rd, const GComplex& c) {
    ParabolicLattice lat(rd);
    return flag_construction(rd, c, lat.p0(), lat.g());
}

// ---------------------------------------------------------------------------
// random modules

GComplex random_gcomplex(const RootDatum& rd, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    GComplex c;
    int nweights = pick(1, 2);
    std::set<Weight> used;
    for (int t = 0; t < nweights; ++t) {
        Weight lam = rd.zero_weight();
        for (int i = 0; i < rd.rank(); ++i) lam.fw[i] = pick(0, 1);
        if (used.count(lam)) continue;
        used.insert(lam);
        int len = pick(2, 3);
        std::vector<int> mults;
        for (int d = 0; d < len; ++d) mults.push_back(pick(1, 2));
        std::vector<Mat> diffs;
        for (int d = 0; d + 1 < len; ++d) {
            Mat dm(mults[d + 1], mults[d]);
            if (d == 0) {
                for (auto& x : dm.a) x = pick(-1, 1);
            } else {
                // rows constrained to the left null space of the previous map
                auto basis = null_space(transpose(diffs.back()));
                for (size_t i = 0; i < dm.rows; ++i)
                    if (!basis.empty()) {
                        Vec row(dm.cols, Rat(0));
                        for (const auto& b : basis) {
                            Rat coef = pick(-1, 1);
                            for (size_t j = 0; j < row.size(); ++j) row[j] += coef * b[j];
                        }
                        for (size_t j = 0; j < dm.cols; ++j) dm(i, j) = row[j];
                    }
            }
            diffs.push_back(dm);
        }
        for (int d = 0; d < len; ++d) c.summands.push_back(IsotypicSummand{lam, d, mults[d]});
        for (int d = 0; d + 1 < len; ++d)
            if (!diffs[d].is_zero()) c.diff[{d, lam}] = diffs[d];
    }
    return c;
}

LModule random_lmodule(const RootDatum& rd, uint64_t seed) {
    std::mt19937_64 rng(seed * 2654435761u + 1);
    ParabolicLattice lat(rd);
    auto all = lat.all();
    Parabolic bottom = lat.g(), top = lat.g();
    for (int tries = 0; tries < 64; ++tries) {
        Parabolic a = all[rng() % all.size()];
        Parabolic b = all[rng() % all.size()];
        if (!lat.leq(a, b)) continue;
        size_t n = lat.interval(a, b).size();
        if (n < 2 || n > 4) continue;
        bottom = a;
        top = b;
        break;
    }
    GComplex c = random_gcomplex(rd, seed ^ 0x9e3779b97f4a7c15ull);
    LModule m = flag_construction(rd, c, bottom, top);
    return change_of_basis(rd, m, seed + 17);
}

LModule change_of_basis(const RootDatum& rd, const LModule& m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };

    // one invertible S per (P, weight, degree) multiplicity space
    std::map<std::pair<uint32_t, std::pair<Weight, int>>, std::pair<Mat, Mat>> bases;
    auto space = [&](Parabolic p, const Weight& w, int d) {
        std::vector<std::pair<int, int>> out;
        auto it = m.pieces.find(p);
        if (it == m.pieces.end()) return out;
        for (size_t j = 0; j < it->second.size(); ++j)
            if (it->second[j].mu == w && it->second[j].degree == d)
                for (int k = 0; k < it->second[j].mult; ++k)
                    out.push_back({static_cast<int>(j), k});
        return out;
    };
    for (const auto& [p, summands] : m.pieces) {
        std::set<std::pair<Weight, int>> keys;
        for (const auto& s : summands) keys.insert({s.mu, s.degree});
        for (const auto& key : keys) {
            size_t n = space(p, key.first, key.second).size();
            Mat upper = Mat::identity(n), lower = Mat::identity(n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    if (i < j) upper(i, j) = pick(-1, 1);
                    if (i > j) lower(i, j) = pick(-1, 1);
                }
            Mat s = upper * lower;
            bases[{p.levi, key}] = {s, inverse(s)};
        }
    }

    KostantCache kc(rd);
    LModule out = m;
    for (auto& [key, block] : out.blocks) {
        const auto& sp = bases.at({key.to_P.levi, {key.mu, key.degree + 1}}).first;
        auto src = h_basis(kc, m, key.to_P, key.from_Q, key.mu, key.degree);
        Mat tinv(src.size(), src.size());
        const auto& eq = m.pieces.at(key.from_Q);
        for (size_t j = 0; j < src.size(); ++j) {
            const IsotypicSummand& sj = eq[src[j].summand];
            auto key_j = std::make_pair(sj.mu, sj.degree);
            auto pos = space(key.from_Q, sj.mu, sj.degree);
            const Mat& sinv = bases.at({key.from_Q.levi, key_j}).second;
            for (size_t i = 0; i < src.size(); ++i) {
                if (src[i].rep != src[j].rep) continue;
                const IsotypicSummand& si = eq[src[i].summand];
                if (si.mu != sj.mu || si.degree != sj.degree) continue;
                int pi = -1, pj = -1;
                for (size_t k = 0; k < pos.size(); ++k) {
                    if (pos[k] == std::make_pair(src[i].summand, src[i].copy)) pi = static_cast<int>(k);
                    if (pos[k] == std::make_pair(src[j].summand, src[j].copy)) pj = static_cast<int>(k);
                }
                tinv(i, j) = sinv(pi, pj);
            }
        }
        block = sp * block * tinv;
    }
    for (auto it = out.blocks.begin(); it != out.blocks.end();)
        it = it->second.is_zero() ? out.blocks.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// JSON serialization

std::string lmodule_to_json(const RootDatum& rd, const LModule& m) {
    ParabolicLattice lat(rd);
    nlohmann::json j;
    auto plist = [](Parabolic p) {
        std::vector<int> idx;
        for (int i = 0; i < 32; ++i)
            if (p.levi & (1u << i)) idx.push_back(i);
        return idx;
    };
    j["support"] = nlohmann::json::array();
    for (Parabolic p : m.support) j["support"].push_back(plist(p));
    j["pieces"] = nlohmann::json::object();
    for (const auto& [p, summands] : m.pieces) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : summands)
            arr.push_back({{"weight", weight_str(s.mu)}, {"degree", s.degree}, {"mult", s.mult}});
        j["pieces"][lat.str(p)] = arr;
    }
    j["morphisms"] = nlohmann::json::array();
    for (const auto& [key, block] : m.blocks) {
        nlohmann::json rows = nlohmann::json::array();
        for (size_t i = 0; i < block.rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (size_t k = 0; k < block.cols; ++k) row.push_back(rat_str(block(i, k)));
            rows.push_back(row);
        }
        j["morphisms"].push_back({{"to_P", plist(key.to_P)},
                                  {"from_Q", plist(key.from_Q)},
                                  {"weight", weight_str(key.mu)},
                                  {"degree", key.degree},
                                  {"rows", block.rows},
                                  {"cols", block.cols},
                                  {"matrix", rows}});
    }
    return j.dump(2);
}

LModule lmodule_from_json(const RootDatum& rd, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad L-module JSON: ") + e.what());
    }
    ParabolicLattice lat(rd);
    auto pfrom = [&](const nlohmann::json& arr) {
        Parabolic p{0};
        for (int i : arr.get<std::vector<int>>()) {
            if (i < 0 || i >= rd.rank()) throw ParseError("simple-root index out of range");
            p.levi |= (1u << i);
        }
        return p;
    };
    auto pfrom_str = [&](const std::string& s) {
        Parabolic p{0};
        std::string body = s;
        if (!body.empty() && body.front() == '{') body = body.substr(1, body.size() - 2);
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            int i = std::stoi(tok);
            if (i < 0 || i >= rd.rank()) throw ParseError("simple-root index out of range");
            p.levi |= (1u << i);
        }
        return p;
    };
    LModule m;
    try {
        for (const auto& arr : j.at("support")) m.support.push_back(pfrom(arr));
        std::sort(m.support.begin(), m.support.end());
        for (const auto& [key, arr] : j.at("pieces").items()) {
            Parabolic p = pfrom_str(key);
            for (const auto& s : arr)
                m.pieces[p].push_back(IsotypicSummand{
                    parse_weight(rd, s.at("weight").get<std::string>()),
                    s.at("degree").get<int>(), s.at("mult").get<int>()});
        }
        for (const auto& mor : j.at("morphisms")) {
            MorphismKey key{pfrom(mor.at("to_P")), pfrom(mor.at("from_Q")),
                            parse_weight(rd, mor.at("weight").get<std::string>()),
                            mor.at("degree").get<int>()};
            size_t rows = mor.at("rows").get<size_t>(), cols = mor.at("cols").get<size_t>();
            Mat block(rows, cols);
            const auto& mat = mor.at("matrix");
            if (mat.size() != rows) throw ParseError("matrix row count mismatch");
            for (size_t i = 0; i < rows; ++i) {
                if (mat[i].size() != cols) throw ParseError("matrix column count mismatch");
                for (size_t k = 0; k < cols; ++k)
                    block(i, k) = parse_rat(mat[i][k].get<std::string>());
            }
            m.blocks[key] = std::move(block);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad L-module JSON: ") + e.what());
    }
    return m;
}

}  // namespace lmod

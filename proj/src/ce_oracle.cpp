#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "lmod/kostant.hpp"

namespace lmod {
namespace {

// ---------------------------------------------------------------------------
// Concrete matrix realizations of the classical algebras with the Borel upper
// triangular (antidiagonal bilinear form for types B/C/D), assembled
// block-diagonally over the factors.

struct Realization {
    int dim;                       // matrix size
    std::vector<Mat> e, f;         // Chevalley triples per simple root
    std::vector<Vec> h;            // diagonal of h_i
    std::vector<Mat> root_vec;     // parallel to rd.positive_roots
};

Mat unit(int n, int r, int c, const Rat& v = 1) {
    Mat m(n, n);
    m(r, c) = v;
    return m;
}

Mat bracket(const Mat& a, const Mat& b) { return a * b + (-(b * a)); }

// e/f/h generators for one simple factor; 0-based Bourbaki indices
void factor_generators(char fam, int n, std::vector<Mat>& e, std::vector<Mat>& f,
                       std::vector<Vec>& h, int& size) {
    auto diag = [](const Mat& m) {
        Vec d(m.rows, Rat(0));
        for (int i = 0; i < m.rows; ++i) d[i] = m(i, i);
        return d;
    };
    switch (fam) {
        case 'A': {
            size = n + 1;
            for (int i = 0; i < n; ++i) {
                e.push_back(unit(size, i, i + 1));
                f.push_back(unit(size, i + 1, i));
                h.push_back(diag(bracket(e[i], f[i])));
            }
            break;
        }
        case 'B': {
            // so(2n+1) with the antidiagonal form; Cartan diag(t1..tn,0,-tn..-t1)
            size = 2 * n + 1;
            int N = size;
            for (int i = 0; i < n - 1; ++i) {
                Mat ei = unit(N, i, i + 1) + (-unit(N, N - 2 - i, N - 1 - i));
                e.push_back(ei);
                Mat fi(N, N);
                for (int r = 0; r < N; ++r)
                    for (int c = 0; c < N; ++c) fi(r, c) = ei(c, r);
                f.push_back(fi);
                h.push_back(diag(bracket(e.back(), f.back())));
            }
            // short root alpha_n = eps_n
            Mat en = unit(N, n - 1, n) + (-unit(N, n, n + 1));
            Mat fn(N, N);
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) fn(r, c) = en(c, r) * 2;
            e.push_back(en);
            f.push_back(fn);
            h.push_back(diag(bracket(en, fn)));
            break;
        }
        case 'C': {
            // sp(2n); Cartan diag(t1..tn,-tn..-t1)
            size = 2 * n;
            int N = size;
            for (int i = 0; i < n - 1; ++i) {
                Mat ei = unit(N, i, i + 1) + (-unit(N, N - 2 - i, N - 1 - i));
                e.push_back(ei);
                Mat fi(N, N);
                for (int r = 0; r < N; ++r)
                    for (int c = 0; c < N; ++c) fi(r, c) = ei(c, r);
                f.push_back(fi);
                h.push_back(diag(bracket(e.back(), f.back())));
            }
            // long root alpha_n = 2 eps_n
            e.push_back(unit(N, n - 1, n));
            f.push_back(unit(N, n, n - 1));
            h.push_back(diag(bracket(e.back(), f.back())));
            break;
        }
        case 'D': {
            // so(2n) with the antidiagonal form
            size = 2 * n;
            int N = size;
            for (int i = 0; i < n - 1; ++i) {
                Mat ei = unit(N, i, i + 1) + (-unit(N, N - 2 - i, N - 1 - i));
                e.push_back(ei);
                Mat fi(N, N);
                for (int r = 0; r < N; ++r)
                    for (int c = 0; c < N; ++c) fi(r, c) = ei(c, r);
                f.push_back(fi);
                h.push_back(diag(bracket(e.back(), f.back())));
            }
            // alpha_n = eps_{n-1} + eps_n
            Mat en = unit(N, n - 2, n) + (-unit(N, n - 1, n + 1));
            Mat fn(N, N);
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) fn(r, c) = en(c, r);
            e.push_back(en);
            f.push_back(fn);
            h.push_back(diag(bracket(en, fn)));
            break;
        }
        default:
            throw UnsupportedCoefficients(
                std::string("CE oracle supports classical factors only, got ") + fam);
    }
}

Mat embed(const Mat& m, int total, int off) {
    Mat out(total, total);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out(off + r, off + c) = m(r, c);
    return out;
}

Realization realize(const RootDatum& rd) {
    // per-factor generators, then embed block-diagonally
    std::vector<std::vector<Mat>> fe, ff;
    std::vector<std::vector<Vec>> fh;
    std::vector<int> sizes;
    for (const auto& fac : rd.cartan.factors) {
        std::vector<Mat> e, f;
        std::vector<Vec> h;
        int sz = 0;
        factor_generators(fac.family, fac.rank, e, f, h, sz);
        fe.push_back(e);
        ff.push_back(f);
        fh.push_back(h);
        sizes.push_back(sz);
    }
    Realization rz;
    rz.dim = std::accumulate(sizes.begin(), sizes.end(), 0);
    int off = 0;
    for (size_t k = 0; k < sizes.size(); ++k) {
        for (size_t i = 0; i < fe[k].size(); ++i) {
            rz.e.push_back(embed(fe[k][i], rz.dim, off));
            rz.f.push_back(embed(ff[k][i], rz.dim, off));
            Vec hd(rz.dim, Rat(0));
            for (int t = 0; t < sizes[k]; ++t) hd[off + t] = fh[k][i][t];
            rz.h.push_back(hd);
        }
        off += sizes[k];
    }
    // sanity: [h_i, e_j] = C[j][i] e_j with h_i diagonal
    for (int i = 0; i < rd.rank(); ++i)
        for (int j = 0; j < rd.rank(); ++j)
            for (int r = 0; r < rz.dim; ++r)
                for (int c = 0; c < rz.dim; ++c)
                    if (rz.e[j](r, c) != 0 &&
                        rz.h[i][r] - rz.h[i][c] != Rat(rd.cartan_matrix[i][j]))
                        throw InternalInconsistency("realization violates the Cartan matrix");

    // positive root vectors by height: X_{alpha_i + beta} = [e_i, X_beta]
    rz.root_vec.assign(rd.positive_roots.size(), Mat(0, 0));
    std::map<std::vector<long>, int> index;
    for (size_t k = 0; k < rd.positive_roots.size(); ++k)
        index[rd.positive_roots[k]] = static_cast<int>(k);
    // positive_roots are sorted by height, so one pass suffices
    for (size_t k = 0; k < rd.positive_roots.size(); ++k) {
        const auto& m = rd.positive_roots[k];
        long ht = 0;
        for (long x : m) ht += x;
        if (ht == 1) {
            for (int i = 0; i < rd.rank(); ++i)
                if (m[i] == 1) rz.root_vec[k] = rz.e[i];
            continue;
        }
        bool done = false;
        for (int i = 0; i < rd.rank() && !done; ++i) {
            if (m[i] == 0) continue;
            auto lower = m;
            lower[i] -= 1;
            auto it = index.find(lower);
            if (it == index.end()) continue;
            Mat x = bracket(rz.e[i], rz.root_vec[it->second]);
            if (x.is_zero())
                throw InternalInconsistency("vanishing bracket for a root string");
            rz.root_vec[k] = x;
            done = true;
        }
        if (!done) throw InternalInconsistency("no simple lowering for a positive root");
    }
    return rz;
}

// express [X_a, X_b] = c * X_target (one-dimensional root space)
Rat bracket_coeff(const Mat& prod, const Mat& target) {
    for (int r = 0; r < target.rows; ++r)
        for (int c = 0; c < target.cols; ++c)
            if (target(r, c) != 0) {
                Rat coef = prod(r, c) / target(r, c);
                Mat check(target.rows, target.cols);
                for (int rr = 0; rr < target.rows; ++rr)
                    for (int cc = 0; cc < target.cols; ++cc)
                        check(rr, cc) = prod(rr, cc) - coef * target(rr, cc);
                if (!check.is_zero())
                    throw InternalInconsistency("bracket not proportional to root vector");
                return coef;
            }
    throw InternalInconsistency("zero root vector");
}

// ---------------------------------------------------------------------------
// A module V_lambda for a single type-A factor, realized inside tensor powers
// of the standard representation.  Basis vectors are exact weight vectors.

struct TensorModule {
    int letter_dim;   // n+1
    int power;        // N
    std::vector<Vec> basis;         // coordinates in (n+1)^N
    std::vector<Weight> weights;    // full-torus weights (fw coords)
    // action of E_{rc} (letter matrix) on a coordinate vector
};

Vec apply_letter(int letter_dim, int power, const Mat& letter, const Vec& v) {
    // sum over tensor slots
    long total = 1;
    for (int t = 0; t < power; ++t) total *= letter_dim;
    Vec out(total, Rat(0));
    for (long idx = 0; idx < total; ++idx) {
        if (v[idx] == 0) continue;
        long stride = 1;
        for (int slot = power - 1; slot >= 0; --slot) {
            int cur = static_cast<int>((idx / stride) % letter_dim);
            for (int r = 0; r < letter_dim; ++r) {
                if (letter(r, cur) == 0) continue;
                long jdx = idx + (r - cur) * stride;
                out[jdx] += letter(r, cur) * v[idx];
            }
            stride *= letter_dim;
        }
    }
    return out;
}

// express x in terms of basis (throws if not in span)
Vec coords_in_basis(const std::vector<Vec>& basis, const Vec& x) {
    int m = static_cast<int>(basis.size());
    int dim = static_cast<int>(x.size());
    Mat bt(dim, m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < dim; ++r) bt(r, c) = basis[c][r];
    return solve(bt, x);
}

TensorModule build_type_a_module(const RootDatum& rd, Parabolic Q, const Weight& lambda,
                                 const Realization& rz) {
    int n = rd.rank();
    int d = n + 1;
    // eps coefficients: c_a - c_{a+1} = <lambda, h_a>, shifted so min = 0
    std::vector<Rat> c(d, Rat(0));
    for (int a = d - 2; a >= 0; --a) c[a] = c[a + 1] + lambda.fw[a];
    Rat mn = *std::min_element(c.begin(), c.end());
    long power = 0;
    for (auto& x : c) {
        x -= mn;
        if (denominator(x) != 1)
            throw UnsupportedCoefficients("non-integral highest weight");
        power += static_cast<long>(numerator(x));
    }
    long total = 1;
    for (long t = 0; t < power; ++t) {
        total *= d;
        if (total > 600000) throw ComplexTooLarge("tensor power too large");
    }

    // fw weight of the standard basis letter a: <eps_a, h_i> = d_{a,i} - d_{a,i+1}
    auto letter_weight = [&](int a) {
        Weight w = rd.zero_weight();
        if (a < n) w.fw[a] += 1;
        if (a > 0) w.fw[a - 1] -= 1;
        return w;
    };
    auto tuple_weight = [&](long idx) {
        Weight w = rd.zero_weight();
        for (int slot = 0; slot < power; ++slot) {
            int a = static_cast<int>(idx % d);
            idx /= d;
            Weight lw = letter_weight(a);
            for (int i = 0; i < n; ++i) w.fw[i] += lw.fw[i];
        }
        return w;
    };

    // highest-weight vectors: weight-lambda subspace killed by e_i, i in I_Q
    Weight lam_ss = lambda;
    lam_ss.central.assign(lam_ss.central.size(), Rat(0));
    std::vector<long> wt_idx;
    for (long idx = 0; idx < total; ++idx) {
        Weight w = tuple_weight(idx);
        if (w.fw == lam_ss.fw) wt_idx.push_back(idx);
    }
    if (wt_idx.empty()) throw InternalInconsistency("empty highest-weight space");
    std::vector<int> gens;
    for (int i = 0; i < n; ++i)
        if ((Q.levi >> i) & 1) gens.push_back(i);
    // rows: for each generator and each tuple index, the e_i image restricted
    // to coordinates; columns index the weight-lambda tuples
    std::vector<Vec> images;
    for (size_t col = 0; col < wt_idx.size(); ++col) {
        Vec unitv(total, Rat(0));
        unitv[wt_idx[col]] = 1;
        Vec img(gens.size() * total, Rat(0));
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            Vec iv = apply_letter(d, static_cast<int>(power), rz.e[gens[gi]], unitv);
            for (long t = 0; t < total; ++t) img[gi * total + t] = iv[t];
        }
        images.push_back(img);
    }
    Mat sys(static_cast<int>(images.empty() ? 0 : images[0].size()),
            static_cast<int>(images.size()));
    for (int ccol = 0; ccol < sys.cols; ++ccol)
        for (int r = 0; r < sys.rows; ++r) sys(r, ccol) = images[ccol][r];
    auto null = null_space(sys);
    if (null.empty()) throw InternalInconsistency("no highest-weight vector found");
    Vec v0(total, Rat(0));
    for (size_t colv = 0; colv < wt_idx.size(); ++colv) v0[wt_idx[colv]] += null[0][colv];

    TensorModule tm;
    tm.letter_dim = d;
    tm.power = static_cast<int>(power);
    tm.basis.push_back(v0);
    tm.weights.push_back(lam_ss);
    // close under f_i, i in I_Q, maintaining linear independence
    for (size_t cur = 0; cur < tm.basis.size(); ++cur) {
        for (int i : gens) {
            Vec img = apply_letter(d, tm.power, rz.f[i], tm.basis[cur]);
            if (is_zero(img)) continue;
            // independent of current basis?
            Mat bt(total > 0 ? static_cast<int>(total) : 0,
                   static_cast<int>(tm.basis.size()) + 1);
            for (size_t colb = 0; colb < tm.basis.size(); ++colb)
                for (long r = 0; r < total; ++r)
                    bt(static_cast<int>(r), static_cast<int>(colb)) = tm.basis[colb][r];
            for (long r = 0; r < total; ++r)
                bt(static_cast<int>(r), static_cast<int>(tm.basis.size())) = img[r];
            if (rank(bt) == static_cast<long>(tm.basis.size()) + 1) {
                tm.basis.push_back(img);
                Weight w = tm.weights[cur];
                for (int kk = 0; kk < n; ++kk) w.fw[kk] -= Rat(rd.cartan_matrix[kk][i]);
                tm.weights.push_back(w);
            }
            if (tm.basis.size() > 4000) throw ComplexTooLarge("module dimension too large");
        }
    }
    return tm;
}

int popcount(uint32_t x) {
    int c = 0;
    while (x) {
        c += x & 1;
        x >>= 1;
    }
    return c;
}

// sign of sorting a list of distinct indices; 0 if a repeat occurs
int sort_sign(std::vector<int>& v) {
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) sign = -sign;
        }
    std::sort(v.begin(), v.end());
    return sign;
}

}  // namespace

std::map<int, std::map<Weight, Int>> ce_oracle(const RootDatum& rd, Parabolic P,
                                               Parabolic Q, const Weight& lambda,
                                               int max_dim_n) {
    if (P.levi & ~Q.levi) throw NotComparable("ce_oracle requires P <= Q");
    if (!rd.is_dominant_for(lambda, Q.levi))
        throw NotDominant("ce_oracle: lambda not I_Q-dominant");
    bool trivial = true;
    for (const auto& x : lambda.fw)
        if (x != 0) trivial = false;
    if (!trivial && (rd.cartan.factors.size() != 1 || rd.cartan.factors[0].family != 'A'))
        throw UnsupportedCoefficients(
            "nontrivial coefficients require a single type-A factor");

    Realization rz = realize(rd);

    // basis of n_P^Q: positive roots of I_Q not in I_P
    std::vector<int> nroots;
    {
        auto q_pos = positive_roots_of_levi(rd, Q.levi);
        auto p_pos = positive_roots_of_levi(rd, P.levi);
        std::vector<bool> in_p(rd.positive_roots.size(), false);
        for (int i : p_pos) in_p[i] = true;
        for (int i : q_pos)
            if (!in_p[i]) nroots.push_back(i);
    }
    int m = static_cast<int>(nroots.size());
    if (m > max_dim_n) throw ComplexTooLarge("dim n_P^Q exceeds the oracle guard");

    // structure constants c[a][b] -> list over n-basis: [X_a, X_b] = sum c X_c
    std::map<std::vector<long>, int> pos_index;
    for (int a = 0; a < m; ++a) pos_index[rd.positive_roots[nroots[a]]] = a;
    std::vector<std::vector<std::pair<int, Rat>>> struc(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            std::vector<long> sum = rd.positive_roots[nroots[a]];
            for (int t = 0; t < rd.rank(); ++t) sum[t] += rd.positive_roots[nroots[b]][t];
            Mat prod = bracket(rz.root_vec[nroots[a]], rz.root_vec[nroots[b]]);
            auto it = pos_index.find(sum);
            if (it == pos_index.end()) {
                if (!prod.is_zero())
                    throw InternalInconsistency("bracket leaves n_P^Q");
                continue;
            }
            if (prod.is_zero()) continue;
            Rat coef = bracket_coeff(prod, rz.root_vec[nroots[it->second]]);
            struc[a * m + b].push_back({it->second, coef});
        }

    // module data
    TensorModule tm;
    std::vector<Mat> nv_action;  // action of X_a on the module basis (coords in basis)
    int dimV = 1;
    if (!trivial) {
        tm = build_type_a_module(rd, Q, lambda, rz);
        dimV = static_cast<int>(tm.basis.size());
        for (int a = 0; a < m; ++a) {
            Mat act(dimV, dimV);
            for (int col = 0; col < dimV; ++col) {
                Vec img = apply_letter(tm.letter_dim, tm.power, rz.root_vec[nroots[a]],
                                       tm.basis[col]);
                if (is_zero(img)) continue;
                Vec cc = coords_in_basis(tm.basis, img);
                for (int r = 0; r < dimV; ++r) act(r, col) = cc[r];
            }
            nv_action.push_back(act);
        }
    }

    // CE basis element: (mask over n-basis, v index); weight = weight(v) - sum
    // of the roots in the mask
    auto elem_weight = [&](uint32_t mask, int vidx) {
        Weight w = trivial ? rd.zero_weight() : tm.weights[vidx];
        for (int a = 0; a < m; ++a)
            if ((mask >> a) & 1) {
                Weight r = rd.root_as_weight(rd.positive_roots[nroots[a]]);
                for (int t = 0; t < rd.rank(); ++t) w.fw[t] -= r.fw[t];
            }
        w.central = lambda.central;
        return w;
    };

    struct Key {
        int deg;
        Weight w;
        bool operator<(const Key& o) const { return std::tie(deg, w) < std::tie(o.deg, o.w); }
    };
    std::map<Key, std::vector<std::pair<uint32_t, int>>> blocks;
    std::map<std::pair<uint32_t, int>, int> pos_in_block;
    for (uint32_t mask = 0; mask < (1u << m); ++mask)
        for (int v = 0; v < dimV; ++v) {
            Key k{popcount(mask), elem_weight(mask, v)};
            pos_in_block[{mask, v}] = static_cast<int>(blocks[k].size());
            blocks[k].push_back({mask, v});
        }

    // differential of a basis element as a sparse vector
    auto diff = [&](uint32_t mask, int vidx) {
        std::map<std::pair<uint32_t, int>, Rat> out;
        std::vector<int> elems;
        for (int a = 0; a < m; ++a)
            if ((mask >> a) & 1) elems.push_back(a);
        // xi^a wedge (X_a acting on V)
        if (!trivial) {
            for (int a = 0; a < m; ++a) {
                if ((mask >> a) & 1) continue;
                int below = 0;
                for (int s : elems)
                    if (s < a) ++below;
                Rat sgn = (below % 2) ? -1 : 1;
                for (int r = 0; r < dimV; ++r) {
                    Rat c = nv_action[a](r, vidx);
                    if (c != 0) out[{mask | (1u << a), r}] += sgn * c;
                }
            }
        }
        // cobracket: replace xi^{s_t} by -sum_{a<b} c^{s_t}_{ab} xi^a ^ xi^b
        for (size_t t = 0; t < elems.size(); ++t) {
            int st = elems[t];
            Rat tsgn = (t % 2) ? -1 : 1;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    // coefficient of X_{st} in [X_a, X_b]
                    Rat c = 0;
                    for (const auto& [tgt, coef] : struc[a * m + b])
                        if (tgt == st) c = coef;
                    if (c == 0) continue;
                    std::vector<int> ordered;
                    for (size_t u = 0; u < t; ++u) ordered.push_back(elems[u]);
                    ordered.push_back(a);
                    ordered.push_back(b);
                    for (size_t u = t + 1; u < elems.size(); ++u) ordered.push_back(elems[u]);
                    int sgn = sort_sign(ordered);
                    if (sgn == 0) continue;
                    uint32_t nmask = 0;
                    for (int x : ordered) nmask |= 1u << x;
                    out[{nmask, vidx}] += tsgn * Rat(-1) * c * Rat(sgn);
                }
        }
        return out;
    };

    // assemble per-(degree, weight) matrices and d^2 = 0 check
    std::map<Key, Mat> dmat;  // d: block -> next-degree block of the same weight
    for (const auto& [key, basis] : blocks) {
        Key next{key.deg + 1, key.w};
        auto itn = blocks.find(next);
        int rows = itn == blocks.end() ? 0 : static_cast<int>(itn->second.size());
        Mat d(rows, static_cast<int>(basis.size()));
        for (size_t col = 0; col < basis.size(); ++col)
            for (const auto& [tgt, c] : diff(basis[col].first, basis[col].second)) {
                if (c == 0) continue;
                if (!(elem_weight(tgt.first, tgt.second) == key.w) || rows == 0)
                    throw InternalInconsistency("differential leaves the weight block");
                d(pos_in_block.at(tgt), static_cast<int>(col)) = c;
            }
        dmat[key] = d;
    }
    for (const auto& [key, d] : dmat) {
        Key next{key.deg + 1, key.w};
        auto itn = dmat.find(next);
        if (itn == dmat.end() || itn->second.rows == 0 || d.rows == 0) continue;
        if (!(itn->second * d).is_zero())
            throw InternalInconsistency("d^2 != 0 in the CE complex");
    }

    // cohomology dims per (degree, T-weight)
    std::map<int, std::map<Weight, long>> hdims;
    for (const auto& [key, basis] : blocks) {
        long dim = static_cast<long>(basis.size());
        long rk_out = rank(dmat[key]);
        long rk_in = 0;
        Key prev{key.deg - 1, key.w};
        auto itp = dmat.find(prev);
        if (itp != dmat.end()) rk_in = rank(itp->second);
        long h = dim - rk_out - rk_in;
        if (h < 0) throw InternalInconsistency("negative cohomology dimension");
        if (h > 0) hdims[key.deg][key.w] = h;
    }

    // decompose each degree into I_P-dominant highest weights by repeatedly
    // stripping Levi characters
    Weight rho_p = rho_of_levi(rd, P.levi);
    std::map<int, std::map<Weight, Int>> out;
    for (auto& [deg, wmap] : hdims) {
        while (!wmap.empty()) {
            // a weight maximizing (nu, rho_{I_P}) is a highest weight
            auto best = wmap.begin();
            Rat best_val = rd.form_weight(best->first, rho_p);
            for (auto it = std::next(wmap.begin()); it != wmap.end(); ++it) {
                Rat v = rd.form_weight(it->first, rho_p);
                if (v > best_val) {
                    best = it;
                    best_val = v;
                }
            }
            Weight hw = best->first;
            long mult = best->second;
            if (!rd.is_dominant_for(hw, P.levi))
                throw InternalInconsistency("highest weight not I_P-dominant");
            out[deg][hw] += mult;
            for (const auto& [w, mm] : dominant_character(rd, P.levi, hw)) {
                Weight key = w;
                key.central = lambda.central;
                auto it = wmap.find(key);
                long sub = static_cast<long>(mm) * mult;
                if (it == wmap.end() || it->second < sub)
                    throw InternalInconsistency("Levi character does not fit");
                it->second -= sub;
                if (it->second == 0) wmap.erase(it);
            }
        }
    }
    return out;
}

}  // namespace lmod

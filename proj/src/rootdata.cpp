#include "lmod/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lmod {

// ---------------------------------------------------------------------------
// CartanType

static const std::map<char, std::pair<int, int>> kRankRange = {
    {'A', {1, 64}}, {'B', {2, 64}}, {'C', {2, 64}}, {'D', {3, 64}},
    {'E', {6, 8}},  {'F', {4, 4}},  {'G', {2, 2}},
};

void CartanType::validate() const {
    for (const auto& f : factors) {
        auto it = kRankRange.find(f.family);
        if (it == kRankRange.end())
            throw InvalidCartanType(std::string("unknown family '") + f.family + "'");
        if (f.rank < it->second.first || f.rank > it->second.second)
            throw InvalidCartanType(std::string("bad rank for family ") + f.family + ": " +
                                    std::to_string(f.rank));
    }
    if (central_torus_rank < 0) throw InvalidCartanType("negative central torus rank");
}

CartanType CartanType::parse(const std::string& s) {
    CartanType ct;
    std::string body = s;
    auto plus = s.find('+');
    if (plus != std::string::npos) {
        std::string tail = s.substr(plus + 1);
        if (tail.size() < 2 || tail[0] != 't')
            throw InvalidCartanType("expected '+t<k>' suffix in '" + s + "'");
        ct.central_torus_rank = std::stoi(tail.substr(1));
        body = s.substr(0, plus);
    }
    if (!body.empty() && body[0] == 't') {
        // pure torus, e.g. "t2"
        ct.central_torus_rank += std::stoi(body.substr(1));
        ct.validate();
        return ct;
    }
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        if (tok.size() < 2 || !std::isalpha(static_cast<unsigned char>(tok[0])))
            throw InvalidCartanType("bad factor '" + tok + "' in '" + s + "'");
        CartanFactor f;
        f.family = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        try {
            f.rank = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw InvalidCartanType("bad rank in factor '" + tok + "'");
        }
        ct.factors.push_back(f);
    }
    ct.validate();
    return ct;
}

std::string CartanType::str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += 'x';
        s += factors[i].family;
        s += std::to_string(factors[i].rank);
    }
    if (central_torus_rank > 0) {
        if (!s.empty()) s += '+';
        s += 't' + std::to_string(central_torus_rank);
    }
    if (s.empty()) s = "t0";
    return s;
}

int CartanType::semisimple_rank() const {
    int n = 0;
    for (const auto& f : factors) n += f.rank;
    return n;
}

// ---------------------------------------------------------------------------
// Cartan matrices (Bourbaki numbering within each factor)

static std::vector<std::vector<long>> factor_cartan(char fam, int n) {
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    auto chain = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    switch (fam) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
            break;
        case 'B':
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
            if (n >= 2) {
                c[n - 1][n - 2] = -2;
                c[n - 2][n - 1] = -1;
            }
            break;
        case 'C':
            // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
            for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
            if (n >= 2) {
                c[n - 1][n - 2] = -1;
                c[n - 2][n - 1] = -2;
            }
            break;
        case 'D':
            for (int i = 0; i + 3 < n; ++i) chain(i, i + 1);
            chain(n - 3, n - 2);
            chain(n - 3, n - 1);
            break;
        case 'E':
            // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4
            chain(0, 2);
            chain(2, 3);
            chain(1, 3);
            for (int i = 3; i + 1 < n; ++i) chain(i, i + 1);
            break;
        case 'F':
            // 1-2=>3-4, alpha_3/alpha_4 short: <alpha_2, alpha_3^vee> = -2
            chain(0, 1);
            chain(2, 3);
            c[2][1] = -2;
            c[1][2] = -1;
            break;
        case 'G':
            // alpha_1 short: <alpha_2, alpha_1^vee> = -3
            c[0][1] = -3;
            c[1][0] = -1;
            break;
        default:
            throw InvalidCartanType(std::string("family ") + fam);
    }
    return c;
}

// ---------------------------------------------------------------------------
// build_root_datum

Weight RootDatum::fundamental_weight(int i) const {
    Weight w = zero_weight();
    w.fw[i] = 1;
    return w;
}

Weight RootDatum::root_as_weight(const std::vector<long>& m) const {
    Weight w = zero_weight();
    for (int i = 0; i < rank(); ++i) {
        Rat s = 0;
        for (int j = 0; j < rank(); ++j) s += Rat(cartan_matrix[i][j]) * Rat(m[j]);
        w.fw[i] = s;
    }
    return w;
}

Rat RootDatum::form_coweight(const Vec& x, const Vec& y) const {
    int n = rank(), c = central_rank();
    if (static_cast<int>(x.size()) != n + c || static_cast<int>(y.size()) != n + c)
        throw RankMismatch("form_coweight: bad length");
    Rat s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cartan_matrix[i][j] != 0) s += x[i] * y[j] * Rat(cartan_matrix[i][j]) / sym[j];
    for (int k = 0; k < c; ++k) s += x[n + k] * y[n + k];
    return s;
}

Rat RootDatum::form_weight(const Weight& x, const Weight& y) const {
    // root coordinates of y: solve C m = y.fw
    int n = rank();
    Mat c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = Rat(cartan_matrix[i][j]);
    Vec m = solve(c, y.fw);
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += x.fw[j] * sym[j] * m[j];
    for (size_t k = 0; k < x.central.size(); ++k) s += x.central[k] * y.central[k];
    return s;
}

bool RootDatum::is_dominant(const Weight& w) const {
    for (const auto& x : w.fw)
        if (x < 0) return false;
    return true;
}

bool RootDatum::is_dominant_for(const Weight& w, uint32_t levi_mask) const {
    for (int i = 0; i < rank(); ++i)
        if ((levi_mask >> i) & 1 && w.fw[i] < 0) return false;
    return true;
}

Weight RootDatum::reflect(int i, const Weight& w) const {
    Weight r = w;
    Rat c = w.fw[i];
    if (c == 0) return r;
    for (int k = 0; k < rank(); ++k) r.fw[k] -= c * Rat(cartan_matrix[k][i]);
    return r;
}

Vec RootDatum::reflect_coweight(int i, const Vec& x) const {
    Vec r = x;
    Rat c = 0;
    for (int j = 0; j < rank(); ++j) c += Rat(cartan_matrix[j][i]) * x[j];
    r[i] -= c;
    return r;
}

RootDatum build_root_datum(const CartanType& ct) {
    ct.validate();
    RootDatum rd;
    rd.cartan = ct;
    int n = ct.semisimple_rank();
    rd.cartan_matrix.assign(n, std::vector<long>(n, 0));
    int off = 0;
    for (const auto& f : ct.factors) {
        auto fc = factor_cartan(f.family, f.rank);
        for (int i = 0; i < f.rank; ++i)
            for (int j = 0; j < f.rank; ++j) rd.cartan_matrix[off + i][off + j] = fc[i][j];
        off += f.rank;
    }

    // symmetrizers: sym[i] * C[i][j] symmetric; propagate along the diagram,
    // then scale each factor so B(alpha_i^vee, alpha_i^vee) = 2/sym[i] equals 2
    // for short coroots (sym = 1 on long roots)
    rd.sym.assign(n, Rat(0));
    off = 0;
    for (const auto& f : ct.factors) {
        std::vector<Rat> d(f.rank, Rat(0));
        d[0] = 1;
        std::deque<int> work{0};
        while (!work.empty()) {
            int i = work.front();
            work.pop_front();
            for (int j = 0; j < f.rank; ++j) {
                int gi = off + i, gj = off + j;
                if (i == j || rd.cartan_matrix[gi][gj] == 0 || d[j] != 0) continue;
                d[j] = d[i] * Rat(rd.cartan_matrix[gi][gj]) / Rat(rd.cartan_matrix[gj][gi]);
                work.push_back(j);
            }
        }
        Rat mx = d[0];
        for (const auto& x : d) mx = std::max(mx, x);
        for (int i = 0; i < f.rank; ++i) rd.sym[off + i] = d[i] / mx;
        off += f.rank;
    }

    // simple roots and coroots
    for (int i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        rd.simple_roots.push_back(rd.root_as_weight(e));
        Coweight cv;
        cv.co.assign(n, Rat(0));
        cv.co[i] = 1;
        cv.central.assign(ct.central_torus_rank, Rat(0));
        rd.simple_coroots.push_back(cv);
    }

    // positive roots: close the simple (root, coroot) pairs under the simple
    // reflections; keep the positive half
    std::set<std::vector<long>> seen;
    std::deque<std::pair<std::vector<long>, std::vector<long>>> work;
    for (int i = 0; i < n; ++i) {
        std::vector<long> r(n, 0), cv(n, 0);
        r[i] = 1;
        cv[i] = 1;
        work.emplace_back(r, cv);
        seen.insert(r);
    }
    std::vector<std::pair<std::vector<long>, std::vector<long>>> all;
    while (!work.empty()) {
        auto [r, cv] = work.front();
        work.pop_front();
        all.emplace_back(r, cv);
        for (int i = 0; i < n; ++i) {
            std::vector<long> r2 = r, cv2 = cv;
            long pr = 0, pc = 0;
            for (int j = 0; j < n; ++j) {
                pr += rd.cartan_matrix[i][j] * r[j];
                pc += rd.cartan_matrix[j][i] * cv[j];
            }
            r2[i] -= pr;
            cv2[i] -= pc;
            if (!seen.count(r2)) {
                seen.insert(r2);
                work.emplace_back(r2, cv2);
            }
        }
    }
    for (auto& [r, cv] : all) {
        bool pos = true;
        for (long x : r)
            if (x < 0) pos = false;
        if (pos) {
            rd.positive_roots.push_back(r);
            rd.positive_coroots.push_back(cv);
        }
    }
    // deterministic order: by height, then lex
    std::vector<size_t> idx(rd.positive_roots.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto height = [&](size_t k) {
        long h = 0;
        for (long x : rd.positive_roots[k]) h += x;
        return h;
    };
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        long ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return rd.positive_roots[a] < rd.positive_roots[b];
    });
    std::vector<std::vector<long>> pr2, pc2;
    for (size_t k : idx) {
        pr2.push_back(rd.positive_roots[k]);
        pc2.push_back(rd.positive_coroots[k]);
    }
    rd.positive_roots = pr2;
    rd.positive_coroots = pc2;

    rd.rho = rd.zero_weight();
    for (int i = 0; i < n; ++i) rd.rho.fw[i] = 1;
    return rd;
}

// ---------------------------------------------------------------------------
// pairings

Rat pairing(const Weight& lambda, const Coweight& cv) {
    if (lambda.fw.size() != cv.co.size() || lambda.central.size() != cv.central.size())
        throw RankMismatch("pairing: rank mismatch");
    Rat s = dot(lambda.fw, cv.co);
    for (size_t k = 0; k < lambda.central.size(); ++k) s += lambda.central[k] * cv.central[k];
    return s;
}

Rat pairing(const RootDatum& rd, const Weight& lambda, const Vec& cov) {
    int n = rd.rank(), c = rd.central_rank();
    if (static_cast<int>(cov.size()) != n + c) throw RankMismatch("pairing: bad coweight length");
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += lambda.fw[i] * cov[i];
    for (int k = 0; k < c; ++k) s += lambda.central[k] * cov[n + k];
    return s;
}

// ---------------------------------------------------------------------------
// Weyl group

Weight weyl_apply(const RootDatum& rd, const WeylElement& w, const Weight& lam) {
    Weight r = lam;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) r = rd.reflect(*it, r);
    return r;
}

Vec weyl_apply_coweight(const RootDatum& rd, const WeylElement& w, const Vec& cov) {
    Vec r = cov;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) r = rd.reflect_coweight(*it, r);
    return r;
}

Weight dot_action(const RootDatum& rd, const WeylElement& w, const Weight& lam) {
    Weight shifted = lam;
    for (int i = 0; i < rd.rank(); ++i) shifted.fw[i] += 1;
    Weight img = weyl_apply(rd, w, shifted);
    for (int i = 0; i < rd.rank(); ++i) img.fw[i] -= 1;
    return img;
}

WeylElement weyl_identity(const RootDatum& rd) {
    WeylElement e;
    int n = rd.rank();
    e.mat.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) e.mat[i][i] = 1;
    return e;
}

// s_i acting on a root in simple-root coordinates (column vector)
static std::vector<long> reflect_root_coords(const RootDatum& rd, int i,
                                             const std::vector<long>& m) {
    std::vector<long> r = m;
    long p = 0;
    for (int j = 0; j < rd.rank(); ++j) p += rd.cartan_matrix[i][j] * m[j];
    r[i] -= p;
    return r;
}

static std::vector<std::vector<long>> left_mul_simple(const RootDatum& rd, int i,
                                                      const std::vector<std::vector<long>>& mat) {
    int n = rd.rank();
    std::vector<std::vector<long>> out(n);
    // columns of mat are images of the simple roots; stored row-major as
    // mat[row][col], so build column vectors
    for (int col = 0; col < n; ++col) {
        std::vector<long> v(n);
        for (int row = 0; row < n; ++row) v[row] = mat[row][col];
        v = reflect_root_coords(rd, i, v);
        out[col] = v;  // temporarily hold columns
    }
    std::vector<std::vector<long>> res(n, std::vector<long>(n));
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row) res[row][col] = out[col][row];
    return res;
}

std::vector<WeylElement> weyl_enumerate_levi(const RootDatum& rd, uint32_t levi_mask,
                                             long max_size) {
    std::vector<int> gens;
    for (int i = 0; i < rd.rank(); ++i)
        if ((levi_mask >> i) & 1) gens.push_back(i);
    std::vector<WeylElement> out;
    std::map<std::vector<std::vector<long>>, int> seen;
    WeylElement e = weyl_identity(rd);
    out.push_back(e);
    seen[e.mat] = 0;
    std::deque<int> work{0};
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        for (int i : gens) {
            WeylElement w;
            w.mat = left_mul_simple(rd, i, out[cur].mat);
            if (seen.count(w.mat)) continue;
            w.word = out[cur].word;
            w.word.insert(w.word.begin(), i);
            if (static_cast<long>(out.size()) >= max_size)
                throw GroupTooLarge("Weyl group exceeds max_size=" + std::to_string(max_size));
            seen[w.mat] = static_cast<int>(out.size());
            out.push_back(w);
            work.push_back(static_cast<int>(out.size()) - 1);
        }
    }
    return out;
}

std::vector<WeylElement> weyl_enumerate(const RootDatum& rd, long max_size) {
    uint32_t full = rd.rank() >= 32 ? 0xffffffffu : ((1u << rd.rank()) - 1);
    return weyl_enumerate_levi(rd, full, max_size);
}

int weyl_length_in(const RootDatum& rd, const WeylElement& w, uint32_t within_mask) {
    int count = 0;
    int n = rd.rank();
    for (size_t k = 0; k < rd.positive_roots.size(); ++k) {
        const auto& m = rd.positive_roots[k];
        bool in_levi = true;
        for (int j = 0; j < n; ++j)
            if (m[j] != 0 && !((within_mask >> j) & 1)) in_levi = false;
        if (!in_levi) continue;
        bool neg = false;
        for (int row = 0; row < n; ++row) {
            long v = 0;
            for (int col = 0; col < n; ++col) v += w.mat[row][col] * m[col];
            if (v < 0) {
                neg = true;
                break;
            }
        }
        if (neg) ++count;
    }
    return count;
}

WeylElement weyl_mul(const RootDatum& rd, const WeylElement& a, const WeylElement& b) {
    WeylElement w;
    int n = rd.rank();
    w.mat.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) w.mat[i][j] += a.mat[i][k] * b.mat[k][j];
    // note: concatenated word is a valid expression for a*b but need not be
    // reduced; use weyl_length_in for lengths of products
    w.word = a.word;
    w.word.insert(w.word.end(), b.word.begin(), b.word.end());
    return w;
}

WeylElement weyl_inverse(const RootDatum& rd, const WeylElement& w) {
    WeylElement inv = weyl_identity(rd);
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
        WeylElement s = weyl_identity(rd);
        s.word = {*it};
        s.mat = left_mul_simple(rd, *it, s.mat);
        inv = weyl_mul(rd, inv, s);
    }
    // word of the inverse is the reversed word, which is reduced iff the
    // original was
    inv.word.assign(w.word.rbegin(), w.word.rend());
    return inv;
}

WeylElement longest_element(const RootDatum& rd, uint32_t levi_mask) {
    auto els = weyl_enumerate_levi(rd, levi_mask);
    const WeylElement* best = &els[0];
    int best_len = -1;
    for (const auto& w : els) {
        int l = weyl_length_in(rd, w, levi_mask);
        if (l > best_len) {
            best_len = l;
            best = &w;
        }
    }
    return *best;
}

// ---------------------------------------------------------------------------
// Dimension formula & characters

std::vector<int> positive_roots_of_levi(const RootDatum& rd, uint32_t levi_mask) {
    std::vector<int> out;
    for (size_t k = 0; k < rd.positive_roots.size(); ++k) {
        bool in = true;
        for (int j = 0; j < rd.rank(); ++j)
            if (rd.positive_roots[k][j] != 0 && !((levi_mask >> j) & 1)) in = false;
        if (in) out.push_back(static_cast<int>(k));
    }
    return out;
}

Weight rho_of_levi(const RootDatum& rd, uint32_t levi_mask) {
    Weight r = rd.zero_weight();
    for (int k : positive_roots_of_levi(rd, levi_mask)) {
        Weight b = rd.root_as_weight(rd.positive_roots[k]);
        for (int i = 0; i < rd.rank(); ++i) r.fw[i] += b.fw[i] / 2;
    }
    return r;
}

// (lambda, beta) for beta a root given in simple coordinates
static Rat form_weight_root(const RootDatum& rd, const Weight& lam, const std::vector<long>& m) {
    Rat s = 0;
    for (int j = 0; j < rd.rank(); ++j)
        if (m[j] != 0) s += lam.fw[j] * rd.sym[j] * Rat(m[j]);
    return s;
}

Int weyl_dim_levi(const RootDatum& rd, uint32_t levi_mask, const Weight& lambda) {
    if (!rd.is_dominant_for(lambda, levi_mask))
        throw NotDominant("weyl_dim: weight not dominant for the Levi");
    Rat num = 1, den = 1;
    for (int k : positive_roots_of_levi(rd, levi_mask)) {
        const auto& m = rd.positive_roots[k];
        Rat lr = form_weight_root(rd, lambda, m);
        Rat rr = form_weight_root(rd, rd.rho, m);
        num *= lr + rr;
        den *= rr;
    }
    Rat d = num / den;
    if (denominator(d) != 1)
        throw InternalInconsistency("weyl_dim: non-integral result");
    return numerator(d);
}

Int weyl_dim(const RootDatum& rd, const Weight& lambda) {
    uint32_t full = rd.rank() >= 32 ? 0xffffffffu : ((1u << rd.rank()) - 1);
    return weyl_dim_levi(rd, full, lambda);
}

std::map<Weight, Int> dominant_character(const RootDatum& rd, uint32_t levi_mask,
                                         const Weight& mu) {
    if (!rd.is_dominant_for(mu, levi_mask))
        throw NotDominant("dominant_character: not dominant for the Levi");
    Weight rho_l = rho_of_levi(rd, levi_mask);
    auto add = [&](const Weight& a, const Weight& b) {
        Weight r = a;
        for (int i = 0; i < rd.rank(); ++i) r.fw[i] += b.fw[i];
        for (size_t i = 0; i < r.central.size(); ++i) r.central[i] += b.central[i];
        return r;
    };
    Weight top = add(mu, rho_l);
    Rat top_norm = rd.form_weight(top, top);

    std::vector<int> simple_idx;
    for (int i = 0; i < rd.rank(); ++i)
        if ((levi_mask >> i) & 1) simple_idx.push_back(i);
    auto levi_pos = positive_roots_of_levi(rd, levi_mask);

    // candidate weights mu - sum n_i alpha_i with |nu + rho_l|^2 <= |mu + rho_l|^2,
    // generated level by level (level = sum n_i)
    std::map<Weight, Int> mult;
    std::vector<std::vector<Weight>> levels{{mu}};
    std::set<Weight> cand{mu};
    auto dominant_rep = [&](Weight v) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int i : simple_idx)
                if (v.fw[i] < 0) {
                    v = rd.reflect(i, v);
                    moved = true;
                }
        }
        return v;
    };

    while (!levels.back().empty()) {
        std::vector<Weight> next;
        for (const auto& v : levels.back()) {
            // Freudenthal for v (skip the top weight)
            if (!(v == mu)) {
                Weight vr = add(v, rho_l);
                Rat den = top_norm - rd.form_weight(vr, vr);
                if (den == 0) {
                    mult[v] = (dominant_rep(v) == mu) ? 1 : 0;
                } else {
                    Rat num = 0;
                    for (int k : levi_pos) {
                        Weight beta = rd.root_as_weight(rd.positive_roots[k]);
                        Weight up = v;
                        while (true) {
                            up = add(up, beta);
                            // the norm bound is convex along the root string, so
                            // once it fails we can stop climbing
                            Weight ur = add(up, rho_l);
                            if (rd.form_weight(ur, ur) > top_norm) break;
                            auto it = mult.find(up);
                            if (it == mult.end() || it->second == 0) continue;
                            num += 2 * Rat(it->second) * form_weight_root(rd, up,
                                                                          rd.positive_roots[k]);
                        }
                    }
                    Rat m = num / den;
                    if (denominator(m) != 1)
                        throw InternalInconsistency("Freudenthal: non-integral multiplicity");
                    mult[v] = numerator(m);
                }
            } else {
                mult[mu] = 1;
            }
            // expand downward
            for (int i : simple_idx) {
                Weight w = v;
                for (int k = 0; k < rd.rank(); ++k)
                    w.fw[k] -= Rat(rd.cartan_matrix[k][i]);
                if (cand.count(w)) continue;
                Weight wr = add(w, rho_l);
                if (rd.form_weight(wr, wr) <= top_norm) {
                    cand.insert(w);
                    next.push_back(w);
                }
            }
        }
        levels.push_back(next);
    }
    // drop zero entries
    for (auto it = mult.begin(); it != mult.end();)
        it = (it->second == 0) ? mult.erase(it) : std::next(it);
    return mult;
}

// ---------------------------------------------------------------------------
// serialization

std::string weight_str(const Weight& w) {
    std::string s = "[";
    bool first = true;
    for (const auto& x : w.fw) {
        if (!first) s += ",";
        s += rat_str(x);
        first = false;
    }
    for (const auto& x : w.central) {
        if (!first) s += ",";
        s += rat_str(x);
        first = false;
    }
    return s + "]";
}

Weight parse_weight(const RootDatum& rd, const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
    std::vector<Rat> vals;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) vals.push_back(parse_rat(tok));
    if (static_cast<int>(vals.size()) != rd.ambient_dim())
        throw RankMismatch("weight has " + std::to_string(vals.size()) + " coordinates, expected " +
                           std::to_string(rd.ambient_dim()));
    Weight w = rd.zero_weight();
    for (int i = 0; i < rd.rank(); ++i) w.fw[i] = vals[i];
    for (int k = 0; k < rd.central_rank(); ++k) w.central[k] = vals[rd.rank() + k];
    return w;
}

}  // namespace lmod

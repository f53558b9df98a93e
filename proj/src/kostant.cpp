#include "lmod/kostant.hpp"

#include <algorithm>

namespace lmod {

int dim_nPQ(const RootDatum& rd, Parabolic P, Parabolic Q) {
    if (P.levi & ~Q.levi) throw NotComparable("dim_nPQ requires P <= Q");
    return static_cast<int>(positive_roots_of_levi(rd, Q.levi).size() -
                            positive_roots_of_levi(rd, P.levi).size());
}

std::vector<WeylElement> coset_reps(const RootDatum& rd, Parabolic P, Parabolic Q,
                                    long max_size) {
    if (P.levi & ~Q.levi) throw NotComparable("coset_reps requires P <= Q");
    std::vector<WeylElement> out;
    for (const auto& w : weyl_enumerate_levi(rd, Q.levi, max_size)) {
        WeylElement winv = weyl_inverse(rd, w);
        bool minimal = true;
        for (int i = 0; i < rd.rank() && minimal; ++i) {
            if (!((P.levi >> i) & 1)) continue;
            // w^{-1}(alpha_i) > 0 <=> column i of winv.mat is nonnegative
            for (int r = 0; r < rd.rank(); ++r)
                if (winv.mat[r][i] < 0) {
                    minimal = false;
                    break;
                }
        }
        if (minimal) out.push_back(w);
    }
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.word < b.word;
    });
    return out;
}

KostantDecomposition kostant_cohomology(const RootDatum& rd, Parabolic P, Parabolic Q,
                                        const Weight& lambda) {
    if (!rd.is_dominant_for(lambda, Q.levi))
        throw NotDominant("kostant_cohomology: lambda not I_Q-dominant");
    KostantDecomposition kd;
    kd.P = P;
    kd.Q = Q;
    kd.lambda = lambda;
    for (const auto& w : coset_reps(rd, P, Q)) {
        KostantPiece piece;
        piece.degree = w.length();
        piece.word = w.word;
        piece.weight = dot_action(rd, w, lambda);
        if (!rd.is_dominant_for(piece.weight, P.levi))
            throw InternalInconsistency("Kostant piece not I_P-dominant");
        kd.pieces.push_back(piece);
    }
    std::sort(kd.pieces.begin(), kd.pieces.end(),
              [](const KostantPiece& a, const KostantPiece& b) {
                  return std::tie(a.degree, a.weight) < std::tie(b.degree, b.weight);
              });
    return kd;
}

std::map<std::pair<int, Weight>, Int> kostant_multiset(const KostantDecomposition& kd) {
    std::map<std::pair<int, Weight>, Int> out;
    for (const auto& p : kd.pieces) out[{p.degree, p.weight}] += 1;
    return out;
}

bool kappa_check(const RootDatum& rd, Parabolic P, Parabolic Q, Parabolic R,
                 const Weight& lambda) {
    if ((P.levi & ~Q.levi) || (Q.levi & ~R.levi))
        throw NotComparable("kappa_check requires P <= Q <= R");
    auto one_step = kostant_multiset(kostant_cohomology(rd, P, R, lambda));
    std::map<std::pair<int, Weight>, Int> two_step;
    for (const auto& outer : kostant_cohomology(rd, Q, R, lambda).pieces)
        for (const auto& inner : kostant_cohomology(rd, P, Q, outer.weight).pieces)
            two_step[{outer.degree + inner.degree, inner.weight}] += 1;
    return one_step == two_step;
}

}  // namespace lmod

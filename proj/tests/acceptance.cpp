// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmod/errors.hpp"
#include "lmod/kostant.hpp"
#include "lmod/l2.hpp"
#include "lmod/lmodule.hpp"
#include "lmod/parabolic.hpp"
#include "lmod/realform.hpp"
#include "lmod/rootdata.hpp"

using namespace lmod;

namespace {

std::string g_detail;

void detail(const std::string& s) {
    if (g_detail.empty()) g_detail = s;
}

std::vector<Weight> dominant_box(const RootDatum& rd, int max_coord) {
    std::vector<Weight> out;
    long total = 1;
    for (int i = 0; i < rd.rank(); ++i) total *= max_coord + 1;
    for (long k = 0; k < total; ++k) {
        Weight w = rd.zero_weight();
        long t = k;
        for (int i = 0; i < rd.rank(); ++i) {
            w.fw[i] = Rat(t % (max_coord + 1));
            t /= max_coord + 1;
        }
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. Kostant vs Chevalley-Eilenberg oracle

bool criterion_kostant_ce() {
    auto agree = [&](const RootDatum& rd, Parabolic p, Parabolic q, const Weight& lam) {
        auto km = kostant_multiset(kostant_cohomology(rd, p, q, lam));
        std::map<std::pair<int, Weight>, Int> cm;
        for (const auto& [deg, ws] : ce_oracle(rd, p, q, lam))
            for (const auto& [w, n] : ws) cm[{deg, w}] = n;
        if (km != cm) {
            ParabolicLattice lat(rd);
            detail("mismatch at P=" + lat.str(p) + " Q=" + lat.str(q));
            return false;
        }
        return true;
    };
    for (const std::string& type : {"A1", "A2", "A3", "B2", "C2"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        for (Parabolic p : lat.all())
            for (Parabolic q : lat.interval(p, lat.g()))
                if (!agree(rd, p, q, rd.zero_weight())) return false;
    }
    for (const std::string& type : {"A2", "A3"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        Weight w1 = rd.fundamental_weight(0);
        Weight w12 = rd.fundamental_weight(0);
        w12.fw[1] += 1;
        for (const Weight& lam : {w1, w12})
            for (Parabolic p : lat.all())
                for (Parabolic q : lat.interval(p, lat.g()))
                    if (!agree(rd, p, q, lam)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 2. Poincare counts at P0

bool criterion_poincare() {
    for (const std::string& type : {"A1", "A2", "A3", "B2", "C2"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        auto kd = kostant_cohomology(rd, lat.p0(), lat.g(), rd.zero_weight());
        auto w = weyl_enumerate(rd);
        if (kd.pieces.size() != w.size()) {
            detail(type + ": piece count != |W|");
            return false;
        }
        std::map<int, long> by_degree, by_length;
        for (const auto& piece : kd.pieces) by_degree[piece.degree]++;
        for (const auto& el : w) by_length[el.length()]++;
        if (by_degree != by_length) {
            detail(type + ": generating function mismatch");
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 3. kappa associativity on all chains

bool criterion_kappa() {
    for (const std::string& type : {"A3", "B2"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        for (const Weight& lam : dominant_box(rd, 2))
            for (Parabolic p : lat.all())
                for (Parabolic q : lat.interval(p, lat.g()))
                    for (Parabolic r : lat.interval(q, lat.g()))
                        if (!kappa_check(rd, p, q, r, lam)) {
                            detail(type + ": chain " + lat.str(p) + " <= " + lat.str(q) +
                                   " <= " + lat.str(r));
                            return false;
                        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 4. geometric lemma: one and only one admissible subset

bool criterion_geometric_lemma() {
    for (const std::string& type : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4",
                                    "D4", "G2", "F4"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        SplitBasis sb = split_basis(rd, lat.p0());
        std::mt19937 rng(20260826u + static_cast<unsigned>(type[0]) * 100 +
                         static_cast<unsigned>(type[1]));
        std::uniform_int_distribution<int> num(-12, 12);
        std::uniform_int_distribution<int> den(1, 6);
        for (int trial = 0; trial < 1000; ++trial) {
            Vec xi(rd.ambient_dim(), Rat(0));
            for (size_t i = 0; i < xi.size(); ++i) xi[i] = Rat(num(rng), den(rng));
            for (GLVariant v : {GLVariant::StrictOnComplement, GLVariant::StrictOnSubset}) {
                try {
                    Parabolic r = geometric_lemma(rd, lat.p0(), xi, v);
                    (void)r;
                } catch (const InternalInconsistency& e) {
                    detail(type + ": " + e.what());
                    return false;
                }
            }
        }
        (void)sb;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 5. two-path micro-support equality

bool criterion_two_path() {
    auto entry = split_default();
    for (const std::string& type : {"A2", "A3", "B2", "C2"}) {
        auto rd = build_root_datum(type);
        for (const Weight& lam : dominant_box(rd, 2)) {
            try {
                auto a = micro_support_l2(rd, lam, MSMode::Characterization, entry);
                auto b = micro_support_l2(rd, lam, MSMode::Definitional, entry);
                if (a.size() != b.size()) {
                    detail(type + ": size mismatch at lambda=" + weight_str(lam));
                    return false;
                }
                for (size_t i = 0; i < a.size(); ++i)
                    if (a[i].P != b[i].P || a[i].mu != b[i].mu || a[i].types != b[i].types) {
                        detail(type + ": element mismatch at lambda=" + weight_str(lam));
                        return false;
                    }
            } catch (const ModeDisagreement& e) {
                // the CLI maps this to exit code 3
                detail(type + ": " + e.what());
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 6. equal-rank micro-purity on C2

bool criterion_micropurity() {
    auto entry = split_default();
    auto rd = build_root_datum("C2");
    ParabolicLattice lat(rd);
    for (const Weight& lam : dominant_box(rd, 2)) {
        auto sigma = micro_support_l2(rd, lam, MSMode::Characterization, entry);
        if (sigma.size() != 1 || sigma[0].P != lat.g() || sigma[0].mu != lam) {
            detail("Sigma != {(G, lambda)} at lambda=" + weight_str(lam));
            return false;
        }
        for (const auto& [q, ds] : sigma[0].types)
            for (const auto& [d, c] : ds.possible)
                if (c.inf) {
                    detail("infinite type at G, lambda=" + weight_str(lam));
                    return false;
                }
    }
    // non-equal-rank counterpart: boundary micro-support only at fundamental parabolics
    for (const std::string& type : {"A2", "A3"}) {
        auto rda = build_root_datum(type);
        ParabolicLattice lata(rda);
        for (const Weight& lam : dominant_box(rda, 1))
            for (const auto& el : micro_support_l2(rda, lam, MSMode::Characterization, entry))
                if (!fundamental(entry, rda, el.P)) {
                    detail(type + ": non-fundamental " + lata.str(el.P));
                    return false;
                }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 7. lattice decomposition over A3

bool criterion_lattice_decomposition() {
    auto rd = build_root_datum("A3");
    ParabolicLattice lat(rd);
    for (Parabolic p : lat.all())
        for (const auto& piece : kostant_cohomology(rd, p, lat.g(), rd.zero_weight()).pieces)
            for (Parabolic q : lat.interval(p, lat.g()))
                if (!lattice_decomposition_check(rd, p, piece.weight, q)) {
                    detail("P=" + lat.str(p) + " mu=" + weight_str(piece.weight) +
                           " Q=" + lat.str(q));
                    return false;
                }
    return true;
}

// ---------------------------------------------------------------------------
// 8. flag/sign algebra

bool criterion_flag_signs() {
    if (!flag_sign_check(4)) {
        detail("sign identities fail");
        return false;
    }
    try {
        flag_sign_check(2, true);
        detail("mutated sign not detected");
        return false;
    } catch (const SignViolation&) {
        return true;
    }
}

// ---------------------------------------------------------------------------
// 9. SL2 end to end through the CLI

bool criterion_sl2_cli() {
#ifdef LMOD_CLI_PATH
    std::string cmd = std::string(LMOD_CLI_PATH) + " l2 --cartan A1 --lambda 0 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        detail("cannot launch CLI");
        return false;
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    if (pclose(p) != 0) {
        detail("nonzero CLI exit");
        return false;
    }
    auto j = nlohmann::json::parse(out, nullptr, false);
    if (j.is_discarded() || j["microsupport"].size() != 1 ||
        j["microsupport"][0]["P"] != "G" ||
        j["microsupport"][0]["mu"] != nlohmann::json::array({"0"}) ||
        j["bracket"] != nlohmann::json::array({0, 2})) {
        detail("unexpected CLI report");
        return false;
    }
    return true;
#else
    detail("CLI path not configured");
    return false;
#endif
}

// ---------------------------------------------------------------------------
// 10. functor exactness on random validated L-modules

bool criterion_functor_exactness() {
    auto mults = [](const IsotypicComplex& c) {
        std::map<std::pair<int, Weight>, long> m;
        for (const auto& [d, ws] : c.terms)
            for (const auto& [w, n] : ws) m[{d, w}] += n;
        return m;
    };
    auto euler = [](const IsotypicComplex& c) {
        std::map<Weight, long> chi;
        for (const auto& [d, ws] : cohomology(c))
            for (const auto& [w, n] : ws) chi[w] += (d % 2 == 0 ? n : -n);
        for (auto it = chi.begin(); it != chi.end();)
            it = it->second == 0 ? chi.erase(it) : std::next(it);
        return chi;
    };
    auto add = [](std::map<std::pair<int, Weight>, long> a,
                  const std::map<std::pair<int, Weight>, long>& b) {
        for (const auto& [k, v] : b) a[k] += v;
        return a;
    };
    auto add_chi = [](std::map<Weight, long> a, const std::map<Weight, long>& b) {
        for (const auto& [k, v] : b) a[k] += v;
        for (auto it = a.begin(); it != a.end();)
            it = it->second == 0 ? a.erase(it) : std::next(it);
        return a;
    };
    const std::vector<std::string> types = {"A1", "A1xA1", "A2", "B2", "A2xA1", "A3", "C3"};
    int done = 0;
    for (uint64_t seed = 1; done < 100; ++seed)
        for (const std::string& type : types) {
            if (done >= 100) break;
            auto rd = build_root_datum(type);
            ParabolicLattice lat(rd);
            LModule m = random_lmodule(rd, seed);
            if (!validate(rd, m).ok) {
                detail(type + " seed " + std::to_string(seed) + ": invalid module");
                return false;
            }
            for (Parabolic p : m.support) {
                auto shriek = local_functor(rd, m, p, FunctorKind::Shriek);
                auto star = local_functor(rd, m, p, FunctorKind::Star);
                auto link = local_functor(rd, m, p, FunctorKind::Link);
                if (mults(star) != add(mults(shriek), mults(link)) ||
                    euler(star) != add_chi(euler(shriek), euler(link))) {
                    detail(type + " seed " + std::to_string(seed) + ": i! -> i* -> link at " +
                           lat.str(p));
                    return false;
                }
                for (Parabolic q : m.support) {
                    if (!lat.leq(p, q)) continue;
                    auto ss = local_functor(rd, m, p, FunctorKind::StarShriek, q);
                    auto sj = local_functor(rd, m, p, FunctorKind::StarJStar, q);
                    if (mults(star) != add(mults(ss), mults(sj)) ||
                        euler(star) != add_chi(euler(ss), euler(sj))) {
                        detail(type + " seed " + std::to_string(seed) + ": support SES at " +
                               lat.str(p) + ", Q=" + lat.str(q));
                        return false;
                    }
                }
            }
            ++done;
        }
    return true;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
        {"1. Kostant cohomology matches the Chevalley-Eilenberg oracle", criterion_kostant_ce},
        {"2. Poincare counts: piece count |W|, degrees match lengths", criterion_poincare},
        {"3. kappa associativity on all parabolic chains", criterion_kappa},
        {"4. geometric lemma: unique admissible subset, both variants", criterion_geometric_lemma},
        {"5. micro-support: characterization equals definition", criterion_two_path},
        {"6. equal-rank micro-purity (C2) and fundamental boundary (A2, A3)", criterion_micropurity},
        {"7. lattice interval decomposition over A3", criterion_lattice_decomposition},
        {"8. flag sign identities, with mutation detected", criterion_flag_signs},
        {"9. SL2 end-to-end through the CLI", criterion_sl2_cli},
        {"10. functor exactness on 100 random validated L-modules", criterion_functor_exactness},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        g_detail.clear();
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            detail(e.what());
        }
        std::cout << (ok ? "PASS  " : "FAIL  ") << name;
        if (!ok && !g_detail.empty()) std::cout << "  [" << g_detail << "]";
        std::cout << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmod/errors.hpp"
#include "lmod/kostant.hpp"
#include "lmod/l2.hpp"

using namespace lmod;

namespace {

Weight w(const RootDatum& rd, std::vector<Rat> fw) {
    Weight m = rd.zero_weight();
    m.fw = std::move(fw);
    return m;
}

}  // namespace

TEST_CASE("DimClass algebra") {
    auto z = DimClass::zero(), f2 = DimClass::fin(2), f3 = DimClass::fin(3);
    auto inf = DimClass::infinite();
    CHECK(f2 * f3 == DimClass::fin(6));
    CHECK(f2 + f3 == DimClass::fin(5));
    CHECK(z * inf == z);
    CHECK(inf * z == z);
    CHECK(z * f2 == z);
    CHECK(inf * f2 == inf);
    CHECK(inf + z == inf);
    CHECK(inf + f3 == inf);
    CHECK(z + f2 == f2);
    CHECK(z.is_zero());
    CHECK_FALSE(inf.is_zero());
    CHECK(DimClass::fin(0).is_zero());
}

TEST_CASE("DegreeSupport tensor and shift") {
    DegreeSupport a, b;
    a.add_guaranteed(0, DimClass::fin(1));
    a.add_possible(2, DimClass::infinite());
    b.add_guaranteed(1, DimClass::fin(3));
    CHECK(a.invariant_ok());
    CHECK(b.invariant_ok());

    DegreeSupport t = tensor(a, b);
    CHECK(t.invariant_ok());
    CHECK(t.guaranteed == std::map<int, DimClass>{{1, DimClass::fin(3)}});
    CHECK(t.possible.at(1) == DimClass::fin(3));
    CHECK(t.possible.at(3) == DimClass::infinite());
    CHECK(t.possible.size() == 2);

    DegreeSupport s = shift_support(t, 5);
    CHECK(s.invariant_ok());
    CHECK(s.guaranteed.count(6) == 1);
    CHECK(s.possible.count(8) == 1);

    DegreeSupport zero;
    CHECK(zero.is_zero());
    CHECK(tensor(zero, a).is_zero());
}

TEST_CASE("sv_data on A1") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    Parabolic p0 = lat.p0(), g = lat.g();

    auto sv0 = sv_data(rd, p0, rd.zero_weight());
    CHECK(sv0.S == g);
    CHECK(sv0.T == p0);
    CHECK(sv0.Tp == p0);
    CHECK(sv0.Q == p0);
    CHECK(sv0.Qp == p0);

    auto svn = sv_data(rd, p0, w(rd, {Rat(-2)}));  // mu = -alpha
    CHECK(svn.S == p0);
    CHECK(svn.T == g);
    CHECK(svn.Tp == g);
    CHECK(svn.Q == g);
    CHECK(svn.Qp == g);

    // at P = G there are no split roots: everything degenerates to G
    auto svg = sv_data(rd, g, rd.zero_weight());
    CHECK(svg.S == g);
    CHECK(svg.T == g);
    CHECK(svg.Q == g);

    CHECK_THROWS_AS(sv_data(rd, g, w(rd, {Rat(-1)})), NotDominant);
}

TEST_CASE("zucker_cone examples") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    Parabolic p0 = lat.p0(), g = lat.g();

    // weighted cone over the A1 fiber with trivial coefficients: H^0 only
    DegreeSupport c0 = zucker_cone(rd, p0, rd.zero_weight(), true);
    CHECK(c0.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});
    CHECK(c0.possible == c0.guaranteed);

    // mu = -alpha pairs negatively: everything vanishes
    CHECK(zucker_cone(rd, p0, w(rd, {Rat(-2)}), true).is_zero());

    // unweighted, mu = 0: one zero pairing, infinite classes somewhere in [1,1]
    DegreeSupport cu = zucker_cone(rd, p0, rd.zero_weight(), false);
    CHECK(cu.guaranteed.empty());
    CHECK(cu.possible == std::map<int, DimClass>{{1, DimClass::infinite()}});

    // P = G: no conditions at all
    DegreeSupport cg = zucker_cone(rd, g, rd.zero_weight(), false);
    CHECK(cg.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});

    // rank 2 unweighted at P0: two zero pairings
    auto rd2 = build_root_datum("A2");
    ParabolicLattice lat2(rd2);
    DegreeSupport c2 = zucker_cone(rd2, lat2.p0(), rd2.zero_weight(), false);
    CHECK(c2.guaranteed.empty());
    CHECK(c2.possible ==
          std::map<int, DimClass>{{1, DimClass::infinite()}, {2, DimClass::infinite()}});
}

TEST_CASE("kostant_support") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    DegreeSupport k0 = kostant_support(rd, lat.p0(), rd.zero_weight(), rd.zero_weight());
    CHECK(k0.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});
    DegreeSupport k1 = kostant_support(rd, lat.p0(), rd.zero_weight(), w(rd, {Rat(-2)}));
    CHECK(k1.guaranteed == std::map<int, DimClass>{{1, DimClass::fin(1)}});
    CHECK_THROWS_AS(kostant_support(rd, lat.p0(), rd.zero_weight(), w(rd, {Rat(-4)})),
                    WeightNotPresent);

    // Levi multiplicity shows up as the Weyl dimension of V_mu
    auto rd2 = build_root_datum("A2");
    ParabolicLattice lat2(rd2);
    Parabolic p = lat2.make({0});
    auto kd = kostant_cohomology(rd2, p, lat2.g(), rd2.fundamental_weight(0));
    for (const auto& piece : kd.pieces) {
        DegreeSupport ks = kostant_support(rd2, p, rd2.fundamental_weight(0), piece.weight);
        CHECK(ks.guaranteed.at(piece.degree) ==
              DimClass::fin(weyl_dim_levi(rd2, p.levi, piece.weight)));
    }
}

TEST_CASE("local and nilpotent-local supports") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    Parabolic p0 = lat.p0(), g = lat.g();

    // trivial coefficients at P0: only the mu = 0 constituent survives locally
    DegreeSupport l0 = local_l2(rd, rd.zero_weight(), p0, rd.zero_weight());
    CHECK(l0.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});
    CHECK(local_l2(rd, rd.zero_weight(), p0, w(rd, {Rat(-2)})).is_zero());

    // R = G removes the weight condition: the full Kostant support reappears
    DegreeSupport n1 = nilpotent_local_l2(rd, rd.zero_weight(), p0, g, w(rd, {Rat(-2)}));
    CHECK(n1 == kostant_support(rd, p0, rd.zero_weight(), w(rd, {Rat(-2)})));

    CHECK_THROWS_AS(nilpotent_local_l2(rd, rd.zero_weight(), g, p0, rd.zero_weight()),
                    NotComparable);

    // exactly one of {T = P and local nonzero, T > P and local zero}
    for (const std::string& type : {"A2", "B2"}) {
        auto rdt = build_root_datum(type);
        ParabolicLattice lt(rdt);
        for (const Weight& lam : {rdt.zero_weight(), rdt.fundamental_weight(0)}) {
            for (Parabolic p : lt.all())
                for (const auto& piece :
                     kostant_cohomology(rdt, p, lt.g(), lam).pieces) {
                    SVData sv = sv_data(rdt, p, piece.weight);
                    bool nonzero = !local_l2(rdt, lam, p, piece.weight).is_zero();
                    CHECK(nonzero == (sv.T == p));
                    // nilpotent-local with R = P is the local support
                    CHECK(nilpotent_local_l2(rdt, lam, p, p, piece.weight) ==
                          local_l2(rdt, lam, p, piece.weight));
                }
        }
    }
}

TEST_CASE("interval_support") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    Parabolic p0 = lat.p0(), g = lat.g();

    DegreeSupport point = interval_support(rd, g, g);
    CHECK(point.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});
    CHECK(point.possible == point.guaranteed);

    DegreeSupport full = interval_support(rd, p0, g);
    CHECK(full.guaranteed == std::map<int, DimClass>{{1, DimClass::infinite()}});
    CHECK(full.possible.count(1) == 1);
    CHECK(full.possible.at(1).inf);
    CHECK(full.possible.size() == 1);

    DegreeSupport half = interval_support(rd, p0, p0);
    CHECK(half.guaranteed == std::map<int, DimClass>{{1, DimClass::infinite()}});
    CHECK(half.invariant_ok());

    CHECK_THROWS_AS(interval_support(rd, g, p0), NotComparable);

    // every interval is guaranteed nonzero in degree dim a_{S1}^G
    auto rd2 = build_root_datum("B2");
    ParabolicLattice lat2(rd2);
    for (Parabolic s1 : lat2.all())
        for (Parabolic s2 : lat2.interval(s1, lat2.g())) {
            DegreeSupport ds = interval_support(rd2, s1, s2);
            CHECK(ds.invariant_ok());
            int top = static_cast<int>(lat2.delta(s1).size());
            REQUIRE(ds.guaranteed.count(top) == 1);
            bool pt = s1 == lat2.g() && s2 == lat2.g();
            CHECK(ds.guaranteed.at(top).inf == !pt);
        }
}

TEST_CASE("supports_l2 on A1") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    Parabolic p0 = lat.p0(), g = lat.g();
    Weight zero = rd.zero_weight(), neg = w(rd, {Rat(-2)});

    // mu = 0: only full support Q = G is allowed, giving H^0
    DegreeSupport s0 = supports_l2(rd, zero, p0, g, zero);
    CHECK(s0.guaranteed == std::map<int, DimClass>{{0, DimClass::fin(1)}});
    CHECK(supports_l2(rd, zero, p0, p0, zero).is_zero());

    // mu = -alpha: only compact support Q = P survives, in top degree
    DegreeSupport s1 = supports_l2(rd, zero, p0, p0, neg);
    CHECK(s1.guaranteed == std::map<int, DimClass>{{2, DimClass::fin(1)}});
    CHECK(supports_l2(rd, zero, p0, g, neg).is_zero());

    CHECK_THROWS_AS(supports_l2(rd, zero, g, p0, zero), NotComparable);

    // Q = G agrees with the local (star) support envelope whenever T = P
    for (const std::string& type : {"A2", "B2"}) {
        auto rdt = build_root_datum(type);
        ParabolicLattice lt(rdt);
        for (Parabolic p : lt.all())
            for (const auto& piece :
                 kostant_cohomology(rdt, p, lt.g(), rdt.zero_weight()).pieces) {
                SVData sv = sv_data(rdt, p, piece.weight);
                DegreeSupport sq =
                    supports_l2(rdt, rdt.zero_weight(), p, lt.g(), piece.weight);
                DegreeSupport lc = local_l2(rdt, rdt.zero_weight(), p, piece.weight);
                if (sv.T == p)
                    CHECK(sq.possible == lc.possible);
                else
                    CHECK(sq.is_zero());
            }
    }
}

TEST_CASE("micro-support: both modes agree") {
    auto entry = split_default();
    for (const std::string& type : {"A1", "A2", "B2"}) {
        auto rd = build_root_datum(type);
        std::vector<Weight> lambdas = {rd.zero_weight(), rd.fundamental_weight(0)};
        Weight reg = rd.zero_weight();
        for (auto& c : reg.fw) c = 1;
        lambdas.push_back(reg);
        for (const Weight& lam : lambdas) {
            auto a = micro_support_l2(rd, lam, MSMode::Characterization, entry);
            auto b = micro_support_l2(rd, lam, MSMode::Definitional, entry);
            REQUIRE(a.size() == b.size());
            for (size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].P == b[i].P);
                CHECK(a[i].mu == b[i].mu);
                CHECK(a[i].types == b[i].types);
                for (const auto& [q, ds] : a[i].types) CHECK(ds.invariant_ok());
            }
        }
    }
}

TEST_CASE("micro-support condition matches the geometric lemma") {
    // (xi_V + rho_P)|a_P^G = 0 iff the two Langlands partitions return G and P
    for (const std::string& type : {"A2", "B2"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        for (const Weight& lam : {rd.zero_weight(), rd.fundamental_weight(1)})
            for (Parabolic p : lat.all()) {
                if (p == lat.g()) continue;
                SplitBasis sb = split_basis(rd, p);
                for (const auto& piece : kostant_cohomology(rd, p, lat.g(), lam).pieces) {
                    SVData sv = sv_data(rd, p, piece.weight);
                    Vec xi = sv.xi;
                    for (size_t i = 0; i < xi.size(); ++i) xi[i] += sb.rho_riesz[i];
                    bool cond3 = sv.Q == p && sv.Qp == lat.g();
                    bool geom =
                        geometric_lemma(rd, p, xi, GLVariant::StrictOnComplement) == lat.g() &&
                        geometric_lemma(rd, p, xi, GLVariant::StrictOnSubset) == p;
                    CHECK(cond3 == geom);
                }
            }
    }
}

TEST_CASE("flag sign identities") {
    CHECK(flag_sign_check(3));
    CHECK_THROWS_AS(flag_sign_check(2, true), SignViolation);
}

TEST_CASE("lattice decomposition") {
    for (const std::string& type : {"A2", "B2"}) {
        auto rd = build_root_datum(type);
        ParabolicLattice lat(rd);
        for (Parabolic p : lat.all())
            for (const auto& piece :
                 kostant_cohomology(rd, p, lat.g(), rd.zero_weight()).pieces)
                for (Parabolic q : lat.interval(p, lat.g()))
                    CHECK(lattice_decomposition_check(rd, p, piece.weight, q));
    }
}

TEST_CASE("l2_report on A1, trivial coefficients") {
    auto rd = build_root_datum("A1");
    ParabolicLattice lat(rd);
    L2Report rep = l2_report(rd, rd.zero_weight(), split_default());
    REQUIRE(rep.sigma.size() == 1);
    CHECK(rep.sigma[0].P == lat.g());
    CHECK(rep.sigma[0].mu == rd.zero_weight());
    CHECK_FALSE(rep.vanishing);
    CHECK(rep.c == 0);
    CHECK(rep.d == 2);
    CHECK(rep.equal_rank);
    CHECK(rep.modes_agree);
}

TEST_CASE("l2_report: micro-purity and vanishing") {
    // C2 with regular dominant coefficients: a single micro-support element at G
    auto rdc = build_root_datum("C2");
    ParabolicLattice latc(rdc);
    Weight reg = rdc.zero_weight();
    reg.fw = {Rat(1), Rat(1)};
    L2Report repc = l2_report(rdc, reg, split_default());
    REQUIRE(repc.sigma.size() == 1);
    CHECK(repc.sigma[0].P == latc.g());
    CHECK(repc.sigma[0].mu == reg);
    for (const auto& [q, ds] : repc.sigma[0].types)
        for (const auto& [d, c] : ds.possible) CHECK_FALSE(c.inf);
    CHECK(repc.equal_rank);

    // A2 with lambda = fw(0): not conjugate-self-dual, everything vanishes
    auto rda = build_root_datum("A2");
    L2Report repa = l2_report(rda, rda.fundamental_weight(0), split_default());
    CHECK(repa.sigma.empty());
    CHECK(repa.vanishing);
}

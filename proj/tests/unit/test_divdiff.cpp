#include <doctest.h>

#include <algorithm>
#include <random>

#include "grpkit/divdiff.hpp"
#include "grpkit/error.hpp"
#include "grpkit/parser.hpp"
#include "oracles.hpp"

using namespace grpkit;

namespace {

MapGerm germ(const std::string& vars, const std::string& f1, const std::string& f2) {
    const auto n = std::count(vars.begin(), vars.end(), ',') + 1;
    return parse_germ("n = " + std::to_string(n) + "\nvars = " + vars + "\nf1 = " + f1 + "\nf2 = " + f2 + "\n");
}

Polynomial P(const std::string& text, const VarSpace& s) { return parse_polynomial(text, s); }

/// (g(..a..) - g(..b..)) / (a - b) evaluated pointwise, a != b.
Rational dd_pointwise(const Polynomial& g, const std::string& var, const oracle::Point& at, const Rational& a,
                      const Rational& b) {
    oracle::Point pa = at;
    oracle::Point pb = at;
    pa[var] = a;
    pb[var] = b;
    return (oracle::eval(g, pa) - oracle::eval(g, pb)) / (a - b);
}

}  // namespace

TEST_CASE("dd_step examples") {
    const VarSpace one({"x", "z1"});
    const VarSpace two({"x", "z1", "z2"});
    const VarSpace three({"x", "z1", "z2", "z3"});
    CHECK(dd_step(P("z1^2", one), 1, two) == P("z1 + z2", two));
    CHECK(dd_step(P("z1^3 + x*z1", one), 1, two) == P("z1^2 + z1*z2 + z2^2 + x", two));
    CHECK(dd_step(P("z1 + z2", two), 2, three) == P("1", three));
    CHECK(dd_step(P("x", one), 1, two).is_zero());
}

TEST_CASE("dd_step rejects asymmetric input") {
    const VarSpace two({"z1", "z2"});
    const VarSpace three({"z1", "z2", "z3"});
    CHECK_THROWS_AS(dd_step(P("z1^2", two), 2, three), Error);
}

TEST_CASE("dd_step matches the pointwise divided difference") {
    std::mt19937 rng(31);
    const VarSpace one({"x", "z1"});
    const VarSpace two({"x", "z1", "z2"});
    for (int i = 0; i < 40; ++i) {
        Polynomial g(one);
        for (int t = 0; t < 5; ++t) {
            std::uniform_int_distribution<std::uint32_t> e(0, 5);
            g.add_term(Monomial::from_dense(std::vector<std::uint32_t>{e(rng), e(rng)}), oracle::random_rational(rng));
        }
        const Polynomial d = dd_step(g, 1, two);
        for (int s = 0; s < 5; ++s) {
            auto at = oracle::random_point({"x", "z1", "z2"}, rng);
            if (at["z1"] == at["z2"]) {
                at["z2"] += Rational(1);
            }
            CHECK(oracle::eval(d, at) == dd_pointwise(g, "z1", at, at["z1"], at["z2"]));
        }
    }
}

TEST_CASE("multiple_point_space examples") {
    const MultiplePointSpace d = multiple_point_space(germ("x,z", "z^2", "x*z"), 2);
    CHECK(d.ambient.names() == std::vector<std::string>{"x", "z1", "z2"});
    REQUIRE(d.equations.size() == 2);
    CHECK(d.equations[0] == P("z1 + z2", d.ambient));
    CHECK(d.equations[1] == P("x", d.ambient));
    CHECK(d.expected_dim == 1);

    const MultiplePointSpace d3 = multiple_point_space(germ("x,z", "z^2", "z^3 + x*z"), 3);
    CHECK(d3.equations.size() == 4);
    CHECK(d3.f1_level(3) == P("1", d3.ambient));
    CHECK(d3.expected_dim == 0);

    const MultiplePointSpace a1 = multiple_point_space(germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2"), 2);
    CHECK(a1.equations[0] == P("x^2 + y^2 + z1^2 + z1*z2 + z2^2", a1.ambient));
    CHECK(a1.equations[1] == P("z1 + z2", a1.ambient));
}

TEST_CASE("equation order is f1 levels then f2 levels") {
    const MapGerm f = germ("x,z", "z^4 + x*z", "z^5");
    const MultiplePointSpace d = multiple_point_space(f, 4);
    DividedDifferences dd(f);
    REQUIRE(d.equations.size() == 6);
    for (int i = 2; i <= 4; ++i) {
        CHECK(d.f1_level(i) == rebase(dd.level(1, i), d.ambient));
        CHECK(d.f2_level(i) == rebase(dd.level(2, i), d.ambient));
    }
    CHECK(d.equations[2] == d.f1_level(4));
    CHECK(d.equations[3] == d.f2_level(2));
}

TEST_CASE("symmetry and exactness of every level") {
    std::mt19937 rng(32);
    const MapGerm f = germ("x,y,z", "x*z + y*z^2 + z^5 - 2*x*y*z^3", "y*z + z^4 + 1/3*x^2*z^2");
    DividedDifferences dd(f);
    for (int i = 2; i <= 5; ++i) {
        for (int j = 1; j <= 2; ++j) {
            const Polynomial& hi = dd.level(j, i);
            const VarSpace& s = hi.space();
            std::vector<std::string> zs;
            for (int a = 1; a <= i; ++a) {
                zs.push_back(z_name(a));
            }
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<std::string> perm = zs;
                std::shuffle(perm.begin(), perm.end(), rng);
                std::map<std::string, Polynomial> bind;
                for (std::size_t a = 0; a < zs.size(); ++a) {
                    bind.emplace(zs[a], Polynomial::variable(s, perm[a]));
                }
                CHECK(substitute(hi, bind) == hi);
            }
            const Polynomial lo = rebase(dd.level(j, i - 1), s);
            const Polynomial lo_moved = substitute(lo, {{z_name(i - 1), Polynomial::variable(s, z_name(i))}});
            CHECK((Polynomial::variable(s, z_name(i - 1)) - Polynomial::variable(s, z_name(i))) * hi ==
                  lo - lo_moved);
        }
    }
}

TEST_CASE("degree bound in the z variables") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> e(0, 4);
        std::string f1 = "z^" + std::to_string(2 + e(rng)) + " + x^" + std::to_string(1 + e(rng)) + "*z^" +
                         std::to_string(1 + e(rng));
        const MapGerm f = germ("x,z", f1, "z^2");
        const int zdeg = f.f1.degree_in(f.space.require("z"));
        DividedDifferences dd(f);
        for (int i = 2; i <= 5; ++i) {
            const Polynomial& p = dd.level(1, i);
            int top = -1;
            for (const auto& [m, c] : p.terms()) {
                int d = 0;
                for (const auto& [v, x] : m.factors()) {
                    d += p.space().name(v)[0] == 'z' ? static_cast<int>(x) : 0;
                }
                top = std::max(top, d);
            }
            if (!p.is_zero()) {
                CHECK(top <= zdeg - (i - 1));
            }
        }
    }
}

TEST_CASE("a unit equation persists to higher k") {
    for (const auto& f : {germ("x,z", "z^2", "z^3 + x*z"), germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2"),
                          germ("x,y,z", "y*z+z^4", "x*z+z^3")}) {
        bool unit_seen = false;
        for (int k = 2; k <= 6; ++k) {
            const MultiplePointSpace d = multiple_point_space(f, k);
            bool unit = false;
            for (const auto& e : d.equations) {
                unit = unit || (e.is_constant() && !e.is_zero());
            }
            if (unit_seen) {
                CHECK(unit);
            }
            unit_seen = unit_seen || unit;
        }
        CHECK(unit_seen);
    }
}

TEST_CASE("restrict_to_partition examples") {
    const MultiplePointSpace d = multiple_point_space(germ("x,z", "z^2", "x*z"), 2);
    const auto r = restrict_to_partition(d, Partition{{2}});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == P("2*z1", d.ambient));
    CHECK(r[1] == P("x", d.ambient));
    CHECK(restrict_to_partition(d, Partition{{1, 1}}) == d.equations);

    const MultiplePointSpace a1 = multiple_point_space(germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2"), 2);
    const auto ra = restrict_to_partition(a1, Partition{{2}});
    REQUIRE(ra.size() == 2);
    CHECK(ra[0] == P("x^2 + y^2 + 3*z1^2", a1.ambient));
    CHECK(ra[1] == P("2*z1", a1.ambient));
}

TEST_CASE("restrict_to_partition drops duplicates and zeros") {
    const MultiplePointSpace d = multiple_point_space(germ("x,z", "z^3 + x*z", "z^3 + x*z"), 3);
    const auto r = restrict_to_partition(d, Partition{{1, 1, 1}});
    CHECK(r.size() == 2);
    const auto r3 = restrict_to_partition(d, Partition{{3}});
    for (const auto& e : r3) {
        CHECK_FALSE(e.is_zero());
        CHECK(e.degree_in(d.ambient.require("z2")) <= 0);
        CHECK(e.degree_in(d.ambient.require("z3")) <= 0);
    }
}

TEST_CASE("perturb examples") {
    const MapGerm a1 = germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2");
    const MapGerm ft = perturb(a1, 1, +1);
    CHECK(ft.parameters == std::vector<std::string>{"t"});
    CHECK(ft.f1 == P("z*(x^2+y^2+z^2) + t*z", ft.space));
    CHECK(ft.f2 == P("z^2", ft.space));
    CHECK(perturb(a1, 2, -1, 1).f2 == P("z^2 - t*z^2", ft.space));

    const MapGerm p1 = germ("x,y,z", "y*z+z^4", "x*z+z^3");
    for (int K = 1; K <= 3; ++K) {
        for (int sign : {1, -1}) {
            const MapGerm g = perturb(p1, K, sign);
            const Polynomial t0 = rebase(substitute(g.f1, {{"t", Polynomial(g.space)}}), p1.space);
            CHECK(t0 == p1.f1);
        }
    }
    CHECK_THROWS_AS(perturb(p1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(perturb(p1, 1, 2), std::invalid_argument);
}

TEST_CASE("parameters sit after z1..zk in the ambient space") {
    const MapGerm ft = perturb(germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2"), 1, -1);
    const MultiplePointSpace d = multiple_point_space(ft, 3);
    CHECK(d.ambient.names() == std::vector<std::string>{"x", "y", "z1", "z2", "z3", "t"});
}

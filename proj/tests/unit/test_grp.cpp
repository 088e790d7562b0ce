#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "families.hpp"
#include "grpkit/error.hpp"
#include "grpkit/grp.hpp"
#include "grpkit/parser.hpp"
#include "oracles.hpp"

using namespace grpkit;

namespace {

MapGerm germ(const std::string& vars, const std::string& f1, const std::string& f2) {
    const auto n = std::count(vars.begin(), vars.end(), ',') + 1;
    return parse_germ("n = " + std::to_string(n) + "\nvars = " + vars + "\nf1 = " + f1 + "\nf2 = " + f2 + "\n");
}

const MapGerm& A1() {
    static const MapGerm g = germ("x,y,z", "z*(x^2+y^2+z^2)", "z^2");
    return g;
}
const MapGerm& P1() {
    static const MapGerm g = germ("x,y,z", "y*z+z^4", "x*z+z^3");
    return g;
}
const MapGerm& Q2() {
    static const MapGerm g = germ("x,y,z", "z^3+y^2*z", "x*z+y*z^2");
    return g;
}

Polynomial P(const std::string& text, const VarSpace& s) { return parse_polynomial(text, s); }

MapGerm scaled(const MapGerm& f, const Rational& c) {
    return MapGerm(f.source_vars, f.f1 * c, f.f2 * c, f.label, f.parameters);
}

std::vector<MapGerm> corpus() {
    std::vector<MapGerm> out;
    for (const auto& entry : std::filesystem::directory_iterator(GRPKIT_CORPUS_DIR)) {
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        out.push_back(parse_germ(buf.str()));
    }
    return out;
}

}  // namespace

TEST_CASE("match_normal_form: A1") {
    const MatchResult m = match_normal_form(A1());
    REQUIRE(m.form);
    CHECK(m.form->family == Family::One);
    CHECK(m.form->K == 1);
    CHECK_FALSE(m.form->alpha);
    CHECK(m.form->u.empty());
    CHECK(m.form->v.empty());
    CHECK(m.form->x == std::vector<std::string>{"x", "y"});
    CHECK(m.form->q == P("x^2 + y^2", A1().space));
    CHECK(m.form->component == 0);
}

TEST_CASE("match_normal_form: P1") {
    const MatchResult m = match_normal_form(P1());
    REQUIRE(m.form);
    CHECK(m.form->family == Family::One);
    CHECK(m.form->K == 2);
    CHECK(m.form->u == std::vector<std::string>{"y"});
    CHECK(m.form->v == std::vector<std::string>{"x"});
    CHECK(m.form->x.empty());
    REQUIRE(m.form->alpha);
    CHECK(*m.form->alpha == Rational(0));
    CHECK(m.form->q.is_zero());
    CHECK(m.form->distinguished_v() == "x");
}

TEST_CASE("match_normal_form: Q2") {
    const MatchResult m = match_normal_form(Q2());
    REQUIRE(m.form);
    CHECK(m.form->family == Family::Two);
    CHECK(m.form->K == 1);
    CHECK(m.form->v == std::vector<std::string>{"x"});
    CHECK(m.form->x == std::vector<std::string>{"y"});
    CHECK(m.form->q == P("y^2", Q2().space));
}

TEST_CASE("match reads alpha and normalizes coefficients") {
    // Dividing f1 by 2 and f2 by 7, then v' = 5v/7, gives
    // z^2 (x^2/2 + 14/5 v') + z^4 and v' z + z^3.
    const MapGerm f = germ("u,v,x,z", "3*u*z + z^2*(x^2 + 4*v) + 2*z^4", "5*v*z + 7*z^3");
    const MatchResult m = match_normal_form(f);
    REQUIRE(m.form);
    CHECK(m.form->K == 2);
    REQUIRE(m.form->alpha);
    CHECK(*m.form->alpha == Rational(14, 5));
    CHECK(m.form->q == P("1/2*x^2", f.space));

    const MapGerm unit = germ("u,v,x,z", "u*z + z^2*(x^2 + 1/2*v) + z^4", "v*z + z^3");
    const MatchResult mu = match_normal_form(unit);
    REQUIRE(mu.form);
    CHECK(*mu.form->alpha == Rational(1, 2));
    CHECK(mu.form->q == P("x^2", unit.space));
}

TEST_CASE("alpha and verdicts are invariant under scaling") {
    const std::vector<Rational> scales{Rational(2), Rational(-3), Rational(1, 5)};
    std::vector<MapGerm> germs = corpus();
    germs.push_back(germ("u,v,x,z", "u*z + z^2*(x^2 + 1/2*v) + z^4", "v*z + z^3"));
    germs.push_back(germ("u,v,x,z", "u*z + z^2*(x^2 + 3/2*v) + z^4", "v*z + z^3"));
    for (const auto& f : germs) {
        const GrpVerdict base = classify_grp(f);
        for (const auto& c : scales) {
            CAPTURE(f.label);
            CAPTURE(c.to_string());
            const GrpVerdict v = classify_grp(scaled(f, c));
            CHECK(v.kind == base.kind);
            if (base.form && v.form) {
                CHECK(v.form->K == base.form->K);
                CHECK(v.form->alpha == base.form->alpha);
            }
        }
    }
}

TEST_CASE("components may appear in either order") {
    const MapGerm swapped = germ("x,y,z", "z^2", "z*(x^2+y^2+z^2)");
    const GrpVerdict v = classify_grp(swapped);
    REQUIRE(v.kind == VerdictKind::Yes);
    CHECK(v.form->component == 1);
    CHECK(v.perturbed->f2 == P("z*(x^2+y^2+z^2) + " + std::string(v.t_sign > 0 ? "" : "-") + "t*z",
                               v.perturbed->space));
}

TEST_CASE("positional inference differs from structural for P1; blocks override") {
    // Declared order lists x before y, yet u = y and v = x.
    const auto forced = parse_blocks("u=y,v=x");
    const MatchResult ok = match_normal_form(P1(), forced);
    REQUIRE(ok.form);
    CHECK(ok.form->u == std::vector<std::string>{"y"});
    const MatchResult bad = match_normal_form(P1(), parse_blocks("u=x,v=y"));
    CHECK_FALSE(bad.form);
    CHECK_FALSE(bad.obstruction.empty());
    std::vector<std::string> why;
    CHECK(match_all(P1(), parse_blocks("u=x,v=y"), &why).empty());
    CHECK(std::any_of(why.begin(), why.end(),
                      [](const std::string& s) { return s.find("requested assignment") != std::string::npos; }));
}

TEST_CASE("parse_blocks") {
    const BlockAssignment b = parse_blocks("u=a,b, v=c ,x=d,e");
    CHECK(b.u == std::vector<std::string>{"a", "b"});
    CHECK(b.v == std::vector<std::string>{"c"});
    CHECK(b.x == std::vector<std::string>{"d", "e"});
    CHECK(parse_blocks("x=").x.empty());
    CHECK_THROWS_AS(parse_blocks("a,b"), Error);
    CHECK_THROWS_AS(parse_blocks("w=a"), Error);
}

TEST_CASE("structural obstructions") {
    CHECK_FALSE(match_normal_form(germ("x,y,z", "z^2 + x*z", "y*z")).form);
    const MatchResult m = match_normal_form(germ("x,y,z", "x*z", "y*z"));
    CHECK_FALSE(m.form);
    CHECK_FALSE(m.obstruction.empty());
    // q linear in x.
    CHECK_FALSE(match_normal_form(germ("x,y,z", "z*(x + y^2) + z^3", "z^2")).form);
    // Family Two q linear in v_K.
    const MatchResult two = match_normal_form(germ("x,y,z", "z^3 + (y^2 + x)*z", "x*z + y*z^2"));
    if (two.form) {
        CHECK(two.form->family != Family::Two);
    }
}

TEST_CASE("check_sufficient examples") {
    JetNormalForm nf = *match_normal_form(A1()).form;
    CHECK(check_sufficient(nf).pass);

    const MapGerm one = germ("u,v,x,z", "u*z + z^2*(x^2 + v) + z^4", "v*z + z^3");
    const auto m1 = match_normal_form(one);
    REQUIRE(m1.form);
    const CheckResult c1 = check_sufficient(*m1.form);
    CHECK_FALSE(c1.pass);
    CHECK(c1.reason.find("alpha not < 1") != std::string::npos);

    const MapGerm ind = germ("x,y,z", "z*(x^2-y^2+z^2)", "z^2");
    const CheckResult c2 = check_sufficient(*match_normal_form(ind).form);
    CHECK_FALSE(c2.pass);
    CHECK(c2.reason.find("q indefinite") != std::string::npos);
    CHECK(c2.reason.find("(1,1,0)") != std::string::npos);

    const MapGerm neg = germ("x,y,z", "z*(-x^2-y^2+z^2)", "z^2");
    CHECK_FALSE(check_sufficient(*match_normal_form(neg).form).pass);

    const MapGerm semi = germ("x,y,z", "z*x^2 + z^3", "z^2");
    CHECK_FALSE(check_sufficient(*match_normal_form(semi).form).pass);
}

TEST_CASE("check_sufficient agrees with the eigenvalue oracle on the x-block") {
    std::mt19937 rng(51);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::vector<Rational>> g(3, std::vector<Rational>(3, Rational(0)));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) {
                g[i][j] = g[j][i] = Rational(c(rng));
            }
        }
        const MapGerm f = families::build({Family::One, 4, 1, Rational(0), g});
        const MatchResult m = match_normal_form(f);
        REQUIRE(m.form);
        const oracle::Inertia in = oracle::inertia(g);
        CHECK(check_sufficient(*m.form).pass == (in.plus == 3));
    }
}

TEST_CASE("verify_perturbation: A1") {
    const JetNormalForm nf = *match_normal_form(A1()).form;
    CHECK(choose_t_sign(A1(), nf) == -1);
    const PerturbationReport good = verify_perturbation(A1(), nf, -1);
    CHECK(good.pass);
    CHECK(good.form_signature == Signature{3, 0, 0});
    CHECK(good.t_coefficient == Rational(-1));
    CHECK(parts(good.residual).quadratic.restricted(good.form.variables).matrix == good.form.matrix);

    const PerturbationReport bad = verify_perturbation(A1(), nf, +1);
    CHECK_FALSE(bad.pass);
    CHECK(bad.reason.find("empty real sphere") != std::string::npos);
}

TEST_CASE("verify_perturbation: residual sphere is real for small t") {
    // Pointwise: for t = 1/100 the residual form = -c t has a real solution
    // along the first free axis.
    for (const MapGerm* f : {&A1(), &P1(), &Q2()}) {
        const JetNormalForm nf = *match_normal_form(*f).form;
        const int sign = choose_t_sign(*f, nf);
        const PerturbationReport r = verify_perturbation(*f, nf, sign);
        REQUIRE(r.pass);
        const Rational a = r.form.matrix[0][0];
        const Rational rhs = -r.t_coefficient * Rational(1, 100);
        CHECK((rhs / a).sign() > 0);
    }
}

TEST_CASE("verify_perturbation: P1 and Q2") {
    CHECK(verify_perturbation(P1(), *match_normal_form(P1()).form, -1).pass);
    CHECK(verify_perturbation(Q2(), *match_normal_form(Q2()).form, -1).pass);
    CHECK_FALSE(verify_perturbation(Q2(), *match_normal_form(Q2()).form, +1).pass);
}

TEST_CASE("classify_grp: simple germs") {
    struct Case {
        const MapGerm* f;
        Family family;
        int K;
    };
    for (const Case& c : {Case{&A1(), Family::One, 1}, Case{&P1(), Family::One, 2}, Case{&Q2(), Family::Two, 1}}) {
        const GrpVerdict v = classify_grp(*c.f);
        REQUIRE(v.kind == VerdictKind::Yes);
        CHECK(v.form->family == c.family);
        CHECK(v.form->K == c.K);
        const Polynomial t = Polynomial::variable(v.perturbed->space, "t");
        const Polynomial z = Polynomial::variable(v.perturbed->space, "z");
        CHECK(v.perturbed->f1 - rebase(c.f->f1, v.perturbed->space) ==
              t * z.pow(static_cast<unsigned>(c.K)) * Rational(v.t_sign));
        CHECK(v.perturbed->f2 == rebase(c.f->f2, v.perturbed->space));
    }
}

TEST_CASE("classify_grp: n=4 jet, rejection, n=2") {
    const GrpVerdict jet = classify_grp(germ("x1,x2,x3,z", "z*(x1^2+x2^2+x3^2)+z^3", "z^2"));
    CHECK(jet.kind == VerdictKind::Yes);
    CHECK(jet.form->family == Family::One);
    CHECK(jet.form->K == 1);

    const GrpVerdict no = classify_grp(germ("x,z", "z^2", "z^5 + x^2*z"));
    CHECK(no.kind == VerdictKind::No);
    CHECK(no.reason.find("D^2 is Degenerate") != std::string::npos);

    const GrpVerdict n2 = classify_grp(germ("x,z", "z^2", "z^3 + x*z"));
    CHECK(n2.kind == VerdictKind::Unknown);
    CHECK(n2.reason.find("n>2 required") != std::string::npos);
}

TEST_CASE("classify_grp: failed sufficiency is Unknown, not No") {
    const GrpVerdict v = classify_grp(germ("x,y,z", "z*(x^2-y^2+z^2)", "z^2"));
    CHECK(v.kind == VerdictKind::Unknown);
    CHECK(v.reason.find("q indefinite") != std::string::npos);
    const GrpVerdict w = classify_grp(germ("x,y,z", "x*z^2 + z^4 + y*z", "z^3"));
    CHECK(w.kind != VerdictKind::Yes);
}

TEST_CASE("verdict invariants over corpus and generated germs") {
    std::vector<MapGerm> germs = corpus();
    std::mt19937 rng(52);
    for (int n = 3; n <= 5; ++n) {
        for (int K = 1; 2 * K <= n + 1; ++K) {
            for (auto fam : {Family::One, Family::Two}) {
                if (!families::admissible(fam, n, K)) {
                    continue;
                }
                const int xl = families::x_len(fam, n, K);
                germs.push_back(families::build({fam, n, K, Rational(-1), families::random_definite(xl, rng)}));
                if (xl > 0) {
                    germs.push_back(families::build({fam, n, K, Rational(0), families::random_indefinite(xl, rng)}));
                }
                if (fam == Family::One && K >= 2) {
                    germs.push_back(families::build({fam, n, K, Rational(2), families::random_definite(xl, rng)}));
                }
            }
        }
    }
    int yes = 0;
    int no = 0;
    for (const auto& f : germs) {
        const GrpVerdict v = classify_grp(f);
        if (v.kind == VerdictKind::Yes) {
            ++yes;
            CHECK(v.table.screens.necessary);
            CHECK(v.table.screens.empty_bound);
            CHECK(consistency_check(v.table).empty());
            CHECK(verify_perturbation(f, *v.form, v.t_sign).pass);
            CHECK(check_sufficient(*v.form).pass);
        } else if (v.kind == VerdictKind::No) {
            ++no;
            bool cited = false;
            for (const auto& r : v.table.rows) {
                cited = cited || (r.d_k > 0 && r.cls.kind == SingularityKind::Degenerate) ||
                        (r.k > v.table.bound && !r.cls.is_empty());
            }
            CHECK(cited);
            CHECK_FALSE(v.reason.empty());
        }
    }
    CHECK(yes > 5);
    CHECK(no >= 2);
}

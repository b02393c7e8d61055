#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boxprop/box_consistency.hpp"
#include "testutil.hpp"

using namespace boxprop;
using testutil::Gen;

namespace {

SystemSpec one_expr(const char* text, std::vector<std::pair<std::string, Interval>> vars) {
    SystemSpec s;
    s.variables = std::move(vars);
    s.inequalities.push_back(parse(text));
    return s;
}

VarBox initial(const SystemSpec& s) {
    VarBox b;
    for (const auto& [n, d] : s.variables) b.dom.push_back(d);
    return b;
}

bool varbox_subset(const VarBox& a, const VarBox& b) {
    for (size_t i = 0; i < a.dom.size(); ++i)
        if (!b.dom[i].contains(a.dom[i])) return false;
    return true;
}

bool near(double x, double target, double tol = 1e-12) { return std::abs(x - target) <= tol; }

}  // namespace

TEST_CASE("bisection shrinks the upper bound to the feasibility frontier") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    Interval up = shrink_upper_functional(*s.inequalities[0], 0, s, initial(s));
    CHECK(up.lb() == -2.0);
    CHECK(near(up.rb(), 1.0));        // solutions are [-1,1]
    CHECK(up.rb() >= 1.0);            // never cuts into the solution set

    SystemSpec s2 = one_expr("x + 1", {{"x", Interval(0, 5)}});
    CHECK(shrink_upper_functional(*s2.inequalities[0], 0, s2, initial(s2)).is_empty());

    SystemSpec s3 = one_expr("x", {{"x", Interval(-1, 0)}});
    CHECK(shrink_upper_functional(*s3.inequalities[0], 0, s3, initial(s3))
              .same(Interval(-1, 0)));
}

TEST_CASE("bisection raises the lower bound symmetrically") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    Interval lo = shrink_lower_functional(*s.inequalities[0], 0, s, initial(s));
    CHECK(lo.rb() == 3.0);
    CHECK(near(lo.lb(), -1.0));
    CHECK(lo.lb() <= -1.0);

    SystemSpec s2 = one_expr("-x", {{"x", Interval(-3, 1)}});
    Interval lo2 = shrink_lower_functional(*s2.inequalities[0], 0, s2, initial(s2));
    CHECK(near(lo2.lb(), 0.0));
    CHECK(lo2.lb() <= 0.0);

    SystemSpec s3 = one_expr("x - 10", {{"x", Interval(0, 1)}});
    CHECK(shrink_lower_functional(*s3.inequalities[0], 0, s3, initial(s3))
              .same(Interval(0, 1)));
}

TEST_CASE("coarse precision stops early but stays sound") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    BcConfig coarse;
    coarse.precision = BcPrecision::WidthTau;
    coarse.tau = 0.125;
    Interval up = shrink_upper_functional(*s.inequalities[0], 0, s, initial(s), coarse);
    CHECK(up.rb() >= 1.0);
    CHECK(up.rb() <= 1.0 + 0.126);
}

TEST_CASE("functional sweep reaches box consistency") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    BcResult r = functional_bc(s, initial(s));
    REQUIRE_FALSE(r.failed);
    CHECK(near(r.box.dom[0].lb(), -1.0, 1e-9));
    CHECK(near(r.box.dom[0].rb(), 1.0, 1e-9));
    CHECK(r.box.dom[0].contains(Interval(-1, 1)));

    SystemSpec s2 = one_expr("x^2 + 1", {{"x", Interval(-10, 10)}});
    CHECK(functional_bc(s2, initial(s2)).failed);

    SystemSpec s3 = one_expr("x", {{"x", Interval(-1, -0.5)}});
    BcResult r3 = functional_bc(s3, initial(s3));
    CHECK(r3.box.dom[0].same(initial(s3).dom[0]));
}

TEST_CASE("propagation trials certify infeasible slices") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    RelationalContext ctx(s);
    VarBox b = initial(s);
    CHECK(ctx.slice_infeasible(0, 0, b, Interval(2, 3)));        // x^2-1 >= 3 there
    CHECK_FALSE(ctx.slice_infeasible(0, 0, b, Interval(0, 3)));  // x=0.5 satisfies
    double top = next_down(3.0);
    CHECK(ctx.slice_infeasible(0, 0, b, Interval(top, 3)));      // canonical top slice
}

TEST_CASE("interval-test infeasibility implies propagation failure") {
    Gen g(601);
    int done = 0;
    while (done < 500) {
        testutil::ExprCase ec = testutil::gen_tame_expr(g, 4);
        SystemSpec s = ec.spec;
        s.inequalities.push_back(ec.e);
        if (s.variables.empty()) continue;
        size_t i = g.pick(static_cast<int>(s.variables.size()));
        Interval X = s.variables[i].second;

        // hunt for a slice where the interval evaluation is positive
        Env env = testutil::env_of(s);
        Interval found = Interval::empty();
        for (int k = 0; k < 16; ++k) {
            double a = g.point_in(X);
            Interval slice(a, X.rb());
            env[s.variables[i].first] = slice;
            Interval ev = eval_natural(*ec.e, env);
            if (!ev.is_empty() && ev.lb() > 0) { found = slice; break; }
        }
        if (found.is_empty()) continue;

        RelationalContext ctx(s);
        CHECK(ctx.slice_infeasible(0, i, initial(s), found));
        ++done;
    }
}

TEST_CASE("relational consistency is at least as tight as functional") {
    SystemSpec s = one_expr("x^2 - 1", {{"x", Interval(-2, 3)}});
    BcResult fun = functional_bc(s, initial(s));
    BcResult rel = relational_bc(s, initial(s));
    REQUIRE_FALSE(rel.failed);
    CHECK(varbox_subset(rel.box, fun.box));

    // division system: relational excludes zero itself from x2,
    // functional can only close down to [-1, 0]
    SystemSpec sd = one_expr("x1/x2", {{"x1", Interval(1, 2)}, {"x2", Interval(-1, 1)}});
    BcResult dfun = functional_bc(sd, initial(sd));
    BcResult drel = relational_bc(sd, initial(sd));
    REQUIRE_FALSE(drel.failed);
    CHECK(dfun.box.dom[1].lb() == -1.0);
    CHECK(dfun.box.dom[1].rb() >= 0.0);       // functional keeps the endpoint 0
    CHECK(drel.box.dom[1].rb() < 0.0);        // relational proves x2 < 0
    CHECK(varbox_subset(drel.box, dfun.box));
    CHECK(dfun.box.dom[1].proper_superset_of(drel.box.dom[1]));   // strictly tighter

    // infeasible either way
    SystemSpec si = one_expr("x^2 + 1", {{"x", Interval(-10, 10)}});
    CHECK(functional_bc(si, initial(si)).failed);
    CHECK(relational_bc(si, initial(si)).failed);
}

TEST_CASE("containment and soundness on random systems") {
    Gen g(602);
    BcConfig coarse;
    coarse.precision = BcPrecision::WidthTau;
    coarse.tau = 1e-4;
    coarse.max_rounds = 8;
    for (int t = 0; t < 60; ++t) {
        SystemSpec s = testutil::gen_system(g);
        VarBox b = initial(s);
        BcResult fun = functional_bc(s, b, coarse);
        BcResult rel = relational_bc(s, b, coarse);
        if (!fun.failed && !rel.failed) CHECK(varbox_subset(rel.box, fun.box));
        if (fun.failed) CHECK(rel.failed);   // relational is never weaker

        for (int k = 0; k < 400; ++k) {
            auto pt = testutil::sample_point(g, s);
            if (!testutil::certainly_solves(s, pt)) continue;
            REQUIRE_FALSE(fun.failed);
            REQUIRE_FALSE(rel.failed);
            for (size_t i = 0; i < s.variables.size(); ++i) {
                CHECK(fun.box.dom[i].contains(pt.at(s.variables[i].first)));
                CHECK(rel.box.dom[i].contains(pt.at(s.variables[i].first)));
            }
        }
    }
}

TEST_CASE("domains never grow across sweeps") {
    Gen g(603);
    BcConfig one_round;
    one_round.precision = BcPrecision::WidthTau;
    one_round.tau = 1e-4;
    one_round.max_rounds = 1;
    BcConfig two_rounds = one_round;
    two_rounds.max_rounds = 2;
    for (int t = 0; t < 40; ++t) {
        SystemSpec s = testutil::gen_system(g);
        VarBox b = initial(s);
        BcResult r1 = functional_bc(s, b, one_round);
        BcResult r2 = functional_bc(s, b, two_rounds);
        if (r1.failed || r2.failed) continue;
        CHECK(varbox_subset(r2.box, r1.box));
        CHECK(varbox_subset(r1.box, b));
    }
}

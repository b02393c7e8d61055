// Acceptance suite: ten pass/fail checks over the whole stack, printed one
// line per criterion. Exits nonzero if any criterion fails. argv[1] must be
// the CLI binary (used by the determinism criterion).
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sys/wait.h>
#include <unistd.h>

#include "boxprop/paver.hpp"
#include "testutil.hpp"

using namespace boxprop;
using testutil::Gen;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s — %s\n", n, ok ? "pass" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Corpus {
    std::vector<testutil::ExprCase> cases;
};

Corpus make_corpus(int n) {
    Gen g(90001);
    Corpus c;
    for (int i = 0; i < n; ++i) c.cases.push_back(testutil::gen_tame_expr(g));
    return c;
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

// --- criteria 1 & 2: evaluation equivalence and single-pass counts ----------

void criteria_1_2(const Corpus& corpus) {
    double t0 = now_s();
    bool equal_ok = true, count_ok = true;
    for (const auto& ec : corpus.cases) {
        SystemSpec s = ec.spec;
        s.inequalities.push_back(ec.e);
        Csp c = compile_system(s, RootRel::None);
        GpaResult r = psi_evaluate(c, c.initial);
        if (r.failed() ||
            !r.box[c.root_var_of_expr[0]].same(eval_natural(*ec.e, testutil::env_of(s))))
            equal_ok = false;
        if (r.stats.total_activations != static_cast<long>(c.constraints.size()))
            count_ok = false;
    }
    double dt = now_s() - t0;
    report(1, equal_ok && dt < 10.0,
           "selective propagation root bit-equals interval evaluation on 1000 random "
           "expressions (" + std::to_string(dt).substr(0, 5) + " s)");
    report(2, count_ok, "every propagation run activates each reduction operator exactly once");
}

// --- criterion 3: interval-test infeasibility implies propagation failure ---

void criterion_3() {
    Gen g(90003);
    int done = 0;
    bool ok = true;
    while (done < 500) {
        testutil::ExprCase ec = testutil::gen_tame_expr(g, 4);
        SystemSpec s = ec.spec;
        s.inequalities.push_back(ec.e);
        size_t i = g.pick(static_cast<int>(s.variables.size()));
        Interval X = s.variables[i].second;
        Env env = testutil::env_of(s);
        Interval found = Interval::empty();
        for (int k = 0; k < 16; ++k) {
            double a = g.point_in(X);
            env[s.variables[i].first] = Interval(a, X.rb());
            Interval ev = eval_natural(*ec.e, env);
            if (!ev.is_empty() && ev.lb() > 0) { found = Interval(a, X.rb()); break; }
        }
        if (found.is_empty()) continue;
        RelationalContext ctx(s);
        if (!ctx.slice_infeasible(0, i, initial(s), found)) ok = false;
        ++done;
    }
    report(3, ok, "propagation certifies every interval-test-infeasible slice (500 cases)");
}

// --- criterion 4: reactivation equals full restart ---------------------------

void criterion_4() {
    Gen g(90004);
    int done = 0;
    bool ok = true;
    while (done < 500) {
        testutil::ExprCase ec = testutil::gen_tame_expr(g);
        SystemSpec s = ec.spec;
        s.inequalities.push_back(ec.e);
        Csp c = compile_system(s, RootRel::None);
        GpaResult fix = psi_evaluate(c, c.initial);
        if (fix.failed()) continue;
        int y = c.root_var_of_expr[0];
        if (c.vars[y].kind != VarKind::Internal) continue;
        Interval root = fix.box[y];
        if (root.is_empty() || root.is_canonical()) continue;
        Interval shrunk = g.chance(0.5) ? Interval(root.lb(), midpoint(root))
                                        : Interval(midpoint(root), root.rb());
        if (shrunk.same(root)) continue;

        GpaResult re = psi_reactivate(c, fix.box, y, shrunk);
        Box restart = fix.box;
        restart[y] = shrunk;
        GpaResult full = gpa(c, restart, all_constraints(c), Discipline::Fifo);
        if (re.failed() != full.failed()) ok = false;
        else if (!re.failed() && !re.box.same(full.box)) ok = false;
        ++done;
    }
    report(4, ok, "root reactivation bit-equals a full propagation restart (500 cases)");
}

// --- criterion 5: single-pass probe and the division self-reduction ---------

void criterion_5() {
    Gen g(90005);
    int done = 0, yes = 0;
    while (done < 100) {
        testutil::ExprCase ec = testutil::gen_tame_expr(g);
        SystemSpec s = ec.spec;
        s.inequalities.push_back(ec.e);
        Csp c = compile_system(s, RootRel::None);
        GpaResult fix = psi_evaluate(c, c.initial);
        if (fix.failed()) continue;
        int y = c.root_var_of_expr[0];
        if (c.vars[y].kind != VarKind::Internal) continue;
        Interval root = fix.box[y];
        if (root.is_empty() || root.is_canonical()) continue;
        Interval shrunk(root.lb(), midpoint(root));
        if (shrunk.same(root)) continue;
        if (count_single_pass(c, fix.box, y, shrunk)) ++yes;
        ++done;
    }

    // division self-reduction, checked against a dense sampling oracle
    SystemSpec sd;
    sd.variables.emplace_back("x1", Interval(1, 2));
    sd.variables.emplace_back("x2", Interval(-1, 1));
    sd.inequalities.push_back(parse("x1/x2"));
    Csp cd = compile_system(sd, RootRel::None);
    GpaResult fix = psi_evaluate(cd, cd.initial);
    int y = cd.root_var_of_expr[0];
    GpaResult re = psi_reactivate(cd, fix.box, y, Interval(-kInf, 0));
    bool exact = !re.failed() && re.box[y].same(Interval(-kInf, -1)) &&
                 re.box[cd.var_id("x2")].same(Interval(-1, 0)) &&
                 re.box[cd.var_id("x1")].same(Interval(1, 2));

    double oracle_rb = -kInf;   // max of x1/x2 over satisfying samples (y <= 0)
    for (int i = 0; i <= 2000; ++i)
        for (int j = 0; j <= 2000; ++j) {
            double x1 = 1.0 + i / 2000.0, x2 = -1.0 + j / 1000.0;
            if (x2 == 0) continue;
            double q = x1 / x2;
            if (q <= 0) oracle_rb = std::max(oracle_rb, q);
        }
    bool oracle_ok = std::abs(oracle_rb - (-1.0)) < 1e-2 && re.box[y].contains(oracle_rb);

    report(5, yes == done && exact && oracle_ok,
           "single-pass probe true on 100/100 tame trees; division self-reduction exact "
           "(root rb = -1, sampled oracle agrees)");
}

// --- criterion 6: relational inside functional, strictly better somewhere ---

void criterion_6() {
    Gen g(90006);
    BcConfig cfg;
    cfg.precision = BcPrecision::WidthTau;
    cfg.tau = 1e-5;
    cfg.max_rounds = 6;
    bool contained = true;
    bool strict = false;
    for (int t = 0; t < 200; ++t) {
        SystemSpec s = testutil::gen_system(g);
        VarBox b = initial(s);
        BcResult fun = functional_bc(s, b, cfg);
        BcResult rel = relational_bc(s, b, cfg);
        if (rel.failed) continue;
        if (fun.failed) { contained = false; continue; }   // relational must not be weaker
        if (!varbox_subset(rel.box, fun.box)) contained = false;
        for (size_t i = 0; i < s.variables.size(); ++i)
            if (fun.box.dom[i].proper_superset_of(rel.box.dom[i])) strict = true;
    }

    SystemSpec sd;
    sd.variables.emplace_back("x1", Interval(1, 2));
    sd.variables.emplace_back("x2", Interval(-1, 1));
    sd.inequalities.push_back(parse("x1/x2"));
    BcResult dfun = functional_bc(sd, initial(sd));
    BcResult drel = relational_bc(sd, initial(sd));
    bool division_strict = !drel.failed && !dfun.failed &&
                           dfun.box.dom[1].proper_superset_of(drel.box.dom[1]) &&
                           varbox_subset(drel.box, dfun.box);

    report(6, contained && (strict || division_strict) && division_strict,
           "relational consistency inside functional on 200 systems, strictly tighter on "
           "the division system");
}

// --- criterion 7: no sampled solution is ever excluded -----------------------

void criterion_7() {
    Gen g(90007);
    bool ok = true;
    long samples = 0;
    BcConfig cfg;
    cfg.precision = BcPrecision::WidthTau;
    cfg.tau = 1e-5;
    cfg.max_rounds = 6;
    for (int t = 0; t < 800 && samples < 80000; ++t) {
        SystemSpec s = testutil::gen_system(g);
        VarBox b = initial(s);
        BcResult fun = functional_bc(s, b, cfg);
        BcResult rel = relational_bc(s, b, cfg);
        Csp c = compile_system(rewrite_single_occurrence(s));
        GpaResult prop = gpa(c, c.initial, all_constraints(c), Discipline::Fifo);
        for (int k = 0; k < 2000; ++k) {
            auto pt = testutil::sample_point(g, s);
            if (!testutil::certainly_solves(s, pt)) continue;
            ++samples;
            if (fun.failed || rel.failed || prop.failed()) { ok = false; continue; }
            for (size_t i = 0; i < s.variables.size(); ++i) {
                double v = pt.at(s.variables[i].first);
                if (!fun.box.dom[i].contains(v)) ok = false;
                if (!rel.box.dom[i].contains(v)) ok = false;
                int cv = c.var_id(s.variables[i].first);
                if (cv >= 0 && !prop.box[cv].contains(v)) ok = false;
            }
        }
    }

    // paving never drops disk solutions
    SystemSpec disk;
    disk.variables.emplace_back("x", Interval(-2, 2));
    disk.variables.emplace_back("y", Interval(-2, 2));
    disk.inequalities.push_back(parse("x^2 + y^2 - 1"));
    PaveConfig pcfg;
    pcfg.epsilon = 0.1;
    pcfg.bc.precision = BcPrecision::WidthTau;
    pcfg.bc.tau = 0.0125;
    pcfg.bc.max_rounds = 2;
    Paving p = pave(disk, initial(disk), pcfg);
    long disk_samples = 0;
    while (disk_samples < 20000) {
        double x = g.uniform(-2, 2), yv = g.uniform(-2, 2);
        if (x * x + yv * yv > 1.0) continue;
        ++disk_samples;
        ++samples;
        bool covered = false;
        for (const auto& bx : p.inner)
            if (bx.dom[0].contains(x) && bx.dom[1].contains(yv)) { covered = true; break; }
        if (!covered)
            for (const auto& bx : p.boundary)
                if (bx.dom[0].contains(x) && bx.dom[1].contains(yv)) { covered = true; break; }
        if (!covered) ok = false;
    }
    report(7, ok && samples >= 100000,
           "no sampled true solution excluded by reduction, consistency, or paving (" +
               std::to_string(samples) + " samples)");
}

// --- criterion 8: disk paving bracket ----------------------------------------

void criterion_8() {
    SystemSpec disk;
    disk.variables.emplace_back("x", Interval(-2, 2));
    disk.variables.emplace_back("y", Interval(-2, 2));
    disk.inequalities.push_back(parse("x^2 + y^2 - 1"));
    PaveConfig cfg;
    cfg.epsilon = 0.02;
    cfg.bc.precision = BcPrecision::WidthTau;
    cfg.bc.tau = cfg.epsilon / 8;
    cfg.bc.max_rounds = 2;

    double t0 = now_s();
    Paving p = pave(disk, initial(disk), cfg);
    double dt = now_s() - t0;

    double inner = 0, boundary = 0;
    for (const auto& b : p.inner) inner += box_volume(b);
    for (const auto& b : p.boundary) boundary += box_volume(b);
    double outer = inner + boundary;
    bool ok = inner <= M_PI && M_PI <= outer && (outer - inner) <= 0.15 && dt < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "disk paving at eps=0.02 brackets pi: [%.4f, %.4f], gap %.4f, %.2f s",
                  inner, outer, outer - inner, dt);
    report(8, ok, buf);
}

// --- criterion 9: reduction operator laws ------------------------------------

void criterion_9() {
    Gen g(90009);
    bool ok = true;
    for (int t = 0; t < 10000; ++t) {
        Csp csp;
        for (int i = 0; i < 3; ++i) {
            csp.vars.push_back({"x" + std::to_string(i), VarKind::External});
            csp.initial.dom.push_back(g.interval());
        }
        Constraint c;
        // variable slots are distinct within a constraint, as the compiler emits
        std::vector<int> free = {0, 1, 2};
        auto var_slot = [&] {
            int j = g.pick(static_cast<int>(free.size()));
            int v = free[j];
            free.erase(free.begin() + j);
            return Operand::of_var(v);
        };
        auto operand = [&] {
            if (g.chance(0.2)) return Operand::of_const(g.interval(-4, 4));
            return var_slot();
        };
        switch (g.pick(4)) {
            case 0: c.kind = CKind::Sum;  c.a = operand(); c.b = operand(); c.z = operand(); break;
            case 1: c.kind = CKind::Prod; c.a = operand(); c.b = operand(); c.z = operand(); break;
            case 2: {
                c.kind = CKind::UnaryLink;
                UnaryFn fns[] = {{UnaryOp::Neg, 0}, {UnaryOp::Exp, 0}, {UnaryOp::Sqrt, 0},
                                 {UnaryOp::Pow, 2}, {UnaryOp::Pow, 3}, {UnaryOp::Cos, 0}};
                c.fn = fns[g.pick(6)];
                c.a = var_slot();
                c.z = var_slot();
                break;
            }
            default: c.kind = CKind::AllEq; c.members = {0, 1, 2}; break;
        }
        csp.constraints = {c};
        csp.depth = {1};
        csp.expr_of = {0};
        csp.rebuild_var_index();

        Box b = csp.initial;
        ReductionOutcome o = reduce(csp, csp.constraints[0], b);
        Box once = b;
        apply(once, o);
        if (o.failed) continue;
        for (int i = 0; i < 3; ++i)
            if (!b[i].contains(once[i])) ok = false;                       // contracting
        if (!is_fixpoint(csp, csp.constraints[0], once)) ok = false;       // idempotent

        Box smaller = b;
        for (int i = 0; i < 3; ++i) {
            double p1 = g.point_in(b[i]), p2 = g.point_in(b[i]);
            smaller[i] = Interval(std::min(p1, p2), std::max(p1, p2));
        }
        ReductionOutcome os = reduce(csp, csp.constraints[0], smaller);
        Box small_out = smaller;
        apply(small_out, os);
        if (!os.failed)
            for (int i = 0; i < 3; ++i)
                if (!once[i].contains(small_out[i])) ok = false;           // monotone
    }
    report(9, ok, "reduction operators contracting, idempotent, monotone on 10000 pairs");
}

// --- criterion 10: CLI determinism -------------------------------------------

std::string capture(const std::string& cmd, int* code) {
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) { *code = -1; return ""; }
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    *code = WEXITSTATUS(pclose(p));
    return out;
}

void criterion_10(const std::string& cli) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("boxprop_accept_" + std::to_string(getpid()));
    fs::create_directories(dir);
    auto file = [&](const char* name, const char* content) {
        fs::path f = dir / name;
        std::ofstream(f) << content;
        return f.string();
    };
    std::string circle = file("circle.csp",
                              "var x in [-2,2];\nvar y in [-2,2];\nx^2 + y^2 - 1 <= 0;\n");
    std::string divsys = file("div.csp",
                              "var x1 in [1,2];\nvar x2 in [-1,1];\nx1 / x2 <= 0;\n");
    std::string infeas = file("inf.csp", "var x in [-10,10];\nx^2 + 1 <= 0;\n");

    std::vector<std::string> cmds = {
        cli + " eval " + circle,
        cli + " eval --stats --format json " + circle,
        cli + " consist " + circle,
        cli + " consist --bc-mode functional " + circle,
        cli + " consist --stats --hex-floats " + divsys,
        cli + " consist " + infeas,
        cli + " solve --epsilon 0.25 " + circle,
        cli + " solve --epsilon 0.1 --format json --hex-floats " + circle,
    };
    bool ok = true;
    for (const auto& c : cmds) {
        int c1, c2;
        std::string o1 = capture(c, &c1), o2 = capture(c, &c2);
        if (c1 != c2 || o1 != o2) ok = false;
    }
    fs::remove_all(dir);
    report(10, ok, "every CLI invocation repeated is byte-identical (output and exit code)");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <cli binary>\n");
        return 2;
    }
    Corpus corpus = make_corpus(1000);
    criteria_1_2(corpus);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argv[1]);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}

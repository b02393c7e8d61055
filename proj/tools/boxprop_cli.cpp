// Command-line front end: parse a system file, then evaluate, contract, or
// pave. Exit codes: 0 success, 1 proven infeasible, 2 parse error, 3 budget
// exceeded, 4 bad flags.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxprop/box_consistency.hpp"
#include "boxprop/paver.hpp"

using nlohmann::ordered_json;
using namespace boxprop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFlags = 4;

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string strip_comments(const std::string& text) {
    std::string out;
    bool in_comment = false;
    for (char ch : text) {
        if (ch == '#') in_comment = true;
        if (ch == '\n') in_comment = false;
        out.push_back(in_comment ? ' ' : ch);
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

ExprPtr negated(const ExprPtr& e) { return Expr::unary(UnaryFn{UnaryOp::Neg, 0}, e); }

// Statements are `var <name> in [<lb>,<rb>];` declarations and
// `<expr> <= 0;` inequalities (`>= 0` and `= 0` sugar included).
SystemSpec parse_system(const std::string& text) {
    SystemSpec s;
    std::string clean = strip_comments(text);
    size_t pos = 0;
    int stmt_no = 0;
    while (pos < clean.size()) {
        size_t semi = clean.find(';', pos);
        if (semi == std::string::npos) {
            if (!trim(clean.substr(pos)).empty())
                throw ParseFailure("statement missing terminating ';'");
            break;
        }
        std::string stmt = trim(clean.substr(pos, semi - pos));
        pos = semi + 1;
        if (stmt.empty()) continue;
        ++stmt_no;

        if (stmt.rfind("var", 0) == 0 && stmt.size() > 3 && std::isspace(stmt[3])) {
            std::istringstream in(stmt.substr(4));
            std::string name, kw;
            in >> name >> kw;
            std::string rest;
            std::getline(in, rest);
            if (name.empty() || kw != "in")
                throw ParseFailure("statement " + std::to_string(stmt_no) +
                                   ": expected `var <name> in [lb,rb]`");
            if (s.domain_of(name))
                throw ParseFailure("variable `" + name + "` declared twice");
            Interval dom = parse_interval(trim(rest));
            if (dom.is_empty()) throw ParseFailure("variable `" + name + "` has an empty domain");
            s.variables.emplace_back(name, dom);
            continue;
        }

        size_t eq = stmt.find('=');
        if (eq == std::string::npos)
            throw ParseFailure("statement " + std::to_string(stmt_no) +
                               ": expected a `<= 0`, `>= 0` or `= 0` inequality");
        char rel = '=';
        size_t lhs_end = eq;
        if (eq > 0 && (stmt[eq - 1] == '<' || stmt[eq - 1] == '>')) {
            rel = stmt[eq - 1];
            lhs_end = eq - 1;
        }
        if (trim(stmt.substr(eq + 1)) != "0")
            throw ParseFailure("statement " + std::to_string(stmt_no) +
                               ": right-hand side must be 0");
        ExprPtr e = parse(trim(stmt.substr(0, lhs_end)));
        if (rel == '<') {
            s.inequalities.push_back(e);
        } else if (rel == '>') {
            s.inequalities.push_back(negated(e));
        } else {
            s.inequalities.push_back(e);
            s.inequalities.push_back(negated(e));
        }
    }
    if (s.inequalities.empty()) throw ParseFailure("no inequalities in input");
    for (const auto& g : s.inequalities)
        for (const std::string& v : variables_of(*g))
            if (!s.domain_of(v)) throw ParseFailure("variable `" + v + "` is not declared");
    return s;
}

struct Options {
    std::string file;
    std::string bc_mode = "relational";
    std::string format = "text";
    double epsilon = 0.0;
    bool have_epsilon = false;
    bool stats = false;
    bool hex_floats = false;
    bool no_rewrite = false;
    long budget = 0;   // 0: defaults
};

std::string fmt(const Interval& x, const Options& opt) {
    return opt.hex_floats ? to_string_hex(x) : to_string(x);
}

ordered_json interval_json(const Interval& x, const Options& opt) {
    if (x.is_empty()) return ordered_json::array();
    auto num = [&](double v) { return opt.hex_floats ? double_to_hex(v) : double_to_string(v); };
    return ordered_json::array({num(x.lb()), num(x.rb())});
}

long activation_budget(const Options& opt) {
    return opt.budget > 0 ? opt.budget : kDefaultActivationBudget;
}

BcConfig bc_config(const Options& opt) {
    BcConfig cfg;
    cfg.mode = opt.bc_mode == "functional" ? BcMode::Functional : BcMode::Relational;
    return cfg;
}

VarBox initial_box(const SystemSpec& s) {
    VarBox b;
    for (const auto& [name, dom] : s.variables) b.dom.push_back(dom);
    return b;
}

// ---- eval: natural interval values and the selective-initialization run ----

int run_eval(const SystemSpec& sys, const Options& opt) {
    SystemSpec s = opt.no_rewrite ? sys : rewrite_single_occurrence(sys);
    Csp csp = compile_system(s, RootRel::None);
    GpaResult r = psi_evaluate(csp, csp.initial, activation_budget(opt));

    Env env;
    for (const auto& [name, dom] : s.variables) env[name] = dom;

    bool single_pass = true;
    for (long a : r.stats.activations) single_pass = single_pass && a <= 1;

    ordered_json out;
    out["expressions"] = ordered_json::array();
    std::ostringstream text;
    for (size_t j = 0; j < s.inequalities.size(); ++j) {
        Interval natural = eval_natural(*s.inequalities[j], env);
        Interval propagated = r.failed() ? Interval::empty() : r.box[csp.root_var_of_expr[j]];
        text << "g" << j + 1 << " = " << fmt(natural, opt)
             << "  propagated = " << fmt(propagated, opt)
             << (natural.same(propagated) ? "  (equal)" : "  (differs)") << "\n";
        ordered_json rec;
        rec["natural"] = interval_json(natural, opt);
        rec["propagated"] = interval_json(propagated, opt);
        rec["equal"] = natural.same(propagated);
        out["expressions"].push_back(rec);
    }
    text << "activations = " << r.stats.total_activations
         << "  single_pass = " << (single_pass ? "yes" : "no") << "\n";
    out["activations"] = r.stats.total_activations;
    out["single_pass"] = single_pass;
    if (opt.stats) {
        text << r.stats.to_text();
        out["stats"] = r.stats.to_text();
    }

    if (opt.format == "json") std::cout << out.dump(2) << "\n";
    else std::cout << text.str();
    return kExitOk;
}

// ---- consist: box-consistent domains, both trial flavors -------------------

int run_consist(const SystemSpec& sys, const Options& opt) {
    VarBox b = initial_box(sys);
    BcConfig cfg = bc_config(opt);

    BcConfig fcfg = cfg;
    fcfg.mode = BcMode::Functional;
    BcResult functional = functional_bc(sys, b, fcfg);
    RelationalContext ctx(sys, !opt.no_rewrite);
    BcResult relational = relational_bc(ctx, b, cfg);
    const BcResult& chosen = cfg.mode == BcMode::Functional ? functional : relational;

    ordered_json out;
    out["mode"] = cfg.mode == BcMode::Functional ? "functional" : "relational";
    out["infeasible"] = chosen.failed;
    out["variables"] = ordered_json::array();
    std::ostringstream text;
    if (chosen.failed) {
        text << "infeasible\n";
    } else {
        for (size_t i = 0; i < sys.variables.size(); ++i) {
            const Interval& rel = relational.box.dom[i];
            const Interval& fun = functional.box.dom[i];
            const Interval& sel = chosen.box.dom[i];
            text << sys.variables[i].first << " = " << fmt(sel, opt)
                 << "  (functional " << fmt(fun, opt)
                 << ", relational " << (relational.failed ? "empty" : fmt(rel, opt)) << ")\n";
            ordered_json rec;
            rec["name"] = sys.variables[i].first;
            rec["domain"] = interval_json(sel, opt);
            rec["functional"] = interval_json(fun, opt);
            rec["relational"] =
                relational.failed ? ordered_json::array() : interval_json(rel, opt);
            out["variables"].push_back(rec);
        }
    }
    if (opt.stats) {
        text << "trial_propagations = " << chosen.trial_propagations << "\n";
        out["trial_propagations"] = chosen.trial_propagations;
    }

    if (opt.format == "json") std::cout << out.dump(2) << "\n";
    else std::cout << text.str();
    return chosen.failed ? kExitInfeasible : kExitOk;
}

// ---- solve: branch-and-prune paving ----------------------------------------

int run_solve(const SystemSpec& sys, const Options& opt) {
    PaveConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.bc = bc_config(opt);
    cfg.bc.precision = BcPrecision::WidthTau;
    cfg.bc.tau = opt.epsilon / 8;
    cfg.bc.max_rounds = 2;
    if (opt.budget > 0) cfg.max_boxes = opt.budget;

    Paving p = pave(sys, initial_box(sys), cfg);

    auto box_json = [&](const VarBox& vb) {
        ordered_json rec;
        for (size_t i = 0; i < sys.variables.size(); ++i)
            rec[sys.variables[i].first] = interval_json(vb.dom[i], opt);
        return rec;
    };
    auto box_text = [&](const char* status, const VarBox& vb) {
        std::ostringstream line;
        line << status;
        for (size_t i = 0; i < sys.variables.size(); ++i)
            line << " " << sys.variables[i].first << "=" << fmt(vb.dom[i], opt);
        return line.str();
    };

    if (opt.format == "json") {
        ordered_json out;
        out["epsilon"] = double_to_string(p.epsilon);
        out["inner"] = ordered_json::array();
        for (const auto& vb : p.inner) out["inner"].push_back(box_json(vb));
        out["boundary"] = ordered_json::array();
        for (const auto& vb : p.boundary) out["boundary"].push_back(box_json(vb));
        out["failed"] = p.failed;
        out["budget_exhausted"] = p.budget_exhausted;
        if (opt.stats) {
            out["inner_count"] = p.inner.size();
            out["boundary_count"] = p.boundary.size();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& vb : p.inner) std::cout << box_text("inner", vb) << "\n";
        for (const auto& vb : p.boundary) std::cout << box_text("boundary", vb) << "\n";
        if (opt.stats)
            std::cout << "inner = " << p.inner.size() << "  boundary = " << p.boundary.size()
                      << "  discarded = " << p.failed << "\n";
    }

    if (p.budget_exhausted) return kExitBudget;
    if (p.inner.empty() && p.boundary.empty()) return kExitInfeasible;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval branch-and-prune solver for systems of inequalities"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("BOXPROP_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) opt.budget = v;
    }

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "system file")->required();
        sub->add_option("--bc-mode", opt.bc_mode, "contraction trials")
            ->check(CLI::IsMember({"functional", "relational"}));
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--budget", opt.budget, "box/activation budget")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--stats", opt.stats, "append propagation statistics");
        sub->add_flag("--hex-floats", opt.hex_floats, "print bounds as hex floats");
        sub->add_flag("--no-rewrite", opt.no_rewrite,
                      "skip single-occurrence rewriting (A/B experiments)");
    };

    CLI::App* eval = app.add_subcommand("eval", "interval values of each expression");
    add_common(eval);
    CLI::App* consist = app.add_subcommand("consist", "box-consistent variable domains");
    add_common(consist);
    CLI::App* solve = app.add_subcommand("solve", "pave the solution set");
    add_common(solve);
    CLI::Option* eps = solve->add_option("--epsilon", opt.epsilon, "boundary box width")
                           ->check(CLI::PositiveNumber)
                           ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitFlags;
    }
    opt.have_epsilon = eps->count() > 0;

    std::ifstream in(opt.file);
    if (!in) {
        std::cerr << "error: cannot read " << opt.file << "\n";
        return kExitParse;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    try {
        SystemSpec sys = parse_system(buf.str());
        if (eval->parsed()) return run_eval(sys, opt);
        if (consist->parsed()) return run_consist(sys, opt);
        return run_solve(sys, opt);
    } catch (const ParseFailure& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFlags;
    }
}

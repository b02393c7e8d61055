#include "boxprop/paver.hpp"

#include <cmath>
#include <stdexcept>

namespace boxprop {

BoxClass classify(const SystemSpec& s, const VarBox& b) {
    Env env;
    for (size_t i = 0; i < s.variables.size(); ++i) env[s.variables[i].first] = b.dom[i];
    for (const auto& g : s.inequalities) {
        Interval ev = eval_natural(*g, env);
        if (ev.is_empty() || !(ev.rb() <= 0.0)) return BoxClass::Boundary;
    }
    return BoxClass::Inner;
}

double box_width(const VarBox& b) {
    double w = 0.0;
    for (const Interval& x : b.dom) w = std::max(w, width(x));
    return w;
}

double box_volume(const VarBox& b) {
    double v = 1.0;
    for (const Interval& x : b.dom) v *= width(x);
    return v;
}

namespace {

size_t widest_dim(const VarBox& b) {
    size_t best = 0;
    double bw = -1.0;
    for (size_t i = 0; i < b.dom.size(); ++i) {
        double w = width(b.dom[i]);
        if (w > bw) { bw = w; best = i; }
    }
    return best;
}

}  // namespace

Paving pave(const SystemSpec& s, const VarBox& b, const PaveConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("pave: epsilon must be positive");
    if (b.dom.size() != s.variables.size())
        throw std::invalid_argument("pave: box/variable arity mismatch");
    for (const Interval& x : b.dom) {
        if (x.is_empty()) throw std::invalid_argument("pave: empty initial domain");
        if (std::isinf(x.lb()) || std::isinf(x.rb()))
            throw std::invalid_argument("pave: initial domains must be bounded");
    }

    Paving out;
    out.epsilon = cfg.epsilon;

    RelationalContext ctx(s);
    auto prune = [&](const VarBox& box) {
        return cfg.bc.mode == BcMode::Functional ? functional_bc(s, box, cfg.bc)
                                                 : relational_bc(ctx, box, cfg.bc);
    };

    std::vector<VarBox> stack{b};
    long processed = 0;
    while (!stack.empty()) {
        if (processed >= cfg.max_boxes) {
            out.budget_exhausted = true;
            for (auto& rest : stack) out.boundary.push_back(std::move(rest));
            break;
        }
        VarBox cur = std::move(stack.back());
        stack.pop_back();
        ++processed;

        BcResult pruned = prune(cur);
        if (pruned.failed) {
            ++out.failed;
            continue;
        }
        cur = std::move(pruned.box);

        if (classify(s, cur) == BoxClass::Inner) {
            out.inner.push_back(std::move(cur));
            continue;
        }
        if (box_width(cur) <= cfg.epsilon) {
            out.boundary.push_back(std::move(cur));
            continue;
        }

        size_t d = widest_dim(cur);
        double m = midpoint(cur.dom[d]);
        VarBox lowhalf = cur, highhalf = cur;
        lowhalf.dom[d] = Interval(cur.dom[d].lb(), m);
        highhalf.dom[d] = Interval(m, cur.dom[d].rb());
        stack.push_back(std::move(highhalf));
        stack.push_back(std::move(lowhalf));   // processed first: left-to-right sweep
    }
    return out;
}

}  // namespace boxprop

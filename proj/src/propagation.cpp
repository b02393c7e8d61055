#include "boxprop/propagation.hpp"

#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace boxprop {

std::string PropagationStats::to_text() const {
    std::ostringstream os;
    os << "outcome " << (outcome == PropagationOutcome::Fixpoint ? "fixpoint" : "failure") << "\n";
    os << "total_activations " << total_activations << "\n";
    os << "effective_activations " << effective_activations << "\n";
    for (size_t i = 0; i < activations.size(); ++i)
        os << "activations[" << i << "] " << activations[i] << "\n";
    return os.str();
}

namespace {

/// Ordered no-duplicate pool of constraint indices.
class ActiveSet {
public:
    ActiveSet(const Csp& c, Discipline d) : csp_(c), disc_(d), live_seq_(c.constraints.size(), -1) {}

    bool empty() const { return count_ == 0; }

    void add(int ci) {
        if (live_seq_[ci] >= 0) return;
        live_seq_[ci] = next_seq_++;
        ++count_;
        if (disc_ == Discipline::Fifo) fifo_.push_back({live_seq_[ci], ci});
        else prio_.insert(key(ci));
    }

    int peek() {
        if (disc_ == Discipline::Fifo) {
            // drop stale entries (removed or superseded)
            while (!fifo_.empty() && live_seq_[fifo_.front().second] != fifo_.front().first)
                fifo_.pop_front();
            return fifo_.front().second;
        }
        return prio_.begin()->second;
    }

    void remove(int ci) {
        if (live_seq_[ci] < 0) return;
        if (disc_ != Discipline::Fifo) prio_.erase(key(ci));
        live_seq_[ci] = -1;
        --count_;
    }

private:
    std::pair<long, int> key(int ci) const {
        long depth = csp_.depth[ci];
        long k = disc_ == Discipline::DeepestFirst ? -depth : depth;
        return {k, ci};
    }

    const Csp& csp_;
    Discipline disc_;
    std::vector<long> live_seq_;   // -1 = not in set
    long next_seq_ = 0;
    std::deque<std::pair<long, int>> fifo_;
    std::set<std::pair<long, int>> prio_;
    int count_ = 0;
};

}  // namespace

std::vector<int> all_constraints(const Csp& c) {
    std::vector<int> out(c.constraints.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
}

GpaResult gpa(const Csp& c, Box b, const std::vector<int>& init, Discipline d,
              long activation_budget) {
    GpaResult res;
    res.stats.activations.assign(c.constraints.size(), 0);

    ActiveSet active(c, d);
    for (int ci : init) {
        if (ci < 0 || ci >= static_cast<int>(c.constraints.size()))
            throw std::invalid_argument("init constraint index out of range");
        active.add(ci);
    }

    while (!active.empty()) {
        int ci = active.peek();

        ReductionOutcome out = reduce(c, c.constraints[ci], b);
        ++res.stats.activations[ci];
        ++res.stats.total_activations;
        if (!out.updates.empty()) ++res.stats.effective_activations;
        if (res.stats.total_activations > activation_budget)
            throw BudgetExceeded("propagation activation budget exceeded");

        apply(b, out);
        if (out.failed) {
            res.stats.outcome = PropagationOutcome::Failure;
            res.box = std::move(b);
            return res;
        }
        for (const auto& [v, dom] : out.updates)
            for (int other : c.constraints_of_var[v]) active.add(other);
        active.remove(ci);
    }
    res.stats.outcome = PropagationOutcome::Fixpoint;
    res.box = std::move(b);
    return res;
}

GpaResult psi_evaluate(const Csp& c, Box b, long activation_budget) {
    return gpa(c, std::move(b), peripheral_set(c), Discipline::DeepestFirst, activation_budget);
}

GpaResult psi_reactivate(const Csp& c, const Box& fixpoint, int v, const Interval& shrunk_req,
                         long activation_budget) {
    if (v < 0 || v >= static_cast<int>(c.vars.size()))
        throw std::invalid_argument("psi_reactivate: no such variable");
    // only the part inside the current domain matters; the rest is already excluded
    Interval shrunk = intersect(fixpoint[v], shrunk_req);
    if (!fixpoint[v].proper_superset_of(shrunk))
        throw std::invalid_argument("psi_reactivate: new domain is not a proper subset");
    const auto& touching = c.constraints_of_var[v];
    if (touching.size() != 1)
        throw std::invalid_argument("psi_reactivate: variable occurs in " +
                                    std::to_string(touching.size()) + " constraints, need 1");
    Box b = fixpoint;
    b[v] = shrunk;
    if (shrunk.is_empty()) {
        GpaResult res;
        res.stats.activations.assign(c.constraints.size(), 0);
        res.stats.outcome = PropagationOutcome::Failure;
        res.box = std::move(b);
        return res;
    }
    return gpa(c, std::move(b), {touching.front()}, Discipline::ShallowestFirst, activation_budget);
}

bool count_single_pass(const Csp& c, const Box& fixpoint, int v, const Interval& shrunk) {
    GpaResult r = psi_reactivate(c, fixpoint, v, shrunk);
    for (long n : r.stats.activations)
        if (n > 1) return false;
    return true;
}

}  // namespace boxprop

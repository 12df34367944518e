#ifndef GPBTHETA_EXPERIMENT_HPP
#define GPBTHETA_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "descent.hpp"
#include "field.hpp"
#include "generate.hpp"
#include "gpb.hpp"
#include "serialization.hpp"
#include "stability.hpp"
#include "theta.hpp"

namespace gpbtheta {

struct ExperimentConfig {
    GenConfig gen;
    /// Exhaustive stability for rank <= 2 (rank 3 always falls back to the
    /// randomized search, disclosed per record). Off means randomized for all.
    bool exhaustive = true;
    /// Side of the lambda grid {1..n}^g for the necessity check; 0 disables it.
    int lambda_grid = 0;
    std::size_t stability_samples = 2000;
    /// Elapsed times make reports non-reproducible, so they are opt-in.
    bool timings = false;
};

struct Tally {
    std::size_t checked = 0;
    std::size_t violations = 0;
};

/// Everything computed for one instance; `record` is the JSON-lines entry.
struct InstanceOutcome {
    json record;
    std::string stability;
    bool theorem_applies = false;  // semistable or randomized-no-destabilizer
    Tally theta, necessity, vanishing, pair, chi;
    std::size_t grid_positive = 0;
    bool repaired = false;  // constructed gluing failed, a searched one works
    std::optional<std::string> error;
};

/// Worker count: GPBTHETA_WORKERS if set, else the hardware concurrency.
inline std::size_t worker_count() {
    if (const char* env = std::getenv("GPBTHETA_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("GPBTHETA_WORKERS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <Field F>
void check_experiment_config(const F& k, const ExperimentConfig& c) {
    check_gen_config(k, c.gen);
    if (c.gen.genus.lo < 2) throw std::invalid_argument("theorem experiments need genus >= 2");
    if (c.gen.count < 1) throw std::invalid_argument("instance count must be at least 1");
    if (k.size() != 0 && k.characteristic() <= static_cast<std::uint64_t>(2 * c.gen.rank.hi + 1))
        throw std::invalid_argument("prime must exceed 2r+1 = " + std::to_string(2 * c.gen.rank.hi + 1));
    if (c.lambda_grid < 0) throw std::invalid_argument("lambda grid size must be nonnegative");
    if (k.size() != 0 && static_cast<std::uint64_t>(c.lambda_grid) >= k.size())
        throw std::invalid_argument("lambda grid would reach 0 in the prime field");
}

/// All lambda in {1..n}^g, first coordinate fastest.
template <Field F>
std::vector<std::vector<typename F::value_type>> lambda_grid(const F& k, std::size_t g, int n) {
    std::vector<std::vector<typename F::value_type>> out;
    std::vector<int> idx(g, 1);
    if (n <= 0) return out;
    for (;;) {
        std::vector<typename F::value_type> lam;
        for (int x : idx) lam.push_back(k.from_int(x));
        out.push_back(std::move(lam));
        std::size_t pos = 0;
        while (pos < g && ++idx[pos] > n) idx[pos++] = 1;
        if (pos == g) return out;
    }
}

template <Field F>
InstanceOutcome run_instance(const F& k, const ExperimentConfig& c, std::uint64_t id) {
    const auto start = std::chrono::steady_clock::now();
    InstanceOutcome out;
    json& rec = out.record;
    rec["schema"] = kSchema;
    rec["id"] = id;
    const Gpb<F> v = generate_instance(k, c.gen, id);
    rec["instance"] = to_json(v);
    std::vector<std::string> violations;

    StabilityOptions opt;
    opt.seed = splitmix64(c.gen.seed ^ (id + 0x5bd1e995ULL));
    opt.samples = c.stability_samples;
    const bool exhaustive = c.exhaustive && v.rank() <= 2;
    const StabilityVerdict<F> verdict =
        is_semistable(v, exhaustive ? StabilityMode::exhaustive : StabilityMode::randomized, opt);
    out.stability = to_string(verdict.status);
    out.theorem_applies = !verdict.unstable();
    rec["stability"] = to_json(verdict);

    // chi cross-check
    const CastelnuovoCurve<F> x(v.line());
    const DescentInvariants inv = descended_invariants(v, x);
    ++out.chi.checked;
    const bool chi_ok = inv.euler_char_X == inv.euler_char_rr;
    if (!chi_ok) {
        ++out.chi.violations;
        violations.push_back("chi");
    }
    rec["chi"] = {{"exact_sequence", inv.euler_char_X}, {"riemann_roch", inv.euler_char_rr}, {"agree", chi_ok}};

    // constructive theta line
    const ThetaLineSpec<F> l = choose_theta_glue(v);
    const HomSpace<F> homs = hom_space(theta_line(l, v.line()), v);
    const ThetaPolynomial<F> theta = product_theta(v);
    rec["lambda"] = to_json(k, l.lambda);
    rec["hom_dim"] = homs.dimension;
    rec["product_value"] = to_json(k, theta.expanded.eval(l.lambda));
    json d_values = json::array();
    for (const auto& f : homs.basis) d_values.push_back(vanishing_bound_check(f, v).d);
    rec["vanishing_d"] = std::move(d_values);
    if (out.theorem_applies) {
        ++out.theta.checked;
        if (homs.dimension != 0) {
            ++out.theta.violations;
            violations.push_back("theta");
            json basis = json::array();
            for (const auto& f : homs.basis) basis.push_back(to_json(f.underlying));
            rec["hom_basis"] = std::move(basis);
            // does some other gluing work?
            const auto found = find_theta_line(v);
            rec["searched_lambda"] = found ? to_json(k, found->lambda) : json(nullptr);
            if (found) out.repaired = true;
        }
    }
    rec["theta_verified"] = homs.dimension == 0;

    // lambda grid: necessity of the product equation, vanishing bound on every hom found
    if (c.lambda_grid > 0) {
        std::size_t points = 0;
        json necessity_witnesses = json::array();
        for (const auto& lam : lambda_grid(k, v.genus(), c.lambda_grid)) {
            ++points;
            const HomSpace<F> h = hom_space(Gpb<F>::line_bundle(1 - static_cast<int>(v.genus()), v.line(), lam), v);
            if (h.dimension == 0) continue;
            ++out.grid_positive;
            ++out.necessity.checked;
            if (!k.is_zero(theta.expanded.eval(lam))) {
                ++out.necessity.violations;
                if (necessity_witnesses.size() < 5)
                    necessity_witnesses.push_back({{"lambda", to_json(k, lam)}, {"hom_dim", h.dimension}});
            }
            if (!verdict.semistable()) continue;
            for (const auto& f : h.basis) {
                const VanishingReport r = vanishing_bound_check(f, v);
                ++out.vanishing.checked;
                ++out.pair.checked;
                if (!r.ok) ++out.vanishing.violations;
                if (!r.nonvanishing_contains_pair) ++out.pair.violations;
            }
        }
        if (out.necessity.violations) violations.push_back("necessity");
        if (out.vanishing.violations) violations.push_back("vanishing_bound");
        if (out.pair.violations) violations.push_back("pair");
        rec["grid"] = {{"size", c.lambda_grid},
                       {"points", points},
                       {"positive_hom", out.grid_positive},
                       {"necessity_violations", out.necessity.violations},
                       {"necessity_witnesses", std::move(necessity_witnesses)},
                       {"vanishing_bound_checked", out.vanishing.checked},
                       {"vanishing_bound_violations", out.vanishing.violations},
                       {"pair_violations", out.pair.violations}};
    }
    rec["violations"] = violations;
    if (c.timings)
        rec["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

struct ExperimentResult {
    json summary;
    bool failed = false;   ///< some theorem-level invariant was violated
    bool errored = false;  ///< some instance could not be processed
};

/*
 * Runs the batch on a bounded worker pool. Records are written to `report`
 * in instance-id order once all workers finish.
 */
template <Field F>
ExperimentResult run_experiment(const F& k, const ExperimentConfig& c, std::ostream* report) {
    check_experiment_config(k, c);
    std::vector<InstanceOutcome> outcomes(c.gen.count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t id; (id = next.fetch_add(1)) < c.gen.count;) {
            try {
                outcomes[id] = run_instance(k, c, id);
            } catch (const std::exception& e) {
                outcomes[id].error = e.what();
                outcomes[id].record = {{"schema", kSchema}, {"id", id}, {"error", e.what()}};
            }
        }
    };
    const std::size_t n = std::min(worker_count(), c.gen.count);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    ExperimentResult res;
    Tally theta, necessity, vanishing, pair, chi;
    std::size_t grid_positive = 0, repaired = 0;
    json stability = json::object();
    json failing = json::array();
    json errors = json::array();
    for (std::size_t id = 0; id < outcomes.size(); ++id) {
        const auto& o = outcomes[id];
        if (report) *report << o.record.dump() << '\n';
        if (o.error) {
            res.errored = true;
            errors.push_back({{"id", id}, {"error", *o.error}});
            continue;
        }
        stability[o.stability] = stability.value(o.stability, 0) + 1;
        for (auto [acc, add] : {std::pair{&theta, &o.theta}, {&necessity, &o.necessity}, {&vanishing, &o.vanishing},
                                {&pair, &o.pair}, {&chi, &o.chi}}) {
            acc->checked += add->checked;
            acc->violations += add->violations;
        }
        grid_positive += o.grid_positive;
        repaired += o.repaired;
        if (!o.record["violations"].empty()) failing.push_back(id);
    }
    if (report && !*report) res.errored = true;

    auto tally = [](const Tally& t) {
        return json{{"checked", t.checked}, {"passed", t.checked - t.violations}, {"violations", t.violations}};
    };
    res.failed = theta.violations || necessity.violations || vanishing.violations || pair.violations || chi.violations;
    res.summary = {{"schema", kSchema},
                   {"config",
                    {{"seed", c.gen.seed},
                     {"field", k.spec()},
                     {"genus", c.gen.genus.str()},
                     {"rank", c.gen.rank.str()},
                     {"count", c.gen.count},
                     {"mode", c.exhaustive ? "exhaustive" : "randomized"},
                     {"lambda_grid", c.lambda_grid},
                     {"max_twist", c.gen.params.max_twist}}},
                   {"instances", c.gen.count},
                   {"stability", stability},
                   {"invariants",
                    {{"theta_vanishing", tally(theta)},
                     {"product_necessity", tally(necessity)},
                     {"vanishing_bound", tally(vanishing)},
                     {"nonvanishing_pair", tally(pair)},
                     {"chi_agreement", tally(chi)}}},
                   {"grid_positive_hom_points", grid_positive},
                   {"theta_line_found_by_search", repaired},
                   {"failing_instances", failing},
                   {"errors", errors},
                   {"partial", res.errored},
                   {"result", res.failed ? "FAIL" : (res.errored ? "ERROR" : "PASS")}};
    return res;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_EXPERIMENT_HPP

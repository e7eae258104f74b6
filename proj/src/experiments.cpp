// experiments.cpp
#include "sftlab/experiments.hpp"

#include "sftlab/errors.hpp"
#include "sftlab/orbits.hpp"
#include "sftlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

namespace sftlab {

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Emptiness: return "emptiness";
    case ExperimentKind::Entropy: return "entropy";
    case ExperimentKind::Orbits: return "orbits";
    }
    return "emptiness";
}

ExperimentKind parse_kind(const std::string& s) {
    if (s == "emptiness") return ExperimentKind::Emptiness;
    if (s == "entropy") return ExperimentKind::Entropy;
    if (s == "orbits") return ExperimentKind::Orbits;
    throw DomainError("unknown experiment '" + s + "' (emptiness, entropy, orbits)");
}

namespace {

int auto_orbit_max(const ExperimentConfig& c) {
    return c.orbit_max > 0 ? c.orbit_max : std::min(12, orbit_size_budget(c.d));
}

int auto_jmax(const ExperimentConfig& c) {
    if (c.jmax > 0) return c.jmax;
    return c.d == 1 ? 20 : 4;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

} // namespace

void validate(const ExperimentConfig& c) {
    validate(EnsembleParams{c.alphabet, c.d, c.n, 0.5, c.seed});
    if (c.trials < 1) throw DomainError("trials must be >= 1");
    if (c.alphas.empty()) throw DomainError("at least one alpha is required");
    for (double a : c.alphas)
        if (!(a >= 0 && a <= 1)) throw DomainError("alpha must lie in [0,1]");
    if (c.orbit_max < 0 || auto_orbit_max(c) > orbit_size_budget(c.d))
        throw DomainError("orbit_max " + std::to_string(c.orbit_max) + " exceeds the orbit budget " +
                          std::to_string(orbit_size_budget(c.d)) + " for d=" + std::to_string(c.d));
    if (c.jmax < 0 || auto_jmax(c) > orbit_size_budget(c.d))
        throw DomainError("jmax " + std::to_string(c.jmax) + " exceeds the orbit budget " +
                          std::to_string(orbit_size_budget(c.d)) + " for d=" + std::to_string(c.d));
    if (c.k < 1) throw DomainError("k must be >= 1");
    if (c.kind == ExperimentKind::Entropy && c.k < c.n) throw DomainError("k must be >= n");
    if (c.boundary_samples < 1) throw DomainError("boundary_samples must be >= 1");
    if (c.d >= 2 && c.k_max < c.n) throw DomainError("k_max must be >= n");
    if (c.torus_max < 1) throw DomainError("torus_max must be >= 1");
    if (c.node_budget < 1) throw DomainError("node_budget must be >= 1");
    for (double e : c.eps)
        if (!(e > 0)) throw DomainError("eps values must be positive");
    if (!(c.sigmas > 0)) throw DomainError("sigmas must be positive");
}

unsigned worker_count(unsigned requested, std::uint64_t trials) {
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SFTLAB_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) w = std::min<unsigned>(w, static_cast<unsigned>(cap));
    }
    if (trials < w) w = static_cast<unsigned>(std::max<std::uint64_t>(trials, 1));
    return w;
}

namespace {

AlphaRow run_row(const ExperimentConfig& c, double alpha, const OrbitCatalog& catalog) {
    AlphaRow row;
    row.alpha = alpha;
    row.trials = c.trials;
    row.records.resize(c.trials);
    EnsembleParams p{c.alphabet, c.d, c.n, alpha, c.seed};
    SearchLimits lim{c.k_max, c.torus_max, c.node_budget};

    auto one = [&](std::uint64_t t) {
        auto w = sample(p, t);
        TrialRecord rec;
        rec.verdict = decide_empty(w, lim).verdict;
        rec.per_empty = !any_orbit_allowed(w, catalog);
        if (c.kind == ExperimentKind::Entropy) {
            auto e = entropy_estimate(w, c.k, c.boundary_samples);
            rec.h_upper = e.h_upper;
            rec.h_per_lower = e.h_per_lower;
        }
        row.records[t] = rec;
    };

    unsigned workers = worker_count(c.threads, c.trials);
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    for (unsigned wi = 0; wi < workers; ++wi) {
        std::uint64_t lo = c.trials * wi / workers, hi = c.trials * (wi + 1) / workers;
        pool.emplace_back([&, lo, hi, wi] {
            try {
                for (std::uint64_t t = lo; t < hi; ++t) one(t);
            } catch (...) {
                errs[wi] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    // fold in trial order
    std::vector<double> hu, hp;
    for (const auto& r : row.records) {
        if (r.verdict == Verdict::Empty) ++row.empty;
        else if (r.verdict == Verdict::NonEmpty) ++row.nonempty;
        else ++row.unknown;
        if (r.per_empty) ++row.per_empty;
        if (r.verdict == Verdict::NonEmpty && r.per_empty) ++row.gn_candidates;
        hu.push_back(finite_or_zero(r.h_upper));
        hp.push_back(finite_or_zero(r.h_per_lower));
    }
    const double n = double(row.trials);
    const double resolved = double(row.empty + row.nonempty);
    row.unknown_fraction = double(row.unknown) / n;
    row.p_empty = resolved > 0 ? double(row.empty) / resolved : 0;
    row.ci95 = resolved > 0 ? 1.96 * std::sqrt(row.p_empty * (1 - row.p_empty) / resolved) : 0;
    row.theory = zeta_inverse(c.alphabet, c.d, alpha, auto_jmax(c));
    double p0 = row.theory.value;
    row.sigma_theory = resolved > 0 ? std::sqrt(p0 * (1 - p0) / resolved) : 0;
    row.p_per_empty = double(row.per_empty) / n;
    row.per_ci95 = 1.96 * std::sqrt(row.p_per_empty * (1 - row.p_per_empty) / n);
    row.independence_bound = independence_upper_bound(c.alphabet, c.d, alpha, c.n);

    double x = alpha * c.alphabet;
    row.regime = std::abs(x - 1) < 1e-12 ? "critical" : (x < 1 ? "subcritical" : "supercritical");

    if (c.kind == ExperimentKind::Entropy) {
        row.h_target = x > 1 ? std::log(x) : 0.0;
        double mean = 0, m2 = 0;
        for (std::size_t i = 0; i < hu.size(); ++i) {
            double delta = hu[i] - mean;
            mean += delta / double(i + 1);
            m2 += delta * (hu[i] - mean);
        }
        row.h_upper_mean = mean;
        row.h_upper_sd = hu.size() > 1 ? std::sqrt(m2 / double(hu.size() - 1)) : 0;
        row.h_upper_median = median(hu);
        double pm = 0;
        for (double v : hp) pm += v;
        row.h_per_mean = pm / n;
        row.h_per_median = median(hp);
        for (double e : c.eps) {
            std::uint64_t du = 0, dp = 0;
            for (std::size_t i = 0; i < hu.size(); ++i) {
                if (std::abs(hu[i] - row.h_target) >= e) ++du;
                if (std::abs(hp[i] - row.h_target) >= e) ++dp;
            }
            row.dev_fraction.push_back(double(du) / n);
            row.per_dev_fraction.push_back(double(dp) / n);
        }
        std::uint64_t below = 0;
        for (double v : hp)
            if (v < row.h_target - c.per_margin) ++below;
        row.per_below_fraction = double(below) / n;
    }

    auto fail = [&](std::string why) {
        row.pass = false;
        row.failures.push_back(std::move(why));
    };
    switch (c.kind) {
    case ExperimentKind::Emptiness:
        if (!(row.unknown_fraction < c.unknown_ceiling)) fail("unknown fraction above ceiling");
        if (row.regime == "subcritical") {
            if (resolved == 0) fail("no resolved trials");
            else if (std::abs(row.p_empty - p0) > c.sigmas * row.sigma_theory) fail("P(empty) outside the sigma band");
            if (c.tail_max && !(row.theory.tail_bound < *c.tail_max)) fail("zeta tail bound above tail_max");
        } else if (row.regime == "supercritical") {
            if (!(row.p_empty < c.supercritical_max)) fail("P(empty) not below supercritical_max");
        }
        break;
    case ExperimentKind::Entropy: {
        std::uint64_t dev = 0;
        for (double v : hu)
            if (std::abs(v - row.h_target) >= c.entropy_eps) ++dev;
        if (!(double(dev) / n < c.entropy_max_fraction)) fail("h_upper deviation fraction too high");
        if (!(row.per_below_fraction < c.per_max_fraction)) fail("h_per_lower below-target fraction too high");
        break;
    }
    case ExperimentKind::Orbits: {
        if (c.d == 1 && row.gn_candidates != 0) fail("d=1 trial nonempty without a finite orbit");
        double b = row.independence_bound;
        if (row.p_per_empty > b + c.sigmas * std::sqrt(b * (1 - b) / n)) fail("P(Per empty) above the product bound");
        break;
    }
    }
    return row;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult res;
    res.config = cfg;
    OrbitCatalog catalog(cfg.alphabet, cfg.d, cfg.n, auto_orbit_max(cfg));
    for (double a : cfg.alphas) {
        res.rows.push_back(run_row(cfg, a, catalog));
        if (!res.rows.back().pass) res.pass = false;
    }
    return res;
}

ExperimentResult run_emptiness_experiment(ExperimentConfig cfg) {
    cfg.kind = ExperimentKind::Emptiness;
    return run_experiment(cfg);
}

ExperimentResult run_entropy_experiment(ExperimentConfig cfg) {
    cfg.kind = ExperimentKind::Entropy;
    return run_experiment(cfg);
}

ExperimentResult run_orbit_experiment(ExperimentConfig cfg) {
    cfg.kind = ExperimentKind::Orbits;
    return run_experiment(cfg);
}

// ---------------------------------------------------------------- output

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

nlohmann::json jnum(double x) {
    if (std::isfinite(x)) return x;
    return num(x);
}

} // namespace

std::string csv_header(const ExperimentConfig& c) {
    std::string h = "kind,d,alphabet,n,alpha,regime,trials,empty,nonempty,unknown,unknown_fraction,p_empty,ci95,"
                    "theory,theory_truncated,theory_tail,sigma_theory,per_empty,p_per_empty,per_ci95,"
                    "independence_bound,gn_candidates,h_target,h_upper_mean,h_upper_median,h_upper_sd";
    for (double e : c.eps) h += ",dev_" + num(e);
    h += ",h_per_mean,h_per_median";
    for (double e : c.eps) h += ",per_dev_" + num(e);
    h += ",per_below_fraction,pass";
    return h;
}

void write_csv(std::ostream& out, const ExperimentResult& r) {
    const auto& c = r.config;
    out << csv_header(c) << '\n';
    bool ent = c.kind == ExperimentKind::Entropy;
    for (const auto& row : r.rows) {
        out << to_string(c.kind) << ',' << c.d << ',' << c.alphabet << ',' << c.n << ',' << num(row.alpha) << ','
            << row.regime << ',' << row.trials << ',' << row.empty << ',' << row.nonempty << ',' << row.unknown << ','
            << num(row.unknown_fraction) << ',' << num(row.p_empty) << ',' << num(row.ci95) << ','
            << num(row.theory.value) << ',' << num(row.theory.truncated_value) << ',' << num(row.theory.tail_bound)
            << ',' << num(row.sigma_theory) << ',' << row.per_empty << ',' << num(row.p_per_empty) << ','
            << num(row.per_ci95) << ',' << num(row.independence_bound) << ',' << row.gn_candidates;
        auto opt = [&](double v) { out << ',' << (ent ? num(v) : ""); };
        opt(row.h_target);
        opt(row.h_upper_mean);
        opt(row.h_upper_median);
        opt(row.h_upper_sd);
        for (std::size_t i = 0; i < c.eps.size(); ++i) opt(ent ? row.dev_fraction[i] : 0);
        opt(row.h_per_mean);
        opt(row.h_per_median);
        for (std::size_t i = 0; i < c.eps.size(); ++i) opt(ent ? row.per_dev_fraction[i] : 0);
        opt(row.per_below_fraction);
        out << ',' << (row.pass ? "true" : "false") << '\n';
    }
}

nlohmann::json config_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["kind"] = to_string(c.kind);
    j["alphabet"] = c.alphabet;
    j["d"] = c.d;
    j["n"] = c.n;
    j["seed"] = c.seed;
    j["alphas"] = c.alphas;
    j["trials"] = c.trials;
    j["k"] = c.k;
    j["boundary_samples"] = c.boundary_samples;
    j["k_max"] = c.k_max;
    j["torus_max"] = c.torus_max;
    j["orbit_max"] = auto_orbit_max(c);
    j["node_budget"] = c.node_budget;
    j["jmax"] = auto_jmax(c);
    j["eps"] = c.eps;
    j["entropy_eps"] = c.entropy_eps;
    j["entropy_max_fraction"] = c.entropy_max_fraction;
    j["per_margin"] = c.per_margin;
    j["per_max_fraction"] = c.per_max_fraction;
    j["unknown_ceiling"] = c.unknown_ceiling;
    j["supercritical_max"] = c.supercritical_max;
    j["sigmas"] = c.sigmas;
    j["tail_max"] = c.tail_max ? nlohmann::json(*c.tail_max) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json summary_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = config_json(r.config);
    j["pass"] = r.pass;
    bool ent = r.config.kind == ExperimentKind::Entropy;
    for (const auto& row : r.rows) {
        nlohmann::json o;
        o["alpha"] = row.alpha;
        o["regime"] = row.regime;
        o["trials"] = row.trials;
        o["empty"] = row.empty;
        o["nonempty"] = row.nonempty;
        o["unknown"] = row.unknown;
        o["unknown_fraction"] = row.unknown_fraction;
        o["p_empty"] = row.p_empty;
        o["ci95"] = row.ci95;
        o["theory"] = {{"value", jnum(row.theory.value)},
                       {"truncated_value", jnum(row.theory.truncated_value)},
                       {"jmax", row.theory.jmax},
                       {"tail_bound", jnum(row.theory.tail_bound)},
                       {"tail_bound_coarse", jnum(row.theory.tail_bound_coarse)},
                       {"divergent", row.theory.divergent}};
        o["sigma_theory"] = row.sigma_theory;
        o["per_empty"] = row.per_empty;
        o["p_per_empty"] = row.p_per_empty;
        o["independence_bound"] = jnum(row.independence_bound);
        o["gn_candidates"] = row.gn_candidates;
        if (ent) {
            o["h_target"] = row.h_target;
            o["h_upper"] = {{"mean", row.h_upper_mean}, {"median", row.h_upper_median}, {"sd", row.h_upper_sd}};
            o["h_per_lower"] = {{"mean", row.h_per_mean}, {"median", row.h_per_median}};
            nlohmann::json dev = nlohmann::json::object(), pdev = nlohmann::json::object();
            for (std::size_t i = 0; i < r.config.eps.size(); ++i) {
                dev[num(r.config.eps[i])] = row.dev_fraction[i];
                pdev[num(r.config.eps[i])] = row.per_dev_fraction[i];
            }
            o["deviation_fraction"] = dev;
            o["per_deviation_fraction"] = pdev;
            o["per_below_fraction"] = row.per_below_fraction;
        }
        o["pass"] = row.pass;
        o["failures"] = row.failures;
        j["rows"].push_back(o);
    }
    return j;
}

double exact_empty_probability_tiny(double alpha) {
    double total = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        AllowedSet w(2, 1, 2);
        int bits = 0;
        for (unsigned c = 0; c < 4; ++c)
            if (mask >> c & 1u) {
                w.set(c);
                ++bits;
            }
        if (decide_empty_1d(w).verdict == Verdict::Empty)
            total += std::pow(alpha, bits) * std::pow(1 - alpha, 4 - bits);
    }
    return total;
}

} // namespace sftlab

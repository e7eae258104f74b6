// cli.cpp
#include "sftlab/cli.hpp"

#include "sftlab/analysis.hpp"
#include "sftlab/errors.hpp"
#include "sftlab/experiments.hpp"
#include "sftlab/repeatcover.hpp"
#include "sftlab/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace sftlab {

namespace {

using nlohmann::json;

json jnum(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

std::string big(const BigCount& c) { return c.str(); }

json orbit_json(const Orbit& g) {
    json fund = json::array();
    for (auto s : g.fundamental) fund.push_back(int(s));
    return {{"size", g.size()}, {"lattice", g.lattice.str()}, {"fundamental", fund}};
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return f;
}

struct EnsembleFlags {
    int d = 1, alphabet = 2, n = 8;
    double alpha = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string omega_in;

    void add(CLI::App* app, bool with_in) {
        app->add_option("--d", d, "Dimension (1..3)")->check(CLI::Range(1, 3));
        app->add_option("--alphabet", alphabet, "Alphabet size |A| (2..255)")->check(CLI::Range(2, 255));
        app->add_option("--n", n, "Window side n")->check(CLI::Range(1, 1 << 20));
        app->add_option("--alpha", alpha, "Retention probability")->check(CLI::Range(0.0, 1.0));
        app->add_option("--seed", seed, "Ensemble seed (generated and echoed when absent)");
        app->add_option("--trial", trial, "Trial index");
        if (with_in) app->add_option("--omega-in", omega_in, "Read the allowed set from this file");
    }

    // loads or samples; echoes the source in `echo`
    AllowedSet get(CLI::App* app, json& echo) {
        if (!omega_in.empty()) {
            auto f = open_in(omega_in);
            auto w = read_allowed_set(f);
            echo["omega_in"] = omega_in;
            echo["d"] = w.dim();
            echo["alphabet"] = w.alphabet();
            echo["n"] = w.n();
            echo["seed"] = w.seed;
            echo["trial"] = w.trial;
            return w;
        }
        if (app->count("--seed") == 0) {
            seed = fresh_seed();
            echo["seed_generated"] = true;
        }
        EnsembleParams p{alphabet, d, n, alpha, seed};
        validate(p);
        echo["d"] = d;
        echo["alphabet"] = alphabet;
        echo["n"] = n;
        echo["alpha"] = alpha;
        echo["seed"] = seed;
        echo["trial"] = trial;
        return sample(p, trial);
    }
};

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sftlab: random Z^d shifts of finite type", "sftlab"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key = value config file; flags override it");
    app.set_version_flag("--version", std::string(kVersion));

    // sample
    EnsembleFlags sf;
    std::string omega_out;
    auto* sample_cmd = app.add_subcommand("sample", "Sample an allowed set omega");
    sf.add(sample_cmd, false);
    sample_cmd->add_option("--omega-out", omega_out, "Write the allowed set to this file");

    // emptiness
    EnsembleFlags ef;
    SearchLimits lim;
    auto* empt = app.add_subcommand("emptiness", "Decide whether X_omega is empty");
    ef.add(empt, true);
    empt->add_option("--kmax", lim.k_max, "Largest F_k searched (d >= 2)")->check(CLI::Range(1, 64));
    empt->add_option("--torus-max", lim.torus_max, "Largest torus side tried (d >= 2)")->check(CLI::Range(1, 64));
    empt->add_option("--node-budget", lim.node_budget, "Backtracking nodes per search");

    // entropy
    EnsembleFlags nf;
    int ek = 40;
    std::uint64_t samples = 256;
    auto* entr = app.add_subcommand("entropy", "Pattern counts phi, psi and entropy bounds");
    nf.add(entr, true);
    entr->add_option("--k", ek, "Cube side k")->check(CLI::Range(1, 1000000));
    entr->add_option("--boundary-samples", samples, "Periodic boundaries sampled for psi")->check(CLI::Range(1, 1 << 30));

    // orbits
    int od = 1, oa = 2, omax = 12;
    std::string oout;
    auto* orb = app.add_subcommand("orbits", "Count finite orbits of the full shift by size");
    orb->add_option("--d", od, "Dimension (1..3)")->check(CLI::Range(1, 3));
    orb->add_option("--alphabet", oa, "Alphabet size")->check(CLI::Range(2, 255));
    orb->add_option("--max-size", omax, "Largest orbit size")->check(CLI::Range(1, 30));
    orb->add_option("--out", oout, "CSV output (stdout when absent)");

    // zeta
    int zd = 1, za = 2, zj = 20;
    double zalpha = 0.25;
    auto* zeta = app.add_subcommand("zeta", "Truncated inverse zeta product at alpha");
    zeta->add_option("--d", zd, "Dimension (1..3)")->check(CLI::Range(1, 3));
    zeta->add_option("--alphabet", za, "Alphabet size")->check(CLI::Range(2, 255));
    zeta->add_option("--alpha", zalpha, "Argument alpha")->check(CLI::Range(0.0, 1.0));
    zeta->add_option("--jmax", zj, "Truncation orbit size")->check(CLI::Range(1, 30));

    // cover
    std::string cin_path;
    int cn = 4;
    double tau = 1.0 / 3.0;
    auto* cover = app.add_subcommand("cover", "Asymptotic repeat cover of a pattern on F_k");
    cover->add_option("--in", cin_path, "Pattern text file")->required();
    cover->add_option("--n", cn, "Window side n")->check(CLI::Range(1, 1 << 20));
    cover->add_option("--tau", tau, "Exponent tau, k = n ceil(n^tau)")->check(CLI::Range(1e-9, 1.0));

    // experiment
    ExperimentConfig xc;
    std::string xkind, xcsv, xjson;
    std::vector<double> xalphas;
    double tail_max = -1;
    auto* exp = app.add_subcommand("experiment", "Monte Carlo experiment over trials and alphas");
    exp->add_option("kind", xkind, "emptiness | entropy | orbits")->required()->check(
        CLI::IsMember({"emptiness", "entropy", "orbits"}));
    exp->add_option("--d", xc.d, "Dimension (1..3)")->check(CLI::Range(1, 3));
    exp->add_option("--alphabet", xc.alphabet, "Alphabet size")->check(CLI::Range(2, 255));
    exp->add_option("--n", xc.n, "Window side n")->check(CLI::Range(1, 1 << 20));
    exp->add_option("--alpha", xalphas, "Alpha values (repeat or comma-separate)")->delimiter(',')->check(
        CLI::Range(0.0, 1.0));
    exp->add_option("--trials", xc.trials, "Trials per alpha")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    exp->add_option("--seed", xc.seed, "Ensemble seed (generated and echoed when absent)");
    exp->add_option("--k", xc.k, "Entropy cube side")->check(CLI::Range(1, 1000000));
    exp->add_option("--boundary-samples", xc.boundary_samples, "Periodic boundaries sampled for psi")->check(
        CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 30));
    exp->add_option("--kmax", xc.k_max, "Largest F_k searched (d >= 2)")->check(CLI::Range(1, 64));
    exp->add_option("--torus-max", xc.torus_max, "Largest torus side (d >= 2)")->check(CLI::Range(1, 64));
    exp->add_option("--orbit-max", xc.orbit_max, "Largest orbit size checked (0: min(12, budget))")->check(
        CLI::Range(0, 30));
    exp->add_option("--node-budget", xc.node_budget, "Backtracking nodes per search");
    exp->add_option("--jmax", xc.jmax, "Zeta truncation (0: 20 for d=1, 4 otherwise)")->check(CLI::Range(0, 30));
    exp->add_option("--eps", xc.eps, "Entropy deviation grid")->delimiter(',');
    exp->add_option("--entropy-eps", xc.entropy_eps, "Deviation checked for h_upper");
    exp->add_option("--entropy-max-fraction", xc.entropy_max_fraction, "Allowed h_upper deviation fraction");
    exp->add_option("--per-margin", xc.per_margin, "h_per_lower counts as low below target - margin");
    exp->add_option("--per-max-fraction", xc.per_max_fraction, "Allowed low h_per_lower fraction");
    exp->add_option("--unknown-ceiling", xc.unknown_ceiling, "Allowed Unknown fraction");
    exp->add_option("--supercritical-max", xc.supercritical_max, "Allowed P(empty) above threshold");
    exp->add_option("--sigmas", xc.sigmas, "Width of the binomial band");
    exp->add_option("--tail-max", tail_max, "Required zeta tail bound (off when absent)");
    exp->add_option("--threads", xc.threads, "Workers (0: hardware; SFTLAB_THREADS caps)");
    exp->add_option("--csv", xcsv, "CSV output (stdout when absent)");
    exp->add_option("--json", xjson, "JSON summary output");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", e.get_name()}, {"message", e.what()}}.dump() << '\n';
        err << app.help();
        return e.get_exit_code() ? e.get_exit_code() : 2;
    }

    try {
        if (*sample_cmd) {
            json echo;
            auto w = sf.get(sample_cmd, echo);
            if (!omega_out.empty()) {
                auto f = open_out(omega_out);
                write_allowed_set(f, w);
                echo["omega_out"] = omega_out;
            }
            print_json(out, {{"config", echo}, {"windows", w.size()}, {"allowed", w.count()}});
            return 0;
        }
        if (*empt) {
            json echo;
            auto w = ef.get(empt, echo);
            echo["kmax"] = lim.k_max;
            echo["torus_max"] = lim.torus_max;
            echo["node_budget"] = lim.node_budget;
            auto v = decide_empty(w, lim);
            json j{{"config", echo},
                   {"verdict", to_string(v.verdict)},
                   {"k_searched", v.k_searched},
                   {"torus_searched", v.torus_searched},
                   {"nodes", v.nodes},
                   {"budget_hit", v.budget_hit}};
            if (v.verdict == Verdict::Empty) j["empty_at_k"] = v.empty_at_k;
            if (v.orbit) j["orbit"] = orbit_json(*v.orbit);
            print_json(out, j);
            return 0;
        }
        if (*entr) {
            json echo;
            auto w = nf.get(entr, echo);
            echo["k"] = ek;
            echo["boundary_samples"] = samples;
            auto e = entropy_estimate(w, ek, samples);
            print_json(out, {{"config", echo},
                             {"k", e.k},
                             {"phi", big(e.phi)},
                             {"h_upper", jnum(e.h_upper)},
                             {"psi", {{"value", e.psi.value},
                                      {"std_error", e.psi.std_error},
                                      {"exact", e.psi.exact},
                                      {"boundaries", e.psi.boundaries},
                                      {"log_v", e.psi.log_v}}},
                             {"h_per_lower", jnum(e.h_per_lower)}});
            return 0;
        }
        if (*orb) {
            auto counts = count_orbits_upto(oa, od, omax);
            std::ostringstream csv;
            csv << "j,P_j\n";
            for (std::size_t i = 0; i < counts.size(); ++i) csv << i + 1 << ',' << big(counts[i]) << '\n';
            if (oout.empty())
                out << csv.str();
            else {
                auto f = open_out(oout);
                f << csv.str();
            }
            return 0;
        }
        if (*zeta) {
            auto z = zeta_inverse(za, zd, zalpha, zj);
            print_json(out, {{"config", {{"d", zd}, {"alphabet", za}, {"alpha", zalpha}, {"jmax", zj}}},
                             {"value", jnum(z.value)},
                             {"truncated_value", jnum(z.truncated_value)},
                             {"log_value", jnum(z.log_value)},
                             {"tail_bound", jnum(z.tail_bound)},
                             {"tail_bound_coarse", jnum(z.tail_bound_coarse)},
                             {"divergent", z.divergent}});
            return 0;
        }
        if (*cover) {
            auto f = open_in(cin_path);
            auto tp = read_pattern(f);
            auto ac = asymptotic_cover(tp.pattern, cn, tau);
            json j{{"config", {{"in", cin_path}, {"n", cn}, {"tau", tau}}},
                   {"cover_size", ac.cover.repeats.size()},
                   {"j", ac.j},
                   {"r", ac.r},
                   {"ell", ac.ell},
                   {"full_cube", ac.full_cube},
                   {"ratio", ac.ratio},
                   {"valid", is_repeat_cover(tp.pattern, ac.cover)}};
            if (ac.report) {
                const auto& r = *ac.report;
                j["bound_terms"] = {r.term1, r.term2, r.term3};
                j["bound"] = r.term1 + r.term2 + r.term3;
                j["bound_holds"] = r.bound_holds;
                j["pieces"] = {{"j1", r.j1}, {"j2", r.j2}, {"j3", r.j3}, {"repairs", r.repairs},
                               {"necessary", r.necessary}, {"interior_fallbacks", r.interior_fallbacks}};
            } else {
                int k = tp.pattern.box()->side;
                double b = 2.0 * std::pow(double(k), tp.pattern.dim()) / cn;
                j["bound_terms"] = {b};
                j["bound"] = b;
                j["bound_holds"] = double(ac.cover.repeats.size()) <= b;
            }
            print_json(out, j);
            return 0;
        }
        if (*exp) {
            xc.kind = parse_kind(xkind);
            if (!xalphas.empty()) xc.alphas = xalphas;
            if (tail_max >= 0) xc.tail_max = tail_max;
            if (exp->count("--seed") == 0) {
                xc.seed = fresh_seed();
                err << json{{"seed_generated", xc.seed}}.dump() << '\n';
            }
            auto res = run_experiment(xc);
            if (xcsv.empty())
                write_csv(out, res);
            else {
                auto f = open_out(xcsv);
                write_csv(f, res);
            }
            if (!xjson.empty()) {
                auto f = open_out(xjson);
                f << summary_json(res).dump(2) << '\n';
            }
            return res.pass ? 0 : 1;
        }
    } catch (const DomainError& e) {
        err << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << json{{"error", "precondition"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        err << json{{"error", "resource"}, {"message", e.what()}}.dump() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
        return 4;
    }
    return 0;
}

} // namespace sftlab

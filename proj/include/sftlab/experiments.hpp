// experiments.hpp
#pragma once

#include "sftlab/analysis.hpp"
#include "sftlab/ensemble.hpp"
#include "sftlab/zeta.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sftlab {

inline constexpr const char* kVersion = "1.0.0";

enum class ExperimentKind { Emptiness, Entropy, Orbits };
std::string to_string(ExperimentKind k);
ExperimentKind parse_kind(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Emptiness;
    int alphabet = 2;
    int d = 1;
    int n = 8;
    std::uint64_t seed = 0;
    std::vector<double> alphas{0.2};
    std::uint64_t trials = 1000;

    int k = 40;                         // entropy window
    std::uint64_t boundary_samples = 256;
    int k_max = 8;
    int torus_max = 6;
    int orbit_max = 0;                  // 0: min(12, orbit budget)
    std::uint64_t node_budget = 2000000;
    int jmax = 0;                       // zeta truncation; 0: 20 for d=1, 4 otherwise

    std::vector<double> eps{0.05, 0.1, 0.2};
    double entropy_eps = 0.1;           // deviation checked against entropy_max_fraction
    double entropy_max_fraction = 0.05;
    double per_margin = 0.15;           // h_per_lower < target - per_margin counts as low
    double per_max_fraction = 0.10;
    double unknown_ceiling = 0.05;
    double supercritical_max = 1e-3;
    double sigmas = 3;
    std::optional<double> tail_max;     // required bound on the zeta tail, if any

    unsigned threads = 0; // 0: hardware concurrency; SFTLAB_THREADS caps either way
};

void validate(const ExperimentConfig& c);

struct TrialRecord {
    Verdict verdict = Verdict::Unknown;
    bool per_empty = false; // no orbit of size <= orbit_max allowed
    double h_upper = 0;     // -inf when phi = 0
    double h_per_lower = 0;
};

struct AlphaRow {
    double alpha = 0;
    std::uint64_t trials = 0;
    std::uint64_t empty = 0, nonempty = 0, unknown = 0;
    double p_empty = 0;     // among resolved trials
    double ci95 = 0;        // 1.96 * sqrt(p(1-p)/resolved)
    double unknown_fraction = 0;
    ZetaTruncation theory;
    double sigma_theory = 0; // sqrt(p0(1-p0)/resolved)
    std::uint64_t per_empty = 0;
    double p_per_empty = 0;
    double per_ci95 = 0;
    double independence_bound = 0;
    std::uint64_t gn_candidates = 0; // NonEmpty and no orbit <= orbit_max
    // entropy
    double h_target = 0; // log+(alpha |A|)
    double h_upper_mean = 0, h_upper_median = 0, h_upper_sd = 0;
    std::vector<double> dev_fraction; // per eps, h_upper
    double h_per_mean = 0, h_per_median = 0;
    std::vector<double> per_dev_fraction; // per eps, h_per_lower
    double per_below_fraction = 0;
    // assessment
    std::string regime; // subcritical, critical, supercritical
    bool pass = true;
    std::vector<std::string> failures;
    std::vector<TrialRecord> records;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<AlphaRow> rows;
    bool pass = true;
};

// Runs every trial of every alpha; identical output for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_emptiness_experiment(ExperimentConfig cfg);
ExperimentResult run_entropy_experiment(ExperimentConfig cfg);
ExperimentResult run_orbit_experiment(ExperimentConfig cfg);

// Workers actually used: min(requested or hardware, SFTLAB_THREADS, trials).
unsigned worker_count(unsigned requested, std::uint64_t trials);

std::string csv_header(const ExperimentConfig& c);
void write_csv(std::ostream& out, const ExperimentResult& r);
nlohmann::json config_json(const ExperimentConfig& c);
nlohmann::json summary_json(const ExperimentResult& r);

// Exact P(empty) for d=1, |A|=2, n=2 by enumerating the 16 allowed sets.
double exact_empty_probability_tiny(double alpha);

} // namespace sftlab

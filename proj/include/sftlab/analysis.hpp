// analysis.hpp
#pragma once

#include "sftlab/ensemble.hpp"
#include "sftlab/orbits.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sftlab {

enum class Verdict { Empty, NonEmpty, Unknown };
std::string to_string(Verdict v);

struct EmptinessVerdict {
    Verdict verdict = Verdict::Unknown;
    // Empty: no locally allowed F_k-pattern at this k
    int empty_at_k = 0;
    // NonEmpty: a finite orbit of X_omega
    std::optional<Orbit> orbit;
    // effort
    int k_searched = 0;     // largest k whose F_k search finished
    int torus_searched = 0; // largest torus side fully tried
    std::uint64_t nodes = 0;
    bool budget_hit = false;
};

// Overlap graph on (n-1)-words, pruned of sources and sinks. Never Unknown.
EmptinessVerdict decide_empty_1d(const AllowedSet& w);

struct SearchLimits {
    int k_max = 8;
    int torus_max = 6;
    // per single backtracking search; an exhausted budget leaves that search undecided
    std::uint64_t node_budget = 2000000;
};

// d = 1 delegates to decide_empty_1d. For d >= 2 alternates torus fills of
// growing side with F_k existence searches for k = n, n+1, ...
EmptinessVerdict decide_empty(const AllowedSet& w, const SearchLimits& lim);

// Some locally allowed pattern on [0,k)^d? Exhaustive backtracking.
// nullopt when the node budget ran out.
std::optional<bool> exists_allowed_cube(const AllowedSet& w, int k, std::uint64_t node_budget);

// phi_{n,k}: allowed F_k-patterns. d=1 by transfer over (n-1)-words; d=2 by
// row transfer with (n-1)-row states (|A|^((n-1)k) <= 2^20); any d by
// exhaustive search when |A|^(k^d) <= 2^24.
BigCount count_phi(const AllowedSet& w, int k);

// log of a nonnegative big count; -inf for 0
double log_count(const BigCount& c);

// Allowed fills of F_k (row-major cells) with fixed[i] >= 0 pinned.
BigCount count_constrained(const AllowedSet& w, int k, const std::vector<int>& fixed);

// Periodic boundaries: t in the n-boundary of F_k is identified with t mod l,
// l = k - n + 1. classes[i] is the residue class of cell i or -1 inside.
struct PeriodicBoundary {
    int d = 1, n = 1, k = 1, l = 1;
    int class_count = 0;
    std::vector<int> classes;
};
PeriodicBoundary periodic_boundary(int d, int n, int k);

struct PsiEstimate {
    double value = 0;     // psi or its Monte Carlo estimate
    double std_error = 0; // 0 when exact
    bool exact = false;
    std::uint64_t boundaries = 0; // enumerated or sampled
    double log_v = 0;             // log |V_{n,k}|
};

// Exact when |V_{n,k}| <= boundary_samples, otherwise the mean over
// boundary_samples uniform boundaries (Boundary stream keyed by w.seed, w.trial).
PsiEstimate count_psi(const AllowedSet& w, int k, std::uint64_t boundary_samples);

struct EntropyEstimate {
    int k = 0;
    BigCount phi;
    double h_upper = 0; // (1/k^d) log phi
    PsiEstimate psi;
    double h_per_lower = 0; // (1/k^d) log psi
};

EntropyEstimate entropy_estimate(const AllowedSet& w, int k, std::uint64_t boundary_samples);

// Orbits up to a size, with their window codes for fast membership tests.
class OrbitCatalog {
public:
    OrbitCatalog(int alphabet, int d, int n, int max_size);
    int max_size() const { return max_size_; }
    const std::vector<Orbit>& orbits() const { return orbits_; }
    const std::vector<std::vector<std::uint64_t>>& windows() const { return windows_; }
    bool allowed(const AllowedSet& w, std::size_t i) const;

private:
    int alphabet_, d_, n_, max_size_;
    std::vector<Orbit> orbits_;
    std::vector<std::vector<std::uint64_t>> windows_;
};

struct OrbitPresence {
    std::vector<Orbit> orbits;
    bool exhaustive = true;
};

OrbitPresence periodic_orbits_present(const AllowedSet& w, int max_size);
OrbitPresence periodic_orbits_present(const AllowedSet& w, const OrbitCatalog& cat);
bool any_orbit_allowed(const AllowedSet& w, const OrbitCatalog& cat);

} // namespace sftlab

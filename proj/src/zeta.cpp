// zeta.cpp
#include "sftlab/zeta.hpp"

#include "sftlab/errors.hpp"
#include "sftlab/orbits.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sftlab {

namespace {

// Neumaier compensated sum
struct CompensatedSum {
    double sum = 0, c = 0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

// sum_{j > from} weight(j) q^j, with weight(j) <= j^(d+1) beyond the explicit range.
template <class Weight>
double tail_series(int d, double q, int from, Weight weight) {
    if (q <= 0) return 0;
    CompensatedSum s;
    const int cap = from + 1000000;
    for (int j = from + 1; j <= cap; ++j) {
        double lq = j * std::log(q);
        s.add(weight(j) * std::exp(lq));
        // remainder of sum_{i>j} i^(d+1) q^i by the ratio test
        double rho = std::pow(double(j + 2) / double(j + 1), d + 1) * q;
        if (rho < 1) {
            double next = std::exp((d + 1) * std::log(double(j + 1)) + (j + 1) * std::log(q));
            double rem = next / (1 - rho);
            if (rem <= 1e-9 * s.value() || rem < 1e-300 || j == cap) return s.value() + rem;
        }
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

ZetaTruncation zeta_inverse(int alphabet, int d, double alpha, int jmax) {
    check_alphabet(alphabet);
    check_dim(d);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    if (jmax < 0) throw DomainError("jmax must be >= 0");
    ZetaTruncation z;
    z.alphabet = alphabet;
    z.d = d;
    z.alpha = alpha;
    z.jmax = jmax;

    auto counts = count_orbits_upto(alphabet, d, jmax);
    CompensatedSum logsum;
    for (int j = 1; j <= jmax; ++j) {
        double aj = std::pow(alpha, j);
        double pj = counts[j - 1].convert_to<double>();
        if (aj >= 1.0) {
            logsum.add(-std::numeric_limits<double>::infinity());
            break;
        }
        logsum.add(pj * std::log1p(-aj));
    }
    double lv = logsum.value();
    z.truncated_value = std::exp(lv);

    double q = alpha * alphabet;
    if (q >= 1.0) {
        z.divergent = true;
        z.value = 0;
        z.log_value = -std::numeric_limits<double>::infinity();
        z.tail_bound = std::numeric_limits<double>::infinity();
        z.tail_bound_coarse = z.tail_bound;
        z.c1 = std::numeric_limits<double>::infinity();
        return z;
    }
    z.value = z.truncated_value;
    z.log_value = lv;
    double xmax = std::pow(alpha, jmax + 1);
    z.c1 = 1.0 / (1.0 - xmax);
    // s_d(j)/j <= j^(2d-3) <= j^(d+1) for d <= 3, so the remainder estimate applies
    z.tail_bound = z.c1 * tail_series(d, q, jmax, [d](int j) { return sublattice_count(d, j) / j; });
    z.tail_bound_coarse = z.c1 * tail_series(d, q, jmax, [d](int j) { return std::pow(double(j), d + 1); });
    return z;
}

double independence_upper_bound(int alphabet, int d, double alpha, int n) {
    if (n < 0) throw DomainError("n must be >= 0");
    return zeta_inverse(alphabet, d, alpha, n / 2).truncated_value;
}

} // namespace sftlab

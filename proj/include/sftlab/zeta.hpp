// zeta.hpp
#pragma once

namespace sftlab {

struct ZetaTruncation {
    int alphabet = 2;
    int d = 1;
    double alpha = 0;
    int jmax = 0;
    // prod_{j<=jmax} (1 - alpha^j)^{P_j}, always computed
    double truncated_value = 1;
    // limit value: truncated_value below threshold, 0 when divergent
    double value = 1;
    double log_value = 0;
    bool divergent = false;
    // bound on the log of the neglected factor:
    //   c1 * sum_{j>jmax} s_d(j) (alpha|A|)^j / j, with j|P_j| <= s_d(j)|A|^j
    // where s_d(j) counts index-j sublattices; +inf when divergent
    double tail_bound = 0;
    // -log(1-x) <= c1 x for x <= alpha^(jmax+1)
    double c1 = 1;
    // c1 * sum_{j>jmax} j^(d+1) (alpha|A|)^j, the coarser bound from |P_j| <= j^(d+1)|A|^j
    double tail_bound_coarse = 0;
};

ZetaTruncation zeta_inverse(int alphabet, int d, double alpha, int jmax);

// prod_{j <= n/2} (1 - alpha^j)^{P_j}; bounds P(Per(X) empty) for any alpha.
double independence_upper_bound(int alphabet, int d, double alpha, int n);

} // namespace sftlab

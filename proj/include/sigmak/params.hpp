#pragma once

#include <stdexcept>

#include "sigmak/mathfn.hpp"

namespace sigmak {

// Dimension/order pair (n,k) for the sigma_k problem, restricted to the
// regime n >= 5, 2 <= k < n/2.
struct ProblemParams {
    int n = 5;
    int k = 2;

    ProblemParams() = default;
    ProblemParams(int n_, int k_) : n(n_), k(k_) { validate(); }

    void validate() const {
        if (n < 5) throw std::invalid_argument("ProblemParams: n >= 5 required");
        if (k < 2) throw std::invalid_argument("ProblemParams: k >= 2 required");
        if (2 * k >= n) throw std::invalid_argument("ProblemParams: 2k < n required");
    }

    // (n-2k)/(2k), the decay rate of the degenerate profiles.
    double kappa() const { return double(n - 2 * k) / double(2 * k); }

    double binom_nk() const { return binomial(n, k); }
    double binom_n1k1() const { return binomial(n - 1, k - 1); }

    // 2^{k-1} / binom(n-1,k-1): prefactor of K in the solved-for xiddot.
    double rhs_prefactor() const { return std::pow(2.0, k - 1) / binom_n1k1(); }

    // 2^{1-k} binom(n-1,k-1): prefactor of the operator itself.
    double fk_prefactor() const { return std::pow(2.0, 1 - k) * binom_n1k1(); }

    // sigma_k-curvature of the round sphere: 2^{-k} binom(n,k).
    double round_sigma() const { return std::pow(2.0, -k) * binom_nk(); }
};

}  // namespace sigmak

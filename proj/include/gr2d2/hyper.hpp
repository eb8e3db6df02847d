#pragma once

// Hyperparameter strategies: Empirical Bayes group weights, the
// sparsity-inducing default, and the trigamma logistic-normal covariance.

#include <vector>

#include "gr2d2/model.hpp"
#include "gr2d2/types.hpp"

namespace gr2d2 {

enum class HyperStrategy { EmpiricalBayes, Sparsity };

// Raised when a strategy cannot be applied to the data at hand (e.g. a
// rank-deficient per-group design in the Empirical Bayes fit); callers should
// fall back to the sparsity strategy.
struct StrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HyperParams {
  Vector a_g;                    // Dirichlet shapes on the group R^2 shares, sum to a
  double b = 0.5;                // shape on the noise share 1 - R^2
  std::vector<Vector> a_gj;      // within-group Dirichlet shapes, sum to a_g per group
  std::vector<Matrix> sigma_g;   // logistic-normal covariances (empty matrix when p_g = 1)
  double n0 = 1.0;               // sigma^2 ~ InvGamma(n0/2, d0/2)
  double d0 = 1.0;
  double a = 0.5;                // global shape, bookkeeping: sum a_g = a
  HyperStrategy strategy = HyperStrategy::Sparsity;

  int n_groups() const { return static_cast<int>(a_g.size()); }
  double a_star(int g) const { return a_gj[static_cast<std::size_t>(g)].sum(); }
};

// w_hat_g = bhat_g' V_g bhat_g / sum_g' bhat' V bhat from per-group
// least-squares fits (no intercept; responses are centered). Throws
// StrategyError when some group design is rank deficient or n <= p_g.
Vector empirical_bayes_weights(const Dataset& data);

// Builds the full hyperparameter set. Defaults a = b = 1/2 are the callers'
// concern; data is required for the Empirical Bayes strategy and ignored
// otherwise. Both strategies set a_gj = a_g / p_g; the Dirichlet shapes can be
// overridden afterwards through the public field.
HyperParams make_hyperparams(HyperStrategy strategy, double a, double b, const Dataset* data,
                             const GroupStructure& groups);

// (p_g-1)x(p_g-1) covariance delta(1/p_g) (J + I) approximating the symmetric
// Dirichlet; the empty matrix for p_g = 1 (the composition is then (1)).
Matrix logistic_normal_covariance(int p_g);

}  // namespace gr2d2

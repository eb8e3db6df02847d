#include "gr2d2/hyper.hpp"

#include <cmath>

#include "gr2d2/rngdist.hpp"

namespace gr2d2 {

Vector empirical_bayes_weights(const Dataset& data) {
  const int n_groups = data.groups.n_groups();
  const Index n = data.x.rows();
  Vector score(n_groups);
  for (int g = 0; g < n_groups; ++g) {
    const int p_g = data.groups.size(g);
    if (n <= p_g)
      throw StrategyError("empirical Bayes: n <= p_g for group " + std::to_string(g + 1) +
                          "; use the sparsity strategy");
    const auto x_g = data.x.middleCols(data.groups.offset(g), p_g);

    Eigen::ColPivHouseholderQR<Matrix> qr(x_g);
    if (qr.rank() < p_g)
      throw StrategyError("empirical Bayes: rank-deficient design in group " +
                          std::to_string(g + 1) + "; use the sparsity strategy");
    const Vector beta_hat = qr.solve(data.y);

    // sample covariance of x_g, 1/(n-1) normalization (cancels in the ratio)
    const Matrix centered = x_g.rowwise() - x_g.colwise().mean();
    const Matrix v_g = centered.transpose() * centered / static_cast<double>(n - 1);
    score[g] = beta_hat.dot(v_g * beta_hat);
  }
  const double total = score.sum();
  if (!(total > 0.0))
    throw StrategyError("empirical Bayes: all group scores vanish; use the sparsity strategy");
  return score / total;
}

HyperParams make_hyperparams(HyperStrategy strategy, double a, double b, const Dataset* data,
                             const GroupStructure& groups) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("hyperparams: a and b must be positive");
  const int n_groups = groups.n_groups();

  HyperParams h;
  h.a = a;
  h.b = b;
  h.strategy = strategy;
  h.n0 = 1.0;
  h.d0 = 1.0;

  Vector weights;
  if (strategy == HyperStrategy::EmpiricalBayes) {
    if (data == nullptr) throw ParameterError("hyperparams: empirical Bayes needs data");
    weights = empirical_bayes_weights(*data);
  } else {
    weights = Vector::Constant(n_groups, 1.0 / n_groups);
  }
  h.a_g = a * weights.array();
  // pin sum a_g = a exactly; the induced global prior is then R^2 ~ Beta(a, b)
  h.a_g[n_groups - 1] = a - h.a_g.head(n_groups - 1).sum();
  if (!(h.a_g.array() > 0.0).all())
    throw StrategyError("hyperparams: a group weight collapsed to zero");

  h.a_gj.reserve(groups.sizes.size());
  h.sigma_g.reserve(groups.sizes.size());
  for (int g = 0; g < n_groups; ++g) {
    const int p_g = groups.size(g);
    h.a_gj.push_back(Vector::Constant(p_g, h.a_g[g] / p_g));
    h.sigma_g.push_back(logistic_normal_covariance(p_g));
  }
  return h;
}

Matrix logistic_normal_covariance(int p_g) {
  if (p_g < 1) throw ParameterError("logistic-normal covariance: p_g must be positive");
  if (p_g == 1) return Matrix(0, 0);
  const double d = trigamma(1.0 / p_g);
  return d * (Matrix::Ones(p_g - 1, p_g - 1) + Matrix::Identity(p_g - 1, p_g - 1));
}

}  // namespace gr2d2

#include "gr2d2/model.hpp"

#include <cmath>

namespace gr2d2 {

GroupStructure GroupStructure::from_sizes(std::vector<int> sizes) {
  if (sizes.empty()) throw ParameterError("group structure: need at least one group");
  GroupStructure gs;
  gs.sizes = std::move(sizes);
  gs.offsets.reserve(gs.sizes.size());
  int acc = 0;
  for (int s : gs.sizes) {
    if (s <= 0) throw ParameterError("group structure: group sizes must be positive");
    gs.offsets.push_back(acc);
    acc += s;
  }
  gs.total = acc;
  return gs;
}

GroupStructure GroupStructure::equal_groups(int n_groups, int group_size) {
  return from_sizes(std::vector<int>(static_cast<std::size_t>(n_groups), group_size));
}

std::pair<int, int> GroupStructure::group_of(int flat) const {
  if (flat < 0 || flat >= total) throw ParameterError("group structure: flat index out of range");
  int g = n_groups() - 1;
  while (offset(g) > flat) --g;
  return {g, flat - offset(g)};
}

Dataset make_dataset(Vector y_raw, Matrix x, GroupStructure groups, bool standardize_columns) {
  if (y_raw.size() != x.rows()) throw ParameterError("dataset: y and x row counts differ");
  if (x.cols() != groups.total)
    throw ParameterError("dataset: group sizes must sum to the number of columns");
  if (y_raw.size() < 1) throw ParameterError("dataset: need at least one observation");

  Dataset d;
  d.center = y_raw.mean();
  d.y = y_raw.array() - d.center;
  d.groups = std::move(groups);
  if (standardize_columns) {
    const Index n = x.rows();
    d.col_center = x.colwise().mean();
    d.col_scale.resize(x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
      x.col(j).array() -= d.col_center[j];
      const double ss = x.col(j).squaredNorm() / std::max<double>(1.0, static_cast<double>(n - 1));
      d.col_scale[j] = ss > 0.0 ? std::sqrt(ss) : 1.0;
      x.col(j) /= d.col_scale[j];
    }
  }
  d.x = std::move(x);
  return d;
}

void ChainState::validate(const GroupStructure& groups) const {
  const auto fail = [](const char* what) { throw ParameterError(what); };
  if (beta.size() != groups.total) fail("state: beta has wrong length");
  if (psi.size() != groups.total) fail("state: psi has wrong length");
  if (w.size() != groups.n_groups()) fail("state: w has wrong length");
  if (static_cast<int>(phi.size()) != groups.n_groups()) fail("state: phi has wrong group count");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) fail("state: sigma2 must be positive");
  if (!(tau2 > 0.0) || !std::isfinite(tau2)) fail("state: tau2 must be positive");
  if (!beta.allFinite()) fail("state: beta has non-finite entries");
  if (!(psi.array() > 0.0).all() || !psi.allFinite()) fail("state: psi must be positive");
  if (!(w.array() > 0.0).all() || !w.allFinite()) fail("state: w must be positive");
  for (int g = 0; g < groups.n_groups(); ++g) {
    const Vector& p = phi[static_cast<std::size_t>(g)];
    if (p.size() != groups.size(g)) fail("state: phi_g has wrong length");
    if (!(p.array() > 0.0).all()) fail("state: phi_g must be positive");
    if (std::abs(p.sum() - 1.0) > 1e-10) fail("state: phi_g must sum to 1");
  }
}

R2Decomposition r2_from_state(const ChainState& state) {
  const double w_total = state.w.sum();
  R2Decomposition out;
  out.r2 = w_total / (w_total + 1.0);
  out.r2_g = state.w / (w_total + 1.0);
  return out;
}

Vector lambda_matrix(const ChainState& state, const GroupStructure& groups) {
  Vector lambda(groups.total);
  for (int g = 0; g < groups.n_groups(); ++g) {
    const Vector& phi_g = state.phi[static_cast<std::size_t>(g)];
    for (int j = 0; j < groups.size(g); ++j)
      lambda[groups.flat_index(g, j)] = 0.5 * state.psi[groups.flat_index(g, j)] * phi_g[j] * state.w[g];
  }
  return lambda;
}

}  // namespace gr2d2

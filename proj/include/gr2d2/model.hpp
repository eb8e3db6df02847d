#pragma once

// Data model: grouped designs, centered responses, and the MCMC chain state.

#include <utility>
#include <vector>

#include "gr2d2/types.hpp"

namespace gr2d2 {

// Partition of the p coefficients into G contiguous groups. The flat index of
// coefficient (g, j) is offset(g) + j, matching the diagonal-element ordering
// of the coefficient prior scale matrix.
struct GroupStructure {
  std::vector<int> sizes;
  std::vector<int> offsets;
  int total = 0;

  static GroupStructure from_sizes(std::vector<int> sizes);
  static GroupStructure single_group(int p) { return from_sizes({p}); }
  static GroupStructure equal_groups(int n_groups, int group_size);

  int n_groups() const { return static_cast<int>(sizes.size()); }
  int size(int g) const { return sizes[static_cast<std::size_t>(g)]; }
  int offset(int g) const { return offsets[static_cast<std::size_t>(g)]; }
  int flat_index(int g, int j) const { return offset(g) + j; }
  std::pair<int, int> group_of(int flat) const;
};

struct Dataset {
  Vector y;  // centered response
  Matrix x;
  GroupStructure groups;
  double center = 0.0;      // subtracted response mean, added back for prediction
  Vector col_center;        // empty unless column standardization was requested
  Vector col_scale;
};

// Centers the response (stores the mean) and optionally standardizes the
// columns of x to zero mean / unit sample variance.
Dataset make_dataset(Vector y_raw, Matrix x, GroupStructure groups,
                     bool standardize_columns = false);

// One MCMC state. phi holds one simplex vector per group; w the group-level
// variance totals.
struct ChainState {
  Vector beta;
  double sigma2 = 1.0;
  double tau2 = 1.0;
  Vector psi;
  std::vector<Vector> phi;
  Vector w;

  void validate(const GroupStructure& groups) const;  // throws ParameterError
};

struct R2Decomposition {
  double r2 = 0.0;
  Vector r2_g;
};

// R^2_g = W_g / (sum W + 1), R^2 = sum W / (sum W + 1).
R2Decomposition r2_from_state(const ChainState& state);

// Flat vector of the diagonal prior scales psi_gj phi_gj W_g / 2.
Vector lambda_matrix(const ChainState& state, const GroupStructure& groups);

}  // namespace gr2d2

#pragma once

// Random-variate kernels and the small set of special functions the sampler
// and prior constructions need.
//
// Conventions used throughout (fixed by the factors appearing in the joint
// posterior: e^{-W_g/tau^2} and e^{-psi/2}):
//   Gamma(shape a, rate r):      density ∝ x^{a-1} e^{-r x}
//   InvGamma(shape a, scale s):  density ∝ x^{-a-1} e^{-s/x}
//   Exponential(rate r):         density ∝ e^{-r x}
//   GIG(lambda, rho, chi):       density ∝ z^{lambda-1} e^{-(rho z + chi/z)/2}
//   InvGauss(mu, lambda):        density ∝ z^{-3/2} e^{-lambda (z-mu)^2 / (2 mu^2 z)}

#include <cstdint>
#include <random>

#include "gr2d2/types.hpp"

namespace gr2d2 {

// Deterministic random stream. All draws in the project go through this
// class, so a fixed seed reproduces every result bit-for-bit. Substreams
// derived with substream(i) are statistically independent and may be handed
// to concurrent tasks.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform();

  // Standard normal (Box-Muller, one spare cached).
  double normal();

  RandomStream substream(std::uint64_t index) const;
  std::uint64_t seed() const { return seed_; }

  // Stable seed derivation for nested parallel work (replication r, method m, ...).
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// ---- parameter types ------------------------------------------------------

struct GigParams {
  double lambda = 0.0;  // order
  double rho = 0.0;     // linear rate, > 0 in this artifact
  double chi = 0.0;     // reciprocal rate, >= 0; chi == 0 requires lambda > 0
};

struct InvGaussParams {
  double mu = 0.0;
  double lambda = 0.0;
};

struct DirichletParams {
  Vector alpha;  // length >= 2, all entries > 0
};

// m-part logistic-normal composition; sigma is the (m-1)x(m-1) covariance of
// the log-ratio coordinates. Factorizations are cached at construction.
class LogisticNormalParams {
 public:
  explicit LogisticNormalParams(Matrix sigma);

  Index parts() const { return sigma_.rows() + 1; }
  const Matrix& sigma() const { return sigma_; }
  const Matrix& chol_lower() const { return chol_lower_; }
  double log_det() const { return log_det_; }
  // lr' sigma^{-1} lr
  double quad_form(const Vector& lr) const;

 private:
  Matrix sigma_;
  Matrix chol_lower_;
  Matrix sigma_inv_;
  double log_det_ = 0.0;
};

// ---- scalar samplers ------------------------------------------------------

double sample_normal(RandomStream& rng);
double sample_gamma(double shape, double rate, RandomStream& rng);
// log of a Gamma(shape, 1) draw; exact for tiny shapes where the draw itself underflows.
double sample_log_gamma(double shape, RandomStream& rng);
double sample_inverse_gamma(double shape, double scale, RandomStream& rng);
double sample_exponential(double rate, RandomStream& rng);
double sample_gig(const GigParams& params, RandomStream& rng);
double sample_inverse_gaussian(const InvGaussParams& params, RandomStream& rng);

// ---- vector samplers ------------------------------------------------------

Vector sample_dirichlet(const DirichletParams& params, RandomStream& rng);
Vector sample_logistic_normal(const LogisticNormalParams& params, RandomStream& rng);
double logdensity_logistic_normal(const Vector& phi, const LogisticNormalParams& params);

// Draw from N(mean, L L'), L a lower-triangular covariance factor.
Vector sample_mvn_chol(const Vector& mean, const Matrix& chol_lower, RandomStream& rng);

// Draw from N(P^{-1} b, sd^2 P^{-1}) given the symmetric positive-definite
// precision P. One factorization per call (LLT, LDLT fallback). The computed
// mean P^{-1} b is written to *mean_out when given. Throws ParameterError if
// the factorization fails.
Vector sample_mvn_precision(const Matrix& precision, const Vector& b, double sd,
                            RandomStream& rng, Vector* mean_out = nullptr);

// ---- special functions ----------------------------------------------------

// Second derivative of log-gamma; relative error < 1e-10 for x > 0.
double trigamma(double x);
double log_beta(double a, double b);
// Regularized incomplete beta I_x(a,b) (the Beta(a,b) cdf at x).
double incomplete_beta(double a, double b, double x);
double normal_cdf(double z);

}  // namespace gr2d2

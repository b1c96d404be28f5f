#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace polymapf {

// Derived solver/reduction parameters for k robots and slack constant c.
// Defaults follow the closed forms
//   lambda = ceil(c * k^5)
//   sigma  = 4 k^2
//   tau    = 3 k^k (sigma + 1) + sigma
//   mu     = max(lambda + 1, k^6 * tau^(2k+1))
// mu grows far beyond 64 bits already for k = 3, so all four values are
// arbitrary-precision integers. Desk-scale runs override lambda and mu with
// small values; the lambda >= 1 and mu >= lambda relations are enforced only
// for computed defaults, because meaningful testing requires overrides (down
// to lambda = 0) that the default regime would forbid.
struct ParamSet {
  int k = 1;
  double c = 1.0;
  mpz_class lambda;
  mpz_class sigma;
  mpz_class tau;
  mpz_class mu;
  bool lambda_overridden = false;
  bool mu_overridden = false;

  void override_lambda(const mpz_class& value);
  void override_mu(const mpz_class& value);

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

// Computes the default ParamSet. Requires k >= 1 and c > 0.
ParamSet compute_default_params(int k, double c);

// Decimal rendering used by JSON emitters and reports.
std::string mpz_str(const mpz_class& v);

}  // namespace polymapf

#include "polymapf/params.hpp"

#include "polymapf/errors.hpp"

namespace polymapf {

namespace {

mpz_class mpz_pow(const mpz_class& base, unsigned long exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace

ParamSet compute_default_params(int k, double c) {
  if (k < 1) {
    raise(ErrorKind::InvalidArgument, "BadRobotCount",
          "k must be at least 1, got " + std::to_string(k));
  }
  if (!(c > 0.0)) {
    raise(ErrorKind::InvalidArgument, "BadSlackConstant",
          "c must be positive, got " + std::to_string(c));
  }

  ParamSet p;
  p.k = k;
  p.c = c;

  const mpz_class kk(k);

  // lambda = ceil(c * k^5), computed exactly: a double is a binary rational,
  // so mpq_class(c) loses nothing.
  mpq_class lambda_q = mpq_class(c) * mpq_class(mpz_pow(kk, 5));
  mpz_class lambda_floor = lambda_q.get_num() / lambda_q.get_den();
  p.lambda = lambda_floor;
  if (lambda_floor * lambda_q.get_den() != lambda_q.get_num()) {
    p.lambda += 1;  // round up for non-integers
  }

  p.sigma = 4 * kk * kk;
  p.tau = 3 * mpz_pow(kk, static_cast<unsigned long>(k)) * (p.sigma + 1) +
          p.sigma;
  mpz_class mu_main =
      mpz_pow(kk, 6) * mpz_pow(p.tau, static_cast<unsigned long>(2 * k + 1));
  p.mu = std::max(mpz_class(p.lambda + 1), mu_main);
  return p;
}

void ParamSet::override_lambda(const mpz_class& value) {
  lambda = value;
  lambda_overridden = true;
}

void ParamSet::override_mu(const mpz_class& value) {
  mu = value;
  mu_overridden = true;
}

std::string mpz_str(const mpz_class& v) { return v.get_str(); }

}  // namespace polymapf

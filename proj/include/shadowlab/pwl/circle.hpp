#pragma once

#include <algorithm>

#include "shadowlab/errors.hpp"
#include "shadowlab/rational.hpp"

namespace shadowlab {

/// Representative of x mod 1 in [0, 1).
inline Rational mod_one(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

/// Shortest arc length on R/Z.
inline Rational circle_distance(const Rational& a, const Rational& b) {
  const Rational d = mod_one(a - b);
  return std::min(d, Rational(1 - d));
}

/// x -> x + alpha mod 1 with a rational surrogate alpha; a horizon below the
/// denominator never closes a full period.
struct RotationSystem {
  Rational alpha;

  explicit RotationSystem(Rational a) : alpha(mod_one(a)) {
    if (alpha == 0) throw DomainError("rotation amount must be nonzero mod 1");
  }
  Rational operator()(const Rational& x) const { return mod_one(x + alpha); }
  std::size_t period() const { return alpha.get_den().get_ui(); }
};

/// Surrogate for an irrational rotation number: 10007 is prime, so the orbit
/// closes only after 10007 steps.
inline Rational default_alpha() { return Rational(6185, 10007); }

}  // namespace shadowlab

#include "fasdg/bounds.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fasdg/csv.hpp"
#include "fasdg/errors.hpp"

namespace fas {

BoundParams::BoundParams(int n, double p, double epsilon) : n_(n), p_(p), eps_(epsilon) {
  if (n < 1) throw std::invalid_argument("bounds: need at least one vertex");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bounds: p must lie in (0, 1)");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("bounds: epsilon must be >= 0");
}

double bennett_h(double u) {
  if (!(u >= 0.0)) throw std::invalid_argument("bennett_h: u must be >= 0");
  return (1.0 + u) * std::log1p(u) - u;
}

LogProb hoeffding_ratio_bound(const BoundParams& bp) {
  const double d = bp.epsilon() / (2.0 + bp.epsilon());
  return LogProb{std::log(2.0) -
                 bp.p() * bp.p() * d * d * static_cast<double>(bp.big_k())};
}

LogProb bennett_bound(const BoundParams& bp) {
  const double p = bp.p(), q = bp.q(), r = bp.r();
  if (p > 0.5) throw HypothesisError("bennett bound needs p <= 1/2");
  if (r * p > 1.0) throw HypothesisError("bennett bound needs r*p <= 1");
  const double s2 = 1.0 + r * r;
  const double u = bp.epsilon() / (s2 * q);
  return LogProb{-s2 * static_cast<double>(bp.big_k()) * p * q * bennett_h(u)};
}

LogProb bennett_small_eps(const BoundParams& bp) {
  const double p = bp.p(), q = bp.q(), r = bp.r();
  if (p > 0.5) throw HypothesisError("bennett bound needs p <= 1/2");
  if (r * p > 1.0) throw HypothesisError("bennett bound needs r*p <= 1");
  const double e = bp.epsilon();
  return LogProb{-static_cast<double>(bp.big_k()) * p * e * e / (2.0 * (1.0 + r * r) * q)};
}

LogProb chernoff_direct_bound(const BoundParams& bp) {
  const double p = bp.p(), q = bp.q(), r = bp.r();
  if (p > 0.5) throw HypothesisError("direct bound needs p <= 1/2");
  const double e = bp.epsilon();
  return LogProb{-(p / (2.0 * q)) * static_cast<double>(bp.big_k()) * e * e / (1.0 + r * r)};
}

double exact_ratio_tail(const BoundParams& bp) {
  const long long K = bp.big_k();
  if (K > 10000) throw CapacityError("exact tail capped at K = 10000 pairs");
  const double p = bp.p(), q = bp.q(), r = bp.r();
  const double logp = std::log(p), logq = std::log(q);
  const double lgK = std::lgamma(static_cast<double>(K) + 1.0);

  const std::size_t len = static_cast<std::size_t>(K) + 1;
  std::vector<double> pmf(len);
  for (std::size_t x = 0; x < len; ++x) {
    const double xd = static_cast<double>(x);
    const double lg = lgK - std::lgamma(xd + 1.0) - std::lgamma(static_cast<double>(K) - xd + 1.0);
    pmf[x] = std::exp(lg + xd * logp + (static_cast<double>(K) - xd) * logq);
  }
  // Suffix sums from the top so the tiny upper-tail terms are not swallowed.
  std::vector<double> survival(len + 1);
  survival[len] = 0.0;
  for (std::size_t t = len; t-- > 0;) survival[t] = survival[t + 1] + pmf[t];

  double tail = 0.0;
  for (std::size_t y = 0; y < len; ++y) {
    double sx;
    if (y == 0) {
      sx = survival[0];
    } else {
      const double thresh = r * static_cast<double>(y);
      if (thresh - 1e-9 > static_cast<double>(K)) {
        sx = 0.0;
      } else {
        // ceil with a nudge: exact integer products r*y must not round up
        const long long t = static_cast<long long>(std::ceil(thresh - 1e-9));
        sx = (t <= 0) ? survival[0] : survival[static_cast<std::size_t>(t)];
      }
    }
    tail += pmf[y] * sx;
  }
  if (tail < 0.0) tail = 0.0;
  if (tail > 1.0) tail = 1.0;
  return tail;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  double sum = 0.0, c = 0.0;
  for (int k = 2; k <= n; ++k) {
    const double term = std::log(static_cast<double>(k)) - c;
    const double next = sum + term;
    c = (next - sum) - term;
    sum = next;
  }
  return sum;
}

LogProb amplify_by_permutations(LogProb bound, int n) {
  return LogProb{bound.log_value + log_factorial(n)};
}

double threshold_constant(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("threshold_constant: epsilon must be > 0");
  const double r = 1.0 + epsilon;
  return 4.0 * (1.0 + r * r) / (epsilon * epsilon);
}

BoundSet evaluate_bounds(const BoundParams& bp) {
  BoundSet out;
  try {
    out.exact_tail = exact_ratio_tail(bp);
  } catch (const CapacityError&) {
  }
  out.eq3 = hoeffding_ratio_bound(bp);
  try {
    out.eq4 = bennett_bound(bp);
    out.eq5 = bennett_small_eps(bp);
  } catch (const HypothesisError&) {
  }
  try {
    out.eq6 = chernoff_direct_bound(bp);
    out.eq6_amplified = amplify_by_permutations(*out.eq6, bp.n());
  } catch (const HypothesisError&) {
  }
  return out;
}

namespace {

void put_pair(std::ostream& os, const std::optional<LogProb>& b, const char* absent) {
  if (b) {
    os << "," << format_double(b->linear()) << "," << format_double(b->log_value);
  } else {
    os << "," << absent << "," << absent;
  }
}

}  // namespace

void write_bounds_csv_header(std::ostream& os) {
  os << "n,p,epsilon,K,exact_tail,exact_tail_log,eq3,eq3_log,eq4,eq4_log,"
        "eq5,eq5_log,eq6,eq6_log,eq6_amplified,eq6_amplified_log\n";
}

void write_bounds_csv_row(std::ostream& os, const BoundParams& bp, const BoundSet& bounds) {
  os << bp.n() << "," << format_double(bp.p()) << "," << format_double(bp.epsilon()) << ","
     << bp.big_k();
  if (bounds.exact_tail) {
    os << "," << format_double(*bounds.exact_tail) << ","
       << format_double(std::log(*bounds.exact_tail));
  } else {
    os << ",n/a (K),n/a (K)";
  }
  put_pair(os, bounds.eq3, "n/a (hypothesis)");
  put_pair(os, bounds.eq4, "n/a (hypothesis)");
  put_pair(os, bounds.eq5, "n/a (hypothesis)");
  put_pair(os, bounds.eq6, "n/a (hypothesis)");
  put_pair(os, bounds.eq6_amplified, "n/a (hypothesis)");
  os << "\n";
}

}  // namespace fas

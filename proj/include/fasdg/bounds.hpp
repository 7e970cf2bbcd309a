#ifndef FASDG_BOUNDS_HPP
#define FASDG_BOUNDS_HPP

#include <cmath>
#include <iosfwd>
#include <optional>

namespace fas {

// Probability carried in log space; exponents reach order -10^13 at the sizes
// studied here, far below what a linear double can hold.
struct LogProb {
  double log_value = 0.0;
  double linear() const { return std::exp(log_value); }
  // A bound above 1 is reported as-is, never clamped.
  bool vacuous() const { return log_value > 0.0; }
};

// Shared parameter bundle for the tail bounds: n vertices give K = (n^2-n)/2
// unordered pairs, each contributing one forward/backward coin pair; the
// ratio threshold is r = 1 + epsilon. Requires n >= 1, 0 < p < 1, epsilon >= 0.
class BoundParams {
 public:
  BoundParams(int n, double p, double epsilon);

  int n() const { return n_; }
  double p() const { return p_; }
  double epsilon() const { return eps_; }
  long long big_k() const { return static_cast<long long>(n_) * (n_ - 1) / 2; }
  double r() const { return 1.0 + eps_; }
  double q() const { return 1.0 - p_; }

 private:
  int n_;
  double p_;
  double eps_;
};

// h(u) = (1+u)log(1+u) - u, the rate function in Bennett's inequality.
// Requires u >= 0.
double bennett_h(double u);

// log 2 - p^2 (eps/(2+eps))^2 K. No hypotheses beyond the parameter domain.
LogProb hoeffding_ratio_bound(const BoundParams& bp);

// -(1+r^2) K p q * h(eps / ((1+r^2) q)). Requires p <= 1/2 and r*p <= 1,
// else HypothesisError.
LogProb bennett_bound(const BoundParams& bp);

// Quadratic approximation of bennett_bound for small eps:
// -K p eps^2 / (2 (1+r^2) q). Same hypotheses as bennett_bound. Not a proven
// bound; kept for comparison only.
LogProb bennett_small_eps(const BoundParams& bp);

// Direct Chernoff route: -(p / 2q) K eps^2 / (1+r^2). Requires p <= 1/2.
LogProb chernoff_direct_bound(const BoundParams& bp);

// Pr(X >= r Y) for independent X, Y ~ Binomial(K, p), by the exact double
// sum over the joint pmf. Capped at K <= 10^4, else CapacityError.
double exact_ratio_tail(const BoundParams& bp);

// Sum of log k for k <= n, compensated so the value stays accurate out to
// n = 10^6 and beyond.
double log_factorial(int n);

// Union bound over the n! orderings: adds log n! to a raw-ratio bound.
LogProb amplify_by_permutations(LogProb bound, int n);

// C(eps) = 4 (1 + (1+eps)^2) / eps^2: with p = C log n / n the amplified
// direct bound goes to zero. Requires eps > 0.
double threshold_constant(double epsilon);

// Every bound this library proves or compares, evaluated at one parameter
// point. Entries are empty when their hypotheses fail (eq4/eq5/eq6 family)
// or the exact sum exceeds its cap.
struct BoundSet {
  std::optional<double> exact_tail;
  std::optional<LogProb> eq3;            // hoeffding_ratio_bound
  std::optional<LogProb> eq4;            // bennett_bound
  std::optional<LogProb> eq5;            // bennett_small_eps
  std::optional<LogProb> eq6;            // chernoff_direct_bound
  std::optional<LogProb> eq6_amplified;  // chernoff + log n!
};

BoundSet evaluate_bounds(const BoundParams& bp);

void write_bounds_csv_header(std::ostream& os);
void write_bounds_csv_row(std::ostream& os, const BoundParams& bp, const BoundSet& bounds);

}  // namespace fas

#endif

#pragma once

#include <span>
#include <string>

namespace curvlab::criteria {

enum class Side { Left, Right };
enum class Bound { UpperMu, LowerNu };
enum class EndpointCase { J, JJ, JJJ, JJJJ };
enum class InteriorCase { H, HH };
enum class Holds { Guaranteed, NotGuaranteed };

[[nodiscard]] const char* to_string(Side s);
[[nodiscard]] const char* to_string(Bound b);
[[nodiscard]] const char* to_string(EndpointCase c);
[[nodiscard]] const char* to_string(InteriorCase c);
[[nodiscard]] const char* to_string(Holds h);

/// One-sided power-log bound at `point`:
///   mu(x) =  C d^alpha |log d|^beta   (UpperMu)
///   nu(x) = -C d^alpha |log d|^beta   (LowerNu)
/// with d = |x - point| in (0, delta], delta < 1.
struct Envelope {
  double point = 0.0;
  Side side = Side::Right;
  double C = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  Bound bound = Bound::UpperMu;
  double delta = 0.5;
};

/// Throws Error(InvalidArgument / NotLocallyIntegrable) when the envelope is malformed.
void validate(const Envelope& env);

struct CriterionVerdict {
  Holds holds = Holds::NotGuaranteed;
  bool divergent = false;
  bool antiderivative_positive = false;
  /// Set when the verdict comes from sampled data rather than the closed-form table.
  bool heuristic = false;
  std::string detail;
};

/// Divergence of the integral of M(d)^{-1/2} near d = 0, where
/// M(d) = int_0^d C t^alpha |log t|^beta dt ~ C d^{alpha+1} |log d|^beta / (alpha+1).
/// True iff alpha > 1, or alpha = 1 and beta <= 2.
/// Throws Error(NotLocallyIntegrable) for alpha <= -1.
[[nodiscard]] bool powerlog_sqrt_divergence(double alpha, double beta);

/// Endpoint criteria (j)-(jjjj): (j)/(jjj) anchor at a looking right, (jj)/(jjjj) at b
/// looking left; (j)/(jj) use an upper bound mu, (jjj)/(jjjj) a lower bound nu.
/// Throws Error(CriterionShapeError) on side or bound mismatch.
[[nodiscard]] CriterionVerdict endpoint_regularity(EndpointCase which, const Envelope& env);

/// Interior criteria (h)/(hh) at a change point strictly inside (a, b). Exactly the
/// side supplied is evaluated; one side is sufficient.
///   (h):  left side needs mu (f >= 0 there), right side needs nu (f <= 0 there)
///   (hh): left side needs nu, right side needs mu
[[nodiscard]] CriterionVerdict interior_regularity(InteriorCase which, const Envelope& env, double a, double b);

/// Comparison function of the strong maximum principle, G(s) ~ C s^p |log s|^q on (0, eps],
/// or G == 0 there when zero_case is set.
struct ComparisonG {
  double C = 1.0;
  double p = 2.0;
  double q = 0.0;
  double epsilon = 0.5;
  bool zero_case = false;
};

/// Guaranteed when zero_case, or when int_0 G^{-1/2} diverges: p > 2, or p = 2 and q <= 2.
[[nodiscard]] CriterionVerdict smp_check(const ComparisonG& g);

/// One side of an Osgood bound H(s) = C |s|^q |log|s||^r on 0 < |s| <= eps.
struct StateEnvelope {
  double C = 1.0;
  double q = 1.0;
  double r = 0.0;
  double epsilon = 0.5;
};

[[nodiscard]] double evaluate(const StateEnvelope& h, double s);

/// Guaranteed iff both one-sided integrals of 1/H diverge: q > 1, or q = 1 and r <= 1.
[[nodiscard]] CriterionVerdict osgood_check(const StateEnvelope& left, const StateEnvelope& right);

/// Heuristic verdict for a tabulated bound mu sampled at distances d (increasing, in (0, delta]).
/// M is accumulated by the trapezoid rule and its log-log slope near 0 is fitted;
/// the verdict is labelled heuristic.
[[nodiscard]] CriterionVerdict heuristic_sqrt_divergence(std::span<const double> d, std::span<const double> mu);

}  // namespace curvlab::criteria

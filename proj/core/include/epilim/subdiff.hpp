#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epilim/delta_plus.hpp"
#include "epilim/measure.hpp"

namespace epilim {

struct IntegrandSequence {
  std::function<Integrand(std::int64_t)> provider;
  Tail tail;
};

struct SimpleFunctionSequence {
  std::function<SimpleFunction(std::int64_t)> provider;
  std::size_t atom_count = 0;
  Tail tail;
};

enum class Verdict { certified, refuted, inconclusive };

/// Outcome of a checker. Refutations carry a witness that replays through
/// the defining inequality; certifications are exact only over the declared
/// candidate set (grids, ladders, sampling budget), recorded in resolution.
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
  std::vector<std::pair<double, double>> trace;  // (r or n or eps, value)
  bool approximate = false;
  std::string resolution;

  struct Witness {
    std::int64_t n = 0;
    double r = 0.0;
    std::size_t atom = 0;
    double direction = 0.0;               // violating point e (scalar case)
    SimpleFunction x;                     // violating simple function, when set
    std::vector<std::size_t> set;         // violating atom set, when set
    double value = 0.0;                   // violating quantity
  };
  std::optional<Witness> witness;

  bool certified() const { return verdict == Verdict::certified; }
  bool refuted() const { return verdict == Verdict::refuted; }
};

/// Atomwise differential quotient r^-1 (f(x0 + r x) - f(x0)); f(x0) must be
/// finite at every atom.
std::vector<ExtReal> diff_quotient(const Integrand& f, const SimpleFunction& x0,
                                   const SimpleFunction& x, double r, const MeasureSpace& space);

/// Default quotient ladder {2^-1, ..., 2^-20}.
std::vector<double> default_r_ladder();

/// Bundled quotient instance: integrand, base point, and the r ladder.
struct DiffQuotientSpec {
  Integrand f;
  SimpleFunction x0;
  std::vector<double> r_ladder = default_r_ladder();

  /// Enforces the finiteness invariant f(x0) atomwise; throws otherwise.
  void validate(const MeasureSpace& space) const;
};

std::vector<ExtReal> diff_quotient(const DiffQuotientSpec& spec, const SimpleFunction& x,
                                   double r, const MeasureSpace& space);

/// Lower compactness property of (f_n) along (x_n): negative parts
/// eventually L1-bounded with vanishing equi-integrability index.
Certificate lcp_check(const IntegrandSequence& f, const SimpleFunctionSequence& x,
                      const MeasureSpace& space);

/// Sampling-based Ioffe criterion: refuted when any admissible sampled
/// sequence (functional values bounded above) fails the lcp; otherwise
/// certified within the sampling budget, never a proof.
Certificate ioffe_criterion(const IntegrandSequence& f, const SimpleFunction& x,
                            const std::function<SimpleFunctionSequence(int)>& sampler, int budget,
                            const MeasureSpace& space);

/// B-subderivative criterion for the L_p ball: the negative-part integral of
/// the shifted quotient, maximized over the ball by separable resource
/// allocation (independent atom maxima for p = inf, a norm-budget dynamic
/// program otherwise), must vanish along the r ladder.
Certificate frechet_certificate(const Integrand& f, const SimpleFunction& x0,
                                const SimpleFunction& x_star, double p,
                                const std::vector<double>& ball_radii,
                                const std::vector<double>& r_ladder, const MeasureSpace& space);

struct GrowthCondition {
  enum class Kind { lp, orlicz, linf } kind = Kind::lp;
  double p = 1.0;                   // lp
  double lambda = 1.0;              // orlicz / linf scaling
  std::optional<Integrand> phi;     // orlicz
  // The condition quantifies over every epsilon > 0; the declared ladder
  // descends to the certificate tolerance scale so sub-subgradient slope
  // defects cannot hide below the last rung.
  std::vector<double> eps_ladder = default_eps_ladder();

  // Optionally declared residual family u_r (indexed along the r ladder)
  // with its integrability mode; validated before use.
  enum class UMode { uniformly_integrable, l1_null, index_small };
  std::vector<SimpleFunction> u_family;
  UMode u_mode = UMode::l1_null;
  double u_mode_eps = 0.03125;  // bound for index_small

  static std::vector<double> default_eps_ladder();

  /// Checks nonnegativity and the declared mode of the residual family
  /// through the measure module; throws on violation.
  void validate_u_family(const MeasureSpace& space) const;
};

/// Builds the minimal admissible u_r atomwise and certifies when its L1 norm
/// vanishes along the r ladder for every epsilon in the ladder.
Certificate growth_certificate(const Integrand& f, const SimpleFunction& x0,
                               const SimpleFunction& x_star, const GrowthCondition& condition,
                               const std::vector<double>& r_ladder, const MeasureSpace& space);

enum class GlobalBoundVariant { moreau_rockafellar, weak_hadamard, s_p, s_infty };

struct GlobalBoundParams {
  double c = 1.0;     // s_p slope coefficient
  double a = 0.0;     // s_p offset
  double p = 2.0;     // s_p exponent
  double eta = 1.0;   // s_infty neighborhood
  double cap = 1e6;   // s_infty / weak_hadamard constant cap
};

/// Pointwise global inequalities scanned exactly on the declared grids.
/// s_p approximates the subgradient set by two-point finite-difference
/// slopes: refutations are sound, certifications carry the caveat.
Certificate global_lower_bound_checks(const Integrand& f, const SimpleFunction& x0,
                                      const SimpleFunction& x_star, GlobalBoundVariant variant,
                                      const GlobalBoundParams& params, const MeasureSpace& space);

struct HadamardBracket {
  ExtReal lower = ExtReal::neg_inf();
  ExtReal upper = ExtReal::pos_inf();
  bool diverging = false;
  std::vector<std::pair<double, double>> trace;  // (r, quotient integral)
};

enum class DirectionMode { norm, fixed_direction };

/// Sequential Hadamard directional subderivate bracket: upper bound from the
/// constant sequence down the r ladder, lower bound from the best certified
/// global subgradient candidate, never a point value. The mode records
/// whether the infimum quantifies over norm-converging sequences or a fixed
/// direction; the constant-sequence upper bound is admissible for both.
HadamardBracket hadamard_directional_subderivate(const Integrand& f, const SimpleFunction& x0,
                                                 const SimpleFunction& x,
                                                 const std::vector<SimpleFunction>& xstar_candidates,
                                                 const MeasureSpace& space,
                                                 DirectionMode mode = DirectionMode::norm);

}  // namespace epilim

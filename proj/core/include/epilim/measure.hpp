#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epilim/grid.hpp"
#include "epilim/sequence.hpp"

namespace epilim {

/// Finite weighted atom set, optionally carrying a dyadic refinement schedule
/// that emulates the atomless interval (0,1] with 2^depth equal cells.
/// sigma-finite truncation is represented by an increasing covering: atom i
/// belongs to every set of the covering from index covering[i] on.
struct MeasureSpace {
  std::vector<double> atoms;  // weights, all > 0
  std::optional<int> refinement_depth;
  std::vector<int> covering;  // per-atom tag, default all 0
  std::string label;

  static MeasureSpace finite(std::vector<double> weights, std::vector<int> covering = {},
                             std::string label = "finite");
  static MeasureSpace dyadic(int depth, std::string label = "dyadic");

  std::size_t size() const { return atoms.size(); }
  double total_mass() const;
  double min_weight() const;
  bool refining() const { return refinement_depth.has_value(); }
  bool equal_weights() const;
  /// Left endpoint of cell i when refining: (i/2^d, (i+1)/2^d].
  double cell_left(std::size_t i) const;
  int max_covering_tag() const;
};

/// Measurable function emulated as a per-atom vector in R^dim, dim in {1,2}.
struct SimpleFunction {
  int dim = 1;
  std::vector<Point> values;  // one per atom; second coordinate unused if dim == 1

  static SimpleFunction constant(std::size_t atoms, double v);
  static SimpleFunction constant2(std::size_t atoms, double a, double b);
  static SimpleFunction from_scalars(const std::vector<double>& v);

  double norm(std::size_t atom) const;  // euclidean on the first dim coords
  std::size_t size() const { return values.size(); }
};

/// Map (atom, point) -> extended real, with structure flags and an
/// evaluation grid for conjugation and sup-solving.
struct Integrand {
  std::function<ExtReal(std::size_t, Point)> eval;
  int dim = 1;
  bool convex_in_e = false;
  bool nonnegative = false;
  bool young = false;
  Grid grid;

  ExtReal operator()(std::size_t atom, double e) const { return eval(atom, Point{e, 0.0}); }
  ExtReal operator()(std::size_t atom, Point e) const { return eval(atom, e); }
};

/// Piecewise-linear convex nondecreasing t >= 0 function with psi(0) = 0 and
/// strictly increasing slopes. The certificate object produced by the
/// de la Vallee Poussin construction; also a convenient Young-function rep.
struct PiecewiseLinearYoung {
  std::vector<double> knots;   // 0 = k_0 < k_1 < ...; slope s_j applies on [k_j, k_{j+1})
  std::vector<double> slopes;  // strictly increasing, slopes[0] >= 0

  double operator()(double t) const;  // t >= 0
  /// Integrand phi(omega, e) = alpha_omega * psi(|e|/alpha_omega), alpha == 1
  /// when no vector is supplied.
  Integrand as_integrand(const Grid& grid, std::vector<double> alpha = {}) const;
};

/// Decreasing sequence of atom-index sets with a declared null tail.
struct SetSequence {
  std::vector<std::vector<std::size_t>> sets;
  bool null_tail = true;
};

/// Per-atom extended-real vector integrated with the upper-integral
/// convention: I_v = I_{v+} - I_{v-}, and +inf - inf = +inf.
ExtReal upper_integral(const std::vector<ExtReal>& v, const MeasureSpace& space);

/// I_f(x) = upper integral of omega -> f(omega, x(omega)).
ExtReal integral_functional(const Integrand& f, const SimpleFunction& x, const MeasureSpace& space);

/// L_p norm, p in [1, inf]; p = inf is the max over atoms.
double lp_norm(const SimpleFunction& x, const MeasureSpace& space, double p);

/// Luxemburg-Minkowski gauge of the unit integral sublevel set of a Young
/// integrand: inf{t > 0 : I_phi(x/t) <= 1}, bisected to relative 1e-10.
ExtReal orlicz_gauge(const Integrand& phi, const SimpleFunction& x, const MeasureSpace& space);

/// Validates the Young flags on the evaluation grid; throws on violation.
void validate_young(const Integrand& phi, const MeasureSpace& space);

struct UiReport {
  bool bounded = false;
  bool equi_small_sets = false;  // part (1) of the two-part definition
  bool equi_escape = false;      // part (2), via the covering tags
  bool equi = false;
  bool ui = false;
  double norm_bound = 0.0;
  double small_set_modulus = 0.0;
  double escape_modulus = 0.0;
  // Violation witness (meaningful when !equi): member index and atom set.
  std::size_t witness_member = 0;
  std::vector<std::size_t> witness_set;
  double witness_value = 0.0;
};

/// Two-part p-equi-integrability + boundedness test over a finite family.
UiReport uniform_integrability_test(const std::vector<SimpleFunction>& family,
                                    const MeasureSpace& space, double p = 1.0);

struct YoungCertificate {
  bool ok = false;
  std::string message;
  PiecewiseLinearYoung psi;
  double sup_integral = 0.0;  // post-hoc sup_x I_psi(|x|), must be <= 1
  UiReport ui;                // carries the witness on refusal
};

/// de la Vallee Poussin construction: a Young certificate with
/// sup_{x in family} I_{psi(|x|)} <= 1, any valid psi accepted.
YoungCertificate young_from_ui(const std::vector<SimpleFunction>& family,
                               const MeasureSpace& space);

struct BitingReport {
  bool ok = false;
  std::string message;
  std::vector<std::vector<std::size_t>> exceptional;  // decreasing A_k
  std::vector<double> exceptional_mass;
  std::vector<double> remainder_modulus;  // per-k small-set modulus off A_k
  SimpleFunction limit_candidate;
  bool heuristic = false;  // tail oscillation detected off the last A_k
};

/// Biting extraction: decreasing exceptional sets by largest-contribution
/// removal, tail-window cell averages as the limit candidate.
BitingReport biting_extract(const std::vector<SimpleFunction>& seq, const MeasureSpace& space,
                            int levels = 5);

struct InterchangeReport {
  bool ok = false;  // preconditions held
  std::string message;
  double lhs = 0.0;  // separable sup of <x*,x> - I_f(x)
  double rhs = 0.0;  // sum of atomwise conjugates at x*
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Conjugate-interchange identity on the finite decomposable space: the
/// conjugate of I_f at x* equals I_{f*}(x*). Left side by direct separable
/// maximization, right side through the conjugate transform machinery.
InterchangeReport conjugate_interchange_check(const Integrand& f, const SimpleFunction& x_star,
                                              const MeasureSpace& space, double tolerance = 1e-9);

}  // namespace epilim

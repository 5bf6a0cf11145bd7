#pragma once

#include <functional>
#include <string>
#include <vector>

#include "epilim/grid.hpp"
#include "epilim/legendre.hpp"
#include "epilim/sequence.hpp"

namespace epilim {

/// Rule n -> GridFunction on one shared grid, with a declared tail.
/// The provider must be a pure function of n; consumers may evaluate
/// distinct indices concurrently and reports never depend on the order.
struct FunctionSequence {
  std::function<GridFunction(std::int64_t)> provider;
  Grid grid;
  Tail tail;

  /// Samples the provider and checks the declared tail pattern.
  void validate() const;
};

/// Epi-limit of a sequence on the grid. For truncated tails the per-point
/// value is window evidence, never an exact limit; bracket[i] carries the
/// liminf/limsup evidence pair. diverging[i] marks points whose evidence
/// exceeded the ceiling (iota-type limits stay representable).
struct EpiLimitReport {
  GridFunction function;
  std::vector<std::array<ExtReal, 2>> bracket;
  std::vector<std::uint8_t> diverging;
  bool exact = false;
  std::string label;
};

/// T-li_e f_n(x) = sup_{delta in radii} liminf_n inf_{x' in B(x,delta)} f_n(x').
/// Balls are closed max-norm balls on the grid; radii must be
/// grid-commensurate with the smallest >= h; liminf over n is tail-exact.
EpiLimitReport lower_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                              double diverge_ceiling = 1e9);

/// Same with limsup over n.
EpiLimitReport upper_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                              double diverge_ceiling = 1e9);

/// Sequential lower epi-limit; coincides with lower_epilimit on metric grids
/// and is computed as that alias under its own label (the coincidence itself
/// is a test target).
EpiLimitReport seq_lower_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                                  double diverge_ceiling = 1e9);

/// Default radii ladder {h, 2h, 4h, 8h}.
std::vector<double> default_radii(const Grid& g);

struct ConjugateIdentityReport {
  bool precondition_ok = false;
  std::string message;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool evidence_only = false;  // truncated tail: limsup side is window evidence
};

/// Checks sup-norm agreement of (li_e f_n)* with limsup_n f_n* on the dual
/// grid, under the coercive lower-bound precondition (each f_n >= bound,
/// bound's boundary minimum exceeds its interior minimum by coercivity_margin).
ConjugateIdentityReport verify_conjugate_identity(const FunctionSequence& seq,
                                                  const GridFunction& lower_bound,
                                                  const DualGrid& dual, double tolerance,
                                                  double coercivity_margin = 0.5);

}  // namespace epilim

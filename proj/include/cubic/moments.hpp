#ifndef CUBIC_MOMENTS_HPP
#define CUBIC_MOMENTS_HPP

#include <string>
#include <vector>

#include "cubic/lfunctions.hpp"

namespace cubic {

enum class Mode { Exhaustive, Sample };

const char* mode_name(Mode m);

struct MomentOptions {
  Mode mode = Mode::Exhaustive;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Lifts the exhaustive cost cutoff.
  bool allow_large = false;
};

struct MomentReport {
  std::uint32_t q = 0;
  int g = 0;
  double s = 0.0;
  Mode mode = Mode::Exhaustive;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  /// |s - 1/3| < 1e-9: the prediction is C_q(g + B_q) instead of M_q(s).
  bool at_transition = false;
  Complex mean;
  /// Mean over the family together with the conjugate characters; equals Re(mean).
  double mean_doubled = 0.0;
  double std_error = 0.0;
  double prediction = 0.0;
  double envelope = 0.0;
  double elapsed_ms = 0.0;
  /// sum over the subset of a_n(chi), exact
  std::vector<Eisenstein> coeff_sums;
  /// FNV-1a digest of the ranks of the moduli used
  std::uint64_t sample_digest = 0;

  double ratio() const { return prediction == 0.0 ? 0.0 : mean.real() / prediction; }
};

/// Moduli of the characters averaged over: every square-free F of degree
/// 3g+1 in rank order, or sample_size uniform draws keyed by (seed, index).
/// Throws SampleTooLarge if the sample exceeds the family.
std::vector<Poly> family_subset(const FieldCtx& ctx, int g, const MomentOptions& opt);

/// Exhaustive work estimate in residue-symbol evaluations.
double exhaustive_cost(const FieldCtx& ctx, int g);

/// Theorem-level prediction: M_q(s) away from 1/3 (continued below 1/3 by the
/// same product), C_q(g + B_q) at the transition.
double moment_prediction(std::uint32_t q, int g, double s, bool at_transition);
/// q^{(3/10)(1-6s)g} + q^{-(1+9s)g/5 + 2 - 2s} + q^{(1-3s)g} E_s(g); 1 at the transition.
double moment_envelope(std::uint32_t q, int g, double s, bool at_transition);

/// Average of L(s, chi) over the family for each s of the grid. The L-data of
/// each character is computed once. Throws OutOfRange for s outside (0, 1).
std::vector<MomentReport> scan_s(const FieldCtx& ctx, int g, const std::vector<double>& s_grid,
                                 const MomentOptions& opt);

MomentReport moment(const FieldCtx& ctx, int g, double s, const MomentOptions& opt);

struct SplitReport {
  int A = 0;
  std::uint64_t n = 0;
  Complex principal;  // P_s / n
  Complex dual;       // D_s / n
  Complex direct;     // sum of L(s, chi) / n
  /// max over characters of |principal + dual - L| / max(1, |L|)
  double max_character_error = 0.0;
  double relative_error() const { return std::abs(principal + dual - direct) / std::max(1.0, std::abs(direct)); }
};

/// The split at 3A. The principal part is summed with the outer loop over f in
/// M_{<=3A} and the inner loop over the characters; the dual part comes from
/// the odd approximate functional equation per character. A < 0 selects
/// floor(3g/5). Throws BadSplit unless 0 <= A <= g.
SplitReport principal_dual_split(const FieldCtx& ctx, int g, double s, int A, const MomentOptions& opt);

}  // namespace cubic

#endif  // CUBIC_MOMENTS_HPP

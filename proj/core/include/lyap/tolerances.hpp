#pragma once

namespace lyap {

/// Relative tolerances shared by every numerical decision.
struct Tolerances {
  double rank_rel = 1e-9;  // singular values below rank_rel * sigma_max are zero
  double psd_rel = 1e-9;   // eigenvalue band for PSD decisions
  double eq_rel = 1e-9;    // entrywise / Frobenius equality checks

  /// Throws PreconditionError unless every field is finite and positive.
  void validate() const;
};

}  // namespace lyap

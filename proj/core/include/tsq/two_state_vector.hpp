#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "tsq/state_vector.hpp"

namespace tsq::tsv {

// Pre- and post-selected description ⟨Φ| |Ψ⟩. The backward-evolving bra is
// stored as the ket onto which the future post-selection projects; the
// conjugation happens at evaluation sites (ABL inner products, the
// time-reversal map).
struct TwoStateVector {
  StateVector bra;  // post-selection target |Φ⟩
  StateVector ket;  // pre-selected |Ψ⟩
  std::map<QubitId, SiteId> site_partition;
};

void validate(const TwoStateVector& tsv);

// ABL rule: P(k) = |⟨Φ|P_k|Ψ⟩|² / Σ_j |⟨Φ|P_j|Ψ⟩|². Projectors are
// full-space matrices forming a complete orthogonal family. Throws
// DomainError when the denominator vanishes (impossible pre/post pair for
// this measurement).
std::vector<double> abl_probability(const TwoStateVector& tsv,
                                    const std::vector<Eigen::MatrixXcd>& projectors);

}  // namespace tsq::tsv

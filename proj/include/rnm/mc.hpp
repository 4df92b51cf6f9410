#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rnm/geometry.hpp"
#include "rnm/kernel.hpp"
#include "rnm/types.hpp"

namespace rnm {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so batches are reproducible and streams never
// overlap. Mixing is splitmix64.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  double uniform();  // strictly inside (0, 1)
  double normal();
  Complex standard_complex() { return {normal(), normal()}; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

struct SampleBatch {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string potential;
  // One configuration per row.
  MatXc points;
  // Set when moduli are exact but angles are independent uniforms; such
  // batches only support counting in centered discs.
  bool radial_angles_synthetic = false;
};

// Eigenvalues of m iid matrices with independent complex Gaussian entries of
// variance 1/n.
SampleBatch sample_ginibre(int n, int m, std::uint64_t seed);

// Rotation-invariant ensembles: moduli are drawn exactly as independent
// radii (one per monomial degree, inverse CDF on a shared table); angles are
// synthetic.
SampleBatch sample_radial_rotation(const Potential& P, int n, int m,
                                   std::uint64_t seed);

// Exact determinantal sampler (sequential projection thinning with
// Householder downdates of the frame).
SampleBatch sample_dpp(const Kernel& K, int m, std::uint64_t seed);

void write_batch(const std::string& path, const SampleBatch& batch);
SampleBatch read_batch(const std::string& path);

// Per-configuration counts of points falling in the region.
VecX counts_in_region(const SampleBatch& batch, const Region& A);

struct MomentSummary {
  double mean = 0.0;
  double var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
};
MomentSummary count_moments(const VecX& counts);

// Mean and standard error of N_A * N_B across configurations.
struct PairCountStat {
  double mean = 0.0;
  double se = 0.0;
};
PairCountStat product_count_moment(const SampleBatch& batch, const Region& A,
                                   const Region& B);

// E[N_A N_B] for disjoint discs: the two-point intensity integrated over
// A x B by quadrature.
double expected_pair_count(const Kernel& K, const Region& A, const Region& B);

}  // namespace rnm

#pragma once

#include <cstdint>
#include <vector>

#include "svps/genome.hpp"

namespace svps {

/// Parameters of one piecewise-linear trap block on unitation u:
///   value = local_opt/slope_change * (slope_change - u)        for u in [0, slope_change]
///   value = global_opt/(block_len - slope_change) * (u - slope_change)   otherwise.
/// The deceptive local optimum sits at u = 0, the global one at u = block_len.
struct TrapParams {
  int block_len = 0;        // l, bits per block
  double local_opt = 0.0;   // a, value at u = 0
  double global_opt = 0.0;  // b, value at u = block_len
  int slope_change = 0;     // z, unitation where the low branch reaches zero

  // Standard setting: a = l-1, b = l, z = l-1. Requires l >= 2 so that z >= 1.
  static TrapParams defaults_for(int block_len);

  void validate() const;
};

double trap_value(int ones, const TrapParams& p);

/// m trap blocks concatenated over consecutive non-overlapping windows of the
/// genome; total fitness is the sum of the block values.
class TrapProblem {
 public:
  TrapProblem(TrapParams params, int num_blocks);

  const TrapParams& params() const { return params_; }
  int num_blocks() const { return num_blocks_; }
  int genome_length() const { return genome_length_; }

  /// Fitness of the all-ones genome; no other value exceeds it.
  double optimum_fitness() const { return optimum_; }

  double evaluate(const Genome& g) const;

  // Hot path: unchecked evaluation over packed words (length must match).
  double evaluate_words(const std::uint64_t* words) const;

 private:
  TrapParams params_;
  int num_blocks_;
  int genome_length_;
  std::vector<double> value_by_ones_;  // trap_value for u = 0..block_len
  double optimum_;
};

/// Problem with the standard trap setting for the given block size.
TrapProblem make_problem(int block_len, int num_blocks);

}  // namespace svps

#include "svps/trap.hpp"

#include <stdexcept>
#include <string>

namespace svps {

TrapParams TrapParams::defaults_for(int block_len) {
  if (block_len < 2)
    throw std::invalid_argument("trap block length must be at least 2 (slope change would vanish)");
  TrapParams p;
  p.block_len = block_len;
  p.local_opt = static_cast<double>(block_len - 1);
  p.global_opt = static_cast<double>(block_len);
  p.slope_change = block_len - 1;
  return p;
}

void TrapParams::validate() const {
  if (block_len < 2) throw std::invalid_argument("trap block length must be at least 2");
  if (slope_change <= 0 || slope_change >= block_len)
    throw std::invalid_argument("slope change must lie strictly inside (0, block_len)");
  if (local_opt <= 0.0) throw std::invalid_argument("local optimum must be positive");
  if (global_opt <= local_opt)
    throw std::invalid_argument("global optimum must exceed the local optimum");
}

double trap_value(int ones, const TrapParams& p) {
  p.validate();
  if (ones < 0 || ones > p.block_len)
    throw std::domain_error("unitation " + std::to_string(ones) + " outside [0, block_len]");
  if (ones <= p.slope_change)
    return p.local_opt / p.slope_change * (p.slope_change - ones);
  return p.global_opt / (p.block_len - p.slope_change) * (ones - p.slope_change);
}

TrapProblem::TrapProblem(TrapParams params, int num_blocks)
    : params_(params), num_blocks_(num_blocks) {
  params_.validate();
  if (num_blocks_ < 1) throw std::invalid_argument("need at least one trap block");
  genome_length_ = params_.block_len * num_blocks_;
  value_by_ones_.resize(static_cast<std::size_t>(params_.block_len) + 1);
  for (int u = 0; u <= params_.block_len; ++u)
    value_by_ones_[static_cast<std::size_t>(u)] = trap_value(u, params_);
  // Accumulated exactly like evaluate() on the all-ones genome, so the
  // success test can compare with >= against an attainable value.
  optimum_ = 0.0;
  for (int b = 0; b < num_blocks_; ++b) optimum_ += value_by_ones_.back();
}

double TrapProblem::evaluate(const Genome& g) const {
  if (g.length() != genome_length_)
    throw std::invalid_argument("genome length " + std::to_string(g.length()) +
                                " does not match problem length " + std::to_string(genome_length_));
  return evaluate_words(g.words().data());
}

double TrapProblem::evaluate_words(const std::uint64_t* words) const {
  const int l = params_.block_len;
  const std::uint64_t mask = (l == 64) ? ~0ull : (1ull << l) - 1;
  double total = 0.0;
  int bitpos = 0;
  for (int b = 0; b < num_blocks_; ++b, bitpos += l) {
    const int wi = bitpos >> 6;
    const int off = bitpos & 63;
    std::uint64_t chunk = words[wi] >> off;
    if (off + l > 64) chunk |= words[wi + 1] << (64 - off);
    total += value_by_ones_[static_cast<std::size_t>(std::popcount(chunk & mask))];
  }
  return total;
}

TrapProblem make_problem(int block_len, int num_blocks) {
  return TrapProblem(TrapParams::defaults_for(block_len), num_blocks);
}

}  // namespace svps

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "svps/genome.hpp"
#include "svps/rng.hpp"
#include "svps/schedule.hpp"
#include "svps/trap.hpp"

namespace svps {

struct GAConfig {
  double crossover_probability = 1.0;
  int tournament_size = 2;
  int max_generations = 2000;
  bool count_initial_evaluations = true;

  void validate() const;
};

enum class Termination { optimum_found, fixation, generation_cap };

struct RunOutcome {
  bool success = false;
  // Evaluation counter value at the evaluation that first produced the
  // optimum; empty when the run failed.
  std::optional<std::uint64_t> evaluations_to_solution;
  std::uint64_t total_evaluations = 0;
  int generations = 0;
  Termination termination = Termination::generation_cap;

  bool operator==(const RunOutcome&) const = default;
};

/// Evaluation bookkeeping shared by population construction and breeding.
/// Counts evaluations and remembers the counter value of the first optimum.
struct EvalStats {
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> first_optimum_at;
  double optimum_threshold = std::numeric_limits<double>::infinity();
  bool counting = true;
  bool stop_on_optimum = false;

  void record(double fitness) {
    if (counting) ++evaluations;
    if (!first_optimum_at && fitness >= optimum_threshold) first_optimum_at = evaluations;
  }
  bool hit() const { return first_optimum_at.has_value(); }
};

/// One generation of evaluated genomes in a flat packed-word buffer.
class Population {
 public:
  Population(int genome_length, int expected_size = 0);

  int size() const { return static_cast<int>(fitness_.size()); }
  int genome_length() const { return genome_length_; }
  int words_per_genome() const { return words_per_; }
  int generation() const { return generation_; }
  void set_generation(int g) { generation_ = g; }

  std::span<const std::uint64_t> member(int i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_per_,
            static_cast<std::size_t>(words_per_)};
  }
  double fitness(int i) const { return fitness_[static_cast<std::size_t>(i)]; }

  Genome genome(int i) const;

  /// Appends a genome given as packed words and its cached fitness.
  void append(const std::uint64_t* words, double fitness);

  /// Reserves one slot and returns its mutable word span; pair with
  /// commit_last() once the words are final.
  std::uint64_t* append_slot();
  void commit_last(double fitness) { fitness_.push_back(fitness); }

  static Population from_genomes(const std::vector<Genome>& genomes, const TrapProblem& problem,
                                 EvalStats* stats = nullptr);

 private:
  int genome_length_;
  int words_per_;
  int generation_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<double> fitness_;
};

/// n random genomes, bits iid fair coin, fitness evaluated on construction.
Population random_population(int n, const TrapProblem& problem, RandomStream& rng,
                             EvalStats* stats = nullptr);

/// Index of the best of tournament_size members drawn uniformly with
/// replacement; ties go to the earliest draw.
int binary_tournament(const Population& pop, const GAConfig& config, RandomStream& rng);

/// Suffix exchange at the given cut point (1 <= cut < length).
std::pair<Genome, Genome> one_point_crossover_at(const Genome& a, const Genome& b, int cut);

/// With probability crossover_probability picks a uniform cut and swaps
/// suffixes; otherwise returns copies of the parents.
std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b,
                                              const GAConfig& config, RandomStream& rng);

bool is_fixated(const Population& pop);

/// Breeds exactly target_size offspring by repeated {tournament x2,
/// crossover, emit both children}; an odd target keeps only the first child
/// of the last pairing. Full generational replacement, no elitism. With
/// stats->stop_on_optimum set the returned population may be truncated at the
/// evaluation that hit the optimum.
Population next_generation(const Population& pop, int target_size, const TrapProblem& problem,
                           const GAConfig& config, RandomStream& rng, EvalStats* stats = nullptr);

/// Full selectorecombinative run under the size schedule. Terminates on the
/// exact evaluation that reaches the optimum, on fixation, or at the
/// generation cap.
RunOutcome run(const TrapProblem& problem, const SvpsSchedule& schedule, const GAConfig& config,
               std::uint64_t seed);

/// Same loop, but generation 0 is the given genome list instead of a random
/// population.
RunOutcome run_from_genomes(const std::vector<Genome>& initial, const TrapProblem& problem,
                            const SvpsSchedule& schedule, const GAConfig& config,
                            std::uint64_t seed);

}  // namespace svps

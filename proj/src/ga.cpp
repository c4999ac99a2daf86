#include "svps/ga.hpp"

#include <cstring>
#include <stdexcept>

namespace svps {

void GAConfig::validate() const {
  if (crossover_probability < 0.0 || crossover_probability > 1.0)
    throw std::invalid_argument("crossover probability must lie in [0, 1]");
  if (tournament_size < 2) throw std::invalid_argument("tournament size must be at least 2");
  if (max_generations < 1) throw std::invalid_argument("generation cap must be at least 1");
}

Population::Population(int genome_length, int expected_size)
    : genome_length_(genome_length), words_per_(Genome::word_count(genome_length)) {
  if (genome_length < 1) throw std::invalid_argument("genome length must be positive");
  if (expected_size > 0) {
    bits_.reserve(static_cast<std::size_t>(expected_size) * words_per_);
    fitness_.reserve(static_cast<std::size_t>(expected_size));
  }
}

Genome Population::genome(int i) const {
  Genome g(genome_length_);
  auto w = member(i);
  for (int bit = 0; bit < genome_length_; ++bit)
    if ((w[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1u) g.set(bit, true);
  return g;
}

void Population::append(const std::uint64_t* words, double fitness) {
  bits_.insert(bits_.end(), words, words + words_per_);
  fitness_.push_back(fitness);
}

std::uint64_t* Population::append_slot() {
  bits_.resize(bits_.size() + static_cast<std::size_t>(words_per_), 0);
  return bits_.data() + bits_.size() - words_per_;
}

Population Population::from_genomes(const std::vector<Genome>& genomes, const TrapProblem& problem,
                                    EvalStats* stats) {
  if (genomes.empty()) throw std::invalid_argument("population cannot be empty");
  Population pop(problem.genome_length(), static_cast<int>(genomes.size()));
  for (const auto& g : genomes) {
    double f = problem.evaluate(g);  // validates length
    if (stats) stats->record(f);
    pop.append(g.words().data(), f);
  }
  return pop;
}

Population random_population(int n, const TrapProblem& problem, RandomStream& rng,
                             EvalStats* stats) {
  if (n < 2) throw std::invalid_argument("population size must be at least 2 to select parents");
  const int length = problem.genome_length();
  const int words = Genome::word_count(length);
  const int tail = length & 63;
  const std::uint64_t top_mask = tail ? (1ull << tail) - 1 : ~0ull;
  Population pop(length, n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t* slot = pop.append_slot();
    for (int w = 0; w < words; ++w) slot[w] = rng.next_u64();
    slot[words - 1] &= top_mask;
    double f = problem.evaluate_words(slot);
    if (stats) {
      stats->record(f);
      if (stats->stop_on_optimum && stats->hit()) {
        pop.commit_last(f);
        return pop;
      }
    }
    pop.commit_last(f);
  }
  return pop;
}

int binary_tournament(const Population& pop, const GAConfig& config, RandomStream& rng) {
  if (pop.size() == 0) throw std::invalid_argument("cannot select from an empty population");
  const auto n = static_cast<std::uint32_t>(pop.size());
  int best = static_cast<int>(rng.below(n));
  for (int k = 1; k < config.tournament_size; ++k) {
    int challenger = static_cast<int>(rng.below(n));
    if (pop.fitness(challenger) > pop.fitness(best)) best = challenger;
  }
  return best;
}

namespace {

// child1 = a[0..cut) + b[cut..len); child2 mirrored.
void crossover_words(const std::uint64_t* a, const std::uint64_t* b, int words, int cut,
                     std::uint64_t* c1, std::uint64_t* c2) {
  const int cut_word = cut >> 6;
  const int off = cut & 63;
  for (int i = 0; i < cut_word; ++i) {
    c1[i] = a[i];
    c2[i] = b[i];
  }
  int rest = cut_word;
  if (off != 0) {
    const std::uint64_t low = (1ull << off) - 1;
    c1[cut_word] = (a[cut_word] & low) | (b[cut_word] & ~low);
    c2[cut_word] = (b[cut_word] & low) | (a[cut_word] & ~low);
    rest = cut_word + 1;
  }
  for (int i = rest; i < words; ++i) {
    c1[i] = b[i];
    c2[i] = a[i];
  }
}

}  // namespace

std::pair<Genome, Genome> one_point_crossover_at(const Genome& a, const Genome& b, int cut) {
  if (a.length() != b.length()) throw std::invalid_argument("parent lengths differ");
  if (a.length() < 2) throw std::invalid_argument("crossover needs at least 2 bits");
  if (cut < 1 || cut >= a.length()) throw std::invalid_argument("cut point outside [1, length)");
  Genome c1(a.length()), c2(a.length());
  crossover_words(a.words().data(), b.words().data(), Genome::word_count(a.length()), cut,
                  const_cast<std::uint64_t*>(c1.words().data()),
                  const_cast<std::uint64_t*>(c2.words().data()));
  return {std::move(c1), std::move(c2)};
}

std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b,
                                              const GAConfig& config, RandomStream& rng) {
  if (a.length() != b.length()) throw std::invalid_argument("parent lengths differ");
  if (a.length() < 2) throw std::invalid_argument("crossover needs at least 2 bits");
  if (rng.unit() < config.crossover_probability) {
    int cut = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(a.length() - 1)));
    return one_point_crossover_at(a, b, cut);
  }
  return {a, b};
}

bool is_fixated(const Population& pop) {
  if (pop.size() == 0) throw std::invalid_argument("empty population");
  auto first = pop.member(0);
  for (int i = 1; i < pop.size(); ++i) {
    auto m = pop.member(i);
    if (std::memcmp(first.data(), m.data(), first.size_bytes()) != 0) return false;
  }
  return true;
}

Population next_generation(const Population& pop, int target_size, const TrapProblem& problem,
                           const GAConfig& config, RandomStream& rng, EvalStats* stats) {
  if (target_size < 2) throw std::invalid_argument("generation size must be at least 2");
  if (pop.genome_length() != problem.genome_length())
    throw std::invalid_argument("population and problem genome lengths differ");

  const int length = pop.genome_length();
  const int words = pop.words_per_genome();
  Population next(length, target_size);
  next.set_generation(pop.generation() + 1);

  std::vector<std::uint64_t> buf(static_cast<std::size_t>(words) * 2);
  std::uint64_t* child1 = buf.data();
  std::uint64_t* child2 = buf.data() + words;

  int produced = 0;
  while (produced < target_size) {
    const int p1 = binary_tournament(pop, config, rng);
    const int p2 = binary_tournament(pop, config, rng);
    const std::uint64_t* a = pop.member(p1).data();
    const std::uint64_t* b = pop.member(p2).data();
    if (rng.unit() < config.crossover_probability) {
      int cut = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(length - 1)));
      crossover_words(a, b, words, cut, child1, child2);
    } else {
      std::memcpy(child1, a, static_cast<std::size_t>(words) * 8);
      std::memcpy(child2, b, static_cast<std::size_t>(words) * 8);
    }
    for (const std::uint64_t* child : {child1, child2}) {
      if (produced >= target_size) break;  // odd target: drop the second child
      double f = problem.evaluate_words(child);
      if (stats) stats->record(f);
      next.append(child, f);
      ++produced;
      if (stats && stats->stop_on_optimum && stats->hit()) return next;
    }
  }
  return next;
}

namespace {

RunOutcome run_loop(Population pop, const TrapProblem& problem, const SvpsSchedule& schedule,
                    const GAConfig& config, RandomStream& rng, EvalStats stats) {
  if (stats.hit())
    return {true, stats.first_optimum_at, stats.evaluations, 0, Termination::optimum_found};

  const auto& sizes = schedule.sizes();
  for (int g = 1;; ++g) {
    if (is_fixated(pop))
      return {false, std::nullopt, stats.evaluations, g - 1, Termination::fixation};
    if (g > config.max_generations)
      return {false, std::nullopt, stats.evaluations, config.max_generations,
              Termination::generation_cap};
    const int target = g <= schedule.horizon ? sizes[static_cast<std::size_t>(g)] : sizes.back();
    pop = next_generation(pop, target, problem, config, rng, &stats);
    if (stats.hit())
      return {true, stats.first_optimum_at, stats.evaluations, g, Termination::optimum_found};
  }
}

}  // namespace

RunOutcome run(const TrapProblem& problem, const SvpsSchedule& schedule, const GAConfig& config,
               std::uint64_t seed) {
  config.validate();
  RandomStream rng(seed);
  EvalStats stats;
  stats.optimum_threshold = problem.optimum_fitness();
  stats.stop_on_optimum = true;
  stats.counting = config.count_initial_evaluations;

  Population pop = random_population(schedule.initial_size, problem, rng, &stats);
  stats.counting = true;
  return run_loop(std::move(pop), problem, schedule, config, rng, std::move(stats));
}

RunOutcome run_from_genomes(const std::vector<Genome>& initial, const TrapProblem& problem,
                            const SvpsSchedule& schedule, const GAConfig& config,
                            std::uint64_t seed) {
  config.validate();
  if (static_cast<int>(initial.size()) < 2)
    throw std::invalid_argument("population size must be at least 2 to select parents");
  RandomStream rng(seed);
  EvalStats stats;
  stats.optimum_threshold = problem.optimum_fitness();
  stats.counting = config.count_initial_evaluations;

  Population pop = Population::from_genomes(initial, problem, &stats);
  stats.counting = true;
  stats.stop_on_optimum = true;
  return run_loop(std::move(pop), problem, schedule, config, rng, std::move(stats));
}

}  // namespace svps

#pragma once

#include <span>
#include <vector>

#include "leodesign/optim.hpp"

namespace leodesign::detail {

// purpose tags for stream_rng
inline constexpr std::uint64_t kStreamInit = 1;
inline constexpr std::uint64_t kStreamSelect = 2;
inline constexpr std::uint64_t kStreamCrossover = 3;
inline constexpr std::uint64_t kStreamMutation = 4;
inline constexpr std::uint64_t kStreamSwarm = 5;
inline constexpr std::uint64_t kStreamNeighbour = 6;

std::vector<double> mutation_sigmas(const DesignBounds& bounds, const OptimizerConfig& config);

TraceRow make_row(int iteration, const EvaluationRecord& best_ranked,
                  std::span<const EvaluationRecord> population, const IncumbentArchive& archive,
                  long long evaluations);

void offer_all(IncumbentArchive& archive, std::span<const EvaluationRecord> records);

} // namespace leodesign::detail

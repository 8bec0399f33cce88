#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degulab/graph.hpp"
#include "degulab/pair_analysis.hpp"

namespace degulab {

/// Keeps edge {u,v} independently with probability w(u,v). The coin of each
/// edge depends only on (seed, u, v), so the result does not depend on
/// iteration order or thread count.
WeightedGraph round_to_simple(const WeightedGraph& gw, std::uint64_t seed);

/// ceil(20 zeta^-2 log_base(n)); base e unless given.
std::size_t rounding_floor(double zeta, std::size_t n, double log_base = 0.0);

struct RoundingAuditOptions {
  std::size_t samples = 1000;
  /// 0 selects rounding_floor(zeta, n, log_base).
  std::size_t min_size = 0;
  /// Logarithm base of the default floor; 0 means natural log.
  double log_base = 0.0;
};

struct RoundingAuditReport {
  double zeta = 0.0;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t min_size = 0;
  std::uint64_t seed = 0;
  double max_deviation = 0.0;
  std::size_t exceedances = 0;
  double exceed_fraction = 0.0;
  std::vector<double> deviations;  // one per sample
  bool pass = false;
};

/// Draws `samples` pairs of independent uniformly random sets A, B (possibly
/// overlapping) with sizes uniform in [min_size, n] and records
/// |d_s(A,B) - d_w(A,B)|. ArgumentError when min_size > n or orders differ.
RoundingAuditReport audit_rounding(const WeightedGraph& gw, const WeightedGraph& gs, double zeta, std::uint64_t seed,
                                   const RoundingAuditOptions& options = {});

struct RoundingRetryResult {
  WeightedGraph simple;
  std::uint64_t seed_used = 0;
  std::size_t retries = 0;
  RoundingAuditReport audit;
};

/// Rounds with derived seeds until audit_rounding passes, up to max_attempts
/// (the last attempt is returned either way).
RoundingRetryResult round_until_audit_passes(const WeightedGraph& gw, double zeta, std::uint64_t seed,
                                             const RoundingAuditOptions& options = {}, std::size_t max_attempts = 16);

struct TransferReport {
  double eps_prime = 0.0;
  double zeta = 0.0;
  DegularityVerdict simple_verdict;    // on Gs at eps'
  DegularityVerdict weighted_verdict;  // on Gw at 4 eps'
  std::vector<Vertex> violator_overlap_a, violator_overlap_b;
  /// Largest |d_s - d_w| over (A,B) and the pairs (violators, other side).
  double rounding_deviation = 0.0;
  /// True when rounding_deviation exceeds zeta, the likely cause of a failed transfer.
  bool rounding_cause = false;
  bool sizes_meet_floor = false;
  bool asserted = false;
  bool holds = false;
  bool pass = false;
};

/// Requires (A,B) eps'-degular in Gs (PreconditionError otherwise) and checks
/// 4 eps'-degularity in Gw. Asserted only when zeta <= eps' and both sides
/// reach rounding_floor(zeta, n).
TransferReport degularity_transfer_check(const WeightedGraph& gw, const WeightedGraph& gs, const VertexSet& a,
                                         const VertexSet& b, double eps_prime, double zeta);

}  // namespace degulab

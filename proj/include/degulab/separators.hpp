#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "degulab/common.hpp"

namespace degulab {

enum class SeparatorMode { exact, generalized };

const char* to_string(SeparatorMode m) noexcept;

/// D bipartitions (A_i, B_i) of a ground set of M elements; row i stores the
/// indicator of A_i (B_i is the complement). Elements are 0-based here and
/// 1-based in the JSON form.
class BipartitionSystem {
 public:
  BipartitionSystem() = default;
  BipartitionSystem(std::size_t ground, std::size_t rows);

  std::size_t ground_size() const noexcept { return m_; }
  std::size_t row_count() const noexcept { return d_; }

  bool in_a(std::size_t row, std::size_t t) const noexcept { return cells_[row * m_ + t] != 0; }
  void set(std::size_t row, std::size_t t, bool in_a) noexcept { cells_[row * m_ + t] = in_a ? 1 : 0; }

  /// Sorted members of A_row.
  std::vector<std::size_t> row_members(std::size_t row) const;
  std::size_t row_size(std::size_t row) const noexcept;
  /// |{i : t in A_i}|.
  std::size_t column_sum(std::size_t t) const noexcept;

  /// exact when every column sum is D/2; generalized otherwise (odd D).
  SeparatorMode mode() const noexcept { return d_ % 2 == 0 ? SeparatorMode::exact : SeparatorMode::generalized; }

  friend bool operator==(const BipartitionSystem&, const BipartitionSystem&) = default;

 private:
  std::size_t m_ = 0;
  std::size_t d_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// How the builder arrived at its output.
struct SeparatorBuildInfo {
  /// "explicit" (M = 2), "window-gates" or "small-d" (see build_separator).
  std::string stage;
  SeparatorMode mode = SeparatorMode::exact;
  std::size_t attempts = 0;
  std::size_t random_rows = 0;
  std::size_t greedy_rows = 0;
};

struct SeparatorBuildOptions {
  std::size_t retry_cap = 1000;
};

/// Builds an (M, D)-separator: a 0.2-balanced system in which every element
/// lies in exactly D/2 of the sets A_i (or in floor/ceil(D/2) of them for odd D).
///
/// M = 2 uses the explicit system {1} x ceil(D/2), {2} x floor(D/2). Otherwise
/// a random stage draws rows in complementary pairs, followed by a greedy
/// completion that always picks the M/2 elements with the largest remaining
/// demand (ties to the lowest index). When 2*ceil(0.45D) <= D and
/// ceil(0.45D) lies in [0.41D, 0.49D] the random stage is gated by the
/// starred properties (each element in [0.41D, 0.49D] rows, each pair split at
/// least 0.3D times); otherwise ("small-d") it keeps the largest even number
/// of rows below D and only the final system is checked. Failed attempts are
/// redrawn up to `retry_cap` times.
///
/// Throws ArgumentError when M is odd, M < 2, D < 1, c_exp < 1 or
/// M > 2^ceil(D / c_exp); ConstructionError when the retry cap is exhausted.
BipartitionSystem build_separator(std::size_t ground, std::size_t rows, std::uint64_t c_exp, std::uint64_t seed,
                                  const SeparatorBuildOptions& options = {}, SeparatorBuildInfo* info = nullptr);

struct SeparatorReport {
  std::size_t ground = 0;
  std::size_t rows = 0;
  double c_bal = 0.2;
  bool rows_balanced = false;  // every |A_i| = M/2
  std::vector<std::size_t> unbalanced_rows;
  double min_split_fraction = 1.0;
  std::size_t worst_pair[2] = {0, 0};
  double required_split_fraction = 0.3;
  bool split_ok = false;
  std::map<std::size_t, std::size_t> column_sum_histogram;
  SeparatorMode mode = SeparatorMode::exact;
  bool column_sums_ok = false;
  bool pass = false;
};

/// Checks row cardinalities, the pairwise split bound |{i : |{t,t'} & A_i| = 1}|
/// >= (1/2 - c_bal) D, and the per-element counts (exactly D/2 for even D,
/// floor/ceil for odd D). Single-element ground sets have no pairs.
SeparatorReport verify_separator(const BipartitionSystem& s, double c_bal = 0.2);

/// Nonnegative weights on [M] summing to 1 (within 1e-9).
class MassVector {
 public:
  explicit MassVector(std::vector<double> lambda);
  const std::vector<double>& values() const noexcept { return lambda_; }
  double max_entry() const noexcept;

 private:
  std::vector<double> lambda_;
};

/// Number of rows i with min(sum_{A_i} lambda, sum_{B_i} lambda) >= zeta.
/// Requires zeta in (0, 1/8), ||lambda||_inf <= 1 - 8 zeta and a 1/5-balanced
/// system; violations raise PreconditionError.
std::size_t mass_split_count(const BipartitionSystem& s, const MassVector& lambda, double zeta);

std::string separator_to_json(const BipartitionSystem& s);
BipartitionSystem separator_from_json(const std::string& text);

}  // namespace degulab

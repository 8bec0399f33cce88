#include "degulab/separators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "degulab/rng.hpp"
#include "json.hpp"

namespace degulab {

const char* to_string(SeparatorMode m) noexcept { return m == SeparatorMode::exact ? "exact" : "generalized"; }

BipartitionSystem::BipartitionSystem(std::size_t ground, std::size_t rows)
    : m_(ground), d_(rows), cells_(ground * rows, 0) {}

std::vector<std::size_t> BipartitionSystem::row_members(std::size_t row) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < m_; ++t)
    if (in_a(row, t)) out.push_back(t);
  return out;
}

std::size_t BipartitionSystem::row_size(std::size_t row) const noexcept {
  std::size_t c = 0;
  for (std::size_t t = 0; t < m_; ++t) c += in_a(row, t);
  return c;
}

std::size_t BipartitionSystem::column_sum(std::size_t t) const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < d_; ++i) c += in_a(i, t);
  return c;
}

namespace {

/// Column bitsets: bit i of columns[t] is set iff t in A_i.
std::vector<std::vector<std::uint64_t>> column_bits(const BipartitionSystem& s, std::size_t row_limit) {
  const std::size_t words = (row_limit + 63) / 64;
  std::vector<std::vector<std::uint64_t>> cols(s.ground_size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < row_limit; ++i)
    for (std::size_t t = 0; t < s.ground_size(); ++t)
      if (s.in_a(i, t)) cols[t][i / 64] |= std::uint64_t{1} << (i % 64);
  return cols;
}

std::size_t split_count(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < x.size(); ++w) c += static_cast<std::size_t>(std::popcount(x[w] ^ y[w]));
  return c;
}

struct PairSplit {
  std::size_t min_split;
  std::size_t t, u;
};

PairSplit min_pair_split(const BipartitionSystem& s, std::size_t row_limit) {
  const auto cols = column_bits(s, row_limit);
  PairSplit best{row_limit, 0, 0};
  for (std::size_t t = 0; t < s.ground_size(); ++t)
    for (std::size_t u = t + 1; u < s.ground_size(); ++u) {
      const std::size_t c = split_count(cols[t], cols[u]);
      if (c < best.min_split) best = {c, t, u};
    }
  return best;
}

}  // namespace

BipartitionSystem build_separator(std::size_t ground, std::size_t rows, std::uint64_t c_exp, std::uint64_t seed,
                                  const SeparatorBuildOptions& options, SeparatorBuildInfo* info) {
  const std::size_t M = ground, D = rows;
  if (M < 2 || M % 2 != 0) throw ArgumentError("separator: M must be even and >= 2");
  if (D < 1) throw ArgumentError("separator: D must be >= 1");
  if (c_exp < 1) throw ArgumentError("separator: c_exp must be >= 1");
  const std::uint64_t exponent = (D + c_exp - 1) / c_exp;
  if (exponent < 63 && M > (std::uint64_t{1} << exponent))
    throw ArgumentError("separator: M = " + std::to_string(M) + " exceeds 2^ceil(D/c_exp) = 2^" +
                        std::to_string(exponent));

  SeparatorBuildInfo local;
  SeparatorBuildInfo& out_info = info ? *info : local;
  out_info = {};
  out_info.mode = D % 2 == 0 ? SeparatorMode::exact : SeparatorMode::generalized;

  const std::size_t half = M / 2;
  if (M == 2) {
    BipartitionSystem s(M, D);
    for (std::size_t i = 0; i < D; ++i) s.set(i, i < (D + 1) / 2 ? 0 : 1, true);
    out_info.stage = "explicit";
    out_info.attempts = 1;
    return s;
  }

  const std::size_t target = (D + 1) / 2;  // ceil(D/2)
  const std::size_t slack = D % 2;
  const std::size_t q = (45 * D + 99) / 100;  // ceil(0.45 D)
  const bool gates = 2 * q <= D && 41 * D <= 100 * q && 100 * q <= 49 * D;
  const std::size_t random_rows = gates ? 2 * q : std::min(2 * q, 2 * ((D - 1) / 2));
  const std::size_t greedy_rows = D - random_rows;
  out_info.stage = gates ? "window-gates" : "small-d";
  out_info.random_rows = random_rows;
  out_info.greedy_rows = greedy_rows;

  CounterRng rng(derive_seed(seed, Stream::separator, {M, D}));
  std::vector<std::size_t> perm(M);
  std::string last_failure = "no attempt made";
  const std::size_t cap = random_rows == 0 ? 1 : std::max<std::size_t>(1, options.retry_cap);

  for (std::size_t attempt = 1; attempt <= cap; ++attempt) {
    out_info.attempts = attempt;
    BipartitionSystem s(M, D);

    // Random stage: a uniformly random half followed by its complement.
    for (std::size_t i = 0; i + 1 < random_rows; i += 2) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t k = 0; k < half; ++k) std::swap(perm[k], perm[k + rng.below(M - k)]);
      for (std::size_t t = 0; t < M; ++t) s.set(i + 1, t, true);
      for (std::size_t k = 0; k < half; ++k) {
        s.set(i, perm[k], true);
        s.set(i + 1, perm[k], false);
      }
    }

    std::vector<std::size_t> count(M, 0);
    for (std::size_t i = 0; i < random_rows; ++i)
      for (std::size_t t = 0; t < M; ++t) count[t] += s.in_a(i, t);

    if (gates) {
      bool s1_star = true;
      for (std::size_t t = 0; t < M && s1_star; ++t) s1_star = 41 * D <= 100 * count[t] && 100 * count[t] <= 49 * D;
      if (!s1_star) {
        last_failure = "S1* (element counts in [0.41D, 0.49D])";
        continue;
      }
      const auto split = min_pair_split(s, random_rows);
      if (10 * split.min_split < 3 * D) {
        last_failure = "BP2* (pair split count >= 0.3D) for elements " + std::to_string(split.t + 1) + "," +
                       std::to_string(split.u + 1);
        continue;
      }
    }

    // chi(t): remaining demand of element t against ceil(D/2).
    std::vector<std::ptrdiff_t> chi(M);
    bool feasible = true;
    for (std::size_t t = 0; t < M; ++t) {
      chi[t] = static_cast<std::ptrdiff_t>(target) - static_cast<std::ptrdiff_t>(count[t]);
      if (chi[t] < 0 || chi[t] > static_cast<std::ptrdiff_t>(greedy_rows + slack)) feasible = false;
    }
    if (!feasible) {
      last_failure = "greedy invariant chi_1(t) <= R at the start of completion";
      continue;
    }

    std::vector<std::size_t> order(M);
    for (std::size_t j = 1; j <= greedy_rows; ++j) {
      const auto remaining = static_cast<std::ptrdiff_t>(greedy_rows - j + 1 + slack);
      const auto max_chi = *std::max_element(chi.begin(), chi.end());
      const auto sum_chi = std::accumulate(chi.begin(), chi.end(), std::ptrdiff_t{0});
      if (max_chi > remaining || sum_chi != remaining * static_cast<std::ptrdiff_t>(half))
        throw InternalError("separator greedy invariant broken at step " + std::to_string(j));
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return chi[a] > chi[b]; });
      const std::size_t row = random_rows + j - 1;
      for (std::size_t k = 0; k < half; ++k) {
        const std::size_t t = order[k];
        if (chi[t] <= 0) throw InternalError("separator greedy selected an element with no remaining demand");
        s.set(row, t, true);
        --chi[t];
      }
    }

    const auto report = verify_separator(s, 0.2);
    if (report.pass) return s;
    if (!report.split_ok)
      last_failure = "BP3 (0.2-balanced) for elements " + std::to_string(report.worst_pair[0] + 1) + "," +
                     std::to_string(report.worst_pair[1] + 1);
    else if (!report.column_sums_ok)
      last_failure = "S1 (column sums)";
    else
      last_failure = "BP1 (row sizes)";
  }
  throw ConstructionError("separator (M=" + std::to_string(M) + ", D=" + std::to_string(D) + ") failed after " +
                          std::to_string(cap) + " attempts: " + last_failure);
}

SeparatorReport verify_separator(const BipartitionSystem& s, double c_bal) {
  SeparatorReport r;
  r.ground = s.ground_size();
  r.rows = s.row_count();
  r.c_bal = c_bal;
  r.required_split_fraction = 0.5 - c_bal;
  r.mode = s.mode();

  r.rows_balanced = r.ground % 2 == 0;
  for (std::size_t i = 0; i < r.rows; ++i)
    if (s.row_size(i) * 2 != r.ground) {
      r.rows_balanced = false;
      r.unbalanced_rows.push_back(i);
    }

  if (r.ground >= 2 && r.rows > 0) {
    const auto split = min_pair_split(s, r.rows);
    r.min_split_fraction = static_cast<double>(split.min_split) / static_cast<double>(r.rows);
    r.worst_pair[0] = split.t;
    r.worst_pair[1] = split.u;
    r.split_ok = static_cast<double>(split.min_split) >= r.required_split_fraction * static_cast<double>(r.rows) - kTol;
  } else {
    r.split_ok = true;
  }

  const std::size_t lo = r.rows / 2, hi = (r.rows + 1) / 2;
  r.column_sums_ok = true;
  for (std::size_t t = 0; t < r.ground; ++t) {
    const std::size_t c = s.column_sum(t);
    ++r.column_sum_histogram[c];
    if (c != lo && c != hi) r.column_sums_ok = false;
  }
  r.pass = r.rows_balanced && r.split_ok && r.column_sums_ok;
  return r;
}

MassVector::MassVector(std::vector<double> lambda) : lambda_(std::move(lambda)) {
  double total = 0.0;
  for (std::size_t t = 0; t < lambda_.size(); ++t) {
    if (!(lambda_[t] >= 0.0)) throw ArgumentError("mass vector entry " + std::to_string(t) + " is negative");
    total += lambda_[t];
  }
  if (std::abs(total - 1.0) > kTol) throw ArgumentError("mass vector must sum to 1, got " + std::to_string(total));
}

double MassVector::max_entry() const noexcept {
  return lambda_.empty() ? 0.0 : *std::max_element(lambda_.begin(), lambda_.end());
}

std::size_t mass_split_count(const BipartitionSystem& s, const MassVector& lambda, double zeta) {
  if (!(zeta > 0.0 && zeta < 0.125)) throw PreconditionError("mass_split_count: zeta must lie in (0, 1/8)");
  const auto& l = lambda.values();
  if (l.size() != s.ground_size()) throw ArgumentError("mass_split_count: lambda length != M");
  for (std::size_t t = 0; t < l.size(); ++t)
    if (l[t] > 1.0 - 8.0 * zeta + kTol)
      throw PreconditionError("mass_split_count: lambda_" + std::to_string(t + 1) + " = " + std::to_string(l[t]) +
                              " exceeds 1 - 8 zeta = " + std::to_string(1.0 - 8.0 * zeta));
  const auto rep = verify_separator(s, 0.2);
  if (!rep.rows_balanced || !rep.split_ok)
    throw PreconditionError("mass_split_count: bipartition system is not 1/5-balanced");

  std::size_t count = 0;
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    double a = 0.0, b = 0.0;
    for (std::size_t t = 0; t < l.size(); ++t) (s.in_a(i, t) ? a : b) += l[t];
    if (std::min(a, b) >= zeta - kTol) ++count;
  }
  return count;
}

std::string separator_to_json(const BipartitionSystem& s) {
  nlohmann::json j;
  j["M"] = s.ground_size();
  j["D"] = s.row_count();
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < s.row_count(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t t : s.row_members(i)) row.push_back(t + 1);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["mode"] = to_string(s.mode());
  return j.dump();
}

BipartitionSystem separator_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto M = j.at("M").get<std::size_t>();
    const auto D = j.at("D").get<std::size_t>();
    const auto& rows = j.at("rows");
    if (rows.size() != D) throw ArgumentError("separator JSON: rows length != D");
    BipartitionSystem s(M, D);
    for (std::size_t i = 0; i < D; ++i)
      for (const auto& v : rows[i]) {
        const auto t = v.get<std::size_t>();
        if (t < 1 || t > M) throw ArgumentError("separator JSON: element out of range");
        s.set(i, t - 1, true);
      }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("separator JSON: ") + e.what());
  }
}

}  // namespace degulab

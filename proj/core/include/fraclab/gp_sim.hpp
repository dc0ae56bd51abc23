#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclab/process.hpp"

namespace fraclab {

/// Strictly increasing times t_1 < ... < t_n with t_1 >= 0.
class TimeGrid {
public:
    static TimeGrid regular(double T, std::size_t n_steps, bool include_zero = true);
    static TimeGrid from_points(std::vector<double> points);

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t k) const { return points_[k]; }
    bool uniform() const noexcept { return uniform_; }
    double dt() const noexcept { return dt_; }
    bool starts_at_zero() const noexcept { return !points_.empty() && points_.front() == 0.0; }
    double t_max() const noexcept { return points_.back(); }

private:
    TimeGrid() = default;
    std::vector<double> points_;
    bool uniform_ = false;
    double dt_ = 0.0;
};

enum class SimMethod { Cholesky, CirculantFGN, CirculantFellBackToCholesky };

std::string to_string(SimMethod m);

/// d-dimensional sample paths on a grid, components independent. Immutable
/// after creation; values are stored path-fastest:
///   value(p, k, l) = values[(l * n_times + k) * n_paths + p].
struct PathSet {
    ProcessKind kind;
    TimeGrid grid;
    std::size_t d = 1;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::Cholesky;
    std::vector<double> values;

    double value(std::size_t path, std::size_t time_idx, std::size_t comp) const {
        return values[(comp * grid.size() + time_idx) * n_paths + path];
    }
    /// Contiguous slice over paths at fixed (time, component).
    std::span<const double> at_time(std::size_t time_idx, std::size_t comp) const {
        return {values.data() + (comp * grid.size() + time_idx) * n_paths, n_paths};
    }
};

/// Exact sampling by Cholesky factorization of the covariance matrix.
/// Deterministic for a fixed (seed, grid, kind, d, n_paths) regardless of the
/// worker count. Grid size is capped at 4096 (O(n^2) memory).
PathSet simulate_cholesky(const ProcessKind& kind, const TimeGrid& grid, std::size_t d,
                          std::size_t n_paths, std::uint64_t seed);

/// Circulant-embedding (Davies-Harte) sampling of fBm on a uniform grid
/// through the origin. Falls back to Cholesky (flagged in method) if the
/// embedding produces a materially negative eigenvalue.
PathSet simulate_fgn_circulant(const ProcessKind& kind, const TimeGrid& grid, std::size_t d,
                               std::size_t n_paths, std::uint64_t seed);

struct CovCheckEntry {
    std::size_t t_idx = 0, s_idx = 0;
    double sample = 0, analytic = 0, z = 0;
    bool flagged = false;
};

struct CovCheckReport {
    std::vector<CovCheckEntry> entries;
    std::size_t flagged = 0;
    double flagged_fraction = 0;
    bool pass = false; // <= 5% flagged
    std::string to_json() const;
};

/// z-scores of sample vs analytic covariance, pooled over components.
/// Flags |z| > 5. Requires n_paths >= 1000.
CovCheckReport empirical_cov_check(const PathSet& paths,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

/// Binary export (path-fastest doubles) with a JSON sidecar describing kind,
/// grid, seed, method and layout; CSV export for small sets.
void write_pathset_binary(const PathSet& ps, const std::string& data_path,
                          const std::string& sidecar_path);
void write_pathset_csv(const PathSet& ps, const std::string& csv_path);

} // namespace fraclab

#pragma once

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "logcloak/log_model.hpp"

namespace logcloak {

constexpr std::int64_t seconds_per_day = 86400;
constexpr int minutes_per_day = 1440;

/// Inclusive day range and half-open minute-of-day window.
struct GridWindow {
    std::int64_t first_day = 0;
    std::int64_t last_day = 365;
    int start_minute = 0;
    int end_minute = 240;
    Timestamp epoch_day0 = 0;

    /// Throws ConfigError for an empty or out-of-range window.
    void validate() const;
    std::size_t days() const noexcept { return static_cast<std::size_t>(last_day - first_day + 1); }
    std::size_t minutes() const noexcept { return static_cast<std::size_t>(end_minute - start_minute); }
    friend bool operator==(const GridWindow&, const GridWindow&) = default;
};

/// Per-node event-occurrence counts indexed [day][minute].
class OccurrenceGrid {
public:
    OccurrenceGrid(std::string node, GridWindow window);

    const std::string& node() const noexcept { return node_; }
    const GridWindow& window() const noexcept { return window_; }
    std::size_t days() const noexcept { return window_.days(); }
    std::size_t minutes() const noexcept { return window_.minutes(); }

    /// Row/column are offsets inside the window, not absolute indices.
    std::uint32_t count(std::size_t row, std::size_t col) const { return cells_.at(row * minutes() + col); }
    bool occupied(std::size_t row, std::size_t col) const { return count(row, col) > 0; }
    void set(std::size_t row, std::size_t col, std::uint32_t value) { cells_.at(row * minutes() + col) = value; }

    /// Counts an event at `ts`; returns false when it falls outside the window.
    bool record(Timestamp ts);
    /// Cell-wise sum of a grid over the same window.
    void merge(const OccurrenceGrid& other);

    std::size_t occupied_cells() const noexcept;
    bool empty() const noexcept { return occupied_cells() == 0; }

    /// Same window and same occupied cells (counts are not compared).
    bool same_occupancy(const OccurrenceGrid& other) const noexcept;

private:
    std::string node_;
    GridWindow window_;
    std::vector<std::uint32_t> cells_;
};

template <typename E>
concept TimedEntry = requires(const E& e) {
    { e.timestamp } -> std::convertible_to<Timestamp>;
    { e.source } -> std::convertible_to<std::string>;
};

template <typename Range>
OccurrenceGrid build_grid(const Range& entries, const std::string& node, const GridWindow& window) {
    window.validate();
    OccurrenceGrid grid(node, window);
    for (const auto& e : entries)
        if (e.source == node) grid.record(e.timestamp);
    return grid;
}

/// Cells occupied in both grids. Throws DimensionMismatch.
OccurrenceGrid similarity_grid(const OccurrenceGrid& a, const OccurrenceGrid& b);
/// Cells occupied in exactly one grid. Throws DimensionMismatch.
OccurrenceGrid difference_grid(const OccurrenceGrid& a, const OccurrenceGrid& b);

enum class GridFormat { Csv, Pgm };

GridFormat parse_grid_format(const std::string& text);
std::string extension(GridFormat format);

/// CSV: `day,minute` header then one absolute (day, minute) pair per occupied cell.
void write_grid_csv(const OccurrenceGrid& grid, std::ostream& out);
/// Plain PGM (P2): width = minutes, height = days, 0 = occupied, 255 = empty.
void write_grid_pgm(const OccurrenceGrid& grid, std::ostream& out);
void emit_grid(const OccurrenceGrid& grid, GridFormat format, const std::filesystem::path& path);

} // namespace logcloak

#include "logcloak/grid.hpp"

#include <fstream>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    const std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

void require_same(const OccurrenceGrid& a, const OccurrenceGrid& b) {
    if (!(a.window() == b.window()))
        throw DimensionMismatch("grids " + a.node() + " and " + b.node() + " cover different windows");
}

template <typename Op>
OccurrenceGrid combine(const OccurrenceGrid& a, const OccurrenceGrid& b, Op op) {
    require_same(a, b);
    OccurrenceGrid out(a.node() + "_vs_" + b.node(), a.window());
    for (std::size_t d = 0; d < a.days(); ++d)
        for (std::size_t m = 0; m < a.minutes(); ++m)
            if (op(a.occupied(d, m), b.occupied(d, m))) out.set(d, m, 1);
    return out;
}

} // namespace

void GridWindow::validate() const {
    if (last_day < first_day) throw ConfigError("day range is empty");
    if (start_minute < 0 || end_minute > minutes_per_day || start_minute >= end_minute)
        throw ConfigError("minute window must satisfy 0 <= start < end <= 1440");
}

OccurrenceGrid::OccurrenceGrid(std::string node, GridWindow window)
    : node_(std::move(node)), window_(window), cells_(window.days() * window.minutes(), 0) {
    window_.validate();
}

bool OccurrenceGrid::record(Timestamp ts) {
    const std::int64_t offset = ts - window_.epoch_day0;
    const std::int64_t day = floor_div(offset, seconds_per_day);
    const std::int64_t minute = (offset - day * seconds_per_day) / 60;
    if (day < window_.first_day || day > window_.last_day) return false;
    if (minute < window_.start_minute || minute >= window_.end_minute) return false;
    ++cells_[static_cast<std::size_t>(day - window_.first_day) * minutes() +
             static_cast<std::size_t>(minute - window_.start_minute)];
    return true;
}

void OccurrenceGrid::merge(const OccurrenceGrid& other) {
    require_same(*this, other);
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
}

std::size_t OccurrenceGrid::occupied_cells() const noexcept {
    std::size_t n = 0;
    for (auto c : cells_) n += c > 0 ? 1 : 0;
    return n;
}

bool OccurrenceGrid::same_occupancy(const OccurrenceGrid& other) const noexcept {
    if (!(window_ == other.window_)) return false;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if ((cells_[i] > 0) != (other.cells_[i] > 0)) return false;
    return true;
}

OccurrenceGrid similarity_grid(const OccurrenceGrid& a, const OccurrenceGrid& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
}

OccurrenceGrid difference_grid(const OccurrenceGrid& a, const OccurrenceGrid& b) {
    return combine(a, b, [](bool x, bool y) { return x != y; });
}

GridFormat parse_grid_format(const std::string& text) {
    if (text == "csv") return GridFormat::Csv;
    if (text == "pgm") return GridFormat::Pgm;
    throw ConfigError("unknown grid format '" + text + "' (csv|pgm)");
}

std::string extension(GridFormat format) { return format == GridFormat::Csv ? "csv" : "pgm"; }

void write_grid_csv(const OccurrenceGrid& grid, std::ostream& out) {
    out << "day,minute\n";
    const auto& w = grid.window();
    for (std::size_t d = 0; d < grid.days(); ++d)
        for (std::size_t m = 0; m < grid.minutes(); ++m)
            if (grid.occupied(d, m))
                out << (w.first_day + static_cast<std::int64_t>(d)) << ',' << (w.start_minute + static_cast<int>(m))
                    << '\n';
}

void write_grid_pgm(const OccurrenceGrid& grid, std::ostream& out) {
    out << "P2\n" << grid.minutes() << ' ' << grid.days() << "\n255\n";
    // plain PGM lines stay within 70 characters
    for (std::size_t d = 0; d < grid.days(); ++d) {
        std::size_t width = 0;
        for (std::size_t m = 0; m < grid.minutes(); ++m) {
            const char* px = grid.occupied(d, m) ? "0" : "255";
            const std::size_t len = grid.occupied(d, m) ? 1 : 3;
            if (width > 0 && width + 1 + len > 70) {
                out << '\n';
                width = 0;
            }
            if (width > 0) {
                out << ' ';
                ++width;
            }
            out << px;
            width += len;
        }
        out << '\n';
    }
}

void emit_grid(const OccurrenceGrid& grid, GridFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    if (format == GridFormat::Csv) write_grid_csv(grid, out);
    else write_grid_pgm(grid, out);
    if (!out) throw Error("write failed for " + path.string());
}

} // namespace logcloak

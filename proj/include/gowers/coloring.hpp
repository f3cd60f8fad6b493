#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gowers/ktuple.hpp"

namespace gowers {

/// Finite search domain: all k-tuples with coordinates in [lo..max_coord]
/// that satisfy the space predicate. Sum-world boxes (Xk) start at 0,
/// product-world boxes (Yk) at 1, so the cells are exactly Xk-in-box or
/// Yk-in-box.
struct Box {
    int dim = 1;
    Coord max_coord = 0;
    Space space = Space::Xk;

    Coord lo() const { return (space == Space::Yk || space == Space::FullNk) ? 1 : 0; }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Cells of the box in lexicographic order, duplicate-free.
/// Throws std::invalid_argument when the domain is empty.
std::vector<KTuple> enumerate_box(const Box& box);

/// Bijection between box cells and 0..|cells|-1 in lexicographic order.
class CellIndex {
public:
    explicit CellIndex(const Box& box);

    const Box& box() const { return box_; }
    const std::vector<KTuple>& cells() const { return cells_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(cells_.size()); }
    const KTuple& cell(std::uint32_t index) const { return cells_[index]; }

    /// Index of a cell, or nullopt when the tuple is not a cell of the box.
    std::optional<std::uint32_t> try_index(const KTuple& t) const;

private:
    Box box_;
    std::vector<KTuple> cells_;
};

/// Total map from box cells to colors 0..num_colors-1, stored by cell index.
struct Coloring {
    Box box;
    int num_colors = 1;
    std::vector<int> colors;

    int color_at(std::uint32_t cell_index) const { return colors[cell_index]; }

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Raised by parse_coloring with a line number and a distinct message per
/// defect class (bad header, dimension mismatch, color out of range,
/// duplicate cell, cell outside box, uncolored cell).
class ColoringParseError : public std::runtime_error {
public:
    ColoringParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Text format: header `k=<int> N=<int> r=<int> space=<Xk|Yk>`, then one
/// line `<coord_1> ... <coord_k> <color>` per cell. `#` starts a comment.
/// serialize emits the canonical form: cells in lexicographic order, single
/// spaces, trailing newline. parse accepts any cell order but requires
/// totality.
Coloring parse_coloring(const std::string& text);
std::string serialize_coloring(const Coloring& c);

/// JSON mirror of the same fields:
/// {"k":..,"N":..,"r":..,"space":"Xk","cells":[{"cell":[..],"color":..},..]}
std::string coloring_to_json(const Coloring& c);

/// Renames colors so that first occurrences along the cell order appear in
/// increasing order. Idempotent; the partition of cells is unchanged.
Coloring canonicalize_colors(const Coloring& c);

}  // namespace gowers

#pragma once

#include <cstddef>
#include <vector>

#include "ondr/tag.hpp"

namespace ondr {

/// Patch-panel surface: a width x height rectangle (inches) with an ordered
/// list of tag slot positions.
class PanelLayout {
public:
    /// Throws InvalidLayout if dimensions are negative or any slot lies
    /// outside [0,width] x [0,height].
    PanelLayout(double width_in, double height_in, std::vector<Position> slots);

    /// Regular grid of columns x rows cell centers, row-major.
    static PanelLayout grid(double width_in, double height_in,
                            std::size_t columns, std::size_t rows);

    double width_in() const { return width_in_; }
    double height_in() const { return height_in_; }
    double area_in2() const { return width_in_ * height_in_; }
    const std::vector<Position>& slots() const { return slots_; }

    Position center() const { return {width_in_ / 2.0, height_in_ / 2.0}; }

private:
    double width_in_;
    double height_in_;
    std::vector<Position> slots_;
};

/// Slots per square inch. Throws ZeroArea when the panel has no area.
double panel_density(const PanelLayout& layout);

} // namespace ondr

#include "ondr/panel.hpp"

#include <string>

#include "ondr/errors.hpp"

namespace ondr {

PanelLayout::PanelLayout(double width_in, double height_in, std::vector<Position> slots)
    : width_in_(width_in), height_in_(height_in), slots_(std::move(slots)) {
    if (width_in_ < 0.0 || height_in_ < 0.0) {
        throw InvalidLayout("negative panel dimensions");
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const auto& p = slots_[i];
        if (p.x_in < 0.0 || p.x_in > width_in_ || p.y_in < 0.0 || p.y_in > height_in_) {
            throw InvalidLayout("slot " + std::to_string(i) + " outside panel bounds");
        }
    }
}

PanelLayout PanelLayout::grid(double width_in, double height_in,
                              std::size_t columns, std::size_t rows) {
    if (columns == 0 || rows == 0) {
        throw InvalidLayout("grid needs at least one column and one row");
    }
    std::vector<Position> slots;
    slots.reserve(columns * rows);
    const double cell_w = width_in / static_cast<double>(columns);
    const double cell_h = height_in / static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns; ++c) {
            slots.push_back({(static_cast<double>(c) + 0.5) * cell_w,
                             (static_cast<double>(r) + 0.5) * cell_h});
        }
    }
    return PanelLayout(width_in, height_in, std::move(slots));
}

double panel_density(const PanelLayout& layout) {
    const double area = layout.area_in2();
    if (area <= 0.0) {
        throw ZeroArea("panel has no area");
    }
    return static_cast<double>(layout.slots().size()) / area;
}

} // namespace ondr

#include "ondr/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ondr {

double tag_distance_cm(const Position& position, const Position& panel_center,
                       double axial_distance_cm) {
    const double dx_cm = (position.x_in - panel_center.x_in) * kCmPerInch;
    const double dy_cm = (position.y_in - panel_center.y_in) * kCmPerInch;
    return std::sqrt(axial_distance_cm * axial_distance_cm + dx_cm * dx_cm +
                     dy_cm * dy_cm);
}

std::vector<TagInRange> build_population(const TagRegistry& registry,
                                         double axial_distance_cm,
                                         std::optional<TagKind> kind,
                                         std::optional<Position> panel_center) {
    Position center{0.0, 0.0};
    if (panel_center) {
        center = *panel_center;
    } else if (!registry.empty()) {
        double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
        double min_y = min_x, max_y = -min_x;
        for (const auto& [epc, record] : registry) {
            min_x = std::min(min_x, record.position.x_in);
            max_x = std::max(max_x, record.position.x_in);
            min_y = std::min(min_y, record.position.y_in);
            max_y = std::max(max_y, record.position.y_in);
        }
        center = {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0};
    }

    std::vector<TagInRange> population;
    for (const auto& [epc, record] : registry) {
        if (kind && record.kind != *kind) continue;
        population.push_back(
            {epc, tag_distance_cm(record.position, center, axial_distance_cm)});
    }
    return population;
}

} // namespace ondr

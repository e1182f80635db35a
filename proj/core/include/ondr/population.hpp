#pragma once

#include <optional>
#include <vector>

#include "ondr/tag.hpp"

namespace ondr {

/// One tag as the reader sees it: identity plus line-of-sight distance.
struct TagInRange {
    Epc epc;
    double distance_cm = 0.0;

    bool operator==(const TagInRange&) const = default;
};

inline constexpr double kCmPerInch = 2.54;

/// Reader-to-tag distance for a tag at `position` on a panel whose center
/// sits `axial_distance_cm` in front of the antenna.
double tag_distance_cm(const Position& position, const Position& panel_center,
                       double axial_distance_cm);

/// Builds a population from every registered tag (optionally restricted to
/// one kind), with per-tag distances derived from panel geometry. The panel
/// center defaults to the midpoint of the tags' bounding box, so persisted
/// registries need no separate layout record. Ordered by EPC.
std::vector<TagInRange> build_population(const TagRegistry& registry,
                                         double axial_distance_cm,
                                         std::optional<TagKind> kind = std::nullopt,
                                         std::optional<Position> panel_center = std::nullopt);

} // namespace ondr

#pragma once

// The four reference configurations, transcribed from their drawings with
// drawing coordinates taken as vertex coordinates.

#include "sixv/configuration.hpp"

namespace sixv::fixtures {

/// (1,1): two "12" staircases at W(0,1) and W(0,d+1).
inline Configuration loop_band(Int d) {
    Lattice lat(1, 1);
    return Configuration::from_paths(lat, {{{0, 1}, "12"}, {{0, d + 1}, "12"}});
}

/// (5,2): paths 1121112 and 1212111 from W(0,0).
inline Configuration two_paths_52() {
    Lattice lat(5, 2);
    return Configuration::from_paths(lat, {{{0, 0}, "1121112"}, {{0, 0}, "1212111"}});
}

/// (5,2): three paths.
inline Configuration three_paths_52() {
    Lattice lat(5, 2);
    return Configuration::from_paths(
        lat, {{{0, 0}, "1112112"}, {{0, 0}, "2112111"}, {{0, 3}, "1212111"}});
}

/// (7,3): two paths.
inline Configuration two_paths_73() {
    Lattice lat(7, 3);
    return Configuration::from_paths(lat, {{{0, 0}, "1121122111"}, {{0, 2}, "1111221211"}});
}

}  // namespace sixv::fixtures

#pragma once

#include <vector>

#include "ribbonzeta/ribbon_graph.hpp"

// Shared fixtures: the handful of small graphs used throughout the suite.
namespace fixtures {

// Theta graph: two vertices joined by three edges {0,3}, {1,4}, {2,5}.
// With rotations (0 1 2)(3 4 5) it has one face and type (1,1).
inline ribbonzeta::RibbonGraph theta11() {
  return ribbonzeta::RibbonGraph({3, 4, 5, 0, 1, 2}, {1, 2, 0, 4, 5, 3});
}

// Same theta with rotations (0 1 2)(3 5 4): three faces, type (0,3).
inline ribbonzeta::RibbonGraph theta03() {
  return ribbonzeta::RibbonGraph({3, 4, 5, 0, 1, 2}, {1, 2, 0, 5, 3, 4});
}

inline ribbonzeta::MetricRibbonGraph equilateral_theta11(double len = 1.0 / 3.0) {
  return ribbonzeta::MetricRibbonGraph(theta11(), {len, len, len});
}

// One vertex, two loops {0,1} and {2,3}, rotation (0 1 2 3): type (0,3).
inline ribbonzeta::RibbonGraph rose2_03() {
  return ribbonzeta::RibbonGraph({1, 0, 3, 2}, {1, 2, 3, 0});
}

// Same rose with rotation (0 2 1 3): a single face, type (1,1).
inline ribbonzeta::RibbonGraph rose2_11() {
  return ribbonzeta::RibbonGraph({1, 0, 3, 2}, {2, 3, 1, 0});
}

// Dumbbell: loops {0,1} at u and {3,4} at v joined by the edge {2,5};
// rotations (0 1 2)(3 4 5); type (0,3).
inline ribbonzeta::RibbonGraph dumbbell() {
  return ribbonzeta::RibbonGraph({1, 0, 5, 4, 3, 2}, {1, 2, 0, 4, 5, 3});
}

}  // namespace fixtures

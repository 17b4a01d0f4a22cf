#pragma once

#include <vector>

#include "ineqforge/quadrature.hpp"

namespace ineqforge::radial {

enum class MeshMode { Linear, Log, Graded };

struct SingularEnds {
    bool left = false;
    bool right = false;
};

// Strictly increasing nodes reproducing both endpoints exactly.
// Log mode is uniform in log r. Graded mode uses geometric spacing toward flagged ends with
// largest/smallest spacing ratio `grading`; Linear ignores the flags.
std::vector<double> graded_mesh(Interval interval, SingularEnds ends, int n,
                                MeshMode mode = MeshMode::Graded, double grading = 100.0);

}  // namespace ineqforge::radial

#pragma once

#include <array>
#include <string>
#include <vector>

#include "mlc/candidate_lists.hpp"
#include "mlc/instance.hpp"

namespace mlc {

/// Delaunay triangulation of an instance's point set. Triangles hold node-id
/// triples; adjacency lists are sorted and symmetric.
struct Triangulation {
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::vector<int>> adjacency;

    std::size_t edge_count() const;
};

/// Bowyer-Watson incremental triangulation with a super-triangle.
/// Duplicate points are perturbed by a deterministic epsilon before
/// insertion; exactly collinear point sets raise DegenerateGeometryError.
Triangulation delaunay_triangulate(const Instance& inst);

/// Candidate lists from triangulation adjacency, sorted by (cost, id).
/// Lists shorter than 2 are padded with the nearest non-adjacent nodes so a
/// promising list can always be formed. When `truncate` is set lists are
/// clipped to at most k entries.
CandidateLists delaunay_candidate_lists(const Instance& inst, const Triangulation& tri,
                                        int k, bool truncate = false);

/// Plain-text edge list ("u v" per line), for debugging.
std::string write_triangulation_edges(const Triangulation& tri);

} // namespace mlc

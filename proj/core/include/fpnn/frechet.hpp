#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fpnn/sequence.hpp"

namespace fpnn {

/// Distance between two sampled values: |a - b|.
double point_dist(double a, double b);

/// Discrete Fréchet distance between two sequences, computed by the
/// coupling dynamic program in O(m*n) time and O(min(m,n)) space.
/// Equals the minimum paired-walk cost (see discrete_frechet_bruteforce).
double discrete_frechet(const Sequence& a, const Sequence& b);

/// Euclidean combination of componentwise discrete Fréchet distances
/// between two function vector samples. Component counts must match;
/// lengths may differ per component pair.
double generalized_frechet(const FunctionVectorSample& x,
                           const FunctionVectorSample& y);

// --- Exhaustive paired-walk oracle -----------------------------------------
//
// A paired walk splits both sequences into k contiguous runs, in order,
// where every pair of runs keeps at least one side to a single vertex.
// Its cost is the largest vertex distance it pairs up; the discrete
// Fréchet distance is the minimum cost over all walks. The enumeration
// below is the reference the dynamic program is verified against.

struct PairedWalk {
  struct Segment {
    std::size_t a_begin, a_end;  // half-open range into A
    std::size_t b_begin, b_end;  // half-open range into B
  };
  std::vector<Segment> segments;
};

/// Throws ValidationError unless `walk` partitions sequences of lengths
/// (len_a, len_b) in order with the single-vertex rule on every segment.
void validate_paired_walk(const PairedWalk& walk, std::size_t len_a,
                          std::size_t len_b);

/// Cost of one paired walk: max over segments of the max pairwise
/// point distance inside the segment.
double paired_walk_cost(const PairedWalk& walk, const Sequence& a,
                        const Sequence& b);

/// Visits every paired walk over chains of the given lengths exactly once.
void for_each_paired_walk(std::size_t len_a, std::size_t len_b,
                          const std::function<void(const PairedWalk&)>& visit);

/// Enumeration guard for the brute-force oracle.
inline constexpr std::size_t kBruteforceMaxTotalLength = 16;

/// Reference discrete Fréchet distance: minimum cost over every paired
/// walk, by exhaustive enumeration. Requires a.size() + b.size() <=
/// kBruteforceMaxTotalLength.
double discrete_frechet_bruteforce(const Sequence& a, const Sequence& b);

}  // namespace fpnn

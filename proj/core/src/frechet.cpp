#include "fpnn/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fpnn/errors.hpp"

namespace fpnn {

double point_dist(double a, double b) { return std::abs(a - b); }

double discrete_frechet(const Sequence& a, const Sequence& b) {
  // Two rolling rows over the shorter sequence; the distance is symmetric,
  // so swapping the operands is safe.
  const std::vector<double>* rows = &a.values();
  const std::vector<double>* cols = &b.values();
  if (cols->size() > rows->size()) std::swap(rows, cols);
  const std::vector<double>& r = *rows;
  const std::vector<double>& c = *cols;

  std::vector<double> prev(c.size(), 0.0);
  std::vector<double> curr(c.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double d = point_dist(r[i], c[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = d;
      } else if (i == 0) {
        reach = std::max(curr[j - 1], d);
      } else if (j == 0) {
        reach = std::max(prev[0], d);
      } else {
        reach = std::max(d, std::min({prev[j], curr[j - 1], prev[j - 1]}));
      }
      curr[j] = reach;
    }
    std::swap(prev, curr);
  }
  return prev.back();
}

double generalized_frechet(const FunctionVectorSample& x,
                           const FunctionVectorSample& y) {
  if (x.component_count() != y.component_count()) {
    throw ValidationError("component count mismatch: " +
                          std::to_string(x.component_count()) + " vs " +
                          std::to_string(y.component_count()));
  }
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < x.component_count(); ++i) {
    const double d = discrete_frechet(x.component(i), y.component(i));
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq);
}

void validate_paired_walk(const PairedWalk& walk, std::size_t len_a,
                          std::size_t len_b) {
  if (walk.segments.empty()) {
    throw ValidationError("paired walk has no segments");
  }
  std::size_t a_pos = 0;
  std::size_t b_pos = 0;
  for (std::size_t k = 0; k < walk.segments.size(); ++k) {
    const auto& seg = walk.segments[k];
    if (seg.a_begin != a_pos || seg.a_end <= seg.a_begin ||
        seg.b_begin != b_pos || seg.b_end <= seg.b_begin) {
      throw ValidationError("segment " + std::to_string(k) +
                            " does not continue the partition in order");
    }
    const std::size_t a_len = seg.a_end - seg.a_begin;
    const std::size_t b_len = seg.b_end - seg.b_begin;
    if (a_len != 1 && b_len != 1) {
      throw ValidationError("segment " + std::to_string(k) +
                            " pairs multiple vertices on both sides");
    }
    a_pos = seg.a_end;
    b_pos = seg.b_end;
  }
  if (a_pos != len_a || b_pos != len_b) {
    throw ValidationError("paired walk does not cover both chains");
  }
}

double paired_walk_cost(const PairedWalk& walk, const Sequence& a,
                        const Sequence& b) {
  validate_paired_walk(walk, a.size(), b.size());
  double cost = 0.0;
  for (const auto& seg : walk.segments) {
    for (std::size_t i = seg.a_begin; i < seg.a_end; ++i) {
      for (std::size_t j = seg.b_begin; j < seg.b_end; ++j) {
        cost = std::max(cost, point_dist(a[i], b[j]));
      }
    }
  }
  return cost;
}

namespace {

class WalkEnumerator {
 public:
  WalkEnumerator(std::size_t len_a, std::size_t len_b,
                 const std::function<void(const PairedWalk&)>& visit)
      : len_a_(len_a), len_b_(len_b), visit_(visit) {}

  void run() { extend(0, 0); }

 private:
  void extend(std::size_t a_pos, std::size_t b_pos) {
    if (a_pos == len_a_ && b_pos == len_b_) {
      visit_(walk_);
      return;
    }
    // One A vertex against a run of B vertices.
    if (a_pos < len_a_) {
      for (std::size_t take = 1; b_pos + take <= len_b_; ++take) {
        push(a_pos, a_pos + 1, b_pos, b_pos + take);
      }
    }
    // A run of two or more A vertices against one B vertex; runs of one
    // are already covered above.
    if (b_pos < len_b_) {
      for (std::size_t take = 2; a_pos + take <= len_a_; ++take) {
        push(a_pos, a_pos + take, b_pos, b_pos + 1);
      }
    }
  }

  void push(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    walk_.segments.push_back({a0, a1, b0, b1});
    extend(a1, b1);
    walk_.segments.pop_back();
  }

  std::size_t len_a_;
  std::size_t len_b_;
  const std::function<void(const PairedWalk&)>& visit_;
  PairedWalk walk_;
};

}  // namespace

void for_each_paired_walk(std::size_t len_a, std::size_t len_b,
                          const std::function<void(const PairedWalk&)>& visit) {
  if (len_a == 0 || len_b == 0) {
    throw ValidationError("paired walks require non-empty chains");
  }
  WalkEnumerator(len_a, len_b, visit).run();
}

double discrete_frechet_bruteforce(const Sequence& a, const Sequence& b) {
  if (a.size() + b.size() > kBruteforceMaxTotalLength) {
    throw ValidationError(
        "brute-force oracle limited to total length " +
        std::to_string(kBruteforceMaxTotalLength) + ", got " +
        std::to_string(a.size() + b.size()));
  }
  double best = std::numeric_limits<double>::infinity();
  for_each_paired_walk(a.size(), b.size(), [&](const PairedWalk& walk) {
    best = std::min(best, paired_walk_cost(walk, a, b));
  });
  return best;
}

}  // namespace fpnn

#pragma once

#include "crflat/error.hpp"
#include "crflat/map_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crflat {

enum class Execution { Serial, Parallel };

// Halton points in (Re z, Im z, u) over the box [-1/2, 1/2)^{2n+1}, as exact rationals.
// Sequence index i maps to Halton index 1 + seed * 4099 + i.
std::vector<BoundaryPoint> halton_points(int n, int count, std::uint64_t seed);

struct Failure {
  ErrorKind kind;
  std::string message;
};

template <class R>
struct Outcome {
  std::optional<R> value;
  std::optional<Failure> failure;
};

// Runs fn on every point; results keep point order. Exceptions become failures.
template <class R, class Fn>
std::vector<Outcome<R>> map_points(const std::vector<BoundaryPoint>& points, Fn fn, Execution exec) {
  std::vector<Outcome<R>> out(points.size());
  auto one = [&](std::size_t i) {
    try {
      out[i].value = fn(points[i]);
    } catch (const Error& e) {
      out[i].failure = Failure{e.kind(), e.what()};
    } catch (const std::exception& e) {
      out[i].failure = Failure{ErrorKind::Inconsistency, e.what()};
    }
  };
  const long count = static_cast<long>(points.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace crflat

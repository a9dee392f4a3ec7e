#include "crflat/sampling.hpp"

namespace crflat {

namespace {

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

mpq_class radical_inverse(std::uint64_t index, int base) {
  mpq_class r(0);
  mpz_class denom(1);
  while (index > 0) {
    denom *= base;
    r += mpq_class(mpz_class(static_cast<unsigned long>(index % base)), denom);
    index /= base;
  }
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<BoundaryPoint> halton_points(int n, int count, std::uint64_t seed) {
  if (2 * n + 1 > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw Error(ErrorKind::Dimension, "halton_points: dimension too large");
  std::vector<BoundaryPoint> pts;
  const mpq_class half(1, 2);
  for (int i = 0; i < count; ++i) {
    std::uint64_t idx = 1 + seed * 4099 + static_cast<std::uint64_t>(i);
    BoundaryPoint p;
    for (int j = 0; j < n; ++j) {
      mpq_class re = radical_inverse(idx, kPrimes[2 * j]) - half;
      mpq_class im = radical_inverse(idx, kPrimes[2 * j + 1]) - half;
      p.z0.push_back(Scalar(re, im));
    }
    p.u0 = Scalar(mpq_class(radical_inverse(idx, kPrimes[2 * n]) - half));
    pts.push_back(p);
  }
  return pts;
}

}  // namespace crflat

#include "mfpod/rng.hpp"

#include <algorithm>

#include "mfpod/errors.hpp"

namespace mfpod {

std::vector<int> sample_without_replacement(Rng& rng, int n, int m) {
  if (m > n || m < 0) throw SizeError("cannot sample more indices than available");
  std::vector<int> perm = random_permutation(rng, n);
  std::vector<int> out(perm.begin(), perm.begin() + m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mfpod

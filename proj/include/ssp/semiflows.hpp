#pragma once

#include "ssp/net.hpp"

namespace ssp {

// Nonnegative integer annuller of the token-flow matrix C with minimal
// support; coefficients are gcd-normalized.
struct Semiflow {
  char kind = 'T';  // 'T' (right annuller) or 'P' (left annuller)
  std::vector<long long> coeffs;

  std::vector<int> support() const;
  bool covers(int i) const { return coeffs[i] > 0; }
};

inline constexpr std::size_t kDefaultBasisCap = 10000;

// Complete set of minimal-support T-/P-semiflows, canonically ordered
// (descending lexicographic on coefficient vectors). Throws NetError when the
// intermediate basis exceeds the cap.
std::vector<Semiflow> minimal_t_semiflows(const Net& net,
                                          std::size_t cap = kDefaultBasisCap);
std::vector<Semiflow> minimal_p_semiflows(const Net& net,
                                          std::size_t cap = kDefaultBasisCap);

struct PositiveWitness {
  bool positive = false;
  std::vector<long long> witness;  // strictly positive annuller when positive
};

PositiveWitness is_consistent(const Net& net);
PositiveWitness is_conservative(const Net& net);

// "x5 = t9 + t10 + t11" style rendering; names indexed by coefficient order.
std::string multiset_text(const Semiflow& x,
                          const std::vector<std::string>& names,
                          const std::string& lhs);

}  // namespace ssp

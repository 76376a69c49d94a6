#pragma once

#include <limits>
#include <vector>

#include "stepreg/rng.hpp"

namespace stepreg {

/* Distribution of the number of pieces k >= 1.
 * geometric(alpha):        mass (1-alpha) * alpha^(k-1)
 * truncated_poisson(l):    Poisson(l) conditioned on k >= 1
 * table(m):                explicit masses for k = 1..m.size() */
class HierarchyPrior {
  public:
    enum class Kind { geometric, truncated_poisson, table };

    static HierarchyPrior geometric(double alpha);
    static HierarchyPrior truncated_poisson(double lambda);
    static HierarchyPrior from_table(std::vector<double> masses);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }
    const std::vector<double>& table() const { return table_; }

    double mass(int k) const;      /* 0 for k < 1 or beyond a table's support */
    double log_mass(int k) const;  /* -inf where mass is 0 */
    int sample(Rng& rng) const;

    /* largest k with positive mass; unbounded kinds report INT_MAX */
    int max_k() const;
    /* mass at k > k_cap, i.e. 1 - sum_{k<=k_cap} mass(k) */
    double tail_mass(int k_cap) const;

  private:
    HierarchyPrior() = default;

    Kind kind_ = Kind::geometric;
    double alpha_ = 0.5;
    double lambda_ = 5.0;
    std::vector<double> table_;
};

}  // namespace stepreg

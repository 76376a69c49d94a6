#include "stepreg/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace stepreg {

HierarchyPrior HierarchyPrior::geometric(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("geometric prior: alpha must lie in (0,1)");
    HierarchyPrior p;
    p.kind_ = Kind::geometric;
    p.alpha_ = alpha;
    return p;
}

HierarchyPrior HierarchyPrior::truncated_poisson(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("truncated_poisson prior: lambda must be positive");
    HierarchyPrior p;
    p.kind_ = Kind::truncated_poisson;
    p.lambda_ = lambda;
    return p;
}

HierarchyPrior HierarchyPrior::from_table(std::vector<double> masses) {
    if (masses.empty()) throw std::invalid_argument("table prior: no masses given");
    double sum = 0.0;
    for (double m : masses) {
        if (!(m >= 0.0)) throw std::invalid_argument("table prior: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("table prior: masses must sum to 1 (within 1e-12)");
    HierarchyPrior p;
    p.kind_ = Kind::table;
    p.table_ = std::move(masses);
    return p;
}

double HierarchyPrior::mass(int k) const {
    if (k < 1) return 0.0;
    switch (kind_) {
        case Kind::geometric:
            return (1.0 - alpha_) * std::pow(alpha_, k - 1);
        case Kind::truncated_poisson:
            return std::exp(log_mass(k));
        case Kind::table:
            return k <= static_cast<int>(table_.size()) ? table_[k - 1] : 0.0;
    }
    return 0.0;
}

double HierarchyPrior::log_mass(int k) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (k < 1) return neg_inf;
    switch (kind_) {
        case Kind::geometric:
            return std::log1p(-alpha_) + (k - 1) * std::log(alpha_);
        case Kind::truncated_poisson:
            /* Poisson(lambda) conditioned on k >= 1 */
            return k * std::log(lambda_) - std::lgamma(k + 1.0) - lambda_ - std::log1p(-std::exp(-lambda_));
        case Kind::table: {
            if (k > static_cast<int>(table_.size()) || table_[k - 1] == 0.0) return neg_inf;
            return std::log(table_[k - 1]);
        }
    }
    return neg_inf;
}

int HierarchyPrior::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::geometric: {
            std::geometric_distribution<int> d(1.0 - alpha_);
            return d(rng.engine()) + 1;
        }
        case Kind::truncated_poisson: {
            int k = 0;
            do {
                k = rng.poisson(lambda_);
            } while (k == 0);
            return k;
        }
        case Kind::table: {
            double u = rng.uniform();
            double acc = 0.0;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                acc += table_[i];
                if (u < acc) return static_cast<int>(i) + 1;
            }
            return static_cast<int>(table_.size());
        }
    }
    return 1;
}

int HierarchyPrior::max_k() const {
    return kind_ == Kind::table ? static_cast<int>(table_.size()) : std::numeric_limits<int>::max();
}

double HierarchyPrior::tail_mass(int k_cap) const {
    if (k_cap < 1) return 1.0;
    switch (kind_) {
        case Kind::geometric:
            return std::pow(alpha_, k_cap);
        case Kind::truncated_poisson: {
            double head = 0.0;
            for (int k = 1; k <= k_cap; ++k) head += mass(k);
            return head < 1.0 ? 1.0 - head : 0.0;
        }
        case Kind::table: {
            double tail = 0.0;
            for (int k = k_cap + 1; k <= static_cast<int>(table_.size()); ++k) tail += table_[k - 1];
            return tail;
        }
    }
    return 0.0;
}

}  // namespace stepreg

#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sbern {

/// Monomial exponent vector in d variables.
struct MultiIndex {
    std::vector<int> exponents;
    int total = 0;

    explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {
        for (int k : exponents) {
            if (k < 0) throw std::invalid_argument("MultiIndex: negative exponent");
            total += k;
        }
    }
    int dim() const { return static_cast<int>(exponents.size()); }
};

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All monomials of total degree <= max_degree in `dim` variables, in graded
/// lexicographic order (by total degree, then lexicographic on the exponent
/// tuple). Shared by polynomials, moment tables and evaluation kernels.
class MonomialBasis {
  public:
    MonomialBasis(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
        if (dim < 1 || dim > 8) throw std::invalid_argument("MonomialBasis: dim out of range");
        if (max_degree < 0 || max_degree > 400)
            throw std::invalid_argument("MonomialBasis: degree out of range");
        std::vector<int> e(dim, 0);
        for (int m = 0; m <= max_degree; ++m) emit_degree(e, 0, m);
        for (std::size_t i = 0; i < exps_.size(); ++i) rank_[pack(exps_[i])] = i;
        // parent links: alpha = parent + e_axis, used for fast value tables
        parent_.assign(exps_.size(), -1);
        parent_axis_.assign(exps_.size(), -1);
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            for (int a = 0; a < dim_; ++a) {
                if (exps_[i][a] > 0) {
                    auto e2 = exps_[i];
                    e2[a] -= 1;
                    parent_[i] = static_cast<long>(index_of(e2));
                    parent_axis_[i] = a;
                    break;
                }
            }
        }
    }

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return exps_.size(); }
    const std::vector<int>& exponents(std::size_t i) const { return exps_[i]; }
    int degree(std::size_t i) const { return deg_[i]; }
    long parent(std::size_t i) const { return parent_[i]; }
    int parent_axis(std::size_t i) const { return parent_axis_[i]; }

    std::size_t index_of(const std::vector<int>& e) const {
        auto it = rank_.find(pack(e));
        if (it == rank_.end()) throw std::out_of_range("MonomialBasis: exponent out of table");
        return it->second;
    }

    /// Number of monomials of total degree exactly m.
    std::int64_t level_size(int m) const { return binomial(m + dim_ - 1, m); }

    /// Fill `vals` (size() entries) with x^alpha for every table monomial.
    void monomial_values(const std::vector<double>& x, std::vector<double>& vals) const {
        vals.resize(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (parent_[i] < 0)
                vals[i] = 1.0;
            else
                vals[i] = vals[static_cast<std::size_t>(parent_[i])] * x[parent_axis_[i]];
        }
    }

  private:
    void emit_degree(std::vector<int>& e, int pos, int remaining) {
        if (pos == dim_ - 1) {
            e[pos] = remaining;
            exps_.push_back(e);
            deg_.push_back(remaining + degree_prefix(e, pos));
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[pos] = k;
            emit_degree(e, pos + 1, remaining - k);
        }
        e[pos] = 0;
    }
    static int degree_prefix(const std::vector<int>& e, int pos) {
        int s = 0;
        for (int i = 0; i < pos; ++i) s += e[i];
        return s;
    }
    static std::uint64_t pack(const std::vector<int>& e) {
        std::uint64_t key = 0;
        for (int k : e) key = (key << 9) | static_cast<std::uint64_t>(k & 0x1ff);
        return key;
    }

    int dim_, max_degree_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> deg_;
    std::vector<long> parent_;
    std::vector<int> parent_axis_;
    std::unordered_map<std::uint64_t, std::size_t> rank_;
};

}  // namespace sbern

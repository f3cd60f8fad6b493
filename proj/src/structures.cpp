#include "gowers/structures.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gowers {

void GeneratorSet::validate(Space space) const {
    if (members.empty())
        throw std::invalid_argument("generator set is empty");
    for (const KTuple& t : members) {
        if (t.dim() != dim)
            throw std::invalid_argument("generator " + t.to_string() + " has dimension " +
                                        std::to_string(t.dim()) + ", expected " + std::to_string(dim));
        if (!in_space(t, space))
            throw std::invalid_argument("generator " + t.to_string() + " is not in " + space_name(space));
    }
    if (distinct_values) {
        auto sorted = members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("distinct_values is set but generator values repeat");
    }
}

bool assignment_is_legal(const PartAssignment& a, int k) {
    bool has_first = false;
    for (int part : a) {
        if (part < 0 || part > k) return false;
        if (part == 1) has_first = true;
    }
    return has_first;
}

std::uint64_t expression_count(int k, int m) {
    if (k < 1 || m < 1) throw std::invalid_argument("expression_count: k and m must be positive");
    auto pow_checked = [](std::uint64_t base, int exp) {
        std::uint64_t r = 1;
        for (int i = 0; i < exp; ++i) {
            if (base != 0 && r > UINT64_MAX / base)
                throw std::overflow_error("expression_count overflows 64 bits");
            r *= base;
        }
        return r;
    };
    return pow_checked(static_cast<std::uint64_t>(k) + 1, m) - pow_checked(static_cast<std::uint64_t>(k), m);
}

namespace {

// Walks all legal assignments in lexicographic order (entry domain 0..k,
// 0 = unused) and evaluates each under the given fold.
template <typename Shift, typename Combine>
std::vector<SubspaceElement> enumerate_expressions(const GeneratorSet& g, Space space,
                                                   const KTuple& identity, Shift shift,
                                                   Combine combine) {
    g.validate(space);
    const int k = g.dim;
    const int m = static_cast<int>(g.members.size());

    std::vector<SubspaceElement> out;
    PartAssignment assign(static_cast<std::size_t>(m), 0);
    for (;;) {
        if (assignment_is_legal(assign, k)) {
            KTuple acc = identity;
            for (int i = 0; i < m; ++i) {
                const int part = assign[static_cast<std::size_t>(i)];
                if (part == 0) continue;
                acc = combine(acc, shift(g.members[static_cast<std::size_t>(i)], part - 1));
            }
            out.push_back(SubspaceElement{assign, std::move(acc)});
        }
        // mixed-radix increment, most significant digit first
        int pos = m - 1;
        while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == k) {
            assign[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++assign[static_cast<std::size_t>(pos)];
    }
    return out;
}

std::vector<KTuple> dedup_values(std::vector<SubspaceElement> exprs) {
    std::vector<KTuple> values;
    values.reserve(exprs.size());
    for (auto& e : exprs) values.push_back(std::move(e.value));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

}  // namespace

std::vector<SubspaceElement> gowers_sum_expressions(const GeneratorSet& g) {
    return enumerate_expressions(
        g, Space::Xk, KTuple::zeros(g.dim),
        [](const KTuple& t, int j) { return tetris_power(t, j); },
        [](const KTuple& a, const KTuple& b) { return componentwise_add(a, b); });
}

std::vector<SubspaceElement> gowers_product_expressions(const GeneratorSet& g) {
    return enumerate_expressions(
        g, Space::Yk, KTuple::ones(g.dim),
        [](const KTuple& t, int j) { return mult_power(t, j); },
        [](const KTuple& a, const KTuple& b) { return componentwise_mul(a, b); });
}

std::vector<KTuple> gowers_sum_values(const GeneratorSet& g) {
    return dedup_values(gowers_sum_expressions(g));
}

std::vector<KTuple> gowers_product_values(const GeneratorSet& g) {
    return dedup_values(gowers_product_expressions(g));
}

namespace {

template <typename Combine>
std::vector<KTuple> finite_folds(const std::vector<KTuple>& xs, const KTuple& identity,
                                 Combine combine, const char* what) {
    if (xs.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
    const int dim = xs.front().dim();
    for (const KTuple& t : xs)
        if (t.dim() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    if (xs.size() > 24)
        throw std::invalid_argument(std::string(what) + ": more than 24 inputs (2^n subsets)");

    std::vector<KTuple> values;
    const std::uint32_t n = static_cast<std::uint32_t>(xs.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        KTuple acc = identity;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask >> i & 1u) acc = combine(acc, xs[i]);
        values.push_back(std::move(acc));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

}  // namespace

std::vector<KTuple> finite_sums(const std::vector<KTuple>& xs) {
    return finite_folds(xs, KTuple::zeros(xs.empty() ? 1 : xs.front().dim()),
                        [](const KTuple& a, const KTuple& b) { return componentwise_add(a, b); },
                        "finite_sums");
}

std::vector<KTuple> finite_products(const std::vector<KTuple>& ys) {
    for (const KTuple& t : ys)
        if (!t.all_positive())
            throw std::invalid_argument("finite_products: inputs must have all coordinates >= 1");
    return finite_folds(ys, KTuple::ones(ys.empty() ? 1 : ys.front().dim()),
                        [](const KTuple& a, const KTuple& b) { return componentwise_mul(a, b); },
                        "finite_products");
}

}  // namespace gowers

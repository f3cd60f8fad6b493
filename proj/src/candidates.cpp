#include "gowers/candidates.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace gowers {

const char* kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::SumSubspace: return "sum";
        case StructureKind::ProductSubspace: return "product";
        case StructureKind::FiniteSums: return "fs";
        case StructureKind::FiniteProducts: return "fp";
        case StructureKind::SumFpPair: return "sum-fp";
        case StructureKind::SumProductPair: return "sum-product";
    }
    return "?";
}

StructureKind parse_kind(const std::string& name) {
    if (name == "sum") return StructureKind::SumSubspace;
    if (name == "product") return StructureKind::ProductSubspace;
    if (name == "fs") return StructureKind::FiniteSums;
    if (name == "fp") return StructureKind::FiniteProducts;
    if (name == "sum-fp") return StructureKind::SumFpPair;
    if (name == "sum-product") return StructureKind::SumProductPair;
    throw std::invalid_argument("unknown structure kind: " + name +
                                " (expected sum|product|fs|fp|sum-fp|sum-product)");
}

bool kind_is_pair(StructureKind k) {
    return k == StructureKind::SumFpPair || k == StructureKind::SumProductPair;
}

bool kind_is_product_world(StructureKind k) {
    return k == StructureKind::ProductSubspace || k == StructureKind::FiniteProducts;
}

void StructureSpec::validate() const {
    if (sum_count() < 0 || prod_count() < 0)
        throw std::invalid_argument("generator counts must be non-negative");
    if (kind_is_pair(kind)) {
        if (m_sum < 1 || m_prod < 1)
            throw std::invalid_argument("pair kinds need m_sum >= 1 and m_prod >= 1");
    } else if (kind_is_product_world(kind)) {
        if (m_prod < 1) throw std::invalid_argument("product kinds need m_prod >= 1");
    } else {
        if (m_sum < 1) throw std::invalid_argument("sum kinds need m_sum >= 1");
    }
}

std::string StructureSpec::fingerprint() const {
    std::ostringstream os;
    os << "kind=" << kind_name(kind) << " m_sum=" << sum_count() << " m_prod=" << prod_count()
       << " distinct=" << (distinct_values ? 1 : 0) << " closure=" << (closure ? 1 : 0)
       << " positive_sum_gens=" << (positive_sum_generators ? 1 : 0);
    return os.str();
}

namespace {

struct SideCandidate {
    std::vector<std::uint32_t> generators;
    std::vector<std::uint32_t> cells;
};

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Maps a value list to cell indices under the closure policy. Returns
// nullopt when the candidate must be dropped. Values whose computation
// overflowed lie outside every machine-sized box, so the caller treats
// overflow the same as an out-of-box value.
std::optional<std::vector<std::uint32_t>> cells_of_values(const CellIndex& index,
                                                          const std::vector<KTuple>& values,
                                                          bool closure) {
    std::vector<std::uint32_t> out;
    out.reserve(values.size());
    for (const KTuple& v : values) {
        auto idx = index.try_index(v);
        if (idx) {
            out.push_back(*idx);
        } else if (closure) {
            return std::nullopt;
        }
    }
    if (out.empty()) return std::nullopt;
    return out;   // values arrive sorted and unique, so indices do too
}

using ValuesFn = std::function<std::optional<std::vector<KTuple>>(const std::vector<KTuple>&)>;

// Non-decreasing (repeats) or strictly increasing (distinct) index tuples
// over `domain`, in lexicographic order.
std::vector<SideCandidate> enumerate_side(const CellIndex& index,
                                          const std::vector<std::uint32_t>& domain, int m,
                                          bool distinct, bool closure, const ValuesFn& values_of) {
    std::vector<SideCandidate> out;
    std::vector<std::uint32_t> picked;
    std::vector<KTuple> members;
    picked.reserve(static_cast<std::size_t>(m));
    members.reserve(static_cast<std::size_t>(m));

    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(picked.size()) == m) {
            auto values = values_of(members);
            if (!values) return;
            auto cells = cells_of_values(index, *values, closure);
            if (!cells) return;
            out.push_back(SideCandidate{picked, std::move(*cells)});
            return;
        }
        for (std::size_t d = from; d < domain.size(); ++d) {
            picked.push_back(domain[d]);
            members.push_back(index.cell(domain[d]));
            rec(distinct ? d + 1 : d);
            picked.pop_back();
            members.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace

CandidateTable build_candidate_table(const CellIndex& index, const StructureSpec& spec,
                                     std::size_t cap) {
    spec.validate();
    const Box& box = index.box();
    const int k = box.dim;

    const bool product_world = kind_is_product_world(spec.kind);
    if (product_world && box.space != Space::Yk)
        throw std::invalid_argument(std::string(kind_name(spec.kind)) + " needs a product-world (Yk) box");
    if (!product_world && box.space != Space::Xk)
        throw std::invalid_argument(std::string(kind_name(spec.kind)) + " needs a sum-world (Xk) box");

    auto domain_matching = [&](auto&& pred) {
        std::vector<std::uint32_t> d;
        for (std::uint32_t i = 0; i < index.size(); ++i)
            if (pred(index.cell(i))) d.push_back(i);
        return d;
    };
    std::vector<std::uint32_t> all_cells = domain_matching([](const KTuple&) { return true; });

    // value computations; overflow means "outside every box", see cells_of_values
    auto guarded = [](auto&& fn) {
        return [fn](const std::vector<KTuple>& members) -> std::optional<std::vector<KTuple>> {
            try {
                return fn(members);
            } catch (const std::overflow_error&) {
                return std::nullopt;
            }
        };
    };
    ValuesFn sum_subspace_values = guarded([k, &spec](const std::vector<KTuple>& members) {
        return gowers_sum_values(GeneratorSet{k, members, spec.distinct_values});
    });
    ValuesFn product_subspace_values = guarded([k, &spec](const std::vector<KTuple>& members) {
        return gowers_product_values(GeneratorSet{k, members, spec.distinct_values});
    });
    ValuesFn fs_values = guarded([](const std::vector<KTuple>& members) { return finite_sums(members); });
    ValuesFn fp_values = guarded([](const std::vector<KTuple>& members) { return finite_products(members); });

    CandidateTable table;
    table.box = box;
    table.spec = spec;

    auto append = [&](Candidate c) {
        if (table.candidates.size() >= cap)
            throw CandidateCapError(cap, table.candidates.size() + 1);
        table.candidates.push_back(std::move(c));
    };

    switch (spec.kind) {
        case StructureKind::SumSubspace:
        case StructureKind::FiniteSums: {
            const auto& fn = spec.kind == StructureKind::SumSubspace ? sum_subspace_values : fs_values;
            for (auto& side : enumerate_side(index, all_cells, spec.m_sum, spec.distinct_values,
                                             spec.closure, fn))
                append(Candidate{std::move(side.generators), {}, side.cells, {}, side.cells});
            break;
        }
        case StructureKind::ProductSubspace:
        case StructureKind::FiniteProducts: {
            const auto& fn =
                spec.kind == StructureKind::ProductSubspace ? product_subspace_values : fp_values;
            for (auto& side : enumerate_side(index, all_cells, spec.m_prod, spec.distinct_values,
                                             spec.closure, fn))
                append(Candidate{{}, std::move(side.generators), {}, side.cells, side.cells});
            break;
        }
        case StructureKind::SumFpPair:
        case StructureKind::SumProductPair: {
            auto sum_domain = spec.positive_sum_generators
                                  ? domain_matching([](const KTuple& t) { return t.all_positive(); })
                                  : all_cells;
            auto prod_domain = spec.kind == StructureKind::SumFpPair
                                   ? domain_matching([](const KTuple& t) { return t.all_positive(); })
                                   : domain_matching([](const KTuple& t) { return in_space(t, Space::Yk); });
            auto sums = enumerate_side(index, sum_domain, spec.m_sum, spec.distinct_values,
                                       spec.closure, sum_subspace_values);
            auto prods = enumerate_side(
                index, prod_domain, spec.m_prod, spec.distinct_values, spec.closure,
                spec.kind == StructureKind::SumFpPair ? fp_values : product_subspace_values);
            if (!prods.empty() && sums.size() > cap / prods.size())
                throw CandidateCapError(cap, sums.size() * prods.size());
            for (const auto& s : sums) {
                for (const auto& p : prods) {
                    std::vector<std::uint32_t> all;
                    all.reserve(s.cells.size() + p.cells.size());
                    std::set_union(s.cells.begin(), s.cells.end(), p.cells.begin(), p.cells.end(),
                                   std::back_inserter(all));
                    append(Candidate{s.generators, p.generators, s.cells, p.cells, std::move(all)});
                }
            }
            break;
        }
    }

    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
    seen.reserve(table.candidates.size());
    for (std::uint32_t i = 0; i < table.candidates.size(); ++i)
        if (seen.insert(table.candidates[i].cells).second) table.distinct_sets.push_back(i);
    return table;
}

}  // namespace gowers

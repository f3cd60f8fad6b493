#include "gowers/ktuple.hpp"

#include <sstream>
#include <stdexcept>

namespace gowers {

Coord checked_add(Coord a, Coord b) {
    Coord out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("coordinate overflow in addition");
    return out;
}

Coord checked_mul(Coord a, Coord b) {
    Coord out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("coordinate overflow in multiplication");
    return out;
}

KTuple::KTuple(std::vector<Coord> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw std::invalid_argument("KTuple needs at least one coordinate");
    for (Coord c : coords_)
        if (c < 0)
            throw std::invalid_argument("KTuple coordinates must be non-negative");
}

KTuple KTuple::zeros(int dim) { return KTuple(std::vector<Coord>(static_cast<std::size_t>(dim), 0)); }
KTuple KTuple::ones(int dim) { return KTuple(std::vector<Coord>(static_cast<std::size_t>(dim), 1)); }

bool KTuple::all_positive() const {
    for (Coord c : coords_)
        if (c < 1) return false;
    return true;
}

std::string KTuple::to_string() const {
    if (dim() == 1) return std::to_string(coords_[0]);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ',';
        os << coords_[i];
    }
    os << ')';
    return os.str();
}

bool in_space(const KTuple& t, Space s) {
    switch (s) {
        case Space::Xk: return t[0] != 0;
        case Space::Yk: return t.all_positive() && t[0] != 1;
        case Space::FullN0k: return true;
        case Space::FullNk: return t.all_positive();
    }
    return false;
}

const char* space_name(Space s) {
    switch (s) {
        case Space::Xk: return "Xk";
        case Space::Yk: return "Yk";
        case Space::FullN0k: return "N0k";
        case Space::FullNk: return "Nk";
    }
    return "?";
}

Space parse_space(const std::string& name) {
    if (name == "Xk") return Space::Xk;
    if (name == "Yk") return Space::Yk;
    if (name == "N0k") return Space::FullN0k;
    if (name == "Nk") return Space::FullNk;
    throw std::invalid_argument("unknown space tag: " + name);
}

KTuple tetris_shift(const KTuple& t) {
    std::vector<Coord> out(t.coords().size());
    out[0] = 0;
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = t.coords()[i - 1];
    return KTuple(std::move(out));
}

KTuple mult_shift(const KTuple& t) {
    if (!t.all_positive())
        throw std::invalid_argument("mult_shift requires a tuple in N^k (no zero coordinate)");
    std::vector<Coord> out(t.coords().size());
    out[0] = 1;
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = t.coords()[i - 1];
    return KTuple(std::move(out));
}

KTuple tetris_power(KTuple t, int j) {
    for (int i = 0; i < j; ++i) t = tetris_shift(t);
    return t;
}

KTuple mult_power(KTuple t, int j) {
    for (int i = 0; i < j; ++i) t = mult_shift(t);
    return t;
}

namespace {

void require_same_dim(const KTuple& x, const KTuple& y, const char* what) {
    if (x.dim() != y.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

KTuple componentwise_add(const KTuple& x, const KTuple& y) {
    require_same_dim(x, y, "componentwise_add");
    std::vector<Coord> out(x.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(x.coords()[i], y.coords()[i]);
    return KTuple(std::move(out));
}

KTuple componentwise_mul(const KTuple& x, const KTuple& y) {
    require_same_dim(x, y, "componentwise_mul");
    std::vector<Coord> out(x.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_mul(x.coords()[i], y.coords()[i]);
    return KTuple(std::move(out));
}

KTuple mixed_sum(const KTuple& m, const KTuple& n) {
    const int j = m.dim();
    const int k = n.dim();
    if (j >= k)
        throw std::invalid_argument("mixed_sum: first argument must have strictly smaller dimension");
    if (!in_space(m, Space::Xk) || !in_space(n, Space::Xk))
        throw std::invalid_argument("mixed_sum: both arguments must have a nonzero first coordinate");
    std::vector<Coord> out(n.coords());
    for (int i = 0; i < j; ++i) {
        auto& slot = out[static_cast<std::size_t>(k - j + i)];
        slot = checked_add(slot, m[i]);
    }
    return KTuple(std::move(out));
}

ScalingCheck check_scaling_identity(const KTuple& nbar, const KTuple& x,
                                    const KTuple& z, int shift_count) {
    require_same_dim(nbar, x, "check_scaling_identity");
    require_same_dim(nbar, z, "check_scaling_identity");
    if (shift_count < 0 || shift_count > nbar.dim() - 1)
        throw std::invalid_argument("check_scaling_identity: shift count must be in [0, k-1]");
    KTuple lhs = componentwise_add(componentwise_mul(nbar, x),
                                   tetris_power(componentwise_mul(nbar, z), shift_count));
    KTuple rhs = componentwise_mul(nbar, componentwise_add(x, tetris_power(z, shift_count)));
    return ScalingCheck{lhs == rhs, std::move(lhs), std::move(rhs)};
}

}  // namespace gowers

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace gowers {

using Coord = std::int64_t;

/// Coordinate arithmetic with overflow detection. Wrapping would silently
/// corrupt search results, so any overflow throws std::overflow_error.
Coord checked_add(Coord a, Coord b);
Coord checked_mul(Coord a, Coord b);

/// A k-dimensional vector of non-negative integers. Ordering is
/// lexicographic; this is the canonical order used by every module.
class KTuple {
public:
    KTuple() = default;
    explicit KTuple(std::vector<Coord> coords);

    static KTuple zeros(int dim);
    static KTuple ones(int dim);

    int dim() const { return static_cast<int>(coords_.size()); }
    Coord operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<Coord>& coords() const { return coords_; }

    bool all_positive() const;

    friend bool operator==(const KTuple&, const KTuple&) = default;
    friend auto operator<=>(const KTuple& a, const KTuple& b) { return a.coords_ <=> b.coords_; }

    std::string to_string() const;   // "(a,b,c)"; bare integer for dim 1

private:
    std::vector<Coord> coords_;
};

/// Membership predicates for the tuple spaces the workbench searches over.
///   Xk      — first coordinate != 0, coordinates in N_0 (the sum world)
///   Yk      — all coordinates >= 1 and first coordinate != 1 (the product world)
///   FullN0k — all of N_0^k
///   FullNk  — all of N^k
enum class Space { Xk, Yk, FullN0k, FullNk };

bool in_space(const KTuple& t, Space s);
const char* space_name(Space s);
Space parse_space(const std::string& name);   // throws std::invalid_argument

/// The tetris shift: (n_1,...,n_k) -> (0, n_1,...,n_{k-1}).
KTuple tetris_shift(const KTuple& t);

/// The multiplicative shift: (n_1,...,n_k) -> (1, n_1,...,n_{k-1}).
/// Rejects tuples with a zero coordinate (not in N^k).
KTuple mult_shift(const KTuple& t);

/// j-fold iterates of the shifts. j = 0 is the identity.
KTuple tetris_power(KTuple t, int j);
KTuple mult_power(KTuple t, int j);

KTuple componentwise_add(const KTuple& x, const KTuple& y);
KTuple componentwise_mul(const KTuple& x, const KTuple& y);

/// Mixed-dimension addition. For m of dimension j and n of dimension k with
/// j < k, the result copies the first k-j coordinates of n and adds m onto
/// the last j coordinates:
///   (m_1,...,m_j) + (n_1,...,n_k) = (n_1,...,n_{k-j}, m_1+n_{k-j+1},...,m_j+n_k).
/// The symmetric map taking the higher-dimensional tuple first uses the same
/// tail-overlay rule; call this function with the arguments swapped.
KTuple mixed_sum(const KTuple& m, const KTuple& n);

/// Result of testing the scaling identity
///   nbar*x + T^j(nbar*z)  ==  nbar*(x + T^j z)
/// where * is the componentwise product, + the componentwise sum and T the
/// tetris shift. The identity holds for j = 0 and for constant nbar; it can
/// fail otherwise, in which case both evaluated sides are reported.
struct ScalingCheck {
    bool pass;
    KTuple lhs;
    KTuple rhs;
};

ScalingCheck check_scaling_identity(const KTuple& nbar, const KTuple& x,
                                    const KTuple& z, int shift_count);

}  // namespace gowers

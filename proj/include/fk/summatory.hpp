#pragma once
// summatory.hpp - cumulative counting functions F_k(x, l) = sum_{n<=x} f_k(n, l)
// and the Piltz divisor summatory D_k(x) = F_k(x, 1), by several algorithms:
// the plain divisor-sum recursion, separation recursions, the Dirichlet
// hyperbola method, an even-k doubling shortcut, a closed two-factor form,
// and a linear sieve producing whole D_k tables.
//
// x enters only through floor(x / i) values, so thresholds are integers here;
// callers with real thresholds pass the floor.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "fk/arith.hpp"
#include "fk/counts.hpp"

namespace fk {

using SummatoryValue = BigNat;

struct SummatoryQuery {
    BigNat x;
    unsigned k = 0;
    std::uint64_t l = 1;
};

// Shared-memo evaluator for the divisor-sum recursion
// F_k(x, l) = sum_{i=l}^{x} F_{k-1}(floor(x/i), l); the memo covers the
// O(sqrt x) distinct quotient values per level. Not thread-safe; use one
// instance per thread.
class SummatoryEvaluator {
  public:
    explicit SummatoryEvaluator(std::uint64_t l);
    BigNat F(std::uint64_t x, unsigned k) { return F_ref(x, k); }
    // reference into the memo; stays valid while the evaluator lives
    const BigNat& F_ref(std::uint64_t x, unsigned k);
    std::uint64_t l() const { return l_; }

  private:
    std::uint64_t l_;
    std::unordered_map<std::uint64_t, BigNat> memo_;
};

// Budget-guarded single calls.
SummatoryValue F_naive(std::uint64_t x, unsigned k, std::uint64_t l);
SummatoryValue F_separation(std::uint64_t x, unsigned k, std::uint64_t l,
                            SeparationVariant variant = SeparationVariant::kSingleLevel);

// Hyperbola split: F_k = sum_{i<=u} F_{k-j}(x/i) f_j(i) + sum_{i<=v} F_j(x/i) f_{k-j}(i)
// - F_j(u) F_{k-j}(v), with u*v = x. u defaults to floor(x^(j/k)); pass
// split_u to pick the decomposition explicitly. Requires 1 <= split_j <= k-1.
SummatoryValue F_hyperbola(std::uint64_t x, unsigned k, std::uint64_t l,
                           unsigned split_j, std::uint64_t split_u = 0);

// Even k only: F_k(x) = 2 sum_{i<=sqrt(x)} F_{k/2}(x/i) f_{k/2}(i) - F_{k/2}(sqrt x)^2.
SummatoryValue F_doubling(std::uint64_t x, unsigned k, std::uint64_t l);

// Two-factor closed form F_2(x,l) = 2 sum_{i=l}^{sqrt x}(floor(x/i)-l+1) - (floor(sqrt x)-l+1)^2.
// compact_literal switches to the uncorrected compact relation
// 2 sum_{i<=sqrt x} floor(x/i) - floor(sqrt x)^2 + (l-1)^2, kept only for
// documentation; it disagrees with the definition for l >= 2.
SummatoryValue F2_closed(std::uint64_t x, std::uint64_t l, bool compact_literal = false);

// Prefix-summed divisor table: cum[x] = D_k(x) for 1 <= x <= limit.
struct DkTable {
    unsigned k = 0;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> cum; // index 0 unused (0)

    std::uint64_t D(std::uint64_t x) const;

    // binary cache format: "FKDK", u32 version, u32 k, u64 limit, then
    // limit little-endian u64 values D_k(1..limit)
    void dump(std::ostream& out) const;
    static DkTable load(std::istream& in);
    void dump_file(const std::string& path) const;
    static DkTable load_file(const std::string& path);
};

DkTable d_k_sieve(std::uint64_t limit, unsigned k);

} // namespace fk

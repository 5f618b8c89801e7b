#ifndef CLASSEX_BOUNDS_HPP
#define CLASSEX_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classex/classalg.hpp"

namespace classex {

/// Maximal gap between consecutive integers coprime to n, computed by a
/// definitional scan over [1, 2n] (the coprime pattern is n-periodic and
/// contains 1, so every gap shows up there). j(1) = 1 by convention.
std::uint32_t jacobsthal(std::uint64_t n);

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t radical(std::uint64_t n);

/// Upper bound on e(g) for a semirational element of order n: the minimum
/// over the applicable rules (each one a separate branch):
///   n = 1                          -> 1
///   all k prime divisors >= k+2    -> 3
///   n an odd prime power           -> 3
///   n a power of 2                 -> 4
///   always                         -> j(n) + 2
std::uint32_t semirational_upper_bound(std::uint64_t n);

/// min{n, (q-1)/(n,q-1)} and min{n, (q+1)/(n,q+1)}.
std::uint32_t psl_lower_bound(int n, std::uint64_t q);
std::uint32_t psu_lower_bound(int n, std::uint64_t q);

/// One row of the published upper-bound tables, encoded as data. Rows are
/// matched first to last within a family block; `rule` is a stable slug
/// used in reports.
struct TableRowResult {
    std::uint32_t bound = 0;
    std::string rule;
    bool caveat = false;        // bound stated for the linear (SL-level) group
    std::string caveat_note;
};

/// Families the dispatcher knows. Classical ones take the matrix dimension
/// as n; exceptional ones ignore n. Throws InputError for unknown names.
/// Returns nullopt when no row matches (excluded small cases).
std::optional<TableRowResult> table_upper_bound(const std::string& family, int n,
                                                std::uint64_t q);
/// All matching rows (first one is the dispatch result).
std::vector<TableRowResult> table_upper_bound_all(const std::string& family, int n,
                                                  std::uint64_t q);

/// The six-term character-sum majorant for the order-pq classes of the
/// 3|(q+1) unitary groups in dimension 3, evaluated in exact rational
/// arithmetic. Strictly below 1 certifies the criterion sum is nonzero.
mpq_class u3q1_majorant(std::uint64_t q);

struct BoundVerdict {
    std::string group;
    std::string scope;  // "group" or "class <id>"
    std::optional<std::uint32_t> lower;
    std::optional<std::uint32_t> upper;
    std::vector<std::pair<std::string, std::uint32_t>> sources;
    std::optional<std::uint32_t> computed;
    bool pass = true;
    std::string detail;
};

/// Group-level verdict lower <= e(G) <= upper plus one per-class verdict
/// e(C) <= semirational_upper_bound(order) for each semirational class.
std::vector<BoundVerdict> verdict(const ExponentReport& rep,
                                  const std::optional<FamilyTag>& family);

std::string verdict_json(const std::vector<BoundVerdict>& vs);

}  // namespace classex

#endif

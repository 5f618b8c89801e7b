#ifndef CLASSEX_CLASSES_HPP
#define CLASSEX_CLASSES_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "classex/enumerate.hpp"

namespace classex {

/// Conjugacy class data over a complete ElementTable. Class ids are sorted
/// by (element order of representative, class size, smallest member index),
/// so id 0 is always the trivial class and ids are stable across runs.
struct ClassData {
    std::vector<std::uint32_t> class_of;   // element index -> class id
    std::vector<std::uint32_t> reps;       // class id -> smallest member index
    std::vector<std::uint64_t> sizes;      // class id -> |C|
    std::vector<std::uint64_t> order_of_rep;
    std::vector<std::uint32_t> inverse_of; // class id -> class id of C^{-1}
    std::uint32_t n_classes = 0;

    // memo for power_class, keyed by (class id, m mod rep order)
    struct PowerMemo {
        std::unordered_map<std::uint64_t, std::uint32_t> map;
        std::mutex mu;
    };
    std::unique_ptr<PowerMemo> memo = std::make_unique<PowerMemo>();
};

/// Partitions the table into conjugation orbits. Closure under conjugation
/// by the generators suffices (conjugation by a word is a composition), so
/// the cost is O(|G| * #generators) products.
ClassData conjugacy_classes(const ElementTable& table, unsigned threads = 0);

/// Class of rep(c)^m (m may be any integer; negative means inverse powers).
std::uint32_t power_class(const ElementTable& table, const ClassData& cd,
                          std::uint32_t c, std::int64_t m);

bool is_real(const ClassData& cd, std::uint32_t c);
bool is_rational(const ElementTable& table, const ClassData& cd, std::uint32_t c);
bool is_semirational(const ElementTable& table, const ClassData& cd, std::uint32_t c);

/// Residues mod the representative order, coprime to it, split into
/// I1 = {m : g^m ~ g} and I2 = {m : g^m ~ g^{-1}}. Only defined for
/// semirational classes (throws otherwise).
struct ResidueSplit {
    std::vector<std::uint32_t> i1, i2;
};
ResidueSplit partition_I1_I2(const ElementTable& table, const ClassData& cd,
                             std::uint32_t c);

/// One row per class: id, size, rep order, real?, rational?, semirational?
std::string classes_csv(const ElementTable& table, const ClassData& cd);

/// Member lists per class (built on demand; used by the class algebra).
std::vector<std::vector<std::uint32_t>> class_members(const ClassData& cd);

}  // namespace classex

#endif

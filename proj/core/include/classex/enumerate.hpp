#ifndef CLASSEX_ENUMERATE_HPP
#define CLASSEX_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classex/group.hpp"

namespace classex {

struct EnumerateOptions {
    std::uint64_t limit = 1ull << 24;           // maximum group order
    unsigned threads = 0;                       // 0 = hardware concurrency
    std::uint64_t memory_budget = 4ull << 30;   // bytes for the code table
    std::string cache_dir;                      // empty = no cache
};

/// Sharded open-addressing map from element code to dense index. Read
/// operations are lock-free and thread-safe once construction is done.
class CodeIndex {
  public:
    CodeIndex() = default;
    void init(std::size_t code_bytes, std::uint64_t expected);
    /// Shard an element code belongs to; inserts into distinct shards are
    /// safe concurrently.
    unsigned shard_of(std::uint64_t hash) const { return unsigned(hash & (kShards - 1)); }
    void insert(const std::uint8_t* codes_base, std::uint64_t hash, std::uint32_t idx);
    std::optional<std::uint32_t> lookup(const std::uint8_t* codes_base,
                                        const std::uint8_t* code, std::uint64_t hash) const;

    static constexpr unsigned kShards = 64;

  private:
    struct Shard {
        std::vector<std::uint32_t> slots;  // value = index+1, 0 = empty
        std::uint64_t count = 0;
        std::uint64_t mask = 0;
    };
    void grow(Shard& s, const std::uint8_t* codes_base);

    std::size_t code_bytes_ = 0;
    Shard shards_[kShards];
};

/// The fully enumerated group: element <-> dense index bijection. Index 0 is
/// the identity; indices are assigned level by level in Cayley-graph BFS
/// order with each level sorted by code bytes, so two runs (any thread
/// count) produce byte-identical tables. Immutable once built.
struct ElementTable {
    GroupSpec spec;
    GroupOps ops;
    std::vector<std::uint8_t> codes;  // order * code_bytes
    CodeIndex index;
    std::uint64_t order = 0;

    explicit ElementTable(const GroupSpec& s) : spec(s), ops(s) {}

    const std::uint8_t* code_at(std::uint64_t i) const {
        return codes.data() + i * ops.code_bytes();
    }
    std::optional<std::uint32_t> index_of(const std::uint8_t* code) const {
        return index.lookup(codes.data(), code, fnv1a64(code, ops.code_bytes()));
    }
    std::uint32_t index_of_checked(const std::uint8_t* code) const;
    std::vector<std::uint16_t> decoded_at(std::uint64_t i) const;
    GroupElement element_at(std::uint64_t i) const;

    /// index of a*b given element indices (decodes, multiplies, looks up)
    std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_index(std::uint32_t a) const;
};

/// Cayley-graph BFS over right multiplication by the generators.
/// Throws BudgetError when the limit or memory budget is exceeded and
/// Error when a claimed order is not reproduced exactly.
ElementTable enumerate(const GroupSpec& spec, const EnumerateOptions& opts = {});

/// Multiplicative order of the element at idx (cycle structure shortcut for
/// permutations, iterated multiplication otherwise).
std::uint64_t element_order(const ElementTable& table, std::uint64_t idx);

/// Inverse index map for the whole table, parallelized.
std::vector<std::uint32_t> inverse_index_map(const ElementTable& table, unsigned threads);

}  // namespace classex

#endif

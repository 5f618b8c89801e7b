#include "classex/enumerate.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "classex/parallel.hpp"

namespace classex {

void CodeIndex::init(std::size_t code_bytes, std::uint64_t expected) {
    code_bytes_ = code_bytes;
    // Pre-reserve ~1.3x the expected order to avoid rehash storms.
    std::uint64_t per_shard = (expected * 13 / 10) / kShards + 16;
    std::uint64_t cap = 16;
    while (cap < per_shard * 2) cap <<= 1;
    for (auto& s : shards_) {
        s.slots.assign(cap, 0);
        s.mask = cap - 1;
        s.count = 0;
    }
}

void CodeIndex::grow(Shard& s, const std::uint8_t* codes_base) {
    std::vector<std::uint32_t> old;
    old.swap(s.slots);
    std::uint64_t cap = (s.mask + 1) * 2;
    s.slots.assign(cap, 0);
    s.mask = cap - 1;
    for (auto v : old) {
        if (!v) continue;
        const std::uint8_t* code = codes_base + std::uint64_t(v - 1) * code_bytes_;
        std::uint64_t h = fnv1a64(code, code_bytes_);
        std::uint64_t pos = (h >> 6) & s.mask;
        while (s.slots[pos]) pos = (pos + 1) & s.mask;
        s.slots[pos] = v;
    }
}

void CodeIndex::insert(const std::uint8_t* codes_base, std::uint64_t hash, std::uint32_t idx) {
    Shard& s = shards_[shard_of(hash)];
    if ((s.count + 1) * 10 > (s.mask + 1) * 7) grow(s, codes_base);
    std::uint64_t pos = (hash >> 6) & s.mask;
    while (s.slots[pos]) pos = (pos + 1) & s.mask;
    s.slots[pos] = idx + 1;
    ++s.count;
}

std::optional<std::uint32_t> CodeIndex::lookup(const std::uint8_t* codes_base,
                                               const std::uint8_t* code,
                                               std::uint64_t hash) const {
    const Shard& s = shards_[shard_of(hash)];
    std::uint64_t pos = (hash >> 6) & s.mask;
    while (true) {
        std::uint32_t v = s.slots[pos];
        if (!v) return std::nullopt;
        const std::uint8_t* cand = codes_base + std::uint64_t(v - 1) * code_bytes_;
        if (std::memcmp(cand, code, code_bytes_) == 0) return v - 1;
        pos = (pos + 1) & s.mask;
    }
}

std::uint32_t ElementTable::index_of_checked(const std::uint8_t* code) const {
    auto r = index_of(code);
    if (!r) throw Error("element not in table (closure violated?)");
    return *r;
}

std::vector<std::uint16_t> ElementTable::decoded_at(std::uint64_t i) const {
    std::vector<std::uint16_t> out(std::size_t(ops.points()));
    ops.decode(code_at(i), out.data());
    return out;
}

GroupElement ElementTable::element_at(std::uint64_t i) const {
    auto d = decoded_at(i);
    return ops.element(d.data());
}

std::uint32_t ElementTable::mul_index(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::uint16_t> da = decoded_at(a), db = decoded_at(b),
        prod(std::size_t(ops.points()));
    ops.mul(da.data(), db.data(), prod.data());
    std::vector<std::uint8_t> code(ops.code_bytes());
    ops.encode(prod.data(), code.data());
    return index_of_checked(code.data());
}

std::uint32_t ElementTable::inv_index(std::uint32_t a) const {
    std::vector<std::uint16_t> da = decoded_at(a), iv(std::size_t(ops.points()));
    ops.inv(da.data(), iv.data());
    std::vector<std::uint8_t> code(ops.code_bytes());
    ops.encode(iv.data(), code.data());
    return index_of_checked(code.data());
}

namespace {

struct CacheHeader {
    char magic[4] = {'C', 'X', 'T', 'B'};
    std::uint32_t version = kCodeVersion;
    std::uint64_t spec_hash = 0;
    std::uint64_t order = 0;
    std::uint64_t code_bytes = 0;
};

std::string cache_path(const std::string& dir, std::uint64_t spec_hash) {
    return dir + "/" + to_hex(spec_hash) + ".table";
}

bool try_load_cache(ElementTable& table, const EnumerateOptions& opts,
                    std::uint64_t spec_hash) {
    if (opts.cache_dir.empty()) return false;
    std::ifstream in(cache_path(opts.cache_dir, spec_hash), std::ios::binary);
    if (!in) return false;
    CacheHeader h;
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, "CXTB", 4) != 0 || h.version != kCodeVersion ||
        h.spec_hash != spec_hash || h.code_bytes != table.ops.code_bytes())
        return false;
    table.codes.resize(h.order * h.code_bytes);
    in.read(reinterpret_cast<char*>(table.codes.data()),
            std::streamsize(table.codes.size()));
    if (!in) return false;
    table.order = h.order;
    table.index.init(table.ops.code_bytes(), h.order);
    std::size_t cb = table.ops.code_bytes();
    // Rebuild shards in parallel: each worker owns a shard residue class.
    std::vector<std::uint64_t> hashes(h.order);
    parallel_for(h.order, opts.threads, [&](std::uint64_t i) {
        hashes[i] = fnv1a64(table.codes.data() + i * cb, cb);
    });
    parallel_for(CodeIndex::kShards, opts.threads, 1, [&](std::uint64_t sh) {
        for (std::uint64_t i = 0; i < h.order; ++i)
            if (table.index.shard_of(hashes[i]) == sh)
                table.index.insert(table.codes.data(), hashes[i], std::uint32_t(i));
    });
    return true;
}

void save_cache(const ElementTable& table, const EnumerateOptions& opts,
                std::uint64_t spec_hash) {
    if (opts.cache_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(opts.cache_dir, ec);
    std::string path = cache_path(opts.cache_dir, spec_hash);
    std::ofstream out(path + ".tmp", std::ios::binary | std::ios::trunc);
    if (!out) return;
    CacheHeader h;
    h.spec_hash = spec_hash;
    h.order = table.order;
    h.code_bytes = table.ops.code_bytes();
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    out.write(reinterpret_cast<const char*>(table.codes.data()),
              std::streamsize(table.codes.size()));
    out.close();
    std::filesystem::rename(path + ".tmp", path, ec);
}

}  // namespace

ElementTable enumerate(const GroupSpec& spec, const EnumerateOptions& opts) {
    if (spec.generators.empty()) throw InputError("no generators");
    ElementTable table(spec);
    const GroupOps& ops = table.ops;
    const std::size_t cb = ops.code_bytes();
    const int pts = ops.points();
    std::uint64_t spec_hash = spec.hash();

    if (try_load_cache(table, opts, spec_hash)) {
        if (spec.claimed_order && table.order != *spec.claimed_order)
            throw Error(spec.name + ": cached order mismatch");
        return table;
    }

    // Decode generators once; dedupe identical ones (tolerated degeneracy).
    std::vector<std::vector<std::uint16_t>> gens;
    for (const auto& g : spec.generators) {
        auto d = ops.decoded(g);
        if (std::find(gens.begin(), gens.end(), d) == gens.end()) gens.push_back(d);
    }
    const std::size_t ngens = gens.size();

    std::uint64_t expected = spec.claimed_order ? *spec.claimed_order : (1ull << 16);
    if (spec.claimed_order && *spec.claimed_order > opts.limit)
        throw BudgetError(spec.name + ": claimed order exceeds --limit");
    if (spec.claimed_order && *spec.claimed_order * cb > opts.memory_budget)
        throw BudgetError(spec.name + ": table would exceed the memory budget");
    table.index.init(cb, expected);
    table.codes.reserve(std::min<std::uint64_t>(expected, opts.limit) * cb);

    std::vector<std::uint16_t> id(std::size_t(pts), 0);
    ops.identity(id.data());
    table.codes.resize(cb);
    ops.encode(id.data(), table.codes.data());
    table.index.insert(table.codes.data(), fnv1a64(table.codes.data(), cb), 0);
    table.order = 1;

    std::vector<std::uint32_t> frontier{0};
    std::vector<std::uint8_t> candidates;    // frontier x generators products
    std::vector<std::uint8_t> fresh;         // deduped candidates not yet in table

    while (!frontier.empty()) {
        const std::uint64_t nf = frontier.size();
        candidates.resize(nf * ngens * cb);
        // Expand the frontier in parallel; each slot is written once.
        parallel_for(nf, opts.threads, [&](std::uint64_t fi) {
            thread_local std::vector<std::uint16_t> x, y;
            x.resize(std::size_t(pts));
            y.resize(std::size_t(pts));
            ops.decode(table.code_at(frontier[std::size_t(fi)]), x.data());
            for (std::size_t gi = 0; gi < ngens; ++gi) {
                ops.mul(x.data(), gens[gi].data(), y.data());
                ops.encode(y.data(), candidates.data() + (fi * ngens + gi) * cb);
            }
        });

        // Deterministic level ordering: sort candidate codes, drop
        // duplicates and everything already indexed.
        const std::uint64_t ncand = nf * ngens;
        std::vector<std::uint32_t> perm(ncand);
        for (std::uint64_t i = 0; i < ncand; ++i) perm[std::uint32_t(i)] = std::uint32_t(i);
        std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::memcmp(candidates.data() + std::uint64_t(a) * cb,
                               candidates.data() + std::uint64_t(b) * cb, cb) < 0;
        });
        fresh.clear();
        std::vector<char> keep(ncand, 0);
        for (std::uint64_t i = 0; i < ncand; ++i) {
            if (i > 0 && std::memcmp(candidates.data() + std::uint64_t(perm[i]) * cb,
                                     candidates.data() + std::uint64_t(perm[i - 1]) * cb,
                                     cb) == 0)
                continue;
            keep[perm[i]] = 1;
        }
        std::vector<std::uint32_t> uniq;
        uniq.reserve(ncand);
        for (std::uint64_t i = 0; i < ncand; ++i)
            if (keep[perm[i]]) uniq.push_back(perm[i]);
        std::vector<char> is_new(uniq.size(), 0);
        parallel_for(uniq.size(), opts.threads, [&](std::uint64_t i) {
            const std::uint8_t* code = candidates.data() + std::uint64_t(uniq[i]) * cb;
            is_new[i] = !table.index.lookup(table.codes.data(), code, fnv1a64(code, cb));
        });

        std::uint64_t base = table.order;
        std::uint64_t nnew = 0;
        for (std::size_t i = 0; i < uniq.size(); ++i) nnew += std::uint64_t(is_new[i]);
        if (base + nnew > opts.limit)
            throw BudgetError(spec.name + ": enumeration exceeded --limit " +
                              std::to_string(opts.limit));
        if ((base + nnew) * cb > opts.memory_budget)
            throw BudgetError(spec.name + ": enumeration exceeded the memory budget");

        table.codes.resize((base + nnew) * cb);
        frontier.clear();
        frontier.reserve(std::size_t(nnew));
        std::uint64_t at = base;
        for (std::size_t i = 0; i < uniq.size(); ++i) {
            if (!is_new[i]) continue;
            std::memcpy(table.codes.data() + at * cb,
                        candidates.data() + std::uint64_t(uniq[i]) * cb, cb);
            frontier.push_back(std::uint32_t(at));
            ++at;
        }
        table.order = base + nnew;
        // Shard-parallel insertion (hash prefix owns the shard).
        std::vector<std::uint64_t> hashes(frontier.size());
        parallel_for(frontier.size(), opts.threads, [&](std::uint64_t i) {
            hashes[i] = fnv1a64(table.code_at(frontier[std::size_t(i)]), cb);
        });
        parallel_for(CodeIndex::kShards, opts.threads, 1, [&](std::uint64_t sh) {
            for (std::size_t i = 0; i < frontier.size(); ++i)
                if (table.index.shard_of(hashes[i]) == sh)
                    table.index.insert(table.codes.data(), hashes[i], frontier[i]);
        });
    }

    if (spec.claimed_order && table.order != *spec.claimed_order)
        throw Error(spec.name + ": enumerated order " + std::to_string(table.order) +
                    " does not match claimed order " + std::to_string(*spec.claimed_order));
    save_cache(table, opts, spec_hash);
    return table;
}

std::uint64_t element_order(const ElementTable& table, std::uint64_t idx) {
    auto d = table.decoded_at(idx);
    return table.ops.order_of(d.data());
}

std::vector<std::uint32_t> inverse_index_map(const ElementTable& table, unsigned threads) {
    std::vector<std::uint32_t> inv_idx(table.order);
    const GroupOps& ops = table.ops;
    parallel_for(table.order, threads, [&](std::uint64_t i) {
        thread_local std::vector<std::uint16_t> x, y;
        thread_local std::vector<std::uint8_t> code;
        x.resize(std::size_t(ops.points()));
        y.resize(std::size_t(ops.points()));
        code.resize(ops.code_bytes());
        ops.decode(table.code_at(i), x.data());
        ops.inv(x.data(), y.data());
        ops.encode(y.data(), code.data());
        inv_idx[i] = table.index_of_checked(code.data());
    });
    return inv_idx;
}

}  // namespace classex

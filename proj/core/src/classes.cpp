#include "classex/classes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "classex/parallel.hpp"

namespace classex {

namespace {

constexpr std::uint32_t kUnassigned = ~std::uint32_t(0);

}  // namespace

ClassData conjugacy_classes(const ElementTable& table, unsigned threads) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    const std::size_t cb = ops.code_bytes();
    const std::uint64_t n = table.order;

    // Decode generators and their inverses once.
    std::vector<std::vector<std::uint16_t>> gens, gen_invs;
    for (const auto& g : table.spec.generators) {
        auto d = ops.decoded(g);
        if (std::find(gens.begin(), gens.end(), d) != gens.end()) continue;
        std::vector<std::uint16_t> gi(std::size_t(pts), 0);
        ops.inv(d.data(), gi.data());
        gens.push_back(std::move(d));
        gen_invs.push_back(std::move(gi));
    }

    ClassData cd;
    cd.class_of.assign(n, kUnassigned);
    std::vector<std::uint32_t> reps_by_discovery;
    std::vector<std::uint64_t> sizes_by_discovery;

    std::vector<std::uint32_t> stack;
    std::vector<std::uint16_t> x(std::size_t(pts), 0), t1(std::size_t(pts), 0), t2(std::size_t(pts), 0);
    std::vector<std::uint8_t> code(cb);

    for (std::uint64_t start = 0; start < n; ++start) {
        if (cd.class_of[start] != kUnassigned) continue;
        std::uint32_t id = std::uint32_t(reps_by_discovery.size());
        reps_by_discovery.push_back(std::uint32_t(start));
        std::uint64_t size = 0;
        cd.class_of[start] = id;
        stack.assign(1, std::uint32_t(start));
        while (!stack.empty()) {
            std::uint32_t cur = stack.back();
            stack.pop_back();
            ++size;
            ops.decode(table.code_at(cur), x.data());
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                // g^{-1} x g
                ops.mul(gen_invs[gi].data(), x.data(), t1.data());
                ops.mul(t1.data(), gens[gi].data(), t2.data());
                ops.encode(t2.data(), code.data());
                std::uint32_t idx = table.index_of_checked(code.data());
                if (cd.class_of[idx] == kUnassigned) {
                    cd.class_of[idx] = id;
                    stack.push_back(idx);
                }
            }
        }
        sizes_by_discovery.push_back(size);
    }

    const std::uint32_t ncl = std::uint32_t(reps_by_discovery.size());

    // Deterministic ordering: (rep element order, size, smallest member).
    std::vector<std::uint64_t> rep_orders(ncl);
    parallel_for(ncl, threads, 1, [&](std::uint64_t i) {
        rep_orders[i] = element_order(table, reps_by_discovery[std::size_t(i)]);
    });
    std::vector<std::uint32_t> perm(ncl);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (rep_orders[a] != rep_orders[b]) return rep_orders[a] < rep_orders[b];
        if (sizes_by_discovery[a] != sizes_by_discovery[b])
            return sizes_by_discovery[a] < sizes_by_discovery[b];
        return reps_by_discovery[a] < reps_by_discovery[b];
    });
    std::vector<std::uint32_t> new_id(ncl);
    for (std::uint32_t i = 0; i < ncl; ++i) new_id[perm[i]] = i;

    cd.n_classes = ncl;
    cd.reps.resize(ncl);
    cd.sizes.resize(ncl);
    cd.order_of_rep.resize(ncl);
    for (std::uint32_t old = 0; old < ncl; ++old) {
        std::uint32_t nw = new_id[old];
        cd.reps[nw] = reps_by_discovery[old];
        cd.sizes[nw] = sizes_by_discovery[old];
        cd.order_of_rep[nw] = rep_orders[old];
    }
    parallel_for(n, threads, [&](std::uint64_t i) {
        cd.class_of[i] = new_id[cd.class_of[i]];
    });

    cd.inverse_of.resize(ncl);
    for (std::uint32_t c = 0; c < ncl; ++c) {
        std::uint32_t inv_idx = table.inv_index(cd.reps[c]);
        cd.inverse_of[c] = cd.class_of[inv_idx];
    }
    return cd;
}

std::uint32_t power_class(const ElementTable& table, const ClassData& cd,
                          std::uint32_t c, std::int64_t m) {
    std::uint64_t ord = cd.order_of_rep[c];
    std::int64_t mm = m % std::int64_t(ord);
    if (mm < 0) mm += std::int64_t(ord);
    std::uint64_t key = (std::uint64_t(c) << 32) | std::uint64_t(mm);
    {
        std::lock_guard<std::mutex> lock(cd.memo->mu);
        auto it = cd.memo->map.find(key);
        if (it != cd.memo->map.end()) return it->second;
    }
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    std::vector<std::uint16_t> base(std::size_t(pts), 0), acc(std::size_t(pts), 0),
        tmp(std::size_t(pts), 0);
    ops.decode(table.code_at(cd.reps[c]), base.data());
    ops.identity(acc.data());
    std::uint64_t e = std::uint64_t(mm);
    // square-and-multiply on decoded elements
    while (e) {
        if (e & 1) {
            ops.mul(acc.data(), base.data(), tmp.data());
            acc.swap(tmp);
        }
        ops.mul(base.data(), base.data(), tmp.data());
        base.swap(tmp);
        e >>= 1;
    }
    std::vector<std::uint8_t> code(ops.code_bytes());
    ops.encode(acc.data(), code.data());
    std::uint32_t result = cd.class_of[table.index_of_checked(code.data())];
    std::lock_guard<std::mutex> lock(cd.memo->mu);
    cd.memo->map.emplace(key, result);
    return result;
}

bool is_real(const ClassData& cd, std::uint32_t c) {
    return cd.inverse_of[c] == c;
}

bool is_rational(const ElementTable& table, const ClassData& cd, std::uint32_t c) {
    std::uint64_t ord = cd.order_of_rep[c];
    for (std::uint64_t m = 1; m < ord; ++m) {
        if (std::gcd(m, ord) != 1) continue;
        if (power_class(table, cd, c, std::int64_t(m)) != c) return false;
    }
    return true;
}

bool is_semirational(const ElementTable& table, const ClassData& cd, std::uint32_t c) {
    std::uint64_t ord = cd.order_of_rep[c];
    std::uint32_t ic = cd.inverse_of[c];
    for (std::uint64_t m = 1; m < ord; ++m) {
        if (std::gcd(m, ord) != 1) continue;
        std::uint32_t pc = power_class(table, cd, c, std::int64_t(m));
        if (pc != c && pc != ic) return false;
    }
    return true;
}

ResidueSplit partition_I1_I2(const ElementTable& table, const ClassData& cd,
                             std::uint32_t c) {
    if (!is_semirational(table, cd, c))
        throw Error("partition_I1_I2: class is not semirational");
    ResidueSplit out;
    std::uint64_t ord = cd.order_of_rep[c];
    std::uint32_t ic = cd.inverse_of[c];
    for (std::uint64_t m = 1; m <= ord; ++m) {
        if (std::gcd(m, ord) != 1) continue;
        std::uint32_t pc = power_class(table, cd, c, std::int64_t(m));
        if (pc == c) out.i1.push_back(std::uint32_t(m));
        if (pc == ic) out.i2.push_back(std::uint32_t(m));
    }
    return out;
}

std::string classes_csv(const ElementTable& table, const ClassData& cd) {
    std::ostringstream os;
    os << "class,size,rep_order,real,rational,semirational\n";
    for (std::uint32_t c = 0; c < cd.n_classes; ++c) {
        os << c << ',' << cd.sizes[c] << ',' << cd.order_of_rep[c] << ','
           << (is_real(cd, c) ? 1 : 0) << ','
           << (is_rational(table, cd, c) ? 1 : 0) << ','
           << (is_semirational(table, cd, c) ? 1 : 0) << '\n';
    }
    return os.str();
}

std::vector<std::vector<std::uint32_t>> class_members(const ClassData& cd) {
    std::vector<std::vector<std::uint32_t>> members(cd.n_classes);
    for (std::uint32_t c = 0; c < cd.n_classes; ++c)
        members[c].reserve(std::size_t(cd.sizes[c]));
    for (std::uint32_t i = 0; i < cd.class_of.size(); ++i)
        members[cd.class_of[i]].push_back(i);
    return members;
}

}  // namespace classex

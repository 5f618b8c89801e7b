#include "classex/classalg.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "classex/parallel.hpp"

namespace classex {

namespace {

// Decoded class representatives, one per class.
std::vector<std::vector<std::uint16_t>> decoded_reps(const ElementTable& table,
                                                     const ClassData& cd) {
    std::vector<std::vector<std::uint16_t>> reps(cd.n_classes);
    for (std::uint32_t c = 0; c < cd.n_classes; ++c)
        reps[c] = table.decoded_at(cd.reps[c]);
    return reps;
}

}  // namespace

ClassTensor structure_constants(const ElementTable& table, const ClassData& cd,
                                unsigned threads) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    const std::uint32_t n = cd.n_classes;
    ClassTensor ct;
    ct.n = n;
    ct.a.assign(std::uint64_t(n) * n * n, 0);

    auto members = class_members(cd);
    auto inv_idx = inverse_index_map(table, threads);
    auto reps = decoded_reps(table, cd);

    // One task per first-factor class C; tasks write disjoint tensor rows.
    parallel_for(n, threads, 1, [&](std::uint64_t Ci) {
        const std::uint32_t C = std::uint32_t(Ci);
        std::uint64_t* row = ct.a.data() + std::uint64_t(C) * n * n;
        std::vector<std::uint16_t> xinv(std::size_t(pts), 0), y(std::size_t(pts), 0);
        std::vector<std::uint8_t> code(ops.code_bytes());
        for (std::uint32_t x : members[C]) {
            ops.decode(table.code_at(inv_idx[x]), xinv.data());
            for (std::uint32_t E = 0; E < n; ++E) {
                ops.mul(xinv.data(), reps[E].data(), y.data());
                ops.encode(y.data(), code.data());
                std::uint32_t D = cd.class_of[table.index_of_checked(code.data())];
                ++row[std::uint64_t(D) * n + E];
            }
        }
    });
    return ct;
}

namespace {

// Shared support-BFS machinery; `edge(D, E)` answers a_{D,c}^E > 0.
template <typename EdgeFn>
std::vector<std::vector<std::uint32_t>> support_bfs_impl(std::uint32_t n,
                                                         std::uint32_t c,
                                                         EdgeFn&& edge) {
    std::vector<std::vector<std::uint32_t>> steps;
    std::vector<char> cum(n, 0);
    std::vector<char> cur(n, 0), nxt(n, 0);
    cur[c] = 1;
    cum[c] = 1;
    steps.push_back({c});
    for (;;) {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (std::uint32_t D = 0; D < n; ++D) {
            if (!cur[D]) continue;
            for (std::uint32_t E = 0; E < n; ++E)
                if (!nxt[E] && edge(D, E)) nxt[E] = 1;
        }
        bool grew = false;
        std::vector<std::uint32_t> step;
        for (std::uint32_t E = 0; E < n; ++E) {
            if (nxt[E]) {
                step.push_back(E);
                if (!cum[E]) {
                    cum[E] = 1;
                    grew = true;
                }
            }
        }
        if (!grew) break;
        steps.push_back(std::move(step));
        cur.swap(nxt);
    }
    return steps;
}

template <typename EdgeFn>
std::uint32_t gen_exponent_impl(std::uint32_t n, std::uint32_t c, EdgeFn&& edge,
                                std::vector<std::vector<std::int32_t>>* preds) {
    if (c == 0) return 1;
    std::vector<char> cur(n, 0), nxt(n, 0);
    cur[c] = 1;
    for (std::uint32_t k = 2; k <= 4 * n + 70000; ++k) {
        std::fill(nxt.begin(), nxt.end(), 0);
        std::vector<std::int32_t> pred(n, -1);
        for (std::uint32_t D = 0; D < n; ++D) {
            if (!cur[D]) continue;
            for (std::uint32_t E = 0; E < n; ++E)
                if (pred[E] < 0 && edge(D, E)) {
                    nxt[E] = 1;
                    pred[E] = std::int32_t(D);
                }
        }
        if (preds) preds->push_back(pred);
        if (nxt[0]) return k;
        cur.swap(nxt);
    }
    throw Error("gen_exponent: support BFS failed to reach the identity");
}

}  // namespace

std::vector<std::vector<std::uint32_t>> class_support_bfs(const ClassTensor& ct,
                                                          std::uint32_t c) {
    return support_bfs_impl(ct.n, c,
                            [&](std::uint32_t D, std::uint32_t E) { return ct.at(D, c, E) > 0; });
}

std::uint32_t gen_exponent(const ClassTensor& ct, std::uint32_t c) {
    return gen_exponent_impl(ct.n, c,
                             [&](std::uint32_t D, std::uint32_t E) { return ct.at(D, c, E) > 0; },
                             nullptr);
}

std::vector<std::uint32_t> exponent_chain(const ClassTensor& ct, std::uint32_t c) {
    if (c == 0) return {0};
    std::vector<std::vector<std::int32_t>> preds;
    std::uint32_t e = gen_exponent_impl(
        ct.n, c, [&](std::uint32_t D, std::uint32_t E) { return ct.at(D, c, E) > 0; },
        &preds);
    // preds[j][E] is a predecessor class in S_{j+1} for E in S_{j+2}.
    std::vector<std::uint32_t> chain(e);
    chain[e - 1] = 0;
    for (std::uint32_t j = e - 1; j >= 1; --j)
        chain[j - 1] = std::uint32_t(preds[j - 1][chain[j]]);
    return chain;  // chain[0] == c, chain[e-1] == 0
}

std::uint32_t gen_exponent_group(const ClassTensor& ct) {
    std::uint32_t e = 1;
    for (std::uint32_t c = 0; c < ct.n; ++c) e = std::max(e, gen_exponent(ct, c));
    return e;
}

mpz_class tuple_count(const ClassTensor& ct, std::uint32_t c, std::uint32_t k) {
    if (k == 0) throw InputError("tuple_count: k must be >= 1");
    const std::uint32_t n = ct.n;
    // w_j(E) = number of j-tuples from C^j multiplying to rep(E).
    std::vector<mpz_class> w(n, 0), nw(n, 0);
    w[c] = 1;
    for (std::uint32_t j = 2; j <= k; ++j) {
        for (std::uint32_t E = 0; E < n; ++E) {
            mpz_class acc = 0;
            for (std::uint32_t D = 0; D < n; ++D) {
                if (w[D] == 0) continue;
                std::uint64_t a = ct.at(c, D, E);
                if (a) acc += w[D] * mpz_class(static_cast<unsigned long>(a));
            }
            nw[E] = acc;
        }
        w.swap(nw);
    }
    return w[0];
}

std::optional<std::uint32_t> covering_number(const ClassTensor& ct, std::uint32_t c) {
    const std::uint32_t n = ct.n;
    std::vector<char> cur(n, 0), nxt(n, 0);
    cur[c] = 1;
    std::set<std::vector<char>> seen;
    seen.insert(cur);
    auto full = [&](const std::vector<char>& s) {
        return std::all_of(s.begin(), s.end(), [](char x) { return x != 0; });
    };
    if (full(cur)) return 1;
    for (std::uint32_t k = 2;; ++k) {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (std::uint32_t D = 0; D < n; ++D) {
            if (!cur[D]) continue;
            for (std::uint32_t E = 0; E < n; ++E)
                if (!nxt[E] && ct.at(D, c, E) > 0) nxt[E] = 1;
        }
        if (full(nxt)) return k;
        if (!seen.insert(nxt).second) return std::nullopt;  // cycling, never covers
        cur.swap(nxt);
    }
}

std::uint32_t brute_force_exponent(const ElementTable& table, const ClassData& cd,
                                   std::uint32_t c, std::uint32_t kmax,
                                   std::uint64_t product_budget) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    auto members = class_members(cd);
    const auto& mem = members[c];
    if (cd.reps[c] == 0 && cd.sizes[c] == 1) return 1;

    std::vector<char> reach(table.order, 0);
    std::vector<std::uint32_t> cur;
    for (auto m : mem) {
        reach[m] = 1;
        cur.push_back(m);
    }
    std::uint64_t spent = 0;
    std::vector<std::uint16_t> z(std::size_t(pts), 0), y(std::size_t(pts), 0);
    std::vector<std::uint8_t> code(ops.code_bytes());
    // decode all class members once
    std::vector<std::vector<std::uint16_t>> memdec(mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i) memdec[i] = table.decoded_at(mem[i]);

    for (std::uint32_t k = 2; k <= kmax; ++k) {
        spent += std::uint64_t(cur.size()) * mem.size();
        if (spent > product_budget)
            throw BudgetError("brute_force_exponent: product budget exceeded");
        std::vector<char> nreach(table.order, 0);
        std::vector<std::uint32_t> nxt;
        for (auto zi : cur) {
            ops.decode(table.code_at(zi), z.data());
            for (std::size_t i = 0; i < memdec.size(); ++i) {
                ops.mul(z.data(), memdec[i].data(), y.data());
                ops.encode(y.data(), code.data());
                std::uint32_t idx = table.index_of_checked(code.data());
                if (!nreach[idx]) {
                    nreach[idx] = 1;
                    nxt.push_back(idx);
                }
            }
        }
        if (nreach[0]) return k;
        cur.swap(nxt);
    }
    throw Error("brute_force_exponent: kmax reached without hitting the identity");
}

mpz_class brute_force_tuple_count(const ElementTable& table, const ClassData& cd,
                                  std::uint32_t c, std::uint32_t k,
                                  std::uint64_t product_budget) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    auto members = class_members(cd);
    const auto& mem = members[c];
    if (k == 1) return (cd.sizes[c] == 1 && cd.reps[c] == 0) ? 1 : 0;
    if (k == 2) {
        // (x, y) with xy = 1 means y = x^{-1}; count members whose inverse
        // stays in the class.
        mpz_class count = 0;
        for (auto m : mem)
            if (cd.class_of[table.inv_index(m)] == c) count += 1;
        return count;
    }
    if (k != 3) throw InputError("brute_force_tuple_count supports k <= 3");
    if (std::uint64_t(mem.size()) * mem.size() > product_budget)
        throw BudgetError("brute_force_tuple_count: budget exceeded");
    mpz_class count = 0;
    std::vector<std::uint16_t> x(std::size_t(pts), 0), y(std::size_t(pts), 0),
        p(std::size_t(pts), 0), pin(std::size_t(pts), 0);
    std::vector<std::uint8_t> code(ops.code_bytes());
    for (auto mi : mem) {
        ops.decode(table.code_at(mi), x.data());
        for (auto mj : mem) {
            ops.decode(table.code_at(mj), y.data());
            ops.mul(x.data(), y.data(), p.data());
            ops.inv(p.data(), pin.data());
            ops.encode(pin.data(), code.data());
            if (cd.class_of[table.index_of_checked(code.data())] == c) count += 1;
        }
    }
    return count;
}

ExponentReport exponent_report(const std::string& name, const ElementTable& table,
                               const ClassData& cd, const ClassTensor& ct,
                               bool with_covering) {
    ExponentReport rep;
    rep.group = name;
    rep.order = table.order;
    rep.e_G = 1;
    bool cn_defined = cd.n_classes > 1;
    std::uint32_t cn_max = 0;
    for (std::uint32_t c = 0; c < cd.n_classes; ++c) {
        ClassReport cr;
        cr.id = c;
        cr.size = cd.sizes[c];
        cr.order = cd.order_of_rep[c];
        cr.real = is_real(cd, c);
        cr.rational = is_rational(table, cd, c);
        cr.semirational = is_semirational(table, cd, c);
        cr.e = gen_exponent(ct, c);
        cr.chain = exponent_chain(ct, c);
        if (with_covering && c != 0) {
            cr.cn = covering_number(ct, c);
            if (cr.cn)
                cn_max = std::max(cn_max, *cr.cn);
            else
                cn_defined = false;
        }
        rep.e_G = std::max(rep.e_G, cr.e);
        rep.classes.push_back(std::move(cr));
    }
    if (with_covering && cn_defined) rep.cn_G = cn_max;
    return rep;
}

ExponentReport exponent_report_lowmem(const std::string& name, const ElementTable& table,
                                      const ClassData& cd, bool with_covering,
                                      unsigned threads) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    const std::uint32_t n = cd.n_classes;
    auto members = class_members(cd);
    auto inv_idx = inverse_index_map(table, threads);
    auto reps = decoded_reps(table, cd);

    ExponentReport rep;
    rep.group = name;
    rep.order = table.order;
    rep.e_G = 1;
    bool cn_defined = n > 1;
    std::uint32_t cn_max = 0;

    for (std::uint32_t c = 0; c < n; ++c) {
        // Column slice a_{D,c}^{E}: iterate y in C, then x = rep(E) y^{-1}
        // lands in D. |C| * n products, n^2 memory, freed per class.
        std::vector<std::uint64_t> slice(std::uint64_t(n) * n, 0);
        parallel_for(members[c].size(), threads, 256, [&](std::uint64_t mi) {
            thread_local std::vector<std::uint16_t> yinv, x;
            thread_local std::vector<std::uint8_t> code;
            yinv.resize(std::size_t(pts));
            x.resize(std::size_t(pts));
            code.resize(ops.code_bytes());
            ops.decode(table.code_at(inv_idx[members[c][std::size_t(mi)]]), yinv.data());
            for (std::uint32_t E = 0; E < n; ++E) {
                ops.mul(reps[E].data(), yinv.data(), x.data());
                ops.encode(x.data(), code.data());
                std::uint32_t D = cd.class_of[table.index_of_checked(code.data())];
                std::atomic_ref<std::uint64_t>(slice[std::uint64_t(D) * n + E])
                    .fetch_add(1, std::memory_order_relaxed);
            }
        });
        auto edge = [&](std::uint32_t D, std::uint32_t E) {
            return slice[std::uint64_t(D) * n + E] > 0;
        };

        ClassReport cr;
        cr.id = c;
        cr.size = cd.sizes[c];
        cr.order = cd.order_of_rep[c];
        cr.real = is_real(cd, c);
        cr.rational = is_rational(table, cd, c);
        cr.semirational = is_semirational(table, cd, c);
        std::vector<std::vector<std::int32_t>> preds;
        cr.e = c == 0 ? 1 : gen_exponent_impl(n, c, edge, &preds);
        if (c == 0) {
            cr.chain = {0};
        } else {
            cr.chain.assign(cr.e, 0);
            cr.chain[cr.e - 1] = 0;
            for (std::uint32_t j = cr.e - 1; j >= 1; --j)
                cr.chain[j - 1] = std::uint32_t(preds[j - 1][cr.chain[j]]);
        }
        if (with_covering && c != 0) {
            // same covering loop as the dense path, off the slice
            std::vector<char> cur(n, 0), nxt(n, 0);
            cur[c] = 1;
            std::set<std::vector<char>> seen;
            seen.insert(cur);
            std::optional<std::uint32_t> cn;
            for (std::uint32_t k = 2;; ++k) {
                std::fill(nxt.begin(), nxt.end(), 0);
                for (std::uint32_t D = 0; D < n; ++D) {
                    if (!cur[D]) continue;
                    for (std::uint32_t E = 0; E < n; ++E)
                        if (!nxt[E] && edge(D, E)) nxt[E] = 1;
                }
                if (std::all_of(nxt.begin(), nxt.end(), [](char x) { return x != 0; })) {
                    cn = k;
                    break;
                }
                if (!seen.insert(nxt).second) break;
                cur.swap(nxt);
            }
            cr.cn = cn;
            if (cn)
                cn_max = std::max(cn_max, *cn);
            else
                cn_defined = false;
        }
        rep.e_G = std::max(rep.e_G, cr.e);
        rep.classes.push_back(std::move(cr));
    }
    if (with_covering && cn_defined) rep.cn_G = cn_max;
    return rep;
}

std::string report_json(const ExponentReport& rep, std::uint64_t config_hash) {
    nlohmann::json j;
    j["group"] = rep.group;
    j["order"] = rep.order;
    j["config_hash"] = to_hex(config_hash);
    j["e_G"] = rep.e_G;
    if (rep.cn_G)
        j["cn_G"] = *rep.cn_G;
    else
        j["cn_G"] = nullptr;
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : rep.classes) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["size"] = c.size;
        jc["order"] = c.order;
        jc["real"] = c.real;
        jc["rational"] = c.rational;
        jc["semirational"] = c.semirational;
        jc["e"] = c.e;
        if (c.cn)
            jc["cn"] = *c.cn;
        else
            jc["cn"] = nullptr;
        jc["chain"] = c.chain;
        classes.push_back(jc);
    }
    j["classes"] = classes;
    return j.dump(2);
}

std::string report_csv(const ExponentReport& rep) {
    std::string out = "class,size,order,real,rational,semirational,e,cn\n";
    for (const auto& c : rep.classes) {
        out += std::to_string(c.id) + "," + std::to_string(c.size) + "," +
               std::to_string(c.order) + "," + (c.real ? "1" : "0") + "," +
               (c.rational ? "1" : "0") + "," + (c.semirational ? "1" : "0") + "," +
               std::to_string(c.e) + "," + (c.cn ? std::to_string(*c.cn) : "") + "\n";
    }
    return out;
}

}  // namespace classex

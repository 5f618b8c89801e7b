#ifndef CLASSEX_CLASSALG_HPP
#define CLASSEX_CLASSALG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "classex/classes.hpp"

namespace classex {

/// Class algebra structure constants a_{C,D}^E = #{(x,y) in C x D : xy = rep(E)},
/// stored dense: n_classes^3 64-bit counters (class counts are tiny compared
/// to the element table). at(C,D,E) is the count for first factor in C,
/// second in D, product equal to the fixed representative of E.
struct ClassTensor {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> a;  // [C][D][E]

    std::uint64_t at(std::uint32_t C, std::uint32_t D, std::uint32_t E) const {
        return a[(std::uint64_t(C) * n + D) * n + E];
    }
};

/// Streams every class member once per target class: for x in C and target
/// rep z = rep(E), the partner y = x^{-1} z lands in exactly one class D,
/// so one pass fills a_{C,*}^{E}. Parallel over (C,E) pairs with
/// independent accumulators.
ClassTensor structure_constants(const ElementTable& table, const ClassData& cd,
                                unsigned threads = 0);

/// Product-support BFS: S_1 = {c}, S_{k+1} = {E : a_{D,c}^E > 0, D in S_k}.
/// Returns the per-step supports until the cumulative reachable set stops
/// growing (each S_k is the set of classes meeting C^k).
std::vector<std::vector<std::uint32_t>> class_support_bfs(const ClassTensor& ct,
                                                          std::uint32_t c);

/// Generalized exponent e(C): least k with the trivial class in S_k.
/// Terminates because 1 is in C^{order of rep}.
std::uint32_t gen_exponent(const ClassTensor& ct, std::uint32_t c);

/// Chain of classes c = R_1, ..., R_e = trivial with a(R_j, c, R_{j+1}) > 0;
/// the witness searcher realizes it element by element.
std::vector<std::uint32_t> exponent_chain(const ClassTensor& ct, std::uint32_t c);

std::uint32_t gen_exponent_group(const ClassTensor& ct);

/// Exact number of k-tuples from C^k with product 1 (Frobenius count done by
/// dynamic programming on the tensor, exact big integers).
mpz_class tuple_count(const ClassTensor& ct, std::uint32_t c, std::uint32_t k);

/// Covering number cn_G(C): least k with C^k = G, or nullopt when the
/// support sequence cycles without ever covering every class.
std::optional<std::uint32_t> covering_number(const ClassTensor& ct, std::uint32_t c);

/// Independent oracle: breadth-first search in element space over products
/// of class members; never touches the tensor. Budgeted by total products.
std::uint32_t brute_force_exponent(const ElementTable& table, const ClassData& cd,
                                   std::uint32_t c, std::uint32_t kmax,
                                   std::uint64_t product_budget = 100000000ull);

/// Exhaustive k-tuple count over class members for k <= 3 (pair loops plus a
/// membership probe); the oracle for tuple_count's normalization.
mpz_class brute_force_tuple_count(const ElementTable& table, const ClassData& cd,
                                  std::uint32_t c, std::uint32_t k,
                                  std::uint64_t product_budget = 100000000ull);

struct ClassReport {
    std::uint32_t id = 0;
    std::uint64_t size = 0;
    std::uint64_t order = 0;
    bool real = false;
    bool rational = false;
    bool semirational = false;
    std::uint32_t e = 0;
    std::optional<std::uint32_t> cn;
    std::vector<std::uint32_t> chain;  // witness depth trace (class ids)
};

struct ExponentReport {
    std::string group;
    std::uint64_t order = 0;
    std::vector<ClassReport> classes;
    std::uint32_t e_G = 0;
    std::optional<std::uint32_t> cn_G;
};

ExponentReport exponent_report(const std::string& name, const ElementTable& table,
                               const ClassData& cd, const ClassTensor& ct,
                               bool with_covering = true);

/// Same quantities computed without retaining a full tensor: rows are
/// built per class and discarded (the --low-mem path).
ExponentReport exponent_report_lowmem(const std::string& name, const ElementTable& table,
                                      const ClassData& cd, bool with_covering,
                                      unsigned threads);

std::string report_json(const ExponentReport& rep, std::uint64_t config_hash);
std::string report_csv(const ExponentReport& rep);

}  // namespace classex

#endif

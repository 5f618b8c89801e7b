#ifndef CLASSEX_WITNESS_HPP
#define CLASSEX_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classex/classalg.hpp"

namespace classex {

/// The explicit unipotent triple in dimension 2 over GF(q), q odd:
/// g1 g2 g3 = -Id with g2, g3 conjugate to g1 via h and k. All entries are
/// rational constants reduced mod p, so the same matrices work for every
/// odd prime power.
struct UnipotentTriple {
    Matrix g1, g2, g3, h, k;
};
UnipotentTriple s33_triple(std::uint64_t q);

/// Checks every identity the construction promises: unipotency (char poly
/// (x-1)^2), determinants 1, g1 g2 g3 = -Id, h^{-1} g1 h = g2, k^{-1} g1 k = g3.
struct TripleCheck {
    bool ok = true;
    std::vector<std::string> failures;
};
TripleCheck verify_s33_triple(const UnipotentTriple& t);

/// diag(mu^{1-n}, mu, ..., mu) with mu a generator of GF(q)^x, projected to
/// the scalar quotient; the class needs >= min{n, (q-1)/(n,q-1)} factors.
GroupElement psl_hard_element(int n, std::uint64_t q);

/// diag(mu^{1-n}, mu, ..., mu) with mu of order q+1 in GF(q^2); lies in the
/// unitary group for the identity hermitian form.
GroupElement su_hard_element(int n, std::uint64_t q);

/// The split-torus element diag(mu Id_m, mu^{-1} Id_m) of the 2m-dimensional
/// split orthogonal group, m odd, with the decidable matrix-level checks of
/// its non-reality argument. No orthogonal enumeration happens: the checks
/// are identities of small matrices plus, for m = 1, a direct search over
/// the full 2x2 matrix group for form-preserving inverting conjugators.
struct SplitTorusReport {
    Matrix g;                 // the element, over GF(q)
    bool preserves_form = false;  // g^T J g = J for the split symmetric Gram J
    bool j_inverts = false;       // J g J^{-1} = g^{-1}
    bool j_outside = false;       // det J = -1 (so the inverter is not special)
    bool mu_sixth_nontrivial = false;
    /// m = 1 only: every x in GL_2(q) with x^T J x = J and x g x^{-1} = g^{-1}
    /// has det -1 (checked exhaustively); unset otherwise.
    std::optional<bool> so2_no_special_inverter;
};
SplitTorusReport so_plus_element(int m, std::uint64_t q);

/// Conjugators x_1..x_k with g^{x_1} ... g^{x_k} = 1, k = e(C). Found by
/// walking the class chain from the support BFS: at every prefix the next
/// factor is guaranteed to exist, so the scan needs no backtracking. The
/// budget caps scanned class members; on exhaustion the class-level chain
/// is still returned with verified = false.
struct WitnessTuple {
    std::uint32_t class_id = 0;
    std::uint32_t k = 0;
    std::vector<std::uint32_t> conjugators;  // element indices x_i
    std::vector<std::uint32_t> conjugates;   // element indices g^{x_i}
    std::vector<std::uint32_t> chain;        // class ids of the prefix products
    bool verified = false;
};
WitnessTuple witness_tuple(const ElementTable& table, const ClassData& cd,
                           const ClassTensor& ct, std::uint32_t c,
                           std::uint64_t budget = 20000000ull);

/// Re-checks the tuple by direct multiplication, independently of the BFS
/// that found it: each conjugate is rep^{x_i} and the product is 1.
bool verify_witness(const ElementTable& table, const ClassData& cd,
                    const WitnessTuple& w);

std::string witness_json(const ElementTable& table, const WitnessTuple& w);

}  // namespace classex

#endif

#ifndef CLASSEX_GF_HPP
#define CLASSEX_GF_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "classex/common.hpp"

namespace classex {

/// A field element is its index in [0, p^k): the coefficient vector of the
/// residue polynomial, read base p, little-endian (constant term first).
/// 0 is the additive zero and 1 the multiplicative identity.
using Fq = std::uint16_t;

/// Exact arithmetic in GF(p^k), p prime, p^k <= 2^16.
///
/// Elements are indices (see Fq). Multiplication and inversion go through
/// precomputed log/antilog tables for a fixed primitive element, so they are
/// constant-time; addition is digit-wise mod p (table-backed for small
/// fields, XOR for characteristic 2).
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree k over GF(p), coefficients compared low-degree-first, so two
/// constructions of the same (p, k) are identical. Immutable after
/// construction and safe to share across threads.
class Field {
  public:
    Field(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    /// Modulus coefficients, low degree first; size k+1, leading coeff 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fq add(Fq a, Fq b) const {
        if (p_ == 2) return Fq(a ^ b);
        if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
        return add_slow(a, b);
    }
    Fq neg(Fq a) const {
        if (p_ == 2) return a;
        if (!neg_table_.empty()) return neg_table_[a];
        return neg_slow(a);
    }
    Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
    Fq mul(Fq a, Fq b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::uint32_t(log_[a]) + log_[b]];
    }
    Fq inv(Fq a) const {
        if (a == 0) throw Error("gf: inversion of zero");
        return exp_[q_ - 1 - log_[a]];
    }
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t e) const;

    /// Image of the integer n in the prime subfield.
    Fq from_int(std::int64_t n) const;

    /// x -> x^q0 on GF(q0^2), q0 = p^(k/2); requires k even.
    Fq frobenius_q(Fq a) const;

    /// Smallest m >= 1 with a^m = 1; divides q-1. Throws on a = 0.
    std::uint64_t element_order(Fq a) const;

    /// A fixed generator of the multiplicative group.
    Fq primitive_element() const { return exp_[1]; }

    bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_; }

  private:
    Fq add_slow(Fq a, Fq b) const;
    Fq neg_slow(Fq a) const;

    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fq> exp_;            // exp_[i] = g^i for i in [0, 2(q-1))
    std::vector<std::uint16_t> log_; // log_[x] for x != 0
    std::vector<Fq> add_table_;      // q*q entries when q <= 256 and p odd
    std::vector<Fq> neg_table_;
};

/// Shared, deterministic field registry: same (p,k) yields the same object.
std::shared_ptr<const Field> field_new(std::uint32_t p, std::uint32_t k);

/// Decomposes q = p^k with p prime; throws InputError otherwise.
void prime_power_decompose(std::uint64_t q, std::uint32_t& p, std::uint32_t& k);
bool is_prime(std::uint64_t n);

}  // namespace classex

#endif

#include "classex/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace classex {

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[std::size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void prime_power_decompose(std::uint64_t q, std::uint32_t& p, std::uint32_t& k) {
    if (q < 2) throw InputError("q must be a prime power >= 2");
    std::uint64_t base = q;
    for (std::uint64_t d = 2; d * d <= base; ++d) {
        if (base % d == 0) {
            base = d;
            break;
        }
    }
    std::uint32_t e = 0;
    std::uint64_t acc = 1;
    while (acc < q) {
        acc *= base;
        ++e;
    }
    if (acc != q || !is_prime(base))
        throw InputError("q = " + std::to_string(q) + " is not a prime power");
    p = std::uint32_t(base);
    k = e;
}

namespace {

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<std::uint32_t>;

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    while (a.size() >= m.size()) {
        std::uint32_t lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t t = std::uint64_t(m[i]) * lead % p;
                a[shift + i] = std::uint32_t((a[shift + i] + p - t) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// Trial division by every monic polynomial of degree <= deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
    std::uint32_t deg = std::uint32_t(f.size() - 1);
    if (deg == 1) return true;
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::uint64_t t = idx;
            for (std::uint32_t i = 0; i < d; ++i) {
                g[i] = std::uint32_t(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
    // Lexicographic order on the k free coefficients, low-degree-first.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f(k + 1, 0);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < k; ++i) {
            f[i] = std::uint32_t(t % p);
            t /= p;
        }
        f[k] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw Error("gf: no irreducible polynomial found");  // unreachable
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    if (!is_prime(p)) throw InputError("gf: p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw InputError("gf: extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > 65536) throw InputError("gf: field size p^k exceeds 2^16");
    }
    q_ = std::uint32_t(q);
    modulus_ = smallest_irreducible(p, k);

    // Index <-> coefficient-vector maps are implicit (base-p digits), so the
    // multiplicative structure is built by finding a primitive element and
    // tabulating its powers.
    auto mul_raw = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        // Schoolbook product of digit vectors, reduced by the modulus.
        Poly pa(k_, 0), pb(k_, 0);
        std::uint32_t t = a;
        for (std::uint32_t i = 0; i < k_; ++i) { pa[i] = t % p_; t /= p_; }
        t = b;
        for (std::uint32_t i = 0; i < k_; ++i) { pb[i] = t % p_; t /= p_; }
        Poly prod(2 * k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(pa[i]) * pb[j]) % p_);
        prod = poly_mod(prod, modulus_, p_);
        std::uint32_t out = 0;
        for (std::size_t i = prod.size(); i-- > 0;) out = out * p_ + prod[i];
        return out;
    };
    auto pow_raw = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    };

    std::uint64_t m = q_ - 1;
    auto factors = prime_factors(m);
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (auto f : factors)
            if (pow_raw(cand, m / f) == 1) { ok = false; break; }
        if (ok) { gen = cand; break; }
    }
    if (gen == 0) throw Error("gf: no primitive element found");

    exp_.resize(2 * m);
    log_.assign(q_, 0);
    std::uint32_t v = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        exp_[i] = Fq(v);
        exp_[i + m] = Fq(v);
        log_[v] = std::uint16_t(i);
        v = mul_raw(v, gen);
    }

    if (p_ != 2) {
        neg_table_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) neg_table_[a] = neg_slow(Fq(a));
        if (q_ <= 256) {
            add_table_.resize(std::size_t(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = 0; b < q_; ++b)
                    add_table_[std::size_t(a) * q_ + b] = add_slow(Fq(a), Fq(b));
        }
    }
}

Fq Field::add_slow(Fq a, Fq b) const {
    std::uint32_t out = 0, mult = 1, x = a, y = b;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += (x % p_ + y % p_) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return Fq(out);
}

Fq Field::neg_slow(Fq a) const {
    std::uint32_t out = 0, mult = 1, x = a;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        x /= p_;
        mult *= p_;
    }
    return Fq(out);
}

Fq Field::pow(Fq a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? Fq(1) : Fq(0);
    std::uint64_t m = q_ - 1;
    return exp_[std::uint64_t(log_[a]) * (e % m) % m];
}

Fq Field::from_int(std::int64_t n) const {
    std::int64_t r = n % std::int64_t(p_);
    if (r < 0) r += p_;
    return Fq(r);
}

Fq Field::frobenius_q(Fq a) const {
    if (k_ % 2 != 0)
        throw Error("gf: frobenius_q needs an even extension degree");
    std::uint64_t q0 = 1;
    for (std::uint32_t i = 0; i < k_ / 2; ++i) q0 *= p_;
    return pow(a, q0);
}

std::uint64_t Field::element_order(Fq a) const {
    if (a == 0) throw Error("gf: order of zero is undefined");
    std::uint64_t m = q_ - 1;
    return m / std::gcd<std::uint64_t>(m, log_[a]);
}

std::shared_ptr<const Field> field_new(std::uint32_t p, std::uint32_t k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Field>(p, k);
    cache.emplace(key, f);
    return f;
}

}  // namespace classex

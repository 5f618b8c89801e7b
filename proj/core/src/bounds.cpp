#include "classex/bounds.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

namespace classex {

std::uint32_t jacobsthal(std::uint64_t n) {
    if (n == 0) throw InputError("jacobsthal: n must be positive");
    if (n == 1) return 1;
    std::uint64_t prev = 0, best = 0;
    for (std::uint64_t m = 1; m <= 2 * n; ++m) {
        if (std::gcd(m, n) != 1) continue;
        if (prev) best = std::max(best, m - prev);
        prev = m;
    }
    return std::uint32_t(best);
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t radical(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

std::uint32_t semirational_upper_bound(std::uint64_t n) {
    if (n == 0) throw InputError("semirational_upper_bound: order must be positive");
    if (n == 1) return 1;
    auto fac = factorize(n);
    std::uint32_t best = jacobsthal(n) + 2;
    std::size_t k = fac.size();
    bool all_large = true;
    for (auto& [p, e] : fac)
        if (p < k + 2) all_large = false;
    if (all_large) best = std::min(best, 3u);
    if (k == 1 && fac[0].first % 2 == 1) best = std::min(best, 3u);
    if (k == 1 && fac[0].first == 2) best = std::min(best, 4u);
    return best;
}

std::uint32_t psl_lower_bound(int n, std::uint64_t q) {
    std::uint64_t d = std::gcd<std::uint64_t>(std::uint64_t(n), q - 1);
    return std::uint32_t(std::min<std::uint64_t>(std::uint64_t(n), (q - 1) / d));
}

std::uint32_t psu_lower_bound(int n, std::uint64_t q) {
    std::uint64_t d = std::gcd<std::uint64_t>(std::uint64_t(n), q + 1);
    return std::uint32_t(std::min<std::uint64_t>(std::uint64_t(n), (q + 1) / d));
}

namespace {

struct Ctx {
    int n;            // matrix dimension (ignored by exceptional families)
    std::uint64_t q;
    std::uint64_t p;  // characteristic
};

struct Row {
    const char* family;
    const char* rule;
    std::function<bool(const Ctx&)> pred;
    std::function<std::uint32_t(const Ctx&)> bound;
    bool caveat = false;
    const char* caveat_note = "";
};

bool n_is_char_power(const Ctx& c) {
    if (c.n < 2) return false;
    std::uint64_t v = std::uint64_t(c.n);
    while (v % c.p == 0) v /= c.p;
    return v == 1;
}

// Upper-bound rows, matched first to last per family. Conditions follow the
// published tables; where a row's underlying statement carries an extra
// hypothesis that the table omits (odd q for the 3n/3n+3 unitary rows, the
// dimension-3 linear bound at q=4 holding at the SL level), it is encoded
// here so dispatch never claims an unsound bound.
const std::vector<Row>& rows() {
    static const std::vector<Row> r = [] {
        std::vector<Row> v;
        auto u = [](std::uint32_t b) {
            return [b](const Ctx&) { return b; };
        };
        // --- linear ---
        v.push_back({"PSL", "psl2-q3mod4",
                     [](const Ctx& c) { return c.n == 2 && c.q > 3 && c.q % 4 == 3; }, u(3)});
        v.push_back({"PSL", "psl2-real",
                     [](const Ctx& c) { return c.n == 2 && c.q > 3 && c.q % 4 != 3; }, u(2)});
        v.push_back({"PSL", "psl-cover",
                     [](const Ctx& c) { return c.n > 2 && c.q > 3; },
                     [](const Ctx& c) { return std::uint32_t(c.n); }});
        v.push_back({"PSL", "psl-q2-large",
                     [](const Ctx& c) { return c.n > 5 && c.q == 2; }, u(6)});
        v.push_back({"PSL", "psl-q2-small",
                     [](const Ctx& c) { return c.n >= 3 && c.n <= 5 && c.q == 2; }, u(3)});
        v.push_back({"PSL", "psl-q3",
                     [](const Ctx& c) { return c.n > 2 && c.q == 3; }, u(6)});
        v.push_back({"PSL", "psl-q4",
                     [](const Ctx& c) { return c.n > 2 && c.q == 4; }, u(18), true,
                     "stated for the special linear group; the projective transfer "
                     "is reported verbatim"});
        // --- unitary ---
        v.push_back({"PSU", "psu-n-char-power",
                     [](const Ctx& c) { return c.n > 2 && n_is_char_power(c); },
                     [](const Ctx& c) { return std::uint32_t(c.n); }});
        v.push_back({"PSU", "psu-coprime",
                     [](const Ctx& c) {
                         return c.n > 2 && c.p % 2 == 1 &&
                                std::gcd<std::uint64_t>(c.q, std::uint64_t(c.n)) == 1;
                     },
                     [](const Ctx& c) { return std::uint32_t(3 * c.n); }});
        v.push_back({"PSU", "psu-gcd",
                     [](const Ctx& c) {
                         return c.n > 2 && c.p % 2 == 1 &&
                                std::gcd<std::uint64_t>(c.q, std::uint64_t(c.n)) > 1;
                     },
                     [](const Ctx& c) { return std::uint32_t(3 * c.n + 3); }});
        v.push_back({"PSU", "psu-q2",
                     [](const Ctx& c) { return c.n > 2 && c.q == 2; }, u(18)});
        v.push_back({"PSU", "psu-even",
                     [](const Ctx& c) { return c.n > 2 && c.p == 2; },
                     [](const Ctx& c) { return std::uint32_t(2 * c.n - 2); }});
        v.push_back({"PSU", "psu3",
                     [](const Ctx& c) { return c.n == 3 && c.q > 2; }, u(3)});
        v.push_back({"PSU", "psu4-odd-char",
                     [](const Ctx& c) { return c.n == 4 && c.p > 2; }, u(6)});
        // --- symplectic (n = matrix dimension) ---
        v.push_back({"PSp", "psp-large-q3mod4",
                     [](const Ctx& c) { return c.n > 8 && c.n % 2 == 0 && c.q % 4 == 3; },
                     u(6)});
        v.push_back({"PSp", "psp4-real",
                     [](const Ctx& c) { return c.n == 4 && c.q % 4 != 3; }, u(2)});
        v.push_back({"PSp", "psp4-q3mod4",
                     [](const Ctx& c) { return c.n == 4 && c.q % 4 == 3; }, u(3)});
        // --- orthogonal ---
        v.push_back({"POmega+", "pomega-plus-4n-real",
                     [](const Ctx& c) { return c.n % 4 == 0 && c.q % 4 != 3; }, u(2)});
        v.push_back({"POmega+", "pomega-plus-4n2",
                     [](const Ctx& c) { return c.n % 4 == 2; }, u(4)});
        v.push_back({"POmega-", "pomega-minus-4n2-odd",
                     [](const Ctx& c) { return c.n % 4 == 2 && c.p > 2; }, u(4)});
        v.push_back({"POmega-", "pomega-minus-4n2-even",
                     [](const Ctx& c) { return c.n % 4 == 2 && c.p == 2; }, u(8)});
        v.push_back({"POmega-", "pomega-minus-4n-real",
                     [](const Ctx& c) { return c.n % 4 == 0; }, u(2)});
        v.push_back({"Omega", "omega-odd-q1mod4",
                     [](const Ctx& c) { return c.n % 2 == 1 && c.q % 4 == 1; }, u(2)});
        v.push_back({"Omega", "omega9-q3mod4",
                     [](const Ctx& c) { return c.n == 9 && c.q % 4 == 3; }, u(2)});
        v.push_back({"POmega+", "pomega-plus8",
                     [](const Ctx& c) { return c.n == 8; }, u(2)});
        // --- exceptional ---
        v.push_back({"3D4", "triality-d4", [](const Ctx&) { return true; }, u(2)});
        for (const char* fam : {"E6", "2E6"}) {
            v.push_back({fam, "e6-p2", [](const Ctx& c) { return c.p == 2; }, u(16)});
            v.push_back({fam, "e6-p3", [](const Ctx& c) { return c.p == 3; }, u(27)});
            v.push_back({fam, "e6-p5", [](const Ctx& c) { return c.p == 5; }, u(25)});
            v.push_back({fam, "e6-mid-p",
                         [](const Ctx& c) { return c.p > 11 && c.p < 36; },
                         [](const Ctx& c) { return std::uint32_t(c.p); }});
            v.push_back({fam, "e6-generic", [](const Ctx& c) { return c.p > 5; }, u(36)});
        }
        v.push_back({"E7", "e7-p2", [](const Ctx& c) { return c.p == 2; }, u(4)});
        v.push_back({"E7", "e7-odd", [](const Ctx& c) { return c.p > 2; }, u(6)});
        v.push_back({"E8", "e8-p2", [](const Ctx& c) { return c.p == 2; }, u(8)});
        v.push_back({"E8", "e8-p5", [](const Ctx& c) { return c.p == 5; }, u(6)});
        v.push_back({"E8", "e8-generic",
                     [](const Ctx& c) { return c.p != 2 && c.p != 5; }, u(6)});
        v.push_back({"F4", "f4-p2", [](const Ctx& c) { return c.p == 2; }, u(4)});
        v.push_back({"F4", "f4-odd", [](const Ctx& c) { return c.p > 2; }, u(6)});
        v.push_back({"2F4", "twisted-f4", [](const Ctx& c) { return c.p == 2; }, u(6)});
        v.push_back({"G2", "g2-p2", [](const Ctx& c) { return c.p == 2; }, u(4)});
        v.push_back({"G2", "g2-odd", [](const Ctx& c) { return c.p > 2; }, u(6)});
        v.push_back({"2G2", "ree-g2", [](const Ctx& c) { return c.p == 3; }, u(3)});
        v.push_back({"2B2", "suzuki", [](const Ctx& c) { return c.p == 2; }, u(3)});
        return v;
    }();
    return r;
}

const char* kKnownFamilies[] = {"PSL", "PSU", "PSp", "POmega+", "POmega-", "Omega",
                                "3D4", "E6",  "2E6", "E7",      "E8",      "F4",
                                "2F4", "G2",  "2G2", "2B2"};

}  // namespace

std::vector<TableRowResult> table_upper_bound_all(const std::string& family, int n,
                                                  std::uint64_t q) {
    bool known = false;
    for (const char* f : kKnownFamilies)
        if (family == f) known = true;
    if (!known) throw InputError("unknown bound family: " + family);
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    Ctx ctx{n, q, p};
    std::vector<TableRowResult> out;
    for (const auto& row : rows()) {
        if (family != row.family) continue;
        if (!row.pred(ctx)) continue;
        out.push_back({row.bound(ctx), row.rule, row.caveat, row.caveat_note});
    }
    return out;
}

std::optional<TableRowResult> table_upper_bound(const std::string& family, int n,
                                                std::uint64_t q) {
    auto all = table_upper_bound_all(family, n, q);
    if (all.empty()) return std::nullopt;
    return all.front();
}

mpq_class u3q1_majorant(std::uint64_t q) {
    if (q < 4) throw InputError("u3q1_majorant requires q >= 4");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    mpz_class Q(static_cast<unsigned long>(q));
    mpq_class s(0);
    s += mpq_class(1, Q * Q - Q);
    s += mpq_class(8 * (Q - 2), 3 * (Q * Q - Q + 1));
    s += mpq_class(Q - 2, 3 * Q * (Q * Q - Q + 1));
    s += mpq_class(Q * Q - Q - 2, 6 * (Q * Q * Q + 1));
    s += mpq_class(9, (Q - 1) * (Q * Q - Q + 1));
    s += mpq_class(27 * (Q - 2) * (Q + 1), 6 * (Q - 1) * (Q * Q - Q + 1));
    s.canonicalize();
    return s;
}

std::vector<BoundVerdict> verdict(const ExponentReport& rep,
                                  const std::optional<FamilyTag>& family) {
    std::vector<BoundVerdict> out;

    BoundVerdict g;
    g.group = rep.group;
    g.scope = "group";
    g.computed = rep.e_G;
    if (family) {
        std::string fam = family_name(family->family);
        if (fam == "PSL" || fam == "PSU" || fam == "PSp") {
            auto all = table_upper_bound_all(fam, family->n, family->q);
            if (!all.empty()) {
                g.upper = all.front().bound;
                for (auto& r : all) g.sources.emplace_back(r.rule, r.bound);
            }
            if (fam == "PSL") {
                g.lower = psl_lower_bound(family->n, family->q);
                g.sources.emplace_back("psl-lower", *g.lower);
            } else if (fam == "PSU") {
                g.lower = psu_lower_bound(family->n, family->q);
                g.sources.emplace_back("psu-lower", *g.lower);
            }
        }
    }
    if (g.lower && *g.computed < *g.lower) {
        g.pass = false;
        g.detail = "computed e(G) below the lower bound";
    }
    if (g.upper && *g.computed > *g.upper) {
        g.pass = false;
        g.detail = "computed e(G) above the table bound";
    }
    out.push_back(g);

    for (const auto& c : rep.classes) {
        if (!c.semirational) continue;
        BoundVerdict v;
        v.group = rep.group;
        v.scope = "class " + std::to_string(c.id);
        v.upper = semirational_upper_bound(c.order);
        v.sources.emplace_back("semirational", *v.upper);
        v.computed = c.e;
        if (c.e > *v.upper) {
            v.pass = false;
            v.detail = "semirational class exceeds its order bound";
        }
        out.push_back(v);
    }
    return out;
}

std::string verdict_json(const std::vector<BoundVerdict>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) {
        nlohmann::json j;
        j["group"] = v.group;
        j["scope"] = v.scope;
        if (v.lower) j["lower"] = *v.lower;
        if (v.upper) j["upper"] = *v.upper;
        if (v.computed) j["computed"] = *v.computed;
        nlohmann::json srcs = nlohmann::json::array();
        for (auto& [rule, b] : v.sources) srcs.push_back({{"rule", rule}, {"bound", b}});
        j["sources"] = srcs;
        j["pass"] = v.pass;
        if (!v.detail.empty()) j["detail"] = v.detail;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace classex

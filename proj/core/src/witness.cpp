#include "classex/witness.hpp"

#include <unordered_map>

#include <json.hpp>

namespace classex {

UnipotentTriple s33_triple(std::uint64_t q) {
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    if (p == 2) throw InputError("the unipotent triple needs odd q (entries include 1/2)");
    auto f = field_new(p, k);
    UnipotentTriple t;
    t.g1 = Matrix::from_ints(f, 2, {0, 1, -1, 2});
    t.g2 = Matrix::from_ints(f, 2, {2, 1, -1, 0});
    t.g3 = Matrix::from_ints(f, 2, {1, 0, -4, 1});
    t.h = Matrix::from_ints(f, 2, {0, 1, -1, 0});
    t.k = Matrix(f, 2);
    Fq half = f->inv(f->from_int(2));
    t.k.at(0, 0) = f->from_int(2);
    t.k.at(0, 1) = half;
    t.k.at(1, 0) = 0;
    t.k.at(1, 1) = half;
    return t;
}

TripleCheck verify_s33_triple(const UnipotentTriple& t) {
    TripleCheck out;
    auto f = t.g1.field;
    auto fail = [&](const std::string& s) {
        out.ok = false;
        out.failures.push_back(s);
    };
    auto unipotent2 = [&](const Matrix& m, const char* name) {
        // char poly (x-1)^2 <=> trace = 2 and det = 1
        Fq tr = f->add(m.at(0, 0), m.at(1, 1));
        if (tr != f->from_int(2)) fail(std::string(name) + ": trace is not 2");
        if (m.det() != 1) fail(std::string(name) + ": determinant is not 1");
    };
    unipotent2(t.g1, "g1");
    unipotent2(t.g2, "g2");
    unipotent2(t.g3, "g3");
    if (t.h.det() != 1) fail("h: determinant is not 1");
    if (t.k.det() != 1) fail("k: determinant is not 1");
    Matrix minus_id = Matrix::identity(f, 2).scaled(f->neg(1));
    if (!(t.g1 * t.g2 * t.g3 == minus_id)) fail("g1 g2 g3 != -Id");
    if (!(t.h.inverse() * t.g1 * t.h == t.g2)) fail("h^{-1} g1 h != g2");
    if (!(t.k.inverse() * t.g1 * t.k == t.g3)) fail("k^{-1} g1 k != g3");
    return out;
}

GroupElement psl_hard_element(int n, std::uint64_t q) {
    if (n < 2) throw InputError("psl_hard_element needs n >= 2");
    if (q < 3) throw InputError("psl_hard_element needs q >= 3");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    auto f = field_new(p, k);
    Fq mu = f->primitive_element();  // multiplicative order q-1
    Matrix m(f, n);
    // mu^{1-n} = inverse of mu^{n-1}
    Fq head = f->inv(f->pow(mu, std::uint64_t(n - 1)));
    m.at(0, 0) = head;
    for (int i = 1; i < n; ++i) m.at(i, i) = mu;
    if (m.det() != 1) throw Error("psl_hard_element: determinant is not 1");
    return mat_element(m, /*projective=*/true);
}

GroupElement su_hard_element(int n, std::uint64_t q) {
    if (n < 2) throw InputError("su_hard_element needs n >= 2");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    auto f = field_new(p, 2 * k);
    Fq mu = f->pow(f->primitive_element(), q - 1);  // order q+1, norm mu^{q+1} = 1
    Matrix m(f, n);
    Fq head = f->inv(f->pow(mu, std::uint64_t(n - 1)));
    m.at(0, 0) = head;
    for (int i = 1; i < n; ++i) m.at(i, i) = mu;
    if (m.det() != 1) throw Error("su_hard_element: determinant is not 1");
    if (!(m.frobenius_entrywise().transpose() * m == Matrix::identity(f, n)))
        throw Error("su_hard_element: element is not unitary");
    return mat_element(m, /*projective=*/true);
}

SplitTorusReport so_plus_element(int m, std::uint64_t q) {
    if (m < 1 || m % 2 == 0) throw InputError("so_plus_element needs odd m");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    if (p == 2) throw InputError("so_plus_element handles odd characteristic only");
    auto f = field_new(p, k);
    int dim = 2 * m;
    Fq mu = f->primitive_element();
    SplitTorusReport rep;
    rep.g = Matrix(f, dim);
    for (int i = 0; i < m; ++i) rep.g.at(i, i) = mu;
    for (int i = m; i < dim; ++i) rep.g.at(i, i) = f->inv(mu);

    Matrix J(f, dim);  // split symmetric Gram: antidiagonal identity blocks
    for (int i = 0; i < m; ++i) {
        J.at(i, m + i) = 1;
        J.at(m + i, i) = 1;
    }
    rep.preserves_form = (rep.g.transpose() * J * rep.g == J);
    rep.j_inverts = (J * rep.g * J.inverse() == rep.g.inverse());
    rep.j_outside = (J.det() == f->neg(1));
    rep.mu_sixth_nontrivial = (f->pow(mu, 6) != 1);

    if (m == 1) {
        // Exhaustive check over GL_2(q): any form-preserving conjugator
        // taking g to g^{-1} fails the determinant-1 condition.
        bool ok = true;
        const Field& F = *f;
        Matrix x(f, 2);
        for (std::uint32_t a = 0; a < F.q() && ok; ++a)
            for (std::uint32_t b = 0; b < F.q() && ok; ++b)
                for (std::uint32_t c = 0; c < F.q() && ok; ++c)
                    for (std::uint32_t d = 0; d < F.q(); ++d) {
                        x.at(0, 0) = Fq(a);
                        x.at(0, 1) = Fq(b);
                        x.at(1, 0) = Fq(c);
                        x.at(1, 1) = Fq(d);
                        if (x.det() == 0) continue;
                        if (!(x.transpose() * J * x == J)) continue;
                        if (!(x * rep.g * x.inverse() == rep.g.inverse())) continue;
                        if (x.det() != F.neg(1)) {
                            ok = false;
                            break;
                        }
                    }
        rep.so2_no_special_inverter = ok;
    }
    return rep;
}

WitnessTuple witness_tuple(const ElementTable& table, const ClassData& cd,
                           const ClassTensor& ct, std::uint32_t c,
                           std::uint64_t budget) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    WitnessTuple w;
    w.class_id = c;
    w.chain = exponent_chain(ct, c);
    w.k = std::uint32_t(w.chain.size());

    if (c == 0) {
        w.conjugators = {0};
        w.conjugates = {0};
        w.verified = true;
        return w;
    }

    // Conjugator map for the class: orbit BFS from the representative,
    // composing the conjugating element along the way.
    auto members = class_members(cd);
    std::vector<std::vector<std::uint16_t>> gens, gen_invs;
    for (const auto& g : table.spec.generators) {
        auto d = ops.decoded(g);
        std::vector<std::uint16_t> gi(std::size_t(pts), 0);
        ops.inv(d.data(), gi.data());
        gens.push_back(std::move(d));
        gen_invs.push_back(std::move(gi));
    }
    // conj[i] = index of an x with rep^x = member i (as group elements)
    std::unordered_map<std::uint32_t, std::uint32_t> conj;
    conj.reserve(members[c].size() * 2);
    std::vector<std::uint32_t> stack{cd.reps[c]};
    std::vector<std::uint8_t> code(ops.code_bytes());
    {
        std::vector<std::uint16_t> idv(std::size_t(pts), 0);
        ops.identity(idv.data());
        ops.encode(idv.data(), code.data());
        conj[cd.reps[c]] = table.index_of_checked(code.data());
    }
    std::vector<std::uint16_t> x(std::size_t(pts), 0), t1(std::size_t(pts), 0),
        t2(std::size_t(pts), 0);
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        stack.pop_back();
        std::uint32_t xc = conj[cur];
        ops.decode(table.code_at(cur), x.data());
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            ops.mul(gen_invs[gi].data(), x.data(), t1.data());
            ops.mul(t1.data(), gens[gi].data(), t2.data());
            ops.encode(t2.data(), code.data());
            std::uint32_t nxt = table.index_of_checked(code.data());
            if (conj.find(nxt) == conj.end()) {
                // conjugator composes: rep^(x * g) = (rep^x)^g
                ops.decode(table.code_at(xc), t1.data());
                ops.mul(t1.data(), gens[gi].data(), t2.data());
                ops.encode(t2.data(), code.data());
                conj[nxt] = table.index_of_checked(code.data());
                stack.push_back(nxt);
            }
        }
    }

    // Walk the chain: maintain the prefix product z_j (class chain[j]) and
    // scan class members in index order for the next factor.
    std::uint64_t scanned = 0;
    std::vector<std::uint32_t> factors;
    std::uint32_t z = members[c][0];  // z_1 = first member, class chain[0] = c
    factors.push_back(z);
    bool feasible = true;
    std::vector<std::uint16_t> zv(std::size_t(pts), 0), yv(std::size_t(pts), 0),
        pv(std::size_t(pts), 0);
    for (std::uint32_t j = 1; j + 1 < w.k && feasible; ++j) {
        std::uint32_t want = w.chain[j];
        ops.decode(table.code_at(z), zv.data());
        bool found = false;
        for (std::uint32_t y : members[c]) {
            if (++scanned > budget) {
                feasible = false;
                break;
            }
            ops.decode(table.code_at(y), yv.data());
            ops.mul(zv.data(), yv.data(), pv.data());
            ops.encode(pv.data(), code.data());
            std::uint32_t zi = table.index_of_checked(code.data());
            if (cd.class_of[zi] == want) {
                factors.push_back(y);
                z = zi;
                found = true;
                break;
            }
        }
        if (!found) feasible = false;
    }
    if (feasible && w.k >= 2) {
        // Last factor must be the exact inverse of the prefix; it lies in C
        // because the chain ends at the inverse class.
        std::uint32_t last = table.inv_index(z);
        if (cd.class_of[last] != c) feasible = false;
        else factors.push_back(last);
    }
    if (!feasible) return w;  // class-level certificate only (verified false)

    for (std::uint32_t y : factors) {
        w.conjugates.push_back(y);
        auto it = conj.find(y);
        if (it == conj.end()) return w;
        w.conjugators.push_back(it->second);
    }
    w.verified = verify_witness(table, cd, w);
    return w;
}

bool verify_witness(const ElementTable& table, const ClassData& cd,
                    const WitnessTuple& w) {
    const GroupOps& ops = table.ops;
    const int pts = ops.points();
    if (w.conjugates.size() != w.k || w.conjugators.size() != w.k) return false;
    std::vector<std::uint16_t> acc(std::size_t(pts), 0), tmp(std::size_t(pts), 0),
        gv(std::size_t(pts), 0), xv(std::size_t(pts), 0), xi(std::size_t(pts), 0),
        rep_v(std::size_t(pts), 0);
    std::vector<std::uint8_t> code(ops.code_bytes());
    ops.decode(table.code_at(cd.reps[w.class_id]), rep_v.data());
    ops.identity(acc.data());
    for (std::uint32_t i = 0; i < w.k; ++i) {
        // conjugate really is rep^{x_i}
        ops.decode(table.code_at(w.conjugators[i]), xv.data());
        ops.inv(xv.data(), xi.data());
        ops.mul(xi.data(), rep_v.data(), tmp.data());
        ops.mul(tmp.data(), xv.data(), gv.data());
        ops.encode(gv.data(), code.data());
        if (table.index_of_checked(code.data()) != w.conjugates[i]) return false;
        ops.mul(acc.data(), gv.data(), tmp.data());
        acc.swap(tmp);
    }
    return ops.is_identity(acc.data());
}

std::string witness_json(const ElementTable& table, const WitnessTuple& w) {
    nlohmann::json j;
    j["class"] = w.class_id;
    j["k"] = w.k;
    j["chain"] = w.chain;
    j["verified"] = w.verified;
    auto hex = [&](std::uint32_t idx) {
        const std::uint8_t* code = table.code_at(idx);
        std::string s;
        static const char* digits = "0123456789abcdef";
        for (std::size_t b = 0; b < table.ops.code_bytes(); ++b) {
            s += digits[code[b] >> 4];
            s += digits[code[b] & 0xf];
        }
        return s;
    };
    nlohmann::json xs = nlohmann::json::array(), cs = nlohmann::json::array();
    for (auto i : w.conjugators)
        xs.push_back({{"index", i}, {"code", hex(i)}});
    for (auto i : w.conjugates)
        cs.push_back({{"index", i}, {"code", hex(i)}});
    j["conjugators"] = xs;
    j["conjugates"] = cs;
    return j.dump(2);
}

}  // namespace classex

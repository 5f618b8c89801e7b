#include "classex/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace classex {

using nlohmann::json;

const char* family_name(Family f) {
    switch (f) {
        case Family::GL: return "GL";
        case Family::SL: return "SL";
        case Family::SU: return "SU";
        case Family::Sp: return "Sp";
        case Family::PGL: return "PGL";
        case Family::PSL: return "PSL";
        case Family::PSU: return "PSU";
        case Family::PSp: return "PSp";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    static const std::pair<const char*, Family> table[] = {
        {"GL", Family::GL},   {"SL", Family::SL},   {"SU", Family::SU},
        {"Sp", Family::Sp},   {"PGL", Family::PGL}, {"PSL", Family::PSL},
        {"PSU", Family::PSU}, {"PSp", Family::PSp},
    };
    for (auto& [name, fam] : table)
        if (s == name) return fam;
    return std::nullopt;
}

GroupElement perm_element(const std::vector<std::uint16_t>& images) {
    std::vector<bool> seen(images.size(), false);
    for (auto im : images) {
        if (im >= images.size() || seen[im])
            throw InputError("permutation images are not a bijection");
        seen[im] = true;
    }
    GroupElement e;
    e.kind = Kind::Perm;
    e.n = int(images.size());
    e.v = images;
    return e;
}

GroupElement perm_cycle(int deg, const std::vector<int>& cycle) {
    std::vector<std::uint16_t> img(std::size_t(deg), 0);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i];
        int to = cycle[(i + 1) % cycle.size()];
        img[std::size_t(from)] = std::uint16_t(to);
    }
    return perm_element(img);
}

GroupElement mat_element(const Matrix& m, bool projective) {
    if (m.det() == 0) throw InputError("matrix group element must be invertible");
    GroupElement e;
    e.kind = projective ? Kind::ProjMat : Kind::Mat;
    e.n = m.n;
    e.field = m.field;
    e.v = m.a;
    if (projective) e = canonical(e);
    return e;
}

Matrix to_matrix(const GroupElement& a) {
    if (a.kind == Kind::Perm) throw Error("element is not a matrix");
    Matrix m(a.field, a.n);
    m.a = a.v;
    return m;
}

GroupElement canonical(const GroupElement& a) {
    if (a.kind != Kind::ProjMat) return a;
    GroupElement e = a;
    const Field& F = *e.field;
    for (auto x : e.v) {
        if (x != 0) {
            if (x != 1) {
                Fq s = F.inv(x);
                for (auto& y : e.v) y = F.mul(y, s);
            }
            break;
        }
    }
    return e;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    if (a.kind != b.kind || a.n != b.n)
        throw Error("group element kind/degree mismatch");
    GroupElement out = a;
    if (a.kind == Kind::Perm) {
        for (int i = 0; i < a.n; ++i) out.v[std::size_t(i)] = b.v[a.v[std::size_t(i)]];
        return out;
    }
    if (!(*a.field == *b.field)) throw Error("group element field mismatch");
    mat_mul(*a.field, a.n, a.v.data(), b.v.data(), out.v.data());
    return canonical(out);
}

GroupElement inv(const GroupElement& a) {
    GroupElement out = a;
    if (a.kind == Kind::Perm) {
        for (int i = 0; i < a.n; ++i) out.v[a.v[std::size_t(i)]] = std::uint16_t(i);
        return out;
    }
    if (!mat_inverse(*a.field, a.n, a.v.data(), out.v.data()))
        throw Error("singular matrix in group inverse");
    return canonical(out);
}

GroupElement identity_like(const GroupElement& a) {
    GroupElement out = a;
    if (a.kind == Kind::Perm) {
        std::iota(out.v.begin(), out.v.end(), 0);
    } else {
        std::fill(out.v.begin(), out.v.end(), 0);
        for (int i = 0; i < a.n; ++i) out.v[std::size_t(i) * a.n + i] = 1;
    }
    return out;
}

std::uint64_t GroupSpec::hash() const {
    std::uint64_t h = fnv1a64("classex-spec");
    auto mix = [&](std::uint64_t v) { h = fnv1a64(&v, sizeof v, h); };
    mix(std::uint64_t(kind));
    mix(std::uint64_t(degree));
    mix(std::uint64_t(dim));
    if (field) {
        mix(field->p());
        mix(field->k());
    }
    for (const auto& g : generators)
        h = fnv1a64(g.v.data(), g.v.size() * sizeof(std::uint16_t), h);
    return h;
}

GroupSpec make_alternating(int n) {
    if (n < 3) throw InputError("alternating group needs n >= 3");
    GroupSpec spec;
    spec.name = "A" + std::to_string(n);
    spec.kind = Kind::Perm;
    spec.degree = n;
    spec.generators.push_back(perm_cycle(n, {0, 1, 2}));
    if (n % 2 == 1) {
        std::vector<int> all(std::size_t(n), 0);
        std::iota(all.begin(), all.end(), 0);
        spec.generators.push_back(perm_cycle(n, all));
    } else {
        std::vector<int> tail(std::size_t(n - 1), 0);
        std::iota(tail.begin(), tail.end(), 1);
        spec.generators.push_back(perm_cycle(n, tail));
    }
    std::uint64_t ord = 1;
    for (int i = 2; i <= n; ++i) ord *= std::uint64_t(i);
    spec.claimed_order = ord / 2;
    return spec;
}

GroupSpec make_symmetric(int n) {
    if (n < 2) throw InputError("symmetric group needs n >= 2");
    GroupSpec spec;
    spec.name = "S" + std::to_string(n);
    spec.kind = Kind::Perm;
    spec.degree = n;
    spec.generators.push_back(perm_cycle(n, {0, 1}));
    std::vector<int> all(std::size_t(n), 0);
    std::iota(all.begin(), all.end(), 0);
    spec.generators.push_back(perm_cycle(n, all));
    std::uint64_t ord = 1;
    for (int i = 2; i <= n; ++i) ord *= std::uint64_t(i);
    spec.claimed_order = ord;
    return spec;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_u64(u128 v, const char* what) {
    if (v > u128(~std::uint64_t(0) >> 1))
        throw InputError(std::string(what) + ": order exceeds 2^63");
    return std::uint64_t(v);
}

u128 ipow(u128 b, unsigned e) {
    u128 r = 1;
    while (e--) r *= b;
    return r;
}

u128 gl_order(unsigned n, u128 q) {
    u128 r = 1;
    u128 qn = ipow(q, n);
    for (unsigned i = 0; i < n; ++i) r *= (qn - ipow(q, i));
    return r;
}

u128 gu_order(unsigned n, u128 q) {
    u128 r = ipow(q, n * (n - 1) / 2);
    for (unsigned i = 1; i <= n; ++i) {
        u128 qi = ipow(q, i);
        r *= (i % 2 == 1) ? (qi + 1) : (qi - 1);
    }
    return r;
}

u128 sp_order(unsigned dim, u128 q) {
    unsigned r = dim / 2;
    u128 res = ipow(q, r * r);
    for (unsigned i = 1; i <= r; ++i) res *= (ipow(q, 2 * i) - 1);
    return res;
}

}  // namespace

std::uint64_t group_order_formula(Family family, int n, std::uint64_t q) {
    if (n < 2) throw InputError("classical group dimension must be >= 2");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);
    u128 Q = q;
    std::uint64_t d;
    switch (family) {
        case Family::GL: return checked_u64(gl_order(unsigned(n), Q), "GL");
        case Family::SL: return checked_u64(gl_order(unsigned(n), Q) / (Q - 1), "SL");
        case Family::PGL: return checked_u64(gl_order(unsigned(n), Q) / (Q - 1), "PGL");
        case Family::PSL:
            d = std::gcd<std::uint64_t>(std::uint64_t(n), q - 1);
            return checked_u64(gl_order(unsigned(n), Q) / (Q - 1) / d, "PSL");
        case Family::SU: return checked_u64(gu_order(unsigned(n), Q) / (Q + 1), "SU");
        case Family::PSU:
            d = std::gcd<std::uint64_t>(std::uint64_t(n), q + 1);
            return checked_u64(gu_order(unsigned(n), Q) / (Q + 1) / d, "PSU");
        case Family::Sp:
            if (n % 2) throw InputError("Sp needs even dimension");
            return checked_u64(sp_order(unsigned(n), Q), "Sp");
        case Family::PSp:
            if (n % 2) throw InputError("PSp needs even dimension");
            d = std::gcd<std::uint64_t>(2, q - 1);
            return checked_u64(sp_order(unsigned(n), Q) / d, "PSp");
    }
    throw InputError("unsupported family");
}

Matrix symplectic_gram(std::shared_ptr<const Field> f, int dim) {
    if (dim % 2) throw InputError("symplectic form needs even dimension");
    int r = dim / 2;
    Matrix J(f, dim);
    for (int i = 0; i < r; ++i) {
        J.at(i, r + i) = 1;
        J.at(r + i, i) = f->neg(1);
    }
    return J;
}

namespace {

bool is_projective(Family f) {
    return f == Family::PGL || f == Family::PSL || f == Family::PSU || f == Family::PSp;
}

bool needs_det_one(Family f) {
    return f == Family::SL || f == Family::PSL || f == Family::SU ||
           f == Family::PSU || f == Family::Sp || f == Family::PSp;
}

// Generators for SL_n(q): a transvection, a determinant-one cycle and a
// torus element. GL adds diag(w,1,...,1). Validity is enforced downstream by
// the order oracle (enumeration must reproduce the order formula exactly).
std::vector<Matrix> sl_generators(std::shared_ptr<const Field> f, int n, bool gl) {
    const Field& F = *f;
    std::vector<Matrix> gens;
    Matrix t = Matrix::identity(f, n);
    t.at(0, 1) = 1;
    gens.push_back(t);

    Matrix w(f, n);
    for (int j = 0; j + 1 < n; ++j) w.at(j + 1, j) = 1;
    w.at(0, n - 1) = (n % 2 == 1) ? Fq(1) : F.neg(1);
    gens.push_back(w);

    if (F.q() > 2) {
        Fq om = F.primitive_element();
        Matrix h = Matrix::identity(f, n);
        h.at(0, 0) = om;
        h.at(1, 1) = F.inv(om);
        gens.push_back(h);
        if (gl) {
            Matrix d = Matrix::identity(f, n);
            d.at(0, 0) = om;
            gens.push_back(d);
        }
    }
    return gens;
}

std::vector<Matrix> sp_generators(std::shared_ptr<const Field> f, int dim) {
    const Field& F = *f;
    int r = dim / 2;
    std::vector<Matrix> gens;
    Matrix t = Matrix::identity(f, dim);
    t.at(0, r) = 1;
    gens.push_back(t);
    Matrix t2 = Matrix::identity(f, dim);
    t2.at(r, 0) = 1;
    gens.push_back(t2);

    Matrix s(f, dim);  // long-root Weyl reflection: e_0 -> f_0, f_0 -> -e_0
    for (int i = 0; i < dim; ++i)
        if (i != 0 && i != r) s.at(i, i) = 1;
    s.at(r, 0) = 1;
    s.at(0, r) = F.neg(1);
    gens.push_back(s);

    if (r >= 2) {  // cycle both halves of the Witt basis in step
        Matrix w(f, dim);
        for (int j = 0; j < r; ++j) {
            int jn = (j + 1) % r;
            w.at(jn, j) = 1;
            w.at(r + jn, r + j) = 1;
        }
        gens.push_back(w);
        // short-root element mixing the first two hyperbolic planes:
        // e_1 -> e_1 + e_0, f_0 -> f_0 - f_1
        Matrix u = Matrix::identity(f, dim);
        u.at(0, 1) = 1;
        u.at(r + 1, r) = F.neg(1);
        gens.push_back(u);
    }
    if (F.q() > 2) {
        Fq om = F.primitive_element();
        Matrix h = Matrix::identity(f, dim);
        h.at(0, 0) = om;
        h.at(r, r) = F.inv(om);
        gens.push_back(h);
    }
    return gens;
}

// Generators of SU_n(q) preserving the identity hermitian Gram (orthonormal
// basis): a norm-one torus, a determinant-fixed basis cycle and one unitary
// transvection built from an isotropic vector.
std::vector<Matrix> su_generators(std::shared_ptr<const Field> f, int n, std::uint64_t q) {
    const Field& F = *f;
    std::vector<Matrix> gens;
    Fq om = F.primitive_element();
    Fq mu = F.pow(om, q - 1);  // order q+1

    Matrix d = Matrix::identity(f, n);
    d.at(0, 0) = mu;
    d.at(1, 1) = F.inv(mu);
    gens.push_back(d);

    Matrix c(f, n);
    for (int j = 0; j + 1 < n; ++j) c.at(j + 1, j) = 1;
    c.at(0, n - 1) = (n % 2 == 1) ? Fq(1) : F.neg(1);
    gens.push_back(c);

    // Unitary transvections from isotropic v = e_i + a e_{i+1}, a^(q+1) = -1,
    // with a trace-zero lambda; one per adjacent coordinate pair.
    Fq a_val, lambda;
    if (q % 2 == 0) {
        a_val = 1;
        lambda = 1;
    } else {
        a_val = F.pow(om, (q - 1) / 2);
        lambda = F.pow(om, (q + 1) / 2);
    }
    if (q == 2 && n >= 3) {
        // Transvections of SU_3(2) generate a proper subgroup (the classical
        // degenerate case), and that deficiency propagates to larger n at
        // q = 2. These two unitary fixtures restore full generation; the
        // order oracle downstream keeps them honest.
        static const int extras[2][9] = {
            {2, 3, 1, 3, 2, 1, 1, 1, 1},
            {2, 2, 3, 1, 2, 1, 2, 1, 1},
        };
        for (const auto& e3 : extras) {
            Matrix m = Matrix::identity(f, n);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.at(i, j) = Fq(e3[i * 3 + j]);
            gens.push_back(m);
        }
    }
    for (int pos = 0; pos + 1 < n; ++pos) {
        for (Fq a : {a_val, F.mul(a_val, mu)}) {
            std::vector<Fq> v(std::size_t(n), 0);
            v[std::size_t(pos)] = 1;
            v[std::size_t(pos) + 1] = a;
            Matrix t = Matrix::identity(f, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    t.at(i, j) = F.add(t.at(i, j),
                                       F.mul(lambda, F.mul(v[std::size_t(i)],
                                                           F.frobenius_q(v[std::size_t(j)]))));
            gens.push_back(t);
        }
    }
    return gens;
}

}  // namespace

GroupSpec make_classical(Family family, int n, std::uint64_t q) {
    if (n < 2 || n > 8) throw InputError("classical constructor supports 2 <= n <= 8");
    std::uint32_t p = 0, k = 0;
    prime_power_decompose(q, p, k);

    bool unitary = (family == Family::SU || family == Family::PSU);
    auto f = unitary ? field_new(p, 2 * k) : field_new(p, k);

    std::vector<Matrix> gens;
    switch (family) {
        case Family::GL:
        case Family::PGL: gens = sl_generators(f, n, /*gl=*/true); break;
        case Family::SL:
        case Family::PSL: gens = sl_generators(f, n, /*gl=*/false); break;
        case Family::Sp:
        case Family::PSp: gens = sp_generators(f, n); break;
        case Family::SU:
        case Family::PSU: gens = su_generators(f, n, q); break;
    }

    GroupSpec spec;
    spec.name = std::string(family_name(family)) + "(" + std::to_string(n) + "," +
                std::to_string(q) + ")";
    spec.kind = is_projective(family) ? Kind::ProjMat : Kind::Mat;
    spec.dim = n;
    spec.field = f;
    spec.family = FamilyTag{family, n, q};
    spec.claimed_order = group_order_formula(family, n, q);
    for (const auto& m : gens)
        spec.generators.push_back(mat_element(m, spec.kind == Kind::ProjMat));

    auto rep = forms_check(spec);
    if (!rep.ok) {
        std::string msg = "generator self-check failed for " + spec.name + ":";
        for (auto& s : rep.failures) msg += " " + s;
        throw Error(msg);
    }
    return spec;
}

namespace {

// Finds a scalar s with (s*M) satisfying the family conditions; projective
// representatives are only determined up to the field's scalar group.
bool scaled_member_exists(const GroupSpec& spec, const Matrix& m, std::string* why) {
    const Field& F = *spec.field;
    Family fam = spec.family ? spec.family->family : Family::GL;
    bool proj = spec.kind == Kind::ProjMat;
    std::uint32_t nscalars = proj ? F.q() - 1 : 1;
    for (std::uint32_t si = 0; si < nscalars; ++si) {
        Fq s = proj ? (si == 0 ? Fq(1) : F.pow(F.primitive_element(), si)) : Fq(1);
        Matrix cand = m.scaled(s);
        if (needs_det_one(fam) && cand.det() != 1) continue;
        if (fam == Family::Sp || fam == Family::PSp) {
            Matrix J = symplectic_gram(spec.field, spec.dim);
            if (!(cand.transpose() * J * cand == J)) continue;
        }
        if (fam == Family::SU || fam == Family::PSU) {
            if (!(cand.frobenius_entrywise().transpose() * cand ==
                  Matrix::identity(spec.field, spec.dim)))
                continue;
        }
        if (cand.det() == 0) continue;
        return true;
    }
    if (why) *why = "no scalar multiple satisfies the family conditions";
    return false;
}

}  // namespace

FormsReport forms_check(const GroupSpec& spec) {
    FormsReport rep;
    for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
        const auto& g = spec.generators[gi];
        std::string tag = "generator " + std::to_string(gi);
        if (g.kind == Kind::Perm) {
            std::vector<bool> seen(std::size_t(g.n), false);
            bool ok = true;
            for (auto im : g.v) {
                if (im >= g.v.size() || seen[im]) { ok = false; break; }
                seen[im] = true;
            }
            if (!ok) {
                rep.ok = false;
                rep.failures.push_back(tag + ": images are not a bijection");
            }
            continue;
        }
        Matrix m = to_matrix(g);
        if (m.det() == 0) {
            rep.ok = false;
            rep.failures.push_back(tag + ": singular");
            continue;
        }
        if (!spec.family) continue;  // plain matrix group from a file: invertibility only
        std::string why;
        if (!scaled_member_exists(spec, m, &why)) {
            rep.ok = false;
            rep.failures.push_back(tag + ": " + why);
        }
    }
    return rep;
}

GroupSpec parse_genfile(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw InputError(std::string("genfile: bad JSON: ") + e.what());
    }
    GroupSpec spec;
    spec.name = j.value("name", std::string("genfile-group"));
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "perm") {
        spec.kind = Kind::Perm;
        spec.degree = j.at("degree").get<int>();
        if (spec.degree < 1 || spec.degree > 65535)
            throw InputError("genfile: unsupported permutation degree");
    } else if (kind == "mat" || kind == "projmat") {
        spec.kind = (kind == "mat") ? Kind::Mat : Kind::ProjMat;
        spec.dim = j.at("dim").get<int>();
        auto p = j.at("p").get<std::uint32_t>();
        auto kk = j.at("k").get<std::uint32_t>();
        spec.field = field_new(p, kk);
        if (spec.dim < 1 || spec.dim > 16) throw InputError("genfile: unsupported dimension");
    } else {
        throw InputError("genfile: kind must be perm, mat or projmat");
    }
    if (j.contains("claimed_order")) spec.claimed_order = j["claimed_order"].get<std::uint64_t>();
    for (const auto& ja : j.at("generators")) {
        std::vector<std::uint16_t> vals;
        for (const auto& x : ja) {
            auto u = x.get<std::uint64_t>();
            if (spec.kind != Kind::Perm && spec.field && u >= spec.field->q())
                throw InputError("genfile: entry exceeds field size");
            vals.push_back(std::uint16_t(u));
        }
        if (spec.kind == Kind::Perm) {
            if (int(vals.size()) != spec.degree)
                throw InputError("genfile: image array has wrong length");
            spec.generators.push_back(perm_element(vals));
        } else {
            if (int(vals.size()) != spec.dim * spec.dim)
                throw InputError("genfile: matrix entry array has wrong length");
            Matrix m(spec.field, spec.dim);
            m.a = vals;
            spec.generators.push_back(mat_element(m, spec.kind == Kind::ProjMat));
        }
    }
    if (spec.generators.empty()) throw InputError("genfile: no generators");
    return spec;
}

GroupSpec load_genfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("genfile: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_genfile(ss.str());
}

std::string genfile_to_json(const GroupSpec& spec) {
    json j;
    j["name"] = spec.name;
    switch (spec.kind) {
        case Kind::Perm:
            j["kind"] = "perm";
            j["degree"] = spec.degree;
            break;
        case Kind::Mat:
        case Kind::ProjMat:
            j["kind"] = spec.kind == Kind::Mat ? "mat" : "projmat";
            j["dim"] = spec.dim;
            j["p"] = spec.field->p();
            j["k"] = spec.field->k();
            break;
    }
    if (spec.claimed_order) j["claimed_order"] = *spec.claimed_order;
    json gens = json::array();
    for (const auto& g : spec.generators) gens.push_back(g.v);
    j["generators"] = gens;
    return j.dump(2);
}

GroupOps::GroupOps(const GroupSpec& spec)
    : kind_(spec.kind), dim_(spec.dim), field_(spec.field.get()),
      field_keepalive_(spec.field) {
    if (kind_ == Kind::Perm) {
        npoints_ = spec.degree;
        wide_perm_ = spec.degree > 256;
        bits_ = 0;
        code_bytes_ = std::size_t(npoints_) * (wide_perm_ ? 2 : 1);
    } else {
        npoints_ = dim_ * dim_;
        wide_perm_ = false;
        bits_ = 1;
        while ((1u << bits_) < field_->q()) ++bits_;
        code_bytes_ = (std::size_t(npoints_) * bits_ + 7) / 8;
    }
}

void GroupOps::identity(std::uint16_t* out) const {
    if (kind_ == Kind::Perm) {
        for (int i = 0; i < npoints_; ++i) out[i] = std::uint16_t(i);
    } else {
        std::fill(out, out + npoints_, 0);
        for (int i = 0; i < dim_; ++i) out[std::size_t(i) * dim_ + i] = 1;
    }
}

void GroupOps::mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const {
    if (kind_ == Kind::Perm) {
        for (int i = 0; i < npoints_; ++i) out[i] = b[a[i]];
        return;
    }
    mat_mul(*field_, dim_, a, b, out);
    if (kind_ == Kind::ProjMat) canon(out);
}

void GroupOps::inv(const std::uint16_t* a, std::uint16_t* out) const {
    if (kind_ == Kind::Perm) {
        for (int i = 0; i < npoints_; ++i) out[a[i]] = std::uint16_t(i);
        return;
    }
    if (!mat_inverse(*field_, dim_, a, out))
        throw Error("singular matrix during enumeration");
    if (kind_ == Kind::ProjMat) canon(out);
}

void GroupOps::canon(std::uint16_t* x) const {
    if (kind_ != Kind::ProjMat) return;
    for (int i = 0; i < npoints_; ++i) {
        if (x[i] != 0) {
            if (x[i] != 1) {
                Fq s = field_->inv(Fq(x[i]));
                for (int j = i; j < npoints_; ++j)
                    x[j] = field_->mul(Fq(x[j]), s);
            }
            return;
        }
    }
}

bool GroupOps::is_identity(const std::uint16_t* x) const {
    if (kind_ == Kind::Perm) {
        for (int i = 0; i < npoints_; ++i)
            if (x[i] != i) return false;
        return true;
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (x[std::size_t(i) * dim_ + j] != (i == j ? 1 : 0)) return false;
    return true;
}

std::uint64_t GroupOps::order_of(const std::uint16_t* x) const {
    if (kind_ == Kind::Perm) {
        // lcm of cycle lengths
        std::vector<bool> seen(std::size_t(npoints_), false);
        std::uint64_t ord = 1;
        for (int i = 0; i < npoints_; ++i) {
            if (seen[std::size_t(i)]) continue;
            std::uint64_t len = 0;
            int j = i;
            while (!seen[std::size_t(j)]) {
                seen[std::size_t(j)] = true;
                j = x[j];
                ++len;
            }
            ord = std::lcm(ord, len);
        }
        return ord;
    }
    std::vector<std::uint16_t> acc(x, x + npoints_), tmp(std::size_t(npoints_), 0);
    std::uint64_t ord = 1;
    while (!is_identity(acc.data())) {
        mul(acc.data(), x, tmp.data());
        acc.swap(tmp);
        if (++ord > 100000000ull) throw Error("element order runaway");
    }
    return ord;
}

void GroupOps::encode(const std::uint16_t* x, std::uint8_t* code) const {
    if (kind_ == Kind::Perm) {
        if (!wide_perm_) {
            for (int i = 0; i < npoints_; ++i) code[i] = std::uint8_t(x[i]);
        } else {
            for (int i = 0; i < npoints_; ++i) {
                code[2 * i] = std::uint8_t(x[i] & 0xff);
                code[2 * i + 1] = std::uint8_t(x[i] >> 8);
            }
        }
        return;
    }
    std::fill(code, code + code_bytes_, 0);
    std::size_t bitpos = 0;
    for (int i = 0; i < npoints_; ++i) {
        std::uint32_t v = x[i];
        for (int b = 0; b < bits_; ++b) {
            if (v & (1u << b)) code[(bitpos + std::size_t(b)) >> 3] |=
                std::uint8_t(1u << ((bitpos + std::size_t(b)) & 7));
        }
        bitpos += std::size_t(bits_);
    }
}

void GroupOps::decode(const std::uint8_t* code, std::uint16_t* out) const {
    if (kind_ == Kind::Perm) {
        if (!wide_perm_) {
            for (int i = 0; i < npoints_; ++i) out[i] = code[i];
        } else {
            for (int i = 0; i < npoints_; ++i)
                out[i] = std::uint16_t(code[2 * i] | (code[2 * i + 1] << 8));
        }
        return;
    }
    std::size_t bitpos = 0;
    for (int i = 0; i < npoints_; ++i) {
        std::uint32_t v = 0;
        for (int b = 0; b < bits_; ++b) {
            if (code[(bitpos + std::size_t(b)) >> 3] &
                (1u << ((bitpos + std::size_t(b)) & 7)))
                v |= 1u << b;
        }
        out[i] = std::uint16_t(v);
        bitpos += std::size_t(bits_);
    }
}

std::vector<std::uint16_t> GroupOps::decoded(const GroupElement& e) const {
    return e.v;
}

GroupElement GroupOps::element(const std::uint16_t* x) const {
    GroupElement e;
    e.kind = kind_;
    e.n = kind_ == Kind::Perm ? npoints_ : dim_;
    e.field = field_keepalive_;
    e.v.assign(x, x + npoints_);
    return e;
}

}  // namespace classex

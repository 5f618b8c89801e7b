#ifndef CLASSEX_GROUP_HPP
#define CLASSEX_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "classex/matrix.hpp"

namespace classex {

enum class Kind { Perm, Mat, ProjMat };

/// Classical families with constructors. Projective variants quotient by the
/// scalar center and are represented by canonicalized coset representatives.
enum class Family { GL, SL, SU, Sp, PGL, PSL, PSU, PSp };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

/// One group element: a permutation (point images) or a matrix over GF(q)
/// (row-major field-element indices). Projective matrices are kept in
/// canonical form: the first nonzero entry in row-major order equals 1, which
/// picks exactly one representative per scalar coset.
struct GroupElement {
    Kind kind = Kind::Perm;
    int n = 0;  // permutation degree or matrix dimension
    std::shared_ptr<const Field> field;
    std::vector<std::uint16_t> v;  // images, or entries row-major

    bool operator==(const GroupElement& o) const {
        return kind == o.kind && n == o.n && v == o.v;
    }
};

GroupElement perm_element(const std::vector<std::uint16_t>& images);
/// Cycle shorthand: one cycle on the given 0-based points, degree deg.
GroupElement perm_cycle(int deg, const std::vector<int>& cycle);
GroupElement mat_element(const Matrix& m, bool projective);

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
GroupElement identity_like(const GroupElement& a);
/// Scalar-coset canonical form; identity on non-projective elements.
GroupElement canonical(const GroupElement& a);
Matrix to_matrix(const GroupElement& a);

struct FamilyTag {
    Family family;
    int n;
    std::uint64_t q;
};

struct GroupSpec {
    std::string name;
    Kind kind = Kind::Perm;
    int degree = 0;  // permutation degree
    int dim = 0;     // matrix dimension
    std::shared_ptr<const Field> field;
    std::vector<GroupElement> generators;
    std::optional<std::uint64_t> claimed_order;
    std::optional<FamilyTag> family;

    /// Stable digest of kind, parameters and generator bytes; cache key.
    std::uint64_t hash() const;
};

GroupSpec make_alternating(int n);
GroupSpec make_symmetric(int n);
GroupSpec make_classical(Family family, int n, std::uint64_t q);
std::uint64_t group_order_formula(Family family, int n, std::uint64_t q);

/// Per-generator verification of the family's defining conditions:
/// determinant for S-families, the fixed bilinear/hermitian form for Sp/SU
/// (up to a scalar for projective kinds), bijectivity for permutations.
struct FormsReport {
    bool ok = true;
    std::vector<std::string> failures;
};
FormsReport forms_check(const GroupSpec& spec);

/// Gram matrix of the fixed symplectic form on 2r points: antidiagonal
/// blocks (Id_r, -Id_r). The unitary form uses the identity Gram with the
/// conjugate-transpose twist and has no explicit matrix.
Matrix symplectic_gram(std::shared_ptr<const Field> f, int dim);

/// Generator-file interchange format (JSON):
///   {"name": ..., "kind": "perm"|"mat"|"projmat",
///    "degree": d | "dim": n, "p": p, "k": k,
///    "generators": [[...], ...], "claimed_order": N}
/// Permutations are image arrays; matrix entries are field-element indices.
GroupSpec load_genfile(const std::string& path);
GroupSpec parse_genfile(const std::string& json_text);
std::string genfile_to_json(const GroupSpec& spec);

/// Allocation-free operations on decoded elements (uint16 spans) and packed
/// codes, fixed per group. Permutation codes are one byte per point (two for
/// degree > 256); matrix codes pack n^2 field indices at ceil(log2 q) bits.
class GroupOps {
  public:
    explicit GroupOps(const GroupSpec& spec);

    Kind kind() const { return kind_; }
    int points() const { return npoints_; }      // degree or dim*dim
    int dim() const { return dim_; }
    const Field* field() const { return field_; }
    std::size_t code_bytes() const { return code_bytes_; }

    void identity(std::uint16_t* out) const;
    void mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const;
    void inv(const std::uint16_t* a, std::uint16_t* out) const;
    void canon(std::uint16_t* x) const;  // projective normalization, in place
    bool is_identity(const std::uint16_t* x) const;
    std::uint64_t order_of(const std::uint16_t* x) const;

    void encode(const std::uint16_t* x, std::uint8_t* code) const;
    void decode(const std::uint8_t* code, std::uint16_t* out) const;

    std::vector<std::uint16_t> decoded(const GroupElement& e) const;
    GroupElement element(const std::uint16_t* x) const;

  private:
    Kind kind_;
    int npoints_;
    int dim_;
    const Field* field_;
    std::shared_ptr<const Field> field_keepalive_;
    int bits_;  // bits per packed matrix entry
    std::size_t code_bytes_;
    bool wide_perm_;
};

}  // namespace classex

#endif

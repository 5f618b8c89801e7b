#ifndef CLASSEX_MATRIX_HPP
#define CLASSEX_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

#include "classex/gf.hpp"

namespace classex {

/// Small dense matrix over a finite field, row-major. Used for generator
/// construction, form checks and the explicit witness matrices; the
/// enumeration hot path works on raw entry spans instead.
struct Matrix {
    std::shared_ptr<const Field> field;
    int n = 0;
    std::vector<Fq> a;  // n*n entries, row-major

    Matrix() = default;
    Matrix(std::shared_ptr<const Field> f, int dim)
        : field(std::move(f)), n(dim), a(std::size_t(dim) * dim, 0) {}

    static Matrix identity(std::shared_ptr<const Field> f, int dim);
    /// Entries given as integers, reduced into the prime subfield.
    static Matrix from_ints(std::shared_ptr<const Field> f, int dim,
                            std::initializer_list<std::int64_t> vals);

    Fq& at(int i, int j) { return a[std::size_t(i) * n + j]; }
    Fq at(int i, int j) const { return a[std::size_t(i) * n + j]; }

    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }

    Matrix inverse() const;  // throws Error if singular
    Matrix transpose() const;
    /// Entry-wise x -> x^q0 (the unitary twist); requires an even-degree field.
    Matrix frobenius_entrywise() const;
    Fq det() const;
    bool is_identity() const;
    bool is_scalar() const;
    Matrix scaled(Fq s) const;
};

/// Raw row-major helpers shared with the enumeration path.
void mat_mul(const Field& F, int n, const Fq* a, const Fq* b, Fq* out);
bool mat_inverse(const Field& F, int n, const Fq* a, Fq* out);
Fq mat_det(const Field& F, int n, const Fq* a);

}  // namespace classex

#endif

#include "classex/matrix.hpp"

#include <cstring>

namespace classex {

void mat_mul(const Field& F, int n, const Fq* a, const Fq* b, Fq* out) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Fq acc = 0;
            const Fq* arow = a + std::size_t(i) * n;
            for (int l = 0; l < n; ++l)
                acc = F.add(acc, F.mul(arow[l], b[std::size_t(l) * n + j]));
            out[std::size_t(i) * n + j] = acc;
        }
    }
}

bool mat_inverse(const Field& F, int n, const Fq* a, Fq* out) {
    // Gauss-Jordan on [a | I].
    std::vector<Fq> m(a, a + std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[std::size_t(i) * n + j] = (i == j) ? 1 : 0;
    auto M = [&](int i, int j) -> Fq& { return m[std::size_t(i) * n + j]; };
    auto O = [&](int i, int j) -> Fq& { return out[std::size_t(i) * n + j]; };
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (M(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(M(pivot, j), M(col, j));
                std::swap(O(pivot, j), O(col, j));
            }
        }
        Fq s = F.inv(M(col, col));
        for (int j = 0; j < n; ++j) {
            M(col, j) = F.mul(M(col, j), s);
            O(col, j) = F.mul(O(col, j), s);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || M(r, col) == 0) continue;
            Fq f = M(r, col);
            for (int j = 0; j < n; ++j) {
                M(r, j) = F.sub(M(r, j), F.mul(f, M(col, j)));
                O(r, j) = F.sub(O(r, j), F.mul(f, O(col, j)));
            }
        }
    }
    return true;
}

Fq mat_det(const Field& F, int n, const Fq* a) {
    std::vector<Fq> m(a, a + std::size_t(n) * n);
    auto M = [&](int i, int j) -> Fq& { return m[std::size_t(i) * n + j]; };
    Fq det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (M(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(M(pivot, j), M(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, M(col, col));
        Fq s = F.inv(M(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (M(r, col) == 0) continue;
            Fq f = F.mul(M(r, col), s);
            for (int j = col; j < n; ++j)
                M(r, j) = F.sub(M(r, j), F.mul(f, M(col, j)));
        }
    }
    return det;
}

Matrix Matrix::identity(std::shared_ptr<const Field> f, int dim) {
    Matrix m(std::move(f), dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_ints(std::shared_ptr<const Field> f, int dim,
                         std::initializer_list<std::int64_t> vals) {
    if (std::size_t(dim) * dim != vals.size())
        throw Error("matrix: wrong number of entries");
    Matrix m(f, dim);
    std::size_t i = 0;
    for (auto v : vals) m.a[i++] = f->from_int(v);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (n != o.n || !(*field == *o.field)) throw Error("matrix: dimension/field mismatch");
    Matrix r(field, n);
    mat_mul(*field, n, a.data(), o.a.data(), r.a.data());
    return r;
}

Matrix Matrix::inverse() const {
    Matrix r(field, n);
    if (!mat_inverse(*field, n, a.data(), r.a.data()))
        throw Error("matrix: singular matrix has no inverse");
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::frobenius_entrywise() const {
    Matrix r(field, n);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field->frobenius_q(a[i]);
    return r;
}

Fq Matrix::det() const { return mat_det(*field, n, a.data()); }

bool Matrix::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool Matrix::is_scalar() const {
    Fq d = at(0, 0);
    if (d == 0) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? d : 0)) return false;
    return true;
}

Matrix Matrix::scaled(Fq s) const {
    Matrix r(field, n);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = field->mul(a[i], s);
    return r;
}

}  // namespace classex

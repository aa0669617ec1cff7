#include "qwalk/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

Matrix::Matrix(std::size_t dim, std::initializer_list<Complex> entries) : Matrix(dim) {
    if (entries.size() != dim * dim) {
        throw ArgumentError("matrix initializer size does not match dimension");
    }
    std::size_t i = 0;
    for (const Complex& v : entries) a_[i++] = v;
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

bool Matrix::is_unitary(double tol) const {
    Matrix p = (*this) * adjoint();
    return approx_equal(p, identity(dim_), tol);
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw ArgumentError("matrix dimension mismatch");
    const std::size_t n = lhs.dim_;
    Matrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex v = lhs(r, k);
            if (v == Complex{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += v * rhs(k, c);
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    Matrix out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra)
        for (std::size_t ca = 0; ca < na; ++ca)
            for (std::size_t rb = 0; rb < nb; ++rb)
                for (std::size_t cb = 0; cb < nb; ++cb)
                    out(ra * nb + rb, ca * nb + cb) = a(ra, ca) * b(rb, cb);
    return out;
}

Matrix matrix_power(const Matrix& m, unsigned k) {
    Matrix out = Matrix::identity(m.dim());
    for (unsigned i = 0; i < k; ++i) out = m * out;
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw ArgumentError("matrix dimension mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    // Phase fixed by the largest entry of b, then compared entrywise.
    std::size_t br = 0, bc = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = 0; c < b.dim(); ++c)
            if (std::abs(b(r, c)) > best) best = std::abs(b(r, c)), br = r, bc = c;
    if (best <= tol) return approx_equal(a, b, tol);
    if (std::abs(a(br, bc)) <= tol) return false;
    const Complex phase = a(br, bc) / b(br, bc);
    const double mag = std::abs(phase);
    if (std::abs(mag - 1.0) > tol) return false;
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - phase * b(r, c)));
    return worst <= tol;
}

bool is_permutation_matrix(const Matrix& m, double tol) {
    const std::size_t n = m.dim();
    std::vector<int> col_hits(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int row_hits = 0;
        for (std::size_t c = 0; c < n; ++c) {
            const double mag = std::abs(m(r, c));
            if (mag > tol) {
                if (std::abs(mag - 1.0) > tol) return false;
                if (std::abs(m(r, c).imag()) > tol || m(r, c).real() < 0.0) return false;
                ++row_hits;
                ++col_hits[c];
            }
        }
        if (row_hits != 1) return false;
    }
    for (std::size_t c = 0; c < n; ++c)
        if (col_hits[c] != 1) return false;
    return true;
}

}  // namespace qwalk

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

// Small dense square complex matrix. Sized for gate blocks and the
// brute-force circuit oracle (dimension up to 2^10), not for serious
// linear algebra.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, Complex{0.0, 0.0}) {}
    Matrix(std::size_t dim, std::initializer_list<Complex> entries);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    Matrix adjoint() const;
    bool is_unitary(double tol) const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix matrix_power(const Matrix& m, unsigned k);

// Entrywise max-norm distance.
double max_abs_diff(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

// True iff a = e^{i gamma} b for some single phase gamma, entrywise within tol.
bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol);

// True iff the matrix has exactly one unit entry per row/column and zeros
// elsewhere (within tol).
bool is_permutation_matrix(const Matrix& m, double tol);

}  // namespace qwalk

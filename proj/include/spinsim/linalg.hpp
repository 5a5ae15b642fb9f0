#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace spinsim {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> entries);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix l, const ComplexMatrix& r) { return l += r; }
    friend ComplexMatrix operator-(ComplexMatrix l, const ComplexMatrix& r) { return l -= r; }
    friend ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& l, const ComplexMatrix& r);

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Largest entry magnitude, |M_ij|.
double max_abs(const ComplexMatrix& m);

/// max |M - M^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);

/// Kronecker product A (x) B; row index is a_row * dim(B) + b_row.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutator AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

using StateVector = std::vector<Complex>;

StateVector multiply(const ComplexMatrix& m, std::span<const Complex> v);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);

/// Eigen-decomposition of a Hermitian matrix. Column i of `vectors` belongs to eigenvalues[i];
/// eigenvalues are sorted in descending order.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct JacobiOptions {
    double hermitian_tolerance = 1e-12;
    double off_diagonal_tolerance = 1e-12;
    int max_sweeps = 100;
};

/// Cyclic Jacobi diagonalisation. Throws std::invalid_argument for non-Hermitian input
/// and ConvergenceError when the sweep budget is exhausted.
Spectrum eigendecompose_hermitian(const ComplexMatrix& m, const JacobiOptions& options = {});

/// max |V D V^dagger - M| entry.
double reconstruction_error(const Spectrum& spectrum, const ComplexMatrix& m);

/// max |V^dagger V - I| entry.
double orthonormality_defect(const ComplexMatrix& vectors);

}  // namespace spinsim

#include "spinsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinsim {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& l, const ComplexMatrix& r) {
    if (l.dim() != r.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const std::size_t d = l.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex lik = l(i, k);
            if (lik == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) out(i, j) += lik * r(k, j);
        }
    return out;
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& x : m.data()) best = std::max(best, std::abs(x));
    return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j) best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    return best;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

StateVector multiply(const ComplexMatrix& m, std::span<const Complex> v) {
    if (v.size() != m.dim()) throw std::invalid_argument("vector length does not match matrix dimension");
    StateVector out(v.size());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("vector length mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

double norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

double frobenius_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (const auto& x : a.data()) acc += std::norm(x);
    return std::sqrt(acc);
}

// Zeroes a(p, q) with the unitary U = diag(1, conj(e)) * [[c, s], [-s, c]] acting on (p, q),
// where e is the phase of a(p, q). Updates a <- U^dagger a U and v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    const Complex phase_conj = std::conj(apq / r);
    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();

    const double tau = (beta - alpha) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * phase_conj;
    const Complex u_qq = c * phase_conj;

    const std::size_t d = a.dim();
    for (std::size_t k = 0; k < d; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    for (std::size_t k = 0; k < d; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < d; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
}

}  // namespace

Spectrum eigendecompose_hermitian(const ComplexMatrix& m, const JacobiOptions& options) {
    if (m.dim() == 0) throw std::invalid_argument("cannot diagonalise an empty matrix");
    if (hermiticity_defect(m) > options.hermitian_tolerance) {
        throw std::invalid_argument("eigendecompose_hermitian: input is not Hermitian");
    }
    const std::size_t d = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(d);
    // Absolute threshold for matrices of unit scale, relative beyond that.
    const double threshold = options.off_diagonal_tolerance * std::max(1.0, frobenius_norm(m));

    bool converged = false;
    for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            converged = true;
            break;
        }
        if (sweep == options.max_sweeps) break;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q)
                if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);
    }
    if (!converged) {
        throw ConvergenceError("Jacobi eigensolver did not converge within " + std::to_string(options.max_sweeps) +
                               " sweeps");
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    Spectrum out{std::vector<double>(d), ComplexMatrix(d)};
    for (std::size_t col = 0; col < d; ++col) {
        out.eigenvalues[col] = a(order[col], order[col]).real();
        for (std::size_t row = 0; row < d; ++row) out.vectors(row, col) = v(row, order[col]);
    }
    return out;
}

double reconstruction_error(const Spectrum& spectrum, const ComplexMatrix& m) {
    const ComplexMatrix d = ComplexMatrix::diagonal(spectrum.eigenvalues);
    return max_abs(spectrum.vectors * d * spectrum.vectors.adjoint() - m);
}

double orthonormality_defect(const ComplexMatrix& vectors) {
    return max_abs(vectors.adjoint() * vectors - ComplexMatrix::identity(vectors.dim()));
}

}  // namespace spinsim

#include "spinsim/oracle.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace spinsim {

OutcomeDistribution OutcomeDistribution::from_counts(TwoSpin two_s, std::span<const std::int64_t> counts) {
    OutcomeDistribution out(two_s);
    if (counts.size() != out.probs_.size()) throw std::invalid_argument("count table has wrong size");
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    if (total <= 0) throw std::invalid_argument("count table is empty");
    for (std::size_t i = 0; i < counts.size(); ++i)
        out.probs_[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return out;
}

std::vector<double> OutcomeDistribution::alice_marginal() const {
    std::vector<double> out(dim(), 0.0);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) out[i] += at(i, j);
    return out;
}

std::vector<double> OutcomeDistribution::bob_marginal() const {
    std::vector<double> out(dim(), 0.0);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) out[j] += at(i, j);
    return out;
}

double OutcomeDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

double OutcomeDistribution::correlation() const {
    double acc = 0.0;
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            acc += 0.25 * two_s_.doubled_outcome(i) * two_s_.doubled_outcome(j) * at(i, j);
    return acc;
}

SpinOperators build_spin_operators(TwoSpin two_s) {
    const int d = two_s.dim();
    const int ts = two_s.two_s();
    SpinOperators ops{two_s, ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
    // Raising operator: <m+1| J+ |m> = sqrt(s(s+1) - m(m+1)); index i holds m = s - i.
    ComplexMatrix raise(d);
    for (int i = 0; i < d; ++i) {
        const int m2 = two_s.doubled_outcome(i);
        ops.jz(i, i) = 0.5 * m2;
        if (i > 0) {
            const double radicand = 0.25 * (static_cast<double>(ts) * (ts + 2) - static_cast<double>(m2) * (m2 + 2));
            raise(i - 1, i) = std::sqrt(radicand);
        }
    }
    const ComplexMatrix lower = raise.adjoint();
    ops.jx = (raise + lower) * Complex(0.5, 0.0);
    ops.jy = (raise - lower) * Complex(0.0, -0.5);
    return ops;
}

ComplexMatrix spin_component(const SpinOperators& ops, const UnitVector3& a) {
    return ops.jx * Complex(a.x()) + ops.jy * Complex(a.y()) + ops.jz * Complex(a.z());
}

Spectrum spin_component_spectrum(const SpinOperators& ops, const UnitVector3& a) {
    Spectrum spectrum = eigendecompose_hermitian(spin_component(ops, a));
    const auto& ev = spectrum.eigenvalues;
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        if (ev[i] - ev[i + 1] < 1e-8) {
            throw std::runtime_error("spin component spectrum is degenerate; cannot map eigenvalues to outcomes");
        }
    }
    return spectrum;
}

StateVector build_singlet(TwoSpin two_s) {
    const int d = two_s.dim();
    StateVector psi(static_cast<std::size_t>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        // Alice holds m = s - i, Bob holds -m at index (two_s + 2m) / 2 = d - 1 - i.
        // s - m = i, so the sign is (-1)^i.
        const int bob = d - 1 - i;
        psi[static_cast<std::size_t>(i) * d + bob] = (i % 2 == 0) ? amp : -amp;
    }
    return psi;
}

double quantum_correlation_closed_form(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b) {
    const double s = two_s.spin();
    return -s * (s + 1.0) * a.dot(b) / 3.0;
}

double quantum_correlation_matrix(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b) {
    const SpinOperators ops = build_spin_operators(two_s);
    const ComplexMatrix observable = kron(spin_component(ops, a), spin_component(ops, b));
    const StateVector psi = build_singlet(two_s);
    return inner(psi, multiply(observable, psi)).real();
}

OutcomeDistribution quantum_joint_distribution(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b) {
    const SpinOperators ops = build_spin_operators(two_s);
    const Spectrum alice = spin_component_spectrum(ops, a);
    const Spectrum bob = spin_component_spectrum(ops, b);
    const StateVector psi = build_singlet(two_s);
    const int d = two_s.dim();

    OutcomeDistribution out(two_s);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex amp{};
            for (int x = 0; x < d; ++x) {
                const Complex ax = std::conj(alice.vectors(x, i));
                for (int y = 0; y < d; ++y)
                    amp += ax * std::conj(bob.vectors(y, j)) * psi[static_cast<std::size_t>(x) * d + y];
            }
            out.at(i, j) = std::norm(amp);
        }
    return out;
}

TwoSpin parse_spin(const std::string& text) {
    auto parse_positive = [&](const std::string& digits) {
        if (digits.empty() || digits.size() > 6 ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("invalid spin '" + text + "': expected forms like 1/2, 3/2 or 1");
        }
        return std::stoi(digits);
    };
    const auto slash = text.find('/');
    int two_s = 0;
    if (slash == std::string::npos) {
        two_s = 2 * parse_positive(text);
    } else {
        if (text.substr(slash + 1) != "2") {
            throw std::invalid_argument("invalid spin '" + text + "': denominator must be 2");
        }
        two_s = parse_positive(text.substr(0, slash));
    }
    if (two_s < 1) throw std::invalid_argument("invalid spin '" + text + "': spin must be positive");
    return TwoSpin(two_s);
}

}  // namespace spinsim

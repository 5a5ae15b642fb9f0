#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spinsim/linalg.hpp"
#include "spinsim/spin.hpp"

namespace spinsim {

/// Spin matrices (J_x, J_y, J_z) in the |m> basis ordered m = s, s-1, ..., -s.
struct SpinOperators {
    TwoSpin two_s;
    ComplexMatrix jx;
    ComplexMatrix jy;
    ComplexMatrix jz;
};

/// Joint outcome table. Row i is Alice's doubled outcome 2s - 2i, column j is Bob's 2s - 2j.
class OutcomeDistribution {
  public:
    explicit OutcomeDistribution(TwoSpin two_s)
        : two_s_(two_s), probs_(static_cast<std::size_t>(two_s.dim()) * two_s.dim(), 0.0) {}

    /// Empirical table from integer counts, normalised by their total.
    static OutcomeDistribution from_counts(TwoSpin two_s, std::span<const std::int64_t> counts);

    TwoSpin two_s() const { return two_s_; }
    int dim() const { return two_s_.dim(); }

    double& at(int row, int col) { return probs_[static_cast<std::size_t>(row) * dim() + col]; }
    double at(int row, int col) const { return probs_[static_cast<std::size_t>(row) * dim() + col]; }

    /// Lookup by doubled outcomes (2 alpha, 2 beta).
    double prob(int alpha_doubled, int beta_doubled) const {
        return at(two_s_.outcome_index(alpha_doubled), two_s_.outcome_index(beta_doubled));
    }

    std::span<const double> probs() const { return probs_; }

    std::vector<double> alice_marginal() const;
    std::vector<double> bob_marginal() const;
    double total() const;

    /// Sum over cells of alpha * beta * P(alpha, beta).
    double correlation() const;

  private:
    TwoSpin two_s_;
    std::vector<double> probs_;
};

/// Ladder-operator construction; J_z = diag(s, ..., -s).
SpinOperators build_spin_operators(TwoSpin two_s);

/// a_x J_x + a_y J_y + a_z J_z.
ComplexMatrix spin_component(const SpinOperators& ops, const UnitVector3& a);

/// Spectrum of a.J with the non-degeneracy check applied: eigenvalue at index i must be s - i,
/// and adjacent eigenvalues must be separated by at least 1e-8.
Spectrum spin_component_spectrum(const SpinOperators& ops, const UnitVector3& a);

/// Two-spin singlet: amplitude (-1)^(s-m) / sqrt(2s+1) on |m> (x) |-m>,
/// bipartite index = alice_index * (2s+1) + bob_index.
StateVector build_singlet(TwoSpin two_s);

/// -s(s+1) (a.b) / 3.
double quantum_correlation_closed_form(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b);

/// <psi| (a.J) (x) (b.J) |psi> evaluated with an explicit Kronecker product.
double quantum_correlation_matrix(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b);

/// Born-rule joint distribution of spin measurements along a and b on the singlet.
OutcomeDistribution quantum_joint_distribution(TwoSpin two_s, const UnitVector3& a, const UnitVector3& b);

}  // namespace spinsim

#pragma once

// Two-qubit gate algebra for dual-rail photonic qubits. Basis order is
// |n_a n_b> = |00>, |01>, |10>, |11>.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace photmol {

using GateMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// diag(1, 1, 1, e^{-i theta}). Multiples of pi/2 give exact entries.
GateMatrix cz_from_phase(double theta);
GateMatrix hadamard();
GateMatrix identity_gate(int dim);
/// Kronecker product a (x) b; a acts on the first qubit.
GateMatrix tensor(const GateMatrix& a, const GateMatrix& b);
/// Matrix product of the list in the order written, gates.front() leftmost.
GateMatrix compose(const std::vector<GateMatrix>& gates);
StateVector apply(const StateVector& state, const GateMatrix& gate);

/// Standard CNOT with the second qubit as target.
GateMatrix cnot_reference();
/// (I (x) H) CZ(pi) (I (x) H).
GateMatrix cnot_from_cz();

double max_abs_deviation(const GateMatrix& a, const GateMatrix& b);
/// max |G G^dagger - I|
double unitarity_deviation(const GateMatrix& g);

struct TruthRow {
    std::string input;   ///< e.g. "|11>"
    StateVector output;  ///< image of the basis state
};

std::vector<TruthRow> truth_table(const GateMatrix& gate);

const std::array<std::string, 4>& basis_labels();

}  // namespace photmol
